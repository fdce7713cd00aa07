"""Tokenizer-level cleanup of student-corpus source text: comment stripping
and lightweight syntax validation.

The corpus language is Python-the-subject; it is treated as a data format.
The scanner below understands just enough of its lexical structure (strings
with all quote forms, escapes, line continuations, brackets, indentation) to
locate comments and report hygiene diagnostics. Passing validation does NOT
guarantee full-language validity; several benchmark misconceptions are
deliberate syntax errors, so validation is advisory and never gates
generated code, only the comment-stripping transform.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import TokenizeError

TAB_WIDTH = 8  # a tab advances indentation to the next multiple of 8

KIND_UNBALANCED = "unbalanced_delimiter"
KIND_UNTERMINATED = "unterminated_string"
KIND_INDENT = "inconsistent_indent"
KIND_STRAY = "stray_token"

_OPENERS = "([{"
_CLOSERS = ")]}"
_PAIR = {"(": ")", "[": "]", "{": "}"}
_STRAY_CHARS = "$?`"


@dataclass(frozen=True)
class Diagnostic:
    line: int
    kind: str
    message: str


@dataclass
class _Scan:
    comments: list[tuple[int, int, int]] = field(default_factory=list)  # (start, end, line)
    string_diags: list[Diagnostic] = field(default_factory=list)
    bracket_diags: list[Diagnostic] = field(default_factory=list)
    indent_diags: list[Diagnostic] = field(default_factory=list)
    stray_diags: list[Diagnostic] = field(default_factory=list)


def _newline_len(text: str, i: int) -> int:
    if i >= len(text):
        return 0
    if text[i] == "\n":
        return 1
    if text[i] == "\r":
        return 2 if text[i + 1 : i + 2] == "\n" else 1
    return 0


def _indent_width(text: str, i: int) -> tuple[int, int]:
    """Measure leading whitespace from position ``i``; returns (width, next)."""
    width = 0
    while i < len(text):
        ch = text[i]
        if ch == " ":
            width += 1
        elif ch == "\t":
            width = (width // TAB_WIDTH + 1) * TAB_WIDTH
        elif ch == "\f":
            width = 0
        else:
            break
        i += 1
    return width, i


def _scan(text: str) -> _Scan:
    out = _Scan()
    stack: list[tuple[str, int]] = []
    indents = [0]
    i, n, line = 0, len(text), 1
    in_string = False
    str_quote = ""
    str_triple = False
    str_start_line = 0
    continuation = False
    at_line_start = True

    while i < n:
        if at_line_start:
            starts_logical = not in_string and not stack and not continuation
            continuation = False
            at_line_start = False
            if starts_logical:
                width, j = _indent_width(text, i)
                if j < n and text[j] not in "#\r\n":
                    if width > indents[-1]:
                        indents.append(width)
                    elif width < indents[-1]:
                        while len(indents) > 1 and width < indents[-1]:
                            indents.pop()
                        if indents[-1] != width:
                            out.indent_diags.append(
                                Diagnostic(line, KIND_INDENT, "dedent does not match any outer level")
                            )
                            indents.append(width)

        ch = text[i]

        if in_string:
            if ch == "\\":
                nl = _newline_len(text, i + 1)
                if nl:
                    line += 1
                    i += 1 + nl
                    at_line_start = True
                else:
                    i += 2  # escape consumes the next character, raw or not
                continue
            if str_triple:
                if ch == str_quote and text.startswith(str_quote * 3, i):
                    in_string = False
                    i += 3
                    continue
                nl = _newline_len(text, i)
                if nl:
                    line += 1
                    i += nl
                    at_line_start = True
                    continue
                i += 1
                continue
            if ch == str_quote:
                in_string = False
                i += 1
                continue
            nl = _newline_len(text, i)
            if nl:
                out.string_diags.append(
                    Diagnostic(str_start_line, KIND_UNTERMINATED, "string literal not terminated before end of line")
                )
                in_string = False
                line += 1
                i += nl
                at_line_start = True
                continue
            i += 1
            continue

        if ch == "#":
            j = i
            while j < n and text[j] not in "\r\n":
                j += 1
            out.comments.append((i, j, line))
            i = j
            continue
        if ch in "'\"":
            in_string = True
            str_quote = ch
            str_triple = text.startswith(ch * 3, i)
            str_start_line = line
            i += 3 if str_triple else 1
            continue
        if ch in _OPENERS:
            stack.append((ch, line))
            i += 1
            continue
        if ch in _CLOSERS:
            if not stack:
                out.bracket_diags.append(Diagnostic(line, KIND_UNBALANCED, f"unmatched {ch!r}"))
            else:
                opener, _ = stack.pop()
                if _PAIR[opener] != ch:
                    out.bracket_diags.append(
                        Diagnostic(line, KIND_UNBALANCED, f"closing {ch!r} does not match {opener!r}")
                    )
            i += 1
            continue
        if ch == "\\":
            nl = _newline_len(text, i + 1)
            if nl:
                continuation = True
                line += 1
                i += 1 + nl
                at_line_start = True
            else:
                out.stray_diags.append(
                    Diagnostic(line, KIND_STRAY, "unexpected character after line continuation")
                )
                i += 1
            continue
        nl = _newline_len(text, i)
        if nl:
            line += 1
            i += nl
            at_line_start = True
            continue
        if ch in _STRAY_CHARS:
            out.stray_diags.append(Diagnostic(line, KIND_STRAY, f"character {ch!r} is never valid here"))
            i += 1
            continue
        i += 1

    if in_string:
        out.string_diags.append(
            Diagnostic(str_start_line, KIND_UNTERMINATED, "string literal not terminated before end of file")
        )
    for opener, opener_line in stack:
        out.bracket_diags.append(Diagnostic(opener_line, KIND_UNBALANCED, f"unclosed {opener!r}"))
    return out


def strip_comments(text: str) -> str:
    """Remove every ``#``-to-end-of-line comment, the trailing whitespace it
    leaves, and any line that becomes empty. ``#`` inside string literals is
    preserved and all other bytes are unchanged.

    Raises TokenizeError if the source has an unterminated string.
    """
    scan = _scan(text)
    if scan.string_diags:
        raise TokenizeError(scan.string_diags[0])
    if not scan.comments:
        return text

    spans: list[tuple[int, int]] = []
    for start, end, _ in scan.comments:
        while start > 0 and text[start - 1] in " \t":
            start -= 1
        line_start = text.rfind("\n", 0, start) + 1
        if start == line_start:
            # whole line was comment (plus indentation): drop its terminator too
            end += _newline_len(text, end)
        spans.append((start, end))

    parts = []
    pos = 0
    for start, end in spans:
        parts.append(text[pos:start])
        pos = end
    parts.append(text[pos:])
    return "".join(parts)


def validate_syntax(text: str) -> list[Diagnostic]:
    """Hygiene-level checks: balanced ()[]{} respecting strings and
    comments, terminated string literals, and a consistent indentation
    stack. An empty result means the checks passed, not that the code is
    fully valid."""
    scan = _scan(text)
    diags = scan.string_diags + scan.bracket_diags + scan.indent_diags + scan.stray_diags
    return sorted(diags, key=lambda d: (d.line, d.kind, d.message))
