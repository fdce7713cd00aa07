"""Produce the comment-stripping golden corpus.

Locates comments with the stdlib tokenize module (the reference lexer,
independent of the scanner under test) and applies the documented removal
rule: comment plus the whitespace run before it, dropping lines that become
empty. Run from the repository root:

    python tests/tools/make_golden.py

Regenerates tests/data/comment_corpus/{src,golden}/NNN.py.
"""

from __future__ import annotations

import io
import sys
import tokenize
from pathlib import Path

CORPUS_DIR = Path(__file__).resolve().parent.parent / "data" / "comment_corpus"


def oracle_strip(source: str) -> str:
    """Reference comment removal driven by the stdlib tokenizer."""
    tokens = tokenize.generate_tokens(io.StringIO(source).readline)
    comment_starts = [tok.start for tok in tokens if tok.type == tokenize.COMMENT]
    lines = source.splitlines(keepends=True)
    drop: set[int] = set()
    for row, col in comment_starts:
        line = lines[row - 1]
        body = line.rstrip("\r\n")
        terminator = line[len(body):]
        kept = body[:col].rstrip(" \t")
        if kept:
            lines[row - 1] = kept + terminator
        else:
            drop.add(row - 1)
    return "".join(line for idx, line in enumerate(lines) if idx not in drop)


SNIPPETS: list[str] = [
    # 0: plain trailing comment
    "x = 1  # set x\n",
    # 1: hash inside double-quoted string
    's = "# not a comment"\n',
    # 2: hash inside single-quoted string
    "s = '# still text'\nprint(s)  # show it\n",
    # 3: comment-only line removed
    "# leading comment\nx = 1\n",
    # 4: indented comment-only line inside a block
    "def f():\n    # explain\n    return 1\n",
    # 5: f-string with nested single quotes
    "d = {'k': 2}\nprint(f\"value: {d['k']}\")  # lookup\n",
    # 6: f-string with hash inside the literal part
    'label = f"#tag {1 + 2}"\n',
    # 7: triple-quoted string containing hash lines
    'doc = """\n# not removed\nstill text\n"""\nx = 0  # after\n',
    # 8: docstring preserved, trailing comment stripped
    'def g():\n    """Docstring with # hash."""\n    return None  # done\n',
    # 9: escaped quote before hash
    "s = 'don\\'t # keep'  # strip me\n",
    # 10: raw string with backslashes
    "import re\npat = r'\\d+ # digits'  # regex\n",
    # 11: backslash line continuation then comment
    "total = 1 + \\\n    2  # sum\n",
    # 12: comment inside parenthesized continuation
    "y = (1 +\n     # middle\n     2)\n",
    # 13: bracket spanning lines with trailing comments
    "xs = [\n    1,  # one\n    2,  # two\n]\n",
    # 14: shebang and coding cookie
    "#!/usr/bin/env python\n# -*- coding: utf-8 -*-\nprint('hi')\n",
    # 15: no trailing newline, trailing comment
    "x = 1  # tail",
    # 16: no trailing newline, comment-only file
    "# only a comment",
    # 17: blank lines preserved
    "x = 1\n\n\ny = 2  # keep blanks above\n",
    # 18: whitespace-only line preserved
    "x = 1\n    \ny = 2\n",
    # 19: comment with trailing spaces after it
    "x = 1  # comment   \n",
    # 20: tab before comment
    "x = 1\t# tabbed\n",
    # 21: hash character at start of string on its own line
    "s = '#'\n",
    # 22: nested quotes in f-string with format spec
    "width = 5\nprint(f\"{'#' * width:>10}\")  # ruler\n",
    # 23: dict literal with comments per entry
    "config = {\n    'a': 1,  # alpha\n    'b': 2,\n}\n",
    # 24: class with method and comments
    "class C:\n    # attributes\n    x = 1\n\n    def m(self):\n        return self.x  # getter\n",
    # 25: while loop with comment after colon line
    "i = 0\nwhile i < 3:  # loop\n    i += 1\n",
    # 26: chained comparison plus inline comment
    "a, b = 1, 2\nok = 0 < a < b  # ordered\n",
    # 27: string concatenation across lines inside parens
    "msg = (\n    'part one '  # first\n    'part two'\n)\n",
    # 28: bytes literal with hash
    "data = b'# raw bytes'\n",
    # 29: rb prefix
    "blob = rb'\\x00 # mixed'  # strip\n",
    # 30: single-quoted triple string, hash inside
    "s = '''\n# keep\n'''\n",
    # 31: empty file
    "",
    # 32: only blank lines
    "\n\n",
    # 33: comment with unicode
    "x = 1  # ünïcode comment ✓\n",
    # 34: string with unicode and hash
    "s = 'emoji 🙂 # tekst'\n",
    # 35: multiple statements with semicolons
    "a = 1; b = 2  # pair\n",
    # 36: lambda with default using string
    "f = lambda s='#': s  # dash\n",
    # 37: comment directly after colon block opener
    "if True:\n    # branch note\n    pass\n",
    # 38: else/elif chain with comments
    "x = 3\nif x < 0:\n    y = -1  # neg\nelif x == 0:\n    y = 0  # zero\nelse:\n    y = 1  # pos\n",
    # 39: try/except with comments
    "try:\n    v = int('3')  # parse\nexcept ValueError:\n    v = 0  # fallback\n",
    # 40: decorator line with comment
    "def dec(fn):\n    return fn\n\n@dec  # simple\ndef h():\n    pass\n",
    # 41: global + augmented assignment
    "count = 0\ndef bump():\n    global count\n    count += 1  # increment\n",
    # 42: nested function with comments at two indents
    "def outer():\n    # outer note\n    def inner():\n        # inner note\n        return 2\n    return inner()\n",
    # 43: context manager with comments
    "with open('notes.txt') as fh:  # read\n    body = fh.read()\n",
    # 44: escaped backslash at string end before comment
    "path = 'C:\\\\'  # windows\n",
    # 45: crlf line endings
    "x = 1  # one\r\ny = 2\r\n# gone\r\nz = 3\r\n",
    # 46: comment containing quotes and brackets
    "x = 1  # it's \"quoted\" [and (bracketed)]\n",
    # 47: comment containing triple quotes
    'x = 1  # """ not a string """\n',
    # 48: string ending in hash
    "s = 'trailing #'\n",
    # 49: f-string with double braces (literal brace)
    'fmt = f"{{literal}} {1}"  # braces\n',
    # 50: tabs for indentation
    "def t():\n\tx = 1  # tab indent\n\treturn x\n",
    # 51: match-free keyword soup with strings
    "keys = ['if', 'else', '# fake']\nfor k in keys:  # iterate\n    print(k)\n",
    # 52: long comment-only run between functions
    "def a():\n    return 1\n\n# section\n# divider\n# lines\n\ndef b():\n    return 2\n",
    # 53: assignment from conditional expression
    "flag = True\nv = 'y' if flag else 'n'  # pick\n",
    # 54: nested brackets and a trailing comment on closing line
    "m = [[1, 2], [3, 4]]\nflat = [x for row in m for x in row]  # flatten\n",
    # 55: string with embedded newline escape then comment
    "s = 'line1\\nline2'  # two lines in one\n",
]


def main() -> int:
    src_dir = CORPUS_DIR / "src"
    golden_dir = CORPUS_DIR / "golden"
    src_dir.mkdir(parents=True, exist_ok=True)
    golden_dir.mkdir(parents=True, exist_ok=True)
    for i, snippet in enumerate(SNIPPETS):
        (src_dir / f"{i:03d}.py").write_text(snippet, encoding="utf-8", newline="")
        (golden_dir / f"{i:03d}.py").write_text(oracle_strip(snippet), encoding="utf-8", newline="")
    print(f"wrote {len(SNIPPETS)} snippets to {CORPUS_DIR}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
