"""Neutral request/response shapes shared by all provider backends."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

ROLES = ("system", "user", "assistant")


@dataclass(frozen=True)
class Message:
    role: str
    content: str

    def __post_init__(self):
        if self.role not in ROLES:
            raise ValueError(f"unknown role: {self.role!r}")


@dataclass(frozen=True)
class Completion:
    text: str
    reasoning_trace: Optional[str] = None
    usage: Optional[Mapping[str, int]] = None


def conversation_text(convo: Sequence[Message]) -> str:
    """The canonical text a mock scenario matches against: all message
    contents joined by newlines, in order."""
    return "\n".join(m.content for m in convo)


def user(content: str) -> Message:
    return Message(role="user", content=content)


def assistant(content: str) -> Message:
    return Message(role="assistant", content=content)


def system(content: str) -> Message:
    return Message(role="system", content=content)
