"""Indexed text, substring references and the gapped pattern model.

Positions are 1-indexed throughout.  The text is stored as a tuple of integer
code points with an internal sentinel appended at position ``n + 1``.  The
sentinel lies outside the Unicode range, so it can never appear in a pattern
and it sorts after every real symbol.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import accumulate
from typing import Iterable, Sequence

from .errors import PatternError

SENTINEL = 0x110000
SENTINEL_DISPLAY = "$"
META = "*{}\\"


def encode(s: str) -> tuple[int, ...]:
    return tuple(map(ord, s))


def decode(codes: Iterable[int]) -> str:
    return "".join(SENTINEL_DISPLAY if c == SENTINEL else chr(c) for c in codes)


class IndexedText:
    """The string ``t`` plus its sentinel-terminated code sequence."""

    __slots__ = ("chars", "codes", "n", "alphabet", "sigma", "__dict__")

    def __init__(self, chars: str):
        if not chars:
            raise ValueError("indexed text must contain at least one symbol")
        self.chars = chars
        self.codes: tuple[int, ...] = encode(chars) + (SENTINEL,)
        self.n = len(chars)
        self.alphabet = frozenset(chars)
        self.sigma = len(self.alphabet)

    def symbol(self, pos: int) -> int:
        return self.codes[pos - 1]

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other) -> bool:
        return isinstance(other, IndexedText) and other.chars == self.chars

    def __hash__(self) -> int:
        return hash(self.chars)

    def __repr__(self) -> str:
        head = self.chars if self.n <= 24 else self.chars[:21] + "..."
        return f"IndexedText({head!r}, n={self.n}, sigma={self.sigma})"


@dataclass(frozen=True, slots=True)
class SubstringRef:
    start: int
    end: int

    def check(self, text: IndexedText) -> None:
        if not 1 <= self.start <= self.end <= text.n + 1:
            raise ValueError(f"substring reference {self} outside 1..{text.n + 1}")

    def __len__(self) -> int:
        return self.end - self.start + 1


def substring_codes(t: IndexedText, start: int, end: int) -> tuple[int, ...]:
    last = t.n + 1
    start = max(start, 1)
    end = min(end, last)
    if start > end:
        return ()
    return t.codes[start - 1:end]


def substring(t: IndexedText, start: int | SubstringRef, end: int | None = None) -> str:
    """Read ``t$[start, end]`` with clamping; the sentinel renders as ``$``."""
    if isinstance(start, SubstringRef):
        start, end = start.start, start.end
    if end is None:
        raise TypeError("substring() needs an end position or a SubstringRef")
    return decode(substring_codes(t, start, end))


@dataclass(frozen=True, slots=True)
class Occurrence:
    start: int
    end: int


@dataclass(frozen=True)
class GapPattern:
    """``p_0 *{a_1,b_1} p_1 ... *{a_j,b_j} p_j``.

    Inner subpatterns are non-empty; only ``p_0`` and ``p_j`` may be empty
    (leading and trailing gaps).
    """

    subpatterns: tuple[str, ...]
    gaps: tuple[tuple[int, int], ...] = ()
    _codes: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        subs = tuple(self.subpatterns)
        gaps = tuple((int(a), int(b)) for a, b in self.gaps)
        object.__setattr__(self, "subpatterns", subs)
        object.__setattr__(self, "gaps", gaps)
        if len(subs) != len(gaps) + 1:
            raise ValueError("a pattern with j gaps needs j + 1 subpatterns")
        for a, b in gaps:
            if a < 0 or a > b:
                raise ValueError(f"invalid gap bounds ({a},{b})")
        if any(not s for s in subs[1:-1]):
            raise ValueError("inner subpatterns must be non-empty; merge adjacent gaps")
        if not sum(map(len, subs)):
            raise ValueError("pattern must contain at least one symbol (m > 0)")
        object.__setattr__(self, "_codes", tuple(encode(s) for s in subs))

    @property
    def codes(self) -> tuple[tuple[int, ...], ...]:
        return self._codes

    @property
    def m(self) -> int:
        return sum(map(len, self.subpatterns))

    @property
    def j(self) -> int:
        return len(self.gaps)

    @property
    def A(self) -> int:
        return sum(a for a, _ in self.gaps)

    @property
    def B(self) -> int:
        return sum(b for _, b in self.gaps)

    @property
    def prefix_A(self) -> list[int]:
        """``A_i`` for i = 0..j (normal wildcards preceding ``p_i``)."""
        return [0, *accumulate(a for a, _ in self.gaps)]

    @property
    def prefix_B(self) -> list[int]:
        return [0, *accumulate(b for _, b in self.gaps)]

    @property
    def wildcard_only(self) -> bool:
        """True when every gap is a plain ``*``; such queries report starts only."""
        return all(g == (1, 1) for g in self.gaps)

    @property
    def gap_product(self) -> int:
        prod = 1
        for a, b in self.gaps:
            prod *= b - a + 1
        return prod

    def __str__(self) -> str:
        return render_pattern(self)


def _escape(s: str) -> str:
    return "".join("\\" + c if c in META else c for c in s)


def render_pattern(p: GapPattern) -> str:
    out = [_escape(p.subpatterns[0])]
    for (a, b), sub in zip(p.gaps, p.subpatterns[1:]):
        out.append("*" if (a, b) == (1, 1) else f"*{{{a},{b}}}")
        out.append(_escape(sub))
    return "".join(out)


def _parse_bounds(text: str, open_at: int) -> tuple[int, int, int]:
    close = text.find("}", open_at)
    if close < 0:
        raise PatternError("unterminated gap bounds", open_at)
    body = text[open_at + 1:close]
    parts = body.split(",")
    if len(parts) != 2:
        raise PatternError(f"gap bounds must be '{{a,b}}', got '{{{body}}}'", open_at)
    try:
        a, b = (int(x.strip()) for x in parts)
    except ValueError:
        raise PatternError(f"non-numeric gap bounds '{{{body}}}'", open_at) from None
    if a < 0 or b < 0:
        raise PatternError("gap bounds must be non-negative", open_at)
    if a > b:
        raise PatternError(f"gap lower bound {a} exceeds upper bound {b}", open_at)
    return a, b, close + 1


def parse_pattern(text: str) -> GapPattern:
    """Parse ``*`` wildcards, ``*{a,b}`` gaps and backslash escapes.

    Runs of gaps separated by nothing are merged by summing their bounds.
    """
    if not text:
        raise PatternError("empty pattern", 0)
    subs: list[str] = []
    gaps: list[tuple[int, int]] = []
    cur: list[str] = []
    i = 0
    while i < len(text):
        c = text[i]
        if c == "\\":
            if i + 1 >= len(text) or text[i + 1] not in META:
                raise PatternError("dangling or invalid escape", i)
            cur.append(text[i + 1])
            i += 2
        elif c == "*":
            if i + 1 < len(text) and text[i + 1] == "{":
                a, b, i = _parse_bounds(text, i + 1)
            else:
                a, b = 1, 1
                i += 1
            if gaps and not cur and subs:
                pa, pb = gaps[-1]
                gaps[-1] = (pa + a, pb + b)
            else:
                subs.append("".join(cur))
                cur = []
                gaps.append((a, b))
        elif c in "{}":
            raise PatternError(f"unescaped '{c}'", i)
        else:
            cur.append(c)
            i += 1
    subs.append("".join(cur))
    if not sum(map(len, subs)):
        raise PatternError("pattern has no symbols (m = 0)", 0)
    return GapPattern(tuple(subs), tuple(gaps))


def wildcard_pattern(subpatterns: Sequence[str]) -> GapPattern:
    """Build ``p_0 * p_1 * ... * p_j`` directly."""
    return GapPattern(tuple(subpatterns), ((1, 1),) * (len(subpatterns) - 1))
