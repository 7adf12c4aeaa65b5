"""Space and counter sweeps over generated corpora.

Each row builds one wildcard tree, checks the stored-string and light-height
bounds, runs a batch of random wildcard queries and checks their LCP-query
counts.  Any violated bound aborts the sweep with diagnostics; guard
exhaustion is recorded in the row and the sweep moves on.
"""
from __future__ import annotations

import csv
import io
import random
import warnings
from dataclasses import astuple, dataclass, fields
from typing import Iterable, Sequence, TextIO

from .errors import ResourceError
from .indexes import IndexVariant, TradeoffIndex, build_index
from .text import GapPattern, IndexedText, wildcard_pattern
from .trie import TrieView, build_suffix_tree, trie_stats

LETTERS = "abcdefghijklmnopqrstuvwxyz"


class BoundViolation(AssertionError):
    pass


@dataclass(frozen=True)
class CorpusSpec:
    """``kind`` is ``uniform``, ``zipf`` or ``periodic`` (``unit`` repeated)."""

    kind: str
    n: int
    sigma: int = 2
    seed: int = 0
    unit: str = "ab"
    zipf_s: float = 1.2

    @property
    def name(self) -> str:
        if self.kind == "periodic":
            return f"periodic-{self.unit}-{self.n}"
        return f"{self.kind}-s{self.sigma}-n{self.n}-seed{self.seed}"

    @classmethod
    def parse(cls, spec: str, seed: int = 0) -> "CorpusSpec":
        """``uniform:N:SIGMA``, ``zipf:N:SIGMA`` or ``periodic:UNIT:N``."""
        parts = spec.split(":")
        try:
            if parts[0] in ("uniform", "zipf") and len(parts) == 3:
                return cls(parts[0], int(parts[1]), int(parts[2]), seed)
            if parts[0] == "periodic" and len(parts) == 3:
                return cls("periodic", int(parts[2]), len(set(parts[1])), seed, unit=parts[1])
        except ValueError:
            pass
        raise ValueError(f"bad corpus spec {spec!r}; expected uniform:N:SIGMA, zipf:N:SIGMA "
                         f"or periodic:UNIT:N")


def alphabet(sigma: int) -> str:
    if not 1 <= sigma <= len(LETTERS):
        raise ValueError(f"sigma must be in 1..{len(LETTERS)}")
    return LETTERS[:sigma]


def generate_corpus(spec: CorpusSpec) -> str:
    if spec.n < 1:
        raise ValueError("corpus length must be positive")
    if spec.kind == "periodic":
        reps = -(-spec.n // len(spec.unit))
        return (spec.unit * reps)[:spec.n]
    rng = random.Random(spec.seed)
    al = alphabet(spec.sigma)
    if spec.kind == "uniform":
        return "".join(rng.choice(al) for _ in range(spec.n))
    if spec.kind == "zipf":
        weights = [1 / (r + 1) ** spec.zipf_s for r in range(spec.sigma)]
        return "".join(rng.choices(al, weights, k=spec.n))
    raise ValueError(f"unknown corpus kind {spec.kind!r}")


def ceil_log(x: int, base: int) -> int:
    """Smallest ``e`` with ``base ** e >= x`` (exact integer arithmetic)."""
    e, p = 0, 1
    while p < x:
        p *= base
        e += 1
    return e


@dataclass(frozen=True)
class SweepRow:
    corpus: str
    variant: str
    beta: int
    k: int
    n: int
    sigma: int
    stored_strings: int
    vertex_count: int
    max_lightheight: int
    lightheight_limit: int
    bound_value: int
    bound_satisfied: bool
    queries: int
    mean_lcp_queries: str
    max_lcp_queries: int
    max_branch_events: int
    status: str


HEADER = [f.name for f in fields(SweepRow)]


def random_wildcard_query(rng: random.Random, t: str, k: int):
    """A window of ``t`` with up to ``k`` non-adjacent inner symbols turned into wildcards."""
    j = min(rng.randint(0, k), (len(t) - 1) // 2)
    length = rng.randint(2 * j + 1, min(len(t), 2 * j + 4))
    start = rng.randint(0, len(t) - length)
    window = t[start:start + length]
    picks = sorted(rng.sample(range(1, length - j), j))
    holes = [p + i for i, p in enumerate(picks)]
    pieces, prev = [], 0
    for h in holes:
        pieces.append(window[prev:h])
        prev = h + 1
    pieces.append(window[prev:])
    return wildcard_pattern(pieces)


def sweep_row(spec: CorpusSpec, beta: int, k: int, queries: int = 20, seed: int = 0,
              guard: int | None = None) -> SweepRow:
    t = generate_corpus(spec)
    text = IndexedText(t)
    key = f"{seed}:{spec.name}:{beta}:{k}"
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            index = build_index(text, IndexVariant.tradeoff(beta, k, 0, guard), strict=False)
    except ResourceError as exc:
        return SweepRow(spec.name, "TRADEOFF", beta, k, text.n, text.sigma, exc.count, 0, 0, 0, 0,
                        False, 0, "", 0, 0, f"guard_exhausted:{exc.count}")
    assert isinstance(index, TradeoffIndex)
    wt = index.wt
    h = wt.max_lightheight
    if beta >= 2:
        limit = ceil_log(wt.source_size, beta)
    else:
        limit = trie_stats(TrieView(build_suffix_tree(text))).height
    bound = wt.size_bound(h)
    problems = []
    if wt.stored_strings > bound:
        problems.append(f"stored_strings {wt.stored_strings} > bound {bound}")
    if h > limit:
        problems.append(f"max lightheight {h} > limit {limit}")
    if k == 0 and wt.stored_strings != text.n + 1:
        problems.append(f"k=0 tree stores {wt.stored_strings} strings, expected {text.n + 1}")
    rng = random.Random(key)
    counts, branches = [], []
    for _ in range(queries):
        p = random_wildcard_query(rng, t, k)
        _, stats = index.query(p)
        allowed = sum(beta ** i for i in range(p.j + 1))
        if stats.lcp_queries > allowed:
            problems.append(f"query {p}: lcp_queries {stats.lcp_queries} > {allowed}")
        counts.append(stats.lcp_queries)
        branches.append(stats.branch_events)
    if problems:
        raise BoundViolation(f"{key}: " + "; ".join(problems))
    mean = f"{sum(counts) / len(counts):.3f}" if counts else ""
    return SweepRow(spec.name, "TRADEOFF", beta, k, text.n, text.sigma, wt.stored_strings,
                    wt.vertex_count, h, limit, bound, True, len(counts), mean,
                    max(counts, default=0), max(branches, default=0), "ok")


def run_sweep(corpora: Iterable[CorpusSpec], betas: Sequence[int], ks: Sequence[int],
              queries: int = 20, seed: int = 0, guard: int | None = None) -> list[SweepRow]:
    rows = [sweep_row(spec, beta, k, queries, seed, guard)
            for spec in corpora for beta in betas for k in ks]
    return sorted(rows, key=lambda r: (r.corpus, r.beta, r.k))


def write_csv(rows: Iterable[SweepRow], out: TextIO, seed: int) -> None:
    out.write(f"# seed={seed}\n")
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(HEADER)
    for row in rows:
        writer.writerow(astuple(row))


def sweep_csv(rows: Iterable[SweepRow], seed: int) -> str:
    buf = io.StringIO()
    write_csv(rows, buf, seed)
    return buf.getvalue()



def random_gap_pattern(rng: random.Random, symbols: str, k: int, o: int, max_gap: int = 4,
                       max_sub: int = 3, max_j: int | None = None) -> GapPattern:
    """A random pattern with ``j <= k`` gaps, ``A <= k`` and ``B - A <= o``."""
    limit = k if max_j is None else min(k, max_j)
    j = rng.randint(0, limit)
    subs = ["".join(rng.choice(symbols) for _ in range(rng.randint(0, max_sub)))
            for _ in range(j + 1)]
    for i in range(1, j):
        subs[i] = subs[i] or rng.choice(symbols)
    if not any(subs):
        subs[rng.randrange(j + 1)] = rng.choice(symbols)
    gaps = []
    a_left, opt_left = k, o
    for _ in range(j):
        a = rng.randint(0, min(max_gap, a_left))
        extra = rng.randint(0, min(max_gap - a, opt_left))
        a_left -= a
        opt_left -= extra
        gaps.append((a, a + extra))
    return GapPattern(tuple(subs), tuple(gaps))
