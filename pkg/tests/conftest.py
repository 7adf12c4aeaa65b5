from __future__ import annotations

import random

import pytest

from wcindex.trie import CompressedTrie, Location


def random_text(rng: random.Random, n: int, sigma: int) -> str:
    return "".join(rng.choice("abcdefgh"[:sigma]) for _ in range(n))


def all_locations(trie: CompressedTrie, vertices) -> list[Location]:
    """Every explicit vertex and every mid-edge position among ``vertices``."""
    out = []
    for v in vertices:
        out.append(Location(v))
        if trie.kind[v] == 1:
            out.extend(Location(v, off) for off in range(1, trie.edge_len(v)))
    return out


def walk_view(trie: CompressedTrie, members, loc: Location, s) -> tuple[Location, int]:
    """Symbol-by-symbol walk that refuses to leave ``members``."""
    from wcindex.trie import descend

    cur, got = loc, 0
    for sym in s:
        nxt, k = descend(trie, cur, (sym,))
        if k == 0 or nxt.vertex not in members:
            break
        cur, got = nxt, got + 1
    return cur, got


@pytest.fixture
def rng():
    return random.Random(12345)
