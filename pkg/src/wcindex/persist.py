"""Binary index files.

Layout (little-endian, fixed width)::

    magic      6s   b"WCIDX1"
    variant    B    tag
    params     7I Q beta k o chi g sigma n guard   (0 = unset)
    text       n*I  code points of t (no sentinel)
    tries      I    count, then per trie:
                    I vertex count
                    (count-1) * (I parent, I child, B kind, I start, I end)
                    I leaf count, per leaf: I vertex, I label count, labels*I
    crc        I    CRC32 of everything above

Vertices are numbered in preorder (SUB children in symbol order, STAR child
last), so a parent always precedes its children.  Decompositions and LCP
tables are rebuilt on load.
"""
from __future__ import annotations

import os
import struct
import zlib
from pathlib import Path

from .errors import IndexFormatError
from .indexes import (ArtIndex, Index, IndexVariant, LinearTimeIndex, SimpleIndex, TradeoffIndex,
                      Variant)
from .text import IndexedText
from .trie import ROOT, STAR, SUB, CompressedTrie
from .wildcard_tree import wildcard_tree_from_trie

MAGIC = b"WCIDX"
VERSION = b"1"
_TAGS = {Variant.SIMPLE: 1, Variant.ART_LINEAR: 2, Variant.TRADEOFF: 3, Variant.LINEAR_TIME: 4}
_KINDS = {v: k for k, v in _TAGS.items()}
_HEAD = struct.Struct("<6sB7IQ")
_EDGE = struct.Struct("<IIBII")
_U32 = struct.Struct("<I")
_LEAF = struct.Struct("<II")


def _preorder(trie: CompressedTrie) -> list[int]:
    out = []
    stack = [trie.root]
    while stack:
        v = stack.pop()
        out.append(v)
        if trie.star[v] >= 0:
            stack.append(trie.star[v])
        stack.extend(reversed(trie.children[v].values()))
    return out


def _encode_trie(trie: CompressedTrie, out: bytearray) -> None:
    order = _preorder(trie)
    new_id = {v: i for i, v in enumerate(order)}
    out += _U32.pack(len(order))
    for v in order[1:]:
        kind = trie.kind[v]
        start, end = (0, 0) if kind == STAR else (trie.lstart[v], trie.lend[v])
        out += _EDGE.pack(new_id[trie.parent[v]], new_id[v], kind, start, end)
    leaves = [v for v in order if v in trie.labels]
    out += _U32.pack(len(leaves))
    for v in leaves:
        labs = trie.labels[v]
        out += struct.pack(f"<II{len(labs)}I", new_id[v], len(labs), *labs)


class _Reader:
    def __init__(self, data: bytes, pos: int = 0):
        self.data = data
        self.pos = pos

    def take(self, st: struct.Struct) -> tuple:
        if self.pos + st.size > len(self.data):
            raise IndexFormatError("index file is truncated")
        vals = st.unpack_from(self.data, self.pos)
        self.pos += st.size
        return vals

    def u32s(self, count: int) -> tuple[int, ...]:
        size = 4 * count
        if self.pos + size > len(self.data):
            raise IndexFormatError("index file is truncated")
        vals = struct.unpack_from(f"<{count}I", self.data, self.pos)
        self.pos += size
        return vals


def _decode_trie(text: IndexedText, rd: _Reader) -> CompressedTrie:
    (count,) = rd.take(_U32)
    if count < 1:
        raise IndexFormatError("trie without vertices")
    last = text.n + 1
    trie = CompressedTrie(text)
    src = trie.source
    trie._new(-1, ROOT, 1, 0, 0, 0, -1, 0, 0)
    for expect in range(1, count):
        parent, child, kind, start, end = rd.take(_EDGE)
        if child != expect or not 0 <= parent < child:
            raise IndexFormatError(f"edge record {expect} is out of preorder")
        if kind == STAR:
            if trie.star[parent] >= 0:
                raise IndexFormatError(f"vertex {parent} has two STAR children")
            trie._new(parent, STAR, 1, 0, trie.depth[parent] + 1, 0, -1, trie.wheight[parent] + 1, 0)
            trie.star[parent] = child
        elif kind == SUB:
            if not 1 <= start <= end <= last:
                raise IndexFormatError(f"edge label ({start},{end}) outside the text")
            length = end - start + 1
            trie._new(parent, SUB, start, end, trie.depth[parent] + length,
                      trie.ldepth[parent] + length, trie.level_root[parent], trie.wheight[parent], 0)
            sym = src[start - 1]
            if sym in trie.children[parent]:
                raise IndexFormatError(f"vertex {parent} has two edges starting with one symbol")
            trie.children[parent][sym] = child
        else:
            raise IndexFormatError(f"unknown edge kind {kind}")
    (leaf_count,) = rd.take(_U32)
    for _ in range(leaf_count):
        v, nlab = rd.take(_LEAF)
        if not 0 <= v < count or trie.children[v] or v in trie.labels:
            raise IndexFormatError(f"bad leaf record for vertex {v}")
        labs = list(rd.u32s(nlab))
        if not labs or any(not 1 <= x <= last for x in labs):
            raise IndexFormatError(f"leaf {v} has labels outside 1..{last}")
        trie.labels[v] = labs
    for v in range(count):
        if not trie.children[v] and v not in trie.labels:
            raise IndexFormatError(f"vertex {v} has no children and no labels")
    rep = trie.rep
    for v in range(count - 1, -1, -1):
        if v in trie.labels:
            rep[v] = trie.lend[v] - trie.ldepth[v] + 1
        else:
            rep[v] = rep[next(iter(trie.children[v].values()))]
    for v in range(count):
        if trie.level_root[v] == v:
            trie._weigh(v)
    return trie


def dumps(index: Index) -> bytes:
    v = index.variant
    text = index.text
    summary = index.summary()
    out = bytearray(_HEAD.pack(
        MAGIC + VERSION, _TAGS[index.kind], getattr(index, "beta", 0) or 0, index.k, index.o,
        int(summary.get("chi", 0)), int(summary.get("g", 0)), text.sigma, text.n,
        v.guard or 0))
    out += struct.pack(f"<{text.n}I", *text.codes[:-1])
    tries = index.tries()
    out += _U32.pack(len(tries))
    for trie in tries:
        _encode_trie(trie, out)
    out += _U32.pack(zlib.crc32(out))
    return bytes(out)


def loads(data: bytes) -> Index:
    if not data.startswith(MAGIC):
        raise IndexFormatError("not an index file (bad magic)")
    if data[5:6] != VERSION:
        raise IndexFormatError(f"unsupported index format version {data[5:6]!r}")
    if len(data) < _HEAD.size + 4:
        raise IndexFormatError("index file is truncated")
    body, (crc,) = data[:-4], _U32.unpack(data[-4:])
    if zlib.crc32(body) != crc:
        raise IndexFormatError("checksum mismatch: index file is corrupted")
    rd = _Reader(body)
    _, tag, beta, k, o, chi, g, sigma, n, guard = rd.take(_HEAD)
    kind = _KINDS.get(tag)
    if kind is None:
        raise IndexFormatError(f"unknown variant tag {tag}")
    if n < 1:
        raise IndexFormatError("index over an empty text")
    try:
        chars = "".join(map(chr, rd.u32s(n)))
    except ValueError:
        raise IndexFormatError("text section holds invalid code points") from None
    text = IndexedText(chars)
    if text.sigma != sigma:
        raise IndexFormatError("alphabet size in header does not match the text")
    (count,) = rd.take(_U32)
    tries = [_decode_trie(text, rd) for _ in range(count)]
    if rd.pos != len(body):
        raise IndexFormatError("trailing bytes after the last trie")
    variant = IndexVariant(kind, beta or None, k, o, chi or None, g or None, guard or None)
    expected = 2 if kind == Variant.LINEAR_TIME else 1
    if count != expected:
        raise IndexFormatError(f"{kind.value} index needs {expected} tries, file has {count}")
    if kind == Variant.SIMPLE:
        return SimpleIndex(text, variant, tries[0])
    if kind == Variant.ART_LINEAR:
        return ArtIndex(text, variant, tries[0])
    if kind == Variant.TRADEOFF:
        wt = wildcard_tree_from_trie(tries[0], beta, k + o, variant.guard)
        return TradeoffIndex(text, variant, wt=wt)
    special = wildcard_tree_from_trie(tries[0], 1, k + o, variant.guard)
    return LinearTimeIndex(text, variant, special=special, tree=tries[1])


def save_index(index: Index, path: str | os.PathLike) -> None:
    Path(path).write_bytes(dumps(index))


def load_index(path: str | os.PathLike) -> Index:
    return loads(Path(path).read_bytes())
