"""
Finite graded posets stored as a Hasse diagram.

Every cover must raise rank by exactly one. Vertex labels are opaque
hashables; nothing here looks inside them. Order queries go through a
transitive closure held as one Python-int bitset per vertex, computed once on
first use.
"""

from __future__ import annotations

import threading
from itertools import combinations
from typing import Callable, Hashable, Iterable, Mapping, Optional, Sequence, Union

__all__ = [
    "PosetError", "GradedPoset", "build_poset", "product", "relabel",
    "rank_sequence", "is_unimodal", "is_strictly_log_concave", "is_log_concave",
    "strict_order_pairs", "is_spanning_subposet", "is_k_family",
    "is_k_family_bruteforce", "longest_chain", "convolve", "chain", "export_dot",
]


class PosetError(ValueError):
    pass


class GradedPoset:
    """A validated graded poset; construct through :func:`build_poset`.

    Vertices are addressed either by label or by their index in
    :attr:`labels`. ``covers`` holds index pairs ``(x, y)`` with ``y``
    covering ``x``.
    """

    def __init__(self, labels: Sequence[Hashable], ranks: Sequence[int],
                 covers: Sequence[tuple[int, int]]):
        self.labels: tuple = tuple(labels)
        self.ranks: tuple[int, ...] = tuple(ranks)
        self.covers: tuple[tuple[int, int], ...] = tuple(covers)
        self.index: dict = {label: i for i, label in enumerate(self.labels)}
        self.up: list[list[int]] = [[] for _ in self.labels]
        self.down: list[list[int]] = [[] for _ in self.labels]
        for x, y in self.covers:
            self.up[x].append(y)
            self.down[y].append(x)
        self._above: Optional[list[int]] = None
        self._lock = threading.Lock()
        self.validate()

    def __len__(self) -> int:
        return len(self.labels)

    def __repr__(self) -> str:
        return f"GradedPoset({len(self)} vertices, {len(self.covers)} covers, ranks={rank_sequence(self)})"

    @property
    def top_rank(self) -> int:
        return max(self.ranks, default=-1)

    def rank(self, label) -> int:
        return self.ranks[self.index[label]]

    def validate(self) -> None:
        """Re-check the structural invariants; raises :class:`PosetError`."""
        n = len(self.labels)
        if len(self.index) != n:
            raise PosetError("duplicate vertex labels")
        if len(self.ranks) != n:
            raise PosetError("rank list length does not match vertex count")
        if any(r < 0 for r in self.ranks):
            raise PosetError("ranks must be nonnegative")
        if n and 0 not in self.ranks:
            raise PosetError("rank 0 is empty")
        if len(set(self.covers)) != len(self.covers):
            raise PosetError("duplicate cover")
        for x, y in self.covers:
            if not (0 <= x < n and 0 <= y < n):
                raise PosetError(f"cover ({x}, {y}) references a missing vertex")
            if self.ranks[y] != self.ranks[x] + 1:
                raise PosetError(
                    f"cover {self.labels[x]!r} < {self.labels[y]!r} jumps from rank "
                    f"{self.ranks[x]} to {self.ranks[y]}")

    @property
    def above(self) -> list[int]:
        """``above[v]`` is the bitset of vertices strictly greater than ``v``."""
        if self._above is None:
            with self._lock:
                if self._above is None:
                    self._above = self._closure()
        return self._above

    def _closure(self) -> list[int]:
        above = [0] * len(self.labels)
        for v in sorted(range(len(self.labels)), key=self.ranks.__getitem__, reverse=True):
            bits = 0
            for u in self.up[v]:
                bits |= above[u] | (1 << u)
            above[v] = bits
        return above

    def below(self) -> list[int]:
        """Bitsets of vertices strictly below each vertex."""
        out = [0] * len(self.labels)
        for v, bits in enumerate(self.above):
            while bits:
                low = bits & -bits
                out[low.bit_length() - 1] |= 1 << v
                bits ^= low
        return out

    def less(self, x: int, y: int) -> bool:
        """Strict order test on indices."""
        return bool(self.above[x] >> y & 1)

    def comparable(self, x: int, y: int) -> bool:
        return x == y or self.less(x, y) or self.less(y, x)


def build_poset(vertices: Iterable[Hashable],
                rank: Union[Mapping, Callable[[Hashable], int]],
                covers: Iterable[tuple[Hashable, Hashable]]) -> GradedPoset:
    """Build a poset from labels, a rank map (or function) and label cover pairs."""
    labels = list(vertices)
    index = {label: i for i, label in enumerate(labels)}
    if len(index) != len(labels):
        raise PosetError("duplicate vertex labels")
    rank_of = rank.__getitem__ if isinstance(rank, Mapping) else rank
    ranks = [rank_of(v) for v in labels]
    pairs = []
    for x, y in covers:
        if x not in index or y not in index:
            raise PosetError(f"cover ({x!r}, {y!r}) references a missing vertex")
        pairs.append((index[x], index[y]))
    return GradedPoset(labels, ranks, pairs)


def chain(length: int) -> GradedPoset:
    """The chain ``0 < 1 < ... < length-1``."""
    return GradedPoset(range(length), range(length), [(i, i + 1) for i in range(length - 1)])


def product(p: GradedPoset, q: GradedPoset) -> GradedPoset:
    """Cartesian product; labels are pairs ``(p_label, q_label)``."""
    nq = len(q)
    labels = [(a, b) for a in p.labels for b in q.labels]
    ranks = [ra + rb for ra in p.ranks for rb in q.ranks]
    covers = []
    for x, y in p.covers:
        covers.extend((x * nq + j, y * nq + j) for j in range(nq))
    for x, y in q.covers:
        covers.extend((i * nq + x, i * nq + y) for i in range(len(p)))
    return GradedPoset(labels, ranks, covers)


def relabel(p: GradedPoset, f: Callable[[Hashable], Hashable]) -> GradedPoset:
    """Same structure with every label replaced by ``f(label)``; ``f`` must be injective."""
    return GradedPoset([f(v) for v in p.labels], p.ranks, p.covers)


def rank_sequence(p: GradedPoset) -> list[int]:
    counts = [0] * (p.top_rank + 1)
    for r in p.ranks:
        counts[r] += 1
    return counts


def convolve(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def is_unimodal(seq: Sequence[int]) -> bool:
    i = 0
    while i + 1 < len(seq) and seq[i] <= seq[i + 1]:
        i += 1
    while i + 1 < len(seq) and seq[i] >= seq[i + 1]:
        i += 1
    return i >= len(seq) - 1


def is_log_concave(seq: Sequence[int]) -> bool:
    return all(seq[i] ** 2 >= seq[i - 1] * seq[i + 1] for i in range(1, len(seq) - 1))


def is_strictly_log_concave(seq: Sequence[int]) -> bool:
    return all(seq[i] ** 2 > seq[i - 1] * seq[i + 1] for i in range(1, len(seq) - 1))


def strict_order_pairs(p: GradedPoset) -> set[tuple]:
    """All label pairs ``(x, y)`` with ``x < y``."""
    out = set()
    for x, bits in enumerate(p.above):
        while bits:
            low = bits & -bits
            out.add((p.labels[x], p.labels[low.bit_length() - 1]))
            bits ^= low
    return out


def is_spanning_subposet(p: GradedPoset, q: GradedPoset) -> bool:
    """True iff ``p`` and ``q`` share vertices and ranks and every relation of ``p`` holds in ``q``."""
    if len(p) != len(q) or set(p.index) != set(q.index):
        return False
    if any(q.rank(v) != r for v, r in zip(p.labels, p.ranks)):
        return False
    # covers generate the order, so checking them suffices
    for x, y in p.covers:
        if not q.less(q.index[p.labels[x]], q.index[p.labels[y]]):
            return False
    return True


def _indices(p: GradedPoset, family: Iterable[Hashable]) -> list[int]:
    return sorted({p.index[v] for v in family}, key=p.ranks.__getitem__)


def longest_chain(p: GradedPoset, family: Optional[Iterable[Hashable]] = None) -> int:
    """Size of the longest chain inside ``family`` (default: the whole poset)."""
    idx = _indices(p, p.labels if family is None else family)
    above = p.above
    best: dict[int, int] = {}
    longest = 0
    for v in reversed(idx):
        mask = above[v]
        tail = max((best[u] for u in best if mask >> u & 1), default=0)
        best[v] = tail + 1
        longest = max(longest, tail + 1)
    return longest


def is_k_family(p: GradedPoset, family: Iterable[Hashable], k: int) -> bool:
    """True iff ``family`` contains no chain of ``k + 1`` elements."""
    if k < 1:
        raise PosetError("k must be at least 1")
    return longest_chain(p, family) <= k


def is_k_family_bruteforce(p: GradedPoset, family: Iterable[Hashable], k: int) -> bool:
    """Direct check over every ``(k+1)``-subset; exponential, for cross-checks only."""
    idx = [p.index[v] for v in set(family)]
    for subset in combinations(idx, k + 1):
        if all(p.comparable(a, b) for a, b in combinations(subset, 2)):
            return False
    return True


def _dot_quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(p: GradedPoset, labeler: Callable[[Hashable], str] = str,
               name: str = "poset") -> str:
    """Graphviz digraph with one ``rank=same`` cluster per rank level.

    Nodes are numbered by sorting on ``(rank, label text)``, so the output is
    byte-identical for equal inputs. Edges point from lower to higher rank.
    """
    texts = [labeler(v) for v in p.labels]
    order = sorted(range(len(p)), key=lambda v: (p.ranks[v], texts[v]))
    node = {v: i for i, v in enumerate(order)}
    lines = [f"digraph {_dot_quote(name)} {{", "  rankdir=BT;"]
    for r in range(p.top_rank + 1):
        lines.append(f"  subgraph rank_{r} {{")
        lines.append("    rank=same;")
        for v in order:
            if p.ranks[v] == r:
                lines.append(f"    n{node[v]} [label={_dot_quote(texts[v])}];")
        lines.append("  }")
    for a, b in sorted((node[x], node[y]) for x, y in p.covers):
        lines.append(f"  n{a} -> n{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"
