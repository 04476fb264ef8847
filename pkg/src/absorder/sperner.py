"""
Maximum k-families with Greene–Kleitman certificates.

A k-family is a set of vertices containing no chain of ``k + 1`` elements.
For any partition of the poset into chains ``C``, every k-family has at most
``sum(min(|C|, k))`` elements, so a k-family and a chain partition of equal
value prove each other optimal. :func:`max_k_family` produces both from one
min-cost flow; :func:`validate_certificate` re-checks them without trusting
the solver.

Flow network, for each vertex ``v`` split into ``v_in -> v_out``:

* ``s -> v_in`` cost ``k`` (opening a chain)
* ``v_in -> v_out`` capacity 1, cost ``-1`` (``v`` joins the chain)
* ``v_in -> v_out`` uncapacitated, cost 0 (the chain passes ``v`` by)
* ``v_out -> u_in`` cost 0 for each cover ``v ⋖ u``
* ``v_out -> t`` cost 0

A flow of value ``f`` covering ``c`` vertices costs ``k f - c``, and the
maximum k-family has ``|P| + min cost`` elements.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable

from .flow import BIG_CAP, MinCostFlow
from .poset import GradedPoset, PosetError, is_k_family, rank_sequence

__all__ = [
    "CertificateError", "KFamilyCertificate", "max_k_family", "max_k_family_exhaustive",
    "validate_certificate", "k_largest_ranks_sum", "is_k_sperner", "is_strong_sperner",
    "ClawFlow", "claw_normalized_flow", "verify_claw_flow", "non_sperner_fixture",
    "EXHAUSTIVE_LIMIT",
]

EXHAUSTIVE_LIMIT = 22


class CertificateError(AssertionError):
    """A k-family certificate failed independent validation."""


@dataclass(frozen=True)
class KFamilyCertificate:
    k: int
    family: tuple
    size: int
    dual_chains: tuple[tuple, ...]

    @property
    def chain_value(self) -> int:
        return sum(min(len(c), self.k) for c in self.dual_chains)

    def to_json(self, labeler=str) -> dict:
        return {
            "k": self.k,
            "size": self.size,
            "family": sorted(labeler(v) for v in self.family),
            "dual_chains": sorted([labeler(v) for v in c] for c in self.dual_chains),
        }


def _network(p: GradedPoset, k: int) -> tuple[MinCostFlow, list[int]]:
    n = len(p)
    source, sink = 2 * n, 2 * n + 1
    net = MinCostFlow(2 * n + 2)
    split = [0] * n
    for v in range(n):
        net.add_edge(source, 2 * v, BIG_CAP, k)
        split[v] = net.add_edge(2 * v, 2 * v + 1, 1, -1)
        net.add_edge(2 * v, 2 * v + 1, BIG_CAP, 0)
        net.add_edge(2 * v + 1, sink, BIG_CAP, 0)
    for x, y in p.covers:
        net.add_edge(2 * x + 1, 2 * y, BIG_CAP, 0)
    return net, split


def _decompose(net: MinCostFlow, p: GradedPoset, split: list[int]) -> list[list[int]]:
    """Peel unit source-sink paths off the flow; each yields the vertices it covers."""
    n = len(p)
    source, sink = 2 * n, 2 * n + 1
    remaining = {e: net.flow_on(e) for u in range(net.n) for e in net.adj[u]
                 if e % 2 == 0 and net.flow_on(e) > 0}
    split_ids = set(split)
    chains = []
    for _ in range(net.flow_value):
        node, covered = source, []
        while node != sink:
            for e in net.adj[node]:
                if remaining.get(e, 0) > 0:
                    remaining[e] -= 1
                    if e in split_ids:
                        covered.append(node // 2)
                    node = net.head[e]
                    break
            else:
                raise CertificateError("flow decomposition got stuck")
        chains.append(covered)
    return chains


def max_k_family(p: GradedPoset, k: int) -> KFamilyCertificate:
    """A maximum k-family of ``p`` with a matching chain-partition certificate."""
    if k < 1:
        raise PosetError("k must be at least 1")
    n = len(p)
    net, split = _network(p, k)
    source, sink = 2 * n, 2 * n + 1
    order = [source]
    for v in sorted(range(n), key=p.ranks.__getitem__):
        order += [2 * v, 2 * v + 1]
    order.append(sink)
    cost = net.solve(source, sink, order)

    used = _decompose(net, p, split)
    covered = {v for c in used for v in c}
    chains = [tuple(p.labels[v] for v in c) for c in used if c]
    chains += [(p.labels[v],) for v in range(n) if v not in covered]

    if net.flow_value == 0:
        family = list(range(n))
    else:
        # potentials with s and t pinned at 0; v is in the family iff its split edge drops >= 1
        dist = net.distances([source, sink])
        family = [v for v in range(n) if dist[2 * v] - dist[2 * v + 1] >= 1]

    cert = KFamilyCertificate(
        k=k,
        family=tuple(p.labels[v] for v in family),
        size=n + cost,
        dual_chains=tuple(chains),
    )
    if len(cert.family) != cert.size:
        raise CertificateError(
            f"extracted family has {len(cert.family)} vertices, flow predicts {cert.size}")
    return cert


def validate_certificate(p: GradedPoset, cert: KFamilyCertificate) -> None:
    """Raise :class:`CertificateError` unless ``cert`` proves its own optimality."""
    if len(set(cert.family)) != len(cert.family) or len(cert.family) != cert.size:
        raise CertificateError("family size does not match the stated size")
    if not set(cert.family) <= set(p.index):
        raise CertificateError("family contains unknown vertices")
    if not is_k_family(p, cert.family, cert.k):
        raise CertificateError(f"family is not a {cert.k}-family")
    seen: list[Hashable] = [v for c in cert.dual_chains for v in c]
    if len(seen) != len(p) or set(seen) != set(p.index):
        raise CertificateError("dual chains do not partition the vertex set")
    for c in cert.dual_chains:
        idx = sorted((p.index[v] for v in c), key=p.ranks.__getitem__)
        if any(not p.less(a, b) for a, b in zip(idx, idx[1:])):
            raise CertificateError(f"dual chain {c!r} is not totally ordered")
    if cert.chain_value != cert.size:
        raise CertificateError(
            f"chain partition value {cert.chain_value} differs from family size {cert.size}")


def max_k_family_exhaustive(p: GradedPoset, k: int) -> int:
    """Maximum k-family size by branch and bound over subsets (reference oracle).

    Vertices are decided in rank order, so when ``v`` is considered every
    chosen vertex below it is already known and the longest chosen chain
    ending at ``v`` is one more than the best of those.
    """
    if k < 1:
        raise PosetError("k must be at least 1")
    n = len(p)
    if n > EXHAUSTIVE_LIMIT:
        raise PosetError(f"exhaustive search refuses posets above {EXHAUSTIVE_LIMIT} vertices")
    order = sorted(range(n), key=p.ranks.__getitem__)
    pos = {v: i for i, v in enumerate(order)}
    below = p.below()
    below_pos = [[pos[u] for u in range(n) if below[v] >> u & 1] for v in order]
    best = k_largest_ranks_sum(p, k)
    height = [0] * n

    def search(i: int, size: int) -> None:
        nonlocal best
        if size + (n - i) <= best:
            return
        if i == n:
            best = size
            return
        h = 1 + max((height[j] for j in below_pos[i] if height[j]), default=0)
        if h <= k:
            height[i] = h
            search(i + 1, size + 1)
            height[i] = 0
        search(i + 1, size)

    search(0, 0)
    return best


def k_largest_ranks_sum(p: GradedPoset, k: int) -> int:
    return sum(sorted(rank_sequence(p), reverse=True)[:k])


def is_k_sperner(p: GradedPoset, k: int, certificate: KFamilyCertificate = None) -> bool:
    cert = max_k_family(p, k) if certificate is None else certificate
    return cert.size == k_largest_ranks_sum(p, k)


def is_strong_sperner(p: GradedPoset) -> bool:
    return all(is_k_sperner(p, k) for k in range(1, p.top_rank + 2))


@dataclass(frozen=True)
class ClawFlow:
    k: int
    edge_values: dict[tuple[int, int], Fraction]


def claw_normalized_flow(k: int) -> ClawFlow:
    """Uniform flow ``1/(k-1)`` on every edge of the claw with ``k - 1`` tops."""
    if k < 2:
        raise PosetError(f"a claw needs k >= 2, got {k}")
    value = Fraction(1, k - 1)
    return ClawFlow(k, {(0, top): value for top in range(1, k)})


def verify_claw_flow(flow: ClawFlow) -> bool:
    """Positivity, unit outflow from the bottom, and inflow matching each top's share of weight."""
    k = flow.k
    if set(flow.edge_values) != {(0, top) for top in range(1, k)}:
        return False
    if any(v <= 0 for v in flow.edge_values.values()):
        return False
    if sum(flow.edge_values.values()) != 1:
        return False
    # unit weights: each top carries 1 / (number of tops) of its level
    return all(flow.edge_values[(0, top)] == Fraction(1, k - 1) for top in range(1, k))


def non_sperner_fixture() -> GradedPoset:
    """Three minimal points under two maximal ones, plus an isolated point at rank 1.

    Ranks are ``[3, 3]`` but the three minima with the isolated point form
    an antichain of four.
    """
    from .poset import build_poset

    bottoms, tops = ["a", "b", "c"], ["x", "y"]
    rank = {v: 0 for v in bottoms} | {v: 1 for v in tops} | {"z": 1}
    return build_poset(bottoms + tops + ["z"], rank, [(b, t) for b in bottoms for t in tops])
