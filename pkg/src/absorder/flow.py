"""
Integer min-cost flow by successive shortest paths with vertex potentials.

The solver minimises cost over *all* flow values: augmentation stops as soon
as the cheapest source-sink path no longer has negative cost. Initial
potentials come from one pass over a caller-supplied topological order, which
is what lets negative edge costs through on the first Dijkstra.
"""

from __future__ import annotations

import heapq
from typing import Iterable, Sequence

INF = float("inf")
BIG_CAP = 1 << 60


class FlowError(RuntimeError):
    pass


class MinCostFlow:
    def __init__(self, num_nodes: int):
        self.n = num_nodes
        self.adj: list[list[int]] = [[] for _ in range(num_nodes)]
        # edge e and its reverse e ^ 1
        self.head: list[int] = []
        self.cap: list[int] = []
        self.cost: list[int] = []
        self.potential: list[int] = [0] * num_nodes
        self.flow_value = 0
        self.total_cost = 0

    def add_edge(self, u: int, v: int, cap: int, cost: int) -> int:
        eid = len(self.head)
        self.head += [v, u]
        self.cap += [cap, 0]
        self.cost += [cost, -cost]
        self.adj[u].append(eid)
        self.adj[v].append(eid + 1)
        return eid

    def flow_on(self, eid: int) -> int:
        """Flow currently on forward edge ``eid``."""
        return self.cap[eid ^ 1]

    def _init_potentials(self, source: int, order: Sequence[int]) -> None:
        dist = [INF] * self.n
        dist[source] = 0
        for u in order:
            du = dist[u]
            if du == INF:
                continue
            for e in self.adj[u]:
                if self.cap[e] > 0 and du + self.cost[e] < dist[self.head[e]]:
                    dist[self.head[e]] = du + self.cost[e]
        # unreachable nodes never enter a Dijkstra run from the source
        self.potential = [0 if d == INF else d for d in dist]

    def _dijkstra(self, starts: Iterable[tuple[int, int]]):
        """Reduced-cost distances; ``starts`` gives true distances of the roots."""
        pot, head, cap, cost, adj = self.potential, self.head, self.cap, self.cost, self.adj
        dist = [INF] * self.n
        parent = [-1] * self.n
        heap = []
        for node, d in starts:
            dist[node] = d - pot[node]
            heap.append((dist[node], node))
        heapq.heapify(heap)
        while heap:
            d, u = heapq.heappop(heap)
            if d > dist[u]:
                continue
            pu = pot[u]
            for e in adj[u]:
                if cap[e] <= 0:
                    continue
                v = head[e]
                nd = d + cost[e] + pu - pot[v]
                if nd < dist[v]:
                    dist[v] = nd
                    parent[v] = e
                    heapq.heappush(heap, (nd, v))
        return dist, parent

    def solve(self, source: int, sink: int, topo_order: Sequence[int]) -> int:
        """Run to optimality; returns the minimum total cost (``<= 0``)."""
        self._init_potentials(source, topo_order)
        pot = self.potential
        while True:
            dist, parent = self._dijkstra([(source, 0)])
            if dist[sink] == INF:
                break
            path_cost = dist[sink] + pot[sink] - pot[source]
            if path_cost >= 0:
                break
            for v in range(self.n):
                if dist[v] != INF:
                    pot[v] += dist[v]
            push = BIG_CAP
            v = sink
            while v != source:
                e = parent[v]
                push = min(push, self.cap[e])
                v = self.head[e ^ 1]
            v = sink
            while v != source:
                e = parent[v]
                self.cap[e] -= push
                self.cap[e ^ 1] += push
                v = self.head[e ^ 1]
            self.flow_value += push
            self.total_cost += push * path_cost
        return self.total_cost

    def distances(self, roots: Iterable[int]) -> list[int]:
        """True shortest distances in the residual graph, every root at distance 0.

        Only meaningful once :meth:`solve` has returned, when the residual
        graph has no negative cycle and the potentials are feasible.
        """
        dist, _ = self._dijkstra([(r, 0) for r in roots])
        return [d if d == INF else d + p for d, p in zip(dist, self.potential)]
