"""Monomial subspaces from graphs and their Hilbert series via the cut polynomial.

For K spanned by e_i ∧ e_j over the edges of a graph Γ,

    Σ_q dim W_q t^(q+2) = Q_Γ(t / (1 - t)),   Q_Γ(s) = Σ_j c_j s^j,

where c_j sums, over vertex subsets of size j, one less than the number of
connected components of the induced subgraph.  Expanding
s^j = t^j (1 - t)^(-j) gives dim W_q = Σ_j c_j C(q + 1, j - 1).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from pathlib import Path

from .koszul import DEFAULT_QMAX, GradedDims, TwoFormSubspace

MAX_VERTICES = 20


@dataclass(frozen=True)
class Graph:
    vertex_count: int
    edges: frozenset[frozenset[int]]

    def __init__(self, vertex_count: int, edges=()):
        if vertex_count < 0:
            raise ValueError("vertex count must be non-negative")
        es = set()
        for e in edges:
            i, j = e
            if i == j:
                raise ValueError(f"loop at vertex {i}")
            if not (1 <= i <= vertex_count and 1 <= j <= vertex_count):
                raise ValueError(f"edge {{{i}, {j}}} has a vertex outside 1..{vertex_count}")
            key = frozenset((i, j))
            if key in es:
                raise ValueError(f"duplicate edge {{{i}, {j}}}")
            es.add(key)
        object.__setattr__(self, "vertex_count", vertex_count)
        object.__setattr__(self, "edges", frozenset(es))

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(tuple(sorted(e)) for e in self.edges)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls(n, itertools.combinations(range(1, n + 1), 2))

    @classmethod
    def parse(cls, text: str) -> "Graph":
        """First non-blank line: vertex count; then one edge "i j" per line."""
        lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln]
        if not lines:
            raise ValueError("empty graph file")
        n = int(lines[0])
        edges = []
        for ln in lines[1:]:
            parts = ln.split()
            if len(parts) != 2:
                raise ValueError(f"bad edge line {ln!r}")
            edges.append((int(parts[0]), int(parts[1])))
        return cls(n, edges)

    @classmethod
    def read(cls, path) -> "Graph":
        return cls.parse(Path(path).read_text())

    def dumps(self) -> str:
        return "\n".join([str(self.vertex_count)] + [f"{i} {j}" for i, j in self.sorted_edges()]) + "\n"


def monomial_K(g: Graph) -> TwoFormSubspace:
    pairs = [[(i - 1, j - 1, 1)] for i, j in g.sorted_edges()]
    return TwoFormSubspace.from_pairs(g.vertex_count, pairs)


def _components(vertices: tuple[int, ...], adjacency: dict[int, set[int]]) -> int:
    parent = {v: v for v in vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    count = len(vertices)
    for v in vertices:
        for w in adjacency[v]:
            if w in parent and w > v:
                a, b = find(v), find(w)
                if a != b:
                    parent[a] = b
                    count -= 1
    return count


def cut_polynomial(g: Graph) -> dict[int, int]:
    """Coefficients c_j of Q_Γ for j = 2..n, by enumerating all vertex subsets."""
    n = g.vertex_count
    if n > MAX_VERTICES:
        raise ValueError(f"cut polynomial enumeration is capped at {MAX_VERTICES} vertices")
    adjacency: dict[int, set[int]] = {v: set() for v in range(1, n + 1)}
    for i, j in g.sorted_edges():
        adjacency[i].add(j)
        adjacency[j].add(i)
    coeffs = {}
    for size in range(2, n + 1):
        coeffs[size] = sum(
            _components(W, adjacency) - 1
            for W in itertools.combinations(range(1, n + 1), size)
        )
    return coeffs


def hilbert_dims_from_graph(g: Graph, q_max: int = DEFAULT_QMAX) -> GradedDims:
    """dim W_q(V, K_Γ) from the cut polynomial, stopping at the first zero."""
    if q_max < 0:
        raise ValueError("q_max must be non-negative")
    c = cut_polynomial(g)
    dims = []
    for q in range(q_max + 1):
        # coefficient of t^(q+2) in Σ_j c_j t^j (1-t)^(-j)
        d = sum(cj * math.comb(q + 1, j - 1) for j, cj in c.items() if j <= q + 2)
        dims.append(d)
        if d == 0:
            return GradedDims(dims, q)
    return GradedDims(dims, None)
