"""Graded pieces of the Koszul module W(V, K) for a subspace K of V∧V.

Basis conventions (fixed so that matrices are reproducible):

* ``monomial_basis(n, q)``: exponent vectors of degree q in n variables in
  colexicographic order, i.e. sorted by the reversed exponent tuple.  For
  n = 3, q = 1 this is x1, x2, x3.
* ``wedge_basis(n, p)``: index tuples i1 < ... < ip (0-based) in
  lexicographic order.
* Rows and columns of tensor products S_q ⊗ Λ^p V are indexed by
  ``monomial_index * len(wedge_basis) + wedge_index``.

Every dimension is computed one degree at a time by exact rank; when the
generators of K are homogeneous for some torus grading, the degree-q
presentation splits into weight blocks whose ranks are added.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .exactlin import SparseMatrix, kernel_basis, rank, rank_certified

DEFAULT_QMAX = 10


@lru_cache(maxsize=None)
def monomial_basis(n: int, q: int) -> tuple[tuple[int, ...], ...]:
    if q < 0 or n < 0:
        return ()
    if n == 0:
        return ((),) if q == 0 else ()
    monos = []
    for bars in itertools.combinations(range(q + n - 1), n - 1):
        # stars and bars: gaps between bar positions are the exponents
        prev = -1
        exps = []
        for b in bars:
            exps.append(b - prev - 1)
            prev = b
        exps.append(q + n - 2 - prev)
        monos.append(tuple(exps))
    monos.sort(key=lambda e: e[::-1])
    return tuple(monos)


@lru_cache(maxsize=None)
def monomial_index(n: int, q: int) -> dict[tuple[int, ...], int]:
    return {m: k for k, m in enumerate(monomial_basis(n, q))}


@lru_cache(maxsize=None)
def wedge_basis(n: int, p: int) -> tuple[tuple[int, ...], ...]:
    if p < 0:
        return ()
    return tuple(itertools.combinations(range(n), p))


@lru_cache(maxsize=None)
def wedge_index(n: int, p: int) -> dict[tuple[int, ...], int]:
    return {w: k for k, w in enumerate(wedge_basis(n, p))}


def _frac(x) -> Fraction:
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


class TwoFormSubspace:
    """A subspace K of Λ²V, V = Q^n, given by independent generators.

    Each generator is a coefficient vector on ``wedge_basis(n, 2)``.
    Construction rejects dependent generators.
    """

    def __init__(self, n: int, generators: Iterable[Sequence] = ()):
        if n < 0:
            raise ValueError("n must be non-negative")
        self.n = n
        size = math.comb(n, 2)
        gens = []
        for g in generators:
            g = tuple(_frac(x) for x in g)
            if len(g) != size:
                raise ValueError(f"generator has length {len(g)}, expected C({n},2) = {size}")
            gens.append(g)
        self.generators: tuple[tuple[Fraction, ...], ...] = tuple(gens)
        if gens and rank(self.generator_matrix()) != len(gens):
            raise ValueError("generators of K are linearly dependent")

    @classmethod
    def spanned_by(cls, n: int, vectors: Iterable[Sequence]) -> "TwoFormSubspace":
        """Keep a maximal independent subset of ``vectors`` (greedy, in order)."""
        size = math.comb(n, 2)
        kept: list[tuple[Fraction, ...]] = []
        for v in vectors:
            v = tuple(_frac(x) for x in v)
            if len(v) != size:
                raise ValueError(f"vector has length {len(v)}, expected {size}")
            if not any(v):
                continue
            if rank(SparseMatrix.from_rows(kept + [v], size)) == len(kept) + 1:
                kept.append(v)
        return cls(n, kept)

    @classmethod
    def from_pairs(cls, n: int, generators: Iterable[Iterable[tuple[int, int, object]]]) -> "TwoFormSubspace":
        """Generators as lists of (i, j, coeff) with 0-based i != j."""
        idx = wedge_index(n, 2)
        vecs = []
        for terms in generators:
            v = [Fraction(0)] * math.comb(n, 2)
            for i, j, c in terms:
                if i == j:
                    raise ValueError("e_i ∧ e_i is zero; i and j must differ")
                c = _frac(c)
                if i > j:
                    i, j, c = j, i, -c
                v[idx[(i, j)]] += c
            vecs.append(v)
        return cls(n, vecs)

    @classmethod
    def full(cls, n: int) -> "TwoFormSubspace":
        size = math.comb(n, 2)
        return cls(n, [[int(a == b) for b in range(size)] for a in range(size)])

    @property
    def dim(self) -> int:
        return len(self.generators)

    m = dim

    def generator_matrix(self) -> SparseMatrix:
        """m × C(n,2) matrix whose rows are the generators."""
        return SparseMatrix.from_rows(self.generators, math.comb(self.n, 2))

    def antisymmetric(self, r: int) -> list[list[Fraction]]:
        """Generator r as an antisymmetric n × n matrix."""
        A = [[Fraction(0)] * self.n for _ in range(self.n)]
        for (i, j), c in zip(wedge_basis(self.n, 2), self.generators[r]):
            A[i][j] = c
            A[j][i] = -c
        return A

    def perp_basis(self) -> list[list[Fraction]]:
        """Basis of K^⊥ in the dual Plücker coordinates p_ij, i < j."""
        if not self.generators:
            size = math.comb(self.n, 2)
            return [[Fraction(int(a == b)) for b in range(size)] for a in range(size)]
        return kernel_basis(self.generator_matrix())

    def contains(self, other: "TwoFormSubspace") -> bool:
        if other.n != self.n:
            return False
        if not other.generators:
            return True
        both = SparseMatrix.from_rows(self.generators + other.generators, math.comb(self.n, 2))
        return rank(both) == self.dim

    def to_json(self) -> dict:
        gens = []
        for g in self.generators:
            gens.append(
                [
                    {"i": i + 1, "j": j + 1, "coeff": str(c)}
                    for (i, j), c in zip(wedge_basis(self.n, 2), g)
                    if c
                ]
            )
        return {"n": self.n, "generators": gens}

    @classmethod
    def from_json(cls, obj: dict) -> "TwoFormSubspace":
        n = int(obj["n"])
        gens = []
        for terms in obj.get("generators", []):
            pairs = []
            for t in terms:
                i, j = int(t["i"]), int(t["j"])
                if not (1 <= i <= n and 1 <= j <= n):
                    raise ValueError(f"index out of range in term {t}")
                pairs.append((i - 1, j - 1, t["coeff"]))
            gens.append(pairs)
        return cls.from_pairs(n, gens)

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    def __repr__(self) -> str:
        return f"TwoFormSubspace(n={self.n}, dim={self.dim})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TwoFormSubspace)
            and other.n == self.n
            and other.dim == self.dim
            and self.contains(other)
        )

    __hash__ = None


@dataclass
class GradedDims:
    dims: list[int] = field(default_factory=list)
    vanished_at: int | None = None

    def __post_init__(self):
        if self.vanished_at is not None:
            assert all(d == 0 for d in self.dims[self.vanished_at:])

    @property
    def finite(self) -> bool:
        return self.vanished_at is not None

    def total(self) -> int | None:
        return sum(self.dims) if self.finite else None

    def to_json(self) -> dict:
        return {"dims": list(self.dims), "vanished_at": self.vanished_at}


# ---------------------------------------------------------------------------
# Koszul differentials


def _delta_columns(n: int, p: int, q: int) -> list[dict[int, Fraction]]:
    """Columns of S_{q-1} ⊗ Λ^p V -> S_q ⊗ Λ^{p-1} V."""
    src_monos = monomial_basis(n, q - 1)
    src_wedges = wedge_basis(n, p)
    tgt_mono = monomial_index(n, q)
    tgt_wedge = wedge_index(n, p - 1)
    nw = len(tgt_wedge)
    cols = []
    for mono in src_monos:
        for w in src_wedges:
            col: dict[int, Fraction] = {}
            for j, v in enumerate(w):
                e = list(mono)
                e[v] += 1
                row = tgt_mono[tuple(e)] * nw + tgt_wedge[w[:j] + w[j + 1:]]
                col[row] = Fraction(1 if j % 2 == 0 else -1)
            cols.append(col)
    return cols


def delta_block(n: int, p: int, q: int) -> SparseMatrix:
    """Matrix of the Koszul differential δ_p landing in S_q ⊗ Λ^{p-1} V.

    Source basis: monomial_basis(n, q-1) × wedge_basis(n, p); target basis:
    monomial_basis(n, q) × wedge_basis(n, p-1).  A basis element
    m ⊗ e_{i1}∧…∧e_{ip} goes to Σ_j (-1)^(j-1) (m·x_{ij}) ⊗ (e_{i1}∧…ê_{ij}…∧e_{ip}).
    """
    if p not in (2, 3):
        raise ValueError(f"exterior degree must be 2 or 3, got {p}")
    if q < 0:
        raise ValueError("degree must be non-negative")
    nrows = len(monomial_basis(n, q)) * len(wedge_basis(n, p - 1))
    return SparseMatrix.from_columns(_delta_columns(n, p, q), nrows)


def _inclusion_columns(K: TwoFormSubspace, q: int) -> list[dict[int, Fraction]]:
    nw = math.comb(K.n, 2)
    cols = []
    for a, _ in enumerate(monomial_basis(K.n, q)):
        for g in K.generators:
            cols.append({a * nw + k: c for k, c in enumerate(g) if c})
    return cols


def presentation_block(K: TwoFormSubspace, q: int) -> SparseMatrix:
    """Degree-q piece of δ_3 + id ⊗ ι : S ⊗ (Λ³V ⊕ K) -> S ⊗ Λ²V.

    Columns: the δ_3 block (empty when q = 0) followed by S_q ⊗ K, ordered
    monomial-major then generator.
    """
    if q < 0:
        raise ValueError("degree must be non-negative")
    n = K.n
    nrows = len(monomial_basis(n, q)) * math.comb(n, 2)
    cols = (_delta_columns(n, 3, q) if q >= 1 else []) + _inclusion_columns(K, q)
    return SparseMatrix.from_columns(cols, nrows)


# ---------------------------------------------------------------------------
# torus gradings


def torus_grading(K: TwoFormSubspace) -> list[tuple[int, ...]]:
    """Integer weight vectors w_1..w_n making every generator of K homogeneous.

    Returns the weight of each variable as a tuple (one entry per grading
    direction).  The grading space always contains (1, ..., 1).
    """
    n = K.n
    constraints = []
    for g in K.generators:
        support = [ij for ij, c in zip(wedge_basis(n, 2), g) if c]
        for (i, j), (k, l) in zip(support, support[1:]):
            row = [0] * n
            row[i] += 1
            row[j] += 1
            row[k] -= 1
            row[l] -= 1
            if any(row):
                constraints.append(row)
    if not constraints:
        return [tuple(int(a == b) for b in range(n)) for a in range(n)]
    basis = kernel_basis(SparseMatrix.from_rows(constraints, n))
    scaled = []
    for v in basis:
        den = math.lcm(*(x.denominator for x in v))
        scaled.append([int(x * den) for x in v])
    return [tuple(v[i] for v in scaled) for i in range(n)]


def _weight(weights, mono, wedge) -> tuple[int, ...]:
    d = len(weights[0]) if weights else 0
    out = [0] * d
    for var, e in enumerate(mono):
        if e:
            w = weights[var]
            for t in range(d):
                out[t] += e * w[t]
    for var in wedge:
        w = weights[var]
        for t in range(d):
            out[t] += w[t]
    return tuple(out)


def weight_blocks(K: TwoFormSubspace, q: int) -> list[SparseMatrix]:
    """The degree-q presentation split into blocks of constant torus weight.

    Rows that belong to no column's weight appear as blocks with zero
    columns, so ``sum(block.rows)`` is always dim(S_q ⊗ Λ²V).
    """
    n = K.n
    if n < 2:
        return []
    weights = torus_grading(K)
    gen_weight = []
    for g in K.generators:
        first = next(ij for ij, c in zip(wedge_basis(n, 2), g) if c)
        gen_weight.append(_weight(weights, (0,) * n, first))

    row_keys = [
        _weight(weights, m, w) for m in monomial_basis(n, q) for w in wedge_basis(n, 2)
    ]
    col_keys = []
    if q >= 1:
        col_keys += [
            _weight(weights, m, w) for m in monomial_basis(n, q - 1) for w in wedge_basis(n, 3)
        ]
    for m in monomial_basis(n, q):
        mw = _weight(weights, m, ())
        col_keys += [tuple(a + b for a, b in zip(mw, gw)) for gw in gen_weight]

    M = presentation_block(K, q)
    rows_by: dict[tuple, list[int]] = {}
    for i, key in enumerate(row_keys):
        rows_by.setdefault(key, []).append(i)
    cols_by: dict[tuple, list[int]] = {}
    for j, key in enumerate(col_keys):
        cols_by.setdefault(key, []).append(j)

    local_row = {}
    for key, idx in rows_by.items():
        for k, i in enumerate(idx):
            local_row[i] = k
    per_block: dict[tuple, dict] = {key: {} for key in rows_by}
    col_pos = {}
    for key, idx in cols_by.items():
        for k, j in enumerate(idx):
            col_pos[j] = (key, k)
    for (i, j), v in M.entries.items():
        key, k = col_pos[j]
        if row_keys[i] != key:
            raise AssertionError("presentation is not homogeneous for the detected grading")
        per_block[key][(local_row[i], k)] = v
    blocks = []
    for key in sorted(rows_by):
        blocks.append(SparseMatrix(len(rows_by[key]), len(cols_by.get(key, [])), per_block[key]))
    return blocks


def w_dim(K: TwoFormSubspace, q: int) -> int:
    """dim W_q(V, K) = dim(S_q ⊗ Λ²V) - rank of the degree-q presentation."""
    if q < 0:
        raise ValueError("degree must be non-negative")
    total = 0
    for block in weight_blocks(K, q):
        total += block.rows - rank_certified(block)
    return total


def w_dims_scan(K: TwoFormSubspace, q_max: int = DEFAULT_QMAX) -> GradedDims:
    """dim W_q for q = 0..q_max, stopping at the first zero.

    W is generated in degree 0, so W_q = 0 forces every later piece to
    vanish and the early stop is a proof of finite length.
    """
    if q_max < 0:
        raise ValueError("q_max must be non-negative")
    dims = []
    for q in range(q_max + 1):
        d = w_dim(K, q)
        dims.append(d)
        if d == 0:
            return GradedDims(dims, q)
    return GradedDims(dims, None)
