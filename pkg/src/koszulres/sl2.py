"""sl_2 modules V_n, the decomposition of Λ²V_n, and Weyman modules.

Basis of V_n: w_0, ..., w_n with

    h w_k = (n - 2k) w_k,   y w_k = (k + 1) w_{k+1},   x w_k = (n - k + 1) w_{k-1}.

Λ²V_n uses w_i ∧ w_j, i < j, in lex order, so its coefficient vectors
are directly TwoFormSubspace generators on n + 1 variables.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .exactlin import SparseMatrix, kernel_basis, rank
from .koszul import DEFAULT_QMAX, GradedDims, TwoFormSubspace, w_dim, w_dims_scan, wedge_basis, wedge_index


@dataclass(frozen=True)
class Sl2Module:
    n: int
    action_x: SparseMatrix
    action_y: SparseMatrix
    action_h: SparseMatrix

    @property
    def dim(self) -> int:
        return self.n + 1


def irrep(n: int) -> Sl2Module:
    if n < 0:
        raise ValueError("highest weight must be non-negative")
    d = n + 1
    x = {(k - 1, k): Fraction(n - k + 1) for k in range(1, d)}
    y = {(k + 1, k): Fraction(k + 1) for k in range(d - 1)}
    h = {(k, k): Fraction(n - 2 * k) for k in range(d)}
    return Sl2Module(n, SparseMatrix(d, d, x), SparseMatrix(d, d, y), SparseMatrix(d, d, h))


def wedge_action(A: SparseMatrix) -> SparseMatrix:
    """Induced action a∧b -> Aa∧b + a∧Ab on Λ² (basis wedge_basis(d, 2))."""
    d = A.rows
    idx = wedge_index(d, 2)
    cols = A.column_dicts()
    entries: dict[tuple[int, int], Fraction] = {}

    def add(i, j, c, col):
        if i == j:
            return
        if i > j:
            i, j, c = j, i, -c
        key = (idx[(i, j)], col)
        entries[key] = entries.get(key, 0) + c

    for col, (i, j) in enumerate(wedge_basis(d, 2)):
        for k, c in cols[i].items():
            add(k, j, c, col)
        for k, c in cols[j].items():
            add(i, k, c, col)
    size = math.comb(d, 2)
    return SparseMatrix(size, size, entries)


def clebsch_gordan_wedge(n: int) -> list[int]:
    """Highest weights of the summands of Λ²V_n: 2n-2, 2n-6, ... >= 0."""
    if n < 1:
        raise ValueError("Λ²V_n needs n >= 1")
    return [2 * n - 2 - 4 * j for j in range((2 * n - 2) // 4 + 1)]


def summand_indices(n: int) -> list[int]:
    return list(range(len(clebsch_gordan_wedge(n))))


@dataclass(frozen=True)
class SummandSelection:
    n: int
    selected: frozenset[int]

    def __init__(self, n: int, selected: Iterable[int]):
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "selected", frozenset(selected))
        valid = set(summand_indices(n))
        bad = self.selected - valid
        if bad:
            raise ValueError(f"summand indices {sorted(bad)} invalid for n={n}; valid: {sorted(valid)}")


def highest_weight_vector(n: int, j: int) -> list[Fraction]:
    """Maximal vector of weight 2n-2-4j in Λ²V_n, as a primitive integer vector.

    w_i ∧ w_k has weight 2n - 2(i + k), so the weight space is spanned by
    the pairs with i + k = 2j + 1; the vector spans the kernel of x there.
    """
    V = irrep(n)
    X = wedge_action(V.action_x)
    pairs = wedge_basis(n + 1, 2)
    space = [c for c, (i, k) in enumerate(pairs) if i + k == 2 * j + 1]
    ker = kernel_basis(X.select_columns(space))
    if len(ker) != 1:
        raise RuntimeError(f"expected a one-dimensional space of maximal vectors, got {len(ker)}")
    vec = [Fraction(0)] * len(pairs)
    for c, v in zip(space, ker[0]):
        vec[c] = v
    return _primitive(vec)


def _primitive(vec: list[Fraction]) -> list[Fraction]:
    den = math.lcm(*(v.denominator for v in vec))
    ints = [int(v * den) for v in vec]
    g = math.gcd(*ints)
    lead = next(v for v in ints if v)
    if lead < 0:
        g = -g
    return [Fraction(v // g) for v in ints]


def summand_basis(n: int, j: int) -> list[list[Fraction]]:
    """Basis of the summand V_{2n-2-4j} of Λ²V_n: y^k applied to its maximal vector."""
    Y = wedge_action(irrep(n).action_y)
    v = highest_weight_vector(n, j)
    out = []
    while any(v):
        out.append(_primitive(v))
        v = Y.apply(v)
    expected = 2 * n - 1 - 4 * j
    if len(out) != expected:
        raise RuntimeError(f"summand has dimension {len(out)}, expected {expected}")
    return out


def submodule_from_summands(sel: SummandSelection) -> TwoFormSubspace:
    gens = []
    for j in sorted(sel.selected):
        gens.extend(summand_basis(sel.n, j))
    return TwoFormSubspace(sel.n + 1, gens)


def is_invariant(K: TwoFormSubspace, n: int) -> bool:
    """K is stable under the x, y and h actions on Λ²V_n (checked by rank)."""
    V = irrep(n)
    if not K.dim:
        return True
    for A in (V.action_x, V.action_y, V.action_h):
        W = wedge_action(A)
        images = [W.apply(g) for g in K.generators]
        stacked = SparseMatrix.from_rows(list(K.generators) + images, math.comb(n + 1, 2))
        if rank(stacked) != K.dim:
            return False
    return True


def findim_criterion(sel: SummandSelection) -> bool:
    """W(V_n, K) is finite-dimensional iff K contains V_{2n-2} (index 0)."""
    return 0 in sel.selected


def weyman_submodule(n: int) -> TwoFormSubspace:
    return submodule_from_summands(SummandSelection(n, {0}))


def weyman_dims(n: int, q_max: int = DEFAULT_QMAX) -> GradedDims:
    """Graded dimensions of the Weyman module W(n) = W(V_n, V_{2n-2})."""
    if n < 1:
        raise ValueError("Weyman modules are defined for n >= 1")
    return w_dims_scan(weyman_submodule(n), q_max)


def weyman_piece(n: int, q: int) -> int:
    """dim W_q(n), a single degree computed directly."""
    return w_dim(weyman_submodule(n), q)
