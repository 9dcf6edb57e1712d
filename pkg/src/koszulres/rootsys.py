"""Root systems of type A_{n-1} (sl_n) and C_g (sp_2g) in t-coordinates.

Weights are integer vectors in the coordinates t_1, ..., t_N.  For type A
the weight space is the quotient by (1, ..., 1); weights are compared via
the representative with last coordinate 0.  The inner product is the
standard dot product, a positive multiple of the Killing form on every
simple factor in scope, so brackets and vanishing tests are unaffected.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

TYPE_A = "A"
TYPE_C = "C"


@dataclass(frozen=True)
class RootSystem:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in (TYPE_A, TYPE_C):
            raise ValueError(f"unsupported family {self.family!r}; use 'A' or 'C'")
        if self.rank < 1:
            raise ValueError("rank must be positive")

    @classmethod
    def type_a(cls, n: int) -> "RootSystem":
        """Root system of sl_n, on coordinates t_1..t_n."""
        return cls(TYPE_A, n - 1)

    @classmethod
    def type_c(cls, g: int) -> "RootSystem":
        """Root system of sp_2g, on coordinates t_1..t_g."""
        return cls(TYPE_C, g)

    @property
    def ambient_dim(self) -> int:
        return self.rank + 1 if self.family == TYPE_A else self.rank

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"


@dataclass(frozen=True)
class Weight:
    coords: tuple[int, ...]

    def __init__(self, coords: Iterable[int]):
        vals = []
        for c in coords:
            if int(c) != c:
                raise ValueError("weights have integer coordinates")
            vals.append(int(c))
        object.__setattr__(self, "coords", tuple(vals))

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(a + b for a, b in zip(self.coords, other.coords))

    def __sub__(self, other: "Weight") -> "Weight":
        return Weight(a - b for a, b in zip(self.coords, other.coords))

    def __rmul__(self, k: int) -> "Weight":
        return Weight(k * a for a in self.coords)

    def __neg__(self) -> "Weight":
        return Weight(-a for a in self.coords)

    def __len__(self) -> int:
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)


def _check(rs: RootSystem, *weights: Weight) -> None:
    for w in weights:
        if len(w) != rs.ambient_dim:
            raise ValueError(
                f"weight {w.coords} has {len(w)} coordinates, {rs} needs {rs.ambient_dim}"
            )


def normalize(rs: RootSystem, w: Weight) -> Weight:
    """Canonical representative: for type A subtract the last coordinate."""
    _check(rs, w)
    if rs.family == TYPE_A:
        last = w.coords[-1]
        return Weight(c - last for c in w.coords)
    return w


def weights_equal(rs: RootSystem, u: Weight, v: Weight) -> bool:
    return normalize(rs, u) == normalize(rs, v)


def zero(rs: RootSystem) -> Weight:
    return Weight([0] * rs.ambient_dim)


def simple_roots(rs: RootSystem) -> list[Weight]:
    N = rs.ambient_dim
    roots = []
    for i in range(N - 1):
        v = [0] * N
        v[i], v[i + 1] = 1, -1
        roots.append(Weight(v))
    if rs.family == TYPE_C:
        v = [0] * N
        v[-1] = 2
        roots.append(Weight(v))
    return roots


def fundamental_weight(rs: RootSystem, i: int) -> Weight:
    """λ_i = t_1 + ... + t_i, 1 <= i <= rank."""
    if not 1 <= i <= rs.rank:
        raise IndexError(f"fundamental weight index {i} outside 1..{rs.rank}")
    return Weight([1] * i + [0] * (rs.ambient_dim - i))


def weight_from_fundamental(rs: RootSystem, coeffs: Iterable[int]) -> Weight:
    """Σ a_i λ_i for a tuple (a_1, ..., a_rank)."""
    coeffs = list(coeffs)
    if len(coeffs) != rs.rank:
        raise ValueError(f"need {rs.rank} coefficients")
    w = zero(rs)
    for i, a in enumerate(coeffs, start=1):
        w = w + a * fundamental_weight(rs, i)
    return w


def inner(rs: RootSystem, u: Weight, v: Weight) -> Fraction:
    _check(rs, u, v)
    return Fraction(sum(a * b for a, b in zip(u.coords, v.coords)))


def bracket(rs: RootSystem, alpha: Weight, beta: Weight) -> Fraction:
    """<α, β> = 2(α, β)/(β, β)."""
    bb = inner(rs, beta, beta)
    if bb == 0:
        raise ValueError("bracket against the zero weight")
    return 2 * inner(rs, alpha, beta) / bb


def is_dominant(rs: RootSystem, lam: Weight) -> bool:
    for alpha in simple_roots(rs):
        b = bracket(rs, lam, alpha)
        if b < 0 or b.denominator != 1:
            return False
    return True


def is_simple_root(rs: RootSystem, w: Weight) -> bool:
    return any(weights_equal(rs, w, a) for a in simple_roots(rs))


def simple_root_coefficients(rs: RootSystem, gamma: Weight) -> list[Fraction]:
    """Coefficients of γ in the basis of simple roots.

    Type A: γ is first moved to its sum-zero representative (rational), and
    the coefficient of t_i - t_{i+1} is the partial sum γ_1 + ... + γ_i.
    Type C: coefficient i is γ_1 + ... + γ_i for i < g, and the last one is
    (γ_1 + ... + γ_g) / 2.
    """
    _check(rs, gamma)
    g = [Fraction(c) for c in gamma.coords]
    N = rs.ambient_dim
    if rs.family == TYPE_A:
        shift = sum(g) / N
        g = [c - shift for c in g]
    coeffs = []
    partial = Fraction(0)
    for i in range(N - 1):
        partial += g[i]
        coeffs.append(partial)
    if rs.family == TYPE_C:
        coeffs.append((partial + g[-1]) / 2)
    return coeffs


def height(rs: RootSystem, gamma: Weight) -> Fraction:
    return sum(simple_root_coefficients(rs, gamma), Fraction(0))


def in_positive_cone(rs: RootSystem, gamma: Weight) -> bool:
    return all(c >= 0 and c.denominator == 1 for c in simple_root_coefficients(rs, gamma))


def weight_to_json(rs: RootSystem, w: Weight) -> dict:
    return {"family": rs.family, "rank": rs.rank, "coords": list(w.coords)}


def weight_from_json(obj: dict) -> tuple[RootSystem, Weight]:
    rs = RootSystem(str(obj["family"]).upper(), int(obj["rank"]))
    w = Weight(obj["coords"])
    _check(rs, w)
    return rs, w
