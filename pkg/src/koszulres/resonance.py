"""Membership in, and vanishing of, the resonance variety R(V, K).

Pairing convention: <a∧b, e_i∧e_j> = a_i b_j - a_j b_i.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exactlin import SparseMatrix, kernel_basis, rank
from .koszul import DEFAULT_QMAX, TwoFormSubspace, w_dims_scan, wedge_basis

VANISHES = "vanishes"
NON_VANISHES = "non-vanishes"
UNKNOWN = "unknown"

DIMENSION_COUNT = "dimension-count"
WITNESS = "witness"
LIE_CRITERION = "lie-criterion"

DEFAULT_HEIGHT = 3
DEFAULT_RANDOM_SAMPLES = 200


@dataclass(frozen=True)
class Covector:
    coords: tuple[Fraction, ...]

    def __init__(self, coords):
        object.__setattr__(self, "coords", tuple(Fraction(c) for c in coords))

    @property
    def n(self) -> int:
        return len(self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def to_json(self) -> dict:
        return {"n": self.n, "coords": [str(c) for c in self.coords]}

    @classmethod
    def from_json(cls, obj: dict) -> "Covector":
        coords = [Fraction(str(c)) for c in obj["coords"]]
        if "n" in obj and int(obj["n"]) != len(coords):
            raise ValueError("covector length does not match n")
        return cls(coords)


@dataclass(frozen=True)
class VanishingDecision:
    verdict: str
    degree: int | None = None
    reason: str | None = None
    witness: tuple[Covector, Covector] | None = None
    cap: int | None = None

    @classmethod
    def vanishes(cls, degree: int | None, reason: str | None = None) -> "VanishingDecision":
        return cls(VANISHES, degree=degree, reason=reason)

    @classmethod
    def non_vanishing(cls, reason: str, witness=None) -> "VanishingDecision":
        return cls(NON_VANISHES, reason=reason, witness=witness)

    @classmethod
    def unknown(cls, cap: int) -> "VanishingDecision":
        return cls(UNKNOWN, cap=cap)

    @property
    def is_vanishing(self) -> bool:
        return self.verdict == VANISHES

    def to_json(self) -> dict:
        out: dict = {"verdict": self.verdict}
        if self.degree is not None:
            out["degree"] = self.degree
        if self.reason is not None:
            out["reason"] = self.reason
        if self.witness is not None:
            a, b = self.witness
            out["witness"] = {"a": a.to_json(), "b": b.to_json()}
        if self.cap is not None:
            out["cap"] = self.cap
        return out


def _coords(x) -> tuple[Fraction, ...]:
    if isinstance(x, Covector):
        return x.coords
    return tuple(Fraction(c) for c in x)


def wedge_pairing(k: Sequence, a, b) -> Fraction:
    """Σ_{i<j} k_ij (a_i b_j - a_j b_i) for a 2-form k on wedge_basis(n, 2)."""
    a, b = _coords(a), _coords(b)
    n = len(a)
    if len(b) != n:
        raise ValueError("covectors have different lengths")
    if len(k) != math.comb(n, 2):
        raise ValueError(f"2-form has length {len(k)}, expected C({n},2)")
    total = Fraction(0)
    for (i, j), c in zip(wedge_basis(n, 2), k):
        if c:
            total += Fraction(c) * (a[i] * b[j] - a[j] * b[i])
    return total


def wedge_is_zero(a, b) -> bool:
    a, b = _coords(a), _coords(b)
    return all(a[i] * b[j] == a[j] * b[i] for i, j in wedge_basis(len(a), 2))


def mu_matrix(K: TwoFormSubspace, a) -> SparseMatrix:
    """m × n matrix with μ(a) b = (pairing of a∧b with each generator)."""
    a = _coords(a)
    if len(a) != K.n:
        raise ValueError("covector dimension does not match K")
    n = K.n
    entries = {}
    for r, g in enumerate(K.generators):
        row = [Fraction(0)] * n
        for (i, j), c in zip(wedge_basis(n, 2), g):
            if c:
                # antisymmetric extension: K[i][j] = c, K[j][i] = -c
                row[j] += c * a[i]
                row[i] -= c * a[j]
        for l, v in enumerate(row):
            if v:
                entries[(r, l)] = v
    return SparseMatrix(K.dim, n, entries)


def resonance_partner(K: TwoFormSubspace, a) -> Covector | None:
    """A covector b with a∧b ≠ 0 and a∧b ⊥ K, or None when a ∉ R(V, K)."""
    a = _coords(a)
    if not any(a):
        raise ValueError("the zero covector is excluded; 0 lies in R(V, K) by convention")
    mu = mu_matrix(K, a)
    basis = kernel_basis(mu) if K.dim else [
        [Fraction(int(i == j)) for j in range(K.n)] for i in range(K.n)
    ]
    for b in basis:
        if not wedge_is_zero(a, b):
            return Covector(b)
    return None


def in_resonance(K: TwoFormSubspace, a) -> bool:
    """a ∈ R(V, K) for a nonzero covector a: rank μ(a) <= n - 2."""
    a = _coords(a)
    if not any(a):
        raise ValueError("the zero covector is excluded; 0 lies in R(V, K) by convention")
    if len(a) != K.n:
        raise ValueError("covector dimension does not match K")
    if not K.dim:
        return K.n >= 2
    return rank(mu_matrix(K, a)) <= K.n - 2


def plucker_quadric(p: Sequence) -> Fraction:
    """p12 p34 - p13 p24 + p23 p14 on coordinates ordered as wedge_basis(4, 2)."""
    p12, p13, p14, p23, p24, p34 = (Fraction(x) for x in p)
    return p12 * p34 - p13 * p24 + p23 * p14


def decomposable_factors(omega: Sequence) -> tuple[Covector, Covector]:
    """Factor a decomposable 2-form ω = a∧b (coordinates on wedge_basis(n, 2)).

    For ω_ij ≠ 0, the rows i and j of ω's antisymmetric matrix span the
    plane of ω, and a = row_i / ω_ij, b = row_j satisfy a∧b = ω.
    """
    size = len(omega)
    n = next(k for k in range(size + 2) if math.comb(k, 2) == size)
    W = [[Fraction(0)] * n for _ in range(n)]
    for (i, j), c in zip(wedge_basis(n, 2), omega):
        W[i][j] = Fraction(c)
        W[j][i] = -Fraction(c)
    i, j = next((i, j) for (i, j), c in zip(wedge_basis(n, 2), omega) if c)
    a = [x / W[i][j] for x in W[i]]
    b = list(W[j])
    wedge = [a[k] * b[l] - a[l] * b[k] for k, l in wedge_basis(n, 2)]
    if wedge != [Fraction(c) for c in omega]:
        raise ValueError("2-form is not decomposable")
    return Covector(a), Covector(b)


def n4_closed_form(K: TwoFormSubspace) -> VanishingDecision:
    """Exact decision for dim V = 4 via the Plücker quadric on P(K^⊥).

    When R(V, K) = {0} the reported degree is 6 - dim K, the first degree
    where W vanishes once codim K <= 1.
    """
    if K.n != 4:
        raise ValueError("closed form applies only to dim V = 4")
    perp = K.perp_basis()
    if len(perp) >= 2:
        # a quadric in >= 2 projective variables has a zero over C
        return VanishingDecision.non_vanishing(DIMENSION_COUNT)
    if not perp:
        return VanishingDecision.vanishes(0)
    omega = perp[0]
    if plucker_quadric(omega) != 0:
        return VanishingDecision.vanishes(6 - K.dim)
    return VanishingDecision.non_vanishing(WITNESS, decomposable_factors(omega))


def _projective_candidates(n: int, height: int):
    """Integer covectors with entries in [-height, height], one per line.

    Normalised so that the first nonzero entry is positive and the entries
    are coprime; ordered by max |entry|, then lexicographically.
    """
    for h in range(1, height + 1):
        for v in itertools.product(range(-h, h + 1), repeat=n):
            if max(abs(x) for x in v) != h:
                continue
            first = next(x for x in v if x)
            if first < 0 or math.gcd(*v) != 1:
                continue
            yield v


_SCREEN_PRIME = 2**31 - 1


def _integer_generators(K: TwoFormSubspace) -> list[list[tuple[int, int, int]]]:
    """Generators with denominators cleared, as (i, j, c) triples; row scaling keeps ranks."""
    out = []
    for g in K.generators:
        den = math.lcm(*(Fraction(c).denominator for c in g))
        out.append([(i, j, int(c * den)) for (i, j), c in zip(wedge_basis(K.n, 2), g) if c])
    return out


def _mu_rank_mod_p(gens, n: int, a, p: int = _SCREEN_PRIME) -> int:
    rows = []
    for g in gens:
        row = [0] * n
        for i, j, c in g:
            row[j] += c * a[i]
            row[i] -= c * a[j]
        rows.append([x % p for x in row])
    r = 0
    for col in range(n):
        piv = next((k for k in range(r, len(rows)) if rows[k][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][col], -1, p)
        for k in range(r + 1, len(rows)):
            f = rows[k][col]
            if f:
                f = f * inv % p
                rows[k] = [(x - f * y) % p for x, y in zip(rows[k], rows[r])]
        r += 1
    return r


def witness_search(
    K: TwoFormSubspace,
    height: int = DEFAULT_HEIGHT,
    samples: int = DEFAULT_RANDOM_SAMPLES,
    seed: int = 0,
) -> tuple[Covector, Covector] | None:
    """First covector of small height in R(V, K), then random ones."""
    n = K.n
    if n < 2:
        return None
    candidates = itertools.chain(
        _projective_candidates(n, height),
        (
            tuple(rng.randint(-9 * height, 9 * height) for _ in range(n))
            for rng in [random.Random(seed)]
            for _ in range(samples)
        ),
    )
    screen = _integer_generators(K)
    for a in candidates:
        if not any(a):
            continue
        if screen and _mu_rank_mod_p(screen, n, a) == n - 1:
            # μ(a) a = 0 caps the rank at n - 1, and the mod-p rank is a lower bound
            continue
        b = resonance_partner(K, a)
        if b is not None:
            return Covector(a), b
    return None


def vanishing_decision(
    K: TwoFormSubspace,
    q_max: int = DEFAULT_QMAX,
    height: int = DEFAULT_HEIGHT,
) -> VanishingDecision:
    """Decide R(V, K) = {0}, with an explicit Unknown when nothing certifies.

    Order: dimension count (dim K < 2n - 3 forces resonance), the n = 4
    closed form, the degree scan up to ``q_max``, and finally a bounded
    search for a witness pair.
    """
    n, m = K.n, K.dim
    if m < 2 * n - 3:
        return VanishingDecision.non_vanishing(DIMENSION_COUNT)
    if n == 4:
        return n4_closed_form(K)
    scan = w_dims_scan(K, q_max)
    if scan.vanished_at is not None:
        return VanishingDecision.vanishes(scan.vanished_at)
    found = witness_search(K, height)
    if found is not None:
        return VanishingDecision.non_vanishing(WITNESS, found)
    return VanishingDecision.unknown(q_max)


def check_witness(K: TwoFormSubspace, a, b) -> bool:
    return not wedge_is_zero(a, b) and all(wedge_pairing(g, a, b) == 0 for g in K.generators)
