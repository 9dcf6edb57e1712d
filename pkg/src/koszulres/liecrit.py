"""Weight criteria for R(V, K) = {0} when V is irreducible and K invariant.

Input is the highest weight of V* and the list of dominant weights that
occur in K^⊥; neither module is ever constructed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .resonance import LIE_CRITERION, NON_VANISHES, VanishingDecision
from .rootsys import (
    RootSystem,
    Weight,
    fundamental_weight,
    inner,
    is_dominant,
    is_simple_root,
    normalize,
    simple_roots,
    weights_equal,
)


@dataclass(frozen=True)
class LieResonanceProblem:
    rs: RootSystem
    lambda_star: Weight
    vv_kperp: tuple[Weight, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "vv_kperp", tuple(self.vv_kperp))
        if not is_dominant(self.rs, self.lambda_star):
            raise ValueError(f"highest weight {self.lambda_star.coords} is not dominant")
        for mu in self.vv_kperp:
            if not is_dominant(self.rs, mu):
                raise ValueError(f"weight {mu.coords} of K^perp is not dominant")

    def to_json(self) -> dict:
        return {
            "family": self.rs.family,
            "rank": self.rs.rank,
            "lambda_star": list(self.lambda_star.coords),
            "vv_kperp": [list(mu.coords) for mu in self.vv_kperp],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "LieResonanceProblem":
        rs = RootSystem(str(obj["family"]).upper(), int(obj["rank"]))
        lam = Weight(obj["lambda_star"])
        vv = [Weight(c) for c in obj.get("vv_kperp", [])]
        for w in [lam, *vv]:
            if len(w) != rs.ambient_dim:
                raise ValueError(f"weight {w.coords} needs {rs.ambient_dim} coordinates")
        return cls(rs, lam, vv)


def summand_exists(rs: RootSystem, lam: Weight, beta: Weight) -> bool:
    """V(2λ - β) occurs in V(λ) ∧ V(λ) for the simple root β iff (λ, β) ≠ 0."""
    if not any(beta == a for a in simple_roots(rs)):
        raise ValueError(f"{beta.coords} is not a simple root of {rs}")
    return inner(rs, lam, beta) != 0


def theorem_obstructions(p: LieResonanceProblem) -> list[Weight]:
    """Weights μ in 𝒱(K^⊥) with 2λ* - μ a simple root."""
    return [mu for mu in p.vv_kperp if is_simple_root(p.rs, 2 * p.lambda_star - mu)]


def vanishes_by_theorem(p: LieResonanceProblem) -> bool:
    """Sufficient test: 2λ* - μ is never a simple root for μ in 𝒱(K^⊥)."""
    return not theorem_obstructions(p)


def corollary_obstruction(p: LieResonanceProblem) -> Weight | None:
    """A simple root β with (λ*, β) ≠ 0 and 2λ* - β in 𝒱(K^⊥), if any.

    Such a β makes the highest weight vector of V* resonant.
    """
    for beta in simple_roots(p.rs):
        if inner(p.rs, p.lambda_star, beta) == 0:
            continue
        target = 2 * p.lambda_star - beta
        if any(weights_equal(p.rs, target, mu) for mu in p.vv_kperp):
            return beta
    return None


def vanishes_by_corollary(p: LieResonanceProblem) -> bool:
    """Exact test: R(V, K) = {0} iff no simple root obstructs."""
    return corollary_obstruction(p) is None


def lie_decision(p: LieResonanceProblem) -> VanishingDecision:
    if vanishes_by_corollary(p):
        return VanishingDecision.vanishes(None, reason=LIE_CRITERION)
    return VanishingDecision(NON_VANISHES, reason=LIE_CRITERION)


def torelli_free_preset(n: int) -> LieResonanceProblem:
    """Torelli group of F_n: V* = V(λ1 + λ_{n-2}), K^⊥ = V(λ1 + λ_{n-2} + λ_{n-1})."""
    if n < 3:
        raise ValueError("the free-group Torelli preset needs n >= 3")
    rs = RootSystem.type_a(n)
    lam1 = fundamental_weight(rs, 1)
    lam_star = lam1 + fundamental_weight(rs, n - 2)
    mu = lam_star + fundamental_weight(rs, n - 1)
    return LieResonanceProblem(rs, normalize(rs, lam_star), (normalize(rs, mu),))


def torelli_surface_preset(g: int) -> LieResonanceProblem:
    """Torelli group of a genus-g surface: V* = V(λ3), K^⊥ = V(2λ2) ⊕ V(0)."""
    if g < 3:
        raise ValueError("the surface Torelli preset needs g >= 3")
    rs = RootSystem.type_c(g)
    lam3 = fundamental_weight(rs, 3)
    two_lam2 = 2 * fundamental_weight(rs, 2)
    return LieResonanceProblem(rs, lam3, (two_lam2, Weight([0] * g)))


PRESETS = {
    "torelli-free": torelli_free_preset,
    "torelli-surface": torelli_surface_preset,
}
