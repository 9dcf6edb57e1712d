"""Commutator-relators groups and their resonance varieties.

Presentation text format::

    gens 4;
    rel [1,2];
    rel [1,3] [2,4];
    rel [1,2]^-2 [3,4]^3;

``[i,j]^c`` is the commutator (x_i, x_j) raised to the integer power c
(default 1); a relator is the product of its factors.  Lines may carry
``#`` comments.  Only commutator words are accepted.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from pathlib import Path

from .koszul import DEFAULT_QMAX, GradedDims, TwoFormSubspace, w_dims_scan, wedge_index
from .resonance import VanishingDecision, vanishing_decision


@dataclass(frozen=True)
class CommutatorPresentation:
    generator_count: int
    relators: tuple[tuple[tuple[int, int, int], ...], ...] = field(default_factory=tuple)

    def __post_init__(self):
        n = self.generator_count
        if n < 1:
            raise ValueError("a presentation needs at least one generator")
        rels = tuple(tuple(tuple(int(x) for x in f) for f in r) for r in self.relators)
        for r in rels:
            for i, j, c in r:
                if not (1 <= i <= n and 1 <= j <= n):
                    raise ValueError(f"commutator [{i},{j}] uses a generator outside 1..{n}")
                if i == j:
                    raise ValueError(f"commutator [{i},{i}] is trivial")
                if c == 0:
                    raise ValueError(f"commutator [{i},{j}] has exponent 0")
        object.__setattr__(self, "relators", rels)

    def dumps(self) -> str:
        lines = [f"gens {self.generator_count};"]
        for r in self.relators:
            parts = [f"[{i},{j}]" + (f"^{c}" if c != 1 else "") for i, j, c in r]
            lines.append("rel " + " ".join(parts) + ";")
        return "\n".join(lines) + "\n"


_FACTOR = re.compile(r"\[\s*(-?\d+)\s*,\s*(-?\d+)\s*\](?:\s*\^\s*([+-]?\d+))?")


def parse_presentation(text: str) -> CommutatorPresentation:
    body = "\n".join(line.split("#", 1)[0] for line in text.splitlines())
    statements = [s.strip() for s in body.split(";")]
    n = None
    relators = []
    for st in statements:
        if not st:
            continue
        head, _, rest = st.partition(" ")
        rest = rest.strip()
        if head == "gens":
            if n is not None:
                raise ValueError("duplicate 'gens' statement")
            if not rest.isdigit():
                raise ValueError(f"bad generator count {rest!r}")
            n = int(rest)
        elif head == "rel":
            factors = []
            pos = 0
            while pos < len(rest):
                if rest[pos].isspace():
                    pos += 1
                    continue
                m = _FACTOR.match(rest, pos)
                if m is None:
                    raise ValueError(f"relator is not a product of commutators: {rest!r}")
                c = int(m.group(3)) if m.group(3) else 1
                factors.append((int(m.group(1)), int(m.group(2)), c))
                pos = m.end()
            if not factors:
                raise ValueError("empty relator")
            relators.append(tuple(factors))
        else:
            raise ValueError(f"unknown statement {st!r}")
    if n is None:
        raise ValueError("missing 'gens' statement")
    return CommutatorPresentation(n, tuple(relators))


def read_presentation(path) -> CommutatorPresentation:
    return parse_presentation(Path(path).read_text())


def relator_image(p: CommutatorPresentation, relator) -> list[int]:
    """Σ c e_i∧e_j over the factors, with the sign flipped when i > j."""
    n = p.generator_count
    idx = wedge_index(n, 2)
    v = [0] * math.comb(n, 2)
    for i, j, c in relator:
        i, j = i - 1, j - 1
        if i > j:
            i, j, c = j, i, -c
        v[idx[(i, j)]] += c
    return v


def partial_image(p: CommutatorPresentation) -> TwoFormSubspace:
    """K = im(∂_G), spanned by the relator images (dependent ones dropped)."""
    return TwoFormSubspace.spanned_by(p.generator_count, [relator_image(p, r) for r in p.relators])


@dataclass
class GroupResonanceReport:
    b1: int
    K: TwoFormSubspace
    decision: VanishingDecision
    dims: GradedDims
    deficiency_bound: int | None = None

    @property
    def w0_dim(self) -> int:
        return math.comb(self.b1, 2) - self.K.dim

    def to_json(self) -> dict:
        return {
            "b1": self.b1,
            "dim_K": self.K.dim,
            "K": self.K.to_json(),
            "w0_dim": self.w0_dim,
            "dims": self.dims.to_json(),
            "decision": self.decision.to_json(),
            "deficiency_bound": self.deficiency_bound,
        }


def group_resonance(p: CommutatorPresentation, q_max: int = DEFAULT_QMAX) -> GroupResonanceReport:
    """R(G) = R(V, K) with V = H_1(G) (b1 = number of generators) and K = im ∂_G."""
    K = partial_image(p)
    decision = vanishing_decision(K, q_max)
    if decision.is_vanishing and decision.degree is not None:
        dims = w_dims_scan(K, decision.degree)
    else:
        dims = w_dims_scan(K, min(q_max, 2))
    report = GroupResonanceReport(p.generator_count, K, decision, dims)
    if decision.is_vanishing:
        report.deficiency_bound = deficiency_bound(report)
    return report


def deficiency_bound(report: GroupResonanceReport) -> int:
    """df(G) <= 3 - b1(G) once R(G) = {0}."""
    if not report.decision.is_vanishing:
        raise ValueError("the deficiency bound needs vanishing resonance")
    return 3 - report.b1
