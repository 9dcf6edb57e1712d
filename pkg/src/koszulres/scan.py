"""Random sampling of subspaces K in Grass_m(Λ²V) and their vanishing verdicts."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .exactlin import SparseMatrix, rank
from .koszul import DEFAULT_QMAX, TwoFormSubspace
from .resonance import VANISHES, VanishingDecision, vanishing_decision

COEFF_BOUND = 9


@dataclass(frozen=True)
class ScanRecord:
    n: int
    m: int
    seed: int
    sample_index: int
    K: TwoFormSubspace
    decision: VanishingDecision

    @property
    def min_vanishing_degree(self) -> int | None:
        return self.decision.degree if self.decision.verdict == VANISHES else None

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "seed": self.seed,
            "sample_index": self.sample_index,
            "decision": self.decision.to_json(),
            "min_vanishing_degree": self.min_vanishing_degree,
            "K": self.K.to_json(),
        }


def random_subspace(n: int, m: int, rng: np.random.Generator) -> TwoFormSubspace:
    """m independent 2-forms with integer coefficients uniform in [-9, 9].

    A draw that is dependent on the generators kept so far is discarded
    and redrawn.
    """
    size = math.comb(n, 2)
    if not 0 <= m <= size:
        raise ValueError(f"m must lie in 0..C({n},2) = {size}")
    gens: list[list[int]] = []
    while len(gens) < m:
        v = [int(x) for x in rng.integers(-COEFF_BOUND, COEFF_BOUND + 1, size=size)]
        if rank(SparseMatrix.from_rows(gens + [v], size)) == len(gens) + 1:
            gens.append(v)
    return TwoFormSubspace(n, gens)


def sample_rng(seed: int, index: int) -> np.random.Generator:
    # one independent stream per sample so results do not depend on scheduling
    return np.random.default_rng([seed, index])


def scan_one(n: int, m: int, seed: int, index: int, q_max: int = DEFAULT_QMAX) -> ScanRecord:
    K = random_subspace(n, m, sample_rng(seed, index))
    return ScanRecord(n, m, seed, index, K, vanishing_decision(K, q_max))


def _scan_args(args):
    return scan_one(*args)


def run_scan(
    n: int,
    m: int,
    samples: int,
    seed: int,
    q_max: int = DEFAULT_QMAX,
    jobs: int = 1,
) -> list[ScanRecord]:
    """Draw ``samples`` subspaces and decide each; ordered by sample index."""
    if n < 1:
        raise ValueError("n must be positive")
    if not 0 <= m <= math.comb(n, 2):
        raise ValueError(f"m must lie in 0..C({n},2) = {math.comb(n, 2)}")
    if samples < 0:
        raise ValueError("samples must be non-negative")
    tasks = [(n, m, seed, k, q_max) for k in range(samples)]
    if jobs > 1 and samples > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_scan_args, tasks))
    return [scan_one(*t) for t in tasks]
