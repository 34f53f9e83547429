"""Monte Carlo dephasing of C-GHZ states.

Each physical qubit independently suffers a Z with probability ``p``.
A trajectory keeps its label when the oracle's dominant basis weight is
still the prepared label.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .encodings import CghzLabel, make_cghz
from .oracle import project_onto_basis
from .statevec import GateKind, StateVector, apply_1q


@dataclass(frozen=True)
class RetentionPoint:
    p: float
    trials: int
    retained: int

    @property
    def retention(self) -> float:
        return self.retained / self.trials


def dephase(s: StateVector, p: float, rng: np.random.Generator) -> StateVector:
    hits = rng.random(s.n) < p
    for q in np.flatnonzero(hits):
        s = apply_1q(s, GateKind.Z, int(q))
    return s


def _trajectory(prepared: StateVector, label: CghzLabel, p: float, seed: int) -> bool:
    rng = np.random.Generator(np.random.PCG64(seed))
    return project_onto_basis(dephase(prepared, p, rng), label.layout).dominant() == label


def retention_sweep(
    label: CghzLabel, grid, trials: int, seed: int, workers: int | None = None
) -> list[RetentionPoint]:
    """Label-retention rate at each ``p`` in ``grid``.

    Trajectory ``t`` at grid index ``i`` draws from PCG64 seeded with
    ``seed + i * trials + t``, so results do not depend on ``workers``.
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    grid = [float(p) for p in grid]
    for p in grid:
        if not 0.0 <= p <= 1.0:
            raise ValueError(f"dephasing probability {p} outside [0, 1]")
    prepared = make_cghz(label)
    points = []
    with ThreadPoolExecutor(max_workers=workers) as pool:
        for i, p in enumerate(grid):
            seeds = range(seed + i * trials, seed + (i + 1) * trials)
            kept = sum(pool.map(lambda s: _trajectory(prepared, label, p, s), seeds))
            points.append(RetentionPoint(p, trials, kept))
    return points
