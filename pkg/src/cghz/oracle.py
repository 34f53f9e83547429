"""Brute-force reference for the analyzers.

The basis is rebuilt from the constructors and every state is decomposed
by dense inner products, with no use of the analyzer circuits.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .encodings import BlockLayout, CghzLabel, all_labels, make_cghz
from .statevec import BranchAll, StateVector, inner_product


@dataclass(frozen=True)
class BasisDecomposition:
    weights: dict[CghzLabel, float]
    residual: float

    def dominant(self) -> CghzLabel:
        return max(self.weights, key=self.weights.get)


@dataclass(frozen=True)
class EquivalenceReport:
    layout: BlockLayout
    trials: int
    max_deviation: float
    seed: int

    def to_dict(self) -> dict:
        return {
            "layout": {"N": self.layout.N, "m": self.layout.m},
            "trials": self.trials,
            "max_deviation": self.max_deviation,
            "seed": self.seed,
        }


def cghz_basis(layout: BlockLayout) -> list[StateVector]:
    layout.check_capacity()
    return [make_cghz(label) for label in all_labels(layout)]


def project_onto_basis(s: StateVector, layout: BlockLayout) -> BasisDecomposition:
    if s.n != layout.n_qubits:
        raise ValueError(f"state has {s.n} qubits, layout needs {layout.n_qubits}")
    weights = {
        label: abs(inner_product(state, s)) ** 2
        for label, state in zip(all_labels(layout), cghz_basis(layout))
    }
    return BasisDecomposition(weights, 1.0 - sum(weights.values()))


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Per-trial PCG64 stream seeded with ``seed + trial``."""
    return np.random.Generator(np.random.PCG64(seed + trial))


def random_span_state(layout: BlockLayout, rng: np.random.Generator) -> StateVector:
    """Unitarily invariant random state in the C-GHZ span."""
    basis = cghz_basis(layout)
    coeffs = rng.standard_normal(len(basis)) + 1j * rng.standard_normal(len(basis))
    coeffs /= np.linalg.norm(coeffs)
    amps = sum(c * b.amps for c, b in zip(coeffs, basis))
    return StateVector(layout.n_qubits, amps / np.linalg.norm(amps))


def check_equivalence(layout: BlockLayout, trials: int, seed: int) -> EquivalenceReport:
    """Compare the analyzer's exact label distribution with the oracle."""
    from .analyzer import analyze_cghz

    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    layout.check_capacity()
    worst = 0.0
    for t in range(trials):
        s = random_span_state(layout, trial_rng(seed, t))
        expected = project_onto_basis(s, layout).weights
        observed = dict.fromkeys(expected, 0.0)
        for result in analyze_cghz(s, layout, BranchAll()):
            observed[result.label] += result.probability
        worst = max(worst, max(abs(observed[k] - expected[k]) for k in expected))
    return EquivalenceReport(layout, trials, worst, seed)
