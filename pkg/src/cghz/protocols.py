"""Teleportation of a logic qubit and swapping of logic Bell pairs.

Both protocols use the C-GHZ analyzer on two blocks of a larger
register as the logic Bell measurement, then correct the remote block:

* logical X (``GHZ+ <-> GHZ-``) is a Z on one qubit of the block,
* logical Z (``GHZ- -> -GHZ-``) is an X on every qubit of the block.
"""

from __future__ import annotations

from dataclasses import dataclass

from .analyzer import ANALYZE, run_analyzer
from .encodings import (
    BlockLayout,
    CghzLabel,
    GhzSign,
    LogicBellLabel,
    LogicQubitCoeffs,
    decode_bell_bits,
    make_cghz,
    make_logic_qubit,
)
from .statevec import (
    GateKind,
    MeasurePolicy,
    StateVector,
    apply_1q,
    check_capacity,
    discard_qubit,
    fidelity,
    tensor,
)


@dataclass(frozen=True)
class Correction:
    ops: tuple[tuple[GateKind, int], ...]

    def apply(self, s: StateVector, offset: int = 0) -> StateVector:
        for gate, q in self.ops:
            s = apply_1q(s, gate, q + offset)
        return s

    def to_list(self) -> list[str]:
        return [f"{gate.value} {q}" for gate, q in self.ops]


@dataclass(frozen=True)
class TeleportResult:
    outcome: LogicBellLabel
    correction: Correction
    fidelity: float
    probability: float
    received: StateVector
    corrected: StateVector


@dataclass(frozen=True)
class SwapResult:
    outcome: LogicBellLabel
    ad_state: StateVector
    corrected: StateVector
    fidelity_after_correction: float
    probability: float
    correction: Correction


def logical_x(m: int) -> tuple[tuple[GateKind, int], ...]:
    return ((GateKind.Z, 0),)


def logical_z(m: int) -> tuple[tuple[GateKind, int], ...]:
    return tuple((GateKind.X, q) for q in range(m))


def correction_for(outcome: LogicBellLabel, m: int) -> Correction:
    """Gates on the remote block, in block-local qubit indices."""
    outcome = LogicBellLabel(outcome)
    if outcome is LogicBellLabel.PHI_PLUS:
        return Correction(())
    if outcome is LogicBellLabel.PHI_MINUS:
        return Correction(logical_z(m))
    if outcome is LogicBellLabel.PSI_PLUS:
        return Correction(logical_x(m))
    return Correction(logical_x(m) + logical_z(m))


def logic_bell_pair(m: int) -> StateVector:
    """``(GHZ+ GHZ+ + GHZ- GHZ-)/sqrt 2`` over two blocks of ``m`` qubits."""
    return make_cghz(CghzLabel(BlockLayout(2, m), 1, GhzSign.PLUS))


def _measure_blocks(state, blocks, policy, reduction_policy):
    """Logic Bell measurement of two blocks; their qubits are removed."""
    leaves, live = run_analyzer(state, blocks, policy, reduction_policy)
    gone = set(blocks[0]) | set(blocks[1])
    out = []
    for leaf in leaves:
        s, order = leaf.state, list(live)
        for q in sorted((q for q in order if q in gone), reverse=True):
            pos = order.index(q)
            s = discard_qubit(s, pos)
            order.pop(pos)
        label = decode_bell_bits(leaf.bits["s"], leaf.bits["d1"])
        out.append((label, leaf.probability((ANALYZE,)), s))
    return out


def teleport(
    c: LogicQubitCoeffs,
    m: int,
    policy: MeasurePolicy,
    reduction_policy: MeasurePolicy | None = None,
) -> list[TeleportResult]:
    """Send ``alpha GHZ+ + beta GHZ-`` from block A to block C.

    Blocks A, B, C occupy qubits ``[0, m)``, ``[m, 2m)``, ``[2m, 3m)``;
    B and C start in the ``Phi+`` logic Bell pair.
    """
    check_capacity(3 * m)
    target = make_logic_qubit(c, m)
    state = tensor(target, logic_bell_pair(m))
    blocks = [list(range(0, m)), list(range(m, 2 * m))]
    results = []
    for label, p, bob in _measure_blocks(state, blocks, policy, reduction_policy):
        corr = correction_for(label, m)
        fixed = corr.apply(bob)
        results.append(TeleportResult(label, corr, fidelity(target, fixed), p, bob, fixed))
    return results


def swap(
    m: int,
    policy: MeasurePolicy,
    reduction_policy: MeasurePolicy | None = None,
) -> list[SwapResult]:
    """Entangle blocks A and D by a logic Bell measurement on B and C."""
    check_capacity(4 * m)
    pair = logic_bell_pair(m)
    state = tensor(pair, pair)
    blocks = [list(range(m, 2 * m)), list(range(2 * m, 3 * m))]
    reference = pair
    results = []
    for label, p, ad in _measure_blocks(state, blocks, policy, reduction_policy):
        corr = correction_for(label, m)
        fixed = corr.apply(ad, offset=m)  # block D sits above block A
        results.append(SwapResult(label, ad, fixed, fidelity(reference, fixed), p, corr))
    return results

