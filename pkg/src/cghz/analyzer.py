"""Logic Bell-state analysis and arbitrary C-GHZ state analysis.

:func:`lbsa` is the four-qubit circuit written out gate by gate.
:func:`analyze_cghz` builds the general circuit as a gate list
(:func:`analyzer_circuit`) and runs it through the branching executor,
so the exported text and the simulated circuit are the same object.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import circuit as ir
from .encodings import (
    BlockLayout,
    CghzLabel,
    GhzSign,
    LogicBellLabel,
    k_for_diff,
    span_residual,
)
from .statevec import (
    BranchAll,
    GateKind,
    MeasurePolicy,
    Sample,
    StateVector,
    apply_1q,
    apply_cnot,
    discard_qubit,
    measure_qubit,
)

SPAN_TOLERANCE = 1e-10
REDUCE = "reduce"
ANALYZE = "analyze"


class SubspaceError(ValueError):
    def __init__(self, layout: BlockLayout, residual: float):
        super().__init__(
            f"state has weight {residual:.3e} outside the C-GHZ span for N={layout.N}, m={layout.m}"
        )
        self.residual = residual


@dataclass(frozen=True)
class FlipRecord:
    outcomes: tuple[tuple[int, ...], ...]
    corrections: tuple[int, ...]

    @property
    def parities(self) -> tuple[int, ...]:
        return tuple(sum(block) % 2 for block in self.outcomes)


@dataclass(frozen=True)
class AnalysisResult:
    label: CghzLabel | LogicBellLabel
    bits: tuple[int, ...]
    probability: float
    flips: FlipRecord | None = None

    @property
    def raw_bits(self) -> tuple[int, ...]:
        """Sign bit, difference bits, then every reduction outcome."""
        extra = () if self.flips is None else sum(self.flips.outcomes, ())
        return self.bits + extra


@dataclass(frozen=True)
class Reduction:
    state: StateVector
    layout: BlockLayout
    flips: FlipRecord
    probability: float


def _require_span(s: StateVector, layout: BlockLayout) -> None:
    residual = span_residual(s, layout)
    if residual > SPAN_TOLERANCE:
        raise SubspaceError(layout, residual)


# -- circuit construction -------------------------------------------------


def _blocks(layout_or_blocks) -> list[list[int]]:
    if isinstance(layout_or_blocks, BlockLayout):
        return [list(layout_or_blocks.block(i)) for i in range(layout_or_blocks.N)]
    return [list(b) for b in layout_or_blocks]


def reduction_circuit(layout_or_blocks) -> list[ir.Instruction]:
    """Shrink every block to its first two qubits, with parity feed-forward."""
    out = []
    for i, block in enumerate(_blocks(layout_or_blocks)):
        if len(block) < 2:
            raise ValueError(f"block {i} has {len(block)} qubits; at least 2 are needed")
        extra = block[2:]
        if not extra:
            continue
        out += [ir.H(q, REDUCE) for q in extra]
        out += [ir.M(q, f"r{i}_{j}", REDUCE) for j, q in enumerate(extra)]
        out += [ir.DISCARD(q, REDUCE) for q in extra]
        out.append(ir.Z_IF(block[1], extra, REDUCE))
    return out


def analysis_circuit(layout_or_blocks) -> list[ir.Instruction]:
    """The two-qubit-per-block stage: reduce to an N-qubit GHZ analysis."""
    blocks = _blocks(layout_or_blocks)
    firsts = [b[0] for b in blocks]
    seconds = [b[1] for b in blocks]
    out = []
    for b in blocks:
        out += [ir.H(b[0]), ir.H(b[1])]
    out += [ir.CNOT(f, s) for f, s in zip(firsts, seconds)]
    out += [ir.DISCARD(f) for f in firsts]
    # neighbouring pairs, rightmost first
    for l in range(len(blocks) - 2, -1, -1):
        out.append(ir.CNOT(seconds[l], seconds[l + 1]))
    out.append(ir.H(seconds[0]))
    out.append(ir.M(seconds[0], "s"))
    out += [ir.M(q, f"d{i}") for i, q in enumerate(seconds[1:], 1)]
    return out


def analyzer_circuit(layout_or_blocks) -> list[ir.Instruction]:
    return reduction_circuit(layout_or_blocks) + analysis_circuit(layout_or_blocks)


def _flip_record(leaf: ir.Leaf, blocks) -> FlipRecord:
    outcomes = tuple(tuple(leaf.measured[q] for q in b[2:]) for b in blocks)
    return FlipRecord(outcomes, tuple(leaf.corrections))


def _stage_policies(policy, reduction_policy):
    # Reduction outcomes are uniform and label-independent, so under
    # BranchAll a single sampled reduction suffices unless asked otherwise.
    if reduction_policy is None:
        reduction_policy = Sample(0) if isinstance(policy, BranchAll) else policy
    return {REDUCE: reduction_policy}


# -- public operations ----------------------------------------------------


def decode(raw_bits: Sequence[int], layout: BlockLayout, flips: FlipRecord | None = None) -> CghzLabel:
    """Map the final ``N`` measured bits to a basis label.

    ``flips`` is accepted for auditing only; the reduction has already
    corrected the state so it never changes the label.
    """
    bits = tuple(int(b) for b in raw_bits)
    if len(bits) != layout.N:
        raise ValueError(f"expected {layout.N} bits for N={layout.N}, got {len(bits)}")
    if flips is not None and len(flips.outcomes) != layout.N:
        raise ValueError(f"flip record covers {len(flips.outcomes)} blocks, expected {layout.N}")
    return CghzLabel(layout, k_for_diff(bits[1:]), GhzSign.from_bit(bits[0]))


def reduce_blocks(
    s: StateVector, layout: BlockLayout, policy: MeasurePolicy
) -> list[Reduction]:
    """Measure qubits 3..m of every block and correct odd-parity blocks.

    Returns one :class:`Reduction` per measurement history (a single one
    unless ``policy`` is :class:`BranchAll`), each holding the
    ``N x 2`` register and the parity record.
    """
    _require_span(s, layout)
    blocks = _blocks(layout)
    leaves, _ = ir.run(s, reduction_circuit(layout), policy)
    reduced = BlockLayout(layout.N, 2)
    return [
        Reduction(leaf.state, reduced, _flip_record(leaf, blocks), leaf.probability())
        for leaf in leaves
    ]


def run_analyzer(
    s: StateVector,
    blocks,
    policy: MeasurePolicy,
    reduction_policy: MeasurePolicy | None = None,
):
    """Run the analyzer on the given blocks of a larger register.

    No span check is made, so the blocks may be entangled with qubits
    outside them. Returns ``(leaves, live)`` from the executor.
    """
    return ir.run(s, analyzer_circuit(blocks), policy, _stage_policies(policy, reduction_policy))


def analyze_cghz(
    s: StateVector,
    layout: BlockLayout,
    policy: MeasurePolicy,
    reduction_policy: MeasurePolicy | None = None,
) -> list[AnalysisResult]:
    """Identify which C-GHZ basis state ``s`` is, or its label distribution.

    ``reduction_policy`` resolves the block-reduction measurements. It
    defaults to ``policy``, except that under :class:`BranchAll` the
    reduction is sampled with seed 0; its outcomes never influence the
    label. Probabilities are conditional on the reduction outcomes
    unless those are enumerated too, in which case results with equal
    bits are merged.
    """
    _require_span(s, layout)
    blocks = _blocks(layout)
    stage_policies = _stage_policies(policy, reduction_policy)
    leaves, _ = ir.run(s, analyzer_circuit(layout), policy, stage_policies)
    enumerated = isinstance(stage_policies[REDUCE], BranchAll)
    stages = None if enumerated else (ANALYZE,)

    merged: dict[tuple[int, ...], AnalysisResult] = {}
    for leaf in leaves:
        bits = (leaf.bits["s"],) + tuple(leaf.bits[f"d{i}"] for i in range(1, layout.N))
        flips = _flip_record(leaf, blocks)
        p = leaf.probability(stages)
        if bits in merged:
            prev = merged[bits]
            merged[bits] = AnalysisResult(prev.label, bits, prev.probability + p, None)
        else:
            merged[bits] = AnalysisResult(decode(bits, layout, flips), bits, p, flips)
    return list(merged.values())


_LBSA_DECODE = {
    (0, 0): LogicBellLabel.PHI_PLUS,
    (1, 0): LogicBellLabel.PHI_MINUS,
    (0, 1): LogicBellLabel.PSI_PLUS,
    (1, 1): LogicBellLabel.PSI_MINUS,
}


def lbsa(s: StateVector, policy: MeasurePolicy) -> list[AnalysisResult]:
    """Logic Bell-state analysis on a four-qubit register ``a1 a2 b1 b2``."""
    if s.n != 4:
        raise ValueError(f"logic Bell analysis needs 4 qubits, got {s.n}")
    _require_span(s, BlockLayout(2, 2))
    for q in range(4):
        s = apply_1q(s, GateKind.H, q)
    s = apply_cnot(s, 0, 1)
    s = apply_cnot(s, 2, 3)
    s = discard_qubit(s, 0)  # a1
    s = discard_qubit(s, 1)  # b1, now a2 b2
    s = apply_cnot(s, 0, 1)
    s = apply_1q(s, GateKind.H, 0)

    results = []
    for first in measure_qubit(s, 0, policy):
        for second in measure_qubit(first.post_state, 1, policy):
            bits = (first.outcome, second.outcome)
            results.append(
                AnalysisResult(_LBSA_DECODE[bits], bits, first.probability * second.probability)
            )
    return results
