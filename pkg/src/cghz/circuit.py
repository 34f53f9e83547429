"""Gate-list representation of measurement circuits and a branching executor.

Instructions name physical qubits by their index in the original
register; discarding never renumbers them. The text form has one
instruction per line::

    H <q>
    X <q>
    Z <q>
    CNOT <c> <t>
    Z <q> if parity(<q>,<q>,...)
    M <q> -> <bitname>
    DISCARD <q>
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .statevec import (
    BranchAll,
    GateKind,
    MeasurePolicy,
    StateVector,
    apply_1q,
    apply_cnot,
    discard_qubit,
    measure_qubit,
)


class CircuitSyntaxError(ValueError):
    pass


@dataclass(frozen=True)
class Instruction:
    op: str
    qubits: tuple[int, ...]
    bit: str | None = None
    condition: tuple[int, ...] = ()
    # "reduce" instructions use the reduction policy when executed
    stage: str = "analyze"

    def to_text(self) -> str:
        if self.op == "M":
            return f"M {self.qubits[0]} -> {self.bit}"
        line = f"{self.op} {' '.join(str(q) for q in self.qubits)}"
        if self.condition:
            line += f" if parity({','.join(str(q) for q in self.condition)})"
        return line


def H(q, stage="analyze"):
    return Instruction("H", (q,), stage=stage)


def CNOT(c, t, stage="analyze"):
    return Instruction("CNOT", (c, t), stage=stage)


def M(q, bit, stage="analyze"):
    return Instruction("M", (q,), bit=bit, stage=stage)


def DISCARD(q, stage="analyze"):
    return Instruction("DISCARD", (q,), stage=stage)


def Z_IF(q, condition, stage="analyze"):
    return Instruction("Z", (q,), condition=tuple(condition), stage=stage)


def to_text(circuit) -> str:
    return "".join(ins.to_text() + "\n" for ins in circuit)


_LINE_PATTERNS = [
    (re.compile(r"^(H|X|Z) (\d+)$"), lambda g: Instruction(g[0], (int(g[1]),))),
    (re.compile(r"^CNOT (\d+) (\d+)$"), lambda g: Instruction("CNOT", (int(g[0]), int(g[1])))),
    (
        re.compile(r"^(H|X|Z) (\d+) if parity\((\d+(?:,\d+)*)\)$"),
        lambda g: Instruction(g[0], (int(g[1]),), condition=tuple(int(q) for q in g[2].split(","))),
    ),
    (re.compile(r"^M (\d+) -> (\w+)$"), lambda g: Instruction("M", (int(g[0]),), bit=g[1])),
    (re.compile(r"^DISCARD (\d+)$"), lambda g: Instruction("DISCARD", (int(g[0]),))),
]


def parse(text: str) -> list[Instruction]:
    """Inverse of :func:`to_text`. Stage tags are not part of the text form."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        for pattern, build in _LINE_PATTERNS:
            match = pattern.match(line)
            if match:
                out.append(build(match.groups()))
                break
        else:
            raise CircuitSyntaxError(f"line {lineno}: cannot parse {raw!r}")
    return out


@dataclass
class Leaf:
    """One measurement history through a circuit."""

    state: StateVector
    bits: dict[str, int] = field(default_factory=dict)
    measured: dict[int, int] = field(default_factory=dict)
    corrections: list[int] = field(default_factory=list)
    stage_probability: dict[str, float] = field(default_factory=dict)

    def probability(self, stages=None) -> float:
        p = 1.0
        for stage, value in self.stage_probability.items():
            if stages is None or stage in stages:
                p *= value
        return p


def run(state: StateVector, circuit, policy: MeasurePolicy, stage_policies=None):
    """Execute ``circuit`` on ``state`` and return ``(leaves, live)``.

    ``live`` lists the physical qubit held at each position of the
    surviving register. ``stage_policies`` maps a stage name to the
    policy used for its measurements; other stages use ``policy``.
    """
    stage_policies = stage_policies or {}
    live = list(range(state.n))
    leaves = [Leaf(state)]
    for ins in circuit:
        if ins.op == "DISCARD":
            pos = live.index(ins.qubits[0])
            for leaf in leaves:
                leaf.state = discard_qubit(leaf.state, pos)
            live.pop(pos)
        elif ins.op == "M":
            q = ins.qubits[0]
            pos = live.index(q)
            pol = stage_policies.get(ins.stage, policy)
            grown = []
            for leaf in leaves:
                for branch in measure_qubit(leaf.state, pos, pol):
                    probs = dict(leaf.stage_probability)
                    probs[ins.stage] = probs.get(ins.stage, 1.0) * branch.probability
                    grown.append(
                        Leaf(
                            branch.post_state,
                            {**leaf.bits, ins.bit: branch.outcome},
                            {**leaf.measured, q: branch.outcome},
                            list(leaf.corrections),
                            probs,
                        )
                    )
            leaves = grown
        elif ins.op == "CNOT":
            c, t = (live.index(q) for q in ins.qubits)
            for leaf in leaves:
                leaf.state = apply_cnot(leaf.state, c, t)
        elif ins.op in ("H", "X", "Z"):
            pos = live.index(ins.qubits[0])
            for leaf in leaves:
                if ins.condition and not sum(leaf.measured[q] for q in ins.condition) % 2:
                    continue
                leaf.state = apply_1q(leaf.state, GateKind(ins.op), pos)
                if ins.condition:
                    leaf.corrections.append(ins.qubits[0])
        else:
            raise CircuitSyntaxError(f"unknown instruction {ins.op!r}")
    return leaves, live


def enumerates(policy: MeasurePolicy) -> bool:
    return isinstance(policy, BranchAll)
