"""Dense state-vector engine.

Amplitude index convention is little-endian: qubit ``i`` is bit ``i`` of
the index into ``amps``. All public operations return new
:class:`StateVector` values and leave their inputs untouched.
"""

from __future__ import annotations

import contextlib
import contextvars
import enum
import os
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import kernels

DEFAULT_MAX_QUBITS = 24
BRANCH_CUTOFF = 1e-14
DISCARD_TOLERANCE = 1e-10


class CapacityError(ValueError):
    pass


class QubitIndexError(IndexError):
    pass


class PostselectionError(RuntimeError):
    pass


class DiscardError(RuntimeError):
    def __init__(self, qubit: int, residual: float):
        super().__init__(
            f"qubit {qubit} is entangled with the rest of the register "
            f"(residual {residual:.3e} > {DISCARD_TOLERANCE:.0e})"
        )
        self.qubit = qubit
        self.residual = residual


_cap_override: contextvars.ContextVar[int | None] = contextvars.ContextVar("max_qubits", default=None)


def max_qubits() -> int:
    """Register cap: :func:`qubit_limit` scope, else ``CGHZ_MAX_QUBITS``, else 24."""
    override = _cap_override.get()
    if override is not None:
        return override
    value = os.environ.get("CGHZ_MAX_QUBITS")
    return int(value) if value else DEFAULT_MAX_QUBITS


@contextlib.contextmanager
def qubit_limit(cap: int):
    """Temporarily change the register cap for the current context."""
    if cap < 1:
        raise ValueError(f"max_qubits must be >= 1, got {cap}")
    token = _cap_override.set(int(cap))
    try:
        yield
    finally:
        _cap_override.reset(token)


def check_capacity(n: int, cap: int | None = None) -> None:
    cap = max_qubits() if cap is None else cap
    if n < 1 or n > cap:
        raise CapacityError(f"register of {n} qubits outside [1, {cap}] (max_qubits={cap})")


@dataclass(frozen=True, eq=False)
class StateVector:
    n: int
    amps: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.amps.shape != (1 << self.n,):
            raise ValueError(f"expected {1 << self.n} amplitudes, got shape {self.amps.shape}")

    @classmethod
    def from_amplitudes(cls, amps, normalize: bool = False) -> StateVector:
        arr = np.array(amps, dtype=np.complex128).ravel()
        n = arr.size.bit_length() - 1
        if n < 1 or arr.size != 1 << n:
            raise ValueError(f"amplitude count {arr.size} is not a power of two >= 2")
        if normalize:
            norm = np.linalg.norm(arr)
            if norm == 0:
                raise ValueError("cannot normalize the zero vector")
            arr /= norm
        return cls(n, arr)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def copy(self) -> StateVector:
        return StateVector(self.n, self.amps.copy())

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amps) ** 2


class GateKind(enum.Enum):
    H = "H"
    X = "X"
    Z = "Z"

    @property
    def matrix(self) -> np.ndarray:
        return _MATRICES[self]


_MATRICES = {
    GateKind.H: np.array([[1, 1], [1, -1]], dtype=np.complex128) / np.sqrt(2),
    GateKind.X: np.array([[0, 1], [1, 0]], dtype=np.complex128),
    GateKind.Z: np.array([[1, 0], [0, -1]], dtype=np.complex128),
}

_GATE_KERNELS = {
    GateKind.H: "apply_h",
    GateKind.X: "apply_x",
    GateKind.Z: "apply_z",
}


# -- measurement policies -------------------------------------------------


class MeasurePolicy:
    """Base class for the three ways a measurement can be resolved."""


class BranchAll(MeasurePolicy):
    """Keep every outcome with nonzero probability."""

    def __repr__(self):
        return "BranchAll()"

    def __eq__(self, other):
        return isinstance(other, BranchAll)

    def __hash__(self):
        return hash("BranchAll")


class Sample(MeasurePolicy):
    """Draw one outcome per measurement from a seeded PCG64 stream.

    The generator is numpy's PCG64 seeded with the 64-bit ``seed``; one
    uniform double is consumed per measurement, so equal seeds give equal
    trajectories. The stream advances across measurements and calls.
    """

    def __init__(self, seed: int):
        self.seed = int(seed)
        self.rng = np.random.Generator(np.random.PCG64(self.seed))

    def __repr__(self):
        return f"Sample(seed={self.seed})"

    def draw(self) -> float:
        return float(self.rng.random())


class PostSelect(MeasurePolicy):
    """Force outcomes. A sequence of bits is consumed one per measurement."""

    def __init__(self, bits: int | Sequence[int]):
        self.bits = (int(bits),) if isinstance(bits, (int, np.integer)) else tuple(int(b) for b in bits)
        if not self.bits or any(b not in (0, 1) for b in self.bits):
            raise ValueError(f"postselected bits must be 0/1, got {bits!r}")
        self._pos = 0

    def __repr__(self):
        return f"PostSelect({self.bits!r})"

    def next_bit(self) -> int:
        # a single bit applies to every measurement
        if len(self.bits) == 1:
            return self.bits[0]
        if self._pos >= len(self.bits):
            raise PostselectionError("postselection sequence exhausted")
        bit = self.bits[self._pos]
        self._pos += 1
        return bit


@dataclass(frozen=True)
class MeasurementBranch:
    outcome: int
    probability: float
    post_state: StateVector


# -- operations -----------------------------------------------------------


def zero_state(n: int, cap: int | None = None) -> StateVector:
    check_capacity(n, cap)
    amps = np.zeros(1 << n, dtype=np.complex128)
    amps[0] = 1.0
    return StateVector(n, amps)


def basis_state(bits: Sequence[int]) -> StateVector:
    """Computational basis state; ``bits[i]`` is the value of qubit ``i``."""
    n = len(bits)
    check_capacity(n)
    amps = np.zeros(1 << n, dtype=np.complex128)
    amps[sum(int(b) << i for i, b in enumerate(bits))] = 1.0
    return StateVector(n, amps)


def _check_qubit(s: StateVector, q: int) -> None:
    if not 0 <= q < s.n:
        raise QubitIndexError(f"qubit {q} out of range for a {s.n}-qubit register")


def apply_1q(s: StateVector, g: GateKind, q: int) -> StateVector:
    _check_qubit(s, q)
    out = s.amps.copy()
    getattr(kernels, _GATE_KERNELS[GateKind(g)])(out, q)
    return StateVector(s.n, out)


def apply_cnot(s: StateVector, control: int, target: int) -> StateVector:
    _check_qubit(s, control)
    _check_qubit(s, target)
    if control == target:
        raise QubitIndexError(f"control and target are both qubit {control}")
    out = s.amps.copy()
    kernels.apply_cnot(out, control, target)
    return StateVector(s.n, out)


def _collapsed(s: StateVector, q: int, bit: int, probability: float) -> StateVector:
    out = s.amps.copy()
    kernels.collapse(out, q, bit, 1.0 / np.sqrt(probability))
    return StateVector(s.n, out)


def measure_qubit(s: StateVector, q: int, policy: MeasurePolicy) -> list[MeasurementBranch]:
    """Measure qubit ``q`` in the computational basis.

    The measured qubit stays in the register, collapsed to the outcome.
    ``BranchAll`` returns both branches (outcome 0 first), dropping any
    whose probability is below ``BRANCH_CUTOFF``.
    """
    _check_qubit(s, q)
    p1 = min(max(kernels.prob_one(s.amps, q), 0.0), 1.0)
    probs = (1.0 - p1, p1)

    if isinstance(policy, BranchAll):
        return [
            MeasurementBranch(bit, probs[bit], _collapsed(s, q, bit, probs[bit]))
            for bit in (0, 1)
            if probs[bit] >= BRANCH_CUTOFF
        ]
    if isinstance(policy, Sample):
        u = policy.draw()
        bit = 1 if u < p1 else 0
        if probs[bit] < BRANCH_CUTOFF:
            bit = 1 - bit
        return [MeasurementBranch(bit, probs[bit], _collapsed(s, q, bit, probs[bit]))]
    if isinstance(policy, PostSelect):
        bit = policy.next_bit()
        if probs[bit] < BRANCH_CUTOFF:
            raise PostselectionError(
                f"outcome {bit} on qubit {q} has probability {probs[bit]:.3e}"
            )
        return [MeasurementBranch(bit, probs[bit], _collapsed(s, q, bit, probs[bit]))]
    raise TypeError(f"unknown measurement policy {policy!r}")


def split_qubit(s: StateVector, q: int) -> tuple[np.ndarray, np.ndarray]:
    """The two rows of amplitudes with qubit ``q`` equal to 0 and to 1."""
    _check_qubit(s, q)
    v = s.amps.reshape(-1, 2, 1 << q)
    return v[:, 0, :].ravel(), v[:, 1, :].ravel()


def discard_qubit(s: StateVector, q: int) -> StateVector:
    """Remove a qubit that is in a product state with the rest.

    Splitting the amplitudes on qubit ``q`` gives two rows that are
    parallel iff the qubit factors out. The residual is the norm of the
    smaller row's component orthogonal to the larger one. Qubits above
    ``q`` shift down by one.
    """
    if s.n < 2:
        raise QubitIndexError("cannot discard the only qubit of a register")
    r0, r1 = split_qubit(s, q)
    n0 = float(np.vdot(r0, r0).real)
    n1 = float(np.vdot(r1, r1).real)
    big, small, nbig = (r0, r1, n0) if n0 >= n1 else (r1, r0, n1)
    residual = float(np.linalg.norm(small - (np.vdot(big, small) / nbig) * big))
    if residual > DISCARD_TOLERANCE:
        raise DiscardError(q, residual)
    return StateVector(s.n - 1, big / np.sqrt(nbig))


def tensor(*states: StateVector) -> StateVector:
    """Tensor product; the first state occupies the lowest qubit indices."""
    n = sum(st.n for st in states)
    check_capacity(n)
    amps = states[0].amps
    for st in states[1:]:
        amps = np.kron(st.amps, amps)
    return StateVector(n, np.ascontiguousarray(amps))


def inner_product(a: StateVector, b: StateVector) -> complex:
    """<a|b>, conjugating ``a``."""
    if a.n != b.n:
        raise ValueError(f"dimension mismatch: {a.n} vs {b.n} qubits")
    return complex(np.vdot(a.amps, b.amps))


def fidelity(a: StateVector, b: StateVector) -> float:
    f = abs(inner_product(a, b)) ** 2
    return min(max(f, 0.0), 1.0)
