"""Named states: Bell pairs, GHZ blocks, logic qubits and C-GHZ bases.

A C-GHZ register holds ``N`` blocks of ``m`` physical qubits laid out
block-major, so block ``i`` is qubits ``[i*m, i*m + m)`` and the first
two qubits of each block are the ``a1, a2`` (``b1, b2``, ...) roles.

Pattern classes are indexed by the block-to-block difference vector
``d`` of the sign pattern: ``k - 1 = sum(d[i] << i)`` with ``d[0]``
comparing blocks 0 and 1. The canonical representative of a class has
block 0 in ``GHZ+``.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from itertools import product

import numpy as np

from .statevec import StateVector, check_capacity

_INV_SQRT2 = 1.0 / np.sqrt(2.0)


class LabelError(ValueError):
    pass


class NormalizationError(ValueError):
    pass


class GhzSign(enum.Enum):
    PLUS = "+"
    MINUS = "-"

    @property
    def factor(self) -> int:
        return 1 if self is GhzSign.PLUS else -1

    @property
    def bit(self) -> int:
        return 0 if self is GhzSign.PLUS else 1

    def flipped(self) -> GhzSign:
        return GhzSign.MINUS if self is GhzSign.PLUS else GhzSign.PLUS

    @classmethod
    def from_bit(cls, bit: int) -> GhzSign:
        return cls.MINUS if bit else cls.PLUS


@dataclass(frozen=True)
class BlockLayout:
    N: int
    m: int

    def __post_init__(self):
        if self.N < 2 or self.m < 2:
            raise LabelError(f"layout needs N >= 2 and m >= 2, got N={self.N}, m={self.m}")

    @property
    def n_qubits(self) -> int:
        return self.N * self.m

    def block(self, i: int) -> range:
        if not 0 <= i < self.N:
            raise IndexError(f"block {i} out of range for N={self.N}")
        return range(i * self.m, i * self.m + self.m)

    def first(self, i: int) -> int:
        return self.block(i)[0]

    def second(self, i: int) -> int:
        return self.block(i)[1]

    def role_name(self, q: int) -> str:
        """Physical-qubit name such as ``a1`` or ``c3``."""
        block, offset = divmod(q, self.m)
        return f"{chr(ord('a') + block) if block < 26 else f'blk{block}_'}{offset + 1}"

    def check_capacity(self, cap: int | None = None) -> None:
        check_capacity(self.n_qubits, cap)

    @property
    def n_classes(self) -> int:
        return 1 << (self.N - 1)


@dataclass(frozen=True)
class BlockPattern:
    signs: tuple[GhzSign, ...]

    @property
    def diff(self) -> tuple[int, ...]:
        return tuple(int(a is not b) for a, b in zip(self.signs, self.signs[1:]))

    def complement(self) -> BlockPattern:
        return BlockPattern(tuple(s.flipped() for s in self.signs))


def pattern_for_k(k: int, N: int) -> BlockPattern:
    if N < 2:
        raise LabelError(f"N must be >= 2, got {N}")
    if not 1 <= k <= 1 << (N - 1):
        raise LabelError(f"pattern index k={k} outside [1, {1 << (N - 1)}] for N={N}")
    signs = [GhzSign.PLUS]
    for i in range(N - 1):
        signs.append(signs[-1].flipped() if (k - 1) >> i & 1 else signs[-1])
    return BlockPattern(tuple(signs))


def k_for_diff(diff) -> int:
    bits = [int(d) for d in diff]
    if any(b not in (0, 1) for b in bits):
        raise LabelError(f"difference vector must be binary, got {diff!r}")
    return 1 + sum(b << i for i, b in enumerate(bits))


_LABEL_RE = re.compile(r"^N(\d+)m(\d+)k(\d+)([+-])$")


@dataclass(frozen=True)
class CghzLabel:
    layout: BlockLayout
    k: int
    sign: GhzSign

    def __post_init__(self):
        if not 1 <= self.k <= self.layout.n_classes:
            raise LabelError(
                f"pattern index k={self.k} outside [1, {self.layout.n_classes}] for N={self.layout.N}"
            )

    @property
    def pattern(self) -> BlockPattern:
        return pattern_for_k(self.k, self.layout.N)

    def __str__(self):
        return f"N{self.layout.N}m{self.layout.m}k{self.k}{self.sign.value}"

    @classmethod
    def parse(cls, text: str) -> CghzLabel:
        match = _LABEL_RE.match(text.strip())
        if not match:
            raise LabelError(f"cannot parse C-GHZ label {text!r} (expected e.g. N3m2k1+)")
        N, m, k, sign = match.groups()
        return cls(BlockLayout(int(N), int(m)), int(k), GhzSign(sign))


class LogicBellLabel(enum.Enum):
    PHI_PLUS = "phi+"
    PHI_MINUS = "phi-"
    PSI_PLUS = "psi+"
    PSI_MINUS = "psi-"

    @property
    def k(self) -> int:
        return 1 if self in (LogicBellLabel.PHI_PLUS, LogicBellLabel.PHI_MINUS) else 2

    @property
    def sign(self) -> GhzSign:
        plus = self in (LogicBellLabel.PHI_PLUS, LogicBellLabel.PSI_PLUS)
        return GhzSign.PLUS if plus else GhzSign.MINUS

    def to_cghz(self, m: int = 2) -> CghzLabel:
        return CghzLabel(BlockLayout(2, m), self.k, self.sign)

    @classmethod
    def from_cghz(cls, label: CghzLabel) -> LogicBellLabel:
        if label.layout.N != 2:
            raise LabelError(f"logic Bell labels need N=2, got {label}")
        for member in cls:
            if member.k == label.k and member.sign is label.sign:
                return member
        raise AssertionError("unreachable")


def decode_bell_bits(sign_bit: int, type_bit: int) -> LogicBellLabel:
    """Analyzer bits to a logic Bell label: 00 phi+, 10 phi-, 01 psi+, 11 psi-."""
    return LogicBellLabel.from_cghz(
        CghzLabel(BlockLayout(2, 2), 1 + int(type_bit), GhzSign.from_bit(sign_bit))
    )


def parse_state_label(text: str) -> CghzLabel:
    """Parse ``N<N>m<m>k<k><+|->`` or one of ``phi+ phi- psi+ psi-``."""
    try:
        return LogicBellLabel(text.strip().lower()).to_cghz()
    except ValueError:
        return CghzLabel.parse(text)


@dataclass(frozen=True)
class LogicQubitCoeffs:
    alpha: complex
    beta: complex

    def __post_init__(self):
        total = abs(self.alpha) ** 2 + abs(self.beta) ** 2
        if abs(total - 1.0) > 1e-12:
            raise NormalizationError(f"|alpha|^2 + |beta|^2 = {total!r}, expected 1")


# -- constructors ---------------------------------------------------------


def make_ghz(m: int, sign: GhzSign) -> StateVector:
    check_capacity(m)
    amps = np.zeros(1 << m, dtype=np.complex128)
    amps[0] += _INV_SQRT2
    amps[(1 << m) - 1] += sign.factor * _INV_SQRT2
    return StateVector(m, amps)


def support_indices(layout: BlockLayout) -> np.ndarray:
    """Indices of the ``2**N`` basis kets with every block all-0 or all-1.

    Entry ``b`` has block ``i`` all-ones iff bit ``i`` of ``b`` is set.
    """
    ones = (1 << layout.m) - 1
    idx = np.zeros(1 << layout.N, dtype=np.int64)
    for i in range(layout.N):
        idx[(np.arange(1 << layout.N) >> i) & 1 == 1] += ones << (i * layout.m)
    return idx


def _block_product_coeffs(signs) -> np.ndarray:
    """Coefficients of ``GHZ^{s_0} x ... x GHZ^{s_N-1}`` on the support."""
    N = len(signs)
    b = np.arange(1 << N)
    coeffs = np.full(1 << N, _INV_SQRT2**N)
    for i, s in enumerate(signs):
        if s is GhzSign.MINUS:
            coeffs[(b >> i) & 1 == 1] *= -1
    return coeffs


def _from_support(layout: BlockLayout, coeffs: np.ndarray) -> StateVector:
    layout.check_capacity()
    amps = np.zeros(1 << layout.n_qubits, dtype=np.complex128)
    amps[support_indices(layout)] = coeffs
    return StateVector(layout.n_qubits, amps)


def make_block_product(signs, m: int) -> StateVector:
    """``GHZ^{s_0}_m x GHZ^{s_1}_m x ...`` with block 0 lowest."""
    signs = tuple(signs)
    if len(signs) == 1:
        return make_ghz(m, signs[0])
    return _from_support(BlockLayout(len(signs), m), _block_product_coeffs(signs))


def make_cghz(label: CghzLabel) -> StateVector:
    pattern = label.pattern
    coeffs = _block_product_coeffs(pattern.signs) + label.sign.factor * _block_product_coeffs(
        pattern.complement().signs
    )
    return _from_support(label.layout, coeffs * _INV_SQRT2)


def make_cghz_from_pattern(pattern: BlockPattern, sign: GhzSign, m: int) -> StateVector:
    """C-GHZ state built from an explicit (not necessarily canonical) pattern."""
    coeffs = _block_product_coeffs(pattern.signs) + sign.factor * _block_product_coeffs(
        pattern.complement().signs
    )
    return _from_support(BlockLayout(len(pattern.signs), m), coeffs * _INV_SQRT2)


def make_logic_bell(label: LogicBellLabel) -> StateVector:
    return make_cghz(LogicBellLabel(label).to_cghz(m=2))


def make_logic_qubit(c: LogicQubitCoeffs, m: int) -> StateVector:
    check_capacity(m)
    amps = c.alpha * make_ghz(m, GhzSign.PLUS).amps + c.beta * make_ghz(m, GhzSign.MINUS).amps
    return StateVector(m, amps.astype(np.complex128))


def all_labels(layout: BlockLayout) -> list[CghzLabel]:
    """Every basis label, k ascending with Plus before Minus."""
    return [
        CghzLabel(layout, k, sign)
        for k, sign in product(range(1, layout.n_classes + 1), (GhzSign.PLUS, GhzSign.MINUS))
    ]


def span_residual(s: StateVector, layout: BlockLayout) -> float:
    """Weight of ``s`` outside the C-GHZ span of ``layout``."""
    if s.n != layout.n_qubits:
        raise ValueError(f"state has {s.n} qubits, layout needs {layout.n_qubits}")
    inside = s.amps[support_indices(layout)]
    return max(0.0, 1.0 - float(np.vdot(inside, inside).real))


_PHYSICAL_BELL = {
    "phi+": (0, 0, GhzSign.PLUS),
    "phi-": (0, 0, GhzSign.MINUS),
    "psi+": (0, 1, GhzSign.PLUS),
    "psi-": (0, 1, GhzSign.MINUS),
}


def make_bell(name: str) -> StateVector:
    """Two-qubit Bell state ``phi+ phi- psi+ psi-``."""
    b0, b1, sign = _PHYSICAL_BELL[name]
    amps = np.zeros(4, dtype=np.complex128)
    amps[b0 | b1 << 1] = _INV_SQRT2
    amps[(1 - b0) | (1 - b1) << 1] = sign.factor * _INV_SQRT2
    return StateVector(2, amps)
