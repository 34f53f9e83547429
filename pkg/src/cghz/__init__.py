"""Simulation of logic Bell-state and concatenated-GHZ state analysis."""

__version__ = "0.1.0"

from .kernels import BACKEND
from .statevec import (
    BranchAll,
    GateKind,
    PostSelect,
    Sample,
    StateVector,
    apply_1q,
    apply_cnot,
    discard_qubit,
    fidelity,
    inner_product,
    measure_qubit,
    tensor,
    zero_state,
)
from .encodings import (
    BlockLayout,
    CghzLabel,
    GhzSign,
    LogicBellLabel,
    LogicQubitCoeffs,
    make_cghz,
    make_ghz,
    make_logic_bell,
    make_logic_qubit,
)
from .analyzer import analyze_cghz, lbsa, reduce_blocks
from .oracle import check_equivalence, project_onto_basis
from .protocols import swap, teleport
