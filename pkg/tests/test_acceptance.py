"""One test per acceptance criterion; each prints a PASS/FAIL line in the summary."""

import json
import subprocess
import sys
import time

import numpy as np
import pytest

from cghz import circuit as ir
from cghz.analyzer import analyze_cghz, reduce_blocks, reduction_circuit
from cghz.cli import run
from cghz.encodings import (
    BlockLayout,
    CghzLabel,
    GhzSign,
    LogicBellLabel,
    LogicQubitCoeffs,
    all_labels,
    make_bell,
    make_cghz,
    make_ghz,
    make_logic_bell,
)
from cghz.oracle import check_equivalence, project_onto_basis
from cghz.protocols import swap, teleport
from cghz.statevec import BranchAll, GateKind, PostSelect, Sample, StateVector, apply_1q, fidelity, tensor

P, M = GhzSign.PLUS, GhzSign.MINUS
PHI_P, PHI_M, PSI_P, PSI_M = LogicBellLabel


def combo(*terms):
    amps = sum(c * s.amps for c, s in terms)
    return StateVector(terms[0][1].n, amps / np.linalg.norm(amps))


def test_c1_logic_bell_analysis(criterion):
    expected = {"phi+": [0, 0], "phi-": [1, 0], "psi+": [0, 1], "psi-": [1, 1]}
    ok = True
    start = time.perf_counter()
    for name, bits in expected.items():
        code, report = run(["analyze", "--state", name])
        (out,) = report["results"]["outcomes"]
        ok &= code == 0 and out["bits"] == bits and out["logic_bell"] == name
        ok &= abs(out["probability"] - 1) <= 1e-12
    elapsed = time.perf_counter() - start
    ok &= elapsed < 0.1
    assert criterion("1 logic Bell analysis", ok, f"{elapsed:.3f}s")


def test_c2_arbitrary_discrimination(criterion):
    ok = True
    start = time.perf_counter()
    layouts = [BlockLayout(N, m) for N in (2, 3, 4) for m in (2, 3, 4) if N * m <= 16]
    for layout in layouts:
        for label in all_labels(layout):
            s = make_cghz(label)
            for seed in range(16):
                (r,) = analyze_cghz(s, layout, BranchAll(), Sample(seed))
                ok &= r.label == label and abs(r.probability - 1) <= 1e-12
    elapsed = time.perf_counter() - start
    ok &= elapsed < 30
    assert criterion("2 arbitrary C-GHZ discrimination", ok, f"{elapsed:.2f}s")


def test_c3_oracle_equivalence(criterion):
    start = time.perf_counter()
    worst = 0.0
    for N in (2, 3):
        for m in (2, 3):
            code, report = run(["verify", "--N", str(N), "--m", str(m), "--trials", "50", "--seed", "11"])
            assert code == 0
            worst = max(worst, report["results"]["max_deviation"])
    elapsed = time.perf_counter() - start
    ok = worst < 1e-9 and elapsed < 10
    assert criterion("3 analyzer/oracle equivalence", ok, f"max_dev={worst:.1e} {elapsed:.2f}s")


def test_c4_teleportation(criterion):
    rng = np.random.default_rng(17)
    ok = True
    start = time.perf_counter()
    for m in (2, 3):
        gp, gm = make_ghz(m, P), make_ghz(m, M)
        for _ in range(50):
            v = rng.standard_normal(2) + 1j * rng.standard_normal(2)
            v /= np.linalg.norm(v)
            a, b = complex(v[0]), complex(v[1])
            forms = {
                PHI_P: combo((a, gp), (b, gm)),
                PHI_M: combo((a, gp), (-b, gm)),
                PSI_P: combo((a, gm), (b, gp)),
                PSI_M: combo((a, gm), (-b, gp)),
            }
            results = teleport(LogicQubitCoeffs(a, b), m, BranchAll())
            ok &= sorted(r.outcome.value for r in results) == sorted(l.value for l in LogicBellLabel)
            for r in results:
                ok &= abs(r.probability - 0.25) <= 1e-12
                ok &= abs(r.fidelity - 1) <= 1e-9
                ok &= abs(fidelity(r.received, forms[r.outcome]) - 1) <= 1e-9
    elapsed = time.perf_counter() - start
    ok &= elapsed < 10
    assert criterion("4 teleportation", ok, f"{elapsed:.2f}s")


def test_c5_swapping(criterion):
    ok = True
    start = time.perf_counter()
    for m in (2, 3):
        gp, gm = make_ghz(m, P), make_ghz(m, M)
        target = combo((1, tensor(gp, gp)), (1, tensor(gm, gm)))
        results = swap(m, BranchAll())
        ok &= len(results) == 4
        for r in results:
            ok &= abs(r.probability - 0.25) <= 1e-12
            ok &= abs(fidelity(r.corrected, target) - 1) <= 1e-9
    elapsed = time.perf_counter() - start
    ok &= elapsed < 10
    assert criterion("5 entanglement swapping", ok, f"{elapsed:.2f}s")


def test_c6_discrepancy_audit(criterion):
    # (a) Hadamard layer on the psi-type logic Bell states
    phi_p, psi_p, psi_m = make_bell("phi+"), make_bell("psi+"), make_bell("psi-")
    ok_a = True
    for label, sign in ((PSI_P, 1), (PSI_M, -1)):
        s = make_logic_bell(label)
        for q in range(4):
            s = apply_1q(s, GateKind.H, q)
        reproduced = combo((1, tensor(phi_p, psi_p)), (sign, tensor(psi_p, phi_p)))
        printed = combo((1, tensor(phi_p, psi_p)), (sign, tensor(psi_m, phi_p)))
        ok_a &= abs(fidelity(s, reproduced) - 1) <= 1e-12
        ok_a &= fidelity(s, printed) < 1 - 1e-6

    # (b) one odd-parity block permutes the class; the per-block Z repairs it
    layout, reduced = BlockLayout(2, 3), BlockLayout(2, 2)
    label = CghzLabel(layout, 1, P)
    s = make_cghz(label)
    bare = [ins for ins in reduction_circuit(layout) if not ins.condition]
    (leaf,), _ = ir.run(s, bare, PostSelect((1, 0)))
    raw = project_onto_basis(leaf.state, reduced).dominant()
    flipped = leaf.state
    for q in range(2):
        flipped = apply_1q(flipped, GateKind.X, q)
    global_rule = project_onto_basis(flipped, reduced).dominant()
    (fixed,) = reduce_blocks(s, layout, PostSelect((1, 0)))
    repaired = project_onto_basis(fixed.state, reduced).dominant()
    ok_b = raw.k != label.k and global_rule.k != label.k
    ok_b &= repaired == CghzLabel(reduced, label.k, label.sign)
    assert criterion("6 discrepancy audit", ok_a and ok_b, f"(a)={ok_a} (b)={ok_b}")


def _cli(*argv):
    start = time.perf_counter()
    proc = subprocess.run([sys.executable, "-m", "cghz", *argv], capture_output=True, text=True)
    return proc, time.perf_counter() - start


def test_c7_performance(criterion):
    proc_a, t_a = _cli("analyze", "--state", "N5m4k1+")
    (out,) = json.loads(proc_a.stdout)["results"]["outcomes"]
    ok_a = proc_a.returncode == 0 and out["label"] == "N5m4k1+" and t_a < 2
    proc_v, t_v = _cli("verify", "--N", "4", "--m", "4", "--trials", "20")
    ok_v = proc_v.returncode == 0 and t_v < 60
    assert criterion("7 performance smoke", ok_a and ok_v, f"analyze={t_a:.2f}s verify={t_v:.2f}s")


REPRO_COMMANDS = [
    ["analyze", "--state", "N3m3k2-", "--seed", "5"],
    ["verify", "--N", "2", "--m", "3", "--trials", "10", "--seed", "5"],
    ["teleport", "--alpha", "0.6", "--beta", "0.8i", "--m", "2", "--seed", "5"],
    ["teleport", "--alpha", "0.6", "--beta", "0.8", "--m", "2", "--all-branches"],
    ["swap", "--m", "2", "--seed", "5"],
    ["noise-sweep", "--p", "0,0.25", "--trials", "20", "--seed", "5"],
    ["emit-circuit", "--N", "3", "--m", "2"],
]


def _payload(argv):
    proc, _ = _cli(*argv)
    report = json.loads(proc.stdout)
    report.pop("duration_s")
    return json.dumps(report, sort_keys=True).encode()


@pytest.mark.parametrize("argv", [REPRO_COMMANDS])
def test_c8_reproducibility(argv, criterion):
    ok = all(_payload(cmd) == _payload(cmd) for cmd in argv)
    assert criterion("8 reproducibility", ok, f"{len(argv)} commands")
