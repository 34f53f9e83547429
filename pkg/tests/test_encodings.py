import itertools

import numpy as np
import pytest

from cghz.encodings import (
    BlockLayout,
    BlockPattern,
    CghzLabel,
    GhzSign,
    LabelError,
    LogicBellLabel,
    LogicQubitCoeffs,
    NormalizationError,
    all_labels,
    k_for_diff,
    make_bell,
    make_cghz,
    make_cghz_from_pattern,
    make_ghz,
    make_logic_bell,
    make_logic_qubit,
    parse_state_label,
    pattern_for_k,
    span_residual,
)
from cghz.statevec import CapacityError, basis_state, fidelity, inner_product, tensor

P, M = GhzSign.PLUS, GhzSign.MINUS
S2 = 1 / np.sqrt(2)


def ket(n, *terms):
    """Sum of coefficient * |bitstring>, bitstring written qubit 0 first."""
    a = np.zeros(1 << n, dtype=complex)
    for coeff, bits in terms:
        a[sum(int(b) << i for i, b in enumerate(bits))] += coeff
    return a


def test_ghz_plus_m2_is_phi_plus():
    assert fidelity(make_ghz(2, P), make_bell("phi+")) == pytest.approx(1)
    np.testing.assert_allclose(make_ghz(2, P).amps, ket(2, (S2, "00"), (S2, "11")))


def test_ghz_minus_m3():
    np.testing.assert_allclose(make_ghz(3, M).amps, ket(3, (S2, "000"), (-S2, "111")))


def test_ghz_m1_is_plus():
    np.testing.assert_allclose(make_ghz(1, P).amps, [S2, S2])


def test_ghz_capacity():
    with pytest.raises(CapacityError):
        make_ghz(25, P)


def test_logic_bell_phi_plus_expansion():
    np.testing.assert_allclose(
        make_logic_bell(LogicBellLabel.PHI_PLUS).amps, ket(4, (S2, "0000"), (S2, "1111")), atol=1e-15
    )


def test_logic_bell_psi_plus_expansion():
    # (phi+ phi- + phi- phi+)/sqrt2 worked out by hand
    np.testing.assert_allclose(
        make_logic_bell(LogicBellLabel.PSI_PLUS).amps, ket(4, (S2, "0000"), (-S2, "1111")), atol=1e-15
    )


@pytest.mark.parametrize("label", list(LogicBellLabel))
def test_logic_bell_matches_definition(label):
    pp = tensor(make_bell("phi+"), make_bell("phi+")).amps
    mm = tensor(make_bell("phi-"), make_bell("phi-")).amps
    pm = tensor(make_bell("phi+"), make_bell("phi-")).amps  # block A phi+, block B phi-
    mp = tensor(make_bell("phi-"), make_bell("phi+")).amps
    expected = {
        LogicBellLabel.PHI_PLUS: pp + mm,
        LogicBellLabel.PHI_MINUS: pp - mm,
        LogicBellLabel.PSI_PLUS: pm + mp,
        LogicBellLabel.PSI_MINUS: pm - mp,
    }[label] * S2
    np.testing.assert_allclose(make_logic_bell(label).amps, expected, atol=1e-15)


@pytest.mark.parametrize("label", list(LogicBellLabel))
def test_logic_bell_cghz_correspondence(label):
    c = label.to_cghz()
    assert (c.k, c.sign) == {"phi+": (1, P), "phi-": (1, M), "psi+": (2, P), "psi-": (2, M)}[label.value]
    assert fidelity(make_logic_bell(label), make_cghz(c)) == pytest.approx(1, abs=1e-12)
    assert LogicBellLabel.from_cghz(c) is label


def test_cghz_n2_m2_k1_plus():
    s = make_cghz(CghzLabel(BlockLayout(2, 2), 1, P))
    np.testing.assert_allclose(s.amps, ket(4, (S2, "0000"), (S2, "1111")), atol=1e-15)


def test_cghz_n3_m2_definition():
    # (phi+ phi+ phi+ + phi- phi- phi-)/sqrt2
    phi_p, phi_m = make_bell("phi+"), make_bell("phi-")
    expected = (tensor(phi_p, phi_p, phi_p).amps + tensor(phi_m, phi_m, phi_m).amps) * S2
    s = make_cghz(CghzLabel.parse("N3m2k1+"))
    np.testing.assert_allclose(s.amps, expected, atol=1e-15)


def test_gram_n3_m3_is_identity():
    states = [make_cghz(l) for l in all_labels(BlockLayout(3, 3))]
    gram = np.array([[inner_product(a, b) for b in states] for a in states])
    np.testing.assert_allclose(gram, np.eye(8), atol=1e-12)


@pytest.mark.parametrize("N,m", [(N, m) for N in (2, 3, 4) for m in (2, 3, 4)])
def test_basis_orthonormal_and_spanning(N, m):
    layout = BlockLayout(N, m)
    states = [make_cghz(l) for l in all_labels(layout)]
    assert len(states) == 2**N
    gram = np.array([[inner_product(a, b) for b in states] for a in states])
    np.testing.assert_allclose(gram, np.eye(2**N), atol=1e-12)
    for s in states:
        assert span_residual(s, layout) < 1e-12


@pytest.mark.parametrize("N,m", [(2, 2), (3, 2), (3, 3), (4, 2)])
def test_complement_symmetry(N, m):
    for k in range(1, 2 ** (N - 1) + 1):
        pattern = pattern_for_k(k, N)
        for sign in (P, M):
            a = make_cghz(CghzLabel(BlockLayout(N, m), k, sign))
            b = make_cghz_from_pattern(pattern.complement(), sign, m)
            assert fidelity(a, b) == pytest.approx(1, abs=1e-12)
            overlap = inner_product(a, b)
            assert overlap == pytest.approx(sign.factor, abs=1e-12)


def test_pattern_k1():
    p = pattern_for_k(1, 4)
    assert p.signs == (P, P, P, P) and p.diff == (0, 0, 0)


def test_pattern_k2():
    p = pattern_for_k(2, 4)
    assert p.diff == (1, 0, 0)
    assert p.signs == (P, M, M, M)
    assert p.complement().signs == (M, P, P, P)


@pytest.mark.parametrize("N", [2, 3, 4, 5, 6])
def test_pattern_round_trip(N):
    seen = set()
    for k in range(1, 2 ** (N - 1) + 1):
        p = pattern_for_k(k, N)
        assert p.signs[0] is P
        assert k_for_diff(p.diff) == k
        assert p.complement().diff == p.diff
        seen.add(p.diff)
    assert seen == set(itertools.product((0, 1), repeat=N - 1))


@pytest.mark.parametrize("k", [0, 9])
def test_pattern_out_of_range(k):
    with pytest.raises(LabelError):
        pattern_for_k(k, 4)
    with pytest.raises(LabelError):
        CghzLabel(BlockLayout(4, 2), k, P)


def test_logic_qubit_examples():
    assert fidelity(make_logic_qubit(LogicQubitCoeffs(1, 0), 3), make_ghz(3, P)) == pytest.approx(1)
    assert fidelity(make_logic_qubit(LogicQubitCoeffs(0, 1), 2), make_bell("phi-")) == pytest.approx(1)
    s = make_logic_qubit(LogicQubitCoeffs(S2, S2), 2)
    np.testing.assert_allclose(s.amps, basis_state([0, 0]).amps, atol=1e-15)


def test_logic_qubit_normalization():
    with pytest.raises(NormalizationError):
        LogicQubitCoeffs(1, 1)


@pytest.mark.parametrize(
    "text,expected",
    [("N3m2k1+", (3, 2, 1, P)), ("N4m3k8-", (4, 3, 8, M)), ("phi-", (2, 2, 1, M)), ("psi+", (2, 2, 2, P))],
)
def test_label_parsing(text, expected):
    label = parse_state_label(text)
    assert (label.layout.N, label.layout.m, label.k, label.sign) == expected
    if text.startswith("N"):
        assert str(label) == text


@pytest.mark.parametrize("text", ["N3m2k5+", "N1m2k1+", "N3m2k1", "bell", "N3m1k1+"])
def test_label_parsing_errors(text):
    with pytest.raises(LabelError):
        parse_state_label(text)


def test_span_residual_outside():
    assert span_residual(basis_state([0, 1, 0, 0]), BlockLayout(2, 2)) == pytest.approx(1)


def test_block_roles():
    layout = BlockLayout(3, 2)
    assert [layout.role_name(q) for q in range(6)] == ["a1", "a2", "b1", "b2", "c1", "c2"]
    assert list(layout.block(1)) == [2, 3]
    assert BlockPattern((P, M, P)).diff == (1, 1)
