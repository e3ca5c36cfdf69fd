"""
大样本的数值性质：与 `entangle sweep` 相同的随机态 (random_pure(dims, seed))，
固定 seed 列表，结果可复现。
"""
import numpy as np
import pytest

from src.entangle.core import (
    all_bipartitions, apply_local, catalog, make_state, random_local_unitary, random_pure,
    random_real_pure,
)
from src.entangle.entropy import araki_lieb_check, entanglement_entropy, partial_trace, von_neumann_entropy
from src.entangle.geometry import (
    concurrence_purity, concurrence_wedge, polygon_check, three_qubit_identity_residual,
)
from src.entangle.parser import format_state, parse_ket_expr
from src.entangle.teleport import decoupling_check, teleport

MIXED_DIMS = [(2, 2), (2, 2, 2), (3, 3), (2, 3), (3, 3, 3), (2, 2, 2, 2)]
SLACK_TOL = 1e-10


def test_bell_states():
    for name in ("PhiPlus", "PhiMinus", "PsiPlus", "PsiMinus"):
        state = catalog(name)
        assert abs(concurrence_wedge(state, {0}) - 1) <= 1e-12
        assert abs(entanglement_entropy(state, {0}) - 1) <= 1e-12


def test_partially_entangled_state():
    state = make_state([2, 2], [1, 1, 1, 0], normalize=True)
    assert abs(concurrence_wedge(state, {0}) - 2 / 3) <= 1e-12


@pytest.mark.parametrize("name, c_value, s_value", [
    ("GHZ(3,2)", 1.0, 1.0),
    ("W3", 2 * np.sqrt(2) / 3, 0.9182958340544896),
    ("GHZ(3,3)", 2 / np.sqrt(3), np.log2(3)),
])
def test_three_party_catalog_states(name, c_value, s_value):
    state = catalog(name)
    report = polygon_check(state)
    assert report.c == pytest.approx((c_value,) * 3, abs=1e-12)
    c_a, c_b, c_c = report.c
    assert abs(c_b + c_c - 2 * c_a) <= 1e-12
    for k in range(3):
        assert abs(concurrence_purity(state, {k}) - c_value) <= 1e-12
        assert entanglement_entropy(state, {k}) == pytest.approx(s_value, abs=1e-6)


def test_oracle_equivalence():
    worst = 0.0
    for seed in range(500):
        dims = MIXED_DIMS[seed % len(MIXED_DIMS)]
        state = random_pure(dims, seed)
        for bip in all_bipartitions(len(dims)):
            worst = max(worst, abs(concurrence_wedge(state, bip) - concurrence_purity(state, bip)))
    assert worst <= 1e-10


def test_polygon_inequalities():
    violations = 0
    for seed in range(10_000):
        report = polygon_check(random_pure([2, 2, 2], seed))
        if min(report.min_linear_slack, report.min_squared_slack) < -SLACK_TOL:
            violations += 1
    assert violations == 0


def test_residual_identity_real_amplitudes():
    for seed in range(1000):
        identity = three_qubit_identity_residual(random_real_pure([2, 2, 2], seed))
        assert abs(identity.residual) <= 1e-10
        assert identity.rhs >= 0


def test_complementary_entropies():
    for seed in range(500):
        dims = MIXED_DIMS[seed % len(MIXED_DIMS)]
        state = random_pure(dims, seed)
        for bip in all_bipartitions(len(dims)):
            s_a = von_neumann_entropy(partial_trace(state, bip.focus))
            s_b = von_neumann_entropy(partial_trace(state, bip.complement))
            assert abs(s_a - s_b) <= 1e-10


def test_araki_lieb_and_subadditivity():
    for seed in range(1000):
        n = 3 if seed % 2 == 0 else 4
        state = random_pure([2] * n, seed)
        for a in range(n):
            for b in range(a + 1, n):
                result = araki_lieb_check(state, {a}, {b})
                assert result.lower_slack >= -SLACK_TOL
                assert result.upper_slack >= -SLACK_TOL


def test_teleportation_with_phi_plus():
    for seed in range(100):
        state = random_pure([2], seed)
        result = teleport(state)
        for t in result.transcripts:
            assert abs(t.probability - 0.25) <= 1e-12
            assert abs(t.fidelity - 1) <= 1e-12
        assert decoupling_check(state)


def test_local_unitary_invariance():
    for seed in range(100):
        dims = MIXED_DIMS[seed % len(MIXED_DIMS)]
        state = random_pure(dims, seed)
        rotated = state
        for party, d in enumerate(dims):
            rotated = apply_local(rotated, party, random_local_unitary(d, 10_000 + 7 * seed + party))
        for bip in all_bipartitions(len(dims)):
            assert abs(concurrence_wedge(rotated, bip) - concurrence_wedge(state, bip)) <= 1e-10


def test_parser_round_trip_for_random_states():
    for seed in range(100):
        dims = MIXED_DIMS[seed % len(MIXED_DIMS)]
        state = random_pure(dims, seed)
        again = parse_ket_expr(format_state(state, precision=17), dims_hint=dims)
        assert np.max(np.abs(again.amps - state.amps)) <= 1e-9
