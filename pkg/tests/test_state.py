import numpy as np
import pytest

from src.entangle.core import (
    Bipartition, CATALOG_NAMES, NamedState, PureState, StateKind, Tolerances, all_bipartitions,
    apply_local, catalog, make_state, random_local_unitary, random_pure, random_real_pure,
    single_party_splits, tensor,
)
from src.entangle.core.errors import (
    DimensionMismatch, InvalidBipartition, InvalidDimensions, InvalidParameters, LengthMismatch,
    NonFiniteAmplitude, NotNormalized, UnknownName, ZeroVector,
)
from src.entangle.core.utils import digits_to_index, index_to_digits
from src.entangle.geometry import concurrence_wedge

S2 = 1 / np.sqrt(2)
S3 = 1 / np.sqrt(3)


def test_make_state_bell():
    state = make_state([2, 2], [S2, 0, 0, S2])
    assert state.dims == (2, 2)
    assert state.n_parties == 2
    np.testing.assert_allclose(state.amps, [S2, 0, 0, S2])


def test_make_state_basis():
    state = make_state([2], [1, 0])
    assert state.dim == 2
    assert state.amps[0] == 1


def test_make_state_normalize():
    state = make_state([2, 2], [1, 1, 1, 0], normalize=True)
    np.testing.assert_allclose(state.amps, [S3, S3, S3, 0], atol=1e-15)


def test_make_state_errors():
    with pytest.raises(LengthMismatch):
        make_state([2, 2], [1, 0, 0])
    with pytest.raises(ZeroVector):
        make_state([2], [0, 0], normalize=True)
    with pytest.raises(NotNormalized):
        make_state([2], [1, 1])
    with pytest.raises(InvalidDimensions):
        make_state([1, 2], [1, 0])
    with pytest.raises(InvalidDimensions):
        make_state([], [1])


@pytest.mark.parametrize("amps", [[np.nan, 0], [np.inf, 0], [1, complex(0, np.inf)]])
def test_make_state_rejects_non_finite(amps):
    with pytest.raises(NonFiniteAmplitude):
        make_state([2], amps)
    with pytest.raises(NonFiniteAmplitude):
        make_state([2], amps, normalize=True)


def test_pure_state_rejects_non_finite():
    with pytest.raises(NonFiniteAmplitude):
        PureState((2,), [np.nan, 1])


def test_make_state_normalize_large_amplitudes():
    state = make_state([2], [1e300, 1e300], normalize=True)
    np.testing.assert_allclose(state.amps, [S2, S2])


def test_total_dimension_limit():
    with pytest.raises(InvalidDimensions):
        random_pure([2] * 40, 0)
    with pytest.raises(InvalidDimensions):
        make_state(["x"], [1, 0])


def test_state_is_immutable():
    state = make_state([2], [1, 0])
    with pytest.raises(ValueError):
        state.amps[0] = 0


def test_tolerances_must_be_positive():
    with pytest.raises(InvalidParameters):
        Tolerances(norm_tol=0)
    assert Tolerances().with_equality_tol(1e-6).equality_tol == 1e-6


def test_big_endian_indexing():
    assert digits_to_index((1, 0, 0), (2, 2, 2)) == 4
    assert digits_to_index((1, 1, 1), (3, 3, 3)) == 13
    assert index_to_digits(26, (3, 3, 3)) == (2, 2, 2)


# --- catalog ---

def test_catalog_bell_states():
    np.testing.assert_allclose(catalog("PhiPlus").amps, [S2, 0, 0, S2])
    np.testing.assert_allclose(catalog("PhiMinus").amps, [S2, 0, 0, -S2])
    np.testing.assert_allclose(catalog("PsiPlus").amps, [0, S2, S2, 0])
    np.testing.assert_allclose(catalog("PsiMinus").amps, [0, S2, -S2, 0])


def test_catalog_qutrit_ghz():
    state = catalog("GHZ(3,3)")
    assert state.dims == (3, 3, 3)
    nonzero = np.flatnonzero(np.abs(state.amps) > 0)
    assert list(nonzero) == [0, 13, 26]
    np.testing.assert_allclose(state.amps[nonzero], S3)


def test_catalog_w3():
    state = catalog("W3")
    assert list(np.flatnonzero(np.abs(state.amps) > 0)) == [1, 2, 4]


def test_catalog_product_basis():
    state = catalog("ProductBasis(2,3:1,2)")
    assert state.dims == (2, 3)
    assert state.amps[5] == 1


def test_catalog_bare_ghz_is_three_qubits():
    assert catalog("ghz").dims == (2, 2, 2)


def test_catalog_errors():
    with pytest.raises(InvalidParameters):
        catalog("GHZ(1,2)")
    with pytest.raises(InvalidParameters):
        catalog("ProductBasis(2,2:0,2)")
    with pytest.raises(InvalidParameters):
        catalog("W3(2)")
    with pytest.raises(UnknownName):
        catalog("Bogus")


@pytest.mark.parametrize("name", ["GHZ(40,2)", "GHZ(25,2)", "GHZ(3,1000)", "ProductBasis(4096,4096,2:0,0,0)"])
def test_catalog_rejects_oversized_states(name):
    with pytest.raises(InvalidParameters):
        catalog(name)


def test_catalog_largest_allowed_ghz():
    assert NamedState.parse("GHZ(24,2)").n == 24


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_catalog_names_round_trip(name):
    named = NamedState.parse(name)
    assert NamedState.parse(str(named)) == named
    state = catalog(named)
    assert abs(np.vdot(state.amps, state.amps).real - 1) < 1e-12


def test_named_state_kinds():
    assert NamedState.parse("psiminus").kind is StateKind.PSI_MINUS
    assert len(CATALOG_NAMES) >= 7


@pytest.mark.parametrize("name", ["GHZ(3,2)", "GHZ(3,3)", "W3", "GHZ(4,2)"])
def test_catalog_permutation_symmetry(name):
    state = catalog(name)
    values = [concurrence_wedge(state, bip) for bip in single_party_splits(state.n_parties)]
    assert max(values) - min(values) <= 1e-12


# --- random states ---

def test_random_pure_deterministic():
    a = random_pure([2, 3], 7)
    b = random_pure([2, 3], 7)
    np.testing.assert_array_equal(a.amps, b.amps)


def test_random_pure_distinct_seeds():
    a = random_pure([2, 2, 2], 1)
    b = random_pure([2, 2, 2], 2)
    assert not np.allclose(a.amps, b.amps)
    assert abs(np.linalg.norm(a.amps) - 1) < 1e-12


def test_random_real_pure_is_real():
    state = random_real_pure([2, 2, 2], 3)
    assert np.all(state.amps.imag == 0)


def test_random_pure_invalid_dims():
    with pytest.raises(InvalidDimensions):
        random_pure([2, 1], 0)


def test_random_local_unitary_is_unitary():
    u = random_local_unitary(3, 11)
    np.testing.assert_allclose(u @ u.conj().T, np.eye(3), atol=1e-12)


def test_apply_local_flips_first_party():
    x = np.array([[0, 1], [1, 0]])
    state = apply_local(catalog("ProductBasis(2,2:0,0)"), 0, x)
    assert abs(state.amps[2]) == pytest.approx(1.0)


def test_apply_local_shape_checked():
    with pytest.raises(DimensionMismatch):
        apply_local(random_pure([2, 3], 0), 1, np.eye(2))


def test_tensor_orders_parties():
    zero = make_state([2], [1, 0])
    one = make_state([2], [0, 1])
    assert tensor(zero, one).amps[1] == 1


# --- bipartitions ---

def test_bipartition_parse():
    bip = Bipartition.parse("0|12", 3)
    assert bip.focus == frozenset({0})
    assert bip.complement == frozenset({1, 2})
    assert bip.label() == "0|12"
    assert Bipartition.parse("01", 3).label() == "01|2"
    assert Bipartition.parse("2|10", 3).label() == "2|01"


@pytest.mark.parametrize("selector", ["0|1", "|12", "3|012", "012|", "00|12", "a|12"])
def test_bipartition_parse_rejects(selector):
    with pytest.raises(InvalidBipartition):
        Bipartition.parse(selector, 3)


def test_bipartition_invariants():
    with pytest.raises(InvalidBipartition):
        Bipartition(frozenset(), 2)
    with pytest.raises(InvalidBipartition):
        Bipartition(frozenset({0, 1}), 2)
    assert Bipartition(frozenset({0, 1}), 4).dims_of((2, 3, 2, 2)) == (6, 4)


def test_bipartition_lists():
    assert [b.label() for b in single_party_splits(3)] == ["0|12", "1|02", "2|01"]
    assert len(all_bipartitions(3)) == 6
    assert len(all_bipartitions(4)) == 14
