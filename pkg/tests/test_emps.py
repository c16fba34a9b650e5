import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from empskit.classify import build_dicke, build_ghz, build_w
from empskit.emps import (
    EmpsVector,
    emps,
    emps_vector,
    eta_indicator,
    geometric_entanglement,
    passive_energy,
    polygon_check,
    total_emps,
)
from empskit.errors import ArgumentError, ValidationError
from empskit.qcore import (
    DensityMatrix,
    PureState,
    basis_state,
    random_pure_state,
    reduced_density_matrix,
    tensor_product,
)

from oracles import (
    passive_energy_enumeration_oracle,
    random_density,
    random_hermitian,
    random_unitary_energies,
)

EXCITED = np.diag([0.0, 1.0]).astype(complex)  # local Hamiltonian |1><1|


# ---------------------------------------------------------------- passive energy


def test_passive_energy_maximally_mixed_qubit():
    rho = DensityMatrix(np.eye(2) / 2)
    assert abs(passive_energy(rho, EXCITED) - 0.5) <= 1e-12


def test_passive_energy_moves_large_population_down():
    rho = DensityMatrix(np.diag([0.3, 0.7]).astype(complex))
    assert abs(passive_energy(rho, EXCITED) - 0.3) <= 1e-12


def test_passive_energy_matches_pairing_enumeration():
    rng = np.random.default_rng(101)
    for _ in range(10):
        rho = random_density(4, rng)
        ham = random_hermitian(4, rng)
        got = passive_energy(DensityMatrix(rho), ham)
        want = passive_energy_enumeration_oracle(rho, ham)
        assert abs(got - want) <= 1e-9


def test_passive_energy_lower_bounds_unitary_orbit_samples():
    rng = np.random.default_rng(103)
    rho = random_density(4, rng)
    ham = random_hermitian(4, rng)
    samples = random_unitary_energies(rho, ham, 2000, rng)
    assert passive_energy(DensityMatrix(rho), ham) <= samples.min() + 1e-10


def test_passive_energy_never_exceeds_state_energy():
    rng = np.random.default_rng(107)
    for _ in range(20):
        rho = random_density(4, rng)
        ham = random_hermitian(4, rng)
        current = np.trace(rho @ ham).real
        assert passive_energy(DensityMatrix(rho), ham) <= current + 1e-10


def test_passive_energy_dimension_mismatch():
    with pytest.raises(ArgumentError):
        passive_energy(DensityMatrix(np.eye(2) / 2), np.eye(4))


# ---------------------------------------------------------------- marginal energies


def test_emps_of_product_state_is_zero():
    psi = basis_state("010")
    for i in (1, 2, 3):
        assert emps(psi, i) == 0.0


def test_emps_of_maximal_ghz_is_half():
    g = build_ghz(3, math.pi / 4)
    for i in (1, 2, 3):
        assert abs(emps(g, i) - 0.5) <= 1e-12


def test_emps_of_noisy_w_mixture():
    v1 = 0.2
    w = build_dicke(3, 1)
    rho = DensityMatrix((1 - v1) * w.density().entries + v1 / 8 * np.eye(8))
    for i in (1, 2, 3):
        assert abs(emps(rho, i) - (2 + v1) / 6) <= 1e-12


def test_emps_index_out_of_range():
    with pytest.raises(ArgumentError):
        emps(basis_state("00"), 3)
    with pytest.raises(ArgumentError):
        emps(basis_state("00"), 0)


def test_emps_agrees_with_passive_energy_of_marginal():
    rng = np.random.default_rng(109)
    for _ in range(10):
        psi = random_pure_state(4, rng)
        q = int(rng.integers(1, 5))
        red = reduced_density_matrix(psi, (q,))
        assert abs(emps(psi, q) - passive_energy(red, EXCITED)) <= 1e-10


def test_geometric_entanglement_is_twice_the_marginal_energy():
    assert abs(geometric_entanglement(build_ghz(3, math.pi / 4), 1) - 1.0) <= 1e-12
    assert geometric_entanglement(basis_state("010"), 2) == 0.0
    rng = np.random.default_rng(113)
    psi = random_pure_state(4, rng)
    for q in (1, 4):
        assert geometric_entanglement(psi, q) == 2.0 * emps(psi, q)


def test_emps_vector_biseparable_vertex():
    bell = PureState(np.array([1, 0, 0, 1]) / math.sqrt(2))
    bs = tensor_product(bell, basis_state("0"))
    assert np.allclose(emps_vector(bs).values, [0.5, 0.5, 0.0], atol=1e-12)


def test_emps_vector_uniform_w():
    v = emps_vector(build_w([1 / 3] * 3))
    assert np.allclose(v.values, 1 / 3, atol=1e-12)


def test_emps_vector_all_zeros_product():
    assert np.array_equal(emps_vector(basis_state("0000")).values, np.zeros(4))


def test_emps_vector_validation():
    with pytest.raises(ValidationError):
        EmpsVector(n=3, values=np.array([0.6, 0.0, 0.0]))
    with pytest.raises(ValidationError):
        EmpsVector(n=2, values=np.array([0.1, 0.1, 0.1]))


# ---------------------------------------------------------------- polygon / total / eta


def test_polygon_uniform_w_slack():
    report = polygon_check(EmpsVector(3, np.array([1 / 3, 1 / 3, 1 / 3])))
    assert report.satisfied
    assert abs(report.worst_slack - 1 / 3) <= 1e-12
    assert report.violating_index is None


def test_polygon_boundary_all_zero():
    report = polygon_check(EmpsVector(3, np.zeros(3)))
    assert report.satisfied
    assert report.worst_slack == 0.0


def test_polygon_constructed_violation():
    # (1/2, 0, 0) can never arise from a genuine pure state
    report = polygon_check(EmpsVector(3, np.array([0.5, 0.0, 0.0])))
    assert not report.satisfied
    assert report.violating_index == 1
    assert abs(report.worst_slack + 0.5) <= 1e-12


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_total_uniform_w_is_one(n):
    v = emps_vector(build_w([1 / n] * n))
    assert abs(total_emps(v) - 1.0) <= 1e-9


@pytest.mark.parametrize("n", [3, 5])
@pytest.mark.parametrize("theta", [0.2, 0.5, math.pi / 4])
def test_total_ghz_formula(n, theta):
    v = emps_vector(build_ghz(n, theta))
    assert abs(total_emps(v) - n * math.sin(theta) ** 2) <= 1e-9


@pytest.mark.parametrize("n,l", [(4, 1), (4, 2), (5, 2), (6, 3), (6, 4)])
def test_total_dicke_facet(n, l):
    v = emps_vector(build_dicke(n, l))
    assert abs(total_emps(v) - min(l, n - l)) <= 1e-9


def test_eta_generalized_ghz():
    for theta in (0.3, math.pi / 4):
        assert abs(eta_indicator(build_ghz(3, theta)) - math.sin(theta) ** 2) <= 1e-9


def test_eta_biseparable_is_zero():
    bell = PureState(np.array([1, 0, 0, 1]) / math.sqrt(2))
    bs = tensor_product(basis_state("0"), bell)
    assert abs(eta_indicator(bs)) <= 1e-9


@pytest.mark.parametrize("n", [3, 4, 6, 8])
def test_eta_ghz_at_w_facet_angle(n):
    theta = math.asin(math.sqrt(1 / n))
    assert abs(eta_indicator(build_ghz(n, theta)) - (n - 2) / n) <= 1e-9


def test_eta_needs_three_qubits():
    with pytest.raises(ArgumentError):
        eta_indicator(basis_state("00"))
    with pytest.raises(ArgumentError):
        eta_indicator(EmpsVector(2, np.array([0.1, 0.1])))


def test_eta_equals_polygon_worst_slack_exactly():
    rng = np.random.default_rng(211)
    for _ in range(20):
        v = emps_vector(random_pure_state(4, rng))
        assert eta_indicator(v) == polygon_check(v).worst_slack


def test_eta_accepts_vector_and_state():
    g = build_ghz(3, 0.4)
    assert eta_indicator(g) == eta_indicator(emps_vector(g))


# ---------------------------------------------------------------- random-state laws


@pytest.mark.parametrize("n", [3, 5, 8])
def test_polygon_law_on_haar_sample(n):
    rng = np.random.default_rng(500 + n)
    for _ in range(300):
        v = emps_vector(random_pure_state(n, rng))
        assert polygon_check(v).worst_slack >= -1e-9
        assert v.values.min() >= 0.0
        assert v.values.max() <= 0.5 + 1e-10


@settings(max_examples=20, deadline=None)
@given(seed=st.integers(0, 2 ** 31 - 1), n=st.integers(2, 6))
def test_emps_bounds_property(seed, n):
    v = emps_vector(random_pure_state(n, np.random.default_rng(seed)))
    assert np.all(v.values >= 0.0)
    assert np.all(v.values <= 0.5 + 1e-10)
