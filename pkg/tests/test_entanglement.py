import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wtangle.entanglement import (
    SloccClass,
    _concurrence_from_w,
    analyze,
    concurrence_pure_cut,
    pair_concurrences,
    slocc_classify,
    three_tangle,
    von_neumann_entropy,
    wootters_concurrence,
)
from wtangle.qcore import DensityMatrix, Operator, StateVector, apply_local, density, reduced, tensor
from wtangle.states import WParams, make_ghz, make_w1, make_w_n, make_w_prototype

from oracles import haar_state, haar_unitary, hyperdet_tangle, w_class_pair_concurrence, wootters_lapack

R2 = 1 / math.sqrt(2)
_SIGMA_YY_ORACLE = np.kron([[0, -1j], [1j, 0]], [[0, -1j], [1j, 0]])
SWEEP = [WParams(n, g, d) for n in (0, 0.25, 1, 2, 7.5)
         for g in (0, math.pi / 4, math.pi) for d in (0, math.pi / 4, math.pi)]


def bell_times_zero():
    return tensor(StateVector.basis_state("0"), StateVector([R2, 0, 0, R2]))


# ---------------------------------------------------------------- entropy


def test_entropy_values():
    assert von_neumann_entropy(np.eye(2) / 2) == pytest.approx(1.0, abs=1e-12)
    assert von_neumann_entropy(density(make_w1())) == pytest.approx(0.0, abs=1e-12)
    # -(3/4) log2(3/4) - (1/4) log2(1/4)
    closed = -(0.75 * math.log2(0.75) + 0.25 * math.log2(0.25))
    assert closed == pytest.approx(0.81127812, abs=1e-8)
    assert von_neumann_entropy(np.diag([0.75, 0.25])) == pytest.approx(closed, abs=1e-12)


def test_entropy_rejects_invalid():
    with pytest.raises(ValueError):
        von_neumann_entropy(np.eye(2))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 3))
def test_entropy_bounds(seed, n):
    rng = np.random.default_rng(seed)
    z = rng.normal(size=(2**n, 2**n)) + 1j * rng.normal(size=(2**n, 2**n))
    rho = z @ z.conj().T
    rho /= np.trace(rho).real
    s = von_neumann_entropy(DensityMatrix(rho))
    assert 0 <= s <= n
    ev = np.linalg.eigvalsh(rho)
    ev = ev[ev > 1e-12]
    assert s == pytest.approx(-np.sum(ev * np.log2(ev)), abs=1e-10)


# ---------------------------------------------------------- pure-cut C


def test_pure_cut_concurrence():
    assert concurrence_pure_cut(make_w1(), 0) == pytest.approx(math.sqrt(3) / 2, abs=1e-12)
    for a in range(3):
        assert concurrence_pure_cut(StateVector.basis_state("000"), a) == 0
        assert concurrence_pure_cut(make_ghz(), a) == pytest.approx(1.0, abs=1e-12)


# ------------------------------------------------------------- Wootters


def test_wootters_on_w1_pairs():
    s = make_w1()
    # a|100> + b|010> + c|001> with a = b = 1/2, c = sqrt2/2
    assert w_class_pair_concurrence(0.5, 0.5) == 0.5
    assert w_class_pair_concurrence(0.5, math.sqrt(2) / 2) == pytest.approx(R2)
    assert wootters_concurrence(reduced(s, [0, 1])) == pytest.approx(0.5, abs=1e-12)
    assert wootters_concurrence(reduced(s, [0, 2])) == pytest.approx(0.70710678, abs=1e-8)


def test_wootters_bell_and_product():
    assert wootters_concurrence(density(StateVector([R2, 0, 0, R2]))) == pytest.approx(1, abs=1e-12)
    assert wootters_concurrence(density(StateVector.basis_state("01"))) == 0
    assert wootters_concurrence(np.eye(4) / 4) == 0


def test_wootters_rejects_wrong_size():
    with pytest.raises(ValueError):
        wootters_concurrence(np.eye(2) / 2)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 4))
def test_wootters_matches_lapack_route(seed, rank):
    rng = np.random.default_rng(seed)
    z = rng.normal(size=(4, rank)) + 1j * rng.normal(size=(4, rank))
    rho = z @ z.conj().T
    rho /= np.trace(rho).real
    assert wootters_concurrence(DensityMatrix(rho)) == pytest.approx(wootters_lapack(rho), abs=1e-7)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_pure_two_qubit_concurrence_is_two_sqrt_det(seed):
    psi = StateVector(haar_state(np.random.default_rng(seed), 4))
    rho1 = reduced(psi, [0]).entries
    expected = 2 * math.sqrt(max(0.0, (rho1[0, 0] * rho1[1, 1] - abs(rho1[0, 1]) ** 2).real))
    assert wootters_concurrence(density(psi)) == pytest.approx(expected, abs=1e-9)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_pair_route_matches_density_route(seed):
    s = StateVector(haar_state(np.random.default_rng(seed), 8))
    for (i, j), c in pair_concurrences(s).items():
        assert c == pytest.approx(wootters_concurrence(reduced(s, [i, j])), abs=1e-10)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 2**32 - 1), st.booleans())
def test_rank_two_closed_form_is_singular_value_gap(seed, degenerate):
    rng = np.random.default_rng(seed)
    w = rng.normal(size=(4, 2)) + 1j * rng.normal(size=(4, 2))
    if degenerate:
        w[:, 1] = (0.4 - 0.3j) * w[:, 0]
    w /= np.linalg.norm(w)
    sv = np.linalg.svd(w.T @ _SIGMA_YY_ORACLE @ w, compute_uv=False)
    assert _concurrence_from_w(w) == pytest.approx(sv[0] - sv[1], abs=1e-12)


# ----------------------------------------------------------------- tangle


def test_tangle_known_states():
    assert three_tangle(make_ghz()) == pytest.approx(1.0, abs=1e-10)
    assert hyperdet_tangle(make_ghz().amps) == pytest.approx(1.0, abs=1e-15)
    assert three_tangle(StateVector.basis_state("000")) == 0
    assert three_tangle(make_w_prototype()) == 0


@pytest.mark.parametrize("p", SWEEP, ids=str)
def test_w_family_has_no_residual_tangle(p):
    s = make_w_n(p)
    assert three_tangle(s) == 0
    assert hyperdet_tangle(s.amps) < 1e-15
    rep = analyze(s)
    assert rep.monogamy_slack <= 1e-9
    norm, b, c = p.coefficients()
    amps = norm * np.array([1, b, c])
    assert rep.concurrence_pairs[(0, 1)] == pytest.approx(w_class_pair_concurrence(amps[0], amps[1]), abs=1e-9)
    assert rep.concurrence_pairs[(0, 2)] == pytest.approx(w_class_pair_concurrence(amps[0], amps[2]), abs=1e-9)
    assert rep.concurrence_pairs[(1, 2)] == pytest.approx(w_class_pair_concurrence(amps[1], amps[2]), abs=1e-9)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_residual_tangle_equals_hyperdeterminant(seed):
    psi = haar_state(np.random.default_rng(seed), 8)
    s = StateVector(psi)
    assert three_tangle(s) == pytest.approx(hyperdet_tangle(psi), abs=1e-7)
    rep = analyze(s)
    c = rep.concurrence_pairs
    assert c[(0, 1)] ** 2 + c[(0, 2)] ** 2 <= rep.concurrence_1_23**2 + 1e-9


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_measures_invariant_under_local_unitaries(seed):
    rng = np.random.default_rng(seed)
    s = StateVector(haar_state(rng, 8))
    t = s
    for q in range(3):
        t = apply_local(Operator(haar_unitary(rng, 2)), [q], t)
    a, b = analyze(s), analyze(t)
    assert b.tangle == pytest.approx(a.tangle, abs=1e-9)
    assert b.concurrence_1_23 == pytest.approx(a.concurrence_1_23, abs=1e-9)
    for key in a.concurrence_pairs:
        assert b.concurrence_pairs[key] == pytest.approx(a.concurrence_pairs[key], abs=1e-9)
    for key in a.entropy_bits_per_cut:
        assert b.entropy_bits_per_cut[key] == pytest.approx(a.entropy_bits_per_cut[key], abs=1e-9)


# --------------------------------------------------------- classification


def test_classification():
    assert slocc_classify(make_ghz()) is SloccClass.GHZ
    assert slocc_classify(make_w1()) is SloccClass.W
    assert slocc_classify(make_w_prototype()) is SloccClass.W
    assert slocc_classify(bell_times_zero()) is SloccClass.BISEPARABLE
    assert slocc_classify(StateVector.basis_state("000")) is SloccClass.PRODUCT
    assert slocc_classify(make_w_n(WParams(0))) is SloccClass.BISEPARABLE


def test_generic_state_is_ghz_class():
    s = StateVector(haar_state(np.random.default_rng(1), 8))
    assert slocc_classify(s) is SloccClass.GHZ


# ----------------------------------------------------------------- report


def test_analyze_w1():
    rep = analyze(make_w1())
    assert rep.concurrence_pairs[(0, 1)] == pytest.approx(0.5, abs=1e-8)
    assert rep.concurrence_pairs[(0, 2)] == pytest.approx(0.70710678, abs=1e-8)
    assert rep.concurrence_1_23 == pytest.approx(0.86602540, abs=1e-8)
    assert rep.tangle == 0 and rep.slocc_class is SloccClass.W
    assert rep.entropy_bits_per_cut["2|01"] == pytest.approx(1.0, abs=1e-12)
    assert rep.monogamy_slack == pytest.approx(0, abs=1e-9)


def test_analyze_product():
    rep = analyze(StateVector.basis_state("000"))
    assert rep.slocc_class is SloccClass.PRODUCT
    assert rep.tangle == rep.concurrence_1_23 == 0
    assert all(v == 0 for v in rep.concurrence_pairs.values())
    assert all(v == 0 for v in rep.entropy_bits_per_cut.values())


def test_analyze_w_prototype():
    rep = analyze(make_w_prototype())
    for c in rep.concurrence_pairs.values():
        assert c == pytest.approx(2 / 3, abs=1e-9)
    assert rep.tangle == 0 and rep.slocc_class is SloccClass.W


def test_report_serializes():
    d = analyze(make_ghz()).to_dict()
    assert d["slocc_class"] == "GHZClass" and set(d["concurrence_pairs"]) == {"01", "02", "12"}


def test_requires_three_qubits():
    with pytest.raises(ValueError):
        analyze(StateVector([R2, 0, 0, R2]))
