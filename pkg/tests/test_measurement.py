"""Tests for parity statistics, cat-basis measurement, and homodyne readout."""

import cmath
import math

import numpy as np
import pytest
from scipy.integrate import quad
from scipy.special import erfc

from catqubit.fock import (
    coherent_to_fock,
    parity_diagonal,
    quadrature_wavefunction,
    state_to_fock,
)
from catqubit.gates import LogicalParams, ideal_hadamard_output
from catqubit.measurement import (
    cat_basis_measure,
    computational_readout,
    homodyne_pdf,
    parity_overlap,
    parity_probabilities,
    _interval_probability,
)
from catqubit.states import (
    CoherentTerm,
    SuperposedState,
    apply_displacement,
    coherent_state,
    inner_product,
    normalize,
    single_mode,
)


def random_state(rng, n_modes=1, n_terms=3, amp_scale=2.0):
    terms = [
        CoherentTerm(
            complex(rng.uniform(-1, 1), rng.uniform(-1, 1)),
            tuple(
                complex(rng.uniform(-amp_scale, amp_scale), rng.uniform(-amp_scale, amp_scale))
                for _ in range(n_modes)
            ),
        )
        for _ in range(n_terms)
    ]
    return normalize(SuperposedState(n_modes, tuple(terms)))


# ---------------------------------------------------------------------------
# parity
# ---------------------------------------------------------------------------


def test_parity_overlap_vacuum():
    assert parity_overlap(0, 0) == 1


def test_parity_overlap_coherent_vs_fock_sum():
    # <a|(-1)^n|a> = sum_n (-1)^n |c_n|^2 = e^{-2a^2}
    alpha = 2.0
    got = parity_overlap(alpha, alpha)
    vec = coherent_to_fock(alpha, 60)
    ref = np.sum(parity_diagonal(60) * np.abs(vec) ** 2)
    assert abs(got - math.exp(-8.0)) < 1e-14
    assert abs(got - ref) < 1e-10


def test_parity_overlap_symmetric_pair():
    # the displaced plus-cat pairs |a/2> <-> |-a/2> under parity
    assert parity_overlap(1.5, -1.5) == pytest.approx(1.0, abs=1e-14)


def test_parity_probabilities_displaced_cats():
    alpha = 3.0
    even_cat = normalize(single_mode([(1.0, alpha / 2), (1.0, -alpha / 2)]))
    odd_cat = normalize(single_mode([(1.0, alpha / 2), (-1.0, -alpha / 2)]))
    pe, po = parity_probabilities(even_cat, 0)
    assert pe == pytest.approx(1.0, abs=1e-12)
    pe, po = parity_probabilities(odd_cat, 0)
    assert po == pytest.approx(1.0, abs=1e-12)


def test_parity_probabilities_coherent():
    pe, po = parity_probabilities(coherent_state(1.0), 0)
    assert pe == pytest.approx((1 + math.exp(-2)) / 2, abs=1e-14)
    # independent check: sum over even Fock components
    vec = coherent_to_fock(1.0, 40)
    assert pe == pytest.approx(float(np.sum(np.abs(vec[::2]) ** 2)), abs=1e-8)


def test_parity_probabilities_reject_unnormalized():
    s = single_mode([(2.0, 1.0)])
    with pytest.raises(ValueError, match="not normalized"):
        parity_probabilities(s, 0)


def test_parity_displacement_identity():
    # two code paths: displace-then-measure vs direct displaced-parity overlap
    rng = np.random.default_rng(31)
    beta = 0.8 - 0.3j
    s = random_state(rng, n_modes=1, n_terms=3)
    pe_path1, _ = parity_probabilities(apply_displacement(s, 0, beta), 0)

    exp_direct = 0j
    for tj in s.terms:
        for tk in s.terms:
            aj, ak = tj.amps[0] + beta, tk.amps[0] + beta
            phase_j = cmath.exp(0.5 * (beta * tj.amps[0].conjugate() - beta.conjugate() * tj.amps[0]))
            phase_k = cmath.exp(0.5 * (beta * tk.amps[0].conjugate() - beta.conjugate() * tk.amps[0]))
            exp_direct += (
                (tj.coeff * phase_j).conjugate()
                * (tk.coeff * phase_k)
                * parity_overlap(aj, ak)
            )
    pe_path2 = (1 + exp_direct.real) / 2
    assert abs(pe_path1 - pe_path2) < 1e-12


# ---------------------------------------------------------------------------
# cat-basis measurement
# ---------------------------------------------------------------------------


def test_cat_measure_plus_cat_is_even():
    p = LogicalParams(3.0)
    cat = ideal_hadamard_output(0, p)
    even, odd = cat_basis_measure(cat, 0, p, branch="both")
    assert even.probability == pytest.approx(1.0, abs=1e-12)
    assert odd.probability == pytest.approx(0.0, abs=1e-12)
    assert abs(inner_product(even.post_state, cat)) ** 2 == pytest.approx(1.0, abs=1e-12)
    assert odd.post_state is None


def test_cat_measure_minus_cat_is_odd():
    p = LogicalParams(3.0)
    cat = ideal_hadamard_output(1, p)
    even, odd = cat_basis_measure(cat, 0, p, branch="both")
    assert odd.probability == pytest.approx(1.0, abs=1e-12)
    assert even.probability == pytest.approx(0.0, abs=1e-12)


def test_cat_measure_vacuum_probability():
    alpha = 2.5
    p = LogicalParams(alpha)
    even, odd = cat_basis_measure(coherent_state(0), 0, p, branch="both")
    assert even.probability == pytest.approx((1 + math.exp(-(alpha**2) / 2)) / 2, abs=1e-13)
    assert even.probability + odd.probability == pytest.approx(1.0, abs=1e-12)


def test_cat_measure_branch_completeness_random():
    rng = np.random.default_rng(37)
    p = LogicalParams(2.0)
    for _ in range(20):
        s = random_state(rng, n_modes=2, n_terms=3)
        even, odd = cat_basis_measure(s, 1, p, branch="both")
        assert even.probability + odd.probability == pytest.approx(1.0, abs=1e-10)


def test_cat_measure_projector_idempotent():
    rng = np.random.default_rng(41)
    p = LogicalParams(2.0)
    s = random_state(rng, n_modes=1, n_terms=3)
    first = cat_basis_measure(s, 0, p, branch="even")
    second = cat_basis_measure(first.post_state, 0, p, branch="both")[0]
    assert second.probability == pytest.approx(1.0, abs=1e-10)


def test_cat_measure_zero_probability_branch_raises():
    p = LogicalParams(3.0)
    cat = ideal_hadamard_output(0, p)
    with pytest.raises(ValueError, match="probability"):
        cat_basis_measure(cat, 0, p, branch="odd")


def test_cat_measure_sampling_deterministic():
    p = LogicalParams(2.0)
    s = normalize(single_mode([(0.6, 0), (0.8, 2.0)]))
    labels1 = [
        cat_basis_measure(s, 0, p, branch="sample", rng=np.random.Generator(np.random.Philox(9))).label
        for _ in range(3)
    ]
    labels2 = [
        cat_basis_measure(s, 0, p, branch="sample", rng=np.random.Generator(np.random.Philox(9))).label
        for _ in range(3)
    ]
    assert labels1 == labels2


def test_cat_measure_requires_rng_for_sampling():
    p = LogicalParams(2.0)
    with pytest.raises(ValueError, match="rng"):
        cat_basis_measure(coherent_state(0), 0, p, branch="sample")


# ---------------------------------------------------------------------------
# homodyne
# ---------------------------------------------------------------------------


def test_homodyne_vacuum_gaussian():
    s = coherent_state(0)
    xs = np.linspace(-4, 4, 41)
    got = homodyne_pdf(s, 0, 0.0, xs)
    want = np.exp(-(xs**2)) / math.sqrt(math.pi)  # variance 1/2
    assert np.allclose(got, want, atol=1e-12)
    assert homodyne_pdf(s, 0, 1.3, 0.0) == pytest.approx(1 / math.sqrt(math.pi))


def test_homodyne_coherent_displaced_gaussian():
    alpha = 3.0
    s = coherent_state(alpha)
    center = math.sqrt(2) * alpha
    assert homodyne_pdf(s, 0, 0.0, center) == pytest.approx(1 / math.sqrt(math.pi))
    got = homodyne_pdf(s, 0, 0.0, np.array([center - 1, center + 1]))
    assert got[0] == pytest.approx(got[1], abs=1e-12)


def test_homodyne_cat_fringes_vs_fock():
    # imaginary-quadrature readout distinguishes the two cats
    alpha = 2.5
    p = LogicalParams(alpha)
    xs = np.array([-1.0, -0.5, 0.0, 0.5, 1.0])
    for bit in (0, 1):
        cat = ideal_hadamard_output(bit, p)
        got = homodyne_pdf(cat, 0, math.pi / 2, xs)
        vec = state_to_fock(cat, 50)
        # rotate: x_theta statistics = x statistics of e^{-i theta n} psi
        rotated = vec * np.exp(-1j * math.pi / 2 * np.arange(51))
        ref = np.abs(quadrature_wavefunction(rotated, xs)) ** 2
        assert np.allclose(got, ref, atol=1e-8)
    plus = homodyne_pdf(ideal_hadamard_output(0, p), 0, math.pi / 2, 0.0)
    minus = homodyne_pdf(ideal_hadamard_output(1, p), 0, math.pi / 2, 0.0)
    assert plus > 1.0 and minus == pytest.approx(0.0, abs=1e-12)


def test_homodyne_normalization_large_amplitude():
    p = LogicalParams(6.0)
    cat = ideal_hadamard_output(0, p)
    val, _ = quad(lambda x: homodyne_pdf(cat, 0, 0.3, x), -40, 40, limit=300)
    assert val == pytest.approx(1.0, abs=1e-6)


def test_homodyne_multimode_marginal_with_cross_terms():
    rng = np.random.default_rng(43)
    s = random_state(rng, n_modes=2, n_terms=2)
    val, _ = quad(lambda x: homodyne_pdf(s, 0, 0.0, x), -30, 30, limit=200)
    assert val == pytest.approx(1.0, abs=1e-8)


def test_homodyne_mean_vs_fock():
    rng = np.random.default_rng(47)
    s = random_state(rng, n_modes=1, n_terms=2)
    mean, _ = quad(lambda x: x * homodyne_pdf(s, 0, 0.0, x), -30, 30, limit=200)
    vec = state_to_fock(s, 60)
    a = np.diag(np.sqrt(np.arange(1, 61)), k=1)
    xop = (a + a.conj().T) / math.sqrt(2)
    ref = np.vdot(vec, xop @ vec).real
    assert mean == pytest.approx(ref, abs=1e-8)


# ---------------------------------------------------------------------------
# computational readout
# ---------------------------------------------------------------------------


def test_interval_probability_matches_quadrature():
    rng = np.random.default_rng(53)
    s = random_state(rng, n_modes=1, n_terms=2)
    a, b = -0.7, 1.9
    closed = _interval_probability(s, 0, 0.4, a, b)
    numeric, _ = quad(lambda x: homodyne_pdf(s, 0, 0.4, x), a, b, limit=200)
    assert closed == pytest.approx(numeric, abs=1e-10)


def test_readout_code_states():
    alpha = 6.0
    p = LogicalParams(alpha)
    tail = 0.5 * erfc(alpha / math.sqrt(2))  # Gaussian tail at the midpoint
    r0 = computational_readout(coherent_state(0), 0, p)
    assert r0.p_one == pytest.approx(tail, rel=1e-9)
    assert r0.p_zero == pytest.approx(1 - tail, rel=1e-12)
    r1 = computational_readout(coherent_state(alpha), 0, p)
    assert r1.p_zero == pytest.approx(tail, rel=1e-9)
    assert r1.p_one == pytest.approx(1 - tail, rel=1e-12)


def test_readout_cat_splits_evenly():
    p = LogicalParams(4.0)
    r = computational_readout(ideal_hadamard_output(0, p), 0, p)
    assert r.p_zero == pytest.approx(0.5, abs=1e-12)
    assert r.p_one == pytest.approx(0.5, abs=1e-12)


def test_readout_inconclusive_window():
    p = LogicalParams(4.0)
    r = computational_readout(ideal_hadamard_output(0, p), 0, p, window=1.0)
    assert r.p_inconclusive > 0
    assert r.p_zero + r.p_one + r.p_inconclusive == pytest.approx(1.0, abs=1e-10)
    with pytest.raises(ValueError):
        computational_readout(coherent_state(0), 0, p, window=-1.0)
