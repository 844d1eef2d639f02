"""Cat-basis measurement, parity statistics, and homodyne readout.

The dichotomic cat measurement displaces a mode by -alpha/2, reads photon
number parity, and displaces back.  In the displaced frame the two cats
(|0> +- |alpha>) become exact parity eigenstates, so parity alone decides
which cat was present: even <-> |0> + |alpha>, odd <-> |0> - |alpha>.

Homodyne densities use the quadrature convention x = (a + a+)/sqrt(2); a
coherent state |alpha> then has mean sqrt(2) Re(alpha e^{-i theta_LO}) and
variance 1/2 at local-oscillator angle theta_LO.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import erf

from .states import (
    SuperposedState,
    CoherentTerm,
    apply_displacement,
    apply_phase,
    coherent_overlap,
    compact,
    norm,
    normalize,
)

__all__ = [
    "MeasurementRecord",
    "ReadoutResult",
    "parity_overlap",
    "parity_probabilities",
    "cat_basis_measure",
    "homodyne_pdf",
    "computational_readout",
]


@dataclass(frozen=True)
class MeasurementRecord:
    """Outcome of a dichotomic measurement.

    Attributes:
        label: "even" or "odd" photon-number parity in the displaced frame.
        probability: probability of this branch on the measured state.
        post_state: normalized post-measurement state with the measured mode
            collapsed in place; None when the branch probability is below
            1e-15 and no post-state exists.
    """

    label: str
    probability: float
    post_state: SuperposedState | None


@dataclass(frozen=True)
class ReadoutResult:
    """Probabilities of the homodyne computational-basis readout."""

    p_zero: float
    p_one: float
    p_inconclusive: float


def _check_normalized(s: SuperposedState) -> None:
    n = norm(s)
    if abs(n - 1.0) > 1e-9:
        raise ValueError(f"state is not normalized (norm = {n:.12g})")


def parity_overlap(tau: complex, alpha: complex) -> complex:
    """Matrix element <tau|(-1)^n|alpha> of the parity operator.

    Parity reflects a coherent state, (-1)^n |alpha> = |-alpha>, so this is
    just the coherent overlap with the reflected amplitude.
    """
    return coherent_overlap(tau, -alpha)


def _parity_expectation(s: SuperposedState, mode: int) -> complex:
    total = 0j
    for tj in s.terms:
        for tk in s.terms:
            w = tj.coeff.conjugate() * tk.coeff
            for m, (aj, ak) in enumerate(zip(tj.amps, tk.amps)):
                if m == mode:
                    w *= parity_overlap(aj, ak)
                else:
                    w *= coherent_overlap(aj, ak)
                if w == 0:
                    break
            total += w
    return total


def parity_probabilities(s: SuperposedState, mode: int) -> tuple[float, float]:
    """Even/odd photon-number probabilities of one mode, computed analytically.

    Args:
        s: normalized state.
        mode: mode whose parity is measured.

    Returns:
        (p_even, p_odd); the pair sums to 1 by construction.

    Raises:
        ValueError: if the state is not normalized.
    """
    s._check_mode(mode)
    _check_normalized(s)
    r = _parity_expectation(s, mode).real
    return (1.0 + r) / 2.0, (1.0 - r) / 2.0


def _parity_project(s: SuperposedState, mode: int, even: bool) -> SuperposedState:
    """Apply (I +- parity)/2 on one mode; doubles the term count."""
    sign = 1.0 if even else -1.0
    out = []
    for t in s.terms:
        a = t.amps[mode]
        out.append(CoherentTerm(0.5 * t.coeff, t.amps))
        flipped = t.amps[:mode] + (-a,) + t.amps[mode + 1 :]
        out.append(CoherentTerm(0.5 * sign * t.coeff, flipped))
    return compact(SuperposedState(s.n_modes, tuple(out)))


def cat_basis_measure(
    s: SuperposedState,
    mode: int,
    p,
    branch: str = "both",
    rng: np.random.Generator | None = None,
):
    """Measure one mode in the cat basis {|0>+|alpha>, |0>-|alpha>}.

    Displaces the mode by -alpha/2, projects onto even or odd photon-number
    parity (realized per term by |beta> -> (|beta> +- |-beta>)/2), displaces
    back by +alpha/2 and normalizes.  The even outcome detects the plus cat,
    the odd outcome the minus cat.

    Args:
        s: normalized input state.
        mode: mode to measure.
        p: ``LogicalParams`` carrying the code amplitude alpha.
        branch: "both" returns the (even, odd) record pair; "even"/"odd"
            post-selects one branch; "sample" draws one with ``rng``.
        rng: random generator, required for branch="sample".

    Returns:
        A (even, odd) tuple of :class:`MeasurementRecord` for "both", a
        single record otherwise.

    Raises:
        ValueError: on an unnormalized input, an explicitly requested branch
            of probability < 1e-15, or a missing rng for sampling.
    """
    s._check_mode(mode)
    _check_normalized(s)
    half = p.alpha / 2.0
    shifted = apply_displacement(s, mode, -half)
    p_even, p_odd = parity_probabilities(shifted, mode)
    probs = {"even": p_even, "odd": p_odd}

    def _record(label: str) -> MeasurementRecord:
        prob = probs[label]
        if prob < 1e-15:
            return MeasurementRecord(label, prob, None)
        proj = _parity_project(shifted, mode, even=(label == "even"))
        back = apply_displacement(proj, mode, half)
        return MeasurementRecord(label, prob, normalize(back))

    if branch == "both":
        return _record("even"), _record("odd")
    if branch == "sample":
        if rng is None:
            raise ValueError("branch='sample' requires an rng")
        label = "even" if rng.random() < p_even else "odd"
        return _record(label)
    if branch in ("even", "odd"):
        if probs[branch] < 1e-15:
            raise ValueError(
                f"requested branch {branch!r} has probability {probs[branch]:.3e}"
            )
        return _record(branch)
    raise ValueError(f"unknown branch policy {branch!r}")


# ---------------------------------------------------------------------------
# homodyne detection
# ---------------------------------------------------------------------------


def _mode_pairs(s: SuperposedState, mode: int):
    """Per-pair weights w_jk = conj(c_j) c_k * (overlaps of all other modes)."""
    nterms = len(s.terms)
    w = np.empty((nterms, nterms), dtype=complex)
    amps = [t.amps[mode] for t in s.terms]
    for j, tj in enumerate(s.terms):
        for k, tk in enumerate(s.terms):
            ov = tj.coeff.conjugate() * tk.coeff
            for m, (aj, ak) in enumerate(zip(tj.amps, tk.amps)):
                if m != mode:
                    ov *= coherent_overlap(aj, ak)
            w[j, k] = ov
    return w, np.array(amps, dtype=complex)


def _coherent_wavefunction(tau: complex, x: np.ndarray) -> np.ndarray:
    """<x|tau> for x = (a + a+)/sqrt(2); fixes the D(tau)|0> global phase."""
    r, y = tau.real, tau.imag
    return np.pi**-0.25 * np.exp(
        -0.5 * (x - math.sqrt(2.0) * r) ** 2
        + 1j * math.sqrt(2.0) * y * x
        - 1j * r * y
    )


def homodyne_pdf(s: SuperposedState, mode: int, quadrature_angle: float, x):
    """Probability density of a quadrature measurement on one mode.

    The local-oscillator angle rotates the measured quadrature; interference
    cross terms between superposition branches are included exactly.

    Args:
        s: normalized state.
        mode: measured mode.
        quadrature_angle: local-oscillator angle (0 = real quadrature,
            pi/2 = imaginary quadrature).
        x: quadrature value or array of values.

    Returns:
        Density at x (float for scalar input, ndarray otherwise).
    """
    s._check_mode(mode)
    _check_normalized(s)
    rotated = apply_phase(s, mode, -quadrature_angle)
    w, amps = _mode_pairs(rotated, mode)
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    waves = np.stack([_coherent_wavefunction(a, xs) for a in amps])
    dens = np.einsum("jk,jx,kx->x", w, waves.conj(), waves).real
    return float(dens[0]) if np.isscalar(x) or np.ndim(x) == 0 else dens


def _interval_probability(
    s: SuperposedState, mode: int, quadrature_angle: float, a: float, b: float
) -> float:
    """Closed-form integral of homodyne_pdf over [a, b] via the complex erf."""
    rotated = apply_phase(s, mode, -quadrature_angle)
    w, amps = _mode_pairs(rotated, mode)
    total = 0j
    for j, tj in enumerate(amps):
        for k, tk in enumerate(amps):
            rj, yj = tj.real, tj.imag
            rk, yk = tk.real, tk.imag
            bb = math.sqrt(2.0) * (rj + rk) + 1j * math.sqrt(2.0) * (yk - yj)
            cc = -(rj * rj + rk * rk) - 1j * (rk * yk - rj * yj)
            # int_a^b exp(-x^2 + bb x) dx, shifted into the complex plane
            hi = 1.0 if math.isinf(b) else erf(b - bb / 2.0)
            lo = -1.0 if math.isinf(a) else erf(a - bb / 2.0)
            total += w[j, k] * 0.5 * cmath.exp(cc + bb * bb / 4.0) * (hi - lo)
    return total.real


def computational_readout(
    s: SuperposedState,
    mode: int,
    p,
    threshold: float = 1.0,
    window: float = 0.0,
) -> ReadoutResult:
    """Read a mode in the computational basis by homodyning the real quadrature.

    The decision point sits at ``threshold`` times the midpoint alpha/sqrt(2)
    between the |0> and |alpha> Gaussians; an optional central exclusion
    window of total width ``window`` is reported as inconclusive.

    With the fixed quadrature convention the misidentification probability
    of an ideal code state at the default midpoint is the Gaussian tail
    Phi(-alpha) = erfc(alpha/sqrt(2))/2.

    Args:
        s: normalized state.
        mode: mode to read out.
        p: ``LogicalParams`` carrying alpha.
        threshold: decision point as a fraction of the midpoint (default 1).
        window: width of the inconclusive exclusion region (default 0).

    Returns:
        :class:`ReadoutResult` with the three outcome probabilities.
    """
    s._check_mode(mode)
    _check_normalized(s)
    if window < 0:
        raise ValueError("window must be >= 0")
    t = threshold * p.alpha / math.sqrt(2.0)
    lo, hi = t - window / 2.0, t + window / 2.0
    p_zero = _interval_probability(s, mode, 0.0, -math.inf, lo)
    p_one = _interval_probability(s, mode, 0.0, hi, math.inf)
    p_inc = 0.0 if window == 0 else _interval_probability(s, mode, 0.0, lo, hi)
    return ReadoutResult(p_zero, p_one, p_inc)
