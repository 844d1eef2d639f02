"""Brute-force verification engine on a truncated photon-number basis.

Everything here is the slow, obviously-correct path: states are dense
complex vectors over |0..cutoff> per mode and operators are dense matrices
built from truncated ladder operators.  It exists to cross-check the
analytic coherent-superposition engine at small amplitudes (|alpha| <= 4);
the analytic engine remains the production path for large amplitudes.

Conventions match :mod:`catqubit.states`: levels run 0..cutoff inclusive,
two-mode vectors are flattened row-major (mode 0 is the slow index).
"""

from __future__ import annotations

import math

import numpy as np

from .states import SuperposedState

__all__ = [
    "MAX_ORACLE_AMPLITUDE",
    "required_cutoff",
    "coherent_to_fock",
    "state_to_fock",
    "displacement_matrix",
    "phase_matrix",
    "parity_diagonal",
    "bs_matrix",
    "apply_bs",
    "quadrature_wavefunction",
    "oracle_check",
]

# Fock dimension grows quadratically with amplitude for fixed truncation
# weight, so the oracle is only tractable for small states.
MAX_ORACLE_AMPLITUDE = 4.0


def required_cutoff(max_amp: float) -> int:
    """Smallest cutoff with truncation weight below ~1e-10 for |alpha| <= max_amp."""
    return math.ceil(max_amp**2 + 10.0 * max_amp + 10.0)


def _check_cutoff(alpha: complex, cutoff: int) -> None:
    need = required_cutoff(abs(alpha))
    if cutoff < need:
        raise ValueError(
            f"cutoff {cutoff} too small for |alpha|={abs(alpha):.3f}; need >= {need}"
        )


def coherent_to_fock(alpha: complex, cutoff: int) -> np.ndarray:
    """Photon-number amplitudes c_n = e^{-|a|^2/2} a^n / sqrt(n!) up to cutoff.

    Uses the stable recurrence c_n = c_{n-1} * alpha / sqrt(n).

    Raises:
        ValueError: if the cutoff cannot hold the requested accuracy.
    """
    _check_cutoff(alpha, cutoff)
    vec = np.zeros(cutoff + 1, dtype=complex)
    c = math.exp(-0.5 * abs(alpha) ** 2)
    vec[0] = c
    a = complex(alpha)
    for n in range(1, cutoff + 1):
        c = c * a / math.sqrt(n)
        vec[n] = c
    return vec


def state_to_fock(s: SuperposedState, cutoff: int) -> np.ndarray:
    """Dense Fock vector of a superposed state; length (cutoff+1)**n_modes."""
    dim = cutoff + 1
    total = np.zeros(dim**s.n_modes, dtype=complex)
    for t in s.terms:
        vec = np.array([t.coeff], dtype=complex)
        for a in t.amps:
            vec = np.kron(vec, coherent_to_fock(a, cutoff))
        total += vec
    return total


def _ladder(cutoff: int) -> np.ndarray:
    """Annihilation operator on the truncated space."""
    return np.diag(np.sqrt(np.arange(1, cutoff + 1)), k=1).astype(complex)


def displacement_matrix(beta: complex, cutoff: int) -> np.ndarray:
    """Single-mode D(beta) = exp(beta a+ - conj(beta) a) as a dense matrix."""
    a = _ladder(cutoff)
    gen = beta * a.conj().T - np.conj(beta) * a
    # gen is anti-Hermitian: exponentiate through the Hermitian i*gen
    w, v = np.linalg.eigh(1j * gen)
    return (v * np.exp(-1j * w)) @ v.conj().T


def phase_matrix(epsilon: float, cutoff: int) -> np.ndarray:
    """Single-mode exp(i eps n), diagonal in photon number."""
    return np.diag(np.exp(1j * epsilon * np.arange(cutoff + 1)))


def parity_diagonal(cutoff: int) -> np.ndarray:
    """Diagonal of the photon-number parity operator (-1)^n."""
    return (-1.0) ** np.arange(cutoff + 1)


def _bs_blocks(theta: float, cutoff: int):
    """Yield (indices, block unitary) per total-photon-number block of the BS.

    exp[i theta (a b+ + a+ b)] conserves total photon number, so the matrix
    is block diagonal; each block is a small Hermitian exponential.  Blocks
    with total number <= cutoff are complete and therefore exact.
    """
    dim = cutoff + 1
    for total in range(2 * cutoff + 1):
        ns = np.arange(max(0, total - cutoff), min(cutoff, total) + 1)
        idx = ns * dim + (total - ns)
        k = len(ns)
        if k == 1:
            yield idx, np.ones((1, 1), dtype=complex)
            continue
        # <n-1, m+1| a b+ |n, m> = sqrt(n (m+1)) on the off-diagonal
        off = np.sqrt(ns[1:] * (total - ns[1:] + 1.0))
        h = np.zeros((k, k))
        h[np.arange(k - 1), np.arange(1, k)] = off
        h[np.arange(1, k), np.arange(k - 1)] = off
        w, v = np.linalg.eigh(h)
        yield idx, (v * np.exp(1j * theta * w)) @ v.T


def bs_matrix(theta: float, cutoff: int) -> np.ndarray:
    """Dense two-mode beamsplitter unitary exp[i theta (a b+ + a+ b)].

    Memory grows as (cutoff+1)^4; use :func:`apply_bs` for large cutoffs.
    """
    dim = cutoff + 1
    u = np.zeros((dim * dim, dim * dim), dtype=complex)
    for idx, block in _bs_blocks(theta, cutoff):
        u[np.ix_(idx, idx)] = block
    return u


def apply_bs(vec: np.ndarray, theta: float, cutoff: int) -> np.ndarray:
    """Apply the beamsplitter to a flattened two-mode vector, block by block."""
    out = np.zeros_like(vec)
    for idx, block in _bs_blocks(theta, cutoff):
        out[idx] = block @ vec[idx]
    return out


def _apply_single_mode(vec: np.ndarray, op: np.ndarray, mode: int, n_modes: int) -> np.ndarray:
    """Apply a single-mode matrix to one axis of a flattened n-mode vector."""
    dim = op.shape[0]
    tens = vec.reshape((dim,) * n_modes)
    tens = np.tensordot(op, tens, axes=([1], [mode]))
    tens = np.moveaxis(tens, 0, mode)
    return tens.reshape(-1)


def quadrature_wavefunction(vec: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Position wavefunction sum_n c_n phi_n(x) of a single-mode Fock vector.

    phi_n are harmonic-oscillator eigenfunctions in the convention
    x = (a + a+)/sqrt(2), built with the stable two-term recurrence.
    """
    x = np.asarray(x, dtype=float)
    phi_prev = np.zeros_like(x)
    phi = np.pi**-0.25 * np.exp(-0.5 * x * x)
    psi = vec[0] * phi.astype(complex)
    for n in range(1, len(vec)):
        phi, phi_prev = (
            math.sqrt(2.0 / n) * x * phi - math.sqrt((n - 1.0) / n) * phi_prev,
            phi,
        )
        psi += vec[n] * phi
    return psi


def _max_amp(s: SuperposedState) -> float:
    return max(abs(a) for t in s.terms for a in t.amps)


def oracle_check(s: SuperposedState, op: dict, cutoff: int | None = None) -> float:
    """Run one operation both analytically and in Fock space; return the deviation.

    ``op`` is a descriptor dict with an ``kind`` key:

    - {"kind": "displacement", "mode": m, "beta": b}
    - {"kind": "phase", "mode": m, "epsilon": e}
    - {"kind": "beamsplitter", "theta": t, "mode_a": i, "mode_b": j}
    - {"kind": "parity", "mode": m} -- compares the even-parity probability
    - {"kind": "cat_measure", "mode": m, "alpha": a} -- compares both branch
      probabilities of the displaced-parity cat measurement
    - {"kind": "overlap", "other": SuperposedState} -- compares <other|s>

    The deviation is the max absolute difference between the two paths
    (elementwise over Fock vectors, or over the compared scalars).

    Raises:
        ValueError: if any amplitude exceeds the oracle tractability bound.
    """
    from . import measurement as meas
    from . import states as st

    amp = _max_amp(s)
    extra = 0.0
    if op["kind"] == "displacement":
        extra = abs(op["beta"])
    elif op["kind"] == "cat_measure":
        extra = abs(op["alpha"])
    elif op["kind"] == "overlap":
        amp = max(amp, _max_amp(op["other"]))
    elif op["kind"] == "beamsplitter":
        # output amplitudes can reach sqrt(g^2 + b^2) per term
        extra = (math.sqrt(2.0) - 1.0) * amp
    if amp > MAX_ORACLE_AMPLITUDE + 1e-12:
        raise ValueError(
            f"amplitude {amp:.3f} exceeds oracle bound {MAX_ORACLE_AMPLITUDE}"
        )
    if cutoff is None:
        cutoff = required_cutoff(amp + extra)

    kind = op["kind"]
    vec = state_to_fock(s, cutoff)

    if kind == "displacement":
        mode, beta = op["mode"], op["beta"]
        analytic = st.apply_displacement(s, mode, beta)
        dmat = displacement_matrix(beta, cutoff)
        ref = _apply_single_mode(vec, dmat, mode, s.n_modes)
        return float(np.max(np.abs(state_to_fock(analytic, cutoff) - ref)))

    if kind == "phase":
        mode, eps = op["mode"], op["epsilon"]
        analytic = st.apply_phase(s, mode, eps)
        ref = _apply_single_mode(vec, phase_matrix(eps, cutoff), mode, s.n_modes)
        return float(np.max(np.abs(state_to_fock(analytic, cutoff) - ref)))

    if kind == "beamsplitter":
        if s.n_modes != 2:
            raise ValueError("beamsplitter oracle check needs a two-mode state")
        p = st.BeamsplitterParams(op["theta"], op["mode_a"], op["mode_b"])
        if (p.mode_a, p.mode_b) == (0, 1):
            ref = apply_bs(vec, op["theta"], cutoff)
        else:
            swapped = vec.reshape(cutoff + 1, cutoff + 1).T.reshape(-1)
            ref = apply_bs(swapped, op["theta"], cutoff)
            ref = ref.reshape(cutoff + 1, cutoff + 1).T.reshape(-1)
        analytic = st.apply_beamsplitter(s, p)
        return float(np.max(np.abs(state_to_fock(analytic, cutoff) - ref)))

    if kind == "parity":
        mode = op["mode"]
        p_even, _ = meas.parity_probabilities(st.normalize(s), mode)
        dens = np.abs(
            state_to_fock(st.normalize(s), cutoff).reshape((cutoff + 1,) * s.n_modes)
        ) ** 2
        # reduce all other modes, then weight by parity on the measured one
        marg = dens
        for ax in reversed(range(s.n_modes)):
            if ax != mode:
                marg = marg.sum(axis=ax)
        ref = float(marg[::2].sum())
        return abs(p_even - ref)

    if kind == "cat_measure":
        # displaced-parity branch probabilities, both paths
        from .gates import LogicalParams

        mode, alpha = op["mode"], op["alpha"]
        sn = st.normalize(s)
        even, odd = meas.cat_basis_measure(sn, mode, LogicalParams(alpha), branch="both")
        dmat = displacement_matrix(-alpha / 2.0, cutoff)
        shifted = _apply_single_mode(state_to_fock(sn, cutoff), dmat, mode, s.n_modes)
        dens = np.abs(shifted.reshape((cutoff + 1,) * s.n_modes)) ** 2
        marg = dens
        for ax in reversed(range(s.n_modes)):
            if ax != mode:
                marg = marg.sum(axis=ax)
        ref_even = float(marg[::2].sum())
        return max(abs(even.probability - ref_even), abs(odd.probability - (1.0 - ref_even)))

    if kind == "overlap":
        other = op["other"]
        analytic = st.inner_product(other, s)
        ref = complex(np.vdot(state_to_fock(other, cutoff), vec))
        return abs(analytic - ref)

    raise ValueError(f"unknown oracle operation {kind!r}")
