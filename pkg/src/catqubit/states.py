"""Exact multimode state engine for finite superpositions of coherent states.

A state is stored as a list of weighted coherent-product terms,

    |psi> = sum_j c_j |a_j1>|a_j2>...|a_jn>,

which is closed under the three physical operations used by coherent-state
logic (displacement, phase shift, beamsplitter).  All inner products are
analytic, so amplitudes of 20 or more cost the same as amplitudes of 2;
there is no Fock cutoff anywhere in this module.

States are immutable values: every operation returns a new state and never
mutates its input.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass
from typing import Iterable

__all__ = [
    "CoherentTerm",
    "SuperposedState",
    "BeamsplitterParams",
    "ZeroNormError",
    "coherent_overlap",
    "inner_product",
    "norm",
    "normalize",
    "apply_displacement",
    "apply_phase",
    "apply_beamsplitter",
    "compact",
    "single_mode",
    "coherent_state",
    "vacuum",
    "tensor",
    "swap_modes",
    "project_mode",
    "state_to_json",
    "state_from_json",
]


class ZeroNormError(ValueError):
    """Raised when a state's coefficients cancel and it cannot be normalized."""


def _require_finite(z: complex, what: str) -> None:
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"{what} is not finite: {z!r}")


@dataclass(frozen=True)
class CoherentTerm:
    """One branch of a superposition: a weight and one coherent amplitude per mode.

    Args:
        coeff (complex): superposition weight of this branch.
        amps (tuple[complex, ...]): coherent amplitude for each mode.
    """

    coeff: complex
    amps: tuple[complex, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeff", complex(self.coeff))
        object.__setattr__(self, "amps", tuple(complex(a) for a in self.amps))
        _require_finite(self.coeff, "term coefficient")
        for a in self.amps:
            _require_finite(a, "coherent amplitude")


@dataclass(frozen=True)
class SuperposedState:
    """Finite superposition of multimode coherent states.

    Args:
        n_modes (int): number of optical modes, fixed for the state's lifetime.
        terms (tuple[CoherentTerm, ...]): non-empty list of branches; every
            branch must carry exactly ``n_modes`` amplitudes.
    """

    n_modes: int
    terms: tuple[CoherentTerm, ...]

    def __post_init__(self):
        if self.n_modes < 1:
            raise ValueError("state needs at least one mode")
        object.__setattr__(self, "terms", tuple(self.terms))
        if not self.terms:
            raise ValueError("state needs at least one term")
        for t in self.terms:
            if len(t.amps) != self.n_modes:
                raise ValueError(
                    f"term has {len(t.amps)} amplitudes, state has {self.n_modes} modes"
                )

    def _check_mode(self, mode: int) -> None:
        if not 0 <= mode < self.n_modes:
            raise ValueError(f"mode {mode} out of range for {self.n_modes}-mode state")


def coherent_overlap(tau: complex, alpha: complex) -> complex:
    """Overlap <tau|alpha> of two coherent states.

    Evaluates exp[-(|tau|^2 + |alpha|^2)/2 + conj(tau)*alpha]; the magnitude
    is always <= 1 with equality iff tau == alpha.
    """
    tau = complex(tau)
    alpha = complex(alpha)
    ex = -0.5 * (abs(tau) ** 2 + abs(alpha) ** 2) + tau.conjugate() * alpha
    return cmath.exp(ex)


def inner_product(a: SuperposedState, b: SuperposedState) -> complex:
    """Inner product <a|b>, bilinear over terms and product over modes.

    Raises:
        ValueError: if the mode counts differ.
    """
    if a.n_modes != b.n_modes:
        raise ValueError(f"mode-count mismatch: {a.n_modes} vs {b.n_modes}")
    total = 0j
    for ta in a.terms:
        for tb in b.terms:
            ov = ta.coeff.conjugate() * tb.coeff
            for am, bm in zip(ta.amps, tb.amps):
                ov *= coherent_overlap(am, bm)
                if ov == 0:
                    break
            total += ov
    return total


def norm(s: SuperposedState) -> float:
    """Norm sqrt(<s|s>); the imaginary part is discarded (it is zero analytically)."""
    n2 = inner_product(s, s).real
    return math.sqrt(max(n2, 0.0))


def normalize(s: SuperposedState) -> SuperposedState:
    """Rescale coefficients so the state has unit norm.

    Raises:
        ZeroNormError: if the coefficients cancel (norm below 1e-12).
    """
    n = norm(s)
    if n < 1e-12:
        raise ZeroNormError(f"state norm {n:.3e} is numerically zero")
    return SuperposedState(
        s.n_modes,
        tuple(CoherentTerm(t.coeff / n, t.amps) for t in s.terms),
    )


def apply_displacement(s: SuperposedState, mode: int, beta: complex) -> SuperposedState:
    """Displace one mode: D(beta)|a> = exp[(beta*conj(a) - conj(beta)*a)/2] |a+beta>.

    The phase factor follows the standard Baker-Campbell-Hausdorff convention
    D(beta)D(alpha) = exp[(beta conj(alpha) - conj(beta) alpha)/2] D(alpha+beta),
    which makes displacements compose exactly and keeps the operation unitary.
    """
    s._check_mode(mode)
    beta = complex(beta)
    out = []
    for t in s.terms:
        a = t.amps[mode]
        phase = cmath.exp(0.5 * (beta * a.conjugate() - beta.conjugate() * a))
        amps = t.amps[:mode] + (a + beta,) + t.amps[mode + 1 :]
        out.append(CoherentTerm(t.coeff * phase, amps))
    return SuperposedState(s.n_modes, tuple(out))


def apply_phase(s: SuperposedState, mode: int, epsilon: float) -> SuperposedState:
    """Phase-shift one mode: exp(i eps n) rotates the coherent amplitude by e^{i eps}.

    Coefficients are unchanged; the map is exactly unitary.
    """
    s._check_mode(mode)
    rot = cmath.exp(1j * epsilon)
    out = []
    for t in s.terms:
        amps = t.amps[:mode] + (rot * t.amps[mode],) + t.amps[mode + 1 :]
        out.append(CoherentTerm(t.coeff, amps))
    return SuperposedState(s.n_modes, tuple(out))


@dataclass(frozen=True)
class BeamsplitterParams:
    """Beamsplitter mixing angle and the two modes it couples.

    cos(theta)^2 is the reflectivity; theta -> 0 is the identity.
    """

    theta: float
    mode_a: int
    mode_b: int

    def __post_init__(self):
        if self.mode_a == self.mode_b:
            raise ValueError("beamsplitter needs two distinct modes")


def apply_beamsplitter(s: SuperposedState, p: BeamsplitterParams) -> SuperposedState:
    """Two-mode beamsplitter exp[i theta (a b+ + a+ b)] acting term by term.

    Per term, the pair of amplitudes (g, b) on the designated modes maps to
    (cos(theta) g + i sin(theta) b, cos(theta) b + i sin(theta) g); the
    coefficients are unchanged, so the map is exactly unitary and never grows
    the term count.
    """
    s._check_mode(p.mode_a)
    s._check_mode(p.mode_b)
    c = math.cos(p.theta)
    si = 1j * math.sin(p.theta)
    out = []
    for t in s.terms:
        g = t.amps[p.mode_a]
        b = t.amps[p.mode_b]
        amps = list(t.amps)
        amps[p.mode_a] = c * g + si * b
        amps[p.mode_b] = c * b + si * g
        out.append(CoherentTerm(t.coeff, tuple(amps)))
    return SuperposedState(s.n_modes, tuple(out))


def compact(s: SuperposedState, tol: float = 1e-14) -> SuperposedState:
    """Merge branches whose amplitudes agree within tol and drop negligible ones.

    Coefficients of merged branches are summed; a branch is dropped when its
    coefficient magnitude is <= tol times the largest coefficient magnitude.
    At least one term is always kept so the result is a valid state.
    """
    if tol < 0:
        raise ValueError("tol must be >= 0")
    merged: list[list] = []  # [coeff, amps]
    for t in s.terms:
        for m in merged:
            if all(abs(a - b) <= tol for a, b in zip(t.amps, m[1])):
                m[0] += t.coeff
                break
        else:
            merged.append([t.coeff, t.amps])
    cmax = max(abs(c) for c, _ in merged)
    kept = [(c, a) for c, a in merged if abs(c) > tol * cmax]
    if not kept:
        kept = [merged[0]]
    return SuperposedState(s.n_modes, tuple(CoherentTerm(c, a) for c, a in kept))


# ---------------------------------------------------------------------------
# constructors and mode plumbing
# ---------------------------------------------------------------------------


def single_mode(pairs: Iterable[tuple[complex, complex]]) -> SuperposedState:
    """Build a one-mode state from (coefficient, amplitude) pairs."""
    return SuperposedState(
        1, tuple(CoherentTerm(c, (a,)) for c, a in pairs)
    )


def coherent_state(alpha: complex) -> SuperposedState:
    """Single-mode coherent state |alpha> with unit coefficient."""
    return single_mode([(1.0, alpha)])


def vacuum(n_modes: int = 1) -> SuperposedState:
    """Vacuum state on n_modes modes."""
    return SuperposedState(n_modes, (CoherentTerm(1.0, (0j,) * n_modes),))


def tensor(a: SuperposedState, b: SuperposedState) -> SuperposedState:
    """Tensor product; b's modes are appended after a's."""
    terms = tuple(
        CoherentTerm(ta.coeff * tb.coeff, ta.amps + tb.amps)
        for ta in a.terms
        for tb in b.terms
    )
    return SuperposedState(a.n_modes + b.n_modes, terms)


def swap_modes(s: SuperposedState, i: int, j: int) -> SuperposedState:
    """Exchange the labels of two modes (rerouting two ports; not a dynamical op)."""
    s._check_mode(i)
    s._check_mode(j)
    if i == j:
        return s
    out = []
    for t in s.terms:
        amps = list(t.amps)
        amps[i], amps[j] = amps[j], amps[i]
        out.append(CoherentTerm(t.coeff, tuple(amps)))
    return SuperposedState(s.n_modes, tuple(out))


def project_mode(
    s: SuperposedState, mode: int, probe: SuperposedState
) -> SuperposedState:
    """Contract one mode against a single-mode probe state: <probe|_mode |s>.

    The probed mode is removed from the result, which is left unnormalized
    (its norm is the amplitude of finding ``probe`` in that mode).  If ``s``
    factorizes as rest x probe this recovers the rest factor exactly.

    Raises:
        ValueError: if probe is not single-mode or s has only one mode.
    """
    s._check_mode(mode)
    if probe.n_modes != 1:
        raise ValueError("probe must be a single-mode state")
    if s.n_modes == 1:
        raise ValueError("cannot remove the only mode of a state")
    out = []
    for t in s.terms:
        scal = sum(
            tp.coeff.conjugate() * coherent_overlap(tp.amps[0], t.amps[mode])
            for tp in probe.terms
        )
        amps = t.amps[:mode] + t.amps[mode + 1 :]
        out.append(CoherentTerm(t.coeff * scal, amps))
    return SuperposedState(s.n_modes - 1, tuple(out))


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def _state_to_dict(s: SuperposedState) -> dict:
    return {
        "n_modes": s.n_modes,
        "terms": [
            {
                "coeff": [t.coeff.real, t.coeff.imag],
                "amps": [[a.real, a.imag] for a in t.amps],
            }
            for t in s.terms
        ],
    }


def _state_from_dict(d: dict) -> SuperposedState:
    terms = tuple(
        CoherentTerm(
            complex(t["coeff"][0], t["coeff"][1]),
            tuple(complex(a[0], a[1]) for a in t["amps"]),
        )
        for t in d["terms"]
    )
    return SuperposedState(int(d["n_modes"]), terms)


def state_to_json(s: SuperposedState) -> str:
    """Serialize to JSON; float repr round-trips bit-faithfully for finite doubles."""
    return json.dumps(_state_to_dict(s))


def state_from_json(text: str) -> SuperposedState:
    """Inverse of :func:`state_to_json`."""
    return _state_from_dict(json.loads(text))
