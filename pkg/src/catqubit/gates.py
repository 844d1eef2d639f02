"""Logical gates for the coherent-state encoding |0>_L = |0>, |1>_L = |alpha>.

Single-qubit gates (bit flip, phase rotation) are simple linear-optics
operations.  The entangling controlled-sign gate is one beamsplitter of
mixing angle theta = pi/(2 alpha^2); for large alpha its only effect on the
code space is a pi phase on |alpha>|alpha>.  The Hadamard is not unitary in
linear optics and is instead teleported: the qubit interacts with a fresh
resource cat (|0>+|alpha>)/N through a controlled-sign gate, the original
qubit mode is read out in the cat basis, and the transformed qubit emerges
on the mode that carried the resource (with a conditional bit flip on the
odd outcome).  CNOT is Hadamard - controlled-sign - Hadamard on the target.

Every composite gate runs against either the exact beamsplitter evolution
("exact") or the idealized logical controlled-sign ("ideal"), so the cost
of the beamsplitter approximation can be isolated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .measurement import MeasurementRecord, cat_basis_measure
from .states import (
    BeamsplitterParams,
    CoherentTerm,
    SuperposedState,
    apply_beamsplitter,
    apply_displacement,
    apply_phase,
    compact,
    inner_product,
    normalize,
    project_mode,
    single_mode,
    swap_modes,
    tensor,
)

__all__ = [
    "LogicalParams",
    "GateOutcome",
    "CodeSpaceError",
    "encode_qubit",
    "bit_flip",
    "phase_rotation_exact",
    "phase_rotation_ideal",
    "controlled_sign",
    "controlled_sign_ideal",
    "ideal_hadamard_output",
    "hadamard_via_cat",
    "hadamard_branches",
    "cnot",
    "cnot_branches",
]

CZ_BACKENDS = ("exact", "ideal")


class CodeSpaceError(ValueError):
    """Raised when an idealized logical gate meets a state outside the code space."""


@dataclass(frozen=True)
class LogicalParams:
    """Coherent amplitude of the logical one state (taken real and positive)."""

    alpha: float

    def __post_init__(self):
        if not (self.alpha > 0 and math.isfinite(self.alpha)):
            raise ValueError(f"alpha must be positive and finite, got {self.alpha!r}")

    @property
    def cz_theta(self) -> float:
        """Beamsplitter angle pi/(2 alpha^2) realizing the controlled sign."""
        return math.pi / (2.0 * self.alpha**2)


@dataclass(frozen=True)
class GateOutcome:
    """Result of a measurement-assisted gate.

    Two probability notions coexist.  ``probability`` multiplies the parity
    probabilities of the measurement records; the two parity outcomes are
    exhaustive, so these weights always sum to 1 over branches.
    ``detection_probability`` is the joint probability under the stricter
    detection model in which each readout projects the measured mode onto
    the identified cat state; it equals ``probability`` whenever the
    measured mode factorizes exactly (always true for the ideal controlled
    sign) and is smaller when the physical beamsplitter has entangled the
    measured mode with the rest.  The shortfall is weight the gate pushed
    outside the protocol's nominal subspace.

    Attributes:
        state: normalized output state on the surviving modes.
        flips_applied: number of conditional bit flips that fired.
        measurement_records: parity measurement records in order.
        detection_probability: joint cat-detection probability of this branch.
    """

    state: SuperposedState
    flips_applied: int
    measurement_records: tuple[MeasurementRecord, ...]
    detection_probability: float

    @property
    def probability(self) -> float:
        """Joint parity-outcome probability of this branch."""
        out = 1.0
        for r in self.measurement_records:
            out *= r.probability
        return out


def encode_qubit(bit: int, p: LogicalParams) -> SuperposedState:
    """Computational-basis state: |0> for bit 0, |alpha> for bit 1."""
    if bit not in (0, 1):
        raise ValueError(f"bit must be 0 or 1, got {bit!r}")
    return single_mode([(1.0, 0j if bit == 0 else complex(p.alpha))])


def bit_flip(s: SuperposedState, mode: int, p: LogicalParams) -> SuperposedState:
    """Bit flip X = U(pi) D(-alpha): displace by -alpha, then a pi phase shift.

    Maps |0> <-> |alpha> exactly (phase-free for real amplitudes) and is an
    exact involution on arbitrary states.
    """
    return apply_phase(apply_displacement(s, mode, -p.alpha), mode, math.pi)


def phase_rotation_exact(
    s: SuperposedState, mode: int, phi: float, p: LogicalParams
) -> SuperposedState:
    """Physical phase rotation: a phase shift of epsilon = phi/alpha^2.

    Exact evolution; acts as the logical diagonal rotation R_phi only up to
    corrections that vanish for large alpha.
    """
    return apply_phase(s, mode, phi / p.alpha**2)


def _code_bit(amp: complex, alpha: float, tol: float = 1e-9) -> int:
    if abs(amp) <= tol:
        return 0
    if abs(amp - alpha) <= tol:
        return 1
    raise CodeSpaceError(
        f"amplitude {amp:.6g} is neither 0 nor alpha={alpha:.6g} within {tol:g}"
    )


def phase_rotation_ideal(
    s: SuperposedState, mode: int, phi: float, p: LogicalParams
) -> SuperposedState:
    """Logical R_phi: multiply every |alpha>-branch coefficient by e^{i phi}.

    Raises:
        CodeSpaceError: if any branch amplitude on the mode is outside {0, alpha}.
    """
    s._check_mode(mode)
    rot = complex(math.cos(phi), math.sin(phi))
    out = []
    for t in s.terms:
        c = t.coeff * rot if _code_bit(t.amps[mode], p.alpha) else t.coeff
        out.append(CoherentTerm(c, t.amps))
    return SuperposedState(s.n_modes, tuple(out))


def controlled_sign(
    s: SuperposedState, mode_a: int, mode_b: int, p: LogicalParams
) -> SuperposedState:
    """Physical controlled-sign gate: one beamsplitter at theta = pi/(2 alpha^2)."""
    return apply_beamsplitter(s, BeamsplitterParams(p.cz_theta, mode_a, mode_b))


def controlled_sign_ideal(
    s: SuperposedState, mode_a: int, mode_b: int, p: LogicalParams
) -> SuperposedState:
    """Logical controlled-sign: flip the coefficient sign of |alpha>|alpha> branches.

    Raises:
        CodeSpaceError: if a branch amplitude on either mode is outside {0, alpha}.
    """
    s._check_mode(mode_a)
    s._check_mode(mode_b)
    if mode_a == mode_b:
        raise ValueError("controlled sign needs two distinct modes")
    out = []
    for t in s.terms:
        both = _code_bit(t.amps[mode_a], p.alpha) and _code_bit(t.amps[mode_b], p.alpha)
        out.append(CoherentTerm(-t.coeff if both else t.coeff, t.amps))
    return SuperposedState(s.n_modes, tuple(out))


def _apply_cz(
    s: SuperposedState, mode_a: int, mode_b: int, p: LogicalParams, backend: str
) -> SuperposedState:
    if backend == "exact":
        return controlled_sign(s, mode_a, mode_b, p)
    if backend == "ideal":
        return controlled_sign_ideal(s, mode_a, mode_b, p)
    raise ValueError(f"unknown CZ backend {backend!r}; choose from {CZ_BACKENDS}")


def ideal_hadamard_output(bit: int, p: LogicalParams) -> SuperposedState:
    """Exactly normalized cat (|0> +- |alpha>)/sqrt(2(1 +- e^{-alpha^2/2}))."""
    if bit not in (0, 1):
        raise ValueError(f"bit must be 0 or 1, got {bit!r}")
    sign = 1.0 if bit == 0 else -1.0
    n = math.sqrt(2.0 * (1.0 + sign * math.exp(-0.5 * p.alpha**2)))
    return single_mode([(1.0 / n, 0j), (sign / n, complex(p.alpha))])


# ---------------------------------------------------------------------------
# measurement-based Hadamard
# ---------------------------------------------------------------------------


def _hadamard_premeasure(
    s: SuperposedState, mode: int, p: LogicalParams, cz: str
) -> SuperposedState:
    """Entangle the qubit with a fresh resource cat; returns the state just
    before the cat-basis readout.

    The resource cat enters on an appended ancilla mode and the controlled
    sign couples it to the data mode.  The gate teleports the transformed
    qubit onto the resource mode, so the two ports are relabeled afterwards:
    the data index keeps the logical output and the appended index carries
    the mode to be measured.
    """
    s._check_mode(mode)
    anc = s.n_modes
    joined = tensor(s, ideal_hadamard_output(0, p))
    coupled = _apply_cz(joined, mode, anc, p, cz)
    # normalize: the ideal CZ is not unitary on the non-orthogonal code space
    return normalize(swap_modes(coupled, mode, anc))


def _hadamard_finish(
    record: MeasurementRecord, mode: int, p: LogicalParams
) -> GateOutcome:
    """Discard the measured mode and apply the conditional correction.

    After the cat-basis measurement the measured mode sits in the detected
    cat state (exactly so for the ideal CZ), so it is removed by projecting
    onto that cat; the squared norm of that contraction times the parity
    probability is the branch's cat-detection probability.  The odd outcome
    heralds the opposite cat and is fixed by a bit flip on the output mode.

    Raises:
        ValueError: if the detected cat carries no weight in this branch.
    """
    anc = record.post_state.n_modes - 1
    detected = ideal_hadamard_output(0 if record.label == "even" else 1, p)
    reduced = project_mode(record.post_state, anc, detected)
    n2 = inner_product(reduced, reduced).real
    if n2 < 1e-30:
        raise ValueError(
            f"branch {record.label!r} has no weight on the detected cat state"
        )
    reduced = normalize(reduced)
    flips = 0
    if record.label == "odd":
        reduced = bit_flip(reduced, mode, p)
        flips = 1
    return GateOutcome(
        compact(normalize(reduced)), flips, (record,), record.probability * n2
    )


def hadamard_via_cat(
    s: SuperposedState,
    mode: int,
    p: LogicalParams,
    branch: str = "sample",
    rng: np.random.Generator | None = None,
    cz: str = "exact",
) -> GateOutcome:
    """Measurement-based Hadamard gate on one mode.

    Args:
        s: normalized input state.
        mode: data mode to transform; its index is stable across the call.
        p: logical encoding parameters.
        branch: "even"/"odd" post-selects a cat outcome, "sample" draws one.
        rng: generator for branch="sample".
        cz: "exact" beamsplitter or "ideal" logical controlled sign.

    Returns:
        :class:`GateOutcome` with the normalized output and the measurement
        record.

    Raises:
        ValueError: if a requested branch has probability < 1e-15.
    """
    pre = _hadamard_premeasure(s, mode, p, cz)
    record = cat_basis_measure(pre, pre.n_modes - 1, p, branch=branch, rng=rng)
    return _hadamard_finish(record, mode, p)


def hadamard_branches(
    s: SuperposedState, mode: int, p: LogicalParams, cz: str = "exact"
) -> list[GateOutcome]:
    """Both Hadamard branches with their probabilities (deterministic).

    Branches of probability below 1e-15 are omitted; the returned
    probabilities always sum to 1 within that resolution.
    """
    pre = _hadamard_premeasure(s, mode, p, cz)
    even, odd = cat_basis_measure(pre, pre.n_modes - 1, p, branch="both")
    outs = []
    for rec in (even, odd):
        if rec.post_state is None:
            continue
        try:
            outs.append(_hadamard_finish(rec, mode, p))
        except ValueError:
            continue  # parity possible but the detected cat carries no weight
    return outs


# ---------------------------------------------------------------------------
# CNOT
# ---------------------------------------------------------------------------


def _check_pair(s: SuperposedState, control: int, target: int) -> None:
    s._check_mode(control)
    s._check_mode(target)
    if control == target:
        raise ValueError("control and target must be distinct modes")


def cnot(
    s: SuperposedState,
    control_mode: int,
    target_mode: int,
    p: LogicalParams,
    branch: str = "sample",
    rng: np.random.Generator | None = None,
    central_cz: str = "exact",
    hadamard_cz: str = "exact",
) -> GateOutcome:
    """CNOT as Hadamard - controlled-sign - Hadamard on the target mode.

    Two cat-basis measurements occur (one per Hadamard); ``branch`` fixes or
    samples both.  Flip counts and measurement records accumulate.
    """
    _check_pair(s, control_mode, target_mode)
    first = hadamard_via_cat(s, target_mode, p, branch=branch, rng=rng, cz=hadamard_cz)
    mid = normalize(_apply_cz(first.state, control_mode, target_mode, p, central_cz))
    second = hadamard_via_cat(mid, target_mode, p, branch=branch, rng=rng, cz=hadamard_cz)
    return GateOutcome(
        second.state,
        first.flips_applied + second.flips_applied,
        first.measurement_records + second.measurement_records,
        first.detection_probability * second.detection_probability,
    )


def cnot_branches(
    s: SuperposedState,
    control_mode: int,
    target_mode: int,
    p: LogicalParams,
    central_cz: str = "exact",
    hadamard_cz: str = "exact",
) -> list[GateOutcome]:
    """All measurement-branch combinations of the CNOT with joint probabilities.

    Enumerates the two branches of each internal Hadamard (up to four
    outcomes); the joint probabilities sum to 1, which makes deterministic
    branch averaging possible downstream.
    """
    _check_pair(s, control_mode, target_mode)
    results = []
    for first in hadamard_branches(s, target_mode, p, cz=hadamard_cz):
        mid = normalize(
            _apply_cz(first.state, control_mode, target_mode, p, central_cz)
        )
        for second in hadamard_branches(mid, target_mode, p, cz=hadamard_cz):
            results.append(
                GateOutcome(
                    second.state,
                    first.flips_applied + second.flips_applied,
                    first.measurement_records + second.measurement_records,
                    first.detection_probability * second.detection_probability,
                )
            )
    return results
