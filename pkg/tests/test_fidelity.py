"""Tests for fidelity measures and the CNOT benchmark sweep."""

import math

import numpy as np
import pytest

from catqubit.fidelity import (
    SweepConfig,
    bs_phase_approximation_error,
    cnot_fidelity_point,
    fidelity,
    ideal_cnot_output,
    points_to_csv,
    points_to_dict,
    sweep,
)
from catqubit.gates import LogicalParams, encode_qubit, ideal_hadamard_output
from catqubit.states import normalize, single_mode, tensor

# Golden regression values for the default benchmark backend (exact
# beamsplitter, ideal flips and cats, branch enumeration), pinned on first
# run and held to 1e-9 thereafter.
GOLDEN = {
    3.0: (0.45474563885419717, 0.9771680376502749),
    6.0: (0.7972825211189016, 0.9986078570850988),
    10.0: (0.918930608856307, 0.9998134284606871),
    20.0: (0.9787549044848575, 0.9999881676347544),
}


# ---------------------------------------------------------------------------
# fidelity
# ---------------------------------------------------------------------------


def test_fidelity_self():
    s = normalize(single_mode([(0.6, 0), (0.8, 2.0)]))
    assert fidelity(s, s) == pytest.approx(1.0, abs=1e-14)


def test_fidelity_code_states():
    p = LogicalParams(3.0)
    assert fidelity(encode_qubit(0, p), encode_qubit(1, p)) == pytest.approx(
        math.exp(-9.0), rel=1e-12
    )


def test_fidelity_orthogonal_cats():
    p = LogicalParams(4.0)
    f = fidelity(ideal_hadamard_output(0, p), ideal_hadamard_output(1, p))
    assert f < 1e-12


def test_fidelity_symmetric_and_bounded():
    rng = np.random.default_rng(71)
    for _ in range(20):
        a = normalize(single_mode([(rng.normal(), rng.normal()), (rng.normal(), rng.normal())]))
        b = normalize(single_mode([(rng.normal(), rng.normal()), (rng.normal(), rng.normal())]))
        fab, fba = fidelity(a, b), fidelity(b, a)
        assert fab == pytest.approx(fba, abs=1e-12)
        assert -1e-12 <= fab <= 1 + 1e-12


def test_fidelity_global_phase_invariant():
    s = normalize(single_mode([(0.6, 0), (0.8, 2.0)]))
    phased = single_mode([(t.coeff * 1j, t.amps[0]) for t in s.terms])
    assert fidelity(s, phased) == pytest.approx(1.0, abs=1e-12)


# ---------------------------------------------------------------------------
# ideal CNOT outputs
# ---------------------------------------------------------------------------


@pytest.mark.parametrize(
    "c,t,want",
    [((0), 0, (0, 0)), (0, 1, (0, 1)), (1, 0, (1, 1)), (1, 1, (1, 0))],
)
def test_ideal_cnot_output_truth_table(c, t, want):
    p = LogicalParams(4.0)
    got = ideal_cnot_output(c, t, p)
    ref = tensor(encode_qubit(want[0], p), encode_qubit(want[1], p))
    assert fidelity(got, ref) == pytest.approx(1.0, abs=1e-14)


# ---------------------------------------------------------------------------
# benchmark points
# ---------------------------------------------------------------------------


def test_point_all_ideal_is_exact():
    for alpha in (4.0, 6.0):
        cfg = SweepConfig((alpha,), central_cz="ideal", hadamard_cz="ideal")
        pt = cnot_fidelity_point(alpha, cfg)
        assert pt.avg_fidelity == pytest.approx(1.0, abs=1e-6)


def test_point_golden_regression():
    cfg = SweepConfig(tuple(GOLDEN))
    for pt in sweep(cfg):
        avg, renorm = GOLDEN[pt.alpha]
        assert abs(pt.avg_fidelity - avg) < 1e-9
        assert abs(pt.renorm_fidelity - renorm) < 1e-9


def test_point_large_alpha_high_fidelity():
    cfg = SweepConfig((40.0,))
    pt = cnot_fidelity_point(40.0, cfg)
    assert pt.avg_fidelity >= 0.99


def test_sweep_monotone_and_renormalized_dominates():
    cfg = SweepConfig(tuple(float(a) for a in range(5, 26, 2)))
    pts = sweep(cfg)
    for a, b in zip(pts, pts[1:]):
        assert b.avg_fidelity >= a.avg_fidelity - 1e-12
    for pt in pts:
        assert pt.renorm_fidelity >= pt.avg_fidelity
        assert 0.0 <= pt.leakage <= 1.0
        assert all(0.0 <= f <= 1.0 for f in pt.per_input_fidelities)


def test_sweep_renormalized_high_at_alpha_3():
    pt = cnot_fidelity_point(3.0, SweepConfig((3.0,)))
    assert pt.renorm_fidelity >= 0.9
    assert pt.renorm_fidelity - pt.avg_fidelity >= 0.05


def test_sweep_empty_config():
    assert sweep(SweepConfig(())) == []


def test_sweep_config_validation():
    with pytest.raises(ValueError):
        SweepConfig((0.0,))
    with pytest.raises(ValueError):
        SweepConfig((3.0,), central_cz="bogus")
    with pytest.raises(ValueError):
        SweepConfig((3.0,), branch_handling="bogus")
    with pytest.raises(ValueError):
        SweepConfig((3.0,), ensemble="bogus")


def test_fixed_branch_point_close_to_enumerated():
    cfg_fix = SweepConfig((6.0,), branch_handling="even")
    cfg_enum = SweepConfig((6.0,))
    f_fix = cnot_fidelity_point(6.0, cfg_fix)
    f_enum = cnot_fidelity_point(6.0, cfg_enum)
    # post-selecting one branch shifts the average only mildly
    assert f_fix.avg_fidelity == pytest.approx(f_enum.avg_fidelity, abs=0.05)
    assert 0.0 < f_fix.avg_fidelity < 1.0


# ---------------------------------------------------------------------------
# beamsplitter phase approximation error
# ---------------------------------------------------------------------------


def test_bs_error_at_zero_angle():
    exact, approx, err = bs_phase_approximation_error(2.0, 3.0, 0.0)
    assert exact == 1.0 and approx == 1.0 and err == 0.0


def test_bs_error_small_in_gate_regime():
    alpha = 20.0
    _, _, err = bs_phase_approximation_error(alpha, alpha, math.pi / (2 * alpha**2))
    assert err <= 0.01


def test_bs_error_large_at_small_alpha():
    alpha = 3.0
    _, _, err = bs_phase_approximation_error(alpha, alpha, math.pi / (2 * alpha**2))
    assert err >= 0.2


def test_bs_error_vanishing_limit():
    # theta^2 g^2 -> 0 with theta g b fixed: error goes to zero
    errs = []
    for alpha in (5.0, 10.0, 20.0, 40.0):
        _, _, err = bs_phase_approximation_error(alpha, alpha, math.pi / (2 * alpha**2))
        errs.append(err)
    assert all(b < a for a, b in zip(errs, errs[1:]))


# ---------------------------------------------------------------------------
# export formats
# ---------------------------------------------------------------------------


def test_csv_format():
    cfg = SweepConfig((3.0, 6.0))
    text = points_to_csv(sweep(cfg))
    lines = text.strip().split("\n")
    assert lines[0] == "alpha,avg_fidelity,renorm_fidelity,leakage,f_00,f_01,f_10,f_11"
    assert len(lines) == 3
    assert len(lines[1].split(",")) == 8


def test_json_mirror_embeds_config():
    cfg = SweepConfig((3.0,), central_cz="ideal", hadamard_cz="ideal")
    d = points_to_dict(sweep(cfg), cfg)
    assert d["config"]["central_cz"] == "ideal"
    assert len(d["points"]) == 1
    assert set(d["points"][0]) == {
        "alpha", "avg_fidelity", "renorm_fidelity", "leakage", "per_input_fidelities",
    }
