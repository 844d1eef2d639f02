"""Command-line interface emitting reproducible data files.

Subcommands: ``sweep`` (CNOT fidelity vs alpha), ``gate-demo`` (single gate
trace), ``homodyne`` (quadrature density samples), ``verify`` (randomized
Fock-oracle cross-check).  Identical flags always produce byte-identical
outputs; every written file embeds or sits next to a run manifest.

Exit codes: 0 success, 1 numerical or verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import __version__, fock, gates, measurement, states
from .fidelity import (
    SweepConfig,
    cnot_fidelity_point,
    fidelity as state_fidelity,
    ideal_cnot_output,
    points_to_csv,
    points_to_dict,
    sweep,
)

USAGE_ERROR = 2
NUM_ERROR = 1


def _rng(seed: int) -> np.random.Generator:
    # counter-based generator: platform-independent streams
    return np.random.Generator(np.random.Philox(seed))


def _manifest(command: str, config: dict, seed: int, outputs: list[str]) -> dict:
    return {
        "command": command,
        "config": config,
        "seed": seed,
        "version": __version__,
        "outputs": outputs,
    }


def _write_with_manifest(path: str, text: str, manifest: dict) -> None:
    with open(path, "w") as fh:
        fh.write(text)
    with open(path + ".manifest.json", "w") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _parse_alphas(text: str) -> list[float]:
    """Parse '3,5,10' or 'start:stop:step' (start inclusive, stop exclusive)."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) not in (2, 3):
            raise ValueError(f"bad range {text!r}; expected start:stop[:step]")
        start, stop = float(parts[0]), float(parts[1])
        step = float(parts[2]) if len(parts) == 3 else 1.0
        if step <= 0:
            raise ValueError("range step must be positive")
        out = []
        a = start
        while a < stop - 1e-12:
            out.append(round(a, 12))
            a += step
        return out
    return [float(tok) for tok in text.split(",") if tok.strip()]


# ---------------------------------------------------------------------------
# sweep
# ---------------------------------------------------------------------------


def _cmd_sweep(args) -> int:
    try:
        alphas = _parse_alphas(args.alphas)
        cfg = SweepConfig(
            alpha_values=tuple(alphas),
            central_cz=args.backend,
            hadamard_cz=args.backend,
            branch_handling=args.branch,
            ensemble=args.ensemble,
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR

    try:
        points = sweep(cfg)
    except Exception as exc:  # numerical failure: name the offending alpha
        done = []
        for a in cfg.alpha_values:
            try:
                done.append(cnot_fidelity_point(a, cfg))
            except Exception:
                print(f"error: sweep failed at alpha={a}: {exc}", file=sys.stderr)
                return NUM_ERROR
        points = done

    config = {
        "alphas": args.alphas,
        "backend": args.backend,
        "ensemble": args.ensemble,
        "branch": args.branch,
        "format": args.format,
    }
    manifest = _manifest("sweep", config, args.seed, [args.out] if args.out else [])
    if args.format == "csv":
        text = points_to_csv(points)
    else:
        payload = points_to_dict(points, cfg)
        payload["manifest"] = manifest
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"

    if args.out:
        _write_with_manifest(args.out, text, manifest)
    else:
        sys.stdout.write(text)
    return 0


# ---------------------------------------------------------------------------
# gate-demo
# ---------------------------------------------------------------------------


def _parse_bits(text: str, n: int) -> list[int]:
    if len(text) != n or any(ch not in "01" for ch in text):
        raise ValueError(f"input must be {n} bit(s) of 0/1, got {text!r}")
    return [int(ch) for ch in text]


def _record_dicts(outcome: gates.GateOutcome) -> list[dict]:
    return [
        {
            "op": "cat_basis_measure",
            "outcome": r.label,
            "probability": r.probability,
        }
        for r in outcome.measurement_records
    ]


def _cmd_gate_demo(args) -> int:
    try:
        p = gates.LogicalParams(args.alpha)
        n_bits = 2 if args.gate in ("cnot", "cz") else 1
        bits = _parse_bits(args.input, n_bits)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR

    qubits = [gates.encode_qubit(b, p) for b in bits]
    s_in = qubits[0]
    for q in qubits[1:]:
        s_in = states.tensor(s_in, q)

    trace: dict = {
        "gate": args.gate,
        "alpha": args.alpha,
        "input": args.input,
        "backend": args.backend,
        "branch": args.branch,
        "branches": [],
    }

    try:
        if args.gate == "hadamard":
            ideal = gates.ideal_hadamard_output(bits[0], p)
            if args.branch == "enumerate":
                outs = gates.hadamard_branches(s_in, 0, p, cz=args.backend)
            elif args.branch == "sample":
                outs = [gates.hadamard_via_cat(s_in, 0, p, "sample", _rng(args.seed), cz=args.backend)]
            else:
                outs = [gates.hadamard_via_cat(s_in, 0, p, args.branch, cz=args.backend)]
            for o in outs:
                trace["branches"].append(
                    {
                        "ops": _record_dicts(o),
                        "flips_applied": o.flips_applied,
                        "probability": o.probability,
                        "fidelity_vs_ideal": state_fidelity(o.state, ideal),
                        "state": states._state_to_dict(o.state),
                    }
                )
        elif args.gate == "cnot":
            ideal = ideal_cnot_output(bits[0], bits[1], p)
            if args.branch == "enumerate":
                outs = gates.cnot_branches(
                    s_in, 0, 1, p, central_cz=args.backend, hadamard_cz=args.backend
                )
            elif args.branch == "sample":
                outs = [
                    gates.cnot(s_in, 0, 1, p, "sample", _rng(args.seed),
                               central_cz=args.backend, hadamard_cz=args.backend)
                ]
            else:
                outs = [
                    gates.cnot(s_in, 0, 1, p, args.branch,
                               central_cz=args.backend, hadamard_cz=args.backend)
                ]
            for o in outs:
                trace["branches"].append(
                    {
                        "ops": _record_dicts(o),
                        "flips_applied": o.flips_applied,
                        "probability": o.probability,
                        "fidelity_vs_ideal": state_fidelity(o.state, ideal),
                        "state": states._state_to_dict(o.state),
                    }
                )
        elif args.gate == "cz":
            if args.backend == "ideal":
                out = gates.controlled_sign_ideal(s_in, 0, 1, p)
            else:
                out = gates.controlled_sign(s_in, 0, 1, p)
            out = states.normalize(out)
            ideal = states.normalize(gates.controlled_sign_ideal(s_in, 0, 1, p))
            trace["branches"].append(
                {
                    "ops": [{"op": "controlled_sign", "modes": [0, 1]}],
                    "probability": 1.0,
                    "fidelity_vs_ideal": state_fidelity(out, ideal),
                    "state": states._state_to_dict(out),
                }
            )
        elif args.gate == "x":
            out = states.normalize(gates.bit_flip(s_in, 0, p))
            ideal = gates.encode_qubit(1 - bits[0], p)
            trace["branches"].append(
                {
                    "ops": [{"op": "bit_flip", "modes": [0]}],
                    "probability": 1.0,
                    "fidelity_vs_ideal": state_fidelity(out, ideal),
                    "state": states._state_to_dict(out),
                }
            )
        elif args.gate == "rphi":
            out = states.normalize(gates.phase_rotation_exact(s_in, 0, args.phi, p))
            ideal = states.normalize(gates.phase_rotation_ideal(s_in, 0, args.phi, p))
            trace["branches"].append(
                {
                    "ops": [{"op": "phase_rotation", "modes": [0], "phi": args.phi}],
                    "probability": 1.0,
                    "fidelity_vs_ideal": state_fidelity(out, ideal),
                    "state": states._state_to_dict(out),
                }
            )
        else:
            print(f"error: unknown gate {args.gate!r}", file=sys.stderr)
            return USAGE_ERROR
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return NUM_ERROR

    config = {k: getattr(args, k) for k in ("gate", "alpha", "input", "branch", "backend")}
    manifest = _manifest("gate-demo", config, args.seed, [args.out] if args.out else [])
    trace["manifest"] = manifest
    text = json.dumps(trace, indent=2, sort_keys=True) + "\n"
    if args.out:
        _write_with_manifest(args.out, text, manifest)
    else:
        sys.stdout.write(text)
    return 0


# ---------------------------------------------------------------------------
# homodyne
# ---------------------------------------------------------------------------


def _demo_state(name: str, p: gates.LogicalParams) -> states.SuperposedState:
    if name == "zero":
        return gates.encode_qubit(0, p)
    if name == "one":
        return gates.encode_qubit(1, p)
    if name == "cat+":
        return gates.ideal_hadamard_output(0, p)
    if name == "cat-":
        return gates.ideal_hadamard_output(1, p)
    raise ValueError(f"unknown state {name!r}")


def _cmd_homodyne(args) -> int:
    try:
        if args.points < 2:
            raise ValueError("--points must be at least 2")
        lo_hi = args.xrange.split(":")
        if len(lo_hi) != 2:
            raise ValueError(f"bad --xrange {args.xrange!r}; expected lo:hi")
        lo, hi = float(lo_hi[0]), float(lo_hi[1])
        if not lo < hi:
            raise ValueError("--xrange must satisfy lo < hi")
        p = gates.LogicalParams(args.alpha)
        s = _demo_state(args.state, p)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR

    xs = np.linspace(lo, hi, args.points)
    dens = measurement.homodyne_pdf(s, 0, args.angle, xs)
    lines = ["x,density"]
    lines.extend(f"{x:.12g},{d:.12g}" for x, d in zip(xs, dens))
    text = "\n".join(lines) + "\n"

    config = {
        "state": args.state,
        "alpha": args.alpha,
        "angle": args.angle,
        "xrange": args.xrange,
        "points": args.points,
    }
    manifest = _manifest("homodyne", config, args.seed, [args.out] if args.out else [])
    if args.out:
        _write_with_manifest(args.out, text, manifest)
    else:
        sys.stdout.write(text)
    return 0


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def _random_state(rng: np.random.Generator, n_modes: int, n_terms: int, max_amp: float):
    terms = []
    for _ in range(n_terms):
        coeff = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
        amps = tuple(
            complex(rng.uniform(-max_amp, max_amp), rng.uniform(-max_amp, max_amp)) / math.sqrt(2)
            for _ in range(n_modes)
        )
        terms.append(states.CoherentTerm(coeff, amps))
    return states.normalize(states.SuperposedState(n_modes, tuple(terms)))


def run_oracle_suite(max_alpha: float, trials: int, seed: int) -> dict[str, float]:
    """Randomized analytic-vs-Fock comparison; returns max deviation per op."""
    rng = _rng(seed)
    worst = {k: 0.0 for k in ("overlap", "displacement", "phase", "beamsplitter", "parity", "cat_measure")}
    for _ in range(trials):
        kind = rng.choice(list(worst))
        n_modes = 2 if kind == "beamsplitter" else int(rng.integers(1, 3))
        s = _random_state(rng, n_modes, int(rng.integers(1, 4)), max_alpha * 0.8)
        if kind == "overlap":
            other = _random_state(rng, n_modes, int(rng.integers(1, 4)), max_alpha * 0.8)
            dev = fock.oracle_check(s, {"kind": "overlap", "other": other})
        elif kind == "displacement":
            beta = complex(rng.uniform(-0.8, 0.8), rng.uniform(-0.8, 0.8))
            dev = fock.oracle_check(
                s, {"kind": "displacement", "mode": int(rng.integers(n_modes)), "beta": beta}
            )
        elif kind == "phase":
            dev = fock.oracle_check(
                s,
                {"kind": "phase", "mode": int(rng.integers(n_modes)),
                 "epsilon": float(rng.uniform(0, 2 * math.pi))},
            )
        elif kind == "beamsplitter":
            dev = fock.oracle_check(
                s, {"kind": "beamsplitter", "theta": float(rng.uniform(0, math.pi)),
                    "mode_a": 0, "mode_b": 1}
            )
        elif kind == "parity":
            dev = fock.oracle_check(s, {"kind": "parity", "mode": int(rng.integers(n_modes))})
        else:
            dev = fock.oracle_check(
                s, {"kind": "cat_measure", "mode": int(rng.integers(n_modes)),
                    "alpha": float(rng.uniform(0.5, max_alpha * 0.7))}
            )
        worst[kind] = max(worst[kind], dev)
    return worst


def _cmd_verify(args) -> int:
    if args.trials < 1:
        print("error: --trials must be positive", file=sys.stderr)
        return USAGE_ERROR
    if args.max_alpha > fock.MAX_ORACLE_AMPLITUDE:
        print(
            f"error: --max-alpha {args.max_alpha} exceeds the oracle tractability "
            f"bound {fock.MAX_ORACLE_AMPLITUDE}",
            file=sys.stderr,
        )
        return USAGE_ERROR
    if args.max_alpha <= 0:
        print("error: --max-alpha must be positive", file=sys.stderr)
        return USAGE_ERROR

    worst = run_oracle_suite(args.max_alpha, args.trials, args.seed)
    threshold = 1e-8
    failed = [k for k, v in worst.items() if v > threshold]
    print(f"{'operation':<14} {'max deviation':>14}")
    for k, v in sorted(worst.items()):
        flag = "FAIL" if v > threshold else "ok"
        print(f"{k:<14} {v:>14.3e}  {flag}")
    if failed:
        print(f"error: deviations above {threshold:g} for: {', '.join(failed)}", file=sys.stderr)
        return NUM_ERROR
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="catqubit",
        description="Coherent-state qubit simulator: gates, measurements, benchmarks.",
    )
    ap.add_argument("--version", action="version", version=f"catqubit {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    sw = sub.add_parser("sweep", help="CNOT fidelity versus code amplitude")
    sw.add_argument("--alphas", required=True,
                    help="comma list '3,5,10' or range 'start:stop:step' (stop exclusive)")
    sw.add_argument("--backend", choices=("exact", "ideal"), default="exact")
    sw.add_argument("--ensemble", choices=("basis4",), default="basis4")
    sw.add_argument("--branch", choices=("enumerate", "even", "odd"), default="enumerate")
    sw.add_argument("--format", choices=("csv", "json"), default="csv")
    sw.add_argument("--out", default=None, help="output file (stdout if omitted)")
    sw.add_argument("--seed", type=int, default=0)
    sw.set_defaults(func=_cmd_sweep)

    gd = sub.add_parser("gate-demo", help="run one gate and emit its trace")
    gd.add_argument("--gate", required=True, choices=("hadamard", "cnot", "cz", "x", "rphi"))
    gd.add_argument("--alpha", type=float, default=6.0)
    gd.add_argument("--input", required=True, help="input bits, e.g. 0 or 10")
    gd.add_argument("--branch", choices=("enumerate", "even", "odd", "sample"), default="enumerate")
    gd.add_argument("--backend", choices=("exact", "ideal"), default="exact")
    gd.add_argument("--phi", type=float, default=math.pi / 2, help="angle for rphi")
    gd.add_argument("--out", default=None)
    gd.add_argument("--seed", type=int, default=0)
    gd.set_defaults(func=_cmd_gate_demo)

    ho = sub.add_parser("homodyne", help="quadrature probability density samples")
    ho.add_argument("--state", required=True, choices=("zero", "one", "cat+", "cat-"))
    ho.add_argument("--alpha", type=float, default=6.0)
    ho.add_argument("--angle", type=float, default=0.0, help="local-oscillator angle (rad)")
    ho.add_argument("--xrange", default="-20:20")
    ho.add_argument("--points", type=int, default=801)
    ho.add_argument("--out", default=None)
    ho.add_argument("--seed", type=int, default=0)
    ho.set_defaults(func=_cmd_homodyne)

    vf = sub.add_parser("verify", help="randomized Fock-oracle cross-check")
    vf.add_argument("--max-alpha", type=float, default=4.0)
    vf.add_argument("--trials", type=int, default=200)
    vf.add_argument("--seed", type=int, default=0)
    vf.set_defaults(func=_cmd_verify)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
