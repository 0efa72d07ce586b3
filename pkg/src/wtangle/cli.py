"""Command-line front end.

Exit codes: 0 success, 1 protocol or verification failure, 2 usage or
parse error. With ``--json`` a report carrying ``"schema": "wtangle/1"`` and a
``"status"`` field is printed to stdout even when the command fails.
"""
from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from collections import Counter
from pathlib import Path

import numpy as np

from . import entanglement, protocols, states
from .qcore import StateVector, derive_seeds, make_rng

SCHEMA = "wtangle/1"
DEFAULT_SEED = 42
DEFAULT_TRIALS = 100
TELEPORT_TOL = 1e-9
BASES_TOL = 1e-10
RENORM_TOL = 1e-6

log = logging.getLogger("wtangle")


class UsageError(Exception):
    pass


def parse_complex(text: str) -> complex:
    """Parse ``re`` or ``re+imi`` (``j`` also accepted)."""
    t = str(text).strip().replace(" ", "")
    if t.endswith("i"):
        t = t[:-1] + "j"
    try:
        z = complex(t)
    except ValueError:
        raise UsageError(f"cannot parse complex number {text!r}") from None
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise UsageError(f"non-finite complex number {text!r}")
    return z


def _renormalize(amps, what: str) -> np.ndarray:
    amps = np.asarray(amps, dtype=complex)
    norm2 = float(np.vdot(amps, amps).real)
    if abs(norm2 - 1.0) > RENORM_TOL:
        raise UsageError(f"{what} has squared norm {norm2:.9g}; refusing to renormalize")
    if abs(norm2 - 1.0) > 1e-12:
        log.warning("%s renormalized (squared norm was %.12g)", what, norm2)
    return amps / math.sqrt(norm2)


def _params(args) -> states.WParams:
    try:
        return states.WParams(args.n, args.gamma, args.delta)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def load_state_doc(doc: dict) -> tuple:
    """``(name, state)`` from a decoded state document."""
    if not isinstance(doc, dict):
        raise UsageError("state document must be a JSON object")
    if "preset" in doc:
        name = str(doc["preset"])
        try:
            p = states.WParams(
                float(doc.get("n", 1.0)),
                float(doc.get("gamma", 0.0)),
                float(doc.get("delta", 0.0)),
            )
            return name, states.parse_preset(name, p)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    if "amps" in doc:
        pairs = doc["amps"]
        try:
            amps = [complex(float(re), float(im)) for re, im in pairs]
        except (TypeError, ValueError):
            raise UsageError("amps must be a list of [re, im] pairs") from None
        if len(amps) != 8:
            raise UsageError(f"amps must hold 8 entries, got {len(amps)}")
        return "amps", StateVector(_renormalize(amps, "state"))
    raise UsageError('state document needs a "preset" or an "amps" field')


def resolve_state(arg: str, args) -> tuple:
    path = Path(arg)
    if path.suffix == ".json" or path.is_file():
        try:
            doc = json.loads(path.read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read state file {arg}: {exc}") from None
        return load_state_doc(doc)
    return load_state_doc({"preset": arg, "n": args.n, "gamma": args.gamma, "delta": args.delta})


# ------------------------------------------------------------------ commands

_TELEPORT_TABLES = {"ghz": protocols.GHZ_CORRECTIONS, "w1": protocols.W_CORRECTIONS,
                    "wn": protocols.W_CORRECTIONS}


def _teleport_setup(args):
    p = _params(args)
    resource = args.resource
    if resource == "ghz":
        state, params = states.make_ghz(), None
    elif resource in ("w", "w-prototype"):
        state, params = states.make_w_prototype(), None
    elif resource == "w1":
        state, params = states.make_w1(), states.WParams(1.0)
    else:
        state, params = states.make_w_n(p), p
    family = args.basis or {"ghz": "ghz", "wn": "wn"}.get(resource, "w1")
    if family == "ghz":
        basis = states.ghz_teleport_basis()
    elif family == "w1":
        basis = states.w_teleport_basis(states.WParams(1.0))
    else:
        basis = states.w_teleport_basis(p)
    return state, params, basis, _TELEPORT_TABLES[family], family


def _inputs(args, count):
    if args.alpha is not None or args.beta is not None:
        if args.random_input:
            raise UsageError("--random-input conflicts with --alpha/--beta")
        a = parse_complex(args.alpha if args.alpha is not None else "0")
        b = parse_complex(args.beta if args.beta is not None else "0")
        amps = _renormalize([a, b], "input qubit")
        fixed = protocols.InputQubit(amps[0], amps[1])
        return [fixed] * count
    rng = make_rng(args.seed)
    return [protocols.InputQubit.random(rng) for _ in range(count)]


def cmd_teleport(args) -> tuple:
    if args.trials < 1:
        raise UsageError("--trials must be positive")
    tol = TELEPORT_TOL if args.tol is None else args.tol
    state, params, basis, table, family = _teleport_setup(args)
    inputs = _inputs(args, args.trials)
    traces = []
    for psi, seed in zip(inputs, derive_seeds(args.seed, args.trials)):
        traces.append(protocols.teleport(
            state, basis, table, psi, seed, resource_name=args.resource,
            params=params, strict=False,
        ))
    fids = np.array([t.fidelity for t in traces])
    hist = Counter(t.outcome_label for t in traces)
    ok = bool(fids.min() >= 1 - tol and all(t.classical_bits for t in traces))
    aggregates = {
        "trials": len(traces),
        "min_fidelity": float(fids.min()),
        "mean_fidelity": float(fids.mean()),
        "outcome_histogram": {
            lab: hist[lab] for lab in basis.labels
            if lab in hist or basis.index_of(lab) < basis.labeled_count
        },
        "success_rate": float(np.mean(fids >= 1 - tol)),
        "max_aux_probability": max(t.aux_probability for t in traces),
        "perfect_transfer": ok,
    }
    report = {
        "basis": family,
        "resource": args.resource,
        "params": None if params is None else vars_of(params),
        "traces": [t.to_dict() for t in traces],
        "aggregates": aggregates,
    }
    lines = [
        f"teleport resource={args.resource} basis={family} trials={len(traces)} seed={args.seed}",
        f"  fidelity min={aggregates['min_fidelity']:.12f} mean={aggregates['mean_fidelity']:.12f}",
        "  outcomes " + " ".join(f"{k}={v}" for k, v in aggregates["outcome_histogram"].items()),
        "  perfect transfer" if ok else "  IMPERFECT transfer",
    ]
    return (0 if ok else 1), report, lines


def vars_of(p: states.WParams) -> dict:
    return {"n": p.n, "gamma": p.gamma, "delta": p.delta}


def cmd_densecode(args) -> tuple:
    scheme = protocols.Scheme(args.scheme)
    params = _params(args) if scheme is protocols.Scheme.WN2 else None
    size = 1 << scheme.bits
    if args.message is not None:
        if not 0 <= args.message < size:
            raise UsageError(f"message must lie in [0, {size}) for {scheme.value}")
        messages = [args.message]
    else:
        messages = list(range(size))
    seeds = derive_seeds(args.seed, len(messages))
    traces = [protocols.dense_code(scheme, m, params, s) for m, s in zip(messages, seeds)]
    recovered = sum(t.success for t in traces)
    ok = recovered == len(traces)
    report = {
        "scheme": scheme.value,
        "params": None if params is None else vars_of(params),
        "traces": [t.to_dict() for t in traces],
        "aggregates": {
            "messages": len(traces),
            "recovered": recovered,
            "success_rate": recovered / len(traces),
            "qubits_sent": scheme.qubits_sent,
            "bits_per_message": scheme.bits,
            "ebits_used": traces[0].ebits_used,
        },
    }
    lines = [f"densecode scheme={scheme.value} seed={args.seed}"]
    lines += [f"  sent {t.message} -> {t.encoded_label} -> decoded {t.decoded}" for t in traces]
    lines.append(
        f"  recovered {recovered}/{len(traces)}, qubits sent {scheme.qubits_sent}, "
        f"ebits {traces[0].ebits_used:.12g}"
    )
    return (0 if ok else 1), report, lines


def cmd_analyze(args) -> tuple:
    name, state = resolve_state(args.state, args)
    try:
        rep = entanglement.analyze(state)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    d = rep.to_dict()
    lines = [f"analyze state={name}"]
    lines += [f"  entropy {cut}: {v:.10f}" for cut, v in d["entropy_bits_per_cut"].items()]
    lines += [f"  C_{k}: {v:.10f}" for k, v in d["concurrence_pairs"].items()]
    lines += [
        f"  C_0(12): {rep.concurrence_1_23:.10f}",
        f"  tangle: {rep.tangle:.10f}",
        f"  monogamy slack: {rep.monogamy_slack:.3e}",
        f"  class: {rep.slocc_class.value}",
    ]
    return 0, {"state": name, "entanglement": d}, lines


def cmd_bases(args) -> tuple:
    tol = BASES_TOL if args.tol is None else args.tol
    if args.family == "ghz":
        basis = states.ghz_teleport_basis()
    elif args.family == "ghz8":
        basis = states.ghz_dense8_basis()
    else:
        basis = states.w_teleport_basis(_params(args))
    check = states.check_orthonormal(basis.vectors, tol)
    ok = check.passed and basis.is_complete
    report = {
        "family": args.family,
        "vectors": len(basis.vectors),
        "labeled": basis.labeled_count,
        "labels": list(basis.labels),
        "max_deviation": check.max_deviation,
        "tol": tol,
    }
    lines = [
        f"bases family={args.family}: {len(basis.vectors)} vectors "
        f"({basis.labeled_count} labeled), max Gram deviation {check.max_deviation:.3e} "
        f"(tol {tol:g}) -> {'ok' if ok else 'FAIL'}"
    ]
    return (0 if ok else 1), report, lines


# -------------------------------------------------------------------- parser


def _common(defaults: bool) -> argparse.ArgumentParser:
    sup = {} if defaults else {"default": argparse.SUPPRESS}
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--json", action="store_true", help="emit a JSON report", **sup)
    p.add_argument("--seed", type=int, help=f"master seed (default {DEFAULT_SEED})",
                   **(sup or {"default": DEFAULT_SEED}))
    p.add_argument("--tol", type=float, help="verification tolerance", **(sup or {"default": None}))
    return p


def _wparams(p: argparse.ArgumentParser):
    p.add_argument("--n", type=float, default=1.0, help="W_n parameter (>= 0)")
    p.add_argument("--gamma", type=float, default=0.0, help="phase on |010>")
    p.add_argument("--delta", type=float, default=0.0, help="phase on |001>")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wtangle", parents=[_common(True)],
        description="Teleportation, superdense coding and entanglement of W and GHZ states.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    common = _common(False)

    t = sub.add_parser("teleport", parents=[common], help="run teleportation trials")
    t.add_argument("--resource", choices=["ghz", "w", "w-prototype", "w1", "wn"], default="wn")
    t.add_argument("--basis", choices=["ghz", "w1", "wn"], default=None,
                   help="measurement basis (default: the one matching the resource)")
    _wparams(t)
    t.add_argument("--alpha", help="input amplitude on |0>, e.g. 0.6 or 0.3+0.4i")
    t.add_argument("--beta", help="input amplitude on |1>")
    t.add_argument("--random-input", action="store_true", help="Haar-random input per trial")
    t.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    t.set_defaults(func=cmd_teleport)

    d = sub.add_parser("densecode", parents=[common], help="superdense coding roundtrips")
    d.add_argument("--scheme", choices=[s.value for s in protocols.Scheme], default="wn2")
    _wparams(d)
    g = d.add_mutually_exclusive_group()
    g.add_argument("--message", type=int)
    g.add_argument("--all", action="store_true", help="send every message (default)")
    d.set_defaults(func=cmd_densecode)

    a = sub.add_parser("analyze", parents=[common], help="entanglement report for a state")
    a.add_argument("--state", required=True, help="preset (ghz, w, w1, wn) or JSON state file")
    _wparams(a)
    a.set_defaults(func=cmd_analyze)

    b = sub.add_parser("bases", parents=[common], help="check measurement-basis orthonormality")
    b.add_argument("--family", choices=["ghz", "ghz8", "wn"], required=True)
    _wparams(b)
    b.set_defaults(func=cmd_bases)
    return parser


def _echo(args) -> dict:
    skip = {"func", "json"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(name)s: %(levelname)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code, body, lines = args.func(args)
        status = "ok" if code == 0 else "failed"
    except UsageError as exc:
        code, body, lines, status = 2, {"error": str(exc)}, [f"error: {exc}"], "error"
    if args.json:
        report = {"schema": SCHEMA, "command": args.command, "args": _echo(args),
                  "seed": args.seed, "status": status, **body}
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        out = sys.stderr if code == 2 else sys.stdout
        print("\n".join(lines), file=out)
    return code


if __name__ == "__main__":
    sys.exit(main())
