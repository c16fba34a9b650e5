"""Command-line front end.

Subcommands: emps, classify, polytope, orbit, ising, sweep. Results are
JSON records (CSV for point clouds and sweep tables); all energies are
reported as dimensionless multiples of E. Exit codes: 0 success, 2 on
validation/argument errors, 3 on numerical failures. The default RNG seed
is 42, overridable by --seed or the EMPSKIT_SEED environment variable.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from typing import List, Optional

import numpy as np

from . import classify as cls
from . import qcore
from . import spinchain as sc
from .emps import (
    DEFAULT_SEED,
    EmpsVector,
    emps_vector,
    eta_indicator,
    polygon_check,
    total_emps,
)
from .errors import ArgumentError, CapacityError, NumericError, ValidationError


def _resolve_seed(args) -> int:
    if getattr(args, "seed", None) is not None:
        return args.seed
    env = os.environ.get("EMPSKIT_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise ValidationError(f"EMPSKIT_SEED must be an integer, got {env!r}") from exc
    return DEFAULT_SEED


def _parse_float_list(text: str, flag: str) -> List[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip() != ""]
    except ValueError as exc:
        raise ValidationError(f"{flag} must be a comma-separated list of numbers, got {text!r}") from exc


def _builder_spec_from_args(args) -> cls.StateBuilderSpec:
    family = args.builder
    params: dict = {}
    if family == "ghz":
        _need(args, family, n=True, theta=True)
        params = {"n": args.n, "theta": args.theta}
    elif family == "w":
        _need(args, family, coeffs=True)
        params = {"coeffs": _parse_float_list(args.coeffs, "--coeffs")}
    elif family == "dicke":
        _need(args, family, n=True, l=True)
        params = {"n": args.n, "l": args.l}
    elif family == "generalized_dicke":
        _need(args, family, n=True, l=True, coeffs=True)
        params = {"n": args.n, "l": args.l, "coeffs": _parse_float_list(args.coeffs, "--coeffs")}
    elif family == "biseparable":
        _need(args, family, alpha=True, beta=True, position=True)
        params = {"alpha": args.alpha, "beta": args.beta, "position": args.position}
    elif family == "noisy_w":
        _need(args, family, v1=True)
        params = {"v1": args.v1}
    elif family == "noisy_ghz":
        _need(args, family, v2=True)
        params = {"v2": args.v2}
    else:
        raise ValidationError(f"unknown builder {family!r}")
    return cls.StateBuilderSpec(family=family, params=params)


def _need(args, family: str, **wanted):
    missing = [f"--{k}" for k in wanted if getattr(args, k, None) is None]
    if missing:
        raise ValidationError(f"builder {family!r} requires {', '.join(missing)}")


def _load_state(args):
    """Resolve --state / --builder into (state, state_id)."""
    if getattr(args, "state", None):
        with open(args.state, "r", encoding="utf-8") as fh:
            try:
                payload = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ValidationError(f"state file {args.state} is not valid JSON: {exc}") from exc
        if isinstance(payload, dict) and "builder" in payload:
            spec = cls.StateBuilderSpec(
                family=str(payload["builder"]), params=dict(payload.get("params", {}))
            )
            return cls.build_state(spec), args.state
        return qcore.state_from_dict(payload), args.state
    if getattr(args, "builder", None):
        spec = _builder_spec_from_args(args)
        pieces = ", ".join(f"{k}={v}" for k, v in spec.params.items())
        return cls.build_state(spec), f"{spec.family}({pieces})"
    raise ValidationError("provide a state via --state FILE or --builder NAME")


def _emit(text: str, output: Optional[str]):
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _json_dumps(record) -> str:
    return json.dumps(record, indent=2)


def _emps_record(state, state_id: str) -> dict:
    v = emps_vector(state)
    report = polygon_check(v)
    eta = eta_indicator(v) if v.n >= 3 else None
    return {
        "state_id": state_id,
        "units": "E",
        "n": v.n,
        "emps": [float(x) for x in v.values],
        "total": total_emps(v),
        "eta": eta,
        "polygon": {
            "satisfied": report.satisfied,
            "worst_slack": report.worst_slack,
            "violating_index": report.violating_index,
        },
    }


def _cmd_emps(args) -> int:
    state, state_id = _load_state(args)
    if args.save_state:
        with open(args.save_state, "w", encoding="utf-8") as fh:
            json.dump(qcore.state_to_dict(state), fh)
    _emit(_json_dumps(_emps_record(state, state_id)), args.output)
    return 0


def _cmd_classify(args) -> int:
    state, state_id = _load_state(args)
    if not isinstance(state, qcore.PureState):
        raise ArgumentError("classification needs a pure state")
    label = cls.classify_three_qubit(state)
    v = emps_vector(state)
    record = {
        "state": state_id,
        "units": "E",
        "emps": [float(x) for x in v.values],
        "total": total_emps(v),
        "eta": eta_indicator(v),
        "verdict": label.description,
        "verdict_code": label.verdict.value,
        "cut": label.cut,
        "genuinely_entangled": label.genuinely_entangled,
        "evidence": [
            {"facet": e.name, "value": e.value, "threshold": e.threshold, "slack": e.slack}
            for e in label.evidence
        ],
    }
    _emit(_json_dumps(record), args.output)
    return 0


def _cmd_polytope(args) -> int:
    if args.point:
        values = _parse_float_list(args.point, "--point")
        v = EmpsVector(n=len(values), values=np.array(values))
        point_id = f"point({args.point})"
    else:
        state, point_id = _load_state(args)
        v = emps_vector(state)
    report = cls.polytope_membership_3q(v, args.which)
    record = {
        "point_id": point_id,
        "emps": [float(x) for x in v.values],
        "polytope": args.which,
        "member": report.member,
        "facets": [{"facet": k, "slack": s} for k, s in report.facet_slacks.items()],
    }
    _emit(_json_dumps(record), args.output)
    return 0


def _cmd_orbit(args) -> int:
    state, state_id = _load_state(args)
    if not isinstance(state, qcore.PureState):
        raise ArgumentError("orbit sampling needs a pure state")
    seed = _resolve_seed(args)
    samples = cls.slocc_orbit_sample(state, args.samples, seed=seed)
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow([f"e{i}" for i in range(1, state.n + 1)])
        for v in samples:
            writer.writerow([repr(float(x)) for x in v.values])
        _emit(buf.getvalue(), args.output)
    else:
        record = {
            "state_id": state_id,
            "units": "E",
            "samples": args.samples,
            "seed": seed,
            "points": [[float(x) for x in v.values] for v in samples],
        }
        _emit(_json_dumps(record), args.output)
    return 0


def _chain_spec(args) -> sc.SpinChainSpec:
    if getattr(args, "spec", None):
        with open(args.spec, "r", encoding="utf-8") as fh:
            try:
                payload = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ValidationError(f"spec file {args.spec} is not valid JSON: {exc}") from exc
        return sc.spec_from_dict(payload)
    if args.model == "ising":
        return sc.nearest_neighbor_chain(N=args.sites, J=args.J, h=args.h)
    if args.model == "longrange":
        if args.sites != 5:
            raise ValidationError("--model longrange is defined on 5 sites")
        return sc.long_range_chain(J=args.J, h=args.h)
    raise ValidationError("provide --spec FILE or --model ising|longrange")


def _spec_record(spec: sc.SpinChainSpec) -> dict:
    return {
        "N": spec.N,
        "J": spec.J,
        "h": spec.h,
        "extra_terms": [[c, s] for c, s in spec.extra_terms],
    }


def _cmd_ising(args) -> int:
    spec = _chain_spec(args)
    gs = sc.ground_state(spec)
    record = {
        "spec": _spec_record(spec),
        "units": "E",
        "ground_energy": gs.energy,
        "gap": gs.degeneracy_gap,
        "degenerate": gs.degenerate,
        "eta": eta_indicator(gs.state),
        "entropy_criterion": sc.entropy_criterion(gs.state),
    }
    _emit(_json_dumps(record), args.output)
    return 0


def _sweep_values(args) -> List[float]:
    if args.values:
        return _parse_float_list(args.values, "--values")
    if args.range:
        parts = args.range.split(":")
        if len(parts) != 3:
            raise ValidationError("--range must look like start:stop:count")
        try:
            start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
        except ValueError as exc:
            raise ValidationError("--range must look like start:stop:count") from exc
        if count < 1:
            raise ValidationError("--range count must be >= 1")
        return [float(x) for x in np.linspace(start, stop, count)]
    raise ValidationError("provide sweep values via --values or --range")


def _cmd_sweep(args) -> int:
    spec = _chain_spec(args)
    values = _sweep_values(args)
    rows = sc.indicator_sweep(spec, args.param, values)
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(
            ["parameter", "ground_energy", "gap", "eta_over_E", "entropy_criterion", "degenerate"]
        )
        for r in rows:
            writer.writerow(
                [
                    repr(r.parameter),
                    repr(r.ground_energy),
                    repr(r.gap),
                    repr(r.eta),
                    repr(r.entropy_criterion),
                    int(r.degenerate),
                ]
            )
        _emit(buf.getvalue(), args.output)
    else:
        record = {
            "spec": _spec_record(spec),
            "parameter": args.param,
            "units": "E",
            "rows": [
                {
                    "parameter": r.parameter,
                    "ground_energy": r.ground_energy,
                    "gap": r.gap,
                    "eta": r.eta,
                    "entropy_criterion": r.entropy_criterion,
                    "degenerate": r.degenerate,
                }
                for r in rows
            ],
        }
        _emit(_json_dumps(record), args.output)
    return 0


def _add_state_options(parser: argparse.ArgumentParser):
    parser.add_argument("--state", help="JSON state file (amps, entries, or builder form)")
    parser.add_argument(
        "--builder",
        choices=sorted(cls._BUILDERS),
        help="named state family built from the flags below",
    )
    parser.add_argument("--n", type=int, help="qubit count (ghz, dicke families)")
    parser.add_argument("--theta", type=float, help="GHZ angle in radians, in (0, pi/4]")
    parser.add_argument("--coeffs", help="comma-separated coefficients (w, generalized_dicke)")
    parser.add_argument("--l", type=int, help="excitation count (dicke families)")
    parser.add_argument("--alpha", type=float, help="biseparable |00> amplitude")
    parser.add_argument("--beta", type=float, help="biseparable |11> amplitude")
    parser.add_argument("--position", type=int, help="biseparable factored qubit (1..3)")
    parser.add_argument("--v1", type=float, help="white-noise weight for noisy_w")
    parser.add_argument("--v2", type=float, help="white-noise weight for noisy_ghz")


def _add_common(parser: argparse.ArgumentParser):
    parser.add_argument("-o", "--output", help="write the result here instead of stdout")
    parser.add_argument("--seed", type=int, help="RNG seed (default EMPSKIT_SEED or 42)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="empskit",
        description="Marginal passive-state energies, entanglement polytope facets, "
        "and spin-chain indicators for small multi-qubit systems.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("emps", help="per-qubit marginal passive energies of a state")
    _add_state_options(p)
    _add_common(p)
    p.add_argument("--save-state", help="also write the resolved state as a JSON file")
    p.set_defaults(fn=_cmd_emps)

    p = sub.add_parser("classify", help="three-qubit SLOCC classification report")
    _add_state_options(p)
    _add_common(p)
    p.set_defaults(fn=_cmd_classify)

    p = sub.add_parser("polytope", help="facet membership of an energy vector (n=3)")
    _add_state_options(p)
    _add_common(p)
    p.add_argument("--point", help="energy vector e1,e2,e3 instead of a state")
    p.add_argument("--which", choices=("w", "ghz"), default="ghz", help="polytope to test")
    p.set_defaults(fn=_cmd_polytope)

    p = sub.add_parser("orbit", help="energy vectors sampled from a SLOCC orbit")
    _add_state_options(p)
    _add_common(p)
    p.add_argument("--samples", type=int, default=1000, help="number of orbit samples (>= 1)")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(fn=_cmd_orbit)

    p = sub.add_parser("ising", help="ground state and indicators of a spin chain")
    _add_chain_options(p)
    _add_common(p)
    p.set_defaults(fn=_cmd_ising)

    p = sub.add_parser("sweep", help="indicator table along a chain parameter")
    _add_chain_options(p)
    _add_common(p)
    p.add_argument("--param", choices=("J", "h", "coefficient"), default="h")
    p.add_argument("--values", help="comma-separated parameter values")
    p.add_argument("--range", help="start:stop:count, inclusive linear grid")
    p.add_argument("--format", choices=("json", "csv"), default="csv")
    p.set_defaults(fn=_cmd_sweep)

    return parser


def _add_chain_options(parser: argparse.ArgumentParser):
    parser.add_argument("--spec", help="JSON spin-chain spec file")
    parser.add_argument(
        "--model",
        choices=("ising", "longrange"),
        help="preset chain: plain nearest-neighbor or the 5-site long-range variant",
    )
    parser.add_argument("--sites", type=int, default=5, help="site count for --model ising")
    parser.add_argument("--J", type=float, default=1.0, help="coupling constant")
    parser.add_argument("--h", type=float, default=1.0, help="external field")


def run(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ValidationError, ArgumentError, CapacityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericError as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return 3


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
