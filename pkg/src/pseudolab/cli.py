"""Command-line front end.

Exit status: 0 when every check passes, 1 when a check fails, 2 on usage or
I/O errors.
"""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import bounds, commitment, constructions, epfi, io, linalg, locc
from .suite import SUITES, Record, Report, SuiteConfig, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _suite_list(values) -> list[str]:
    out = []
    for v in values or []:
        out += [s for s in v.split(",") if s]
    return out


def _config(args, suites) -> SuiteConfig:
    return SuiteConfig(seed=args.seed, max_dim=args.max_dim, suites=suites, out=args.out, scale=args.scale,
                       inject_violation=getattr(args, "inject_violation", False))


def _emit_report(report: Report, args) -> int:
    print(report.table())
    if args.out:
        print(f"report written to {args.out}")
    return report.exit_code


def _emit_json(doc: dict, args, ok: bool) -> int:
    text = json.dumps(doc, indent=1, sort_keys=True) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    sys.stdout.write(text)
    return EXIT_OK if ok else EXIT_FAIL


def _pair_from_args(args) -> epfi.EpfiPair:
    if bool(args.left) != bool(args.right):
        raise UsageError("--left and --right must be given together")
    if args.left:
        if args.delta is None:
            raise UsageError("--delta is required with ensemble files")
        return epfi.EpfiPair(io.load_ensemble(args.left), io.load_ensemble(args.right), args.delta)
    delta = 0.5 if args.delta is None else args.delta
    return constructions.qubit_epfi_pair(delta, np.random.default_rng(args.seed), key_len=2, noise=args.noise)


def cmd_verify_bounds(args) -> int:
    return _emit_report(run_suite(_config(args, ["bounds"])), args)


def cmd_verify_epfi(args) -> int:
    if not args.left and not args.right:
        return _emit_report(run_suite(_config(args, ["epfi"])), args)
    pair = _pair_from_args(args)
    min_delta, rep = epfi.verify_pairwise_far(pair)
    records = [Record("pairwise_far", "pseudoresource_to_epfi", rep.lhs, rep.rhs, rep.status,
                      detail=f"min distance {min_delta:.9g}")]
    if pair.left.dim ** args.copies <= 2**12:
        adv = epfi.statistical_hiding_advantage(pair, args.copies)
        records.append(Record(f"mixture_distance[m={args.copies}]", "epfi_separation", adv, 1.0, "pass",
                              detail="statistical surrogate; informational"))
    report = Report(config={"left": args.left, "right": args.right, "delta": pair.certified_delta})
    report.add(records, pair.caveats)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(report.to_text())
    return _emit_report(report, args)


def _scheme(args):
    pair = _pair_from_args(args)
    return pair, commitment.build_from_epfi(pair, args.copies)


def cmd_commit(args) -> int:
    pair, scheme = _scheme(args)
    k = args.key or scheme.keys[args.bit][0]
    tr = commitment.commit(scheme, args.bit, k, args.copies)
    accept = commitment.reveal_verify(scheme, tr.joint_state, args.bit, k)
    wrong = commitment.reveal_verify(scheme, tr.joint_state, 1 - args.bit, scheme.keys[1 - args.bit][0])
    doc = {"bit": args.bit, "key": k, "copies": args.copies, "dC": scheme.dC, "dR": scheme.dR,
           "honest_accept": accept, "accept_as_other_bit_without_attack": wrong,
           "hiding_trace_distance": commitment.statistical_hiding_of_scheme(scheme, args.copies),
           "flags": list(scheme.flags), "caveats": list(pair.caveats)}
    return _emit_json(doc, args, accept >= 1 - 1e-9)


def cmd_attack(args) -> int:
    pair, scheme = _scheme(args)
    bound = bounds.binding_fidelity_bound(bounds.copies_amplification(pair.certified_delta, args.copies))
    rows, ok = [], True
    for k in scheme.keys[0]:
        for k2 in scheme.keys[1]:
            res = commitment.optimal_opening_attack(scheme, k, k2, args.copies)
            good = res.success_prob <= bound + 1e-6 and abs(res.achieved_overlap - res.success_prob) <= 1e-6
            ok &= good
            rows.append({"key0": k, "key1": k2, "success": res.success_prob, "achieved": res.achieved_overlap,
                         "status": "pass" if good else "fail"})
    doc = {"copies": args.copies, "certified_delta": pair.certified_delta, "bound": bound, "attacks": rows}
    return _emit_json(doc, args, ok)


def cmd_distill(args) -> int:
    family = io.load_ensemble(args.ensemble)
    circuit = io.load_circuit(args.circuit)
    if args.cost:
        worst, ok, per_key = locc.cost_deficit(family, circuit, args.n_in, args.eps)
    else:
        pairs = [tuple(p.split(":")) for p in args.pairs] if args.pairs else None
        cert = locc.DistillationCertificate(family, circuit, args.target_m, args.eps, pairs)
        worst, ok = locc.distillation_deficit(cert)
        per_key = cert.per_key_deficit
    doc = {"mode": "cost" if args.cost else "distillation", "eps": args.eps, "max_deficit": worst, "valid": ok,
           "per_key_deficit": per_key}
    return _emit_json(doc, args, ok)


def cmd_locked_demo(args) -> int:
    rep = locc.locked_entanglement_demo(args.pairs, args.max_gates)
    doc = {"n_pairs": rep.n_pairs, "with_key_deficits": rep.with_key_deficits,
           "key_average_error": rep.key_average_error, "key_average_ppt_min_eig": rep.key_average_ppt_min_eig,
           "mixture_distance_to_reference": rep.mixture_distance, "no_key_best_fidelity": rep.no_key_best_fidelity,
           "no_key_distinct_circuits": rep.no_key_circuits, "no_key_gate_sequences": rep.no_key_sequences,
           "scope": rep.scope, "caveats": [epfi.STATISTICAL_SURROGATE], "passed": rep.passed}
    return _emit_json(doc, args, rep.passed)


def cmd_report(args) -> int:
    suites = _suite_list(args.suite) if args.suite is not None else list(SUITES)
    return _emit_report(run_suite(_config(args, suites)), args)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("--max-dim", type=int, default=16)
    common.add_argument("--out", default=None, help="write the report or result here")
    common.add_argument("--scale", choices=("quick", "full"), default="quick",
                        help="sample counts: quick for smoke runs, full for acceptance sizes")
    pair = argparse.ArgumentParser(add_help=False)
    pair.add_argument("--left", help="ensemble file for bit 0 / left family")
    pair.add_argument("--right", help="ensemble file for bit 1 / right family")
    pair.add_argument("--delta", type=float, default=None, help="certified pairwise distance")
    pair.add_argument("--noise", type=float, default=0.0, help="white noise of the built-in qubit pair")
    pair.add_argument("--copies", type=int, default=1)

    parser = argparse.ArgumentParser(prog="pseudolab", description="Desk-scale checks of pseudoresource constructions.")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("verify-bounds", parents=[common], help="continuity, fidelity and discrimination bounds")
    p.add_argument("--inject-violation", action="store_true", help="add a check against a corrupted bound")
    p.set_defaults(func=cmd_verify_bounds)
    p = sub.add_parser("verify-epfi", parents=[common, pair], help="pairwise-far checks")
    p.set_defaults(func=cmd_verify_epfi)
    p = sub.add_parser("commit", parents=[common, pair], help="commit and honestly reveal")
    p.add_argument("--bit", type=int, choices=(0, 1), default=0)
    p.add_argument("--key", default=None)
    p.set_defaults(func=cmd_commit)
    p = sub.add_parser("attack", parents=[common, pair], help="optimal opening attack against binding")
    p.set_defaults(func=cmd_attack)
    p = sub.add_parser("distill", parents=[common], help="check a distillation or cost certificate")
    p.add_argument("--ensemble", required=True)
    p.add_argument("--circuit", required=True)
    p.add_argument("--target-m", type=int, default=1)
    p.add_argument("--eps", type=float, default=1e-9)
    p.add_argument("--pairs", nargs="*", help="output pairs as A-qubit:B-qubit, e.g. A0:B0")
    p.add_argument("--cost", action="store_true", help="check a cost certificate instead")
    p.add_argument("--n-in", type=int, default=1, help="input Bell pairs for --cost")
    p.set_defaults(func=cmd_distill)
    p = sub.add_parser("locked-demo", parents=[common], help="Pauli-keyed locked entanglement")
    p.add_argument("--pairs", type=int, choices=(1, 2), default=1)
    p.add_argument("--max-gates", type=int, default=None)
    p.set_defaults(func=cmd_locked_demo)
    p = sub.add_parser("report", parents=[common], help="run several suites")
    p.add_argument("--suite", action="append", help=f"comma-separated subset of {','.join(SUITES)}; repeatable")
    p.add_argument("--inject-violation", action="store_true")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, io.FormatError, linalg.InvalidStateError, linalg.DimensionError, locc.LocalityError,
            FileNotFoundError, KeyError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
