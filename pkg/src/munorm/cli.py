"""Command-line front-end: load JSON inputs, dispatch, emit JSON reports.

Exit codes: 0 success, 1 a verify suite found violations, 2 invalid
input (bad JSON, bad fields, failed preconditions), 3 a resource cap was
exceeded.  Reports are byte-identical across runs for the same inputs,
options, and seed.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import io as mio
from . import verify
from .circle import (
    avg_trace,
    avg_trace_window,
    conv_norm,
    dt_mu_norm_sq,
    dt_norm,
    rho,
    rho_window_max,
)
from .entropy import (
    DEFAULT_TERM_CAP,
    ks_entropy_at,
    markov_entropy_rate,
    quantum_entropy_rate,
)
from .errors import CapExceeded
from .norm import m_chi, mu_dim, mu_norm_sq
from .spaces import finest_partition

SCHEMA = "mu-norm-lab/1"


def _digest(path: str) -> dict:
    h = hashlib.sha256(Path(path).read_bytes()).hexdigest()
    return {"path": str(path), "sha256": h}


def _check(name: str, value: float, tolerance: float) -> dict:
    return {"name": name, "value": value, "tolerance": tolerance,
            "passed": bool(value <= tolerance)}


def _load_space(args):
    return mio.space_from_obj(mio.load_json(args.space))


def _convert(values, log_base: str):
    factor = 1.0 if log_base == "e" else 1.0 / math.log(2.0)
    if isinstance(values, (list, tuple)):
        return [v * factor for v in values]
    return values * factor


def _cmd_mu_norm(args):
    space = _load_space(args)
    op = mio.operator_from_obj(mio.load_json(args.op), space)
    value = mu_norm_sq(op)
    tol = args.tol if args.tol is not None else 1e-10
    gap = abs(value - m_chi(op, finest_partition(space)))
    results = {"mu_norm_sq": value, "mu_norm": math.sqrt(value)}
    diagnostics = {"checks": [_check("matches-finest-partition", gap, tol)]}
    return {"space": args.space, "op": args.op}, results, diagnostics


def _cmd_m_chi(args):
    space = _load_space(args)
    op = mio.operator_from_obj(mio.load_json(args.op), space)
    chi = mio.partition_from_obj(mio.load_json(args.partition), space.size)
    value = m_chi(op, chi)
    lower = mu_norm_sq(op)
    tol = args.tol if args.tol is not None else 1e-10
    results = {"m_chi": value, "mu_norm_sq": lower}
    diagnostics = {"checks": [_check("dominates-mu-norm", lower - value, tol)]}
    return {"space": args.space, "op": args.op, "partition": args.partition}, results, diagnostics


def _cmd_mu_dim(args):
    space = _load_space(args)
    vectors = mio.matrix_from_obj(mio.load_json(args.basis), "basis")
    value = mu_dim(space, list(vectors), orthonormalize=args.orthonormalize)
    tol = args.tol if args.tol is not None else 1e-10
    results = {"mu_dim": value}
    diagnostics = {"checks": [_check("within-unit-interval",
                                     max(-value, value - 1.0), tol)]}
    return {"space": args.space, "basis": args.basis}, results, diagnostics


def _cmd_entropy(args):
    space = _load_space(args)
    op = mio.operator_from_obj(mio.load_json(args.op), space)
    chi = mio.partition_from_obj(mio.load_json(args.partition), space.size)
    report = quantum_entropy_rate(op, chi, args.N, term_cap=args.cap)
    results = report.to_dict(args.log_base)
    diagnostics = {"term_cap": args.cap,
                   "paths_at_longest_horizon": len(chi.blocks) ** (args.N + 1)}
    return {"space": args.space, "op": args.op, "partition": args.partition}, results, diagnostics


def _cmd_ks_entropy(args):
    space = _load_space(args)
    endo = mio.endomorphism_from_obj(mio.load_json(args.endo), space)
    chi = mio.partition_from_obj(mio.load_json(args.partition), space.size)
    values = [ks_entropy_at(endo, chi, n, term_cap=args.cap) for n in range(args.N + 1)]
    lengths = [n + 1 for n in range(args.N + 1)]
    results = {
        "lengths": lengths,
        "values": _convert(values, args.log_base),
        "rates": _convert([v / n for v, n in zip(values, lengths)], args.log_base),
        "differences": _convert([values[i + 1] - values[i] for i in range(len(values) - 1)],
                                args.log_base),
        "unit": "nats" if args.log_base == "e" else "bits",
    }
    diagnostics = {"term_cap": args.cap,
                   "paths_at_longest_horizon": len(chi.blocks) ** (args.N + 1)}
    return {"space": args.space, "endo": args.endo, "partition": args.partition}, results, diagnostics


def _cmd_markov_rate(args):
    p = mio.matrix_from_obj(mio.load_json(args.p), "transition matrix")
    if np.max(np.abs(p.imag)) > 0:
        raise ValueError("transition matrix must be real")
    nu = mio.distribution_from_obj(mio.load_json(args.dist))
    value = markov_entropy_rate(p.real, nu)
    results = {"entropy_rate": _convert(value, args.log_base),
               "unit": "nats" if args.log_base == "e" else "bits"}
    return {"p": args.p, "dist": args.dist}, results, {}


def _cmd_rho(args):
    seq = mio.seq_from_obj(mio.load_json(args.seq))
    value = rho(seq)
    window = 10**4
    brute = rho_window_max(seq, window)
    tol = args.tol if args.tol is not None else 1e-2
    results = {"rho": value, "left_mean": seq.left_mean, "right_mean": seq.right_mean}
    diagnostics = {"window_length": window,
                   "checks": [_check("window-oracle-agrees", abs(value - brute), tol)]}
    return {"seq": args.seq}, results, diagnostics


def _cmd_conv(args):
    seq = mio.seq_from_obj(mio.load_json(args.seq))
    results = {
        "conv_norm": conv_norm(seq),
        "mu_norm_sq": rho(seq),
        "rho": rho(seq),
        "left_mean": seq.left_mean,
        "right_mean": seq.right_mean,
    }
    return {"seq": args.seq}, results, {}


def _cmd_dt_norm(args):
    op = mio.bandop_from_obj(mio.load_json(args.op))
    return {"op": args.op}, {"dt_norm": dt_norm(op)}, {}


def _cmd_dt_mu_norm(args):
    op = mio.bandop_from_obj(mio.load_json(args.op))
    res = dt_mu_norm_sq(op, quad_points=args.quad)
    tol = args.tol if args.tol is not None else 1e-10
    results = {"quadrature": res.quadrature, "closed_form": res.closed_form}
    diagnostics = {"checks": [_check("quadrature-matches-closed-form",
                                     abs(res.quadrature - res.closed_form), tol)]}
    return {"op": args.op}, results, diagnostics


def _cmd_avg_trace(args):
    op = mio.bandop_from_obj(mio.load_json(args.op))
    value = avg_trace(op)
    window = 1024
    finite = avg_trace_window(op, 0, window - 1)
    results = {"avg_trace": value}
    diagnostics = {"window_length": window, "window_average": finite}
    return {"op": args.op}, results, diagnostics


def _cmd_verify(args):
    checks = verify.run_suite(args.suite, args.trials, args.seed)
    if args.tol is not None:
        for c in checks:
            c.tolerance = args.tol
    results = {
        "suite": args.suite,
        "properties": [c.to_dict() for c in checks],
        "all_passed": all(c.passed for c in checks),
    }
    return {}, results, {"trials": args.trials, "seed": args.seed}


_COMMANDS = {
    "mu-norm": _cmd_mu_norm,
    "m-chi": _cmd_m_chi,
    "mu-dim": _cmd_mu_dim,
    "entropy": _cmd_entropy,
    "ks-entropy": _cmd_ks_entropy,
    "markov-rate": _cmd_markov_rate,
    "rho": _cmd_rho,
    "conv": _cmd_conv,
    "dt-norm": _cmd_dt_norm,
    "dt-mu-norm": _cmd_dt_mu_norm,
    "avg-trace": _cmd_avg_trace,
    "verify": _cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="munorm",
        description="Partition-norm calculator for operators on finite spaces and the circle.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def cmd(name, help_, *flags):
        p = sub.add_parser(name, help=help_)
        for flag in flags:
            if flag == "--space":
                p.add_argument("--space", required=True, help="space JSON file")
            elif flag == "--op":
                p.add_argument("--op", required=True, help="operator JSON file")
            elif flag == "--partition":
                p.add_argument("--partition", required=True, help="partition JSON file")
            elif flag == "--seq":
                p.add_argument("--seq", required=True, help="sequence JSON file")
            elif flag == "--endo":
                p.add_argument("--endo", required=True, help="endomorphism JSON file")
            elif flag == "--basis":
                p.add_argument("--basis", required=True,
                               help="JSON matrix whose rows are basis vectors")
            elif flag == "--dist":
                p.add_argument("--dist", required=True, help="distribution JSON file")
            elif flag == "--p":
                p.add_argument("--p", required=True, help="transition matrix JSON file")
            elif flag == "--N":
                p.add_argument("--N", type=int, required=True, help="largest horizon")
            elif flag == "--quad":
                p.add_argument("--quad", type=int, default=None, help="quadrature points")
            elif flag == "--cap":
                p.add_argument("--cap", type=int, default=DEFAULT_TERM_CAP,
                               help="enumeration term cap")
            elif flag == "--log-base":
                p.add_argument("--log-base", dest="log_base", choices=("e", "2"),
                               default="e", help="report entropies in nats (e) or bits (2)")
            elif flag == "--orthonormalize":
                p.add_argument("--orthonormalize", action="store_true",
                               help="orthonormalize the given spanning set first")
            else:
                raise AssertionError(flag)
        p.add_argument("--tol", type=float, default=None, help="override check tolerance")
        p.add_argument("--out", default=None, help="write the JSON report here")
        return p

    cmd("mu-norm", "squared partition norm of an operator", "--space", "--op")
    cmd("m-chi", "partition functional at a given partition",
        "--space", "--op", "--partition")
    cmd("mu-dim", "dimension of a subspace in the partition norm",
        "--space", "--basis", "--orthonormalize")
    cmd("entropy", "operator path entropy per horizon",
        "--space", "--op", "--partition", "--N", "--cap", "--log-base")
    cmd("ks-entropy", "measure entropy of a map per horizon",
        "--space", "--endo", "--partition", "--N", "--cap", "--log-base")
    cmd("markov-rate", "entropy rate of a Markov chain", "--p", "--dist", "--log-base")
    cmd("rho", "window density of a sequence", "--seq")
    cmd("conv", "convolution operator norms of a sequence", "--seq")
    cmd("dt-norm", "diagonal-type algebra norm", "--op")
    cmd("dt-mu-norm", "squared partition norm of a band operator", "--op", "--quad")
    cmd("avg-trace", "average trace of a band operator", "--op")

    pv = sub.add_parser("verify", help="run a seeded property suite")
    pv.add_argument("--suite", required=True,
                    help="suite name; see README or pass an unknown name to list them")
    pv.add_argument("--trials", type=int, default=100)
    pv.add_argument("--seed", type=int, default=0)
    pv.add_argument("--tol", type=float, default=None, help="override every tolerance")
    pv.add_argument("--out", default=None)

    return parser


def _emit(report: dict, out: str | None) -> None:
    text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = _COMMANDS[args.command]
    try:
        input_paths, results, diagnostics = handler(args)
    except CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return 3
    except (ValueError, TypeError, OSError, json.JSONDecodeError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return 2
    options = {
        k: v for k, v in vars(args).items()
        if k not in ("command", "out") and k not in input_paths and v is not None
    }
    report = {
        "schema": SCHEMA,
        "command": args.command,
        "inputs": {name: _digest(path) for name, path in input_paths.items()},
        "options": options,
        "results": results,
        "diagnostics": diagnostics,
    }
    _emit(report, args.out)
    if args.command == "verify" and not results["all_passed"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
