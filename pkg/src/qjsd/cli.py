"""Command-line interface.

Exit codes: 0 success, 1 property failure, 2 invalid input, 3 dimension
mismatch, 4 I/O failure.
"""
import argparse
import shlex
import sys
from typing import List, Optional

import numpy as np

from . import __version__
from . import divergences as qd
from . import io, states, verify
from .entanglement import OptimizerConfig, SeparableAnsatz, assemble, estimate_e_js
from .errors import DimensionMismatch, LengthMismatch, QJSDError
from .states import PureState

EXIT_OK, EXIT_PROPERTY, EXIT_INPUT, EXIT_DIM, EXIT_IO = 0, 1, 2, 3, 4

MEASURES = ("qjsd", "relative-entropy", "trace", "fidelity", "js-fidelity", "bures", "hellinger", "wootters")
DEFAULT_EPS = (1e-1, 1e-2, 1e-3, 1e-4)


class UsageError(Exception):
    pass


def _out(text: str, path: Optional[str]) -> None:
    if path:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


OUTPUT_FLAGS = ("--out", "--dump-sigma")


def _command_line(argv: List[str]) -> str:
    """The invocation minus output paths, which do not affect the report body."""
    kept, skip = [], False
    for a in argv:
        if skip:
            skip = False
            continue
        if a in OUTPUT_FLAGS:
            skip = True
            continue
        if a.startswith(tuple(f + "=" for f in OUTPUT_FLAGS)):
            continue
        kept.append(a)
    return shlex.join(["qjsd"] + kept)


def _to_pure(state) -> np.ndarray:
    if isinstance(state, PureState):
        return state.amplitudes
    es = state.eigensystem
    if es.eigenvalues[-1] < 1.0 - 1e-9:
        raise UsageError("wootters needs pure states (rank-one density matrices)")
    return es.eigenvectors[:, -1]


def _measure(name, a, b) -> float:
    if name == "wootters":
        return qd.wootters_distance(_to_pure(a), _to_pure(b))
    a, b = states.as_density(a), states.as_density(b)
    fn = {
        "qjsd": qd.qjsd,
        "relative-entropy": qd.relative_entropy,
        "trace": qd.trace_distance,
        "fidelity": qd.fidelity,
        "js-fidelity": qd.js_fidelity,
        "bures": qd.bures_distance,
        "hellinger": qd.hellinger_quantum,
    }[name]
    return fn(a, b)


def cmd_dist(args, ctx) -> int:
    a, b = io.read_state(args.file_a), io.read_state(args.file_b)
    if a.dim != b.dim:
        raise DimensionMismatch(f"{args.file_a} has dim {a.dim}, {args.file_b} has dim {b.dim}")
    print(io.fmt(_measure(args.measure, a, b)))
    return EXIT_OK


def cmd_werner_curve(args, ctx) -> int:
    if args.points < 2:
        raise UsageError("--points must be at least 2")
    sig = states.singlet()
    rows = []
    for i in range(args.points):
        F = i / (args.points - 1)
        spectral = qd.qjsd_spectral(states.werner_state(F), sig)
        derived = qd.werner_qjsd_closed_form(F)
        short = qd.werner_qjsd_short_form(F)
        rows.append((F, spectral, derived, short, abs(spectral - derived), abs(spectral - short)))
    header = ("F", "qjsd_spectral", "derived_closed_form", "printed_eq24_value", "abs_spectral_minus_derived",
              "abs_spectral_minus_printed")
    text = io.csv_report(header, rows, io.report_comments(ctx["command"]))
    _out(text, args.out)
    return EXIT_OK


def _dims(args, dim):
    da, db = args.dims
    if da < 1 or db < 1 or da * db != dim:
        raise DimensionMismatch(f"state of dim {dim} does not factor as {da} x {db}")
    return da, db


def cmd_entangle(args, ctx) -> int:
    rho = states.as_density(io.read_state(args.file))
    da, db = _dims(args, rho.dim)
    cfg = OptimizerConfig(restarts=args.restarts, max_iterations=args.max_iterations, tol=args.opt_tol,
                          seed=args.seed, n_terms=args.terms, rebuild_every=args.rebuild_every)
    est = estimate_e_js(rho, da, db, cfg)
    print(f"value: {io.fmt(est.value)}")
    print(f"ppt_verdict: {est.ppt_verdict}")
    print(f"ppt_min_eigenvalue: {io.fmt(est.ppt_min_eigenvalue)}")
    print(f"converged: {'true' if est.converged else 'false'}")
    print(f"iterations: {est.iterations_used}")
    if args.out:
        rows = [(r, i, v) for r, tr in enumerate(est.traces) for i, v in enumerate(tr)]
        io.write_csv(args.out, ("restart", "iteration", "best_value"), rows,
                     io.report_comments(ctx["command"], args.seed))
    if args.dump_sigma:
        io.write_state(args.dump_sigma, est.best_sigma)
    return EXIT_OK


def cmd_holevo(args, ctx) -> int:
    ens = io.read_ensemble(args.manifest)
    chi = qd.generalized_qjsd(ens)
    print(f"chi: {io.fmt(chi)}")
    if args.povm:
        povm = io.read_povm(args.povm)
        info = qd.mutual_information(ens, povm)
        print(f"mutual_information: {io.fmt(info)}")
        print(f"slack: {io.fmt(chi - info)}")
        if chi - info < -1e-9:
            return EXIT_PROPERTY
    return EXIT_OK


def _parse_tols(items) -> dict:
    out = {}
    for item in items or ():
        name, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"--tol expects NAME=VALUE, got {item!r}")
        try:
            out[name] = float(value)
        except ValueError:
            raise UsageError(f"--tol value for {name} is not a number: {value!r}") from None
    return out


def cmd_verify(args, ctx) -> int:
    if args.trials < 1:
        raise UsageError("--trials must be at least 1")
    try:
        report = verify.run_suite(args.suite, args.trials, args.seed, _parse_tols(args.tol))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    comments = io.report_comments(ctx["command"], args.seed) + [f"trials: {args.trials}"]
    failures = report.failures()
    summary = ["result: " + ("pass" if report.ok else f"FAIL ({len(failures)} properties)")]
    for r in failures:
        summary.append(f"failed: {r.prop.name} first failing seed {r.first_failure}"
                       if r.first_failure is not None else f"failed: {r.prop.name}")
    text = io.csv_report(verify.SuiteReport.HEADER, list(report.rows()), comments)
    text += "".join(f"# {s}\n" for s in summary)
    _out(text, args.out)
    if args.out:
        sys.stdout.write("".join(f"{s}\n" for s in summary))
    return EXIT_OK if report.ok else EXIT_PROPERTY


def cmd_neighbor_scan(args, ctx) -> int:
    eps = args.eps or list(DEFAULT_EPS)
    for e in eps:
        if not (0.0 < e <= 0.1):
            raise UsageError(f"epsilon must lie in (0, 0.1], got {e!r}")
    rng = np.random.default_rng(args.seed)
    if args.random is not None:
        if args.random < 2:
            raise UsageError("--random needs a dimension of at least 2")
        d = args.random
        base = states.random_density(d, rng)
        rho = states.make_density(0.8 * base.matrix + 0.2 * np.eye(d) / d)
    elif args.file:
        rho = states.as_density(io.read_state(args.file))
    else:
        raise UsageError("neighbor-scan needs a state file or --random DIM")
    omega = qd.random_traceless_hermitian(rho.dim, rng)
    limit = qd.neighborhood_limit(rho, omega)
    rows = []
    for e in eps:
        near = states.as_density(rho.matrix + e * omega)
        js = qd.qjsd(rho, near)
        b2 = qd.bures_distance(rho, near) ** 2
        rows.append((e, js, b2, 2.0 * js / b2, limit))
    text = io.csv_report(("eps", "qjsd", "bures_sq", "ratio", "predicted_limit"), rows,
                         io.report_comments(ctx["command"], args.seed))
    _out(text, args.out)
    return EXIT_OK


def _floats(xs, what):
    try:
        return [float(x) for x in xs]
    except ValueError:
        raise UsageError(f"{what} expects numbers") from None


def _ints(xs, n, what):
    if len(xs) != n:
        raise UsageError(f"{what} expects {n} integer argument(s)")
    try:
        return [int(x) for x in xs]
    except ValueError:
        raise UsageError(f"{what} expects integers") from None


DUMP_KINDS = ("bell", "werner", "maximally-mixed", "diag", "random-density", "random-pure", "random-separable",
              "random-povm", "computational-povm")


def cmd_dump(args, ctx) -> int:
    kind, p = args.kind, args.params
    rng = np.random.default_rng(args.seed)
    if kind == "bell":
        if len(p) != 1 or p[0] not in ("psi-", "psi+", "phi+", "phi-"):
            raise UsageError("bell expects one of psi-, psi+, phi+, phi-")
        doc = io.state_document(states.bell_state(p[0]))
    elif kind == "werner":
        if len(p) != 1:
            raise UsageError("werner expects F")
        doc = io.state_document(states.werner_state(_floats(p, kind)[0]))
    elif kind == "maximally-mixed":
        (d,) = _ints(p, 1, kind)
        doc = io.state_document(states.maximally_mixed(d))
    elif kind == "diag":
        if not p:
            raise UsageError("diag expects the diagonal entries")
        doc = io.state_document(states.diagonal_state(_floats(p, "diag")))
    elif kind == "random-density":
        (d,) = _ints(p, 1, kind)
        doc = io.state_document(states.random_density(d, rng))
    elif kind == "random-pure":
        (d,) = _ints(p, 1, kind)
        doc = io.state_document(states.random_pure(d, rng))
    elif kind == "random-separable":
        if len(p) not in (2, 3):
            raise UsageError("random-separable expects DIM_A DIM_B [TERMS]")
        vals = _ints(p, len(p), kind)
        terms = vals[2] if len(vals) == 3 else None
        doc = io.state_document(
            assemble(SeparableAnsatz.random(terms or (vals[0] * vals[1]) ** 2, vals[0], vals[1], rng)))
    elif kind == "random-povm":
        d, n = _ints(p, 2, kind)
        doc = io.povm_document(states.random_povm(d, n, rng))
    elif kind == "computational-povm":
        (d,) = _ints(p, 1, kind)
        doc = io.povm_document(states.computational_povm(d))
    else:
        raise UsageError(f"unknown dump kind {kind!r}; choose from {', '.join(DUMP_KINDS)}")
    _out(io.dumps(doc), args.out)
    return EXIT_OK


def _common(parser, top=False):
    default = (lambda v: v) if top else (lambda v: argparse.SUPPRESS)
    parser.add_argument("--seed", type=int, default=default(0), help="master seed (default 0)")
    parser.add_argument("--tol", action="append", default=default(None), metavar="NAME=VALUE",
                        help="override a property tolerance (repeatable)")
    parser.add_argument("--out", default=default(None), metavar="PATH", help="write the report here")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qjsd", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"qjsd {__version__}")
    _common(parser, top=True)
    sub = parser.add_subparsers(dest="verb", required=True, metavar="VERB")
    common = argparse.ArgumentParser(add_help=False)
    _common(common)

    p = sub.add_parser("dist", parents=[common], help="distance between two state files")
    p.add_argument("measure", choices=MEASURES)
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("werner-curve", parents=[common], help="Werner-versus-singlet QJSD on an F grid")
    p.add_argument("--points", type=int, default=101)
    p.set_defaults(func=cmd_werner_curve)

    p = sub.add_parser("entangle", parents=[common], help="estimate the JS entanglement of a state")
    p.add_argument("file")
    p.add_argument("--dims", type=int, nargs=2, required=True, metavar=("DIM_A", "DIM_B"))
    cfg = OptimizerConfig()
    p.add_argument("--restarts", type=int, default=cfg.restarts)
    p.add_argument("--max-iterations", type=int, default=cfg.max_iterations)
    p.add_argument("--opt-tol", type=float, default=cfg.tol, help="optimizer stopping tolerance")
    p.add_argument("--terms", type=int, default=None, help="product terms in the ansatz")
    p.add_argument("--rebuild-every", type=int, default=cfg.rebuild_every)
    p.add_argument("--dump-sigma", metavar="PATH", help="write the best separable state")
    p.set_defaults(func=cmd_entangle)

    p = sub.add_parser("holevo", parents=[common], help="Holevo quantity of an ensemble manifest")
    p.add_argument("manifest")
    p.add_argument("--povm", metavar="FILE")
    p.set_defaults(func=cmd_holevo)

    p = sub.add_parser("verify", parents=[common], help="run the randomized property suite")
    p.add_argument("suite", choices=verify.SUITES + ("all",))
    p.add_argument("--trials", type=int, default=100)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("neighbor-scan", parents=[common], help="2 qjsd / Bures^2 for shrinking perturbations")
    p.add_argument("file", nargs="?")
    p.add_argument("--random", type=int, metavar="DIM")
    p.add_argument("--eps", type=float, nargs="+")
    p.set_defaults(func=cmd_neighbor_scan)

    p = sub.add_parser("dump", parents=[common], help="write a named or random state/POVM file")
    p.add_argument("kind", choices=DUMP_KINDS)
    p.add_argument("params", nargs="*")
    p.set_defaults(func=cmd_dump)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    ctx = {"command": _command_line(argv)}
    try:
        return args.func(args, ctx)
    except (DimensionMismatch, LengthMismatch) as exc:
        print(f"error: dimension mismatch: {exc}", file=sys.stderr)
        return EXIT_DIM
    except (UsageError, QJSDError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: I/O: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
