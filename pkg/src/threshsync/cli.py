"""Command line front end: ``threshsync <subcommand> ...``.

Exit status is 0 on success, 1 on a domain error (reported on stderr as
``ERR <CODE>: <message>``) and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import sys

from . import certifier, dynamics, equilibria, graphs, io, landscape
from .errors import MalformedFile, NotThreshold, ThreshSyncError


def _graph_from(args) -> tuple[graphs.Graph, str]:
    if getattr(args, "code", None) is not None:
        code = graphs.parse_code(args.code)
        return graphs.build_threshold(code), str(code)
    if getattr(args, "graph", None) is not None:
        return io.read_graph(args.graph), str(args.graph)
    raise _Usage("one of --code or --graph is required")


class _Usage(Exception):
    pass


def _cmd_gen(args, out):
    g = graphs.build_threshold(graphs.parse_code(args.code))
    if args.out:
        io.write_graph(g, args.out)
    out.write(f"n={g.n} |E|={g.num_edges} density={g.density!r}\n")


def _cmd_recognize(args, out):
    g = io.read_graph(args.graph)
    try:
        code = graphs.recognize_threshold(g)
    except NotThreshold:
        out.write("NOT_THRESHOLD\n")
        raise
    out.write(f"{code}\n")


def _cmd_landscape(args, out):
    g = io.read_graph(args.graph)
    theta = io.read_angles(args.theta)
    rep = landscape.classify(g, theta)
    out.write(io.dumps(rep.to_dict()) + "\n")


def _params(args) -> dynamics.IntegrationParams:
    return dynamics.IntegrationParams(
        dt=args.dt, t_max=args.tmax, stop_grad_norm=args.stop_grad,
        record_every=args.record_every)


def _cmd_simulate(args, out):
    g = io.read_graph(args.graph)
    theta0 = io.read_angles(args.theta0)
    traj = dynamics.integrate(g, theta0, _params(args))
    with open(args.out, "w") as fh:
        fh.write(traj.to_csv())
    final = landscape.wrap(traj.final)
    out.write(io.dumps({
        "termination": traj.termination.value,
        "t_final": float(traj.times[-1]),
        "records": int(len(traj.times)),
        "final_energy": landscape.energy(g, final),
        "final_diameter": landscape.circular_diameter(final),
    }) + "\n")


def _cmd_ensemble(args, out):
    g, _ = _graph_from(args)
    rep = dynamics.ensemble(g, args.trials, args.seed, _params(args), workers=args.workers)
    out.write(io.dumps(rep.to_dict()) + "\n")


def _cmd_equilibria(args, out):
    g, gid = _graph_from(args)
    cat = equilibria.multistart_search(g, args.starts, args.seed, tol=args.tol, graph_id=gid)
    out.write(io.dumps(cat.to_dict()) + "\n")


def _cmd_certify(args, out):
    code = graphs.parse_code(args.code)
    cert = certifier.certify(code)
    ver = certifier.verify_certificate(graphs.build_threshold(code), cert)
    out.write(io.dumps({
        "certificate": cert.to_dict(),
        "verification": "PASS" if ver.passed else "FAIL",
        "report": ver.to_dict(),
    }) + "\n")
    if not ver.passed:
        return 1


def _cmd_audit(args, out):
    code = graphs.parse_code(args.code)
    g = graphs.build_threshold(code)
    cert = certifier.certify(code)
    rep = certifier.audit_config(g, cert, io.read_angles(args.theta), tol=args.tol)
    out.write(io.dumps(rep.to_dict()) + "\n")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="threshsync", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="build a threshold graph from its code")
    p.add_argument("--code", required=True)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("recognize", help="recover the code of an edge-list graph")
    p.add_argument("--graph", required=True)
    p.set_defaults(func=_cmd_recognize)

    p = sub.add_parser("landscape", help="classify a phase configuration")
    p.add_argument("--graph", required=True)
    p.add_argument("--theta", required=True)
    p.set_defaults(func=_cmd_landscape)

    def integration_flags(p):
        p.add_argument("--dt", type=float, default=0.01)
        p.add_argument("--tmax", type=float, default=1000.0)
        p.add_argument("--stop-grad", type=float, default=1e-8)
        p.add_argument("--record-every", type=int, default=1)

    p = sub.add_parser("simulate", help="integrate the gradient flow")
    p.add_argument("--graph", required=True)
    p.add_argument("--theta0", required=True)
    p.add_argument("--out", required=True)
    integration_flags(p)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("ensemble", help="random-start convergence experiment")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--code")
    src.add_argument("--graph")
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--workers", type=int, default=1)
    integration_flags(p)
    p.set_defaults(func=_cmd_ensemble)

    p = sub.add_parser("equilibria", help="multistart Newton equilibrium catalog")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--code")
    src.add_argument("--graph")
    p.add_argument("--starts", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--tol", type=float, default=1e-10)
    p.set_defaults(func=_cmd_equilibria)

    p = sub.add_parser("certify", help="emit and verify a synchronization certificate")
    p.add_argument("--code", required=True)
    p.set_defaults(func=_cmd_certify)

    p = sub.add_parser("audit", help="check a configuration against the certificate")
    p.add_argument("--code", required=True)
    p.add_argument("--theta", required=True)
    p.add_argument("--tol", type=float, default=1e-6)
    p.set_defaults(func=_cmd_audit)
    return ap


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, stdout) or 0
    except _Usage as exc:
        stderr.write(f"ERR USAGE: {exc}\n")
        return 2
    except (ThreshSyncError, MalformedFile) as exc:
        stderr.write(f"ERR {exc.code}: {exc}\n")
        return 1
    except OSError as exc:
        stderr.write(f"ERR IO_ERROR: {exc}\n")
        return 1


def main():  # pragma: no cover
    sys.exit(run())


if __name__ == "__main__":  # pragma: no cover
    main()
