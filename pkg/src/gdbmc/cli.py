"""Command-line front end.

Subcommands map one-to-one onto the library modules; every run that
writes files also emits a JSON manifest next to them so the exact
invocation can be replayed.  Graph arguments accept either a path to the
text format of graph.load_graph_file or a bundled asset via
"builtin:<name>" (jam, k4, thrN, alaN).

Exit codes: 0 success, 1 runtime failure (e.g. infeasible LP), 2 usage
error.
"""

import argparse
import json
import math
import os
import sys
import tempfile
import time

import numpy as np

from . import __version__
from .assets import builtin_graph
from .bridge import levy_bridge
from .chirotope import PartialChirotope, RealizationRequest, realize_lp
from .distgeo import (CenteringSchedule, VibrantParams, anneal_and_settle,
                      iterative_centering, vibrant_iteration)
from .entropy import slit_kl
from .graph import conformation_to_csv, in_restricted_space, load_graph_file
from .jumpproc import ProcessConfig, derived_ratios, run
from .lp import SimplexProblem, solve
from .metropolis import PotentialModel, mc_run
from .molecular import PolymerConfig, polymer_demo
from .rng import MersenneTwister
from .tables import CSV_HEADER, reproduce_table, run_cell


def _write_atomic(path, text):
    d = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _manifest(args, outputs):
    params = {k: v for k, v in sorted(vars(args).items())
              if k not in ("func",) and v is not None}
    return json.dumps({"command": " ".join(sys.argv[1:]) or params.get("command", ""),
                       "parameters": params,
                       "outputs": outputs,
                       "version": __version__,
                       "timestamp": time.strftime("%Y-%m-%dT%H:%M:%S")},
                      indent=2, default=str) + "\n"


def _emit(args, path, text):
    _write_atomic(path, text)
    _write_atomic(path + ".manifest.json", _manifest(args, [path]))


def _load_graph(spec):
    if spec.startswith("builtin:"):
        return builtin_graph(spec[len("builtin:"):])
    graph, conf, S, chis = load_graph_file(spec)
    chi = None
    if chis:
        rank = len(chis[0][0])
        chi = PartialChirotope.from_entries(rank, chis)
    return graph, conf, S, chi


def _parse_alpha(text):
    if "/" in text:
        num, den = text.split("/")
        return float(num) / float(den)
    return float(text)


# ---------------------------------------------------------------------------
# subcommands

def cmd_rng_selftest(args):
    rng = MersenneTwister(args.seed)
    for _ in range(10):
        print(rng.raw32())
    return 0


def cmd_bridge_sample(args):
    rng = MersenneTwister(args.seed)
    rows = ["bridge,n," + ",".join("xyzw"[:args.d] if args.d <= 4 else
                                   [f"x{i}" for i in range(args.d)])]
    for b in range(args.count):
        points = levy_bridge(args.K, args.d, rng)
        for n, p in enumerate(points):
            rows.append(f"{b},{n}," + ",".join(repr(float(x)) for x in np.atleast_1d(p)))
    text = "\n".join(rows) + "\n"
    if args.out:
        _emit(args, args.out, text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_process_run(args):
    cell = run_cell(args.kind, args.K, args.j, args.alpha, args.jumps, args.seed)
    text = CSV_HEADER + "\n" + cell.csv_row() + "\n"
    if args.out:
        _emit(args, args.out, text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_table_reproduce(args):
    rows = None
    if args.rows:
        rows = [int(r) for r in args.rows.split(",")]
    cells = reproduce_table(args.table, scale=args.scale, base_seed=args.seed,
                            rows=rows)
    lines = [CSV_HEADER]
    for cell in cells:
        lines.append(cell.csv_row())
    text = "\n".join(lines) + "\n"
    if args.out:
        _emit(args, args.out, text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_entropy_slit(args):
    result = slit_kl(args.q, tol=args.tol)
    print(f"kl_bits {result.bits!r}")
    print(f"error {result.error!r}")
    print(f"window {result.window!r}")
    if not result.converged:
        print("warning: window expansion did not converge", file=sys.stderr)
        return 1
    return 0


def cmd_embed(args):
    graph, conf, S, chi = _load_graph(args.graph)
    if conf is None:
        raise RuntimeError("embedding needs start coordinates in the graph file")
    conf = np.array(conf, dtype=float)
    rng = MersenneTwister(args.seed)
    params = VibrantParams(c=args.c, C=args.C)
    stages = tuple(float(s) for s in args.stages.split(","))
    if S is None or not np.any(S > 0):
        raise RuntimeError("embedding needs positive radii S")
    if args.plain:
        sched = CenteringSchedule(order="random", max_steps=args.max_steps)
        conf, trace = iterative_centering(graph, conf, sched, rng,
                                          chirotope=chi)
        trace_rows = ["step,vertex,displacement,potential"]
        for i, (v, disp, pot) in enumerate(zip(trace.vertices,
                                               trace.displacements,
                                               trace.potentials)):
            trace_rows.append(f"{i},{v},{disp!r},{pot!r}")
        _write_atomic(args.out_trace, "\n".join(trace_rows) + "\n")
        ok = in_restricted_space(graph, conf, S)
    elif len(stages) > 1:
        conf, ok = anneal_and_settle(graph, conf, S, params, chi, rng,
                                     stages=stages,
                                     steps_per_stage=args.max_steps // len(stages))
    else:
        conf, report = vibrant_iteration(graph, conf, S, params, chi, rng,
                                         args.max_steps)
        ok = report.in_space
    _emit(args, args.out_conf, conformation_to_csv(conf))
    print(f"in_restricted_space {ok}")
    return 0 if ok else 1


def cmd_realize(args):
    graph, conf, S, chi = _load_graph(args.graph)
    if chi is None or len(chi) == 0:
        raise RuntimeError("graph has no chirality constraints to realize")
    bases = chi.entries()
    request = RealizationRequest(n=graph.n, bases=bases,
                                 epsilon=args.epsilon)
    result = realize_lp(request)
    if not result.feasible:
        print("infeasible", file=sys.stderr)
        return 1
    _emit(args, args.out, conformation_to_csv(result.conf))
    print(f"min_residual {float(result.residuals.min())!r}")
    return 0


def _load_potential_config(path):
    values = {}
    if path:
        with open(path) as fh:
            for raw in fh:
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                key, _, val = line.partition("=")
                values[key.strip()] = float(val.strip())
    return values


def cmd_mc_run(args):
    graph, conf, S, chi = _load_graph(args.graph)
    if conf is None:
        raise RuntimeError("mc run needs start coordinates")
    conf = np.array(conf, dtype=float)
    pot = _load_potential_config(args.potential)
    model = PotentialModel(kT=args.kT,
                           lj_eps=pot.get("lj_eps", 0.0),
                           lj_sigma=pot.get("lj_sigma", 1.0),
                           lj_cutoff=pot.get("lj_cutoff", 2.5))
    params = VibrantParams(c=args.c, C=args.C)
    rng = MersenneTwister(args.seed)
    conf, report = mc_run(graph, conf, S, model, params, chi, args.sweeps, rng)
    _emit(args, args.out_conf, conformation_to_csv(conf))
    rows = ["sweep,energy,in_space"]
    for i, (e, flag) in enumerate(zip(report.energy_trace, report.in_space_trace)):
        rows.append(f"{i},{e!r},{int(flag)}")
    _write_atomic(args.out_report, "\n".join(rows) + "\n")
    print(f"accepted {report.accepted} rejected {report.rejected} "
          f"fallback {report.fallback_moves}")
    return 0


def cmd_polymer_demo(args):
    results = []
    for seed in range(1, args.seeds + 1):
        cfg = PolymerConfig(n_atoms=args.n, K=args.K, alpha=args.alpha,
                            jumps=args.jumps, fix_last=args.fix_last)
        res, _ = polymer_demo(cfg, seed=seed)
        results.append(res)
    rows = ["seed,axial_drift,twist_angle,acceptance_rate"]
    for r in results:
        rows.append(f"{r.seed},{r.axial_drift!r},{r.twist_angle!r},"
                    f"{r.acceptance_rate!r}")
    text = "\n".join(rows) + "\n"
    if args.out:
        _emit(args, args.out, text)
    else:
        sys.stdout.write(text)
    drifts = [r.axial_drift for r in results]
    mean = sum(drifts) / len(drifts)
    print(f"mean_axial_drift {mean!r}", file=sys.stderr)
    return 0


def cmd_lp_solve(args):
    # minimal text format: one line c, blank, rows of A, blank, line b,
    # optional line "sense max|min"
    with open(args.mps_lite) as fh:
        blocks = [b.strip().splitlines() for b in fh.read().split("\n\n")]
    c = [float(x) for x in blocks[0][0].split()]
    A = [[float(x) for x in row.split()] for row in blocks[1]]
    b = [float(x) for x in blocks[2][0].split()]
    sense = "max"
    if len(blocks) > 3 and blocks[3] and blocks[3][0].startswith("sense"):
        sense = blocks[3][0].split()[1]
    outcome = solve(SimplexProblem(c=c, A=A, b=b, sense=sense))
    print(f"status {outcome.status}")
    if outcome.status == "optimal":
        print("x " + " ".join(repr(float(v)) for v in outcome.x))
        print(f"objective {outcome.objective!r}")
        return 0
    return 1


# ---------------------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(prog="gdbmc",
                                description="Generalized-detailed-balance "
                                "Monte Carlo toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("rng-selftest", help="print first 10 raw generator outputs")
    s.add_argument("--seed", type=int, default=5489)
    s.set_defaults(func=cmd_rng_selftest)

    s = sub.add_parser("bridge", help="Brownian bridge sampling")
    ss = s.add_subparsers(dest="subcommand", required=True)
    b = ss.add_parser("sample")
    b.add_argument("--K", type=int, required=True)
    b.add_argument("--d", type=int, default=1)
    b.add_argument("--count", type=int, default=1)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--out")
    b.set_defaults(func=cmd_bridge_sample)

    s = sub.add_parser("process", help="directed jump processes")
    ss = s.add_subparsers(dest="subcommand", required=True)
    r = ss.add_parser("run")
    r.add_argument("--kind", choices=("N", "W"), required=True)
    r.add_argument("--K", type=int, required=True)
    r.add_argument("--j", type=int, default=0)
    r.add_argument("--pair-mode", action="store_true")
    r.add_argument("--alpha", type=_parse_alpha, default=2 / 3)
    r.add_argument("--jumps", type=int, required=True)
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--out")
    r.set_defaults(func=cmd_process_run)

    s = sub.add_parser("table", help="reproduce the summary tables")
    ss = s.add_subparsers(dest="subcommand", required=True)
    t = ss.add_parser("reproduce")
    t.add_argument("--table", type=int, choices=(1, 2), required=True)
    t.add_argument("--scale", type=float, default=1.0)
    t.add_argument("--seed", type=int, default=0)
    t.add_argument("--rows", help="comma-separated row indices")
    t.add_argument("--out")
    t.set_defaults(func=cmd_table_reproduce)

    s = sub.add_parser("entropy", help="relative-entropy diagnostics")
    ss = s.add_subparsers(dest="subcommand", required=True)
    e = ss.add_parser("slit")
    e.add_argument("--q", type=float, required=True)
    e.add_argument("--tol", type=float, default=1e-3)
    e.set_defaults(func=cmd_entropy_slit)

    s = sub.add_parser("embed", help="distance-geometry embedding")
    s.add_argument("--graph", required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--stages", default="100,10,1")
    s.add_argument("--c", type=float, default=1.1)
    s.add_argument("--C", type=float, default=10.0)
    s.add_argument("--max-steps", type=int, default=1000000)
    s.add_argument("--plain", action="store_true",
                   help="pure centering sweep instead of vibrant")
    s.add_argument("--out-conf", default="embed_conf.csv")
    s.add_argument("--out-trace", default="embed_trace.csv")
    s.set_defaults(func=cmd_embed)

    s = sub.add_parser("realize", help="chirotope realization by LP")
    s.add_argument("--graph", required=True)
    s.add_argument("--epsilon", type=float)
    s.add_argument("--out", default="realize_conf.csv")
    s.set_defaults(func=cmd_realize)

    s = sub.add_parser("mc", help="restricted-space Metropolis MC")
    ss = s.add_subparsers(dest="subcommand", required=True)
    m = ss.add_parser("run")
    m.add_argument("--graph", required=True)
    m.add_argument("--potential", help="key=value potential config file")
    m.add_argument("--sweeps", type=int, required=True)
    m.add_argument("--kT", type=float, default=1.0)
    m.add_argument("--c", type=float, default=1.1)
    m.add_argument("--C", type=float, default=10.0)
    m.add_argument("--seed", type=int, default=0)
    m.add_argument("--out-conf", default="mc_conf.csv")
    m.add_argument("--out-report", default="mc_report.csv")
    m.set_defaults(func=cmd_mc_run)

    s = sub.add_parser("polymer", help="non-equilibrium polymer demo")
    ss = s.add_subparsers(dest="subcommand", required=True)
    d = ss.add_parser("demo")
    d.add_argument("--n", type=int, default=16)
    d.add_argument("--K", type=int, default=2)
    d.add_argument("--alpha", type=_parse_alpha, default=1.0)
    d.add_argument("--jumps", type=int, default=400)
    d.add_argument("--seeds", type=int, default=8)
    d.add_argument("--fix-last", action="store_true")
    d.add_argument("--out")
    d.set_defaults(func=cmd_polymer_demo)

    s = sub.add_parser("lp", help="simplex solver")
    ss = s.add_subparsers(dest="subcommand", required=True)
    l = ss.add_parser("solve")
    l.add_argument("--mps-lite", required=True)
    l.set_defaults(func=cmd_lp_solve)

    return p


def dispatch(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (ValueError, RuntimeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main():
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
