"""Command-line entry point: ``rcsp <subcommand> [options] <instance|->``.

Exit codes: 0 solved or feasible, 2 proven infeasible, 3 bad input or
usage, 4 not converged or not found.
"""
from __future__ import annotations

import argparse
import contextlib
import hashlib
import json
import os
import signal
import statistics
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import colgen, fptas, kpaths, labeling, pareto, preprocess
from .core import Instance, InstanceError, Mode, PathOverflowError, format_number, is_feasible
from .generate import random_instance
from .io import InstanceFormatError, parse_instance, serialize_instance

OK, INFEASIBLE, INVALID, NOT_DONE = 0, 2, 3, 4


class UsageError(Exception):
    pass


class Timeout(Exception):
    pass


@dataclass
class RunReport:
    subcommand: str
    digest: str | None
    payload: dict
    lines: list = field(default_factory=list)
    exit_code: int = OK
    wall_time: float = 0.0

    def as_json(self, timing=False) -> dict:
        out = {"subcommand": self.subcommand, "instance_digest": self.digest,
               "exit_code": self.exit_code, "result": self.payload}
        if timing:
            out["wall_time"] = round(self.wall_time, 6)
        return out


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


@contextlib.contextmanager
def time_limit(seconds):
    """Raise ``Timeout`` after ``seconds`` (no-op when unset or unsupported)."""
    if not seconds or not hasattr(signal, "SIGALRM"):
        yield
        return

    def fire(signum, frame):
        raise Timeout(f"timed out after {seconds}s")

    old = signal.signal(signal.SIGALRM, fire)
    signal.setitimer(signal.ITIMER_REAL, seconds)
    try:
        yield
    finally:
        signal.setitimer(signal.ITIMER_REAL, 0)
        signal.signal(signal.SIGALRM, old)


def _num(x):
    return None if x is None else format_number(x)


def _nodes(p):
    return ",".join(map(str, p.nodes))


def _vec(v):
    return ",".join(format_number(x) for x in v)


def _int_list(text):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _range(text):
    vals = _int_list(text)
    if len(vals) != 2:
        raise argparse.ArgumentTypeError(f"expected lo,hi, got {text!r}")
    return tuple(vals)


def _fraction(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")


def _read_instance(name) -> tuple[Instance, str]:
    if name == "-":
        text = sys.stdin.read()
    else:
        with open(name, encoding="utf-8") as fh:
            text = fh.read()
    inst = parse_instance(text)
    digest = hashlib.sha256(serialize_instance(inst).encode()).hexdigest()[:16]
    return inst, digest


# subcommands: each returns (payload, lines, exit code)

def cmd_solve(inst, args):
    sol = labeling.solve_exact(inst, args.algo, args.k)
    payload = {"status": sol.status}
    lines = [f"status={sol.status}"]
    code = OK
    if sol.status == "OPTIMAL":
        payload.update(cost=_num(sol.cost), path=list(sol.path.nodes))
        lines.append(f"cost={_num(sol.cost)} path={_nodes(sol.path)}")
    else:
        code = INFEASIBLE
    if args.frontier:
        front = sorted(sol.frontier, key=lambda lab: lab.values)
        payload["frontier"] = [
            {"values": [_num(v) for v in lab.values], "path": list(lab.path(inst).nodes)}
            for lab in front
        ]
        for lab in front:
            lines.append(f"label values={_vec(lab.values)} path={_nodes(lab.path(inst))}")
    return payload, lines, code


def cmd_preprocess(inst, args):
    if inst.mode is Mode.WINDOWS:
        rep = preprocess.reduce_windows(inst)
        removed_nodes, removed_arcs = list(rep.removed_nodes), list(rep.removed_arcs)
        status = "INFEASIBLE" if rep.infeasible else "REDUCED"
        out, lower, upper = rep.instance, None, None
    else:
        res = preprocess.pretraitement(inst, strict_mode=args.strict)
        removed_nodes, removed_arcs = list(res.removed_nodes), list(res.removed_arcs)
        status, out, lower, upper = res.status, res.instance, res.lower, res.upper
        if status == "OPTIMAL":
            # the pruned graph may no longer hold the witness; emit the witness itself
            keep = set(res.path.arcs)
            out = inst.replace(arcs=tuple(a for k, a in enumerate(inst.arcs) if k in keep))
    text = serialize_instance(out) if out is not None else ""
    payload = {"status": status, "L": _num(lower), "U": _num(upper),
               "removed_nodes": removed_nodes, "removed_arcs": removed_arcs,
               "instance": text}
    lines = text.rstrip("\n").splitlines() if text else []
    if status == "OPTIMAL":
        payload["path"] = list(res.path.nodes)
        lines.append(f"# optimal path={_nodes(res.path)}")
    lines.append(f"# status={status} L={_num(lower) or '-'} U={_num(upper) or '-'} "
                 f"removed_nodes={len(removed_nodes)} removed_arcs={len(removed_arcs)}")
    return payload, lines, INFEASIBLE if status == "INFEASIBLE" else OK


def cmd_fptas(inst, args):
    res = fptas.fptas_solve(inst, args.eps, args.rho)
    payload = {"status": res.status, "eps": _num(res.eps)}
    lines = [f"status={res.status} eps={_num(res.eps)}"]
    if res.status == "INFEASIBLE":
        return payload, lines, INFEASIBLE
    payload.update(cost=_num(res.cost), path=list(res.path.nodes), lb=_num(res.lower),
                   ub=_num(res.upper), iterations=res.iterations,
                   ratio_bound=_num(res.ratio_bound))
    lines.append(f"cost={_num(res.cost)} path={_nodes(res.path)}")
    lines.append(f"lb={_num(res.lower)} ub={_num(res.upper)} iterations={res.iterations} "
                 f"ratio_bound={_num(res.ratio_bound)}")
    return payload, lines, OK


def cmd_pareto(inst, args):
    directions = None
    if args.directions:
        directions = tuple(d.strip().lower() for d in args.directions.split(","))
        bad = [d for d in directions if d not in (pareto.MIN, pareto.MAX)]
        if bad:
            raise UsageError(f"unknown direction(s) {bad}; use min or max")
        if len(directions) != inst.resources + 1:
            raise UsageError(f"need {inst.resources + 1} directions (cost plus each resource)")
    minst = pareto.MultiInstance.from_rcsp(inst, directions)
    front = pareto.pareto_frontier_approx(minst, args.eps)
    members = sorted(front.members, key=lambda p: (p.values, p.nodes))
    payload = {"frontier": [{"values": [_num(v) for v in p.values], "path": list(p.nodes)}
                            for p in members],
               "corners_probed": front.corners_probed, "frontier_size": len(members)}
    lines = [f"values={_vec(p.values)} path={_nodes(p)}" for p in members]
    lines.append(f"corners_probed={front.corners_probed} frontier_size={len(members)}")
    return payload, lines, OK if members else INFEASIBLE


def cmd_kpaths(inst, args):
    if args.first_feasible:
        res = kpaths.first_feasible_by_rank(inst, args.kmax)
        payload = {"status": res.status, "scanned": res.scanned}
        lines = [f"status={res.status} scanned={res.scanned}"]
        if res.status != "FOUND":
            return payload, lines, NOT_DONE
        payload.update(rank=res.rank, cost=_num(res.path.cost), path=list(res.path.nodes))
        lines.append(f"{res.rank} {_num(res.path.cost)} yes {_nodes(res.path)}")
        return payload, lines, OK
    ranked = kpaths.k_shortest(inst, args.k)
    rows = []
    lines = ["rank cost feasible path"]
    for rank, p in enumerate(ranked, start=1):
        ok = is_feasible(inst, p)
        rows.append({"rank": rank, "cost": _num(p.cost), "feasible": ok, "path": list(p.nodes)})
        lines.append(f"{rank} {_num(p.cost)} {'yes' if ok else 'no'} {_nodes(p)}")
    return {"paths": rows}, lines, OK


def cmd_colgen(inst, args):
    res = colgen.colgen_loop(inst, args.tasks, k_columns=args.k, max_iters=args.max_iters)
    lines = ["iter obj new_cols min_redcost"]
    rows = []
    for e in res.log:
        red = _num(e["min_redcost"]) if e["min_redcost"] is not None else "-"
        rows.append({"iter": e["iter"], "obj": _num(e["obj"]), "new_cols": e["new_cols"],
                     "min_redcost": red})
        lines.append(f"{e['iter']} {_num(e['obj'])} {e['new_cols']} {red}")
    lines.append(f"status={res.status} obj={_num(res.objective)} columns={len(res.columns)}")
    payload = {"status": res.status, "objective": _num(res.objective),
               "columns": len(res.columns), "iterations": rows}
    return payload, lines, OK if res.status == "CONVERGED" else NOT_DONE


def _gen(args, seed):
    return random_instance(seed, n=args.n, arc_density=args.density, R=args.resources,
                           cost_range=args.cost_range, consumption_range=args.consumption_range,
                           window_mode=args.mode, wait=args.wait)


def cmd_gen(args):
    inst = _gen(args, args.seed)
    text = serialize_instance(inst)
    return {"instance": text}, text.rstrip("\n").splitlines(), OK


def _timed(fn, timeout):
    t0 = time.perf_counter()
    try:
        with time_limit(timeout):
            value = fn()
    except Timeout:
        return "timeout", time.perf_counter() - t0
    return value, time.perf_counter() - t0


def cmd_bench(args):
    seeds = list(range(args.seed, args.seed + args.seeds))
    exact = ["correction", "fixation", "acyclic"]
    times = {name: [] for name in exact + ["fptas"]}
    timeouts = {name: 0 for name in times}
    agree = 0
    worst = None
    for seed in seeds:  # in seed order
        inst = _gen(args, seed)
        costs = []
        for name in exact:
            sol, dt = _timed(lambda: labeling.solve_exact(inst, name), args.timeout)
            if sol == "timeout":
                timeouts[name] += 1
                costs.append("timeout")
                continue
            times[name].append(dt)
            costs.append(sol.cost)
        if len(set(costs)) == 1 and "timeout" not in costs:
            agree += 1
        res, dt = _timed(lambda: fptas.fptas_solve(inst, args.eps), args.timeout)
        if res == "timeout":
            timeouts["fptas"] += 1
        else:
            times["fptas"].append(dt)
            if res.status != "INFEASIBLE" and costs[0] not in ("timeout", None):
                ratio = Fraction(res.cost) / Fraction(costs[0])
                worst = ratio if worst is None else max(worst, ratio)
    rows = []
    for name in times:
        med = statistics.median(times[name]) if times[name] else None
        rows.append({"algorithm": name, "runs": len(times[name]), "timeouts": timeouts[name],
                     "median_ms": None if med is None else round(med * 1000, 3)})
    payload = {"seeds": len(seeds), "rows": rows,
               "cost_agreement": f"{agree}/{len(seeds)}",
               "fptas_eps": _num(args.eps), "fptas_max_ratio": _num(worst)}
    lines = ["algorithm runs timeouts median_ms"]
    for r in rows:
        med = "-" if r["median_ms"] is None else f"{r['median_ms']:.3f}"
        lines.append(f"{r['algorithm']} {r['runs']} {r['timeouts']} {med}")
    lines.append(f"cost_agreement={agree}/{len(seeds)} fptas_eps={_num(args.eps)} "
                 f"fptas_max_ratio={_num(worst) if worst is not None else '-'}")
    return payload, lines, OK


def _add_gen_flags(p):
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--density", type=float, default=0.4)
    p.add_argument("--resources", type=int, default=1)
    p.add_argument("--cost-range", type=_range, default=(1, 20))
    p.add_argument("--consumption-range", type=_range, default=(0, 10))
    p.add_argument("--mode", choices=["final", "windows"], default="final")
    p.add_argument("--wait", choices=["wait", "nowait"], default="nowait")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit one JSON object")
    common.add_argument("--timeout", type=float, default=None, help="seconds per solve")
    common.add_argument("--timing", action="store_true", help="report wall time")

    parser = _Parser(prog="rcsp", description="Resource-constrained shortest path toolkit")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", parents=[common], help="exact labeling solve")
    p.add_argument("instance")
    p.add_argument("--algo", choices=sorted(labeling.ALGORITHMS), default="correction")
    p.add_argument("-k", type=int, default=1, help="labels kept per dominance class")
    p.add_argument("--frontier", action="store_true", help="print every sink label")

    p = sub.add_parser("preprocess", parents=[common], help="window reduction or bounding")
    p.add_argument("instance")
    p.add_argument("--strict", action="store_true", help="strict cost test")

    p = sub.add_parser("fptas", parents=[common], help="(1+eps)-approximate solve")
    p.add_argument("instance")
    p.add_argument("--eps", type=_fraction, required=True)
    p.add_argument("--rho", type=_fraction, default=Fraction(2))

    p = sub.add_parser("pareto", parents=[common], help="approximate Pareto frontier")
    p.add_argument("instance")
    p.add_argument("--eps", type=_fraction, required=True)
    p.add_argument("--directions", default=None, help="e.g. min,min,max")

    p = sub.add_parser("kpaths", parents=[common], help="paths by increasing cost")
    p.add_argument("instance")
    p.add_argument("-k", type=int, default=5)
    p.add_argument("--first-feasible", action="store_true")
    p.add_argument("--kmax", type=int, default=1000)

    p = sub.add_parser("colgen-demo", parents=[common], help="column generation on node tasks")
    p.add_argument("instance")
    p.add_argument("--tasks", type=_int_list, required=True)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--max-iters", type=int, default=50)

    p = sub.add_parser("gen", parents=[common], help="print a random instance")
    _add_gen_flags(p)

    p = sub.add_parser("bench", parents=[common], help="compare solvers on random instances")
    _add_gen_flags(p)
    p.add_argument("--seeds", type=int, default=20, help="number of consecutive seeds")
    p.add_argument("--eps", type=_fraction, default=Fraction(1, 10))
    return parser


HANDLERS = {
    "solve": cmd_solve,
    "preprocess": cmd_preprocess,
    "fptas": cmd_fptas,
    "pareto": cmd_pareto,
    "kpaths": cmd_kpaths,
    "colgen-demo": cmd_colgen,
}


def run(argv=None) -> RunReport:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        return RunReport("usage", None, {"error": str(e)}, [f"error: {e}"], INVALID)
    if "seed" in args and os.environ.get("RCSP_SEED"):
        try:
            args.seed = int(os.environ["RCSP_SEED"])
        except ValueError:
            return RunReport(args.command, None, {"error": "RCSP_SEED must be an integer"},
                             ["error: RCSP_SEED must be an integer"], INVALID)
    t0 = time.perf_counter()
    digest = None
    try:
        if args.command == "gen":
            payload, lines, code = cmd_gen(args)
        elif args.command == "bench":
            payload, lines, code = cmd_bench(args)
        else:
            inst, digest = _read_instance(args.instance)
            with time_limit(args.timeout):
                payload, lines, code = HANDLERS[args.command](inst, args)
    except Timeout as e:
        payload, lines, code = {"error": str(e)}, [f"error: {e}"], NOT_DONE
    except (OSError, InstanceFormatError, InstanceError, UsageError, ValueError,
            TypeError, PathOverflowError) as e:
        payload, lines, code = {"error": str(e)}, [f"error: {e}"], INVALID
    return RunReport(args.command, digest, payload, lines, code, time.perf_counter() - t0)


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    report = run(argv)
    as_json = "--json" in argv
    timing = "--timing" in argv
    if as_json:
        print(json.dumps(report.as_json(timing), sort_keys=True))
    else:
        out = sys.stderr if report.exit_code == INVALID else sys.stdout
        for line in report.lines:
            print(line, file=out)
        if timing:
            print(f"# wall_time={report.wall_time:.6f}s", file=out)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
