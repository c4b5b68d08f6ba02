"""``sccode`` command line: grade, construct, count.

Exit status is 0 on success, 1 for invalid input and 2 for internal failures.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import secrets
import sys
from concurrent.futures import ProcessPoolExecutor
from contextlib import contextmanager
from pathlib import Path

import numpy as np

from . import __version__, kernels
from .ao import AoConfig, construct_from_distribution
from .cpo import CpoConfig, code_stats
from .cycles import count_protograph_candidates, count_tanner_cycles
from .grade import GradeConfig, grade_pattern
from .io import read_matrix, stats_document, write_json, write_matrix
from .metrics import p6
from .model import CodeParameters, CouplingPattern, EdgeDistribution, ValidationError
from .tc import search_pattern

log = logging.getLogger("sccode")

EXIT_OK, EXIT_INVALID, EXIT_INTERNAL = 0, 1, 2
GRADE_FLAGS = ("epsilon", "alpha", "max_iters")  # w also drives the searches


class StageError(RuntimeError):
    def __init__(self, stage: str, exc: BaseException):
        super().__init__(f"{stage}: {exc}")
        self.stage, self.exc = stage, exc


@contextmanager
def stage(name: str):
    try:
        yield
    except ValidationError:
        raise
    except Exception as exc:
        raise StageError(name, exc) from exc


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def _pattern(text: str) -> CouplingPattern:
    try:
        return CouplingPattern.parse(text)
    except ValidationError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _load_config(path: str) -> dict:
    text = Path(path).read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise ValidationError(f"{path}: top level must be an object")
    return {k.replace("-", "_"): v for k, v in doc.items()}


def _apply_config(parser: argparse.ArgumentParser, args: argparse.Namespace) -> None:
    """Fill flags left at their defaults from ``--config``; explicit flags win."""
    if not getattr(args, "config", None):
        return
    known = {a.dest: a for a in parser._actions}
    for key, value in _load_config(args.config).items():
        if key not in known or key in ("config", "help"):
            raise ValidationError(f"{args.config}: unknown field {key!r}")
        action = known[key]
        if getattr(args, key) != action.default:
            continue
        try:
            if action.type is not None and value is not None:
                value = action.type(str(value) if action.type is _pattern else value)
        except (TypeError, ValueError, argparse.ArgumentTypeError) as exc:
            raise ValidationError(f"{args.config}: field {key!r}: {exc}") from None
        setattr(args, key, value)


def _add_code_args(p):
    # Not argparse-required, so that --config can supply them.
    p.add_argument("--gamma", type=int, help="column weight (rows of the base matrix)")
    p.add_argument("--kappa", type=int, help="row weight (columns of the base matrix)")
    p.add_argument("--memory", type=int, help="coupling memory m")
    p.add_argument("--pattern", type=_pattern, default=None, help="coupling pattern, e.g. 0,1,4")


def _add_grade_args(p):
    p.add_argument("--w", type=float, default=100.0, help="weight of six-cycles against eight-cycles")
    p.add_argument("--epsilon", type=float, default=1e-10, help="stopping threshold on objective change")
    p.add_argument("--alpha", type=float, default=0.01, help="initial step size")
    p.add_argument("--max-iters", dest="max_iters", type=int, default=100_000)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sccode", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("grade", help="optimise the edge distribution over a coupling pattern")
    g.add_argument("--config", help="JSON file with flag values")
    _add_code_args(g)
    _add_grade_args(g)
    g.add_argument("--trace", action="store_true", help="print the objective after every step")
    g.add_argument("--json", dest="json_out", help="also write the result as JSON")

    c = sub.add_parser("construct", help="build a code and write its bundle")
    c.add_argument("--config", help="JSON file with flag values")
    c.add_argument("--mode", choices=("gd", "unf", "tc"), default="gd")
    _add_code_args(c)
    c.add_argument("--pseudo-memory", dest="pseudo_memory", type=int, default=None,
                   help="tc mode: number of nonzero components minus one")
    c.add_argument("-z", "--circulant-size", dest="circulant_size", type=int, default=None)
    c.add_argument("-L", "--replicas", type=int, default=None)
    _add_grade_args(c)
    c.add_argument("--d1", type=int, default=None, help="total reassignment budget")
    c.add_argument("--d2", type=int, default=None, help="per-value reassignment budget")
    c.add_argument("--seed", type=int, default=None)
    c.add_argument("--restarts", type=int, default=1)
    c.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    c.add_argument("--out", default="sccode-out", help="bundle directory")

    n = sub.add_parser("count", help="count cycles of a partition/lifting pair")
    n.add_argument("--partition", required=True)
    n.add_argument("--lifting", required=True)
    _add_code_args(n)
    n.add_argument("-z", "--circulant-size", dest="circulant_size", type=int, required=True)
    n.add_argument("-L", "--replicas", type=int, required=True)
    n.add_argument("--w", type=float, default=100.0)
    n.add_argument("--label", default="", help="code name for the table")
    n.add_argument("--json", dest="json_out", help="write stats JSON here")
    return parser


def _require(args, *names):
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
    if missing:
        raise ValidationError(f"missing required value(s): {', '.join(missing)}")


def _resolve_pattern(args) -> CouplingPattern:
    pattern = args.pattern or CouplingPattern.full(args.memory)
    if pattern.memory != args.memory:
        raise ValidationError(f"pattern {pattern.a} must end at memory {args.memory}")
    return pattern


def cmd_grade(args) -> int:
    _require(args, "gamma", "kappa", "memory")
    pattern = _resolve_pattern(args)
    cfg = GradeConfig(args.epsilon, args.alpha, args.w, args.max_iters)
    res = grade_pattern(args.gamma, args.kappa, pattern, cfg)
    p = np.array(res.dist.p)
    print(f"pattern      {','.join(map(str, pattern.a))}")
    print(f"distribution {' '.join(f'{x:.6f}' for x in p)}")
    print(f"objective    {res.value:.10g}")
    print(f"p6           {p6(pattern, res.dist):.10g}")
    print(f"skew         max/min = {p.max() / p.min():.4f}, max-min = {p.max() - p.min():.6f}")
    print(f"iterations   {res.iterations} ({'converged' if res.converged else 'max_iters reached'})")
    if args.trace:
        for k, v in enumerate(res.trace):
            print(f"  {k:6d} {v:.12g}")
    if args.json_out:
        write_json(args.json_out, {"pattern": list(pattern.a), "distribution": p.tolist(),
                                   "objective": res.value, "trace": res.trace,
                                   "converged": res.converged})
    return EXIT_OK


def _run_restart(job):
    params, dist, ao_cfg, cpo_cfg = job
    with stage(f"construct (seed {ao_cfg.seed})"):
        return construct_from_distribution(params, dist, ao_cfg, cpo_cfg)


def cmd_construct(args) -> int:
    _require(args, "gamma", "kappa", "memory", "circulant_size", "replicas")
    if args.restarts < 1 or args.threads < 1:
        raise ValidationError("--restarts and --threads must be >= 1")
    if args.seed is None:
        args.seed = secrets.randbelow(2**31)
        print(f"seed {args.seed}")
    base = GradeConfig()
    if args.mode == "unf" and any(getattr(args, k) != getattr(base, k) for k in GRADE_FLAGS):
        log.warning("--mode unf uses the uniform distribution; gradient descent flags are ignored")
    if args.mode == "tc":
        _require(args, "pseudo_memory")
        if args.pattern is not None:
            raise ValidationError("--mode tc chooses the pattern itself; drop --pattern")
        with stage("pattern search"):
            pattern = search_pattern(args.memory, args.pseudo_memory, args.gamma, args.kappa, args.w,
                                     GradeConfig(args.epsilon, args.alpha, args.w, args.max_iters))
    else:
        if args.pseudo_memory is not None:
            raise ValidationError("--pseudo-memory applies to --mode tc only")
        pattern = _resolve_pattern(args)
    params = CodeParameters(args.gamma, args.kappa, args.memory, pattern,
                            args.circulant_size, args.replicas)
    if args.mode == "unf":
        dist = EdgeDistribution.uniform(len(pattern))
    else:
        with stage("grade"):
            cfg = GradeConfig(args.epsilon, args.alpha, args.w, args.max_iters)
            dist = grade_pattern(params.gamma, params.kappa, pattern, cfg).dist
    budget = {k: getattr(args, k) for k in ("d1", "d2") if getattr(args, k) is not None}
    jobs = []
    for r in range(args.restarts):
        seed = args.seed + r
        ao_cfg = AoConfig.for_size(params.gamma, params.kappa, w=args.w, seed=seed, **budget)
        jobs.append((params, dist, ao_cfg, CpoConfig(w=args.w, seed=seed)))
    if args.threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=min(args.threads, len(jobs))) as pool:
            results = list(pool.map(_run_restart, jobs))
    else:
        results = [_run_restart(j) for j in jobs]
    best = min(range(len(results)), key=lambda k: (results[k].stats.weighted_objective, k))
    res = results[best]

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    write_matrix(out / "partition.csv", res.partition.entries)
    write_matrix(out / "lifting.csv", res.lifting.entries)
    write_json(out / "stats.json", stats_document(res.stats))
    flags = {k: v for k, v in vars(args).items() if k not in ("pattern", "verbose", "out")}
    write_json(out / "provenance.json", {
        "version": __version__,
        "flags": flags,
        "pattern": list(pattern.a),
        "distribution": list(dist.p),
        "seed": res.seed,
        "restart_objectives": [r.stats.weighted_objective for r in results],
        "params": params.to_dict(),
    })
    s = res.stats
    print(f"mode {args.mode}, pattern {','.join(map(str, pattern.a))}, best seed {res.seed}")
    print(f"protograph candidates: cycle-6 {s.protograph_candidates_6}, cycle-8 {s.protograph_candidates_8}")
    print(f"tanner cycles:         cycle-6 {s.tanner_cycles_6}, cycle-8 {s.tanner_cycles_8}")
    print(f"bundle written to {out}")
    return EXIT_OK


def cmd_count(args) -> int:
    P = read_matrix(args.partition, name="partition")
    gamma = args.gamma if args.gamma is not None else P.shape[0]
    kappa = args.kappa if args.kappa is not None else P.shape[1]
    memory = args.memory if args.memory is not None else int(P.max())
    pattern = args.pattern or CouplingPattern.full(memory)
    params = CodeParameters(gamma, kappa, memory, pattern, args.circulant_size, args.replicas)
    P = read_matrix(args.partition, (gamma, kappa), 0, memory + 1, "partition")
    outside = ~np.isin(P, pattern.a)
    if outside.any():
        i, j = map(int, np.argwhere(outside)[0])
        raise ValidationError(f"{args.partition}: partition entry ({i}, {j}) = {P[i, j]} not in pattern {pattern.a}")
    Lm = read_matrix(args.lifting, (gamma, kappa), 0, args.circulant_size, "lifting")
    c6, c8 = count_protograph_candidates(P)
    conv = {}
    for name in ("full", "period"):
        conv[name] = count_tanner_cycles(P, Lm, params.circulant_size, params.replicas, name)
    stats = code_stats(params, P, Lm, args.w, "full")
    label = args.label or "-"
    head = f"{'(gamma,kappa)':<14}{'Code':<8}{'Level':<26}{'Cycles-6':>12}{'Cycles-8':>14}"
    print(head)
    print("-" * len(head))
    size = f"({gamma},{kappa})"
    print(f"{size:<14}{label:<8}{'protograph candidates':<26}{c6:>12,}{c8:>14,}")
    print(f"{size:<14}{label:<8}{f'tanner, {params.replicas} replicas':<26}{conv['full'][0]:>12,}{conv['full'][1]:>14,}")
    print(f"{size:<14}{label:<8}{'tanner, one period':<26}{conv['period'][0]:>12,}{conv['period'][1]:>14,}")
    if args.json_out:
        write_json(args.json_out, stats_document(
            stats, params=params.to_dict(),
            conventions={k: {"cycles_6": v[0], "cycles_8": v[1]} for k, v in conv.items()}))
    return EXIT_OK


COMMANDS = {"grade": cmd_grade, "construct": cmd_construct, "count": cmd_count}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    log.debug("kernel backend: %s", kernels.BACKEND)
    try:
        sub = parser._subparsers._group_actions[0].choices[args.command]
        _apply_config(sub, args)
        return COMMANDS[args.command](args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except StageError as exc:
        if isinstance(exc.exc, ValidationError):
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_INVALID
        print(f"internal error in {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except Exception as exc:  # noqa: BLE001 - report and map to the internal exit code
        print(f"internal error: {exc!r}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
