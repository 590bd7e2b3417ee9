"""Command line: ``ergbounds generate|solve|bounds|density|experiment|summarize``.

Every subcommand is a thin adapter around a library call. Exit codes:
0 success, 1 a precondition or parameter constraint fails (the JSON output
still carries the reason), 2 malformed input or I/O failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field

from . import FormatError, PreconditionError, __version__
from . import bounds, density, solvers
from .model import Graph, ModelSpec, build_matrix, load_model, sample_graph
from .montecarlo import ExperimentConfig, ExperimentResult, run_experiment, summarize


@dataclass
class CommandOutcome:
    code: int
    outputs: list[str] = field(default_factory=list)
    summary: str = ""


class _ArgError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # report usage errors as exceptions so run_command never exits the process
    def error(self, message):
        raise _ArgError(message)


def _clean(obj):
    """Make a payload strict-JSON: non-finite floats become strings, tuples lists."""
    if isinstance(obj, float):
        if math.isnan(obj):
            return "nan"
        if math.isinf(obj):
            return "inf" if obj > 0 else "-inf"
        return obj
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if hasattr(obj, "item") and not isinstance(obj, (str, bytes)):
        return _clean(obj.item())
    return obj


def dumps(payload) -> str:
    return json.dumps(_clean(payload), indent=2, sort_keys=True, allow_nan=False) + "\n"


def _read_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: malformed JSON ({exc})") from exc


def load_graph(path) -> Graph:
    return Graph.from_json(_read_json(path))


def save_result(value, path=None) -> str:
    """Write ``value`` (anything with ``to_json`` or a JSON payload) to ``path`` or stdout."""
    payload = value.to_json() if hasattr(value, "to_json") else value
    text = dumps(payload)
    _write(text, path)
    return path or "<stdout>"


def _write(text: str, path=None):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="") as fh:
            fh.write(text)


def _model_from_args(args, required=True) -> ModelSpec | None:
    if getattr(args, "model", None):
        model = load_model(args.model)
        if getattr(args, "n", None) is not None and args.n != model.n:
            model = model.with_n(args.n)
        return model
    n = getattr(args, "n", None)
    fam = None
    if getattr(args, "p", None) is not None:
        fam = ModelSpec(n=n, family="constant", p=args.p) if n is not None else None
    elif getattr(args, "theta1", None) is not None and n is not None:
        fam = ModelSpec(n=n, family="power-law-sparse", theta1=args.theta1)
    elif getattr(args, "theta2", None) is not None and n is not None:
        fam = ModelSpec(n=n, family="near-complete", theta2=args.theta2)
    if fam is None and required:
        raise PreconditionError("give --model FILE or --n with one of --p/--theta1/--theta2")
    return fam


# ----------------------------------------------------------- subcommands

def cmd_generate(args):
    model = load_model(args.model)
    g = sample_graph(build_matrix(model), args.seed, args.trial)
    return g.to_json(), f"sampled graph n={g.n} edges={g.num_edges} seed={args.seed} trial={args.trial}"


def cmd_solve(args):
    g = load_graph(args.graph)
    r = solvers.solve(g, args.what, args.budget)
    shown = r.value if r.exact else list(r.interval)
    return r.to_json(), f"{r.quantity} = {shown} ({'exact' if r.exact else 'interval'})"


_BOUND_KEYS = ("epsilon", "mean", "u_n", "log_inv_tn", "p_n", "f_n", "fn_log_n", "alpha1",
               "alpha2", "a", "eta", "gamma", "xi", "zeta", "delta", "beta", "alpha", "q",
               "L", "a_floor", "x", "case")


def cmd_bounds(args):
    model = _model_from_args(args, required=False)
    kw = {k: getattr(args, k) for k in _BOUND_KEYS if getattr(args, k, None) not in (None, False)}
    if args.n is not None:
        kw["n"] = args.n
    if args.statement == "recursion" and args.p is not None:
        kw["p"] = args.p
    elif args.p is not None and "p_n" not in kw and model is None:
        kw["p_n"] = args.p
    out = bounds.evaluate(args.statement, model=model, **kw)
    if isinstance(out, bounds.BoundReport):
        return out.to_json(), (f"{out.statement_id}: threshold {out.threshold:.6g}, "
                               f"guarantee {out.guarantee_clamped:.6g}")
    if isinstance(out, bounds.Window):
        lo, hi = out.integer_window
        return out.to_json(), (f"{args.statement}: window [{out.lower.threshold:.6g}, "
                               f"{out.upper.threshold:.6g}], integer [{lo}, {hi}]")
    if isinstance(out, tuple):
        return {"x": args.x, "log_bounds": list(out)}, f"log bounds at x={args.x}: {out}"
    payload = out.to_json()
    return payload, f"{args.statement}: done"


def cmd_density(args):
    matrix = build_matrix(load_model(args.model))
    if (args.a is None) == (args.u_n is None):
        raise PreconditionError("give exactly one of --a (density floor) or --u-n (log-average)")
    if args.a is not None:
        c = density.min_average_density(matrix, args.a)
        return c.to_json(), f"p_floor = {c.p_floor!r} (m = {c.m})"
    r = density.log_average_tn(matrix, args.u_n, args.enumeration_limit)
    return r.to_json(), f"log(1/t_n) in [{r.lower!r}, {r.upper!r}] ({r.mode})"


def cmd_experiment(args):
    config = ExperimentConfig.from_json(_read_json(args.config), seed=args.seed)
    result = run_experiment(config, workers=args.workers)
    if args.csv:
        _write(summarize([result]), args.csv)
    parts = [f"{o.event.label}: {o.successes}/{o.trials} {o.verdict}" for o in result.outcomes]
    return result.to_json(), "; ".join(parts)


def cmd_summarize(args):
    results = [ExperimentResult.from_json(_read_json(p)) for p in args.results]
    return summarize(results), f"{sum(len(r.outcomes) for r in results)} rows"


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ergbounds", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("generate", help="sample a graph from a model")
    p.add_argument("--model", required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--trial", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("solve", help="clique, independence or chromatic number of a graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--what", default="clique",
                   choices=["clique", "omega", "independence", "alpha", "chromatic", "chi",
                            "sandwich", "greedy"])
    p.add_argument("--budget", type=int, default=solvers.DEFAULT_BUDGET)
    p.add_argument("--out")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("bounds", help="evaluate a bound at finite n")
    p.add_argument("--statement", required=True, choices=bounds.STATEMENTS)
    p.add_argument("--model")
    p.add_argument("--n", type=int)
    p.add_argument("--p", type=float)
    p.add_argument("--theta1", type=float)
    p.add_argument("--theta2", type=float)
    p.add_argument("--fn-log-n", action="store_true", help="use f_n = log n")
    for name in _BOUND_KEYS:
        if name in ("fn_log_n", "case"):
            continue
        p.add_argument("--" + name.replace("_", "-"), dest=name,
                       type=int if name in ("q", "L") else float)
    p.add_argument("--case", choices=[f"{k}-{c}" for k in ("clq", "chr") for c in ("i", "ii", "iii")])
    p.add_argument("--out")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("density", help="density floor or log-average parameter of a model")
    p.add_argument("--model", required=True)
    p.add_argument("--a", type=float)
    p.add_argument("--u-n", dest="u_n", type=float)
    p.add_argument("--enumeration-limit", type=int, default=density.ENUMERATION_LIMIT)
    p.add_argument("--out")
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("experiment", help="run a seeded Monte Carlo experiment")
    p.add_argument("--config", required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--csv", help="also write the one-experiment CSV table here")
    p.add_argument("--out")
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("summarize", help="CSV table from experiment result files")
    p.add_argument("results", nargs="*")
    p.add_argument("--out")
    p.set_defaults(func=cmd_summarize)
    return parser


def run_command(argv) -> CommandOutcome:
    try:
        args = build_parser().parse_args(list(argv))
    except _ArgError as exc:
        sys.stderr.write(f"ergbounds: {exc}\n")
        return CommandOutcome(2, [], str(exc))
    except SystemExit as exc:  # --help / --version
        return CommandOutcome(0 if not exc.code else 2, [], "")
    out = args.out
    try:
        payload, summary = args.func(args)
    except FormatError as exc:
        sys.stderr.write(f"ergbounds: {exc}\n")
        return CommandOutcome(2, [], str(exc))
    except OSError as exc:
        sys.stderr.write(f"ergbounds: {exc}\n")
        return CommandOutcome(2, [], str(exc))
    except PreconditionError as exc:
        reason = str(exc)
        try:
            where = save_result({"error": {"code": 1, "type": type(exc).__name__,
                                           "reason": reason}}, out)
        except OSError as io_exc:
            sys.stderr.write(f"ergbounds: {io_exc}\n")
            return CommandOutcome(2, [], str(io_exc))
        sys.stderr.write(f"ergbounds: {reason}\n")
        return CommandOutcome(1, [where], reason)
    try:
        if isinstance(payload, str):
            _write(payload, out)
            where = out or "<stdout>"
        else:
            where = save_result(payload, out)
    except OSError as exc:
        sys.stderr.write(f"ergbounds: {exc}\n")
        return CommandOutcome(2, [], str(exc))
    if out:
        sys.stderr.write(summary + "\n")
    return CommandOutcome(0, [where], summary)


def main(argv=None) -> int:
    return run_command(sys.argv[1:] if argv is None else argv).code


if __name__ == "__main__":
    sys.exit(main())
