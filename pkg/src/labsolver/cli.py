"""Command-line interface and benchmark harness.

Subcommands: solve, oracle, eval, convert, bench, fit.  Result records are
single-line key=value pairs; convergence and bench data are CSV with
headers ``nodes,seconds,energy,merit_factor`` and ``n,toggles,nodes,seconds``
so external tooling can plot or fit them directly.

Exit codes: 0 success (solve: proven optimal), 1 runtime/parse failure,
2 usage error, 3 solve terminated by a node or time limit.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys

import numpy as np

from .oracle import enumerate_optimal
from .search import (
    SearchConfig,
    SearchResult,
    solve,
)
from .sequences import (
    RunLengthError,
    correlations,
    decode_rle,
    encode_rle,
)
from .templates import Template, template_from_sequence

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_LIMIT = 3

_RLE_CHARS = set("123456789ABCDEFGHIJKLMNOPQRSTUVWXYZ")
_SPIN_CHARS = set("+-")

# Named toggle bundles for bench runs: (template, symmetry, cancellations,
# reinforcements, baseline_bound).
_NAMED_CONFIGS = {
    "full": (True, True, True, True, False),
    "no-template": (False, True, True, True, False),
    "no-symmetry": (True, False, True, True, False),
    "no-cancel": (True, True, False, True, False),
    "no-reinforce": (True, True, True, False, False),
    "plain": (False, False, False, False, False),
    "baseline": (False, False, False, False, True),
}


def toggles_label(cfg: SearchConfig) -> str:
    """Compact machine-parseable toggle encoding, e.g. TSCR/exact."""
    letters = "".join(
        letter
        for letter, on in (
            ("T", cfg.use_template),
            ("S", cfg.use_symmetry),
            ("C", cfg.use_cancellations),
            ("R", cfg.use_reinforcements),
        )
        if on
    )
    bound = "baseline" if cfg.baseline_bound else "exact"
    return f"{letters or '-'}/{bound}"


def _config_flags(name: str) -> tuple[bool, bool, bool, bool, bool]:
    if name in _NAMED_CONFIGS:
        return _NAMED_CONFIGS[name]
    if "/" in name:  # raw label such as TS/exact
        letters, _, bound = name.partition("/")
        if bound in ("exact", "baseline") and set(letters) <= set("TSCR-"):
            return (
                "T" in letters,
                "S" in letters,
                "C" in letters,
                "R" in letters,
                bound == "baseline",
            )
    raise ValueError(f"unknown toggle configuration {name!r}")


def fit_scaling(ns, nodes) -> tuple[float, float]:
    """Per-step growth base from a least-squares fit of log(nodes) vs n.

    Returns (base, stderr) with the standard error mapped through the
    exponential.  Needs at least 5 strictly positive node counts.
    """
    ns = np.asarray(ns, dtype=float)
    nodes = np.asarray(nodes, dtype=float)
    if len(ns) < 5:
        raise ValueError("scaling fit needs at least 5 data points")
    if np.any(nodes <= 0):
        raise ValueError("scaling fit needs strictly positive node counts")
    coeffs, cov = np.polyfit(ns, np.log(nodes), 1, cov=True)
    base = math.exp(coeffs[0])
    stderr = base * math.sqrt(max(cov[0, 0], 0.0))
    return base, stderr


# ---------------------------------------------------------------------------
# argument plumbing
# ---------------------------------------------------------------------------

def _parse_leading(text: str) -> int:
    if text == "+":
        return 1
    if text == "-":
        return -1
    raise argparse.ArgumentTypeError("leading sign must be + or -")


def _add_solve_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, required=True, help="sequence length")
    p.add_argument("--skew", action="store_true",
                   help="search skew-symmetric sequences only (odd n)")
    p.add_argument("--no-template", action="store_true",
                   help="disable template value ordering")
    p.add_argument("--no-symmetry", action="store_true",
                   help="disable lex-leader symmetry breaking")
    p.add_argument("--no-cancel", action="store_true",
                   help="disable cancellation accounting in the bound")
    p.add_argument("--no-reinforce", action="store_true",
                   help="disable reinforcement floors in the bound")
    p.add_argument("--baseline-bound", action="store_true",
                   help="use the arbitrary-completion bound")
    p.add_argument("--node-limit", type=int, default=None)
    p.add_argument("--time-limit", type=float, default=None,
                   help="wall-clock limit in seconds")
    p.add_argument("--convergence", metavar="PATH", default=None,
                   help="write incumbent improvements to a CSV file")
    p.add_argument("--template", metavar="RLE:<+|->", default=None,
                   help="override the embedded template")


def _config_from_args(args, parser: argparse.ArgumentParser) -> SearchConfig:
    if args.n < 1:
        parser.error("--n must be a positive integer")
    if args.skew and args.n % 2 == 0:
        parser.error("--skew requires odd --n")
    if args.template is not None and args.no_template:
        parser.error("--template conflicts with --no-template")
    override: Template | None = None
    if args.template is not None:
        text, sep, lead = args.template.rpartition(":")
        if not sep or lead not in ("+", "-"):
            parser.error("--template expects RLE:<+|->")
        try:
            seq = decode_rle(text, 1 if lead == "+" else -1)
            override = template_from_sequence(seq, args.n)
        except ValueError as exc:
            parser.error(f"bad --template: {exc}")
    try:
        return SearchConfig(
            n=args.n,
            mode="skew" if args.skew else "general",
            use_template=not args.no_template,
            use_symmetry=not args.no_symmetry,
            use_cancellations=not args.no_cancel,
            use_reinforcements=not args.no_reinforce,
            baseline_bound=args.baseline_bound,
            node_limit=args.node_limit,
            time_limit=args.time_limit,
            template_override=override,
        )
    except ValueError as exc:
        parser.error(str(exc))


def _merit_text(n: int, e: int) -> str:
    if e == 0:
        return "undefined"
    return f"{n * n / (2.0 * e):.4f}"


def _result_record(result: SearchResult, cfg: SearchConfig) -> str:
    seq = result.best
    fields = [
        f"n={cfg.n}",
        f"mode={cfg.mode}",
        f"energy={result.energy}",
        f"merit_factor={_merit_text(cfg.n, result.energy)}",
        f"rle={encode_rle(seq)}",
        f"leading={'+' if seq[0] == 1 else '-'}",
        f"nodes={result.nodes}",
        f"proven_optimal={'true' if result.proven_optimal else 'false'}",
        f"elapsed={result.elapsed:.3f}",
    ]
    return " ".join(fields)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _cmd_solve(args) -> int:
    cfg = _config_from_args(args, args.parser)
    sink = None
    conv_file = None
    writer = None
    if args.convergence:
        conv_file = open(args.convergence, "w", newline="")
        writer = csv.writer(conv_file)
        writer.writerow(["nodes", "seconds", "energy", "merit_factor"])

        def sink(rec):
            writer.writerow(
                [rec.nodes, f"{rec.elapsed:.3f}", rec.energy,
                 _merit_text(cfg.n, rec.energy)]
            )

    try:
        result = solve(cfg, sink=sink)
    finally:
        if conv_file is not None:
            conv_file.close()
    print(_result_record(result, cfg))
    return EXIT_OK if result.proven_optimal else EXIT_LIMIT


def _cmd_oracle(args) -> int:
    if args.n < 1:
        args.parser.error("--n must be a positive integer")
    n_max = args.n_max if args.n_max is not None else args.n
    if n_max < args.n:
        args.parser.error("--n-max must be >= --n")
    mode = "skew" if args.skew else "general"
    step = 2 if args.skew else 1
    start = args.n
    if args.skew and start % 2 == 0:
        args.parser.error("--skew requires odd --n")
    for n in range(start, n_max + 1, step):
        res = enumerate_optimal(n, mode)
        print(
            f"n={n} energy={res.energy} "
            f"merit_factor={_merit_text(n, res.energy)} "
            f"count={res.count} rle={encode_rle(res.sequence)} "
            f"leading={'+' if res.sequence[0] == 1 else '-'}"
        )
    return EXIT_OK


def _cmd_eval(args) -> int:
    seq = decode_rle(args.text, args.leading)
    cs = correlations(seq)
    e = sum(c * c for c in cs)
    print(f"n={len(seq)}")
    print(f"correlations={','.join(str(c) for c in cs)}")
    print(f"energy={e}")
    print(f"merit_factor={_merit_text(len(seq), e)}")
    return EXIT_OK


def _cmd_convert(args) -> int:
    text = args.text
    if not text:
        raise RunLengthError("empty input")
    chars = set(text)
    if chars <= _SPIN_CHARS:
        seq = tuple(1 if c == "+" else -1 for c in text)
        print(encode_rle(seq))
    elif chars <= _RLE_CHARS:
        seq = decode_rle(text, args.leading)
        print("".join("+" if v == 1 else "-" for v in seq))
    else:
        raise RunLengthError(
            "input is neither run-length text nor a +/- sequence"
        )
    return EXIT_OK


def _cmd_bench(args) -> int:
    # An empty range is fine: the CSV is just its header then.
    try:
        names = [s for s in args.configs.split(",") if s]
        flag_sets = [(name, _config_flags(name)) for name in names]
    except ValueError as exc:
        args.parser.error(str(exc))
    step = 2 if args.skew else 1
    start = args.n_min
    if args.skew and start % 2 == 0:
        start += 1
    out = open(args.output, "w", newline="") if args.output else sys.stdout
    try:
        writer = csv.writer(out)
        writer.writerow(["n", "toggles", "nodes", "seconds"])
        for n in range(start, args.n_max + 1, step):
            for _, (tpl, sym, can, rei, base) in flag_sets:
                cfg = SearchConfig(
                    n=n,
                    mode="skew" if args.skew else "general",
                    use_template=tpl,
                    use_symmetry=sym,
                    use_cancellations=can,
                    use_reinforcements=rei,
                    baseline_bound=base,
                )
                result = solve(cfg)
                writer.writerow(
                    [n, toggles_label(cfg), result.nodes,
                     f"{result.elapsed:.3f}"]
                )
                out.flush()
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK


def _cmd_fit(args) -> int:
    stream = sys.stdin if args.csv == "-" else open(args.csv, newline="")
    try:
        rows = list(csv.DictReader(stream))
    finally:
        if stream is not sys.stdin:
            stream.close()
    groups: dict[str, list[tuple[int, int]]] = {}
    for row in rows:
        label = row["toggles"]
        if args.toggles and label != args.toggles:
            continue
        groups.setdefault(label, []).append((int(row["n"]), int(row["nodes"])))
    if not groups:
        raise ValueError("no matching bench rows to fit")
    for label in sorted(groups):
        pts = sorted(groups[label])
        base, stderr = fit_scaling([p[0] for p in pts], [p[1] for p in pts])
        print(
            f"toggles={label} base={base:.4f} stderr={stderr:.4f} "
            f"points={len(pts)}"
        )
    return EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="labsolver",
        description="Exact branch-and-bound solver for low-autocorrelation "
                    "binary sequences.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="run the branch-and-bound search")
    _add_solve_flags(p_solve)
    p_solve.set_defaults(func=_cmd_solve, parser=p_solve)

    p_oracle = sub.add_parser("oracle", help="brute-force optimal energies")
    p_oracle.add_argument("--n", type=int, required=True)
    p_oracle.add_argument("--n-max", type=int, default=None)
    p_oracle.add_argument("--skew", action="store_true")
    p_oracle.set_defaults(func=_cmd_oracle, parser=p_oracle)

    p_eval = sub.add_parser("eval", help="evaluate a run-length sequence")
    p_eval.add_argument("text", help="run-length text")
    p_eval.add_argument("--leading", type=_parse_leading, default=1)
    p_eval.set_defaults(func=_cmd_eval, parser=p_eval)

    p_conv = sub.add_parser(
        "convert", help="convert between run-length and +/- text"
    )
    p_conv.add_argument("text")
    p_conv.add_argument("--leading", type=_parse_leading, default=1)
    p_conv.set_defaults(func=_cmd_convert, parser=p_conv)

    p_bench = sub.add_parser("bench", help="node-count benchmark sweep")
    p_bench.add_argument("--n-min", type=int, required=True)
    p_bench.add_argument("--n-max", type=int, required=True)
    p_bench.add_argument("--skew", action="store_true")
    p_bench.add_argument("--configs", default="full,baseline",
                         help="comma-separated config names or raw labels")
    p_bench.add_argument("--output", default=None, help="CSV path")
    p_bench.set_defaults(func=_cmd_bench, parser=p_bench)

    p_fit = sub.add_parser("fit", help="fit growth base to bench output")
    p_fit.add_argument("csv", help="bench CSV path, or - for stdin")
    p_fit.add_argument("--toggles", default=None,
                       help="fit only this toggles label")
    p_fit.set_defaults(func=_cmd_fit, parser=p_fit)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (RunLengthError, ValueError, KeyError, OSError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
