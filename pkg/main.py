import argparse
import logging
import sys
from pathlib import Path
from typing import Optional

from common.errors import SteinerSentryError
from common.logger import setup_logger
from config.family_manager import FamilyManager
from config.settings import get_settings
from generators.lower_bounds import (
    gen_bipartite_lb,
    gen_capacity_lb,
    gen_reporting_lb,
    read_bipartite,
    read_matrix,
)
from generators.random_graphs import gen_random, parse_weight_range, random_bipartite, random_matrix
from graph.graph_io import load_graph, write_graph
from oracle.cap_oracle import cap_query
from oracle.cut_oracle import build_full_oracle, canonical_answer_text, cut_query, space_report
from oracle.serialization import read_oracle_file, write_oracle_file
from verify.property_suite import counterexample_texts, run_corpus, run_property_suite

logger = logging.getLogger(__name__)


# ----------------------------------------------------------------------
# Commands
# ----------------------------------------------------------------------

def cmd_build(args) -> int:
    g = load_graph(args.graph)
    oracle = build_full_oracle(g)
    write_oracle_file(oracle, args.output)

    report = space_report(oracle)
    print(f"lambda_s={oracle.lambda_s}")
    print(f"words_type1={report.words_type1} words_gh={report.words_gh} "
          f"words_type3={report.words_type3} words_captree={report.words_captree} words_total={report.total}")
    logger.info(f"✅ Oracle written to {args.output}")
    return 0


def cmd_cap(args) -> int:
    oracle = read_oracle_file(args.oracle)
    answer = cap_query(oracle.cap_tree, args.u, args.v, args.delta)
    print(answer.to_text())
    return 0


def cmd_cut(args) -> int:
    oracle = read_oracle_file(args.oracle)
    answer = cut_query(oracle, args.u, args.v, args.delta)
    for line in canonical_answer_text(answer, oracle.graph.n):
        print(line)
    return 0


def cmd_verify(args) -> int:
    settings = get_settings()
    seed = settings.seed if args.seed is None else args.seed

    if args.graph:
        report = run_property_suite(load_graph(args.graph), seed=seed)
    else:
        report = run_corpus(args.count, seed=seed, n_range=(args.min_n, args.max_n))

    sys.stdout.write(report.to_text())

    if args.report_json:
        Path(args.report_json).write_text(report.to_json(), encoding="utf-8")
    if args.counterexamples and report.failing_graphs:
        out_dir = Path(args.counterexamples)
        out_dir.mkdir(parents=True, exist_ok=True)
        for i, text in enumerate(counterexample_texts(report)):
            (out_dir / f"counterexample_{i:03d}.txt").write_text(text, encoding="utf-8")
        logger.warning(f"⚠️ Wrote {len(report.failing_graphs)} counterexample graphs to {out_dir}")

    return 0 if report.passed else 1


def cmd_gen(args) -> int:
    settings = get_settings()
    seed = settings.seed if getattr(args, "seed", None) is None else args.seed
    comment = ""

    if args.kind == "random":
        g = gen_random(args.n, args.density, parse_weight_range(args.weights), args.steiner_fraction, seed,
                       steiner_count=args.steiner)
        comment = f"random n={args.n} density={args.density} weights={args.weights} seed={seed}"

    elif args.kind == "matrix":
        matrix = read_matrix(Path(args.input).read_text(encoding="utf-8")) if args.input \
            else random_matrix(_require_n(args), seed)
        g, layout = gen_capacity_lb(matrix, args.steiner)
        comment = f"G(M) rows={list(layout.left)} cols={list(layout.right)} infinity={layout.infinity}"

    elif args.kind == "bipartite":
        adjacency = read_bipartite(Path(args.input).read_text(encoding="utf-8")) if args.input \
            else random_bipartite(_require_n(args), args.density, seed)
        g, layout = gen_bipartite_lb(adjacency, args.steiner)
        comment = f"G(B) left={list(layout.left)} right={list(layout.right)} infinity={layout.infinity}"

    else:
        h = load_graph(args.graph)
        g, params = gen_reporting_lb(h, attach=args.attach, allow_scaling=not args.no_scaling)
        comment = (f"G_s(H) lambda={params.lam} alpha={params.alpha} lambda_prime={params.lam_prime} "
                   f"s={params.s} attach={params.attach} scale={params.scale}")

    text = write_graph(g, comment)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
        logger.info(f"✅ Wrote {g} to {args.output}")
    else:
        sys.stdout.write(text)
    return 0


def _require_n(args) -> int:
    if args.n is None:
        raise SteinerSentryError("either --input or --n is required", code="missing_argument")
    return args.n


def cmd_bench(args) -> int:
    # Imported here: only bench needs the timing harness
    from bench.benchmark import fit_exponent, run_bench, to_json, to_table

    family = FamilyManager().load(args.family)
    rows = run_bench(family, queries=args.queries, with_baseline=not args.no_baseline)
    sys.stdout.write(to_table(rows))
    slope = fit_exponent(rows)
    if slope is not None:
        print(f"# words ~ n^{slope:.2f}")
    if args.json:
        Path(args.json).write_text(to_json(rows), encoding="utf-8")
    return 0


# ----------------------------------------------------------------------
# Parser
# ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="steiner-sentry",
                                     description="Single-edge-failure sensitivity oracles for Steiner mincuts")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG")
    parser.add_argument("--log-level", default=None, help="explicit log level (overrides -v)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="build an oracle from a graph file")
    p.add_argument("-g", "--graph", required=True)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_build)

    for name, func, text in (("cap", cmd_cap, "post-failure Steiner mincut capacity"),
                             ("cut", cmd_cut, "post-failure Steiner mincut")):
        p = sub.add_parser(name, help=text)
        p.add_argument("-o", "--oracle", required=True, help="oracle file written by build")
        p.add_argument("-u", type=int, required=True)
        p.add_argument("-v", type=int, required=True)
        p.add_argument("-d", "--delta", type=int, required=True)
        p.set_defaults(func=func)

    p = sub.add_parser("verify", help="check every property against brute force")
    p.add_argument("-g", "--graph", default=None, help="single graph; omit for the seeded random corpus")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--count", type=int, default=50)
    p.add_argument("--min-n", type=int, default=4)
    p.add_argument("--max-n", type=int, default=12)
    p.add_argument("--report-json", default=None)
    p.add_argument("--counterexamples", default=None, help="directory for failing graphs")
    p.set_defaults(func=cmd_verify)

    gen = sub.add_parser("gen", help="generate fixtures")
    gen_sub = gen.add_subparsers(dest="kind", required=True)

    p = gen_sub.add_parser("random")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--density", type=float, default=0.5)
    p.add_argument("--weights", default="1-10")
    p.add_argument("--steiner-fraction", type=float, default=0.5)
    p.add_argument("--steiner", type=int, default=None, help="explicit |S|")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("-o", "--output", default=None)

    p = gen_sub.add_parser("matrix")
    p.add_argument("--input", default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--steiner", type=int, default=None)
    p.add_argument("-o", "--output", default=None)

    p = gen_sub.add_parser("bipartite")
    p.add_argument("--input", default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--density", type=float, default=0.5)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--steiner", type=int, default=None)
    p.add_argument("-o", "--output", default=None)

    p = gen_sub.add_parser("gsh")
    p.add_argument("-g", "--graph", required=True)
    p.add_argument("--attach", type=int, default=None)
    p.add_argument("--no-scaling", action="store_true")
    p.add_argument("-o", "--output", default=None)
    gen.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="space/time sweep over a graph family")
    p.add_argument("--family", required=True, help="family name or inline spec")
    p.add_argument("--queries", type=int, default=200)
    p.add_argument("--json", default=None)
    p.add_argument("--no-baseline", action="store_true")
    p.set_defaults(func=cmd_bench)

    return parser


def _log_level(args) -> str:
    if args.log_level:
        return args.log_level
    if args.verbose >= 2:
        return "DEBUG"
    if args.verbose == 1:
        return "INFO"
    return get_settings().log_level


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logger('root', level=_log_level(args), stream=sys.stderr)

    try:
        return args.func(args)
    except SteinerSentryError as e:
        logger.error(f"❌ {args.command} failed [{e.code}]: {e}")
        print(f"error: {e.code}: {e}", file=sys.stderr)
        return e.exit_code
    except OSError as e:
        logger.error(f"❌ {args.command} failed: {e}")
        print(f"error: io: {e}", file=sys.stderr)
        return 2


if __name__ == '__main__':
    sys.exit(main())
