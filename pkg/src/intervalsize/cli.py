"""Command-line front end: `intervalsize <subcommand> ...`.

Every subcommand prints one tab-delimited row per computed value with its
oracle value and a match flag, then a final `result` line.  The exit status
is 0 exactly when every comparison matched.
"""

import argparse
import json
import sys
from dataclasses import dataclass, field
from importlib import resources

from . import catalog, checks, cluster, divisors, monsat
from .constructed import eval_triple
from .errors import IntervalSizeError, UnknownInstance
from .order_core import DEFAULT_UNIVERSE_CAP, interval_size_bruteforce
from .space_traversal import build_space_order, fpspace_interval_size, singleton_flag
from .tm_core import EncodedTM, load_tm_spec
from .words import is_word, words_up_to


@dataclass
class Report:
    command: str
    columns: list
    rows: list = field(default_factory=list)
    figure: dict = None

    @property
    def ok(self):
        return all(row[-1] in (True, None) for row in self.rows)

    def emit(self, fmt, out):
        if fmt == "json":
            rows = [dict(zip(self.columns, row)) for row in self.rows]
            json.dump({"command": self.command, "rows": rows, "ok": self.ok}, out, indent=2)
            out.write("\n")
            return
        out.write("\t".join(self.columns) + "\n")
        for row in self.rows:
            cells = [_cell(v) for v in row[:-1]] + [_flag(row[-1])]
            out.write("\t".join(cells) + "\n")
        out.write(f"result\t{'pass' if self.ok else 'fail'}\n")


def _flag(v):
    return {True: "match", False: "MISMATCH", None: "-"}[v]


def _cell(v):
    if isinstance(v, bool):
        return "yes" if v else "no"
    if v is None:
        return "-"
    return "ε" if v == "" else str(v)


def _words(args, default_len):
    xs = args.x if args.x else list(words_up_to(default_len if args.max_len is None
                                                else args.max_len))
    for x in xs:
        if not is_word(x):
            raise UnknownInstance(f"{x!r} is not a binary word")
    return xs


def cmd_interval(args):
    triple = catalog.build_triple(args.construction, args.instance)
    report = Report("interval", ["construction", "instance", "x", "mode", "size", "oracle",
                                 "match"])
    for x in _words(args, 2):
        size = eval_triple(triple, x, mode=args.mode, step_budget=args.budget,
                           cap=args.cap_universe)
        want = checks.expected_interval(args.construction, args.instance, x)
        report.rows.append([args.construction, args.instance, x, args.mode, size, want,
                            size == want])
    report.figure = dict(kind="comparison", title=f"{args.construction} / {args.instance}",
                         ylabel="interval size")
    return report


def _read_formulas(items):
    out = []
    for item in items:
        if item.startswith("@"):
            with open(item[1:]) as fh:
                out.extend(line.strip() for line in fh
                           if line.strip() and not line.lstrip().startswith("#"))
        else:
            out.append(item)
    return out


def cmd_monsat(args):
    report = Report("monsat", ["formula", "n", "mode", "interval", "truth-table", "match"])
    triple = monsat.build_monsat_order()
    for text in _read_formulas(args.formula):
        f = monsat.parse_formula(text)
        if args.mode == "walk":
            got = monsat.count_monsat_interval(f, step_budget=args.budget)
        else:
            x = monsat.formula_word(f)
            got = interval_size_bruteforce(triple.spec, x, universe=triple.block_universe(x),
                                           cap=args.cap_universe)
        want = monsat.count_monsat_bruteforce(f)
        report.rows.append([f.text, f.n, args.mode, got, want, got == want])
    report.figure = dict(kind="comparison", title="#MONSAT", ylabel="satisfying assignments")
    return report


def cmd_div(args):
    report = Report("div", ["m", "divisibility-interval", "support-order", "trial-division",
                            "prime", "match"])
    for m in args.m:
        if m < 1:
            raise UnknownInstance(f"m must be positive, got {m}")
        via_order = divisors.divisibility_interval_count(m)
        via_support = divisors.divcount_via_support_order(m)
        want = divisors.count_divisors(m)
        report.rows.append([m, via_order, via_support, want, divisors.is_prime(m),
                            via_order == via_support == want])
    report.figure = dict(kind="comparison", title="nontrivial divisors", ylabel="count",
                         computed_col=1, oracle_col=3)
    return report


def _default_tm():
    return resources.files("intervalsize").joinpath("data/ones_count.tm")


def cmd_tm_walk(args):
    path = args.spec or _default_tm()
    enc = EncodedTM(load_tm_spec(path))
    bundle = build_space_order(enc)
    report = Report("tm-walk", ["machine", "x", "s", "t", "r", "f(x)", "predicted", "walked",
                                "singleton", "match"])
    for x in _words(args, 1):
        n = len(x)
        f, _ = enc.run_tm(x)
        predicted = bundle.predicted_size(x, f)
        walked = fpspace_interval_size(bundle, x, step_budget=args.budget)
        flag = singleton_flag(bundle, x, step_budget=args.budget)
        report.rows.append([enc.tm.name, x, enc.params.s(n), enc.params.t(n),
                            enc.params.r(n), f, predicted, walked, flag,
                            walked == predicted and flag == (f == 1)])
    report.figure = dict(kind="comparison", title=f"traversal walk: {enc.tm.name}",
                         ylabel="tokens strictly between", computed_col=7, oracle_col=6,
                         log=True)
    return report


def cmd_cluster(args):
    report = Report("cluster", ["machine", "order", "x", "accepting", "one-cluster",
                                "cluster-count", "oracle", "match"])
    if args.order == "ift-derived":
        construction, _, instance = args.machine.partition("/")
        triple = catalog.build_triple(construction, instance)
        witness = cluster.ift_to_cluster(triple)

        def oracle(x):
            return eval_triple(triple, x, mode="bruteforce", cap=args.cap_universe)
    else:
        witness = cluster.shortlex_witness(cluster.machine(args.machine))

        def oracle(x):
            return len(cluster.acc_set(witness.machine, x, args.budget))
    for x in _words(args, 2):
        acc = len(cluster.acc_set(witness.machine, x, args.budget))
        one = cluster.is_cluster_witness(witness, x, args.budget)
        if one:
            got, want = cluster.cl_count(witness, x, args.budget), oracle(x)
            report.rows.append([witness.machine.name, args.order, x, acc, True, got, want,
                                got == want])
        else:
            # no cluster count exists; nothing to compare
            report.rows.append([witness.machine.name, args.order, x, acc, False, None, None,
                                None])
    report.figure = dict(kind="comparison", title=f"cluster count: {witness.machine.name}",
                         ylabel="accepting paths", computed_col=5, oracle_col=6)
    return report


def cmd_check(args):
    names = list(checks.SUITES) if "all" in args.suite else args.suite
    caps = checks.Caps(seed=args.seed)
    for name in ("max_len", "toy_len", "structure_len", "random_formulas", "max_vars",
                 "div_max", "support_max", "detector_path"):
        value = getattr(args, name)
        if value is not None:
            setattr(caps, name, value)
    results = checks.run_suites(names, caps)
    report = Report("check", ["suite", "check", "violations", "detail", "match"])
    for r in results:
        report.rows.append([r.suite, r.label, r.violations, r.detail if not r.ok else None,
                            r.ok])
    report.figure = dict(kind="check", results=results)
    return report


def render_figure(report, path):
    from . import plotting

    spec = report.figure or {}
    if spec.get("kind") == "check":
        plotting.plot_check_summary(spec["results"], path)
        return
    rows = [r for r in report.rows if r[-1] is not None]
    cols = report.columns
    computed = spec.get("computed_col", len(cols) - 3)
    oracle = spec.get("oracle_col", len(cols) - 2)
    label_col = cols.index("x") if "x" in cols else 0
    labels = [_cell(r[label_col]) for r in rows]
    plotting.plot_comparison(labels, [r[computed] for r in rows], [r[oracle] for r in rows],
                             spec.get("title", report.command), path,
                             ylabel=spec.get("ylabel", "value"), log=spec.get("log", False))


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--report", choices=("text", "json"), default="text")
    common.add_argument("--figure", metavar="PATH", help="also write a figure to PATH")
    common.add_argument("--budget", type=int, default=1 << 24,
                        help="step budget for walks and path enumeration")
    common.add_argument("--cap-universe", type=int, default=DEFAULT_UNIVERSE_CAP,
                        help="largest candidate set a brute-force count may scan")
    common.add_argument("--max-len", type=int, default=None,
                        help="default inputs are all words up to this length")

    parser = argparse.ArgumentParser(prog="intervalsize",
                                     description="Interval sizes of feasible orders.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("interval", parents=[common], help="interval size of a catalog triple")
    p.add_argument("construction", choices=catalog.CONSTRUCTIONS)
    p.add_argument("instance")
    p.add_argument("x", nargs="*")
    p.add_argument("--mode", choices=("walk", "bruteforce"), default="walk")
    p.set_defaults(run=cmd_interval)

    p = sub.add_parser("monsat", parents=[common],
                       help="count satisfying assignments of monotone formulas")
    p.add_argument("formula", nargs="+", help="formula text, or @file with one per line")
    p.add_argument("--mode", choices=("walk", "bruteforce"), default="walk")
    p.set_defaults(run=cmd_monsat)

    p = sub.add_parser("div", parents=[common], help="nontrivial divisor counts")
    p.add_argument("m", type=int, nargs="+")
    p.set_defaults(run=cmd_div)

    p = sub.add_parser("tm-walk", parents=[common],
                       help="walk the traversal order of a machine spec")
    p.add_argument("x", nargs="*")
    p.add_argument("--spec", help="machine spec file (default: the bundled ones counter)")
    p.set_defaults(run=cmd_tm_walk)

    p = sub.add_parser("cluster", parents=[common], help="cluster counts of machines")
    p.add_argument("machine", help="machine name, or construction/instance for ift-derived")
    p.add_argument("x", nargs="*")
    p.add_argument("--order", choices=("shortlex", "ift-derived"), default="shortlex")
    p.set_defaults(run=cmd_cluster)

    p = sub.add_parser("check", parents=[common], help="run property suites")
    p.add_argument("suite", nargs="*", default=["all"],
                   choices=["all", *checks.SUITES])
    p.add_argument("--seed", type=int, default=checks.Caps.seed)
    for name in ("toy-len", "structure-len", "random-formulas", "max-vars", "div-max",
                 "support-max", "detector-path"):
        p.add_argument(f"--{name}", type=int, default=None)
    p.set_defaults(run=cmd_check)
    return parser


def main(argv=None):
    parser = build_parser()
    args, extra = parser.parse_known_args(argv)
    # positional words given after an option land in `extra`
    if extra and hasattr(args, "x") and all(is_word(w) for w in extra):
        args.x = list(args.x) + extra
    elif extra:
        parser.error(f"unrecognized arguments: {' '.join(extra)}")
    if args.command == "check" and not args.suite:
        args.suite = ["all"]
    try:
        report = args.run(args)
    except (UnknownInstance, IntervalSizeError) as exc:
        kind = "usage" if isinstance(exc, UnknownInstance) else type(exc).__name__
        print(f"intervalsize {args.command}: {kind} error: {exc}", file=sys.stderr)
        return 2
    report.emit(args.report, sys.stdout)
    if args.figure:
        render_figure(report, args.figure)
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
