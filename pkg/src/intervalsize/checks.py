"""Property suites run by `intervalsize check`.

Each suite returns CheckResult records; a suite passes when every record
has zero violations.
"""

import random
from dataclasses import dataclass, field

from . import catalog, cluster, divisors, monsat
from .constructed import eval_triple
from .order_core import (adjacency_mismatches, reachable_leq, relation_matrix,
                         verify_order_axioms)
from .space_traversal import (build_space_order, fpspace_interval_size, order_audit,
                              singleton_flag, structure_audit)
from .tm_core import toy_ones_counter
from .words import bin_word, shortlex_key, words_of_length, words_up_to


@dataclass
class CheckResult:
    suite: str
    label: str
    violations: int
    detail: str = ""

    @property
    def ok(self):
        return self.violations == 0


@dataclass
class Caps:
    max_len: int = 3
    toy_len: int = 2
    structure_len: int = 1
    random_formulas: int = 1000
    max_vars: int = 12
    div_max: int = 10_000
    support_max: int = 512
    detector_path: int = 12
    seed: int = 2024
    extra: dict = field(default_factory=dict)


INSTANCES = {
    "sharp-p-order": ["parity", "majority", "monsat-witness", "divisor-witness", "constant-2"],
    "fp-order": ["constant-3", "ones-count", "length", "value"],
    "support-order": ["parity", "majority", "monsat-witness", "constant-2"],
    "offset-order": ["parity", "majority", "constant-1"],
    "upsv-order": ["constant-2", "ones-plus-one", "value-plus-one"],
    "increment-order": ["constant-3", "ones-count", "length"],
}


def witness_count(name, x):
    w = catalog.witness(name)
    return sum(1 for z in words_of_length(w.p(len(x))) if w.decider(x, z))


def expected_interval(construction, instance, x):
    """Target value of a catalog triple, computed straight from its definition."""
    if construction in ("sharp-p-order", "support-order"):
        return witness_count(instance, x)
    if construction == "offset-order":
        width = catalog.witness(instance).p(len(x)) + 2
        return witness_count(instance, x) + (1 << width)
    if construction == "fp-order":
        return catalog.fp_function(instance).eval(x)
    if construction == "increment-order":
        return catalog.fp_function(instance).eval(x) + 1
    if construction == "upsv-order":
        m = catalog.upsv_machine(instance)
        outs = [v for z in words_of_length(m.p(len(x)))
                if (v := m.path_output(x, z)) is not None]
        return outs[0] if outs else 0
    raise ValueError(construction)


def _order_violations(order, universe):
    """Axiom violations and adjacency mismatches, sharing one leq matrix."""
    words = sorted(set(universe), key=shortlex_key)
    mat = None if order.sort_key is not None else relation_matrix(order, words)
    axioms = len(verify_order_axioms(order, words, matrix=mat))
    adjacency = 0
    if order.precedes is not None:
        adjacency = len(adjacency_mismatches(order, words, matrix=mat))
    return axioms, adjacency


def suite_orders(caps: Caps):
    out = []
    for construction, instances in INSTANCES.items():
        axioms = adjacency = 0
        for inst in instances:
            triple = catalog.build_triple(construction, inst)
            for x in words_up_to(caps.max_len):
                a, b = _order_violations(triple.order, triple.block_universe(x))
                axioms += a
                adjacency += b
        out.append(CheckResult("orders", f"{construction}: axioms", axioms))
        if triple.order.precedes is not None:
            out.append(CheckResult("orders", f"{construction}: adjacency", adjacency))

    triple = monsat.build_monsat_order()
    axioms = adjacency = 0
    corpus = monsat.all_formulas(3, 2) + monsat.monotone_functions(3)
    for f in corpus:
        a, b = _order_violations(triple.order, triple.block_universe(monsat.formula_word(f)))
        axioms += a
        adjacency += b
    out.append(CheckResult("orders", f"monsat-order: axioms ({len(corpus)} formulas)", axioms))
    out.append(CheckResult("orders", "monsat-order: adjacency", adjacency))

    axioms = adjacency = 0
    for construction in ("sharp-p-order", "fp-order", "offset-order", "upsv-order",
                         "increment-order"):
        base = catalog.build_triple(construction, INSTANCES[construction][0])
        blocks = cluster.initial_segment_order(base.order, base.blocks.predecessor)
        order = cluster.ift_to_cluster(base).order
        for x in words_up_to(caps.max_len):
            a, b = _order_violations(order, blocks.block_universe(x))
            axioms += a
            adjacency += b
    out.append(CheckResult("orders", "initial-segment orders: axioms", axioms))
    out.append(CheckResult("orders", "initial-segment orders: adjacency", adjacency))

    bundle = build_space_order(toy_ones_counter())
    for x in words_up_to(caps.structure_len):
        for label, bad in order_audit(bundle, x):
            out.append(CheckResult("orders", f"traversal order x={x!r}: {label}", bad))
    return out


def suite_intervals(caps: Caps):
    out = []
    for construction, instances in INSTANCES.items():
        bad = []
        for inst in instances:
            triple = catalog.build_triple(construction, inst)
            for x in words_up_to(caps.max_len):
                want = expected_interval(construction, inst, x)
                got = [eval_triple(triple, x, "bruteforce")]
                if triple.order.is_total:
                    got.append(eval_triple(triple, x, "walk"))
                if any(g != want for g in got):
                    bad.append(f"{inst} x={x!r}: {got} vs {want}")
        out.append(CheckResult("intervals", construction, len(bad), "; ".join(bad[:3])))
    return out


def suite_space(caps: Caps):
    enc = toy_ones_counter()
    bundle = build_space_order(enc)
    out = []
    for x in words_up_to(caps.toy_len):
        f = x.count("1")
        got = fpspace_interval_size(bundle, x)
        want = bundle.predicted_size(x, f)
        out.append(CheckResult("space", f"walk count x={x!r}", int(got != want),
                               f"{got} vs {want}"))
        flag = singleton_flag(bundle, x)
        out.append(CheckResult("space", f"singleton flag x={x!r}", int(flag != (f == 1)),
                               f"{flag} with f={f}"))
    for x in words_up_to(caps.structure_len):
        for label, bad in structure_audit(bundle.traversal, x, expected_output=x.count("1")):
            out.append(CheckResult("space", f"x={x!r}: {label}", bad))
    return out


def truth_table_next(f, n):
    """For each r, the table a -> least b >= a with f(b) = r (None if absent)."""
    values = [bool(f(bin_word(i, n))) for i in range(1 << n)]
    tables = {}
    for r in (0, 1):
        nxt = [None] * (1 << n)
        found = None
        for i in range((1 << n) - 1, -1, -1):
            if values[i] == bool(r):
                found = bin_word(i, n)
            nxt[i] = found
        tables[r] = nxt
    return tables


def monsat_corpus(caps: Caps):
    corpus = (monsat.all_formulas(2, 2) + monsat.all_formulas(3, 2)
              + monsat.all_formulas(4, 2)
              + [f for k in range(1, 5) for f in monsat.monotone_functions(k)])
    rng = random.Random(caps.seed)
    corpus += [monsat.random_formula(rng, rng.randint(1, caps.max_vars))
               for _ in range(caps.random_formulas)]
    return corpus


def suite_monsat(caps: Caps):
    corpus = monsat_corpus(caps)
    mismatches = over_budget = count_bad = 0
    for f in corpus:
        n = f.n
        tables = truth_table_next(f, n)
        for i in range(1 << n):
            a = bin_word(i, n)
            for r in (0, 1):
                counter = monsat.QueryCounter()
                if monsat.next_assignment(f, a, r, counter) != tables[r][i]:
                    mismatches += 1
                if counter.count > 2 * n + 2:
                    over_budget += 1
        if monsat.count_monsat_interval(f) != monsat.count_monsat_bruteforce(f):
            count_bad += 1
    size = f"{len(corpus)} formulas"
    return [CheckResult("monsat", f"next_assignment vs truth table ({size})", mismatches),
            CheckResult("monsat", "queries at most 2n+2", over_budget),
            CheckResult("monsat", "interval count vs truth table", count_bad)]


def suite_divisors(caps: Caps):
    desc = [m for m in range(1, caps.div_max + 1)
            if divisors.divisibility_interval_count(m) != divisors.count_divisors(m)]
    prime = [m for m in range(1, caps.div_max + 1)
             if divisors.is_prime(m) != (m >= 2 and divisors.count_divisors(m) == 0)]
    supp = [m for m in range(1, caps.support_max + 1)
            if divisors.divcount_via_support_order(m) != divisors.count_divisors(m)]
    return [CheckResult("divisors", f"divisibility interval, m <= {caps.div_max}", len(desc),
                        str(desc[:5])),
            CheckResult("divisors", f"primality, m <= {caps.div_max}", len(prime), str(prime[:5])),
            CheckResult("divisors", f"support-order route, m <= {caps.support_max}", len(supp),
                        str(supp[:5]))]


BOUNDED = [("fp-order", "constant-0", lambda n: 3), ("fp-order", "constant-1", lambda n: 3),
           ("fp-order", "constant-3", lambda n: 3), ("fp-order", "ones-count", lambda n: n + 2),
           ("increment-order", "ones-count", lambda n: n + 3)]


def suite_cluster(caps: Caps):
    out = []
    for construction, instances in INSTANCES.items():
        if construction == "support-order":
            continue
        bad = []
        for inst in instances:
            triple = catalog.build_triple(construction, inst)
            witness = cluster.ift_to_cluster(triple)
            for x in words_up_to(caps.max_len):
                got, want = cluster.cl_count(witness, x), eval_triple(triple, x)
                if got != want:
                    bad.append(f"{inst} x={x!r}: {got} vs {want}")
        out.append(CheckResult("cluster", f"cluster count = interval size: {construction}",
                               len(bad), "; ".join(bad[:3])))

    bad = 0
    for construction, inst, q in BOUNDED:
        triple = catalog.build_triple(construction, inst)
        machine = cluster.cluster_to_almost_unique(cluster.ift_to_cluster(triple), q)
        bad += len(cluster.almost_unique_check(
            machine, lambda x: eval_triple(triple, x), words_up_to(caps.max_len)))
    for name, bound in cluster.MACHINE_BOUNDS.items():
        witness = cluster.shortlex_witness(cluster.machine(name))
        machine = cluster.cluster_to_almost_unique(witness, lambda n: bound(n) + 2)
        bad += len(cluster.almost_unique_check(
            machine, lambda x: len(cluster.acc_set(witness.machine, x)), words_up_to(2)))
    out.append(CheckResult("cluster", "almost-unique transform", bad))

    bad = tried = 0
    for name in cluster.MACHINES:
        witness = cluster.shortlex_witness(cluster.machine(name))
        for x in words_up_to(caps.max_len):
            if not cluster.is_cluster_witness(witness, x):
                continue
            k = len(cluster.acc_set(witness.machine, x))
            for detector, expect in ((cluster.nonemptiness_detector(witness), k > 0),
                                     (cluster.uniqueness_detector(witness), k == 1)):
                if detector.path_len(x) > caps.detector_path:
                    continue
                tried += 1
                acc = cluster.acc_set(detector, x)
                bad += int(len(acc) > 1 or (len(acc) == 1) != expect)
    out.append(CheckResult("cluster", f"detectors ({tried} exhaustive runs)", bad))
    return out


def suite_reachability(caps: Caps):
    bad = 0
    triple = catalog.build_triple("fp-order", "ones-count")
    for x in words_up_to(2):
        universe = triple.block_universe(x)
        for u in universe:
            for v in universe:
                if reachable_leq(triple.order, u, v, universe) != triple.order.leq(u, v):
                    bad += 1
    order = divisors.divisibility_order()
    universe = [divisors.numeral(k) for k in range(1, 65)]
    for u in universe:
        for v in universe:
            if reachable_leq(order, u, v, universe) != order.leq(u, v):
                bad += 1
    return [CheckResult("reachability", "chains of adjacent steps decide leq", bad)]


SUITES = {
    "orders": suite_orders,
    "intervals": suite_intervals,
    "space": suite_space,
    "monsat": suite_monsat,
    "divisors": suite_divisors,
    "cluster": suite_cluster,
    "reachability": suite_reachability,
}


def run_suites(names, caps: Caps = None):
    caps = caps or Caps()
    results = []
    for name in names:
        results.extend(SUITES[name](caps))
    return results
