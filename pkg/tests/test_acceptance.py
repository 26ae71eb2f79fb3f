"""The ten acceptance criteria, each at its stated tolerance and time budget.

Every criterion prints one line, `PASS criterion k: ...` or `FAIL criterion k: ...`,
both to stdout and in the terminal summary.
"""

import time

import pytest

from conftest import ACCEPTANCE_LINES
from intervalsize import checks, divisors
from intervalsize.space_traversal import (build_space_order, fpspace_interval_size,
                                          singleton_flag, structure_audit)
from intervalsize.tm_core import toy_ones_counter

from oracles import simulate, words_up_to

CAPS = checks.Caps()


def record(k, text, ok):
    line = f"{'PASS' if ok else 'FAIL'} criterion {k}: {text}"
    print(line)
    ACCEPTANCE_LINES.append(line)
    return ok


def failures(results):
    return [f"{r.suite}/{r.label}: {r.violations} {r.detail}".strip()
            for r in results if not r.ok]


@pytest.fixture(scope="module")
def order_results():
    start = time.perf_counter()
    results = checks.suite_orders(CAPS)
    return results, time.perf_counter() - start


def test_criterion_1_order_axioms(order_results):
    results, elapsed = order_results
    bad = failures(r for r in results if "adjacency" not in r.label)
    ok = not bad and elapsed < 60
    record(1, f"order axioms, {len(bad)} failing checks, {elapsed:.1f} s (limit 60 s)", ok)
    assert not bad, bad
    assert elapsed < 60


def test_criterion_2_adjacency(order_results):
    results, _ = order_results
    adjacency = [r for r in results if "adjacency" in r.label]
    bad = failures(adjacency)
    record(2, f"precedes equals adjacency from leq, {len(adjacency)} checks, "
              f"{len(bad)} failing", not bad)
    assert adjacency and not bad, bad


def test_criterion_3_interval_identities():
    results = checks.suite_intervals(CAPS)
    bad = failures(results)
    record(3, f"interval identities over {len(results)} constructions, {len(bad)} failing",
           not bad)
    assert not bad, bad


def test_criterion_4_traversal_walk_counts():
    bundle = build_space_order(toy_ones_counter())
    enc = bundle.traversal.enc
    bad, slowest = [], 0.0
    for x in words_up_to(CAPS.toy_len):
        f = simulate(enc.tm, x)
        s = enc.params.s(len(x))
        want = 2 ** (2 * s + 1) + f - 2
        start = time.perf_counter()
        got = fpspace_interval_size(bundle, x)
        flag = singleton_flag(bundle, x)
        elapsed = time.perf_counter() - start
        slowest = max(slowest, elapsed)
        if got != want or flag != (f == 1) or elapsed >= 10:
            bad.append(f"x={x!r}: {got} vs {want}, flag {flag}, {elapsed:.1f} s")
    record(4, f"walk count and singleton flag on the toy machine, |x| <= {CAPS.toy_len}, "
              f"slowest input {slowest:.1f} s (limit 10 s)", not bad)
    assert not bad, bad


def test_criterion_5_structural_properties():
    enc = toy_ones_counter()
    bundle = build_space_order(enc)
    bad = []
    for x in words_up_to(CAPS.structure_len):
        for label, n in structure_audit(bundle.traversal, x, expected_output=simulate(enc.tm, x)):
            if n:
                bad.append(f"x={x!r} {label}: {n}")
    record(5, f"step function and tree structure, |x| <= {CAPS.structure_len}, "
              f"{len(bad)} failing", not bad)
    assert not bad, bad


@pytest.fixture(scope="module")
def monsat_results():
    return checks.suite_monsat(CAPS)


def test_criterion_6_next_assignment(monsat_results):
    results = [r for r in monsat_results if "count" not in r.label]
    bad = failures(results)
    record(6, f"{results[0].label} and query bound, {len(bad)} failing", not bad)
    assert not bad, bad


def test_criterion_7_monsat_interval_count(monsat_results):
    results = [r for r in monsat_results if "count" in r.label]
    bad = failures(results)
    record(7, f"interval count equals truth-table count, {len(bad)} failing", not bad)
    assert not bad, bad


def divisor_sieve(limit):
    counts = [0] * (limit + 1)
    for d in range(2, limit + 1):
        for k in range(2 * d, limit + 1, d):
            counts[k] += 1
    return counts


def test_criterion_8_divisors():
    want = divisor_sieve(CAPS.div_max)
    start = time.perf_counter()
    bad = [m for m in range(1, CAPS.div_max + 1)
           if divisors.divisibility_interval_count(m) != want[m]]
    bad += [m for m in range(1, CAPS.support_max + 1)
            if divisors.divcount_via_support_order(m) != want[m]]
    bad += [m for m in range(1, CAPS.div_max + 1)
            if divisors.is_prime(m) != (m >= 2 and want[m] == 0)]
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 60
    record(8, f"divisor counts m <= {CAPS.div_max}, support route m <= {CAPS.support_max}, "
              f"{len(bad)} mismatches, {elapsed:.1f} s (limit 60 s)", ok)
    assert not bad, bad[:10]
    assert elapsed < 60


def test_criterion_9_cluster_counts():
    results = checks.suite_cluster(CAPS)
    bad = failures(results)
    record(9, f"cluster counts, almost-unique transform and detectors, "
              f"{len(results)} checks, {len(bad)} failing", not bad)
    assert not bad, bad


def test_criterion_10_reachability():
    results = checks.suite_reachability(CAPS)
    bad = failures(results)
    record(10, f"chains of adjacent steps decide leq, {len(bad)} failing", not bad)
    assert not bad, bad
