import random

import pytest
from hypothesis import given, settings, strategies as st

from intervalsize.errors import FormulaSyntaxError, NonMonotoneError
from intervalsize.monsat import (QueryCounter, all_formulas, build_monsat_order,
                                 count_monsat_bruteforce, count_monsat_interval, evaluate,
                                 formula_word, monotone_functions, next_assignment,
                                 parse_formula, random_formula)
from intervalsize.order_core import interval_size_bruteforce

from oracles import next_true, python_predicate, truth_table_count, words


def test_parse_roundtrip_and_evaluate():
    f = parse_formula(" ( x1 & ( x2 | x3 ) ) ")
    assert f.text == "(x1&(x2|x3))" and f.n == 3
    oracle = python_predicate(f.text)
    for a in words(3):
        assert evaluate(f, a) == oracle(a)
    with pytest.raises(ValueError):
        evaluate(f, "01")


@pytest.mark.parametrize("text,pos", [("(x1 & !x2)", 6), ("(x1 | 1)", 6), ("(~x1 & x2)", 1)])
def test_negations_and_constants_rejected_with_position(text, pos):
    with pytest.raises(NonMonotoneError) as info:
        parse_formula(text)
    assert info.value.position == pos


@pytest.mark.parametrize("text,pos", [("(x1 & x2", 8), ("(x1 x2)", 4), ("x1)", 2),
                                      ("(x1 & x0)", 6), ("", 0), ("(x1 ^ x2)", 4)])
def test_syntax_errors_report_position(text, pos):
    with pytest.raises(FormulaSyntaxError) as info:
        parse_formula(text)
    assert info.value.position == pos


def test_every_monotone_function_of_three_variables():
    fs = monotone_functions(3)
    tables = {tuple(f(a) for a in words(3)) for f in fs}
    # 20 monotone functions of 3 variables minus the two constants
    assert len(fs) == len(tables) == 18


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 7), st.integers(0, 1), st.data())
def test_next_assignment_matches_scan_and_query_bound(seed, n, r, data):
    f = random_formula(random.Random(seed), n)
    a = data.draw(st.text(alphabet="01", min_size=n, max_size=n))
    counter = QueryCounter()
    assert next_assignment(f, a, r, counter) == next_true(python_predicate(f.text), a, r)
    assert counter.count <= 2 * n + 2


def test_next_assignment_black_box_mode():
    f = parse_formula("((x1&x2)|(x3&x4))")
    box = lambda a: f(a)
    for a in words(4):
        for r in (0, 1):
            assert next_assignment(box, a, r) == next_assignment(f, a, r)


@pytest.mark.parametrize("text", ["x1", "(x1|x2)", "(x1&x2)", "((x1&x2)|x3)",
                                  "((x1|x2)&(x3|x4))", "(x2&x5)"])
def test_counts_agree_with_truth_table(text):
    want = truth_table_count(text)
    assert count_monsat_bruteforce(text) == want
    assert count_monsat_interval(text) == want


def test_interval_walk_matches_brute_force_on_small_asts():
    triple = build_monsat_order()
    for f in all_formulas(2, 1):
        x = formula_word(f)
        want = truth_table_count(f.text)
        assert count_monsat_interval(f) == want
        assert interval_size_bruteforce(triple.spec, x, universe=triple.block_universe(x)) == want


def test_non_formula_text_counts_zero():
    assert count_monsat_bruteforce("(x1 &") == 0
