import pytest
from hypothesis import given, strategies as st

from intervalsize.divisors import (count_divisors, divcount_via_support_order,
                                   divisibility_interval_count, divisibility_order, is_prime,
                                   numeral)
from intervalsize.errors import NotTotalError

from oracles import axiom_failures, covers
from oracles import is_prime as oracle_prime
from oracles import nontrivial_divisors


@given(st.integers(0, 3000))
def test_divisor_count_and_primality(m):
    assert count_divisors(m) == (nontrivial_divisors(m) if m > 0 else 0)
    assert is_prime(m) == oracle_prime(m)


@pytest.mark.parametrize("m", [1, 2, 12, 36, 97, 360, 1024])
def test_interval_routes_agree(m):
    want = nontrivial_divisors(m)
    assert divisibility_interval_count(m) == want
    assert divisibility_interval_count(m, "bruteforce") == want


@pytest.mark.parametrize("m", [1, 4, 6, 7, 12])
def test_support_route_agrees(m):
    assert divcount_via_support_order(m) == nontrivial_divisors(m)


def test_descent_handles_large_values():
    assert divisibility_interval_count(720720) == nontrivial_divisors(720720)


def test_divisibility_order_axioms_and_covers():
    order = divisibility_order()
    universe = [numeral(k) for k in range(1, 40)] + ["0", "01"]
    assert axiom_failures(order.leq, universe) == set()
    assert "totality" in axiom_failures(order.leq, universe, total=True)
    got = {(u, v) for u in universe for v in universe if order.precedes(u, v)}
    assert got == covers(order.leq, universe)


def test_walk_is_not_offered_for_partial_orders():
    with pytest.raises(ValueError):
        divisibility_interval_count(12, "walk")
    with pytest.raises(NotTotalError):
        divcount_via_support_order(12, "walk")
