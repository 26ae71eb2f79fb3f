"""Nontrivial divisor counts, primality and the divisibility order on numerals."""

from functools import lru_cache

from .catalog import witness_with_support
from .constructed import build_support_aware_order, eval_triple, normalize_witness
from .order_core import (IntervalSpec, POrder, Poly, interval_size_bruteforce,
                         interval_size_by_descent)


def count_divisors(m: int) -> int:
    """Divisors of m other than 1 and m (0 for m = 0)."""
    if m <= 0:
        return 0
    total = 0
    d = 1
    while d * d <= m:
        if m % d == 0:
            total += 1 if d * d == m else 2
        d += 1
    return max(0, total - (1 if m == 1 else 2))


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    d = 2
    while d * d <= m:
        if m % d == 0:
            return False
        d += 1
    return True


@lru_cache(maxsize=1 << 16)
def prime_factors(m: int) -> tuple:
    """Distinct prime factors, ascending."""
    found = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            found.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        found.append(m)
    return tuple(found)


def numeral(m: int) -> str:
    return format(m, "b")


def value(u: str):
    """The positive number a canonical numeral denotes, else None."""
    if not u or u[0] != "1":
        return None
    return int(u, 2)


def _leq(u, v):
    if u == v:
        return True
    a, b = value(u), value(v)
    return a is not None and b is not None and b % a == 0


def _precedes(u, v):
    a, b = value(u), value(v)
    return a is not None and b is not None and b % a == 0 and is_prime(b // a)


def _predecessors(v):
    b = value(v)
    if b is None:
        return []
    return [numeral(b // p) for p in prime_factors(b)]


def divisibility_order() -> POrder:
    """n <= m iff n divides m, on positive numerals; other words are only reflexive."""
    return POrder(name="divisibility", length_bound=Poly.identity(), leq=_leq,
                  precedes=_precedes, is_total=False, min_element="1",
                  predecessors=_predecessors)


def divisibility_spec() -> IntervalSpec:
    """The open interval (1, m), with input x the numeral of m."""
    return IntervalSpec(
        divisibility_order(), lambda x: "1", lambda x: x,
        universe=lambda x: [numeral(k) for k in range(1, (value(x) or 0) + 1)])


def divisibility_interval_count(m: int, mode: str = "descent") -> int:
    spec = divisibility_spec()
    x = numeral(m) if m > 0 else "0"
    if mode == "descent":
        return interval_size_by_descent(spec, x)
    if mode == "bruteforce":
        return interval_size_bruteforce(spec, x)
    raise ValueError(f"unknown mode {mode!r}")


@lru_cache(maxsize=1)
def divisor_support_triple():
    witness, support = witness_with_support("divisor-witness")
    return build_support_aware_order(normalize_witness(witness), support)


def divcount_via_support_order(m: int, mode: str = "bruteforce") -> int:
    x = numeral(m) if m > 0 else "0"
    return eval_triple(divisor_support_triple(), x, mode=mode)
