"""Independent brute-force references used by the tests.

Nothing here imports the package's order or counting code; each oracle is
written from the plain definition of the quantity it computes.
"""

import itertools
import math
import re


def words(n):
    return ["".join(t) for t in itertools.product("01", repeat=n)]


def words_up_to(n):
    return [w for k in range(n + 1) for w in words(k)]


def shortlex_sorted(ws):
    return sorted(ws, key=lambda w: (len(w), w))


# ---------------------------------------------------------------- orders

def axiom_failures(leq, universe, total=False):
    """Triple-loop check of the partial-order axioms; returns failure names."""
    ws = list(universe)
    bad = set()
    for u in ws:
        if not leq(u, u):
            bad.add("reflexivity")
    for u in ws:
        for v in ws:
            if u != v and leq(u, v) and leq(v, u):
                bad.add("antisymmetry")
            if total and not (leq(u, v) or leq(v, u)):
                bad.add("totality")
    for u in ws:
        for v in ws:
            if not leq(u, v):
                continue
            for w in ws:
                if leq(v, w) and not leq(u, w):
                    bad.add("transitivity")
    return bad


def covers(leq, universe):
    """Pairs (u, v): u < v with nothing strictly between, inside universe."""
    ws = list(universe)
    out = set()
    for u in ws:
        for v in ws:
            if u == v or not leq(u, v):
                continue
            if not any(z not in (u, v) and leq(u, z) and leq(z, v) for z in ws):
                out.add((u, v))
    return out


def strictly_between(leq, lo, hi, universe):
    return sum(1 for z in universe
               if z not in (lo, hi) and leq(lo, z) and leq(z, hi))


# ---------------------------------------------------------------- Turing machines

def simulate(tm, x):
    """Run a restricted machine symbol by symbol; None if it breaks its promises.

    The tape has 2^ceil(log2 p(n)) cells (one cell when p(n) = 1) and the
    machine may take at most 2^s - 1 steps, s = m + r + m 2^r.
    """
    n = len(x)
    p = tm.space(n)
    r = math.ceil(math.log2(p)) if p > 1 else 0
    cells = 1 << r
    max_steps = (1 << (tm.m + r + (tm.m << r))) - 1
    tape = list(x) + ["B"] * (cells - n)
    head, state = 0, tm.start
    for _ in range(max_steps + 1):
        if state == tm.final:
            return tape_number(tape)
        q2, sym, move = tm.delta[(state, tape[head])]
        if not 0 <= head + move < cells:
            return None
        tape[head] = sym
        head += move
        state = q2
    return None


def tape_number(tape):
    """Value of the binary prefix before the first non-bit symbol, if only blanks follow."""
    text = "".join(tape).rstrip("B")
    if not re.fullmatch(r"[01]*", text):
        return 0
    return int(text, 2) if text else 0


# ---------------------------------------------------------------- formulas

def python_predicate(text):
    """Compile formula text like '(x1 & (x2 | x3))' into a function of a bit string."""
    expr = re.sub(r"x(\d+)", lambda m: f"a[{int(m.group(1)) - 1}]", text)
    expr = expr.replace("&", " and ").replace("|", " or ")
    code = compile(expr, "<formula>", "eval")
    return lambda bits: bool(eval(code, {}, {"a": [c == "1" for c in bits]}))


def variable_count(text):
    return max(int(k) for k in re.findall(r"x(\d+)", text))


def truth_table_count(text):
    fn = python_predicate(text)
    n = variable_count(text)
    return sum(fn(w) for w in words(n))


def next_true(fn, a, r):
    """Lex-least b >= a (same length) with fn(b) == r, by scanning."""
    n = len(a)
    for i in range(int(a, 2) if n else 0, 1 << n):
        b = format(i, f"0{n}b") if n else ""
        if fn(b) == bool(r):
            return b
    return None


# ---------------------------------------------------------------- numbers

def nontrivial_divisors(m):
    return sum(1 for d in range(2, m) if m % d == 0)


def is_prime(m):
    return m >= 2 and all(m % d for d in range(2, m))
