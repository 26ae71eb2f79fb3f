"""Order constructions whose interval sizes equal a chosen counting function.

Each builder returns an OrderTriple: a block-permuted shortlex order plus
boundary functions b and t.  The interval strictly between b(x) and t(x)
then has exactly the advertised size.
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional

from .blocks import BlockOrder, PrefixLayout
from .errors import (EncodingOverflow, ModelViolation, NormalizationError, NotTotalError,
                     ValueBoundError)
from .order_core import (IntervalSpec, POrder, Poly, interval_size_bruteforce,
                         interval_size_by_walk)
from .words import bin_word, nu, words_of_length


@dataclass(frozen=True)
class WitnessPredicate:
    """f(x) = number of z with |z| = p(|x|) and decider(x, z)."""

    name: str
    decider: Callable[[str, str], bool]
    p: Poly
    normalized: bool = False

    def count(self, x: str) -> int:
        width = self.p(len(x))
        return sum(1 for z in words_of_length(width) if self.decider(x, z))


@dataclass(frozen=True)
class FPFunction:
    name: str
    eval: Callable[[str], int]
    p: Poly


@dataclass(frozen=True)
class SupportDecider:
    in_support: Callable[[str], bool]


@dataclass(frozen=True)
class UPSVMachine:
    """A machine with exactly one output-producing path of length p(|x|)."""

    name: str
    p: Poly
    path_output: Callable[[str, str], Optional[int]]

    def outputs(self, x: str) -> dict:
        found = {}
        for z in words_of_length(self.p(len(x))):
            out = self.path_output(x, z)
            if out is not None:
                found[z] = out
        return found


@dataclass(frozen=True)
class OrderTriple:
    name: str
    order: POrder
    b: Callable[[str], str]
    t: Callable[[str], str]
    target: str
    blocks: Optional[BlockOrder] = None
    candidates: Optional[Callable[[str], object]] = None
    t_len: Optional[Poly] = None

    @property
    def spec(self) -> IntervalSpec:
        return IntervalSpec(self.order, self.b, self.t, self.candidates)

    def block_universe(self, x: str) -> list:
        """The block containing b(x), together with its outside neighbours."""
        key = self.blocks.layout.locate(self.b(x))
        return self.blocks.block_universe(key)


def normalize_witness(w: WitnessPredicate) -> WitnessPredicate:
    """Append the suffix 01 to every witness so 0^p and 1^p are never accepted."""
    if w.normalized:
        return w
    base = w.decider
    p2 = w.p.plus(2)

    def decider(x, z):
        return len(z) >= 2 and z[-2:] == "01" and base(x, z[:-2])

    return WitnessPredicate(w.name, decider, p2, normalized=True)


def bin_for(x: str, i: int, p: Poly) -> str:
    """i written with exactly p(|x|) bits."""
    width = p(len(x))
    if not 0 <= i < (1 << width):
        raise EncodingOverflow(f"{i} does not fit in {width} bits")
    return bin_word(i, width)


# ---------------------------------------------------------------- #P orders

class _SharpPLayout(PrefixLayout):
    """1^p first, then accepted witnesses, then the remaining ones (lex)."""

    def __init__(self, w: WitnessPredicate):
        self.w = w
        super().__init__(lambda n: w.p(n))
        self._rank = lru_cache(maxsize=1 << 18)(self._rank)

    def _rank(self, x, z):
        if "0" not in z:
            return (0, z)
        return (1, z) if self.w.decider(x, z) else (2, z)

    def first(self, x):
        return self.hi(x)

    def last(self, x):
        width = self.width(len(x))
        for z in reversed(list(words_of_length(width))):
            if "0" in z and not self.w.decider(x, z):
                return x + z
        for z in reversed(list(words_of_length(width))):
            if "0" in z:
                return x + z
        return self.hi(x)

    keyed = True

    def inner_key(self, x, u):
        return self._rank(x, u[len(x):])

    def inner_succ(self, x, u):
        # no adjacency guarantee here: find the next element by scanning
        n = len(x)
        width = self.width(n)
        z = u[n:]
        group = self._rank(x, z)[0]
        start = 0 if group == 0 else nu(z) + 1
        for g in (1, 2):
            if g < group:
                continue
            begin = start if g == group else 0
            for i in range(begin, (1 << width) - 1):
                cand = bin_word(i, width)
                if (self.w.decider(x, cand)) == (g == 1):
                    return x + cand
        return None


def build_sharp_p_order(w: WitnessPredicate) -> OrderTriple:
    if not w.normalized:
        raise NormalizationError("the witness predicate must be normalized first")
    layout = _SharpPLayout(w)
    blocks = BlockOrder(layout, f"sharp-p-order[{w.name}]")
    base = blocks.as_porder()
    order = POrder(name=base.name, length_bound=base.length_bound, leq=base.leq,
                   precedes=None, is_total=True, min_element="",
                   successor=base.successor, sort_key=base.sort_key)
    return OrderTriple(
        name=order.name, order=order,
        b=lambda x: layout.hi(x), t=lambda x: layout.lo(x),
        target=f"number of accepted witnesses of {w.name}",
        blocks=blocks,
        candidates=lambda x: layout.members(x),
    )


# ---------------------------------------------------------------- FP orders

class _FPLayout(PrefixLayout):
    """Ranks 0..f(x) lex, then 1^p, then the remaining ranks lex."""

    def __init__(self, f: FPFunction):
        self.f = f
        super().__init__(lambda n: f.p(n))
        self.value = lru_cache(maxsize=4096)(self._value)
        self._rank = lru_cache(maxsize=1 << 18)(self._rank)

    def _value(self, x):
        v = self.f.eval(x)
        cap = (1 << self.width(len(x))) - 1
        if not 0 <= v < cap:
            raise ValueBoundError(f"f({x!r}) = {v} is not below 2^p - 1 = {cap}")
        return v

    def _rank(self, x, z):
        if "0" not in z:
            return (1, 0)
        i = nu(z)
        return (0, i) if i <= self.value(x) else (2, i)

    def first(self, x):
        return self.lo(x)

    def last(self, x):
        width = self.width(len(x))
        top = (1 << width) - 2
        if self.value(x) + 1 <= top:
            return x + bin_word(top, width)
        return self.hi(x)

    keyed = True

    def inner_key(self, x, u):
        return self._rank(x, u[len(x):])

    def inner_succ(self, x, u):
        n = len(x)
        width = self.width(n)
        f = self.value(x)
        top = (1 << width) - 2
        z = u[n:]
        if "0" not in z:
            return x + bin_word(f + 1, width) if f + 1 <= top else None
        i = nu(z)
        if i == f:
            return self.hi(x)
        if i < top:
            return x + bin_word(i + 1, width)
        return None


def build_fp_order(f: FPFunction) -> OrderTriple:
    layout = _FPLayout(f)
    blocks = BlockOrder(layout, f"fp-order[{f.name}]")
    return OrderTriple(
        name=blocks.name, order=blocks.as_porder(),
        b=lambda x: layout.lo(x), t=lambda x: layout.hi(x),
        target=f"{f.name}",
        blocks=blocks,
        candidates=lambda x: layout.members(x),
        t_len=_sum_poly(f.p),
    )


def _sum_poly(p: Poly) -> Poly:
    """n + p(n), the length of block words for prefix length n."""
    if p.floor:
        raise ValueError("block widths must be plain polynomials")
    cs = list(p.coeffs) + [0] * max(0, 2 - len(p.coeffs))
    cs[1] += 1
    return Poly(tuple(cs))


# ---------------------------------------------------------------- support-aware (partial)

class _SupportLayout(PrefixLayout):
    """Chain e0 < e1 < e3 with two antichains hanging between the links."""

    total = False

    def __init__(self, w: WitnessPredicate, s: SupportDecider):
        self.w = w
        self.s = s
        super().__init__(lambda n: w.p(n) + 2)
        self._rank = lru_cache(maxsize=1 << 18)(self._rank)

    def _rank(self, x, u):
        n = len(x)
        z, tag = u[n:-2], u[-2:]
        if "1" not in z and tag != "10":
            return {"00": 0, "01": 2, "11": 4}[tag]
        if tag == "10" and self.w.decider(x, z):
            return 3
        return 1

    def first(self, x):
        return self.lo(x)

    def last(self, x):
        return x + "0" * self.w.p(len(x)) + "11"

    def inner_leq(self, x, u, v):
        return u == v or self._rank(x, u) < self._rank(x, v)

    def inner_precedes(self, x, u, v):
        ru, rv = self._rank(x, u), self._rank(x, v)
        if u == v:
            return False
        if ru == 0:
            return rv == 1
        if ru == 1:
            return rv == 2
        if ru == 2:
            return rv == 3 or (rv == 4 and not self.s.in_support(x))
        if ru == 3:
            return rv == 4
        return False


def build_support_aware_order(w: WitnessPredicate, s: SupportDecider) -> OrderTriple:
    if not w.normalized:
        raise NormalizationError("the witness predicate must be normalized first")
    layout = _SupportLayout(w, s)
    blocks = BlockOrder(layout, f"support-order[{w.name}]")

    def b(x):
        return x + "0" * w.p(len(x)) + "01"

    def t(x):
        return x + "0" * w.p(len(x)) + "11"

    return OrderTriple(
        name=blocks.name, order=blocks.as_porder(), b=b, t=t,
        target=f"number of accepted witnesses of {w.name}",
        blocks=blocks,
        candidates=lambda x: layout.members(x),
    )


# ---------------------------------------------------------------- offset order

class _OffsetLayout(PrefixLayout):
    """Groups {z00}, {z01} with accepted z11, {z10} with rejected z11."""

    def __init__(self, w: WitnessPredicate):
        self.w = w
        super().__init__(lambda n: w.p(n) + 2)
        self._group = lru_cache(maxsize=1 << 18)(self._group)
        self._key = lru_cache(maxsize=1 << 18)(self._key)

    def _group(self, x, z, tag):
        if tag == "00":
            return 0
        if tag == "01":
            return 1
        if tag == "10":
            return 2
        return 1 if self.w.decider(x, z) else 2

    def first(self, x):
        return self.lo(x)

    def last(self, x):
        return self.hi(x)

    def _key(self, x, u):
        n = len(x)
        return (self._group(x, u[n:-2], u[-2:]), u)

    keyed = True

    def inner_key(self, x, u):
        return self._key(x, u)

    def inner_succ(self, x, u):
        n = len(x)
        z, tag = u[n:-2], u[-2:]
        width = len(z)
        group = self._group(x, z, tag)
        nz = bin_word(nu(z) + 1, width) if "0" in z else None
        if group == 0:
            return x + nz + "00" if nz is not None else x + "0" * width + "01"
        plain = "01" if group == 1 else "10"
        if tag == plain and self._group(x, z, "11") == group:
            return x + z + "11"
        if nz is not None:
            return x + nz + plain
        return x + "0" * width + "10" if group == 1 else None


def build_offset_order(w: WitnessPredicate) -> OrderTriple:
    if not w.normalized:
        raise NormalizationError("the witness predicate must be normalized first")
    layout = _OffsetLayout(w)
    blocks = BlockOrder(layout, f"offset-order[{w.name}]")

    def b(x):
        return x + "1" * w.p(len(x)) + "00"

    def t(x):
        return x + "0" * w.p(len(x)) + "10"

    return OrderTriple(
        name=blocks.name, order=blocks.as_porder(), b=b, t=t,
        target=f"accepted witnesses of {w.name} plus 2^p",
        blocks=blocks,
        candidates=lambda x: layout.members(x),
        t_len=_sum_poly(w.p.plus(2)),
    )


# ---------------------------------------------------------------- unique-path machines

class _UPSVLayout(PrefixLayout):
    """Five groups over the tags 00 / 11 in B / 01 / 11 not in B / 10."""

    def __init__(self, m: UPSVMachine):
        self.m = m
        super().__init__(lambda n: 2 * m.p(n) + 2)
        self.outputs = lru_cache(maxsize=1024)(self._outputs)
        self._group = lru_cache(maxsize=1 << 18)(self._group)
        self._key = lru_cache(maxsize=1 << 18)(self._key)

    def _outputs(self, x):
        """Sorted (z, output) pairs for every path that produces an output."""
        p = self.m.p(len(x))
        cap = (1 << p) - 1
        found = []
        for z, out in sorted(self.m.outputs(x).items()):
            if not 0 <= out <= cap:
                raise ValueBoundError(f"output {out} on path {z!r} exceeds {cap}")
            found.append((z, out))
        return tuple(found)

    def _out(self, x, z):
        out = self.m.path_output(x, z)
        if out is not None and not 0 <= out < (1 << len(z)):
            raise ValueBoundError(f"output {out} on path {z!r} exceeds {(1 << len(z)) - 1}")
        return out

    def in_b(self, x, z, u):
        out = self._out(x, z)
        return out is not None and out > nu(u)

    def _group(self, x, y, tag):
        if tag == "00":
            return 0
        if tag == "01":
            return 2
        if tag == "10":
            return 4
        half = len(y) // 2
        return 1 if self.in_b(x, y[:half], y[half:]) else 3

    def first(self, x):
        return self.lo(x)

    def last(self, x):
        return x + "1" * (2 * self.m.p(len(x))) + "10"

    def _key(self, x, u):
        n = len(x)
        return (self._group(x, u[n:-2], u[-2:]), u)

    keyed = True

    def inner_key(self, x, u):
        return self._key(x, u)

    def _next_b(self, x, y):
        """Lex-first y' > y (or >= ε start when y is None) with xy' in B."""
        p = self.m.p(len(x))
        if y is not None:
            z, u = y[:p], y[p:]
            out = self._out(x, z)
            if out is not None and nu(u) + 1 < out:
                return z + bin_word(nu(u) + 1, p)
        for z, out in self.outputs(x):
            if out > 0 and (y is None or z > y[:p]):
                return z + "0" * p
        return None

    def _next_not_b(self, x, y):
        p = self.m.p(len(x))
        total = 2 * p
        i = -1 if y is None else nu(y)
        while True:
            i += 1
            if i >= (1 << total):
                return None
            cand = bin_word(i, total)
            z, u = cand[:p], cand[p:]
            out = self._out(x, z)
            if out is None or out <= nu(u):
                return cand
            # skip the run of B members that starts here
            i = (nu(z) << p) + out - 1

    def inner_succ(self, x, u):
        n = len(x)
        y, tag = u[n:-2], u[-2:]
        total = len(y)
        group = self._group(x, y, tag)
        ny = bin_word(nu(y) + 1, total) if "0" in y else None
        if group in (0, 2, 4):
            if ny is not None:
                return x + ny + tag
            if group == 4:
                return None
        elif group == 1:
            nb = self._next_b(x, y)
            if nb is not None:
                return x + nb + "11"
        else:
            nb = self._next_not_b(x, y)
            if nb is not None:
                return x + nb + "11"
        # move on to the first element of the next nonempty group
        if group == 0:
            nb = self._next_b(x, None)
            if nb is not None:
                return x + nb + "11"
            return x + "0" * total + "01"
        if group == 1:
            return x + "0" * total + "01"
        if group == 2:
            nb = self._next_not_b(x, None)
            if nb is not None:
                return x + nb + "11"
        return x + "0" * total + "10"


def build_upsv_order(m: UPSVMachine) -> OrderTriple:
    layout = _UPSVLayout(m)
    blocks = BlockOrder(layout, f"upsv-order[{m.name}]")

    def check_nonzero(x):
        if not any(out > 0 for _, out in layout.outputs(x)):
            raise ModelViolation(f"{m.name} outputs 0 on {x!r}; only positive outputs are supported")

    def b(x):
        check_nonzero(x)
        return x + "1" * (2 * m.p(len(x))) + "00"

    def t(x):
        check_nonzero(x)
        return x + "0" * (2 * m.p(len(x))) + "01"

    return OrderTriple(
        name=blocks.name, order=blocks.as_porder(), b=b, t=t,
        target=f"output of {m.name}",
        blocks=blocks,
        candidates=lambda x: layout.members(x),
        t_len=_sum_poly(Poly(tuple(2 * c for c in m.p.coeffs)).plus(2)),
    )


# ---------------------------------------------------------------- increment

class _IncrementLayout(PrefixLayout):
    """x0^(p+2), then encodings of the base interval [b, t] in base order, then lex."""

    def __init__(self, base: OrderTriple):
        self.base = base
        self.keyed = base.order.sort_key is not None
        self.p = lambda n: base.order.length_bound(base.t_len(n)) + 1
        super().__init__(lambda n: self.p(n) + 2)
        self.top = lru_cache(maxsize=4096)(self.top)
        self._rank = lru_cache(maxsize=1 << 18)(self._rank)

    def top(self, x):
        """t(x), replaced by b(x) when b(x) is not below it."""
        lo, hi = self.base.b(x), self.base.t(x)
        return hi if self.base.order.leq(lo, hi) else lo

    def encode(self, x, z):
        p = self.p(len(x))
        if len(z) >= p:
            raise EncodingOverflow(f"{z!r} is too long for an encoding of width {p}")
        return x + "0" * (p - len(z)) + "1" + z + "0"

    def decode(self, x, u):
        """The base word encoded by u, or None when u is not an encoding in D_x."""
        tail = u[len(x):]
        j = tail.find("1")
        if j < 0 or tail[-1] != "0" or j == len(tail) - 1:
            return None
        z = tail[j + 1:-1]
        leq = self.base.order.leq
        if leq(self.base.b(x), z) and leq(z, self.top(x)):
            return z
        return None

    def _rank(self, x, u):
        if u == self.lo(x):
            return (0, None)
        z = self.decode(x, u)
        if z is not None:
            return (1, z)
        return (2, u)

    def first(self, x):
        return self.lo(x)

    def last(self, x):
        return self.hi(x)

    def inner_leq(self, x, u, v):
        gu, ku = self._rank(x, u)
        gv, kv = self._rank(x, v)
        if gu != gv:
            return gu < gv
        if gu == 1:
            return self.base.order.leq(ku, kv)
        return gu == 0 or ku <= kv

    def inner_key(self, x, u):
        g, k = self._rank(x, u)
        if g == 1:
            return (1, self.base.order.sort_key(k))
        return (g, k if g == 2 else "")

    def _next_rest(self, x, u):
        width = len(u) - len(x)
        i = nu(u[len(x):])
        while True:
            i += 1
            if i >= (1 << width):
                return None
            cand = x + bin_word(i, width)
            if self.decode(x, cand) is None:
                return cand

    def inner_succ(self, x, u):
        group, z = self._rank(x, u)
        if group == 0:
            return self.encode(x, self.base.b(x))
        if group == 1:
            if z == self.top(x):
                return self._next_rest(x, self.lo(x))
            step = self.base.order.successor
            return self.encode(x, step(z))
        return self._next_rest(x, u)


def increment_order(base: OrderTriple) -> OrderTriple:
    order = base.order
    if not order.is_total or order.leq is None or order.precedes is None:
        raise NotTotalError("the base order must be total with comparison and adjacency")
    if base.t_len is None:
        raise ValueError("the base triple must declare the length of t(x)")
    layout = _IncrementLayout(base)
    blocks = BlockOrder(layout, f"increment-order[{base.name}]")
    return OrderTriple(
        name=blocks.name, order=blocks.as_porder(),
        b=lambda x: layout.lo(x),
        t=lambda x: layout.encode(x, layout.top(x)),
        target=f"({base.target}) + 1",
        blocks=blocks,
        candidates=lambda x: layout.members(x),
    )


def eval_triple(triple: OrderTriple, x: str, mode: str = "walk",
                step_budget: int = 10**7, cap: int = 1 << 20) -> int:
    if mode == "walk":
        return interval_size_by_walk(triple.spec, x, step_budget=step_budget)
    if mode == "bruteforce":
        return interval_size_bruteforce(triple.spec, x, cap=cap)
    raise ValueError(f"unknown mode {mode!r}")
