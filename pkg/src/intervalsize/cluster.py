"""Balanced guess-and-check machines whose accepting paths form one run of an order.

A machine is a path length plus an acceptance predicate.  Paths are compared
through an order on words; `embed` maps a path to the word the order sees
(the identity unless the witness says otherwise).
"""

from dataclasses import dataclass
from functools import cmp_to_key
from typing import Callable, Iterable, Optional

from .blocks import BlockOrder, PrefixLayout
from .errors import BudgetExceeded, MissingCapability, NotAClusterError
from .order_core import POrder, shortlex_order
from .words import bin_word, nu, ones, shortlex_pred, shortlex_succ, words_of_length

DEFAULT_PATH_BUDGET = 1 << 16
# above this many paths, cluster checks walk the order from the least
# accepting path instead of sorting every path
SORT_BUDGET = 1 << 12


@dataclass(frozen=True)
class BalancedNTM:
    """path_len(x) is the exact length of every path on input x.

    enumerate_accepting, when present, lists a superset of the accepting
    paths for inputs too large to enumerate; each is re-checked with accept.
    """

    name: str
    path_len: Callable[[str], int]
    accept: Callable[[str, str], bool]
    output: Optional[Callable[[str, str], Optional[int]]] = None
    enumerate_accepting: Optional[Callable[[str], Iterable[str]]] = None


def _identity_embed(x, w):
    return w


@dataclass(frozen=True)
class ClusterWitness:
    machine: BalancedNTM
    order: POrder
    embed: Callable[[str, str], str] = _identity_embed
    unembed: Optional[Callable[[str, str], Optional[str]]] = None

    def path_of(self, x, u) -> Optional[str]:
        """The path whose embedding is u, or None if u is not a path."""
        if self.unembed is not None:
            return self.unembed(x, u)
        return u if len(u) == self.machine.path_len(x) else None

    def accepts_word(self, x, u) -> bool:
        w = self.path_of(x, u)
        return w is not None and self.machine.accept(x, w)

    def pred_word(self, u) -> Optional[str]:
        if self.order.predecessors is None:
            raise MissingCapability(f"{self.order.name} cannot list predecessors")
        found = list(self.order.predecessors(u))
        return found[0] if found else None


def acc_set(m: BalancedNTM, x: str, budget: int = DEFAULT_PATH_BUDGET) -> list:
    """Accepting paths in shortlex order."""
    p = m.path_len(x)
    if p < 0:
        return []
    if (1 << p) <= budget:
        return [w for w in words_of_length(p) if m.accept(x, w)]
    if m.enumerate_accepting is not None:
        return sorted({w for w in m.enumerate_accepting(x) if len(w) == p and m.accept(x, w)})
    raise BudgetExceeded(f"{m.name}: 2^{p} paths exceed the budget of {budget}")


def out_set(m: BalancedNTM, x: str, budget: int = DEFAULT_PATH_BUDGET) -> list:
    if m.output is None:
        return []
    return sorted({m.output(x, w) for w in acc_set(m, x, budget)})


def _sorted_paths(w: ClusterWitness, x, paths):
    leq = w.order.leq

    def cmp(a, b):
        if a == b:
            return 0
        return -1 if leq(w.embed(x, a), w.embed(x, b)) else 1

    return sorted(paths, key=cmp_to_key(cmp))


def cluster_partition(m: BalancedNTM, order: POrder, x: str, embed=_identity_embed,
                      budget: int = DEFAULT_PATH_BUDGET) -> list:
    """Maximal runs of equal acceptance status along the order: (accepting, paths)."""
    p = m.path_len(x)
    if (1 << p) > budget:
        raise BudgetExceeded(f"{m.name}: 2^{p} paths exceed the budget of {budget}")
    paths = _sorted_paths(ClusterWitness(m, order, embed), x, list(words_of_length(p)))
    runs = []
    for w in paths:
        status = m.accept(x, w)
        if runs and runs[-1][0] == status:
            runs[-1][1].append(w)
        else:
            runs.append((status, [w]))
    return runs


def is_cluster_witness(w: ClusterWitness, x: str, budget: int = DEFAULT_PATH_BUDGET) -> bool:
    """Accepting paths form a single run (an empty set counts as one)."""
    m = w.machine
    if (1 << m.path_len(x)) <= min(budget, SORT_BUDGET):
        runs = cluster_partition(m, w.order, x, w.embed, budget)
        return sum(1 for status, _ in runs if status) <= 1
    acc = acc_set(m, x, budget)
    if not acc:
        return True
    members = set(acc)
    u = w.embed(x, _sorted_paths(w, x, acc)[0])
    for _ in range(len(acc) - 1):
        u = w.order.successor(u)
        if w.path_of(x, u) not in members:
            return False
    return True


def is_cluster(m: BalancedNTM, order: POrder, x: str, budget: int = DEFAULT_PATH_BUDGET) -> bool:
    return is_cluster_witness(ClusterWitness(m, order), x, budget)


def cl_count(w: ClusterWitness, x: str, budget: int = DEFAULT_PATH_BUDGET) -> int:
    if not is_cluster_witness(w, x, budget):
        raise NotAClusterError(f"accepting paths of {w.machine.name} on {x!r} are not one run")
    return len(acc_set(w.machine, x, budget))


# ---------------------------------------------------------------- interval to cluster

class _InitialSegmentLayout(PrefixLayout):
    """Block of x: encodings 0^k 1 y 0 of every y <= x (ordered by the base
    order), then the remaining words of the block in lex order."""

    def __init__(self, base: POrder, base_pred):
        self.base = base
        self.base_pred = base_pred
        self.keyed = base.sort_key is not None
        self.p = base.length_bound
        super().__init__(lambda n: self.p(n) + 2, max_prefix_len=512)

    def encode(self, x, y):
        return x + "0" * (self.p(len(x)) - len(y)) + "1" + y + "0"

    def decode(self, x, u):
        """y when u is the encoding of some y <= x, else None."""
        v = u[len(x):]
        if not v.endswith("0") or "1" not in v:
            return None
        body = v[:-1]
        y = body[body.index("1") + 1:]
        return y if self.base.leq(y, x) else None

    def first(self, x):
        return self.encode(x, self.base.min_element)

    def last(self, x):
        return self.hi(x)

    def _next_plain(self, x, u):
        while True:
            if u == self.hi(x):
                return None
            u = shortlex_succ(u)
            if self.decode(x, u) is None:
                return u

    def inner_leq(self, x, u, v):
        yu, yv = self.decode(x, u), self.decode(x, v)
        if yu is not None and yv is not None:
            return self.base.leq(yu, yv)
        if (yu is None) != (yv is None):
            return yu is not None
        return u <= v

    def inner_key(self, x, u):
        y = self.decode(x, u)
        return (0, self.base.sort_key(y)) if y is not None else (1, u)

    def inner_succ(self, x, u):
        y = self.decode(x, u)
        if y is None:
            return self._next_plain(x, u)
        if y == x:
            return self.lo(x)
        return self.encode(x, self.base.successor(y))

    def inner_pred(self, x, v):
        y = self.decode(x, v)
        if y is not None:
            if y == self.base.min_element:
                return None
            return self.encode(x, self.base_pred(y))
        if v == self.lo(x):
            return self.encode(x, x)
        u = v
        while True:
            u = shortlex_pred(u)
            if self.decode(x, u) is None:
                return u


def initial_segment_order(base: POrder, base_pred) -> BlockOrder:
    if base.min_element is None or base.successor is None:
        raise MissingCapability(f"{base.name} needs a least element and a successor")
    return BlockOrder(_InitialSegmentLayout(base, base_pred), f"initial-segments[{base.name}]")


def _with_predecessors(blocks: BlockOrder) -> POrder:
    base = blocks.as_porder()

    def preds(v):
        u = blocks.predecessor(v)
        return [] if u is None else [u]

    return POrder(name=base.name, length_bound=base.length_bound, leq=base.leq,
                  precedes=base.precedes, is_total=True, min_element=base.min_element,
                  successor=base.successor, predecessors=preds, sort_key=base.sort_key)


def ift_to_cluster(triple) -> ClusterWitness:
    """Machine whose accepting paths are the encodings of the words strictly
    between b(x) and t(x); it counts the triple's interval size."""
    base = triple.order
    if not base.is_total:
        raise MissingCapability(f"{base.name} is not total")
    base_pred = triple.blocks.predecessor if triple.blocks is not None else None
    blocks = initial_segment_order(base, base_pred)
    layout = blocks.layout
    order = _with_predecessors(blocks)

    def path_len(x):
        return layout.p(len(triple.t(x))) + 2

    def accept(x, w):
        tx = triple.t(x)
        if len(w) != path_len(x):
            return False
        y = layout.decode(tx, tx + w)
        return y is not None and base.lt(triple.b(x), y) and base.lt(y, tx)

    def enumerate_accepting(x):
        tx, bx = triple.t(x), triple.b(x)
        if not base.leq(bx, tx):
            return
        y = base.successor(bx)
        while y != tx:
            yield layout.encode(tx, y)[len(tx):]
            y = base.successor(y)

    def embed(x, w):
        return triple.t(x) + w

    def unembed(x, u):
        tx = triple.t(x)
        if len(u) == len(tx) + path_len(x) and u.startswith(tx):
            return u[len(tx):]
        return None

    machine = BalancedNTM(f"cluster[{triple.name}]", path_len, accept,
                          enumerate_accepting=enumerate_accepting)
    return ClusterWitness(machine, order, embed, unembed)


# ---------------------------------------------------------------- detectors

def _embed_len(w: ClusterWitness, x):
    return len(w.embed(x, "0" * w.machine.path_len(x)))


def _unpack(bits: str, lengths: list):
    """A word of one of several lengths, written with a selector and zero padding.

    The selector has just enough bits for len(lengths) choices; the body has
    max(lengths) bits, and padding beyond the chosen length must be zero.
    """
    sel_bits = max(1, (len(lengths) - 1).bit_length())
    sel = nu(bits[:sel_bits])
    body = bits[sel_bits:]
    if sel >= len(lengths) or lengths[sel] < 0:
        return None
    n = lengths[sel]
    if "1" in body[n:]:
        return None
    return body[:n]


def _pack(u: str, lengths: list) -> str:
    sel_bits = max(1, (len(lengths) - 1).bit_length())
    width = max(lengths)
    return bin_word(lengths.index(len(u)), sel_bits) + u + "0" * (width - len(u))


def _field_len(lengths):
    return max(1, (len(lengths) - 1).bit_length()) + max(lengths)


def nonemptiness_detector(w: ClusterWitness) -> BalancedNTM:
    """At most one accepting path; accepts iff some path of the machine accepts.

    Path: z, then a word z' of embedded length E or E+1 that must follow z.
    """
    m = w.machine

    def shape(x):
        p, e = m.path_len(x), _embed_len(w, x)
        return p, [e, e + 1]

    def path_len(x):
        p, lens = shape(x)
        return p + _field_len(lens)

    def accept(x, path):
        p, lens = shape(x)
        z, z2 = path[:p], _unpack(path[p:], lens)
        if z2 is None:
            return False
        return (w.order.precedes(w.embed(x, z), z2) and m.accept(x, z)
                and not w.accepts_word(x, z2))

    def candidates(x):
        p, lens = shape(x)
        for z in acc_set(m, x):
            z2 = w.order.successor(w.embed(x, z))
            if z2 is not None and len(z2) in lens:
                yield z + _pack(z2, lens)

    return BalancedNTM(f"nonempty[{m.name}]", path_len, accept, enumerate_accepting=candidates)


def uniqueness_detector(w: ClusterWitness) -> BalancedNTM:
    """At most one accepting path; accepts iff exactly one path of the machine accepts.

    Path: y, then z of embedded length E-1, E or E+1 that must follow y, then
    the word w' of length E-1 or E that must precede y.
    """
    m = w.machine

    def shape(x):
        p, e = m.path_len(x), _embed_len(w, x)
        return p, [e - 1, e, e + 1], [e - 1, e]

    def path_len(x):
        p, zl, wl = shape(x)
        return p + _field_len(zl) + _field_len(wl)

    def accept(x, path):
        p, zl, wl = shape(x)
        cut = p + _field_len(zl)
        y = path[:p]
        z, before = _unpack(path[p:cut], zl), _unpack(path[cut:], wl)
        if z is None or before is None:
            return False
        ey = w.embed(x, y)
        empty_case = y == "" and before == ey
        return (w.order.precedes(ey, z) and m.accept(x, y)
                and (w.order.precedes(before, ey) or empty_case)
                and (not w.accepts_word(x, before) or empty_case)
                and not w.accepts_word(x, z))

    def candidates(x):
        p, zl, wl = shape(x)
        for y in acc_set(m, x):
            ey = w.embed(x, y)
            z = w.order.successor(ey)
            before = w.pred_word(ey)
            if before is None and y == "":
                before = ey
            if z is not None and before is not None and len(z) in zl and len(before) in wl:
                yield y + _pack(z, zl) + _pack(before, wl)

    return BalancedNTM(f"unique[{m.name}]", path_len, accept, enumerate_accepting=candidates)


def cluster_to_almost_unique(w: ClusterWitness, q: Callable[[int], int]) -> BalancedNTM:
    """Machine with one accepting path, whose output is the number of accepting
    paths of w.machine, whenever that number is positive and at most q(|x|).

    Path: y, z, y' (length E-1 or E), z' (length E or E+1), r, then q-2 slots.
    Unused slots and the r field on the y = z branch must be zero.
    """
    m = w.machine

    def shape(x):
        p, e = m.path_len(x), _embed_len(w, x)
        slots = max(0, q(len(x)) - 2)
        return p, e, slots, slots.bit_length()

    def layout(x):
        p, e, slots, rbits = shape(x)
        yl, zl = [e - 1, e], [e, e + 1]
        return p, slots, rbits, yl, zl

    def path_len(x):
        p, slots, rbits, yl, zl = layout(x)
        if p == 0:
            return 0
        return 2 * p + _field_len(yl) + _field_len(zl) + rbits + slots * p

    def split(x, path):
        p, slots, rbits, yl, zl = layout(x)
        i = 2 * p
        j = i + _field_len(yl)
        k = j + _field_len(zl)
        vs = path[k + rbits:]
        return (path[:p], path[p:i], _unpack(path[i:j], yl), _unpack(path[j:k], zl),
                path[k:k + rbits], [vs[s * p:(s + 1) * p] for s in range(slots)])

    def run(x, path):
        """Output on this path, or None when it rejects."""
        p = m.path_len(x)
        if p == 0:
            return 1 if m.accept(x, "") else None
        y, z, y2, z2, rfield, vs = split(x, path)
        if y2 is None or z2 is None:
            return None
        ey, ez = w.embed(x, y), w.embed(x, z)
        prec = w.order.precedes
        if not (prec(y2, ey) and prec(ez, z2) and not w.accepts_word(x, y2)
                and not w.accepts_word(x, z2) and m.accept(x, y) and m.accept(x, z)):
            return None
        if y == z:
            if "1" in rfield or any("1" in v for v in vs):
                return None
            return 1
        r = nu(rfield)
        if r > len(vs) or any("1" in v for v in vs[r:]):
            return None
        chain = [ey] + [w.embed(x, v) for v in vs[:r]] + [ez]
        if all(prec(a, b) for a, b in zip(chain, chain[1:])):
            return r + 2
        return None

    def candidates(x):
        p, slots, rbits, yl, zl = layout(x)
        if p == 0:
            yield ""
            return
        acc = acc_set(m, x)
        if not acc:
            return
        ordered = _sorted_paths(w, x, acc)
        y, z = ordered[0], ordered[-1]
        y2 = w.pred_word(w.embed(x, y))
        z2 = w.order.successor(w.embed(x, z))
        if y2 is None or z2 is None or len(y2) not in yl or len(z2) not in zl:
            return
        head = y + z + _pack(y2, yl) + _pack(z2, zl)
        if y == z:
            yield head + "0" * (rbits + slots * p)
            return
        inner = ordered[1:-1]
        if len(inner) > slots:
            return
        vs = inner + ["0" * p] * (slots - len(inner))
        yield head + bin_word(len(inner), rbits) + "".join(vs)

    def accept(x, path):
        return len(path) == path_len(x) and run(x, path) is not None

    def output(x, path):
        return run(x, path)

    return BalancedNTM(f"almost-unique[{m.name}]", path_len, accept, output,
                       enumerate_accepting=candidates)


def almost_unique_check(m: BalancedNTM, f_oracle, inputs, budget: int = DEFAULT_PATH_BUDGET) -> list:
    """Violations of: f(x) > 0 gives one accepting path with output f(x);
    f(x) = 0 gives no outputs.  Empty list means compliant."""
    found = []
    for x in inputs:
        f = f_oracle(x)
        acc = acc_set(m, x, budget)
        outs = sorted({m.output(x, w) for w in acc}) if m.output else []
        if f > 0:
            if len(acc) != 1:
                found.append((x, f"{len(acc)} accepting paths, expected 1"))
            if outs != [f]:
                found.append((x, f"outputs {outs}, expected [{f}]"))
        elif outs or acc:
            found.append((x, f"f(x) = 0 but outputs {outs} on {len(acc)} paths"))
    return found


# ---------------------------------------------------------------- catalog

def _machine(name, extra, accept):
    return BalancedNTM(name, lambda x: len(x) + extra, accept)


MACHINES = {
    "always-reject": lambda: _machine("always-reject", 1, lambda x, w: False),
    "all-accept": lambda: _machine("all-accept", 1, lambda x, w: True),
    "parity": lambda: _machine("parity", 2, lambda x, w: ones(w) % 2 == 1),
    "ones-block": lambda: _machine("ones-block", 2, lambda x, w: 1 <= nu(w) <= ones(x)),
    "singleton": lambda: _machine("singleton", 2, lambda x, w: nu(w) == 1),
    "ends-agree": lambda: _machine("ends-agree", 2, lambda x, w: w[0] == w[-1]),
}

# largest accepting-set size on inputs of length n, for machines that have one
MACHINE_BOUNDS = {
    "always-reject": lambda n: 0,
    "ones-block": lambda n: n,
    "singleton": lambda n: 1,
}


def machine(name: str) -> BalancedNTM:
    from .errors import UnknownInstance
    if name not in MACHINES:
        raise UnknownInstance(f"no machine named {name!r}")
    return MACHINES[name]()


def shortlex_witness(m: BalancedNTM) -> ClusterWitness:
    base = shortlex_order()
    order = POrder(name=base.name, length_bound=base.length_bound, leq=base.leq,
                   precedes=base.precedes, is_total=True, min_element="",
                   successor=base.successor, sort_key=base.sort_key,
                   predecessors=lambda v: [] if v == "" else [shortlex_pred(v)])
    return ClusterWitness(m, order)
