"""Partial orders on binary words and generic interval-size procedures."""

from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable, NamedTuple, Optional

import numpy as np

from .errors import BudgetExceeded, MissingCapability, NotTotalError, UniverseTooLarge
from .words import count_words_up_to, shortlex_key, shortlex_leq, shortlex_succ, words_up_to

DEFAULT_UNIVERSE_CAP = 1 << 20


@dataclass(frozen=True)
class Poly:
    """Polynomial with nonnegative integer coefficients, lowest degree first.

    `floor` raises small values: the result is max(floor, sum c_i n^i).
    """

    coeffs: tuple = (0,)
    floor: int = 0

    def __post_init__(self):
        if not self.coeffs or any(c < 0 for c in self.coeffs) or self.floor < 0:
            raise ValueError(f"bad polynomial {self.coeffs} floor={self.floor}")

    @classmethod
    def of(cls, *coeffs, floor=0):
        return cls(tuple(coeffs), floor)

    @classmethod
    def identity(cls):
        return cls((0, 1))

    @classmethod
    def constant(cls, c):
        return cls((c,))

    def __call__(self, n: int) -> int:
        total = 0
        for c in reversed(self.coeffs):
            total = total * n + c
        return max(self.floor, total)

    def plus(self, k: int) -> "Poly":
        cs = list(self.coeffs)
        cs[0] += k
        return Poly(tuple(cs), self.floor + k if self.floor else 0)

    def compose(self, inner: "Poly") -> "Poly":
        """self(inner(n)); only exact when neither side has a floor."""
        if self.floor or inner.floor:
            raise ValueError("cannot compose floored polynomials")
        result = [0]
        for c in reversed(self.coeffs):
            # result = result * inner + c
            prod = [0] * (len(result) + len(inner.coeffs) - 1)
            for i, a in enumerate(result):
                for j, b in enumerate(inner.coeffs):
                    prod[i + j] += a * b
            prod[0] += c
            result = prod
        while len(result) > 1 and result[-1] == 0:
            result.pop()
        return Poly(tuple(result))

    @property
    def strictly_increasing(self) -> bool:
        return self.floor == 0 and any(c > 0 for c in self.coeffs[1:])

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append("n" if c == 1 else f"{c}n")
            else:
                terms.append(f"n^{i}" if c == 1 else f"{c}n^{i}")
        body = " + ".join(terms) or "0"
        return f"max({self.floor}, {body})" if self.floor else body


@dataclass(frozen=True)
class POrder:
    """A partial order on words, described by whichever capabilities it offers.

    successor and predecessors are optional accelerators: successor(u) is the
    unique v with precedes(u, v) (total orders), predecessors(v) lists every u
    with precedes(u, v).
    """

    name: str
    length_bound: Poly
    leq: Optional[Callable[[str, str], bool]] = None
    precedes: Optional[Callable[[str, str], bool]] = None
    is_total: bool = False
    min_element: Optional[str] = None
    successor: Optional[Callable[[str], Optional[str]]] = None
    predecessors: Optional[Callable[[str], Iterable[str]]] = field(default=None)
    # when given, leq(u, v) is exactly sort_key(u) <= sort_key(v)
    sort_key: Optional[Callable[[str], tuple]] = None

    def lt(self, u: str, v: str) -> bool:
        if self.leq is None:
            raise MissingCapability(f"{self.name} has no comparison")
        return u != v and self.leq(u, v)


@dataclass(frozen=True)
class IntervalSpec:
    """An order with boundary functions.

    `universe`, when given, maps x to a finite candidate set known to contain
    every word strictly between b(x) and t(x).
    """

    order: POrder
    b: Callable[[str], str]
    t: Callable[[str], str]
    universe: Optional[Callable[[str], Iterable[str]]] = None


def shortlex_order() -> POrder:
    return POrder(
        name="shortlex",
        length_bound=Poly.identity(),
        leq=shortlex_leq,
        precedes=lambda u, v: shortlex_succ(u) == v,
        is_total=True,
        min_element="",
        successor=shortlex_succ,
        sort_key=shortlex_key,
    )


class Violation(NamedTuple):
    kind: str
    witnesses: tuple


def key_ranks(order: POrder, words):
    """Rank of each word's sort_key among the distinct keys, or None without a key."""
    if order.sort_key is None:
        return None
    keys = [order.sort_key(w) for w in words]
    index = {k: i for i, k in enumerate(sorted(set(keys)))}
    return np.array([index[k] for k in keys])


def relation_matrix(order: POrder, words) -> np.ndarray:
    """mat[i, j] = leq(words[i], words[j]), vectorised through sort_key when present."""
    ranks = key_ranks(order, words)
    if ranks is not None:
        return ranks[:, None] <= ranks[None, :]
    leq = order.leq
    n = len(words)
    mat = np.zeros((n, n), dtype=bool)
    for i, u in enumerate(words):
        row = mat[i]
        for j, v in enumerate(words):
            if leq(u, v):
                row[j] = True
    return mat


def _sample_pairs(n, samples, rng, by_rank=None):
    if n * n <= samples:
        return np.divmod(np.arange(n * n), n)
    rows, cols = rng.integers(0, n, samples), rng.integers(0, n, samples)
    if by_rank is not None:
        rows = np.concatenate([rows, by_rank[:-1], by_rank[1:]])
        cols = np.concatenate([cols, by_rank[1:], by_rank[:-1]])
    return rows, cols


def is_linear_matrix(mat: np.ndarray) -> bool:
    """Reflexive, total, antisymmetric and transitive: the scores are 1..n."""
    n = len(mat)
    scores = np.sort(mat.sum(axis=1))
    return bool(np.array_equal(scores, np.arange(1, n + 1)) and np.diag(mat).all()
                and (mat | mat.T).all())


def verify_order_axioms(order: POrder, universe, max_examples: int = 5, matrix=None,
                        key_samples: int = 20000, seed: int = 0) -> list:
    """List every axiom violation of `order` on a finite universe.

    Checks reflexivity, antisymmetry, transitivity, the length bound and,
    when the order claims it, totality.  An empty list means all hold.
    An order with a sort_key is judged through its key ranks (distinct
    ranks make a linear order), and leq is compared against the key on
    every pair of small universes, else on a random sample plus all rank
    neighbours.
    """
    if order.leq is None:
        raise MissingCapability(f"{order.name} has no comparison")
    words = sorted(set(universe), key=shortlex_key)
    n = len(words)
    found = []

    def report(kind, pairs):
        for pair in pairs[:max_examples]:
            found.append(Violation(kind, tuple(words[i] for i in pair)))

    lengths = np.array([len(w) for w in words])
    bound = np.array([order.length_bound(len(w)) for w in words])
    ranks = key_ranks(order, words) if matrix is None else None
    if ranks is not None:
        by_rank = np.argsort(ranks, kind="stable")
        rows, cols = _sample_pairs(n, key_samples, np.random.default_rng(seed), by_rank)
        leq = order.leq
        report("key-consistency",
               [(i, j) for i, j in zip(rows.tolist(), cols.tolist())
                if bool(leq(words[i], words[j])) != bool(ranks[i] <= ranks[j])])
        if len(set(ranks.tolist())) == n:
            # linear: the longest word at or below each rank must fit its bound
            longest = np.maximum.accumulate(lengths[by_rank])
            over = np.flatnonzero(longest > bound[by_rank])
            examples = []
            for r in over[:max_examples]:
                v = by_rank[r]
                u = by_rank[int(np.argmax(lengths[by_rank[:r + 1]]))]
                examples.append((u, v))
            report("length-bound", examples)
            return found
        mat = ranks[:, None] <= ranks[None, :]
    else:
        mat = relation_matrix(order, words) if matrix is None else matrix

    too_long = mat & (lengths[:, None] > bound[None, :])
    report("length-bound", [tuple(p) for p in np.argwhere(too_long)])

    if is_linear_matrix(mat):
        return found

    diag = np.diag(mat)
    report("reflexivity", [(i,) for i in np.flatnonzero(~diag)])

    both = mat & mat.T
    np.fill_diagonal(both, False)
    report("antisymmetry", [tuple(p) for p in np.argwhere(both) if p[0] < p[1]])

    m = mat.astype(np.float32)
    two_step = (m @ m) > 0
    broken = two_step & ~mat
    if broken.any():
        examples = []
        for i, k in np.argwhere(broken)[:max_examples]:
            j = int(np.flatnonzero(mat[i] & mat[:, k])[0])
            examples.append((i, j, k))
        report("transitivity", examples)

    if order.is_total:
        incomparable = ~(mat | mat.T)
        report("totality", [tuple(p) for p in np.argwhere(incomparable) if p[0] < p[1]])
    return found


def adjacency_from_leq(order: POrder, x: str, y: str, universe=None) -> bool:
    """x strictly below y with nothing strictly between.

    Without `universe` every word of length at most q(|y|) is tried, so
    this is only for small oracle checks.
    """
    if not order.lt(x, y):
        return False
    if universe is None:
        universe = words_up_to(order.length_bound(len(y)))
    for z in universe:
        if z != x and z != y and order.leq(x, z) and order.leq(z, y):
            return False
    return True


def adjacency_mismatches(order: POrder, universe, max_examples: int = 5, matrix=None,
                         pair_cap: int = 20_000, window: int = 3, samples: int = 8,
                         seed: int = 0) -> list:
    """Pairs where precedes disagrees with adjacency computed from leq.

    The universe must be convex in the order (closed under betweenness),
    otherwise adjacency inside it can differ from true adjacency.  Up to
    pair_cap pairs every pair is tried; beyond that a linear order is
    checked on all pairs within `window` ranks plus `samples` random
    partners per word.
    """
    words = sorted(set(universe), key=shortlex_key)
    n = len(words)
    ranks = key_ranks(order, words) if matrix is None else None
    if ranks is None or len(set(ranks.tolist())) != n:
        mat = relation_matrix(order, words) if matrix is None else matrix
        if is_linear_matrix(mat):
            ranks = n - mat.sum(axis=1)
        else:
            ranks = None
    if ranks is not None:
        pos = np.empty(n, dtype=int)
        by_rank = np.argsort(ranks, kind="stable")
        pos[by_rank] = np.arange(n)
        pos_list = pos.tolist()

        def covers(i, j):
            return pos_list[j] == pos_list[i] + 1
    else:
        strict = mat.copy()
        np.fill_diagonal(strict, False)
        s = strict.astype(np.float32)
        cover_mat = strict & ~((s @ s) > 0)

        cover_rows = cover_mat.tolist()

        def covers(i, j):
            return cover_rows[i][j]

    if n * n <= pair_cap or ranks is None:
        rows, cols = np.divmod(np.arange(n * n), n)
    else:
        rng = np.random.default_rng(seed)
        shifts = np.arange(-window, window + 1)
        near = pos[:, None] + shifts[None, :]
        ok = (near >= 0) & (near < n)
        near_rows = np.broadcast_to(np.arange(n)[:, None], near.shape)[ok]
        near_cols = by_rank[near[ok]]
        rows = np.concatenate([near_rows, np.repeat(np.arange(n), samples)])
        cols = np.concatenate([near_cols, rng.integers(0, n, n * samples)])
    precedes = order.precedes
    bad = []
    for i, j in zip(rows.tolist(), cols.tolist()):
        if bool(precedes(words[i], words[j])) != bool(covers(i, j)):
            bad.append((words[i], words[j]))
            if len(bad) >= max_examples:
                return bad
    return bad


def _candidates(spec: IntervalSpec, x: str, universe, cap: int):
    if universe is not None:
        return universe
    if spec.universe is not None:
        return spec.universe(x)
    bound = spec.order.length_bound(len(spec.t(x)))
    if count_words_up_to(bound) > cap:
        raise UniverseTooLarge(f"Σ^≤{bound} exceeds the cap of {cap} words")
    return words_up_to(bound)


def interval_size_bruteforce(spec: IntervalSpec, x: str, universe=None,
                             cap: int = DEFAULT_UNIVERSE_CAP) -> int:
    """Count words strictly between b(x) and t(x) by testing every candidate."""
    order = spec.order
    if order.leq is None:
        raise MissingCapability(f"{order.name} has no comparison")
    lo, hi = spec.b(x), spec.t(x)
    leq = order.leq
    count = 0
    for z in _candidates(spec, x, universe, cap):
        if z != lo and z != hi and leq(lo, z) and leq(z, hi):
            count += 1
    return count


def successor_by_scan(order: POrder, bound: int):
    """Derive a successor function from precedes by scanning Σ^≤bound."""

    def step(u):
        for v in words_up_to(bound):
            if order.precedes(u, v):
                return v
        return None

    return step


def walk(order_step, start: str, stop: str, step_budget: int) -> int:
    """Number of steps from start to stop, minus one (words strictly between)."""
    if start == stop:
        return 0
    cur = start
    for taken in range(step_budget):
        cur = order_step(cur)
        if cur is None:
            raise BudgetExceeded(f"walk from {start!r} fell off before {stop!r}")
        if cur == stop:
            return taken
    raise BudgetExceeded(f"{stop!r} not reached within {step_budget} steps")


def interval_size_by_walk(spec: IntervalSpec, x: str, successor=None,
                          step_budget: int = 10**7) -> int:
    order = spec.order
    if not order.is_total:
        raise NotTotalError(f"{order.name} is not total; walking is undefined")
    lo, hi = spec.b(x), spec.t(x)
    if order.leq is not None and not order.leq(lo, hi):
        return 0
    step = successor or order.successor
    if step is None:
        if order.precedes is None:
            raise MissingCapability(f"{order.name} has no adjacency check")
        step = successor_by_scan(order, order.length_bound(len(hi)))
    return walk(step, lo, hi, step_budget)


def interval_size_by_descent(spec: IntervalSpec, x: str, step_budget: int = 10**6) -> int:
    """Count by exploring everything below t(x) through lower covers.

    Needs the predecessors capability; each reported cover is confirmed
    with precedes before it is followed.
    """
    order = spec.order
    if order.predecessors is None or order.leq is None:
        raise MissingCapability(f"{order.name} cannot list lower covers")
    lo, hi = spec.b(x), spec.t(x)
    seen = {hi}
    queue = deque([hi])
    count = 0
    while queue:
        v = queue.popleft()
        for u in order.predecessors(v):
            if u in seen:
                continue
            if order.precedes is not None and not order.precedes(u, v):
                raise ValueError(f"{u!r} is listed below {v!r} but is not covered by it")
            seen.add(u)
            if len(seen) > step_budget:
                raise BudgetExceeded("descent budget exhausted")
            if order.lt(lo, u):
                count += 1
                queue.append(u)
    return count


def interval_nonempty(spec: IntervalSpec, x: str) -> bool:
    order = spec.order
    lo, hi = spec.b(x), spec.t(x)
    return order.lt(lo, hi) and not order.precedes(lo, hi)


def interval_singleton(spec: IntervalSpec, x: str, universe=None,
                       cap: int = DEFAULT_UNIVERSE_CAP) -> bool:
    """Two adjacency checks: some z with b(x) ≺ z ≺ t(x)."""
    order = spec.order
    lo, hi = spec.b(x), spec.t(x)
    for z in _candidates(spec, x, universe, cap):
        if order.precedes(lo, z) and order.precedes(z, hi):
            return True
    return False


def reachable_leq(order: POrder, x: str, y: str, universe=None) -> bool:
    """Decide x ≤ y by searching for a chain of adjacent steps from x to y.

    Intermediate words are limited to length q(|y|), or to `universe`.
    """
    if x == y:
        return True
    if universe is None:
        universe = list(words_up_to(order.length_bound(len(y))))
    else:
        universe = list(universe)
    seen = {x}
    queue = deque([x])
    while queue:
        u = queue.popleft()
        for v in universe:
            if v in seen or not order.precedes(u, v):
                continue
            if v == y:
                return True
            seen.add(v)
            queue.append(v)
    return False
