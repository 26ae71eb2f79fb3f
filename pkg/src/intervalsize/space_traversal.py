"""Depth-first traversal of the configuration tree of a space-bounded machine.

Words handled here, for an input x of length n (s, t from the encoding):

* guessed ID   x·w·y        w: 2s bits (an enhanced ID suffix), y: t guess bits
* token        x·w·y·z·a    z: t-bit spin counter, a: direction bit

Every guessed ID is a node of one tree: non-final configurations point to
their successor configuration, final ones ("roots") are chained in a fixed
sequence.  The traversal step `d_step` visits each node twice (down token,
up token) and spins f(x) extra times at the initial configuration whose
guess equals the true output.  The interval between the two visits of the
last matched root therefore has 2^(2s+1) + f(x) - 2 elements.
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional

import numpy as np

from .blocks import BlockLayout, BlockOrder
from .errors import BudgetExceeded
from .order_core import POrder, Poly
from .tm_core import EncodedTM, RestrictedTM, nu
from .words import bin_word, shortlex_pred, shortlex_succ


class SpaceTraversal:
    """String-level definitions for one encoded machine."""

    def __init__(self, enc: EncodedTM, max_input_len: int = 16):
        self.enc = enc
        self.m = enc.m
        par = enc.params
        self.params = par
        self._guessed_len = {}
        self._token_len = {}
        self._dims = {}
        for n in range(max_input_len + 1):
            s, t = par.s(n), par.t(n)
            self._dims[n] = (s, t)
            self._guessed_len[n + 2 * s + t] = n
            self._token_len[n + 2 * s + 2 * t + 1] = n
        self.engine = lru_cache(maxsize=4)(self._engine)
        self.start_token = lru_cache(maxsize=64)(self.start_token)
        self.end_token = lru_cache(maxsize=64)(self.end_token)
        self.rx_last = lru_cache(maxsize=64)(self.rx_last)
        self.guess_value = lru_cache(maxsize=1 << 12)(self._guess_value)

    # -- shapes
    def dims(self, n):
        found = self._dims.get(n)
        if found is None:
            found = self._dims[n] = (self.params.s(n), self.params.t(n))
        return found

    def split_guessed(self, g: str):
        n = self._guessed_len.get(len(g))
        if n is None:
            raise ValueError(f"{g!r} is not a guessed ID")
        s, t = self.dims(n)
        return g[:n], g[n:n + 2 * s], g[n + 2 * s:]

    def split_token(self, tok: str):
        """(x, w, y, z, a) or None when tok has no token length."""
        n = self._token_len.get(len(tok))
        if n is None:
            return None
        s, t = self.dims(n)
        i = n + 2 * s
        return tok[:n], tok[n:i], tok[i:i + t], tok[i + t:i + 2 * t], tok[-1]

    def _guess_value(self, y: str) -> int:
        return nu(self.enc.theta_hat_inv(y))

    # -- the chain of roots
    def rx_membership(self, g: str) -> bool:
        x, w, y = self.split_guessed(g)
        return w[:self.m] == "1" * self.m

    def rx_min(self, x):
        s, t = self.dims(len(x))
        return x + "1" * self.m + "0" * (2 * s + t - self.m)

    def rx_top(self, x):
        s, t = self.dims(len(x))
        return x + "1" * (2 * s + t)

    def rx_last(self, x):
        s, t = self.dims(len(x))
        return x + "1" * (2 * s + t - 1) + "0"

    def _root_parts(self, g):
        x, w, y = self.split_guessed(g)
        if w[:self.m] != "1" * self.m:
            raise ValueError(f"{g!r} is not a root")
        t = len(y)
        return x, w[self.m:-t], w[-t:], y

    def rx_successor(self, g: str) -> Optional[str]:
        x, v, d, y = self._root_parts(g)
        ones = "1" * self.m
        lv, t = len(v), len(y)
        if d == y:
            num = int(v + y, 2) + 1
            if num < (1 << (lv + t)):
                bits = bin_word(num, lv + t)
                return x + ones + bits[:lv] + bits[lv:] + bits[lv:]
            return x + ones + "0" * (lv + 2 * t - 1) + "1"
        num = int(v + d + y, 2)
        width = lv + 2 * t
        while True:
            num += 1
            if num >= (1 << width):
                return None
            bits = bin_word(num, width)
            if bits[lv:lv + t] != bits[lv + t:]:
                return x + ones + bits

    def rx_predecessor(self, g: str) -> Optional[str]:
        x, v, d, y = self._root_parts(g)
        ones = "1" * self.m
        lv, t = len(v), len(y)
        if d == y:
            num = int(v + y, 2) - 1
            if num < 0:
                return None
            bits = bin_word(num, lv + t)
            return x + ones + bits[:lv] + bits[lv:] + bits[lv:]
        num = int(v + d + y, 2)
        width = lv + 2 * t
        while True:
            num -= 1
            if num < 0:
                return self.rx_top(x)
            bits = bin_word(num, width)
            if bits[lv:lv + t] != bits[lv + t:]:
                return x + ones + bits

    # -- the tree
    def mu1(self, g: str) -> Optional[str]:
        x, w, y = self.split_guessed(g)
        nxt = self.enc.mu(x + w)
        if nxt is not None:
            return nxt + y
        if g == self.rx_last(x):
            return None
        return self.rx_successor(g)

    def mu1_preimages(self, g: str) -> list:
        x, w, y = self.split_guessed(g)
        found = [h + y for h in self.enc.mu_preimages(x + w)]
        if w[:self.m] == "1" * self.m:
            prev = self.rx_predecessor(g)
            if prev is not None:
                found.append(prev)
        return sorted(found)

    def dwn(self, g: str) -> Optional[str]:
        kids = self.mu1_preimages(g)
        return kids[-1] if kids else None

    def acr(self, g: str) -> Optional[str]:
        parent = self.mu1(g)
        if parent is None:
            return None
        smaller = [h for h in self.mu1_preimages(parent) if h < g]
        return smaller[-1] if smaller else None

    # -- traversal
    def start_token(self, x):
        s, t = self.dims(len(x))
        return x + "1" * (2 * s + t - 1) + "0" * (t + 2)

    def end_token(self, x):
        return self.start_token(x)[:-1] + "1"

    def d_step(self, tok: str) -> Optional[str]:
        parts = self.split_token(tok)
        if parts is None:
            return None
        x, w, y, z, a = parts
        g = x + w + y
        t = len(z)
        zero = "1" not in z
        if a == "0":
            if zero:
                down = self.dwn(g)
                if down is not None:
                    return down + z + "0"
            if x + w != self.enc.initial_eid(x):
                return g + z + "1" if zero else None
            if not zero and self.dwn(g) is not None:
                return None
            k, target = int(z, 2), self.guess_value(y)
            if k < target:
                return g + bin_word(k + 1, t) + "0"
            if k == target:
                return g + "0" * t + "1"
            return None
        if not zero:
            return None
        across = self.acr(g)
        if across is not None:
            return across + z + "0"
        up = self.mu1(g)
        if up is not None:
            return up + z + "1"
        return None

    def defined_by_formula(self, tok: str) -> bool:
        """Where d_step is defined, read off the three-clause domain description."""
        parts = self.split_token(tok)
        if parts is None:
            return False
        x, w, y, z, a = parts
        if tok == self.start_token(x):
            return True
        zero = "1" not in z
        if zero and x + w + y != self.rx_last(x):
            return True
        return (a == "0" and x + w == self.enc.initial_eid(x)
                and int(z, 2) <= self.guess_value(y))

    def next_undefined(self, y: str) -> str | None:
        """Shortlex-first word after y of the same length on which d_step is undefined.

        Defined tokens come in runs of at most three, so a few formula
        evaluations suffice. None when the length is exhausted.
        """
        cand = shortlex_succ(y)
        while len(cand) == len(y) and self.defined_by_formula(cand):
            cand = shortlex_succ(cand)
        return cand if len(cand) == len(y) else None

    # -- boundaries
    def b(self, x):
        s, t = self.dims(len(x))
        return x + "1" * (2 * s + t) + "0" * (t + 1)

    def t(self, x):
        s, t = self.dims(len(x))
        return x + "1" * (2 * s + t) + "0" * t + "1"

    def b_prime(self, x):
        s, t = self.dims(len(x))
        one = self.enc.theta["1"]
        guess = one + "0" * (t - len(one))
        return self.enc.initial_eid(x) + guess + "0" * (t + 1)

    def _engine(self, x):
        return TraversalTables(self, x)


class TraversalTables:
    """Integer tabulation of the tree and of d_step for one input x.

    Guessed IDs are numbered by their suffix after x; a token is
    (g << (t+1)) | (z << 1) | a.  Built from the string-level functions
    of the encoded machine and used for walks over the whole tree.
    """

    def __init__(self, st: SpaceTraversal, x: str):
        self.st = st
        self.x = x
        enc = st.enc
        n = len(x)
        s, t = st.dims(n)
        m = st.m
        self.n, self.s, self.t, self.m = n, s, t, m
        width = 2 * s
        count_e = 1 << width
        mu_tab = np.full(count_e, -1, dtype=np.int64)
        for e in range(count_e):
            nxt = enc.mu(x + bin_word(e, width))
            if nxt is not None:
                mu_tab[e] = int(nxt[n:], 2)
        self.mu_tab = mu_tab
        gbits = width + t
        self.gbits = gbits
        count_g = 1 << gbits
        gidx = np.arange(count_g, dtype=np.int64)
        e_of = gidx >> t
        y_of = gidx & ((1 << t) - 1)
        mu1 = np.where(mu_tab[e_of] >= 0, (mu_tab[e_of] << t) | y_of, -1)
        root = mu_tab[e_of] < 0
        matched = (e_of & ((1 << t) - 1)) == y_of
        seq = np.concatenate([gidx[root & matched], gidx[root & ~matched]])
        mu1[seq[:-1]] = seq[1:]
        self.root_sequence = seq
        self.g_last = count_g - 2
        self.g_top = count_g - 1
        self.is_root = root
        dwn = np.full(count_g, -1, dtype=np.int64)
        has_parent = mu1 >= 0
        np.maximum.at(dwn, mu1[has_parent], gidx[has_parent])
        acr = np.full(count_g, -1, dtype=np.int64)
        order = np.lexsort((gidx, mu1))
        prev, cur = order[:-1], order[1:]
        same = (mu1[prev] == mu1[cur]) & (mu1[cur] >= 0)
        acr[cur[same]] = prev[same]
        self.mu1, self.dwn, self.acr = mu1, dwn, acr
        self._mu1 = mu1.tolist()
        self._dwn = dwn.tolist()
        self._acr = acr.tolist()
        self.init_e = int(enc.initial_eid(x)[n:], 2)
        self.guess_values = [st.guess_value(bin_word(y, t)) for y in range(1 << t)]
        self.token_bits = gbits + t + 1
        self.start = self.g_last << (t + 1)
        self.end = self.start | 1
        self._positions = None

    # -- conversions
    def token_int(self, tok: str) -> int:
        return int(tok[self.n:], 2)

    def token_str(self, k: int) -> str:
        return self.x + bin_word(k, self.token_bits)

    def g_str(self, g: int) -> str:
        return self.x + bin_word(g, self.gbits)

    # -- stepping
    def step(self, k: int) -> Optional[int]:
        t = self.t
        a = k & 1
        z = (k >> 1) & ((1 << t) - 1)
        g = k >> (t + 1)
        if a == 0:
            if z == 0:
                d = self._dwn[g]
                if d >= 0:
                    return d << (t + 1)
                if (g >> t) != self.init_e:
                    return k | 1
            elif (g >> t) != self.init_e or self._dwn[g] >= 0:
                return None
            target = self.guess_values[g & ((1 << t) - 1)]
            if z < target:
                return (g << (t + 1)) | ((z + 1) << 1)
            if z == target:
                return (g << (t + 1)) | 1
            return None
        if z:
            return None
        c = self._acr[g]
        if c >= 0:
            return c << (t + 1)
        p = self._mu1[g]
        if p >= 0:
            return (p << (t + 1)) | 1
        return None

    def defined_mask(self) -> np.ndarray:
        """Boolean array [g, z, a]: where the tabulated step is defined."""
        t = self.t
        count_g = 1 << self.gbits
        mask = np.zeros((count_g, 1 << t, 2), dtype=bool)
        mask[:, 0, 0] = True
        mask[:, 0, 1] = self.mu1 >= 0
        gidx = np.arange(count_g)
        init = np.flatnonzero(((gidx >> t) == self.init_e) & (self.dwn < 0))
        for g in init:
            target = self.guess_values[g & ((1 << t) - 1)]
            mask[g, 1:target + 1, 0] = True
        return mask

    def formula_mask(self) -> np.ndarray:
        """Boolean array [g, z, a] of the three-clause domain description."""
        t = self.t
        count_g = 1 << self.gbits
        mask = np.zeros((count_g, 1 << t, 2), dtype=bool)
        mask[self.g_last, 0, 0] = True
        keep = np.ones(count_g, dtype=bool)
        keep[self.g_last] = False
        mask[keep, 0, :] = True
        for y in range(1 << t):
            g = (self.init_e << t) | y
            mask[g, :self.guess_values[y] + 1, 0] = True
        return mask

    def positions(self):
        """Walk the whole trajectory once; positions of down and up tokens.

        Raises if a token repeats or the walk does not end at the end token.
        """
        if self._positions is not None:
            return self._positions
        count_g = 1 << self.gbits
        down = np.full(count_g, -1, dtype=np.int64)
        up = np.full(count_g, -1, dtype=np.int64)
        t = self.t
        spin = 0
        k = self.start
        i = 0
        budget = 4 * (count_g + (1 << t) * (1 << t)) + 16
        step = self.step
        while True:
            z = (k >> 1) & ((1 << t) - 1)
            g = k >> (t + 1)
            if z == 0:
                table = up if k & 1 else down
                if table[g] >= 0:
                    raise RuntimeError(f"token {k} visited twice")
                table[g] = i
            else:
                spin += 1
            if k == self.end:
                break
            nxt = step(k)
            if nxt is None:
                raise RuntimeError(f"walk stopped at token {k}")
            k = nxt
            i += 1
            if i > budget:
                raise BudgetExceeded("trajectory longer than the token space")
        self._positions = (down, up, i + 1, spin)
        return self._positions

    def position(self, k: int) -> Optional[int]:
        down, up, _, _ = self.positions()
        t = self.t
        z = (k >> 1) & ((1 << t) - 1)
        g = k >> (t + 1)
        if z == 0:
            pos = (up if k & 1 else down)[g]
            return int(pos) if pos >= 0 else None
        if k & 1 or (g >> t) != self.init_e:
            return None
        if z > self.guess_values[g & ((1 << t) - 1)] or down[g] < 0:
            return None
        return int(down[g]) + z


class _SpaceLayout(BlockLayout):
    """One block per input x: the trajectory first, then the leftovers lex."""

    def __init__(self, st: SpaceTraversal, use_tables: bool):
        self.st = st
        self.use_tables = use_tables

    def locate(self, u):
        n = self.st._token_len.get(len(u))
        return None if n is None else u[:n]

    def _width(self, x):
        s, t = self.st.dims(len(x))
        return 2 * (s + t) + 1

    def lo(self, x):
        return x + "0" * self._width(x)

    def hi(self, x):
        return x + "1" * self._width(x)

    def first(self, x):
        return self.st.start_token(x)

    def last(self, x):
        return self.hi(x)

    def step(self, x, u):
        if self.use_tables:
            eng = self.st.engine(x)
            k = eng.step(eng.token_int(u))
            return None if k is None else eng.token_str(k)
        return self.st.d_step(u)

    def on_trajectory(self, x, u):
        return u == self.st.end_token(x) or self.st.defined_by_formula(u)

    def _next_leftover(self, x, u):
        st = self.st
        c = st.next_undefined(u)
        if c is not None and c == st.end_token(x):
            c = st.next_undefined(c)
        if c is None or not c.startswith(x):
            return None
        return c

    def inner_succ(self, x, u):
        if u != self.st.end_token(x) and self.on_trajectory(x, u):
            return self.step(x, u)
        if u == self.st.end_token(x):
            return self._next_leftover(x, shortlex_pred(self.lo(x)))
        return self._next_leftover(x, u)

    def inner_leq(self, x, u, v):
        if self.use_tables:
            eng = self.st.engine(x)
            pu, pv = eng.position(eng.token_int(u)), eng.position(eng.token_int(v))
            if pu is None or pv is None:
                return pv is None and (pu is not None or u <= v)
            return pu <= pv
        tu, tv = self.on_trajectory(x, u), self.on_trajectory(x, v)
        if tu != tv:
            return tu
        if not tu:
            return u <= v
        eng = self.st.engine(x)
        return eng.position(eng.token_int(u)) <= eng.position(eng.token_int(v))


@dataclass
class SpaceOrderBundle:
    order: POrder
    b: Callable[[str], str]
    t: Callable[[str], str]
    b_prime: Callable[[str], str]
    traversal: SpaceTraversal
    blocks: BlockOrder

    @property
    def params(self):
        return self.traversal.params

    def predicted_size(self, x: str, f: int) -> int:
        s, _ = self.traversal.dims(len(x))
        return (1 << (2 * s + 1)) + f - 2


def build_space_order(tm, use_tables: bool = True) -> SpaceOrderBundle:
    enc = tm if isinstance(tm, EncodedTM) else EncodedTM(tm)
    st = SpaceTraversal(enc)
    blocks = BlockOrder(_SpaceLayout(st, use_tables), f"space-order[{enc.tm.name}]")
    base = blocks.as_porder()
    order = POrder(name=base.name, length_bound=Poly.identity(), leq=base.leq,
                   precedes=base.precedes, is_total=True, min_element="",
                   successor=base.successor)
    return SpaceOrderBundle(order=order, b=st.b, t=st.t, b_prime=st.b_prime,
                            traversal=st, blocks=blocks)


def fpspace_interval_size(bundle: SpaceOrderBundle, x: str, step_budget: int = 1 << 24) -> int:
    """Walk from b(x) to t(x), counting the tokens strictly between."""
    step = bundle.order.successor
    cur, stop = bundle.b(x), bundle.t(x)
    count = 0
    for _ in range(step_budget):
        cur = step(cur)
        if cur == stop:
            return count
        count += 1
    raise BudgetExceeded(f"t(x) not reached from b(x) within {step_budget} steps")


def singleton_flag(bundle: SpaceOrderBundle, x: str, step_budget: int = 1 << 24) -> bool:
    """Whether something lies strictly between b'(x) and t(x).

    The walk from b'(x) either meets t(x) or runs to the end of the
    trajectory, after which only leftovers follow.
    """
    st = bundle.traversal
    cur, stop, end = bundle.b_prime(x), bundle.t(x), st.end_token(x)
    if bundle.blocks.layout.use_tables:
        eng = st.engine(x)
        step = eng.step
        cur, stop, end = eng.token_int(cur), eng.token_int(stop), eng.token_int(end)
    else:
        step = bundle.order.successor
    for k in range(1, step_budget):
        cur = step(cur)
        if cur == stop:
            return k > 1
        if cur == end:
            return False
    raise BudgetExceeded("walk from b'(x) did not settle")


# ---------------------------------------------------------------- audits

def _jump_to_end(parent: np.ndarray, rounds: int) -> np.ndarray:
    """For each node, the node reached by following parent links until undefined."""
    idx = np.arange(len(parent))
    jump = np.where(parent >= 0, parent, idx)
    for _ in range(rounds):
        jump = jump[jump]
    return jump


def structure_audit(st: SpaceTraversal, x: str, expected_output: Optional[int] = None,
                    scalar_roundtrips: bool = True) -> list:
    """(property, violation count) for the configuration step, the tree and the traversal.

    expected_output defaults to the machine's own simulated value.
    """
    enc = st.enc
    eng = st.engine(x)
    n, s, t, m = eng.n, eng.s, eng.t, eng.m
    width = 2 * s
    count_e = 1 << width
    out = []

    eids = [x + bin_word(e, width) for e in range(count_e)]
    images = [enc.mu(v) for v in eids]
    out.append(("mu-length-preserving",
                sum(1 for v, w in zip(eids, images) if w is not None and len(w) != len(v))))
    final_state = (np.arange(count_e) >> (width - m)) == (1 << m) - 1
    out.append(("mu-defined-iff-state-not-final",
                int(np.count_nonzero((eng.mu_tab >= 0) == final_state))))
    ends = _jump_to_end(eng.mu_tab, width + 1)
    out.append(("mu-iterates-to-undefined", int(np.count_nonzero(eng.mu_tab[ends] >= 0))))
    on_cycle = 0
    for e in range(count_e):
        cur, seen = e, 0
        while eng.mu_tab[cur] >= 0 and seen <= count_e:
            cur = int(eng.mu_tab[cur])
            seen += 1
            if cur == e:
                on_cycle += 1
                break
    out.append(("mu-never-returns", on_cycle))

    bad = 0
    listed = 0
    for v in eids:
        pre = enc.mu_preimages(v)
        listed += len(pre)
        bad += sum(1 for u in pre if enc.mu(u) != v) + len(pre) - len(set(pre))
    defined = sum(1 for w in images if w is not None)
    out.append(("mu-preimages-exact", bad + abs(listed - defined)))

    mu1 = eng.mu1
    count_g = len(mu1)
    if scalar_roundtrips:
        bad = 0
        for g in range(count_g):
            gs = eng.g_str(g)
            up = st.mu1(gs)
            want = None if mu1[g] < 0 else eng.g_str(int(mu1[g]))
            if up != want:
                bad += 1
            elif up is not None and gs not in st.mu1_preimages(up):
                bad += 1
        out.append(("mu1-matches-table-and-preimages", bad))

    undefined = np.flatnonzero(mu1 < 0)
    out.append(("mu1-undefined-only-at-last-root",
                0 if undefined.tolist() == [eng.g_last] else len(undefined) + 1))
    tops = _jump_to_end(mu1, eng.gbits + 1)
    out.append(("mu1-reaches-last-root", int(np.count_nonzero(tops != eng.g_last))))
    kids = [int(g) for g in np.flatnonzero(mu1 >= 0)]
    dw_bad = sum(1 for g in np.flatnonzero(eng.is_root)
                 if g != eng.root_sequence[0] and not eng.is_root[eng.dwn[g]])
    out.append(("dwn-of-root-is-root", int(dw_bad)))

    down, up, length, spin = eng.positions()
    out.append(("every-node-visited-down-then-up",
                int(np.count_nonzero((down < 0) | (up <= down)))))
    parent = mu1[kids]
    out.append(("child-visits-nested-in-parent",
                int(np.count_nonzero((down[parent] >= down[kids]) | (up[kids] >= up[parent])))))
    order = np.lexsort((down[kids], parent))
    sib = np.array(kids)[order]
    same = parent[order][1:] == parent[order][:-1]
    overlap = up[sib[:-1]] >= down[sib[1:]]
    out.append(("sibling-visits-disjoint", int(np.count_nonzero(same & overlap))))

    top = eng.g_top
    in_sub = (down >= down[top]) & (up <= up[top])
    out.append(("top-subtree-size", abs(int(in_sub.sum()) - count_e)))
    per_w = in_sub.reshape(count_e, 1 << t).sum(axis=1)
    out.append(("one-matched-guess-per-configuration", int(np.count_nonzero(per_w != 1))))
    if expected_output is None:
        expected_output = enc.run_tm(x)[0]
    ys = np.flatnonzero(in_sub.reshape(count_e, -1)[eng.init_e])
    out.append(("matched-guess-holds-output",
                0 if len(ys) == 1 and eng.guess_values[ys[0]] == expected_output else 1))

    dmask = eng.defined_mask()
    out.append(("domain-matches-description",
                int(np.count_nonzero(dmask != eng.formula_mask()))))
    out.append(("trajectory-covers-domain", abs(length - (int(dmask.sum()) + 1))))
    pos_b = down[top]
    early = np.flatnonzero(((down >= 0) & (down < pos_b)) | ((up >= 0) & (up < pos_b)))
    out.append(("tokens-before-b-are-roots", int(np.count_nonzero(~eng.is_root[early]))))
    return out


def order_audit(bundle: SpaceOrderBundle, x: str, window: int = 40, samples: int = 400,
                seed: int = 0) -> list:
    """(check, violation count) for the traversal order on one block.

    The block has 2^(2s+2t+1) members, too many for a full relation matrix.
    The walk itself proves the trajectory is a simple path through every
    defined token; order axioms and adjacency are then checked on contiguous
    windows (which are convex) and on a random mixed sample.
    """
    from .order_core import adjacency_mismatches, verify_order_axioms

    st = bundle.traversal
    eng = st.engine(x)
    order = bundle.order
    down, up, length, _ = eng.positions()
    dmask = eng.defined_mask().reshape(-1)
    out = [("trajectory-is-simple-path-over-domain", abs(length - (int(dmask.sum()) + 1)))]

    def pos_of(word):
        return eng.position(eng.token_int(word))

    marks = [0, pos_of(bundle.b(x)), pos_of(bundle.t(x)), length - window]
    bp = pos_of(bundle.b_prime(x))
    if bp is not None:
        marks.append(bp)
    spans = [(max(0, p - window // 2), max(0, p - window // 2) + window) for p in marks]
    windows = [[] for _ in spans]
    k, i = eng.start, 0
    while True:
        for w, (a, b) in zip(windows, spans):
            if a <= i < b:
                w.append(eng.token_str(k))
        if k == eng.end:
            break
        k = eng.step(k)
        i += 1

    # the seam between trajectory and leftovers, and the block's upper edge
    seam = windows[3]
    cur = seam[-1]
    for _ in range(window // 2):
        cur = order.successor(cur)
        seam.append(cur)
    lay = bundle.blocks.layout
    tail = [lay.hi(x)]
    prev = lay.hi(x)
    for _ in range(window // 2):
        prev = shortlex_pred(prev)
        while lay.on_trajectory(x, prev) or prev == st.end_token(x):
            prev = shortlex_pred(prev)
        tail.insert(0, prev)
    cur = tail[-1]
    for _ in range(3):
        cur = order.successor(cur)
        tail.append(cur)
    windows.append(tail)
    before_block = bundle.blocks._leave(shortlex_pred(lay.lo(x)))
    windows.append([before_block, order.successor(before_block), *windows[0][1:4]])

    axioms = adjacency = 0
    for w in windows:
        axioms += len(verify_order_axioms(order, w))
        adjacency += len(adjacency_mismatches(order, w))
    out.append(("axioms-on-contiguous-windows", axioms))
    out.append(("adjacency-on-contiguous-windows", adjacency))

    rng = np.random.default_rng(seed)
    picks = rng.integers(0, len(dmask), size=samples)
    mixed = [eng.token_str(int(k)) for k in picks] + sum(windows, [])
    out.append(("axioms-on-random-sample", len(verify_order_axioms(order, mixed))))

    leftovers = np.flatnonzero(~dmask)
    leftovers = leftovers[leftovers != eng.end]
    chosen = rng.choice(len(leftovers) - 1, size=min(samples, len(leftovers) - 1), replace=False)
    bad = 0
    for j in chosen:
        u = eng.token_str(int(leftovers[j]))
        if order.successor(u) != eng.token_str(int(leftovers[j + 1])):
            bad += 1
    out.append(("leftovers-follow-lex-order", bad))
    return out
