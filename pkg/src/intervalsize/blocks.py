"""Orders that agree with shortlex except inside designated blocks.

A block is a contiguous lexicographic range of words of one length.  Inside
a block the words are rearranged; the block as a whole keeps its shortlex
position, so comparisons across blocks (or with outside words) are plain
shortlex comparisons.  Every block must have a unique least and greatest
element so that adjacency across block borders is well defined.
"""

from functools import lru_cache

from .order_core import POrder, Poly
from .words import shortlex_key, shortlex_pred, shortlex_succ


class BlockLayout:
    """Subclasses describe where blocks are and how they are ordered inside."""

    total = True
    # keyed layouts define inner_key; inner_leq is then key comparison
    keyed = False

    def locate(self, u: str):
        """Key of the block containing u, or None."""
        raise NotImplementedError

    def lo(self, key) -> str:
        raise NotImplementedError

    def hi(self, key) -> str:
        raise NotImplementedError

    def first(self, key) -> str:
        raise NotImplementedError

    def last(self, key) -> str:
        raise NotImplementedError

    def inner_key(self, key, u: str):
        raise NotImplementedError

    def inner_leq(self, key, u: str, v: str) -> bool:
        if self.keyed:
            return self.inner_key(key, u) <= self.inner_key(key, v)
        raise NotImplementedError

    def inner_succ(self, key, u: str):
        """Next element inside the block, or None at the block's last element."""
        raise NotImplementedError

    def inner_precedes(self, key, u: str, v: str) -> bool:
        return self.inner_succ(key, u) == v

    def inner_pred(self, key, v: str):
        """Previous element inside the block; default scans the members."""
        prev = None
        cur = self.first(key)
        while cur is not None and cur != v:
            prev = cur
            cur = self.inner_succ(key, cur)
        return prev

    def members(self, key):
        lo, hi = self.lo(key), self.hi(key)
        start, stop = int(lo, 2) if lo else 0, int(hi, 2) if hi else 0
        width = len(lo)
        for i in range(start, stop + 1):
            yield format(i, f"0{width}b") if width else ""


class PrefixLayout(BlockLayout):
    """Blocks x·u where |u| = width(|x|) and n + width(n) is strictly increasing.

    Words whose prefix fails `has_block` are left in shortlex position.
    """

    def __init__(self, width, max_prefix_len: int = 4096):
        self.width = width
        self._by_total = {}
        total_prev = -1
        for n in range(max_prefix_len + 1):
            total = n + width(n)
            if total <= total_prev:
                raise ValueError("n + width(n) must be strictly increasing")
            total_prev = total
            self._by_total[total] = n

    def has_block(self, x: str) -> bool:
        return True

    def split(self, u: str):
        n = self._by_total.get(len(u))
        if n is None:
            return None
        return u[:n], u[n:]

    def locate(self, u):
        n = self._by_total.get(len(u))
        if n is None:
            return None
        x = u[:n]
        return x if self.has_block(x) else None

    def lo(self, x):
        return x + "0" * self.width(len(x))

    def hi(self, x):
        return x + "1" * self.width(len(x))


class BlockOrder:
    """Turns a layout into leq / precedes / successor on all of Σ*."""

    def __init__(self, layout: BlockLayout, name: str):
        self.layout = layout
        self.name = name
        self._locate = lru_cache(maxsize=1 << 18)(layout.locate)
        self._inner_succ = lru_cache(maxsize=1 << 16)(layout.inner_succ)
        if type(layout).inner_precedes is BlockLayout.inner_precedes:
            self._inner_precedes = lambda k, u, v: self._inner_succ(k, u) == v
        else:
            self._inner_precedes = layout.inner_precedes

    def leq(self, u: str, v: str) -> bool:
        if u == v:
            return True
        locate = self._locate
        ku = locate(u)
        if ku is not None and ku == locate(v):
            return self.layout.inner_leq(ku, u, v)
        return (len(u), u) <= (len(v), v)

    def sort_key(self, u: str):
        """leq(u, v) iff sort_key(u) <= sort_key(v); keyed layouts only."""
        k = self._locate(u)
        if k is None:
            return (len(u), u, ())
        lo = self.layout.lo(k)
        return (len(lo), lo, self.layout.inner_key(k, u))

    def _enter(self, w: str) -> str:
        """The order-first element of whatever starts at shortlex position w."""
        k = self._locate(w)
        return self.layout.first(k) if k is not None else w

    def _leave(self, w: str) -> str:
        k = self._locate(w)
        return self.layout.last(k) if k is not None else w

    def successor(self, u: str):
        lay = self.layout
        k = self._locate(u)
        if k is not None:
            nxt = self._inner_succ(k, u)
            if nxt is not None:
                return nxt
            u = lay.hi(k)
        return self._enter(shortlex_succ(u))

    def predecessor(self, v: str):
        lay = self.layout
        k = lay.locate(v)
        if k is not None:
            if v != lay.first(k):
                return lay.inner_pred(k, v)
            v = lay.lo(k)
        p = shortlex_pred(v)
        return None if p is None else self._leave(p)

    def precedes(self, u: str, v: str) -> bool:
        lay = self.layout
        ku = self._locate(u)
        kv = self._locate(v)
        if ku is not None and ku == kv:
            return self._inner_precedes(ku, u, v)
        if ku is not None:
            if u != lay.last(ku):
                return False
            u = lay.hi(ku)
        if kv is not None and v != lay.first(kv):
            return False
        return self._enter(shortlex_succ(u)) == v

    def block_universe(self, key) -> list:
        """The block plus its two outside neighbours; convex in the order."""
        lay = self.layout
        words = list(lay.members(key))
        before = shortlex_pred(lay.lo(key))
        if before is not None:
            words.append(self._leave(before))
        words.append(self._enter(shortlex_succ(lay.hi(key))))
        return sorted(set(words), key=shortlex_key)

    def sorted_block(self, key) -> list:
        """Block members listed in the order (total layouts only)."""
        out = []
        cur = self.layout.first(key)
        while cur is not None:
            out.append(cur)
            cur = self.layout.inner_succ(key, cur)
        return out

    def as_porder(self, length_bound: Poly = None, min_element: str = "") -> POrder:
        total = self.layout.total
        return POrder(
            name=self.name,
            length_bound=length_bound or Poly.identity(),
            leq=self.leq,
            precedes=self.precedes,
            is_total=total,
            min_element=min_element,
            successor=self.successor if total else None,
            sort_key=self.sort_key if self.layout.keyed else None,
        )

