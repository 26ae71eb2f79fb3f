"""Monotone boolean formulas, lexicographic next-assignment search, model counting."""

import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Optional, Union

from .blocks import BlockLayout, BlockOrder
from .constructed import OrderTriple
from .errors import FormulaSyntaxError, NonMonotoneError
from .order_core import Poly, interval_size_by_walk
from .words import bin_word


@dataclass(frozen=True)
class Var:
    index: int


@dataclass(frozen=True)
class And:
    left: object
    right: object


@dataclass(frozen=True)
class Or:
    left: object
    right: object


def to_text(node) -> str:
    if isinstance(node, Var):
        return f"x{node.index}"
    op = "&" if isinstance(node, And) else "|"
    return f"({to_text(node.left)}{op}{to_text(node.right)})"


def _python_expr(node) -> str:
    if isinstance(node, Var):
        return f"(a[{node.index - 1}] == '1')"
    op = "and" if isinstance(node, And) else "or"
    return f"({_python_expr(node.left)} {op} {_python_expr(node.right)})"


def _max_index(node) -> int:
    if isinstance(node, Var):
        return node.index
    return max(_max_index(node.left), _max_index(node.right))


def depth(node) -> int:
    if isinstance(node, Var):
        return 0
    return 1 + max(depth(node.left), depth(node.right))


@dataclass(frozen=True)
class MonotoneFormula:
    root: object
    n: int = field(init=False)
    text: str = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "n", _max_index(self.root))
        object.__setattr__(self, "text", to_text(self.root))
        object.__setattr__(self, "_fn", _compile(_python_expr(self.root)))

    def __call__(self, a: str) -> bool:
        return self._fn(a)

    def __str__(self):
        return self.text


@lru_cache(maxsize=1 << 16)
def _compile(expr: str):
    return eval(f"lambda a: {expr}")  # expr is generated from a parsed AST


class QueryCounter:
    """Counts evaluations; one counter per call, never shared."""

    def __init__(self):
        self.count = 0


_TOKEN = re.compile(r"\s*(?:(x[1-9][0-9]*)|([()&|])|(\S))")
_NEGATIONS = set("!~¬-")
_CONSTANTS = set("01TF")


def parse_formula(text: str) -> MonotoneFormula:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        if m.group(1):
            tokens.append(("var", m.group(1), m.start(1)))
        elif m.group(2):
            tokens.append((m.group(2), m.group(2), m.start(2)))
        elif m.group(3):
            ch, at = m.group(3), m.start(3)
            if ch in _NEGATIONS:
                raise NonMonotoneError(f"negation {ch!r} is not allowed", at)
            if ch in _CONSTANTS:
                raise NonMonotoneError(f"constant {ch!r} is not allowed", at)
            raise FormulaSyntaxError(f"unexpected character {ch!r}", at)
        pos = m.end()
    rest = text[pos:]
    if rest.strip():
        raise FormulaSyntaxError("unexpected input", pos + len(rest) - len(rest.lstrip()))
    end = len(text)
    i = 0

    def expect(kind):
        nonlocal i
        if i >= len(tokens):
            raise FormulaSyntaxError(f"expected {kind!r} but the formula ended", end)
        tok = tokens[i]
        if tok[0] != kind:
            raise FormulaSyntaxError(f"expected {kind!r}, found {tok[1]!r}", tok[2])
        i += 1
        return tok

    def formula():
        nonlocal i
        if i >= len(tokens):
            raise FormulaSyntaxError("expected a formula but the input ended", end)
        kind, value, at = tokens[i]
        if kind == "var":
            i += 1
            return Var(int(value[1:]))
        if kind != "(":
            raise FormulaSyntaxError(f"expected a variable or '(', found {value!r}", at)
        i += 1
        left = formula()
        if i >= len(tokens):
            raise FormulaSyntaxError("expected '&' or '|' but the formula ended", end)
        op, value, at = tokens[i]
        if op not in "&|":
            raise FormulaSyntaxError(f"expected '&' or '|', found {value!r}", at)
        i += 1
        right = formula()
        expect(")")
        return And(left, right) if op == "&" else Or(left, right)

    root = formula()
    if i != len(tokens):
        raise FormulaSyntaxError(f"trailing input {tokens[i][1]!r}", tokens[i][2])
    return MonotoneFormula(root)


def evaluate(f: Union[MonotoneFormula, Callable], a: str, counter: QueryCounter = None) -> int:
    n = getattr(f, "n", None)
    if n is not None and len(a) != n:
        raise ValueError(f"assignment {a!r} has length {len(a)}, formula has {n} variables")
    if counter is not None:
        counter.count += 1
    return 1 if f(a) else 0


def _lex_next_fixed(b: str) -> str:
    """Binary increment within words of |b| bits; 1^k wraps to 0^k."""
    return bin_word((int(b, 2) + 1) % (1 << len(b)), len(b))


def next_assignment(f, a: str, r: int, counter: QueryCounter = None) -> Optional[str]:
    """Lex-least b >= a with f(b) = r, or None; f must be monotone.

    f is a formula or any callable on n-bit words (black-box mode).
    """
    n = len(a)
    rc = str(r)

    def F(w):
        return evaluate(f, w, counter)

    b = a
    if (b == "1" * n and F(b) != r) or F(rc * n) != r:
        return None
    while b != "" and F(b + rc * (n - len(b))) != r:
        b = _lex_next_fixed(b)
        b = b[:b.rfind("1") + 1]
    if b == "":
        # the climb left the tree: nothing at or after a has value r
        return None
    for _ in range(len(b) + 1, n + 1):
        if F(b + "0" + rc * (n - len(b) - 1)) == r:
            b += "0"
        else:
            b += "1"
    return b


def _as_formula(f) -> Optional[MonotoneFormula]:
    if isinstance(f, MonotoneFormula):
        return f
    try:
        return parse_formula(f)
    except FormulaSyntaxError:
        return None


def count_monsat_bruteforce(f) -> int:
    """Satisfying assignments by truth table; 0 for text that is not monotone syntax."""
    formula = _as_formula(f)
    if formula is None:
        return 0
    n = formula.n
    return sum(1 for i in range(1 << n) if formula(bin_word(i, n)))


def formula_word(f) -> str:
    """The formula's canonical text as 8-bit ASCII."""
    text = f.text if isinstance(f, MonotoneFormula) else parse_formula(f).text
    return "".join(format(ord(c), "08b") for c in text)


@lru_cache(maxsize=1 << 12)
def _formula_from_bits(bits: str) -> Optional[MonotoneFormula]:
    if len(bits) % 8:
        return None
    try:
        text = bytes(int(bits[i:i + 8], 2) for i in range(0, len(bits), 8)).decode("ascii")
        formula = parse_formula(text)
    except (UnicodeDecodeError, FormulaSyntaxError):
        return None
    return formula if formula.text == text else None


_TAGS = ("000", "001", "010", "011", "100")


class _MonsatLayout(BlockLayout):
    """Blocks 1^k 0 F tag y for canonical formula encodings F of k bits.

    Inside a block: tag 000 all y, 001 satisfying, 010 all, 011 unsatisfying,
    100 all, then the remaining 001/011 words in lex order.
    """

    @staticmethod
    def _split(u):
        k = len(u) - len(u.lstrip("1"))
        if k == 0 or k % 8 or len(u) < 2 * k + 4:
            return None
        formula = _formula_from_bits(u[k + 1:2 * k + 1])
        if formula is None or len(u) != 2 * k + 4 + formula.n:
            return None
        return u[:2 * k + 1], formula

    def locate(self, u):
        found = self._split(u)
        return None if found is None else found[0]

    def _formula(self, key):
        k = len(key) // 2
        return _formula_from_bits(key[k + 1:])

    def lo(self, key):
        return key + "000" + "0" * self._formula(key).n

    def hi(self, key):
        return key + "100" + "1" * self._formula(key).n

    def first(self, key):
        return self.lo(key)

    def last(self, key):
        return key + "011" + "1" * self._formula(key).n

    def _group(self, key, u):
        f = self._formula(key)
        tag, y = u[len(key):len(key) + 3], u[len(key) + 3:]
        if tag == "001":
            return (1 if f(y) else 5), tag, y
        if tag == "011":
            return (5 if f(y) else 3), tag, y
        return _TAGS.index(tag), tag, y

    keyed = True

    def inner_key(self, key, u):
        return self._group(key, u)

    def inner_succ(self, key, u):
        f = self._formula(key)
        n = f.n
        group, tag, y = self._group(key, u)
        nxt_y = None if y == "1" * n else bin_word(int(y, 2) + 1, n)
        if group in (0, 2, 4) and nxt_y is not None:
            return key + tag + nxt_y
        if group in (1, 3) or (group == 5 and tag == "001"):
            want = 1 if group == 1 else 0
            found = None if nxt_y is None else next_assignment(f, nxt_y, want)
            if found is not None:
                return key + tag + found
        if group == 5 and tag == "011":
            found = None if nxt_y is None else next_assignment(f, nxt_y, 1)
            return None if found is None else key + tag + found
        zeros = "0" * n
        return {
            0: key + "001" + next_assignment(f, zeros, 1),
            1: key + "010" + zeros,
            2: key + "011" + next_assignment(f, zeros, 0),
            3: key + "100" + zeros,
            4: key + "001" + next_assignment(f, zeros, 0),
            5: key + "011" + next_assignment(f, zeros, 1),
        }[group]


_MONSAT_BLOCKS = BlockOrder(_MonsatLayout(), "monsat-order")


def build_monsat_order() -> OrderTriple:
    """Total order counting satisfying assignments; inputs are formula_word(F)."""

    def key(x):
        return "1" * len(x) + "0" + x

    def b(x):
        return key(x) + "000" + "1" * _formula_from_bits(x).n

    def t(x):
        return key(x) + "010" + "0" * _formula_from_bits(x).n

    order = _MONSAT_BLOCKS.as_porder(Poly.identity())
    return OrderTriple("monsat-order", order, b, t, "#MONSAT", blocks=_MONSAT_BLOCKS)


def count_monsat_interval(f, step_budget: int = 1 << 22) -> int:
    formula = f if isinstance(f, MonotoneFormula) else parse_formula(f)
    triple = build_monsat_order()
    return interval_size_by_walk(triple.spec, formula_word(formula), step_budget=step_budget)


def monotone_functions(n: int) -> list:
    """Every non-constant monotone function of x1..xn as a DNF formula.

    Enumerates antichains of nonempty variable subsets (the minimal true points).
    """
    subsets = [s for s in range(1, 1 << n)]
    found = []

    def extend(chosen, start):
        if chosen:
            found.append(list(chosen))
        for i in range(start, len(subsets)):
            s = subsets[i]
            if all((s & c) != c and (s & c) != s for c in chosen):
                chosen.append(s)
                extend(chosen, i + 1)
                chosen.pop()

    extend([], 0)
    formulas = []
    for terms in found:
        conj = []
        for s in terms:
            vs = [Var(i + 1) for i in range(n) if s >> i & 1]
            node = vs[0]
            for v in vs[1:]:
                node = And(node, v)
            conj.append(node)
        node = conj[0]
        for c in conj[1:]:
            node = Or(node, c)
        formulas.append(MonotoneFormula(node))
    return formulas


def all_formulas(n_vars: int, max_depth: int) -> list:
    """Every AST of depth at most max_depth over x1..x_{n_vars}."""
    level = [Var(i) for i in range(1, n_vars + 1)]
    for _ in range(max_depth):
        level = [Var(i) for i in range(1, n_vars + 1)] + [
            op(a, b) for op in (And, Or) for a in level for b in level]
    return [MonotoneFormula(node) for node in level]


def random_formula(rng, n: int, max_leaves: int = 16) -> MonotoneFormula:
    """Random AST using every variable x1..xn at least once."""
    leaves = [Var(i) for i in range(1, n + 1)]
    leaves += [Var(rng.randint(1, n)) for _ in range(rng.randint(0, max(0, max_leaves - n)))]
    rng.shuffle(leaves)
    nodes = leaves
    while len(nodes) > 1:
        i = rng.randrange(len(nodes) - 1)
        op = And if rng.random() < 0.5 else Or
        nodes[i:i + 2] = [op(nodes[i], nodes[i + 1])]
    return MonotoneFormula(nodes[0])
