"""Space-bounded Turing machines in a binary configuration encoding.

A configuration ("enhanced ID") of a machine on input x is the word
x·q·c·w·X_0…X_{2^r-1}: state q (m bits), step clock c (s bits), head
position w (r bits) and 2^r tape blocks of m bits each.  The step function
`mu` never cycles: when a move is impossible (final state reached, clock
exhausted, head would leave the tape) the state is forced to 1^m and the
configuration becomes terminal.
"""

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

from .errors import ModelViolation, TMSpecError
from .order_core import Poly
from .words import bin_word

BLANK = "B"
LEFT, RIGHT = -1, 1


def nu(z) -> int:
    """Binary value of a tape word over Γ; 0 unless it looks like Σ*B*.

    Symbols are the characters (or list items) '0', '1', 'B' and anything else.
    """
    value = 0
    plain = True  # the prefix read so far lies in Σ*
    for y in z:
        if y == "1" and plain:
            value = 2 * value + 1
        elif y == "0" and plain:
            value = 2 * value
        elif y == BLANK:
            pass
        else:
            value = 0
        plain = plain and y in ("0", "1")
    return value


@dataclass(frozen=True)
class RestrictedTM:
    name: str
    m: int
    states: tuple
    symbols: tuple
    delta: dict = field(hash=False)
    start: str = "q0"
    final: str = "qf"
    space: Poly = Poly.of(0, 1)

    def validate(self):
        size = 1 << self.m
        if self.m < 2:
            raise TMSpecError("m-too-small", f"m = {self.m}")
        if len(set(self.states)) != size:
            raise TMSpecError("state-count", f"{len(set(self.states))} states, need {size}")
        if len(set(self.symbols)) != size:
            raise TMSpecError("symbol-count", f"{len(set(self.symbols))} symbols, need {size}")
        if not {"0", "1", BLANK} <= set(self.symbols):
            raise TMSpecError("missing-basic-symbols", "Γ must contain 0, 1 and B")
        if self.start not in self.states or self.final not in self.states:
            raise TMSpecError("unknown-state", "start or final state not declared")
        if self.start == self.final:
            raise TMSpecError("start-equals-final")
        for (q, r), (q2, r2, move) in self.delta.items():
            if q not in self.states or q2 not in self.states:
                raise TMSpecError("unknown-state", f"{q} or {q2}")
            if r not in self.symbols or r2 not in self.symbols:
                raise TMSpecError("unknown-symbol", f"{r} or {r2}")
            if q == self.final:
                raise TMSpecError("delta-on-final", f"δ({q},{r}) must be undefined")
            if q2 == self.start:
                raise TMSpecError("delta-into-start", f"δ({q},{r}) enters the start state")
            if move not in (LEFT, RIGHT):
                raise TMSpecError("bad-move", f"δ({q},{r}) moves {move}")
        for q in self.states:
            if q == self.final:
                continue
            for r in self.symbols:
                if (q, r) not in self.delta:
                    raise TMSpecError("delta-incomplete", f"δ({q},{r}) missing")
        if self.space(0) <= 0:
            raise TMSpecError("space-not-positive", f"p(0) = {self.space(0)}")
        return self


@dataclass(frozen=True)
class EncodingParams:
    m: int
    p: Poly

    def r(self, n):
        return math.ceil(math.log2(self.p(n))) if self.p(n) > 1 else 0

    def t(self, n):
        return self.m << self.r(n)

    def s(self, n):
        return self.m + self.r(n) + self.t(n)

    def eid_length(self, n):
        return n + 2 * self.s(n)


def _codes(m, fixed, names):
    """Assign m-bit codes: fixed ones first, the rest in declaration order."""
    table = dict(fixed)
    free = [bin_word(i, m) for i in range(1 << m) if bin_word(i, m) not in table.values()]
    for name in names:
        if name not in table:
            table[name] = free.pop(0)
    return table


class EncodedTM:
    """A restricted machine together with its binary codecs and step function."""

    def __init__(self, tm: RestrictedTM, max_input_len: int = 64):
        tm.validate()
        self.tm = tm
        m = tm.m
        self.m = m
        self.params = EncodingParams(m, tm.space)
        self.phi = _codes(m, {tm.start: "0" * m, tm.final: "1" * m}, tm.states)
        self.phi_inv = {v: k for k, v in self.phi.items()}
        self.theta = _codes(m, {BLANK: "0" * m, "0": "1" * (m - 1) + "0", "1": "1" * m},
                            tm.symbols)
        self.theta_inv = {v: k for k, v in self.theta.items()}
        self.final_code = "1" * m
        # encoded transition table and its reverse index
        self.dprime = {}
        self.reverse = {}
        for (q, r), (q2, r2, move) in tm.delta.items():
            entry = (self.phi[q2], self.theta[r2], move)
            self.dprime[(self.phi[q], self.theta[r])] = entry
            self.reverse.setdefault(entry[0], []).append(
                (self.phi[q], self.theta[r], entry[1], move))
        self._by_length = {}
        for n in range(max_input_len + 1):
            self._by_length[self.params.eid_length(n)] = n
        self.mu = lru_cache(maxsize=1 << 20)(self._mu)
        self.mu_preimages = lru_cache(maxsize=1 << 20)(self._mu_preimages)

    # -- codecs
    def theta_hat(self, symbols) -> str:
        return "".join(self.theta[y] for y in symbols)

    def theta_hat_inv(self, bits: str) -> list:
        m = self.m
        if len(bits) % m:
            raise ValueError("length is not a multiple of m")
        return [self.theta_inv[bits[i:i + m]] for i in range(0, len(bits), m)]

    def delta_prime(self, q: str, r: str):
        return self.dprime.get((q, r))

    # -- sections
    def input_length(self, v: str) -> Optional[int]:
        return self._by_length.get(len(v))

    def sections(self, v: str):
        """(x, q, c, w, tape) or None when v is not an enhanced ID."""
        n = self._by_length.get(len(v))
        if n is None:
            return None
        m, par = self.m, self.params
        r, s = par.r(n), par.s(n)
        i = n
        x = v[:i]
        q = v[i:i + m]
        i += m
        c = v[i:i + s]
        i += s
        w = v[i:i + r]
        i += r
        return x, q, c, w, v[i:]

    def tape_value(self, tape_bits: str) -> int:
        return nu(self.theta_hat_inv(tape_bits))

    def initial_eid(self, x: str) -> str:
        n = len(x)
        par = self.params
        enc = self.theta_hat(x)
        if len(enc) > par.t(n):
            raise ValueError(f"input of length {n} does not fit the tape section")
        return x + "0" * (self.m + par.s(n) + par.r(n)) + enc + "0" * (par.t(n) - len(enc))

    # -- one step
    def _mu(self, v: str) -> Optional[str]:
        sec = self.sections(v)
        if sec is None:
            return None
        x, q, c, w, tape = sec
        if q == self.final_code:
            return None
        m = self.m
        head = int(w, 2) if w else 0
        cells = len(tape) // m
        move = self.dprime.get((q, tape[head * m:(head + 1) * m]))
        if move is not None and "0" in c and 0 <= head + move[2] < cells:
            q2, y, i = move
            c2 = bin_word(int(c, 2) + 1, len(c))
            w2 = bin_word(head + i, len(w))
            tape2 = tape[:head * m] + y + tape[(head + 1) * m:]
            return x + q2 + c2 + w2 + tape2
        return x + self.final_code + c + w + tape

    def _mu_preimages(self, z: str) -> tuple:
        sec = self.sections(z)
        if sec is None:
            return ()
        x, q2, c2, w2, tape2 = sec
        m = self.m
        found = set()
        clock = int(c2, 2)
        head2 = int(w2, 2) if w2 else 0
        if clock > 0:
            c = bin_word(clock - 1, len(c2))
            for q, r, y, i in self.reverse.get(q2, ()):
                head = head2 - i
                if not 0 <= head < (1 << len(w2)):
                    continue
                if tape2[head * m:(head + 1) * m] != y:
                    continue
                tape = tape2[:head * m] + r + tape2[(head + 1) * m:]
                cand = x + q + c + bin_word(head, len(w2)) + tape
                if self.mu(cand) == z:
                    found.add(cand)
        if q2 == self.final_code:
            for k in range(1 << m):
                q = bin_word(k, m)
                if q == self.final_code:
                    continue
                cand = x + q + c2 + w2 + tape2
                if self.mu(cand) == z:
                    found.add(cand)
        return tuple(sorted(found))

    def run_tm(self, x: str):
        """(value, steps) of the true run on x.

        A forced stop (clock exhausted, head leaving the tape) means the
        machine broke its promises, and is reported as a ModelViolation.
        """
        v = self.initial_eid(x)
        steps = 0
        while True:
            x_, q, c, w, tape = self.sections(v)
            if q == self.final_code:
                return self.tape_value(tape), steps
            nxt = self.mu(v)
            if self.sections(nxt)[2] == c:
                reason = "clock exhausted" if "0" not in c else "move off the tape"
                raise ModelViolation(f"run on {x!r} stopped by force after {steps} steps: {reason}")
            v = nxt
            steps += 1


# ---------------------------------------------------------------- spec files

def _fill_dummies(states, symbols, delta, start, final, m):
    size = 1 << m
    states = list(states)
    symbols = list(symbols)
    k = 0
    while len(states) < size:
        states.append(f"_q{k}")
        k += 1
    k = 0
    while len(symbols) < size:
        symbols.append(f"_s{k}")
        k += 1
    delta = dict(delta)
    for q in states:
        if q == final:
            continue
        for r in symbols:
            if (q, r) in delta:
                continue
            if not (q.startswith("_q") or r.startswith("_s")):
                continue
            # never reached on a true run: walk left until the tape ends
            target = final if q == start else q
            delta[(q, r)] = (target, r, LEFT)
    return tuple(states), tuple(symbols), delta


def parse_tm_spec(text: str, name: str = "tm") -> RestrictedTM:
    fields = {}
    delta = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line or line == "delta:":
            continue
        if "->" in line:
            lhs, rhs = (part.strip() for part in line.split("->", 1))
            try:
                q, r = (s.strip() for s in lhs.split(","))
                q2, r2, mv = (s.strip() for s in rhs.split(","))
            except ValueError:
                raise TMSpecError("bad-delta-line", f"line {lineno}: {raw!r}") from None
            if mv not in ("L", "R"):
                raise TMSpecError("bad-move", f"line {lineno}: {mv!r}")
            if (q, r) in delta:
                raise TMSpecError("duplicate-delta", f"line {lineno}: δ({q},{r})")
            delta[(q, r)] = (q2, r2, LEFT if mv == "L" else RIGHT)
            continue
        if "=" not in line:
            raise TMSpecError("bad-line", f"line {lineno}: {raw!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        fields[key] = value
    for key in ("states", "symbols", "start", "final", "space_poly"):
        if key not in fields:
            raise TMSpecError("missing-field", key)
    states = [s.strip() for s in fields["states"].split(",") if s.strip()]
    symbols = [s.strip() for s in fields["symbols"].split(",") if s.strip()]
    try:
        coeffs = tuple(int(c) for c in fields["space_poly"].split(","))
        floor = int(fields.get("space_floor", "0"))
        space = Poly(coeffs, floor)
    except ValueError as exc:
        raise TMSpecError("bad-space-poly", str(exc)) from None
    needed = max(2, math.ceil(math.log2(max(len(states), len(symbols), 4))))
    m = int(fields["m"]) if "m" in fields else needed
    if m < needed:
        raise TMSpecError("state-count" if len(states) > (1 << m) else "symbol-count",
                          f"m = {m} is too small")
    states, symbols, delta = _fill_dummies(states, symbols, delta,
                                           fields["start"], fields["final"], m)
    tm = RestrictedTM(name=fields.get("name", name), m=m, states=states, symbols=symbols,
                      delta=delta, start=fields["start"], final=fields["final"], space=space)
    return tm.validate()


def load_tm_spec(path) -> RestrictedTM:
    with open(path) as fh:
        return parse_tm_spec(fh.read(), name=str(path))


ONES_COUNT_SPEC = """\
# Counts the ones of an input of length at most 2 and writes the count in binary.
name = ones-count-toy
m = 2
states = q0, qf, Z, O
symbols = B, 0, 1, X
start = q0
final = qf
space_poly = 0, 1
space_floor = 2
delta:
q0, B -> Z, X, R
q0, 0 -> Z, X, R
q0, 1 -> O, 1, R
q0, X -> qf, X, R
Z, B -> Z, B, L
Z, 0 -> Z, B, L
Z, 1 -> O, B, L
Z, X -> qf, 0, R
O, B -> qf, B, L
O, 0 -> qf, B, L
O, 1 -> qf, 0, L
O, X -> qf, 1, R
"""


# One tape cell: every move leaves the tape, so each run is cut short after
# one step.  Small enough (2^13 tokens per input) for exhaustive scalar checks.
MICRO_SPEC = """\
name = one-cell
m = 2
states = q0, qf, A, C
symbols = B, 0, 1, X
start = q0
final = qf
space_poly = 1
delta:
q0, B -> A, X, R
q0, 0 -> A, 1, R
q0, 1 -> C, 0, L
q0, X -> qf, X, R
A, B -> qf, B, L
A, 0 -> C, 1, R
A, 1 -> qf, 0, L
A, X -> C, X, R
C, B -> qf, 1, R
C, 0 -> A, 0, L
C, 1 -> qf, 1, R
C, X -> A, B, L
"""


def micro_machine() -> EncodedTM:
    return EncodedTM(parse_tm_spec(MICRO_SPEC))


def toy_ones_counter() -> EncodedTM:
    """The catalog machine: number of ones in x, valid for |x| <= 2."""
    return EncodedTM(parse_tm_spec(ONES_COUNT_SPEC))
