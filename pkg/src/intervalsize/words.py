"""Binary words as Python strings over '0' and '1'."""

from itertools import product


def is_word(w) -> bool:
    return isinstance(w, str) and all(c in "01" for c in w)


def shortlex_key(w: str):
    return (len(w), w)


def shortlex_leq(u: str, v: str) -> bool:
    return (len(u), u) <= (len(v), v)


def shortlex_lt(u: str, v: str) -> bool:
    return (len(u), u) < (len(v), v)


def shortlex_succ(w: str) -> str:
    if "0" not in w:
        return "0" * (len(w) + 1)
    return bin_word(int(w, 2) + 1, len(w))


def shortlex_pred(w: str):
    """Shortlex predecessor, or None for the empty word."""
    if w == "":
        return None
    if "1" not in w:
        return "1" * (len(w) - 1)
    return bin_word(int(w, 2) - 1, len(w))


def bin_word(value: int, width: int) -> str:
    """`value` written in binary with exactly `width` digits."""
    if value < 0 or value >= (1 << width):
        raise ValueError(f"{value} does not fit in {width} bits")
    if width == 0:
        return ""
    return format(value, f"0{width}b")


def nu(w: str) -> int:
    """Integer value of a binary word (ε has value 0)."""
    return int(w, 2) if w else 0


def ones(w: str) -> int:
    return w.count("1")


def words_of_length(n: int):
    """All words of length n in lexicographic order."""
    if n == 0:
        yield ""
        return
    for bits in product("01", repeat=n):
        yield "".join(bits)


def words_up_to(n: int):
    """All words of length at most n in shortlex order."""
    for k in range(n + 1):
        yield from words_of_length(k)


def count_words_up_to(n: int) -> int:
    return (1 << (n + 1)) - 1
