"""Built-in counting functions, witness deciders and machines, looked up by name.

Names may carry one integer parameter, as in "constant-3".
"""

import re

from .constructed import (FPFunction, SupportDecider, UPSVMachine, WitnessPredicate,
                          build_fp_order, build_offset_order, build_sharp_p_order,
                          build_support_aware_order, build_upsv_order, increment_order,
                          normalize_witness)
from .errors import UnknownInstance
from .order_core import Poly
from .words import nu, ones


def _split(name):
    m = re.fullmatch(r"([a-z-]+?)(?:-(\d+))?", name)
    if not m:
        raise UnknownInstance(name)
    return m.group(1), (int(m.group(2)) if m.group(2) else None)


def _canonical_number(x):
    """The natural number written by x, or None for non-canonical words."""
    if not x or x[0] != "1":
        return None
    return int(x, 2)


def divisor_decider(x, z):
    m = _canonical_number(x)
    if m is None:
        return False
    d = nu(z)
    return 1 < d < m and m % d == 0


def monsat_decider(x, z):
    return any(a == "1" and b == "1" for a, b in zip(x, z))


def _constant_witness(k):
    extra = (k - 1).bit_length() if k > 0 else 0
    return WitnessPredicate(f"constant-{k}", lambda x, z: nu(z) < k, Poly.of(extra, 1))


def _is_composite(m):
    if m is None or m < 4:
        return False
    d = 2
    while d * d <= m:
        if m % d == 0:
            return True
        d += 1
    return False


WITNESSES = {
    "parity": (lambda: WitnessPredicate(
        "parity", lambda x, z: ones(z) % 2 == ones(x) % 2, Poly.of(1, 1)),
        lambda x: True),
    "majority": (lambda: WitnessPredicate(
        "majority", lambda x, z: 2 * ones(z) > len(z), Poly.of(1, 1)),
        lambda x: True),
    "monsat-witness": (lambda: WitnessPredicate(
        "monsat-witness", monsat_decider, Poly.of(1, 1)),
        lambda x: "1" in x),
    "divisor-witness": (lambda: WitnessPredicate(
        "divisor-witness", divisor_decider, Poly.identity()),
        lambda x: _is_composite(_canonical_number(x))),
}


def witness(name: str) -> WitnessPredicate:
    """Un-normalized witness predicate from the catalog."""
    return witness_with_support(name)[0]


def witness_with_support(name: str):
    stem, k = _split(name)
    if stem == "constant" and k is not None:
        return _constant_witness(k), SupportDecider(lambda x: k > 0)
    if name in WITNESSES:
        make, supp = WITNESSES[name]
        return make(), SupportDecider(supp)
    raise UnknownInstance(f"no witness predicate named {name!r}")


def fp_function(name: str) -> FPFunction:
    stem, k = _split(name)
    if stem == "constant" and k is not None:
        return FPFunction(f"constant-{k}", lambda x: k, Poly.of((k + 1).bit_length(), 1))
    table = {
        "ones-count": FPFunction("ones-count", ones, Poly.of(1, 1)),
        "length": FPFunction("length", len, Poly.of(1, 1)),
        "value": FPFunction("value", nu, Poly.of(1, 1)),
    }
    if name in table:
        return table[name]
    raise UnknownInstance(f"no FP function named {name!r}")


def upsv_machine(name: str) -> UPSVMachine:
    stem, k = _split(name)
    if stem == "constant" and k is not None:
        width = Poly.of(k.bit_length(), 1)
        return UPSVMachine(f"constant-{k}", width,
                           lambda x, z: k if "1" not in z else None)
    if name == "ones-plus-one":
        return UPSVMachine(name, Poly.of(1, 1),
                           lambda x, z: ones(x) + 1 if z == "1" + x else None)
    if name == "value-plus-one":
        return UPSVMachine(name, Poly.of(1, 1),
                           lambda x, z: nu(x) + 1 if z == x + "1" else None)
    if name == "two-paths":
        # breaks the unique-path promise on purpose
        return UPSVMachine(name, Poly.of(1, 1),
                           lambda x, z: 1 if "1" not in z or "0" not in z else None)
    raise UnknownInstance(f"no unique-path machine named {name!r}")


CONSTRUCTIONS = ("sharp-p-order", "fp-order", "support-order", "offset-order",
                 "upsv-order", "increment-order")


def build_triple(construction: str, instance: str):
    if construction == "sharp-p-order":
        return build_sharp_p_order(normalize_witness(witness(instance)))
    if construction == "fp-order":
        return build_fp_order(fp_function(instance))
    if construction == "support-order":
        w, s = witness_with_support(instance)
        return build_support_aware_order(normalize_witness(w), s)
    if construction == "offset-order":
        return build_offset_order(normalize_witness(witness(instance)))
    if construction == "upsv-order":
        return build_upsv_order(upsv_machine(instance))
    if construction == "increment-order":
        return increment_order(build_fp_order(fp_function(instance)))
    raise UnknownInstance(f"no construction named {construction!r}")
