import pytest

from intervalsize import catalog
from intervalsize.constructed import (FPFunction, UPSVMachine, WitnessPredicate, bin_for, build_fp_order,
                                      build_sharp_p_order, build_upsv_order, eval_triple,
                                      increment_order, normalize_witness)
from intervalsize.errors import (EncodingOverflow, ModelViolation, NormalizationError,
                                 NotTotalError, ValueBoundError)
from intervalsize.order_core import Poly, interval_size_bruteforce
from intervalsize.words import nu

from oracles import axiom_failures, covers, strictly_between, words, words_up_to


def witness_count(w, x):
    return sum(1 for z in words(w.p(len(x))) if w.decider(x, z))


def test_normalize_keeps_count_and_rejects_constant_witnesses():
    w = catalog.witness("majority")
    nw = normalize_witness(w)
    for x in words_up_to(3):
        p = nw.p(len(x))
        assert witness_count(nw, x) == witness_count(w, x)
        assert not nw.decider(x, "0" * p) and not nw.decider(x, "1" * p)
    empty = normalize_witness(WitnessPredicate("none", lambda x, z: False, Poly.of(1, 1)))
    assert witness_count(empty, "01") == 0


def test_bin_roundtrip_and_overflow():
    p = Poly.of(2, 1)
    assert bin_for("0", 5, p) == "101"
    assert all(nu(bin_for("0", i, p)) == i for i in range(8))
    with pytest.raises(EncodingOverflow):
        bin_for("0", 8, p)


def test_sharp_p_block_example():
    # x = "1", p = 2, accepted {01, 10}
    w = WitnessPredicate("pair", lambda x, z: z in ("01", "10"), Poly.of(1, 1),
                         normalized=True)
    triple = build_sharp_p_order(w)
    assert (triple.b("1"), triple.t("1")) == ("111", "100")
    assert eval_triple(triple, "1", "bruteforce") == 2


def test_sharp_p_requires_normalized_witness():
    with pytest.raises(NormalizationError):
        build_sharp_p_order(catalog.witness("parity"))


def test_fp_example_and_value_bound():
    triple = build_fp_order(FPFunction("three", lambda x: 3, Poly.of(2, 1)))
    assert eval_triple(triple, "0", "walk") == eval_triple(triple, "0", "bruteforce") == 3
    big = build_fp_order(FPFunction("big", lambda x: 100, Poly.of(1, 1)))
    with pytest.raises(ValueBoundError):
        eval_triple(big, "0")


@pytest.mark.parametrize("construction,instance", [
    ("sharp-p-order", "parity"), ("fp-order", "ones-count"), ("support-order", "majority"),
    ("offset-order", "constant-1"), ("upsv-order", "ones-plus-one"),
    ("increment-order", "length"),
])
def test_block_universe_axioms_against_triple_loop_oracle(construction, instance):
    triple = catalog.build_triple(construction, instance)
    order = triple.order
    for x in words_up_to(1):
        universe = triple.block_universe(x)
        assert axiom_failures(order.leq, universe, total=order.is_total) == set()
        if order.precedes is not None:
            want = covers(order.leq, universe)
            got = {(u, v) for u in universe for v in universe if order.precedes(u, v)}
            assert got == want


def test_support_order_is_partial_and_uses_support_for_empty_intervals():
    triple = catalog.build_triple("support-order", "constant-0")
    universe = triple.block_universe("0")
    assert "totality" in axiom_failures(triple.order.leq, universe, total=True)
    assert triple.order.precedes(triple.b("0"), triple.t("0"))
    assert eval_triple(triple, "0", "bruteforce") == 0
    with pytest.raises(NotTotalError):
        eval_triple(triple, "0", "walk")


def test_support_deciders_agree_with_witness_counts():
    for name in ["parity", "majority", "monsat-witness", "divisor-witness", "constant-2"]:
        w, s = catalog.witness_with_support(name)
        for x in words_up_to(3):
            assert s.in_support(x) == (witness_count(w, x) > 0)


def test_offset_examples():
    assert eval_triple(catalog.build_triple("offset-order", "constant-0"), "") == 4
    assert eval_triple(catalog.build_triple("offset-order", "constant-1"), "") == 5


def unique_output_paths(machine, x):
    return len(machine.outputs(x)) == 1


def test_upsv_contract_holds_for_catalog_and_fails_for_two_paths():
    for name in ["constant-2", "ones-plus-one", "value-plus-one"]:
        m = catalog.upsv_machine(name)
        assert all(unique_output_paths(m, x) for x in words_up_to(3))
    broken = catalog.upsv_machine("two-paths")
    assert not unique_output_paths(broken, "0")


def test_upsv_rejects_zero_output():
    m = UPSVMachine("zero", Poly.of(1, 1), lambda x, z: 0 if "1" not in z else None)
    with pytest.raises(ModelViolation):
        eval_triple(build_upsv_order(m), "0")


def test_increment_examples():
    zero = increment_order(build_fp_order(FPFunction("zero", lambda x: 0, Poly.of(1, 1))))
    assert eval_triple(zero, "1") == 1
    four = increment_order(build_fp_order(FPFunction("three", lambda x: 3, Poly.of(2, 1))))
    assert eval_triple(four, "0") == eval_triple(four, "0", "bruteforce") == 4


def test_increment_of_partial_base_is_rejected():
    with pytest.raises(NotTotalError):
        increment_order(catalog.build_triple("support-order", "parity"))


def test_walk_brute_and_oracle_agree_on_small_inputs():
    triple = catalog.build_triple("sharp-p-order", "divisor-witness")
    w = normalize_witness(catalog.witness("divisor-witness"))
    for x in words_up_to(3):
        universe = triple.block_universe(x)
        want = strictly_between(triple.order.leq, triple.b(x), triple.t(x), universe)
        assert want == witness_count(w, x)
        assert interval_size_bruteforce(triple.spec, x) == want
        assert eval_triple(triple, x, "walk") == want
