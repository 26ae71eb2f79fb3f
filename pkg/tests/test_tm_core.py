import pytest

from intervalsize.errors import ModelViolation, TMSpecError
from intervalsize.tm_core import (ONES_COUNT_SPEC, EncodedTM, micro_machine, nu,
                                  parse_tm_spec, toy_ones_counter)

from oracles import simulate, words, words_up_to


def test_nu_examples():
    assert nu("") == 0
    assert nu("101") == 5
    assert nu("10BB") == 2
    assert nu("1B1") == 0
    assert nu(["1", "X"]) == 0


def test_codecs_fix_mandated_images():
    enc = toy_ones_counter()
    assert enc.phi[enc.tm.start] == "00" and enc.phi[enc.tm.final] == "11"
    assert (enc.theta["B"], enc.theta["0"], enc.theta["1"]) == ("00", "10", "11")
    assert enc.theta_hat_inv(enc.theta_hat(["1", "B", "0"])) == ["1", "B", "0"]


def test_delta_prime_roundtrip_and_final_state():
    enc = toy_ones_counter()
    tm = enc.tm
    for q in tm.states:
        for r in tm.symbols:
            got = enc.delta_prime(enc.phi[q], enc.theta[r])
            if q == tm.final:
                assert got is None
                continue
            q2, r2, move = tm.delta[(q, r)]
            assert got == (enc.phi[q2], enc.theta[r2], move)


def test_params_of_toy_machine():
    par = toy_ones_counter().params
    assert (par.r(1), par.t(1), par.s(1)) == (1, 4, 7)
    assert par.eid_length(2) == 2 + 2 * par.s(2)


def test_initial_eid_layout():
    enc = toy_ones_counter()
    v = enc.initial_eid("1")
    x, q, c, w, tape = enc.sections(v)
    assert (x, q, "1" in c, "1" in w) == ("1", "00", False, False)
    assert tape.startswith("11") and set(tape[2:]) == {"0"}
    assert len(v) == enc.params.eid_length(1)
    assert set(enc.sections(enc.initial_eid(""))[4]) == {"0"}


def test_initial_eid_overflow_rejected():
    with pytest.raises(ValueError):
        micro_machine().initial_eid("01")


def test_mu_single_step_and_final_state():
    enc = toy_ones_counter()
    v = enc.initial_eid("1")
    nxt = enc.mu(v)
    _, q, c, w, tape = enc.sections(nxt)
    q2, sym, _ = enc.tm.delta[(enc.tm.start, "1")]
    assert q == enc.phi[q2] and int(c, 2) == 1 and w == "1"
    assert tape[:2] == enc.theta[sym]
    final = "1" + "11" + v[3:]
    assert enc.mu(final) is None
    assert enc.mu("0101") is None


def test_mu_clock_exhausted_forces_final_state():
    enc = toy_ones_counter()
    s = enc.params.s(1)
    v = "1" + "00" + "1" * s + "0" + "1100"
    assert len(v) == enc.params.eid_length(1)
    out = enc.mu(v)
    assert out == "1" + "11" + v[3:]


@pytest.mark.parametrize("make,n", [(micro_machine, 0), (micro_machine, 1),
                                    (toy_ones_counter, 0)])
def test_mu_properties_exhaustive(make, n):
    enc = make()
    length = enc.params.eid_length(n)
    s = enc.params.s(n)
    universe = [x + rest for x in words(n) for rest in words(length - n)]
    inverse = {}
    for v in universe:
        out = enc.mu(v)
        q = enc.sections(v)[1]
        assert (out is None) == (q == enc.final_code)
        if out is not None:
            assert len(out) == len(v)
            inverse.setdefault(out, set()).add(v)
    for v in universe:
        assert set(enc.mu_preimages(v)) == inverse.get(v, set())
    # every chain reaches an undefined point without revisiting
    for v in universe[::7]:
        seen = {v}
        cur = v
        for _ in range((1 << s) + 2):
            cur = enc.mu(cur)
            if cur is None:
                break
            assert cur not in seen
            seen.add(cur)
        assert cur is None


def test_initial_eid_has_no_preimage():
    enc = toy_ones_counter()
    for x in words_up_to(2):
        assert enc.mu_preimages(enc.initial_eid(x)) == ()


def test_run_tm_matches_plain_simulator():
    enc = toy_ones_counter()
    for x in words_up_to(2):
        value, steps = enc.run_tm(x)
        assert value == simulate(enc.tm, x) == x.count("1")
        assert steps < 1 << enc.params.s(len(x))


def test_micro_machine_runs_are_cut_short():
    enc = micro_machine()
    for x in words_up_to(1):
        assert simulate(enc.tm, x) is None
        with pytest.raises(ModelViolation):
            enc.run_tm(x)


@pytest.mark.parametrize("edit,violation", [
    (lambda t: t.replace("m = 2\n", "m = 1\n"), "state-count"),
    (lambda t: t.replace("q0, X -> qf, X, R\n", ""), "delta-incomplete"),
    (lambda t: t.replace("Z, B -> Z, B, L", "Z, B -> q0, B, L"), "delta-into-start"),
    (lambda t: t.replace("final = qf", "final = q0"), "start-equals-final"),
    (lambda t: t.replace("O, X -> qf, 1, R", "O, X -> qf, 1, U"), "bad-move"),
    (lambda t: t.replace("start = q0\n", ""), "missing-field"),
    (lambda t: t + "qf, B -> qf, B, R\n", "delta-on-final"),
    (lambda t: t + "Z, B -> Z, B, L\n", "duplicate-delta"),
    (lambda t: t.replace("O, B -> qf, B, L", "O, B -> qf, Y, L"), "unknown-symbol"),
])
def test_spec_loader_names_each_violation(edit, violation):
    with pytest.raises(TMSpecError) as info:
        parse_tm_spec(edit(ONES_COUNT_SPEC))
    assert info.value.violation == violation


def test_dummies_pad_small_machines():
    text = """
states = a, f
symbols = B, 0, 1
start = a
final = f
space_poly = 1, 1
delta:
a, B -> f, B, R
a, 0 -> f, 0, R
a, 1 -> f, 1, R
"""
    tm = parse_tm_spec(text)
    assert tm.m == 2 and len(tm.states) == 4 and len(tm.symbols) == 4
    EncodedTM(tm)
