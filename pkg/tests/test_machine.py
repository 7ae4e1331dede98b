import random

import pytest
from hypothesis import given, settings, strategies as st

from kleeneset import romlib as rom
from kleeneset.machine import (
    DivergedError, OutOfFuelError, apply, apply_chain, apply_raw, fixpoint,
    run_code,
)
from kleeneset.pairing import pair, unpair0, unpair1
from kleeneset.terms import (
    A, L, Lam, Lit, N, Prim, V, bracket_abstract, compile_lambda, decode,
    encode, mkapp, UnboundVariableError)


def test_basic_combinator_examples():
    assert apply_chain(rom.K, 3, 5) == 3
    assert apply_raw(rom.SN, 4) == 5
    assert apply_raw(rom.PN, 0) == 0
    assert apply_raw(rom.PN, 7) == 6
    assert apply_chain(rom.D, 8, 9, 2, 2) == 8
    assert apply_chain(rom.D, 8, 9, 2, 3) == 9
    assert apply_chain(rom.P, 2, 1) == 5
    assert apply_raw(rom.P0, 5) == 2
    assert apply_raw(rom.P1, 5) == 1


def _total_pool(rng):
    """Programs that converge on any argument, for law instances."""
    x = rng.randrange(100)
    y = rng.randrange(100)
    return [rom.K, rom.P, rom.SN, rom.PN, rom.P0, rom.P1,
            mkapp(rom.K, x), mkapp(mkapp(rom.D, x), y)]


def test_k_law_randomized():
    rng = random.Random(11)
    for _ in range(500):
        a, b = rng.randrange(10 ** 6), rng.randrange(10 ** 6)
        assert apply_chain(rom.K, a, b) == a


def test_s_law_randomized():
    rng = random.Random(12)
    for _ in range(500):
        a = rng.choice([rom.K, rom.P, mkapp(mkapp(rom.D, rng.randrange(50)),
                                            rng.randrange(50))])
        b = rng.choice(_total_pool(rng))
        c = rng.randrange(10 ** 4)
        lhs = apply_chain(rom.S, a, b, c)
        rhs = apply_raw(apply_raw(a, c), apply_raw(b, c))
        assert lhs == rhs


def test_succ_pred_laws_randomized():
    rng = random.Random(13)
    for _ in range(500):
        a = rng.randrange(10 ** 9)
        assert apply_raw(rom.SN, a) == a + 1
        assert apply_raw(rom.PN, a) == max(a - 1, 0)


def test_d_law_randomized():
    rng = random.Random(14)
    for _ in range(500):
        a, b = rng.randrange(10 ** 6), rng.randrange(10 ** 6)
        if rng.random() < 0.5:
            c1 = c2 = rng.randrange(10 ** 6)
        else:
            c1, c2 = rng.randrange(10 ** 6), rng.randrange(10 ** 6)
        want = a if c1 == c2 else b
        assert apply_chain(rom.D, a, b, c1, c2) == want


def test_pair_laws_randomized():
    rng = random.Random(15)
    for _ in range(500):
        a, b = rng.randrange(10 ** 6), rng.randrange(10 ** 6)
        c = apply_chain(rom.P, a, b)
        assert c == pair(a, b)
        assert apply_raw(rom.P0, c) == a
        assert apply_raw(rom.P1, c) == b


def test_fuel_monotonicity_and_value_stability():
    f = rom.MONUS
    lo = None
    for fuel in (40, 80, 200, 10 ** 5):
        try:
            r = apply_chain(f, 9, 4, fuel=fuel)
        except OutOfFuelError:
            assert lo is None, "a value must not degrade with more fuel"
            continue
        if lo is None:
            lo = r
        assert r == lo == 5


def test_apply_deterministic():
    for _ in range(3):
        assert apply_chain(rom.PLUS, 17, 25) == 42


def test_under_applied_primitives_are_values():
    spine = apply_raw(rom.K, 9)
    assert spine == mkapp(rom.K, 9)
    assert apply_raw(spine, 1) == 9
    assert run_code(spine) == spine  # evaluation keeps the written form


def test_out_of_fuel_on_self_application():
    assert apply(0, 0, fuel=100).out_of_fuel


def test_junk_as_program_reports_out_of_fuel():
    r = apply(15, 3, fuel=1000)  # 15 has no program reading in head position
    assert r.out_of_fuel
    with pytest.raises(DivergedError):
        apply_raw(15, 3, fuel=1000)


def test_literals_are_inert_arguments():
    assert apply_raw(rom.SN, 15) == 16
    assert apply_chain(rom.K, 0, 5) == 0


# ---------------------------------------------------------------------------
# bracket abstraction


def test_bracket_identity():
    ident = bracket_abstract(V("x"), "x")
    assert apply_raw(encode(ident), 7) == 7


def test_bracket_sigma_display():
    # the two-argument constructor that tags a pair with 2
    sigma = compile_lambda(L("n", "m", A(Prim("p"), N(2),
                                         A(Prim("p"), V("n"), V("m")))))
    for n, m in ((0, 0), (3, 5), (11, 2)):
        assert apply_chain(sigma, n, m) == pair(2, pair(n, m))
    assert apply_chain(rom.SIGMA_PROG, 3, 5) == pair(2, pair(3, 5))
    assert apply_chain(rom.PI_PROG, 3, 5) == pair(3, pair(3, 5))


def test_bracket_constant_composition():
    # \x. k, applied to anything, then to (a, b), gives a
    f = compile_lambda(L("x", Prim("k")))
    assert apply_chain(f, 99, 4, 7) == 4


def test_bracket_unbound_variable():
    with pytest.raises(UnboundVariableError):
        bracket_abstract(A(V("x"), V("y")), "x")


def test_lambda_lift_gives_small_closures():
    two = compile_lambda(L("a", "b", A(Prim("p"), V("a"), V("b"))))
    partial = apply_raw(two, 6)
    assert apply_raw(partial, 7) == pair(6, 7)


# ---------------------------------------------------------------------------
# the recursion theorem


def test_fixpoint_of_identity_step():
    e = fixpoint(compile_lambda(L("e", "x", V("x"))))
    for n in (0, 1, 2):
        assert apply_raw(e, n) == n


def test_delta_iota_identities():
    assert unpair0(rom.IOTA) == rom.DELTA
    assert unpair1(rom.IOTA) == rom.DELTA
    assert rom.IOTA == pair(rom.DELTA, rom.DELTA)
    for n in (0, 1, 4, 9):
        assert apply_raw(rom.DELTA, n) == pair(n, rom.IOTA)


def test_fixpoint_contract():
    # e x = f e x for the step f it was built from
    step = compile_lambda(L("e", "n", A(Prim("p"), V("n"), V("e"))))
    e = fixpoint(step)
    for n in (0, 5):
        assert apply_raw(e, n) == apply_raw(apply_chain(step, e), n) == pair(n, e)


def test_fixpoint_factorial():
    mul = rom.MONUS  # placeholder to keep names close; real mult below
    fact_step = L("f", "n",
                  A(Prim("d"),
                    Lam("_", N(1)),
                    Lam("_", A(Lit(rom.PLUS), V("n"), N(0))),
                    V("n"), N(0), N(0)))
    # a genuine multiply: iterate addition
    mult = fixpoint(compile_lambda(L("f", "a", "b",
        A(Prim("d"),
          Lam("_", N(0)),
          Lam("_", A(Lit(rom.PLUS), V("b"),
                     A(V("f"), A(Prim("pN"), V("a")), V("b")))),
          V("a"), N(0), N(0)))))
    assert apply_chain(mult, 3, 4) == 12
    fact = fixpoint(compile_lambda(L("f", "n",
        A(Prim("d"),
          Lam("_", N(1)),
          Lam("_", A(Lit(mult), V("n"), A(V("f"), A(Prim("pN"), V("n"))))),
          V("n"), N(0), N(0)))))
    assert apply_raw(fact, 0) == 1
    assert apply_raw(fact, 3) == 6
    assert apply_raw(fact, 5) == 120


# ---------------------------------------------------------------------------
# coding


def test_encode_decode_roundtrip_on_canonical_codes():
    samples = [rom.K, rom.S, rom.SN, pair(1, 5),
               mkapp(rom.K, 3), mkapp(mkapp(rom.S, rom.K), rom.K),
               rom.TS, rom.NUMMAP, rom.IOTA, 0, 1, 9, 15]
    for c in samples:
        assert encode(decode(c)) == c


def test_decode_total_on_junk():
    t = decode(pair(9, 9))
    assert encode(t) == pair(9, 9)


@given(st.integers(min_value=0, max_value=10**6),
       st.integers(min_value=0, max_value=10**6))
@settings(max_examples=60, deadline=None)
def test_pair_program_agrees_with_arithmetic(a, b):
    assert apply_chain(rom.P, a, b) == pair(a, b)
    assert apply_raw(rom.P0, pair(a, b)) == a
    assert apply_raw(rom.P1, pair(a, b)) == b


@given(st.integers(min_value=0, max_value=10**4))
@settings(max_examples=40, deadline=None)
def test_fix_contract_holds_for_arbitrary_inputs(x):
    # e x = f e x, with f the step the fixpoint was built from
    step = compile_lambda(L("e", "n", A(Prim("p"), V("n"), A(Prim("sN"), V("n")))))
    e = fixpoint(step)
    assert apply_raw(e, x) == apply_raw(apply_chain(step, e), x) == pair(x, x + 1)


def test_values_identical_cold_and_warm():
    from kleeneset.machine import clear_caches
    rng = random.Random(31)
    jobs = []
    for _ in range(60):
        kind = rng.randrange(4)
        if kind == 0:
            jobs.append((rom.MONUS, (rng.randrange(30), rng.randrange(30))))
        elif kind == 1:
            jobs.append((rom.PLUS, (rng.randrange(30), rng.randrange(30))))
        elif kind == 2:
            jobs.append((rom.TS, (pair(3, pair(pair(1, 0), pair(2, 0))),
                                  rng.randrange(4))))
        else:
            jobs.append((rom.NUMMAP, (rng.randrange(6),)))
    clear_caches()
    cold = [apply_chain(f, *args) for f, args in jobs]
    warm = [apply_chain(f, *args) for f, args in jobs]
    clear_caches()
    again = [apply_chain(f, *args) for f, args in jobs]
    assert cold == warm == again
