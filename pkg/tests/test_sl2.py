import itertools
import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from origami_veech.sl2 import (
    I,
    MINUS_I,
    Mat,
    ModMat,
    S,
    T,
    crt_combine,
    crt_split,
    decompose_st,
    element_order_mod,
    eval_word,
    invert_st,
    mat,
    parse_st,
    reduce_mod,
    reduce_st,
    sl2_order,
    subgroup_closure_mod,
)

A1 = Mat(1, 3, 0, 1)
A6 = Mat(7, 2, -18, -5)


def random_word(rng, max_len=40):
    return "".join(rng.choice("STst") for _ in range(rng.randint(0, max_len)))


def test_basic_products():
    assert eval_word("TTT") == A1
    assert S @ S == MINUS_I
    assert eval_word(parse_st("S^{-1}T^2S^{-1}T^{-1}S^{-1}TS^{-1}T^{-3}S^{-1}")) == A6
    assert T ** -2 == Mat(1, -2, 0, 1)
    assert (A6 @ A6.inverse()) == I


def test_mat_rejects_bad_determinant():
    with pytest.raises(ValueError):
        mat([[1, 2], [3, 4]])
    assert mat([[2, 1], [1, 1]]) == Mat(2, 1, 1, 1)


@pytest.mark.parametrize(
    "text, expected",
    [
        ("T^3", "TTT"),
        ("(T^2S)T^4(T^2S)^{-1}", "TTSTTTTstt"),
        ("TST^2ST^{-1}T^{-1}", "TSTTStt"),
        ("I", ""),
        ("S S^{-1}", ""),
    ],
)
def test_parse_st(text, expected):
    assert parse_st(text) == expected


@pytest.mark.parametrize("bad", ["(T", "T)", "^2", "TX"])
def test_parse_st_errors(bad):
    with pytest.raises(ValueError):
        parse_st(bad)


def test_invert_and_reduce():
    w = "TSttS"
    assert eval_word(invert_st(w)) == eval_word(w).inverse()
    assert reduce_st("TtSsT") == "T"


@pytest.mark.parametrize(
    "m", [I, A1, Mat(-1, 3, -2, 5), MINUS_I, A6, Mat(-7, 16, -4, 9), Mat(1, 0, -6, 1)]
)
def test_decompose_examples(m):
    assert eval_word(decompose_st(m)) == m
    if m == I:
        assert decompose_st(m) == ""


def test_decompose_random_words():
    rng = random.Random(1)
    for _ in range(1000):
        m = eval_word(random_word(rng))
        w = decompose_st(m)
        assert eval_word(w) == m
        assert reduce_st(w) == w


@settings(max_examples=200, deadline=None)
@given(st.lists(st.sampled_from("STst"), max_size=60))
def test_decompose_hypothesis(letters):
    m = eval_word("".join(letters))
    assert eval_word(decompose_st(m)) == m


def test_determinant_preserved():
    rng = random.Random(2)
    for _ in range(200):
        a, b = eval_word(random_word(rng)), eval_word(random_word(rng))
        assert (a @ b).det() == 1
        assert a.inverse().det() == 1
        for n in (2, 7, 60):
            r = reduce_mod(a, n)
            assert (r.a * r.d - r.b * r.c) % n == 1 % n


def test_crt_examples():
    assert [r.tolist() for r in crt_split(A1, 60)] == [[[1, 3], [0, 1]], [[1, 0], [0, 1]], [[1, 3], [0, 1]]]
    assert [r.tolist() for r in crt_split(A6, 60)] == [[[3, 2], [2, 3]], [[1, 2], [0, 1]], [[2, 2], [2, 0]]]
    assert [r.n for r in crt_split(A1, 60)] == [4, 3, 5]
    with pytest.raises(ValueError):
        crt_split(A1, [4, 6])


def test_crt_round_trip():
    rng = random.Random(3)
    for _ in range(1000):
        m = reduce_mod(eval_word(random_word(rng)), 60)
        assert crt_combine(crt_split(m, (4, 3, 5))) == m


def test_reduce_identity():
    for n in range(1, 20):
        assert reduce_mod(I, n).is_identity()


def test_element_orders():
    assert [element_order_mod(A1, q) for q in (4, 3, 5)] == [4, 1, 5]
    assert element_order_mod(A6 @ A6, 60) == 15
    assert element_order_mod(I, 7) == 1
    assert element_order_mod(reduce_mod(S, 5)) == 4


def _brute_force_sl2(n):
    return sum(
        1 for a, b, c, d in itertools.product(range(n), repeat=4) if (a * d - b * c) % n == 1 % n
    )


@pytest.mark.parametrize("n", [2, 3])
def test_order_formula_brute_force(n):
    assert sl2_order(n) == _brute_force_sl2(n)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6, 12, 60])
def test_closure_sizes(n):
    c = subgroup_closure_mod([S, T], n)
    expected = n ** 3
    for p in (2, 3, 5):
        if n % p == 0:
            expected = expected * (p * p - 1) // (p * p)
    assert c.size == expected == sl2_order(n)
    assert c.index() == 1
    if n == 60:
        assert c.size == 138240


def test_closure_trivial_and_membership():
    c = subgroup_closure_mod([I], 7)
    assert c.size == 1
    assert I in c and T not in c
    t = subgroup_closure_mod([T], 12)
    assert t.size == 12
    assert Mat(1, 5, 0, 1) in t
    assert S not in t


def test_closure_cap():
    with pytest.raises(OverflowError):
        subgroup_closure_mod([S, T], 60, cap=1000)


def test_closure_modulus_mismatch():
    with pytest.raises(ValueError):
        subgroup_closure_mod([ModMat(1, 1, 0, 1, 5)], 7)


def test_large_entries_exact():
    m = T ** 10 @ S
    for _ in range(12):
        m = m @ m
    assert m.det() == 1
    assert abs(m.a) > 2 ** 64
    assert eval_word(decompose_st(m)) == m
    assert math.gcd(m.a, m.c) == 1
