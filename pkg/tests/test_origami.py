import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from origami_veech.catalog import D, L23, TRIVIAL
from origami_veech.origami import (
    NotTransitiveError,
    Origami,
    canonical_form,
    compose,
    cycle_string,
    format_origami,
    inverse,
    new_origami,
    parse_origami,
    perm_from_cycles,
    ramification_points,
    stratum,
    surface_genus,
    to_dot,
    vertex_permutation,
    vertex_structure,
)
from conftest import random_origami, random_perm


def conjugate(o, s):
    """Relabel square i as s[i]."""
    sinv = inverse(s)
    return Origami(o.d, compose(compose(sinv, o.sigma_a), s), compose(compose(sinv, o.sigma_b), s))


def test_constructors():
    assert new_origami(1, "()", "()") == TRIVIAL
    assert new_origami(4, "(2 3 4)", "(2 1)") == L23
    assert new_origami(5, "(1 2 3)", "(1 4 5)(2 3)") == D
    assert new_origami(4, [1, 2, 3, 0], "[1,2,3,4]").sigma_a == (1, 2, 3, 0)


def test_non_transitive_reports_orbits():
    with pytest.raises(NotTransitiveError) as info:
        new_origami(4, "(1 2)", "()")
    assert info.value.orbits == [[0, 1], [2], [3]]
    assert "{1,2} {3} {4}" in str(info.value)


@pytest.mark.parametrize("a, b", [("(1 2 2)", "()"), ("(1 5)", "()"), ("[1,1]", "()")])
def test_malformed_perms(a, b):
    with pytest.raises(ValueError):
        new_origami(2, a, b)


def test_composition_convention():
    p = perm_from_cycles([[1, 2]], 3)
    q = perm_from_cycles([[2, 3]], 3)
    # first p then q: 1 -> 2 -> 3
    assert compose(p, q)[0] == 2


def test_vertex_structures():
    assert vertex_structure(TRIVIAL) == [1]
    assert vertex_structure(L23) == [3, 1]
    assert vertex_structure(D) == [2, 2, 1]
    assert [len(vertex_structure(o)) for o in (TRIVIAL, L23, D)] == [1, 2, 3]


def test_genus():
    assert [surface_genus(o) for o in (TRIVIAL, L23, D)] == [1, 2, 2]


def test_ramification_points():
    # cycles of length > 1 of the vertex permutation
    assert ramification_points(TRIVIAL) == 0
    assert ramification_points(L23) == 1
    assert ramification_points(D) == 2
    assert stratum(L23) == {3: 1, 1: 1}


def test_vertex_permutation_is_commutator():
    a, b = L23.sigma_a, L23.sigma_b
    expected = compose(compose(compose(a, b), inverse(a)), inverse(b))
    assert vertex_permutation(L23) == expected


def test_canonical_all_relabelings_of_l23():
    forms = {canonical_form(conjugate(L23, s)).key for s in itertools.permutations(range(4))}
    assert len(forms) == 1


def test_canonical_distinguishes():
    assert canonical_form(L23) != canonical_form(D)
    assert canonical_form(TRIVIAL).origami == TRIVIAL
    # same cycle types, not conjugate: (a, b) versus (b, a) for L23
    assert canonical_form(L23) != canonical_form(Origami(4, L23.sigma_b, L23.sigma_a))


def test_canonical_relabeling_is_consistent():
    cf = canonical_form(D)
    assert D.relabel(cf.relabeling) == cf.origami


def test_canonical_invariance_random():
    """200 random origamis, 20 random relabelings each."""
    import random

    rng = random.Random(7)
    for _ in range(200):
        o = random_origami(rng, 1, 8)
        key = canonical_form(o).key
        for _ in range(20):
            assert canonical_form(conjugate(o, random_perm(rng, o.d))).key == key


def test_euler_parity_and_cycle_sum():
    import random

    rng = random.Random(8)
    for _ in range(300):
        o = random_origami(rng, 1, 10)
        vs = vertex_structure(o)
        assert sum(vs) == o.d
        assert (o.d - len(vs)) % 2 == 0
        assert surface_genus(o) >= 1


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 7), st.randoms(use_true_random=False))
def test_canonical_hypothesis(d, r):
    try:
        o = Origami(d, random_perm(r, d), random_perm(r, d))
    except NotTransitiveError:
        return
    s = random_perm(r, d)
    assert canonical_form(conjugate(o, s)) == canonical_form(o)


@pytest.mark.parametrize(
    "text, d",
    [("1; (); ()", 1), ("5; (1 2 3); (1 4 5)(2 3)", 5), ("4; (1 2)(3 4); (1 3)(2 4)", 4), ("3; [2,3,1]; ()", 3)],
)
def test_parse_origami(text, d):
    o = parse_origami(text)
    assert o.d == d
    assert parse_origami(format_origami(o)) == o


def test_parse_origami_d_example():
    assert parse_origami("5; (1 2 3); (1 4 5)(2 3)") == D


@pytest.mark.parametrize("text", ["4; (1 2", "x; (); ()", "0; (); ()", "2; (1 2)", "2; (1 2); (1 3)"])
def test_parse_origami_errors(text):
    with pytest.raises(ValueError):
        parse_origami(text)


def test_format_and_dot():
    assert format_origami(L23) == "4; (2 3 4); (1 2)"
    assert cycle_string(TRIVIAL.sigma_a) == "()"
    dot = to_dot(L23)
    assert dot.startswith("digraph") and dot.count("->") == 8
