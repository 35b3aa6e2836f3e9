import pytest

from origami_veech.catalog import D, L23
from origami_veech.congruence import is_congruence
from origami_veech.cosets import subgroup_index
from origami_veech.catalog import GENERATORS
from origami_veech.origami import canonical_form, cycle_string, surface_genus, vertex_structure
from origami_veech.sequences import (
    SequenceSpec,
    build,
    matches_kernel,
    parabolic_test,
    remark_check,
    veech_of,
    verify_distinctness,
    verify_inclusion,
)
from origami_veech.sl2 import Mat, decompose_st
from origami_veech.veech import member

# Veech group indices of O_n and D_n computed by this package (self-generated regression baseline)
INDEX_BASELINE = {
    "L23": {1: 9, 2: 36, 3: 288, 4: 288},
    "D": {1: 24, 2: 144, 3: 1728},
}


def test_build_first_members():
    assert canonical_form(build("L23", 1)) == canonical_form(L23)
    assert canonical_form(build("D", 1)) == canonical_form(D)
    assert build(SequenceSpec("D", 1)) == build("D", 1)


def test_build_literal_numbering():
    o = build("L23", 3)
    assert o.d == 12
    assert cycle_string(o.sigma_a) == "(1 3 4 5 7 8 9 11 12)"
    assert cycle_string(o.sigma_b) == "(1 2)(5 6)(9 10)"
    d2 = build("D", 2)
    assert cycle_string(d2.sigma_a) == "(1 2 3 6 7 8)"
    assert cycle_string(d2.sigma_b) == "(1 4 5)(2 3)(6 9 10)(7 8)"


def test_spec_validation():
    with pytest.raises(ValueError):
        SequenceSpec("L23", 0)
    with pytest.raises(ValueError):
        build("E", 2)
    assert SequenceSpec("D", 4).name == "D4"


@pytest.mark.parametrize("n", range(1, 7))
def test_genus_and_punctures(n):
    o = build("L23", n)
    assert o.d == 4 * n
    assert (surface_genus(o), len(vertex_structure(o))) == (n + 1, 2 * n)
    o = build("D", n)
    assert o.d == 5 * n
    assert (surface_genus(o), len(vertex_structure(o))) == (2 * n, n + 2)


@pytest.mark.parametrize("base", ["L23", "D"])
@pytest.mark.parametrize("n", range(1, 7))
def test_build_is_power_kernel(base, n):
    assert matches_kernel(base, n)


def test_d_cusp_orders():
    # D_n has 2 vertices of cone order 2n and n unramified ones
    for n in range(1, 5):
        vs = vertex_structure(build("D", n))
        assert sorted(vs) == [1] * n + [2 * n] * 2


@pytest.mark.parametrize("base, n, m", [("L23", 1, 2), ("L23", 2, 4), ("D", 1, 2), ("L23", 1, 3)])
def test_inclusion(base, n, m):
    assert verify_inclusion(base, n, m)


def test_inclusion_precondition():
    with pytest.raises(ValueError):
        verify_inclusion("L23", 2, 3)


def test_index_baseline():
    for base, table in INDEX_BASELINE.items():
        for n, idx in table.items():
            assert veech_of(base, n).index == idx


@pytest.mark.parametrize("base, n, m", [("L23", 1, 2), ("L23", 2, 4), ("D", 1, 2)])
def test_index_divisibility(base, n, m):
    assert veech_of(base, m).index % veech_of(base, n).index == 0


def test_parabolic_examples():
    o1 = veech_of("L23", 1)
    assert parabolic_test(o1, 3) and not parabolic_test(o1, 1) and not parabolic_test(o1, 2)
    o2 = veech_of("L23", 2)
    assert parabolic_test(o2, 6) and not parabolic_test(o2, 3)
    d2 = veech_of("D", 2)
    assert parabolic_test(d2, 6) and not parabolic_test(d2, 2)


@pytest.mark.parametrize("base", ["L23", "D"])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_parabolic_scan(base, n):
    g = veech_of(base, n)
    for s in range(-12, 13):
        assert parabolic_test(g, s) == (s % (3 * n) == 0)


@pytest.mark.parametrize("base, n, m", [("L23", 1, 2), ("L23", 2, 3), ("D", 1, 3)])
def test_distinctness(base, n, m):
    assert verify_distinctness(base, n, m)


def test_distinctness_precondition():
    with pytest.raises(ValueError):
        verify_distinctness("L23", 2, 2)


def test_remark_l23():
    assert remark_check("L23", 1)
    assert remark_check("L23", 2)
    assert remark_check("L23")


def test_remark_d_matrix_not_in_group():
    """[[1,0],[3,1]] together with the catalog generators of Gamma(D) generates SL(2, Z)."""
    b3 = Mat(1, 0, 3, 1)
    assert not member(veech_of("D", 1), b3)
    words = [decompose_st(m) for m in GENERATORS["D"]]
    assert subgroup_index(words) == 24
    assert subgroup_index(words + [decompose_st(b3)]) == 1
    assert not remark_check("D", 2)
    # the lower unipotent elements in Gamma(D) are the multiples of 6
    assert [k for k in range(1, 13) if member(veech_of("D", 1), Mat(1, 0, k, 1))] == [6, 12]
    assert remark_check("D", 3, matrix=Mat(1, 0, 6, 1))


@pytest.mark.parametrize("base", ["L23", "D"])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_non_congruence(base, n):
    assert is_congruence(veech_of(base, n)).verdict == "NonCongruence"
