import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors as sympy_invariant_factors

from parorb.abgroup import (Hom, dual_characters, element_order, evaluate_character, fp_group, kernel, matmul,
                            n_torsion, smith_normal_form, subgroup_generated)
from parorb.errors import InfiniteGroup, InputError, RelationViolation

small = st.integers(-9, 9)


@st.composite
def int_matrices(draw, max_rows=4, max_cols=4):
    m = draw(st.integers(0, max_rows))
    n = draw(st.integers(1, max_cols))
    return [draw(st.lists(small, min_size=n, max_size=n)) for _ in range(m)], n


def oracle_factors(M, n):
    """Nonzero SNF diagonal from sympy, padded with zeros to ``n`` entries."""
    if not M:
        return [0] * n
    d = [abs(int(x)) for x in sympy_invariant_factors(Matrix(M), domain=ZZ)]
    d = [x for x in d if x]
    return d + [0] * (n - len(d))


@settings(max_examples=150, deadline=None)
@given(int_matrices())
def test_snf_diagonal_matches_sympy(data):
    M, n = data
    U, D, V = smith_normal_form(M, n)
    if M:
        assert matmul(matmul(U, M, len(M)), V, n) == D
    diag = [D[i][i] for i in range(min(len(M), n))] + [0] * (n - min(len(M), n))
    assert diag == oracle_factors(M, n)
    for i in range(len(D)):
        for j in range(n):
            if i != j:
                assert D[i][j] == 0
    nz = [d for d in diag if d]
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))


@settings(max_examples=60, deadline=None)
@given(int_matrices(max_rows=3, max_cols=3))
def test_unimodular_transforms(data):
    M, n = data
    U, _, V = smith_normal_form(M, n)
    if M:
        assert abs(Matrix(U).det()) == 1
    assert abs(Matrix(V).det()) == 1


@settings(max_examples=100, deadline=None)
@given(int_matrices())
def test_group_structure_from_sympy(data):
    M, n = data
    G = fp_group(n, M)
    diag = oracle_factors(M, n)
    assert G.free_rank == diag.count(0)
    assert G.invariant_factors == tuple(d for d in diag if d > 1)


def test_order_by_brute_force():
    # Z^2 / <(2,4), (6,8)>: determinant 8 counts the cosets
    G = fp_group(2, [[2, 4], [6, 8]])
    assert G.order == abs(Matrix([[2, 4], [6, 8]]).det()) == 8
    assert G.invariant_factors == (2, 4)
    classes = {G.element([a, b]) for a in range(12) for b in range(12)}
    assert len(classes) == 8


def test_infinite_group_refuses_enumeration():
    G = fp_group(2, [[2, 0]])
    assert G.order == math.inf and G.describe() == "Z + Z/2"
    with pytest.raises(InfiniteGroup):
        G.elements()
    with pytest.raises(InfiniteGroup):
        dual_characters(G)


def test_trivial_and_empty():
    assert fp_group(0).order == 1
    assert fp_group(1, [[1]]).describe() == "0"
    assert fp_group(1).describe() == "Z"


def test_element_arithmetic_and_order():
    G = fp_group(2, [[4, 0], [0, 6]])
    x = G.element([1, 1])
    assert element_order(x) == 12
    assert (12 * x).is_zero() and not (6 * x).is_zero()
    assert x - x == G.zero
    y = G.element([5, 7])
    assert x == y
    assert element_order(fp_group(1).generator(0)) == math.inf


def test_lift_round_trip_exhaustive():
    G = fp_group(3, [[2, 4, 6], [0, 3, 3], [0, 0, 5]])
    elems = G.elements()
    assert len(elems) == G.order
    for i, g in enumerate(elems):
        assert G.index_of(g) == i
        assert G.element(G.lift(g)) == g


def test_ragged_relations_rejected():
    with pytest.raises(InputError):
        fp_group(2, [[1, 2, 3]])


def test_mixing_groups_rejected():
    G, H = fp_group(1, [[2]]), fp_group(1, [[2]])
    with pytest.raises(InputError):
        G.generator(0) + H.generator(0)


def test_hom_relation_violation():
    Z4, Z2 = fp_group(1, [[4]]), fp_group(1, [[2]])
    Hom(Z4, Z2, ((1,),)).check()
    with pytest.raises(RelationViolation):
        Hom(Z2, Z4, ((1,),)).check()


def brute_kernel_size(f):
    return sum(1 for g in f.source.elements() if f(g).is_zero())


@pytest.mark.parametrize("src, tgt, mat", [
    ((2, [[4, 0], [0, 6]]), (1, [[2]]), ((1,), (1,))),
    ((2, [[6, 0], [0, 6]]), (1, [[3]]), ((1,), (2,))),
    ((1, [[12]]), (1, [[12]]), ((4,),)),
    ((3, [[2, 0, 0], [0, 2, 0], [0, 0, 2]]), (1, [[2]]), ((1,), (1,), (1,))),
])
def test_kernel_against_brute_force(src, tgt, mat):
    f = Hom(fp_group(*src), fp_group(*tgt), mat)
    K, inc = kernel(f)
    assert K.order == brute_kernel_size(f)
    for g in K.elements():
        assert f(inc(g)).is_zero()
    assert len({inc(g) for g in K.elements()}) == K.order


@pytest.mark.parametrize("rels, n", [
    ([[12]], 3), ([[12]], 4), ([[4, 0], [0, 6]], 2), ([[4, 0], [0, 6]], 6), ([[3, 0], [0, 0]], 3), ([[5]], 2),
])
def test_n_torsion_against_brute_force(rels, n):
    G = fp_group(len(rels[0]), rels)
    T, inc = n_torsion(G, n)
    if G.is_finite:
        want = sum(1 for g in G.elements() if (n * g).is_zero())
        assert T.order == want
    for g in T.elements():
        assert (n * inc(g)).is_zero()


def test_n_torsion_rejects_nonpositive():
    with pytest.raises(InputError):
        n_torsion(fp_group(1, [[2]]), 0)


def test_preimage():
    G = fp_group(1, [[12]])
    f = Hom(G, G, ((3,),))
    y = G.generator(0)
    assert f.preimage(y) is None
    x = f.preimage(3 * y)
    assert f(x) == 3 * y


def test_subgroup_generated():
    G = fp_group(2, [[4, 0], [0, 6]])
    S, inc = subgroup_generated(G, [G.element([2, 0]), G.element([0, 3])])
    assert S.invariant_factors == (2, 2)
    assert {inc(g) for g in S.elements()} == {G.element([a, b]) for a in (0, 2) for b in (0, 3)}


def test_dual_characters_are_homomorphisms():
    A = fp_group(2, [[2, 0], [0, 6]])
    chars = dual_characters(A)
    assert len(chars) == A.order
    for chi in chars:
        for g, h in itertools.product(A.elements(), repeat=2):
            assert evaluate_character(chi, g + h) == (evaluate_character(chi, g) + evaluate_character(chi, h)) % 1
    assert chars[0] == (Fraction(0), Fraction(0))
    assert len(set(tuple(evaluate_character(c, g) for g in A.elements()) for c in chars)) == A.order
