import cmath
import itertools
import math
import random
from fractions import Fraction

import numpy as np
import pytest

from parorb.abgroup import fp_group
from parorb.corpus import corpus_groups, split_groups
from parorb.cyclotomic import CycloNumber
from parorb.errors import GroupMismatch, IncompleteInput, InputError, NegativeMultiplicity, NotWellDefined
from parorb.finitegroup import cyclic_group, group_from_permutations, semidirect_product, symmetric_group
from parorb.reptheory import (Character1D, character, decompose, direct_sum, exponents_to_character_value,
                              induce, inner_product, is_irreducible, linear_characters, little_group_orbits,
                              little_groups_irreducibles, local_exponents, mackey_decompose, monomial_irreducibles,
                              regular_rep, tensor, trivial_character, trivial_rep)

S3 = symmetric_group(3)
A3 = next(s for s in S3.all_subgroups() if s.order == 3)
CYCLE = next(g for g in range(6) if S3.element_order(g) == 3)
TRANSP = next(g for g in range(6) if S3.element_order(g) == 2)


def order3_char():
    return Character1D(A3, {CYCLE: Fraction(1, 3)})


def V():
    return induce(S3, A3, order3_char())


def sign_char():
    return Character1D(S3.whole, {g: Fraction(int(S3.element_order(g) == 2), 2) for g in S3.generators})


def sign():
    return induce(S3, S3.whole, sign_char())


def ints(chi):
    return tuple(chi(g).to_rational_integer() for g in (0, TRANSP, CYCLE))


def test_s3_two_dimensional_irreducible():
    R = V()
    assert R.dim == 2 and ints(R.character) == (2, 0, -1)
    assert is_irreducible(R) and inner_product(R.character, R.character) == 1


def test_induction_from_whole_group_and_regular():
    chi = order3_char()
    assert induce(S3, S3.whole, trivial_character(S3.whole)).dim == 1
    reg = induce(S3, S3.trivial, trivial_character(S3.trivial))
    assert reg.dim == 6 and ints(reg.character) == (6, 0, 0)
    assert regular_rep(S3).character == reg.character
    assert induce(S3, A3, chi).dim == 2


def test_tensor_examples():
    R = V()
    assert tensor(R, trivial_rep(S3)).character == R.character
    assert ints(tensor(sign(), sign()).character) == (1, 1, 1)
    VV = tensor(R, R)
    assert ints(VV.character) == (4, 0, 1)
    irr = monomial_irreducibles(S3)
    assert decompose(VV, irr) == (1, 1, 1)
    assert decompose(regular_rep(S3), irr) == (1, 1, 2)
    assert decompose(R, irr) == (0, 0, 1)


def test_tensor_group_mismatch():
    with pytest.raises(GroupMismatch):
        tensor(V(), trivial_rep(cyclic_group(2)))


def test_inner_products():
    triv = trivial_rep(S3).character
    assert inner_product(triv, triv) == 1
    assert inner_product(regular_rep(S3).character, triv) == 1


def test_mackey_normal_subgroup_case():
    chi = order3_char()
    summands = mackey_decompose(S3, A3, chi, A3, chi)
    assert len(summands) == 2
    dims = sorted(induce(S3, s.subgroup, s.chi).dim for s in summands)
    assert dims == [2, 2]
    chars = [ints(induce(S3, s.subgroup, s.chi).character) for s in summands]
    assert sorted(chars) == sorted([(2, 0, -1), (2, 0, 2)])   # V and trivial + sign


def test_mackey_projection_formula_case():
    G = symmetric_group(4)
    for H2 in G.all_subgroups():
        chi1 = trivial_character(G.whole)
        for chi2 in linear_characters(H2):
            out = mackey_decompose(G, G.whole, chi1, H2, chi2)
            assert len(out) == 1 and out[0].subgroup == H2


def test_mackey_whole_whole():
    sgn = sign_char()
    out = mackey_decompose(S3, S3.whole, sgn, S3.whole, sgn)
    assert len(out) == 1 and out[0].chi.is_trivial()


def test_character_constant_and_regular_zero():
    G = corpus_groups()["S4"]
    reg = regular_rep(G)
    assert all(reg.character(g).is_zero() for g in range(1, G.n))
    assert reg.character(0) == CycloNumber.integer(24)


def test_local_exponents_examples():
    R = V()
    assert local_exponents(R, 0) == (0, 0)
    assert local_exponents(R, CYCLE) == (Fraction(1, 3), Fraction(2, 3))
    assert local_exponents(R, TRANSP) == (0, Fraction(1, 2))


def numeric_exponents(M):
    ev = np.linalg.eigvals(M)
    return sorted(round((cmath.phase(z) / (2 * math.pi)) % 1.0, 9) % 1.0 for z in ev)


@pytest.mark.parametrize("name", ["S4", "D5", "Z7:Z3", "Z5:Z4", "A4"])
def test_local_exponents_and_traces_against_numpy(name):
    G = corpus_groups()[name]
    rng = random.Random(5)
    subs = G.all_subgroups()
    for H in rng.sample(subs, min(6, len(subs))):
        for chi in linear_characters(H)[:3]:
            R = induce(G, H, chi)
            R.check_multiplicative()
            for g in range(G.n):
                M = R.dense(g)
                assert np.allclose(M @ M.conj().T, np.eye(R.dim))
                exps = local_exponents(R, g)
                assert [float(e) for e in exps] == pytest.approx(numeric_exponents(M), abs=1e-7)
                assert exponents_to_character_value(exps) == R.character(g)
                assert abs(np.trace(M) - R.character(g).to_complex()) < 1e-9
            for a, b in itertools.product(range(G.n), repeat=2):
                if b in G.generators:
                    assert np.allclose(R.dense(G.mul[a][b]), R.dense(a) @ R.dense(b))


def test_linear_characters_are_homomorphisms():
    for name in ("S4", "D6", "Z3:Z4"):
        G = corpus_groups()[name]
        for H in G.all_subgroups():
            chars = linear_characters(H)
            assert chars[0].is_trivial()
            assert len(set(chars)) == len(chars)
            for chi in chars:
                for a, b in itertools.product(H.members, repeat=2):
                    assert chi(G.mul[a][b]) == (chi(a) + chi(b)) % 1
    # S4 has two linear characters, Z3:Z4 has four
    assert len(linear_characters(corpus_groups()["S4"].whole)) == 2
    assert len(linear_characters(corpus_groups()["Z3:Z4"].whole)) == 4


def test_character1d_errors():
    with pytest.raises(NotWellDefined):
        Character1D(A3, {CYCLE: Fraction(1, 2)})
    with pytest.raises(InputError):
        Character1D(S3.whole, {TRANSP: 0})
    with pytest.raises(InputError):
        Character1D(A3, {TRANSP: 0, CYCLE: 0})


def test_decompose_negative_multiplicity():
    irr = monomial_irreducibles(S3)
    diff = regular_rep(S3).character + trivial_rep(S3).character * -2
    with pytest.raises(NegativeMultiplicity):
        decompose(diff, irr)


@pytest.mark.parametrize("name, dims", [("S3", [1, 1, 2]), ("S4", [1, 1, 2, 3, 3]), ("A4", [1, 1, 1, 3]),
                                        ("D4", [1, 1, 1, 1, 2]), ("Z7:Z3", [1, 1, 1, 3, 3])])
def test_monomial_irreducibles(name, dims):
    G = corpus_groups()[name]
    irr = monomial_irreducibles(G)
    assert sorted(r.dim for r in irr) == dims
    assert len(irr) == len(G.conjugacy_classes)
    assert decompose(regular_rep(G), irr) == tuple(r.dim for r in irr)


def sl23():
    vecs = [(a, b) for a in range(3) for b in range(3) if (a, b) != (0, 0)]
    def perm(m):
        return [vecs.index(((m[0][0] * a + m[0][1] * b) % 3, (m[1][0] * a + m[1][1] * b) % 3)) for a, b in vecs]
    return group_from_permutations(8, [perm([[1, 1], [0, 1]]), perm([[0, 2], [1, 0]])])


def test_non_monomial_group_is_reported():
    G = sl23()
    assert G.n == 24
    with pytest.raises(IncompleteInput):
        monomial_irreducibles(G)


def test_little_groups_s3():
    G = split_groups()["Z3:Z2"]
    data = little_group_orbits(G)
    assert sorted(map(len, data.orbits)) == [1, 2]
    irr = little_groups_irreducibles(G)
    assert sorted(r.dim for r in irr) == [1, 1, 2]


def test_little_groups_trivial_complement_and_trivial_action():
    irr = little_groups_irreducibles(split_groups()["Z5:1"])
    assert [r.dim for r in irr] == [1] * 5
    G = split_groups()["Z3xZ2"]
    irr = little_groups_irreducibles(G)
    assert len(irr) == 3 * 2 and all(r.dim == 1 for r in irr)


def test_little_groups_incomplete_input():
    G = split_groups()["Z3:Z2"]

    def only_trivial(stab):
        S, _ = stab.as_group()
        return [induce(S, S.whole, trivial_character(S.whole))]

    with pytest.raises(IncompleteInput):
        little_groups_irreducibles(G, only_trivial)


def test_little_groups_on_larger_module():
    A = fp_group(2, [[2, 0], [0, 2]])
    C3 = cyclic_group(3)
    G = semidirect_product(A, C3, [[[0, 1], [1, 1]]])
    irr = little_groups_irreducibles(G)
    assert sorted(r.dim for r in irr) == [1, 1, 1, 3]


def test_direct_sum_character():
    R = direct_sum([V(), sign()])
    assert ints(R.character) == (3, -1, 0)
    assert character(R) == V().character + sign().character
