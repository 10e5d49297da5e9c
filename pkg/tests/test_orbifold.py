import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from parorb.errors import InputError, UnsupportedGenus
from parorb.orbifold import (OrbifoldCurve, canonical_form, degree, orbifold, pic_zero, pic_zero_torsion,
                             picard_group, polygonal_presentation, quotient_by_f)

orbifolds = st.lists(st.integers(1, 6), max_size=4).map(
    lambda rs: OrbifoldCurve(0, tuple((f"p{i}", r) for i, r in enumerate(rs))))


def test_no_points_gives_integers():
    pic = picard_group(orbifold())
    assert pic.group.describe() == "Z"
    assert degree(pic, pic.f) == 1
    T, _ = pic_zero_torsion(orbifold(), 5)
    assert T.order == 1


@pytest.mark.parametrize("pts, want", [
    ((("1", 3), ("-1", 3)), "Z + Z/3"),
    ((("0", 2), ("1", 2)), "Z + Z/2"),
    ((("0", 2), ("1", 3)), "Z"),
    ((("0", 2), ("1", 2), ("inf", 3)), "Z + Z/2"),
])
def test_picard_groups(pts, want):
    assert picard_group(orbifold(*pts)).group.describe() == want


def test_three_torsion_generated_by_difference():
    orb = orbifold(("1", 3), ("-1", 3))
    pic = picard_group(orb)
    T, inc = pic_zero_torsion(orb, 3, pic)
    assert T.invariant_factors == (3,)
    image = {inc(g) for g in T.elements()}
    diff = pic.N("1") - pic.N("-1")
    assert image == {k * diff for k in range(3)}
    assert degree(pic, diff) == 0


def test_two_torsion():
    T, _ = pic_zero_torsion(orbifold(("0", 2), ("1", 2)), 2)
    assert T.invariant_factors == (2,)


def test_degrees():
    pic = picard_group(orbifold(("1", 3), ("-1", 3)))
    assert degree(pic, pic.group.zero) == 0
    assert degree(pic, pic.N("1")) == Fraction(1, 3)
    assert degree(pic, pic.N("1") - pic.N("-1")) == 0
    assert degree(pic, 3 * pic.N("1")) == 1


def test_canonical_form_examples():
    pic = picard_group(orbifold(("a", 3), ("b", 4)))
    assert canonical_form(pic, pic.f) == (1, (0, 0))
    assert canonical_form(pic, -pic.N("a")) == (-1, (2, 0))
    pic2 = picard_group(orbifold(("x", 2), ("y", 2)))
    assert canonical_form(pic2, pic2.N("x") + pic2.N("y")) == (0, (1, 1))


@settings(max_examples=80, deadline=None)
@given(orbifolds, st.data())
def test_canonical_form_is_a_bijection(orb, data):
    pic = picard_group(orb)
    d = data.draw(st.integers(-5, 5))
    a = tuple(data.draw(st.integers(0, r - 1)) for r in orb.orders)
    c = pic.make_class(d, a)
    assert canonical_form(pic, c) == (d, a)
    assert degree(pic, c) == d + sum(Fraction(ai, r) for ai, r in zip(a, orb.orders))


@settings(max_examples=80, deadline=None)
@given(orbifolds, st.lists(st.integers(-7, 7), min_size=5, max_size=5))
def test_degree_is_linear_and_kills_relations(orb, coeffs):
    pic = picard_group(orb)
    n = len(orb.points)
    x = coeffs[: n + 1] + [0] * (n + 1 - len(coeffs[: n + 1]))
    c = pic.group.element(x)
    assert degree(pic, c) == sum(Fraction(v) * w for v, w in zip(x, pic.degree_map))
    for rel in pic.group.relations:
        assert pic.group.element(rel).is_zero()


def brute_pic0_torsion(orb, n):
    """Count canonical classes of degree 0 killed by n (all of them live in d in a bounded window)."""
    pic = picard_group(orb)
    count = 0
    for a in itertools.product(*(range(r) for r in orb.orders)):
        frac = sum(Fraction(ai, r) for ai, r in zip(a, orb.orders))
        if frac.denominator != 1:
            continue
        c = pic.make_class(-int(frac), a)
        if (n * c).is_zero():
            count += 1
    return count


def test_pic0_torsion_against_enumeration():
    rng = random.Random(11)
    for _ in range(40):
        orb = OrbifoldCurve(0, tuple((f"p{i}", rng.randint(1, 6)) for i in range(rng.randint(0, 4))))
        for n in (2, 3, 4, 6):
            T, inc = pic_zero_torsion(orb, n)
            assert T.order == brute_pic0_torsion(orb, n)
        K, _ = pic_zero(picard_group(orb))
        assert K.is_finite


def test_quotient_by_f_order():
    orb = orbifold(("a", 2), ("b", 3), ("c", 4))
    assert quotient_by_f(picard_group(orb)).order == 24


def test_polygonal_presentation():
    pres = polygonal_presentation(orbifold(("0", 2), ("1", 2), ("inf", 3)))
    assert pres.relations_text() == ["x[0]^2", "x[1]^2", "x[inf]^3", "x[0]x[1]x[inf]"]
    assert polygonal_presentation(orbifold(("1", 3), ("-1", 3))).abelianization().invariant_factors == (3,)
    assert polygonal_presentation(orbifold(("p", 5))).abelianization().order == 1


def test_errors():
    with pytest.raises(UnsupportedGenus):
        picard_group(OrbifoldCurve(1, ()))
    with pytest.raises(UnsupportedGenus):
        pic_zero_torsion(OrbifoldCurve(2, (("a", 2),)), 2)
    with pytest.raises(InputError):
        orbifold(("a", 2), ("a", 3))
    with pytest.raises(InputError):
        orbifold(("a", 0))
    with pytest.raises(InputError):
        picard_group(orbifold(("a", 2))).N("zzz")


def test_json_round_trip():
    orb = orbifold(("0", 2), ("inf", 3))
    assert OrbifoldCurve.from_json(orb.to_json()) == orb
