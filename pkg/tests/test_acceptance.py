"""The eight acceptance criteria, each with its tolerance and time budget.

Every test prints one ``ACCEPTANCE <n> PASS|FAIL`` line, visible even when
pytest captures output.
"""
import random
import time
from itertools import combinations_with_replacement

import pytest

from parorb.abgroup import fp_group
from parorb.corpus import corpus_groups, covers_for, mackey_groups, split_groups
from parorb.orbifold import OrbifoldCurve, pic_zero, pic_zero_torsion, picard_group, polygonal_presentation, \
    quotient_by_f
from parorb.parabolic import h0_split, rh_realize, splitting_type, tannakian_weights
from parorb.reptheory import (character, direct_sum, induce, inner_product, linear_characters,
                              little_groups_irreducibles, mackey_decompose, monomial_irreducibles, tensor)
from parorb.worked_example import run_s3_example


@pytest.fixture
def announce(capsys):
    def _announce(number, title, ok, elapsed, limit, detail=""):
        status = "PASS" if ok and elapsed < limit else "FAIL"
        line = f"ACCEPTANCE {number} {status}: {title} ({elapsed:.3f}s, limit {limit}s)"
        if detail:
            line += f" {detail}"
        with capsys.disabled():
            print("\n" + line)
        return status == "PASS"
    return _announce


def random_orbifold(rng, max_points=4, max_r=6):
    n = rng.randint(0, max_points)
    return OrbifoldCurve(0, tuple((f"p{i}", rng.randint(1, max_r)) for i in range(n)))


def test_acceptance_1_picard_exact_sequence(announce):
    rng = random.Random(20240601)
    orbs = [random_orbifold(rng) for _ in range(200)]
    t0 = time.perf_counter()
    bad = []
    for orb in orbs:
        quo = quotient_by_f(picard_group(orb))
        # invariant factors of the group  prod Z/r_i  (r_i > 1)
        rs = [r for r in orb.orders if r > 1]
        target = fp_group(len(rs), [[r if i == j else 0 for j in range(len(rs))] for i, r in enumerate(rs)])
        if quo.invariant_factors != target.invariant_factors or quo.order != (target.order if rs else 1):
            bad.append(orb)
    elapsed = time.perf_counter() - t0
    assert announce(1, "Pic/<f> = prod Z/r_i on 200 random orbifolds", not bad, elapsed, 1.0), bad[:3]


def test_acceptance_2_cyclic_of_order_3(announce):
    t0 = time.perf_counter()
    orb = OrbifoldCurve(0, (("1", 3), ("-1", 3)))
    T, _ = pic_zero_torsion(orb, 3)
    K, _ = pic_zero(picard_group(orb))
    elapsed = time.perf_counter() - t0
    ok = T.invariant_factors == (3,) and K.invariant_factors == (3,) and K.free_rank == 0
    assert announce(2, "Pic^0 torsion of (1,-1; 3,3) is Z/3", ok, elapsed, 0.1, T.describe())


def test_acceptance_3_s3_end_to_end(announce):
    t0 = time.perf_counter()
    res = run_s3_example()
    elapsed = time.perf_counter() - t0
    b = res.results.get("bundle", {})
    ok = (res.ok
          and b.get("rank") == 2
          and res.results.get("inner_product") == 1
          and b.get("weights") == {"0": [0, "1/2"], "1": [0, "1/2"], "inf": ["1/3", "2/3"]}
          and res.results["group"] == {"order": 6, "abelian": False, "isomorphic_to_S3": True}
          and (res.results["finite_relation"]["P"], res.results["finite_relation"]["Q"]) == ("x^3", "x^2 + 2x"))
    failed = [c.name for c in res.checks if not c.passed]
    assert announce(3, "rank-2 S3 bundle, irreducible, degree 0, weights, x^3 = x^2 + 2x", ok, elapsed, 1.0,
                    f"failed checks: {failed}" if failed else ""), failed


def test_acceptance_4_mackey_soundness(announce):
    t0 = time.perf_counter()
    pairs = 0
    bad = []
    for name, G in mackey_groups().items():
        atoms = []
        for H in G.all_subgroups():
            for chi in linear_characters(H):
                R = induce(G, H, chi)
                atoms.append((H, chi, R, character(R)))
        for i, (H1, c1, R1, x1) in enumerate(atoms):
            for H2, c2, R2, x2 in atoms[i:]:
                summands = mackey_decompose(G, H1, c1, H2, c2)
                lhs = character(tensor(R1, R2))
                rhs = character(direct_sum([induce(G, s.subgroup, s.chi) for s in summands]))
                pairs += 1
                if lhs != rhs or lhs != x1 * x2:
                    bad.append((name, H1, c1, H2, c2))
    elapsed = time.perf_counter() - t0
    assert announce(4, f"Mackey character identity on {pairs} character pairs", not bad, elapsed, 60.0), bad[:3]


def test_acceptance_5_splitting_solver(announce):
    t0 = time.perf_counter()
    bad = []
    for d in range(1, 7):
        for k in range(-12, 13):
            lo, hi = k // d - 1, -((-k) // d) + 1
            window = range(-(d + abs(k)), d + abs(k) + 1)
            sols = [c for c in combinations_with_replacement(range(lo, hi + 1), d)
                    if sum(c) == k + 1 - d and all(h0_split(c, m) == max(k + d * m + 1, 0) for m in window)]
            got = splitting_type(d, k)
            if len(sols) != 1 or tuple(sorted(sols[0], reverse=True)) != got:
                bad.append((d, k, got, sols))
    elapsed = time.perf_counter() - t0
    assert announce(5, "greedy splitting = unique brute-force solution, d <= 6, |k| <= 12", not bad, elapsed,
                    5.0), bad[:3]


def test_acceptance_6_dual_path_weights(announce):
    t0 = time.perf_counter()
    realized = 0
    bad = []
    for name, G in corpus_groups().items():
        if G.n == 1:
            continue
        irr = monomial_irreducibles(G)
        for cover in covers_for(G, 4):
            for R in irr:
                H = R.provenance.subgroup
                sub = cover.with_subgroup(H)
                if sub.geometry.genus_upstairs != 0:
                    continue
                E = rh_realize(cover, R)    # raises PathMismatch on disagreement
                realized += 1
                if E.weights != tannakian_weights(cover, R):
                    bad.append((name, cover.monodromy.tuple, R))
    elapsed = time.perf_counter() - t0
    assert announce(6, f"local exponents = pushforward weights on {realized} realizations", not bad and realized,
                    elapsed, 120.0), bad[:3]


def test_acceptance_7_kummer_consistency(announce):
    rng = random.Random(7)
    orbs = [random_orbifold(rng) for _ in range(50)]
    t0 = time.perf_counter()
    bad = []
    for orb in orbs:
        pic = picard_group(orb)
        pres = polygonal_presentation(orb)
        for n in (2, 3, 4, 6):
            T, _ = pic_zero_torsion(orb, n, pic)
            if T.order != pres.abelianization_mod(n).order:
                bad.append((orb, n))
    elapsed = time.perf_counter() - t0
    assert announce(7, "|Pic^0[n]| = |polygonal abelianization (x) Z/n| on 50 orbifolds", not bad, elapsed,
                    5.0), bad[:3]


def test_acceptance_8_little_groups(announce):
    t0 = time.perf_counter()
    bad = []
    for name, G in split_groups().items():
        irr = little_groups_irreducibles(G)
        chars = [r.character for r in irr]
        complete = sum(r.dim ** 2 for r in irr) == G.n and len(irr) == len(G.conjugacy_classes)
        ortho = all(inner_product(a, b) == (i == j) for i, a in enumerate(chars) for j, b in enumerate(chars))
        if not (complete and ortho):
            bad.append(name)
    elapsed = time.perf_counter() - t0
    assert announce(8, "little-groups irreducibles complete and orthonormal", not bad, elapsed, 10.0), bad
