"""Parabolic bundle data on genus-0 orbifold lines.

A bundle is recorded by its rank, the splitting type of the underlying
vector bundle and one weight multiset per marked point.  Line bundles come
from Picard classes; higher rank data arises as pushforwards along tame
covers, equivalently as monomial representations of the Galois group.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .abgroup import GroupElement, _left_kernel, qz
from .covers import TameCover, local_stabilizers
from .errors import (ClosureMismatch, DenominatorMismatch, InputError, NonIntegral, OrbifoldMismatch,
                     PathMismatch, SearchExhausted, UnsupportedGenus, ensure)
from .orbifold import OrbifoldCurve, PicGroup, canonical_form, picard_group
from .reptheory import (Character, Character1D, Induced, MonomialRep, SumOf, character, decompose, induce,
                        local_exponents, mackey_decompose, monomial_irreducibles)


def frac_str(v: Fraction) -> str | int:
    """Rationals as ``"p/q"``; integers stay integers."""
    v = Fraction(v)
    return int(v) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def parse_frac(v) -> Fraction:
    try:
        return Fraction(v) if not isinstance(v, float) else Fraction(str(v))
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise InputError(f"not a rational number: {v!r}") from exc


# ---------------------------------------------------------------------------
@dataclass(frozen=True, eq=False)
class ParabolicLineBundle:
    pic: PicGroup
    pic_class: GroupElement

    def __post_init__(self):
        if self.pic_class.parent is not self.pic.group:
            raise InputError("class does not belong to this Picard group")

    @property
    def orbifold(self) -> OrbifoldCurve:
        return self.pic.orbifold

    @property
    def canonical(self) -> tuple[int, tuple[int, ...]]:
        return canonical_form(self.pic, self.pic_class)


def line_bundle(orb_or_pic, d: int, a: Sequence[int]) -> ParabolicLineBundle:
    """The line bundle ``d f + sum a_i N_i``."""
    pic = orb_or_pic if isinstance(orb_or_pic, PicGroup) else picard_group(orb_or_pic)
    return ParabolicLineBundle(pic, pic.make_class(d, a))


@dataclass(frozen=True)
class ParabolicBundleData:
    """Rank, splitting type (non-increasing) and sorted weights per marked point.

    Two data are equal exactly when all three pieces agree, which is the
    working notion of isomorphism here.
    """

    orbifold: OrbifoldCurve
    rank: int
    splitting: tuple[int, ...]
    weights: tuple[tuple[Fraction, ...], ...] = field(default=())

    def __post_init__(self):
        orb = self.orbifold
        split = tuple(sorted((int(a) for a in self.splitting), reverse=True))
        if self.rank < 1 or len(split) != self.rank:
            raise InputError(f"splitting {list(split)} does not have {self.rank} entries")
        ws = self.weights or tuple((Fraction(0),) * self.rank for _ in orb.points)
        if len(ws) != len(orb.points):
            raise InputError("one weight multiset per marked point required")
        norm = []
        for (label, r), w in zip(orb.points, ws):
            w = tuple(sorted(parse_frac(x) for x in w))
            if len(w) != self.rank:
                raise InputError(f"weights at {label!r} have {len(w)} entries, expected {self.rank}")
            for x in w:
                if not 0 <= x < 1:
                    raise InputError(f"weight {x} at {label!r} is outside [0, 1)")
                if r % x.denominator:
                    raise DenominatorMismatch(f"weight {x} at {label!r} has denominator not dividing {r}")
            norm.append(w)
        object.__setattr__(self, "splitting", split)
        object.__setattr__(self, "weights", tuple(norm))

    def weights_at(self, label: str) -> tuple[Fraction, ...]:
        return self.weights[self.orbifold.index(label)]

    @property
    def degree(self) -> int:
        return sum(self.splitting)

    def __add__(self, other: ParabolicBundleData) -> ParabolicBundleData:
        return direct_sum_data([self, other])

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "splitting": list(self.splitting),
            "weights": {lbl: [frac_str(x) for x in w] for lbl, w in zip(self.orbifold.labels, self.weights)},
        }

    @classmethod
    def from_json(cls, orb: OrbifoldCurve, data: Mapping) -> ParabolicBundleData:
        try:
            w = data.get("weights", {})
            weights = tuple(tuple(w[lbl]) if lbl in w else (0,) * int(data["rank"]) for lbl in orb.labels)
            return cls(orb, int(data["rank"]), tuple(data["splitting"]), weights)
        except (KeyError, TypeError) as exc:
            raise InputError(f"bad bundle description: {exc}") from exc


def bundle_data(orb: OrbifoldCurve, splitting: Sequence[int], weights: Mapping[str, Sequence] | Sequence = ()):
    if isinstance(weights, Mapping):
        rank = len(splitting)
        weights = tuple(tuple(weights.get(lbl, (0,) * rank)) for lbl in orb.labels)
    return ParabolicBundleData(orb, len(splitting), tuple(splitting), tuple(weights))


def direct_sum_data(parts: Sequence[ParabolicBundleData]) -> ParabolicBundleData:
    parts = list(parts)
    orb = parts[0].orbifold
    if any(p.orbifold != orb for p in parts):
        raise OrbifoldMismatch("summands live on different orbifolds")
    return ParabolicBundleData(
        orb, sum(p.rank for p in parts), tuple(a for p in parts for a in p.splitting),
        tuple(tuple(x for p in parts for x in p.weights[i]) for i in range(len(orb.points))))


# ---------------------------------------------------------------------------
def line_bundle_data(L: ParabolicLineBundle) -> ParabolicBundleData:
    d, a = L.canonical
    orb = L.orbifold
    return ParabolicBundleData(orb, 1, (d,), tuple((Fraction(ai, r),) for ai, r in zip(a, orb.orders)))


def par_degree(E: ParabolicBundleData) -> Fraction:
    return sum((Fraction(a) for a in E.splitting), Fraction(0)) + sum((x for w in E.weights for x in w), Fraction(0))


def shift(E: ParabolicBundleData, l: Sequence | Mapping) -> ParabolicBundleData:
    """Add ``l_i`` to every weight at point ``i`` and move integer carries into the splitting.

    At each point the weights, taken in non-decreasing order, are paired with
    the splitting entries in non-increasing order; each weight's carry goes to
    its partner.
    """
    orb = E.orbifold
    if isinstance(l, Mapping):
        l = [l.get(lbl, 0) for lbl in orb.labels]
    l = [parse_frac(x) for x in l]
    if len(l) != len(orb.points):
        raise InputError("one shift per marked point required")
    split = list(E.splitting)
    new_w = []
    for (label, r), li, ws in zip(orb.points, l, E.weights):
        if r % li.denominator:
            raise DenominatorMismatch(f"shift {li} at {label!r} has denominator not dividing {r}")
        out = []
        for k, w in enumerate(ws):
            total = w + li
            carry = math.floor(total)
            split[k] += carry
            out.append(total - carry)
        new_w.append(tuple(out))
        split.sort(reverse=True)
    res = ParabolicBundleData(orb, E.rank, tuple(split), tuple(new_w))
    ensure(par_degree(res) == par_degree(E) + E.rank * sum(l, Fraction(0)), "shift changes degree by rank * sum l")
    return res


@dataclass(frozen=True)
class TensorWeights:
    rank: int
    weights: tuple[tuple[Fraction, ...], ...]
    degree: int          # underlying degree forced by additivity of parabolic degree


def tensor_weights(E: ParabolicBundleData, F: ParabolicBundleData) -> TensorWeights:
    """Weight multisets of ``E (x) F``: all pairwise sums modulo one."""
    if E.orbifold != F.orbifold:
        raise OrbifoldMismatch("tensor factors live on different orbifolds")
    ws = tuple(tuple(sorted(qz(a + b) for a in wa for b in wb)) for wa, wb in zip(E.weights, F.weights))
    target = F.rank * par_degree(E) + E.rank * par_degree(F)
    deg = target - sum((x for w in ws for x in w), Fraction(0))
    ensure(deg.denominator == 1, "tensor degree is not an integer")
    return TensorWeights(E.rank * F.rank, ws, int(deg))


def splitting_type(d: int, k: int) -> tuple[int, ...]:
    """Splitting of the pushforward of ``O(k)`` along a degree-``d`` map of the line.

    ``h0(m) = max(k + d m + 1, 0)`` has first difference ``#{a_j >= -m}``;
    entries are read off from the top value downward.
    """
    if d < 1:
        raise InputError("cover degree must be positive")

    def h0(m):
        return max(k + d * m + 1, 0)

    def at_least(t):
        return h0(-t) - h0(-t - 1)

    out: list[int] = []
    t = -((-k) // d) + 1     # above every entry
    while len(out) < d:
        count = at_least(t) - len(out)
        out.extend([t] * count)
        t -= 1
    ensure(len(out) == d and sum(out) == k + 1 - d, "splitting type Euler characteristic")
    return tuple(sorted(out, reverse=True))


def h0_split(split: Sequence[int], m: int) -> int:
    return sum(max(a + m + 1, 0) for a in split)


# ---------------------------------------------------------------------------
def _require_genus_zero(cover: TameCover):
    cover.base.require_genus_zero()
    g = cover.geometry.genus_upstairs
    if g != 0:
        raise UnsupportedGenus(f"upstairs curve has genus {g}; only genus 0 is supported")


def eigenvalue_weights(cover: TameCover, L: ParabolicLineBundle) -> tuple[tuple[Fraction, ...], ...]:
    """Weights at each base point from the orbit formula ``(w_j + m) / ell_j``."""
    geo = cover.geometry
    _, a = L.canonical
    out = []
    for i in range(len(cover.base.points)):
        ws = []
        for j, p in enumerate(geo.points):
            if p.base_index == i:
                w = Fraction(a[j], p.s)
                ws.extend(qz((w + m) / p.ell) for m in range(p.ell))
        out.append(tuple(sorted(ws)))
    return tuple(out)


def piece_degrees(cover: TameCover, L: ParabolicLineBundle, i: int) -> list[int]:
    """Degrees of the pushed-forward pieces at steps ``k / r_i`` for ``k = 0..r_i``."""
    geo = cover.geometry
    d, a = L.canonical
    n = cover.degree
    r = cover.base.orders[i]
    out = []
    for k in range(r + 1):
        e = d - sum(-((a[j] - k) // p.s) for j, p in enumerate(geo.points) if p.base_index == i)
        out.append(e + 1 - n)
    return out


def degree_drop_weights(cover: TameCover, L: ParabolicLineBundle) -> tuple[tuple[Fraction, ...], ...]:
    out = []
    for i, r in enumerate(cover.base.orders):
        deg = piece_degrees(cover, L, i)
        ws = []
        for k in range(r):
            mult = deg[k] - deg[k + 1]
            ensure(mult >= 0, "pieces must shrink")
            ws.extend([Fraction(k, r)] * mult)
        out.append(tuple(ws))
    return tuple(out)


def pushforward(cover: TameCover, L: ParabolicLineBundle) -> ParabolicBundleData:
    """Pushforward of a parabolic line bundle on the upstairs orbifold to the base.

    Weights are computed twice, from the orbit eigenvalue formula and from
    the degree drops of the pieces, and must coincide.
    """
    _require_genus_zero(cover)
    if L.orbifold != cover.geometry.upstairs:
        raise OrbifoldMismatch("line bundle does not live on the upstairs orbifold of this cover")
    w_eig = eigenvalue_weights(cover, L)
    w_drop = degree_drop_weights(cover, L)
    ensure(w_eig == w_drop, f"pushforward weights disagree: {w_eig} vs {w_drop}")
    d, _ = L.canonical
    split = splitting_type(cover.degree, d)
    if cover.base.points:
        ensure(sum(split) == piece_degrees(cover, L, 0)[0], "splitting matches the weight-zero piece")
    E = ParabolicBundleData(cover.base, cover.degree, split, w_eig)
    # on genus 0 Riemann-Hurwitz makes the orbit averages cancel 1 - n exactly
    ensure(par_degree(E) == par_degree(line_bundle_data(L)), "parabolic degree is preserved")
    return E


# ---------------------------------------------------------------------------
def tannakian_weights(cover: TameCover, rep: MonomialRep) -> tuple[tuple[Fraction, ...], ...]:
    if rep.group is not cover.group:
        raise InputError("representation is not of the cover's monodromy group")
    return tuple(local_exponents(rep, g) for g in cover.monodromy.tuple)


def character_line_bundle(cover: TameCover, chi: Character1D) -> ParabolicLineBundle:
    """Line bundle upstairs matching ``chi`` on ``H``: weight ``chi(h_j)`` at each upstairs point.

    ``h_j`` is the local stabilizer; the degree is fixed by parabolic degree zero.
    """
    if chi.subgroup != cover.H:
        raise InputError("character must live on the subgroup defining the cover")
    _require_genus_zero(cover)
    geo = cover.geometry
    es = [chi(h) for h in local_stabilizers(cover)]
    a = []
    for e, p in zip(es, geo.points):
        x = e * p.s
        ensure(x.denominator == 1, "local character value has denominator dividing s")
        a.append(int(x))
    total = sum(es, Fraction(0))
    if total.denominator != 1:
        raise NonIntegral(f"sum of local values {total} is not an integer")
    return line_bundle(geo.upstairs, -int(total), a)


def rh_realize(cover: TameCover, rep: MonomialRep) -> ParabolicBundleData:
    """Parabolic bundle attached to a monomial representation of the monodromy group.

    ``rep`` must be ``Ind_K chi`` (or a direct sum of such); the cover is
    replaced by its intermediate cover for ``K``.  The weights from the local
    eigenvalues must agree with those of the pushforward.
    """
    prov = rep.provenance
    if isinstance(prov, SumOf):
        return direct_sum_data([rh_realize(cover, part) for part in prov.parts])
    if not isinstance(prov, Induced):
        raise InputError("representation must be induced from a character (use mackey_tensor for tensors)")
    if rep.group is not cover.group:
        raise InputError("representation is not of the cover's monodromy group")
    sub = cover if prov.subgroup == cover.H else cover.with_subgroup(prov.subgroup)
    L = character_line_bundle(sub, prov.chi)
    E = pushforward(sub, L)
    tw = tannakian_weights(cover, rep)
    if tw != E.weights:
        raise PathMismatch(f"local exponents {tw} differ from pushforward weights {E.weights}")
    ensure(par_degree(E) == 0, "realized bundle has parabolic degree zero")
    return E


# ---------------------------------------------------------------------------
@dataclass(frozen=True, eq=False)
class Atom:
    """``p_* L_chi`` for the cover with subgroup ``chi.subgroup``."""

    cover: TameCover
    chi: Character1D

    def __post_init__(self):
        if self.chi.subgroup != self.cover.H:
            raise InputError("atom character must live on the cover's subgroup")

    @property
    def rank(self) -> int:
        return self.cover.degree

    def rep(self) -> MonomialRep:
        return induce(self.cover.group, self.cover.H, self.chi)

    def realize(self) -> ParabolicBundleData:
        return rh_realize(self.cover, self.rep())

    def key(self):
        return (self.cover.H.sorted_members, tuple(self.chi.items()))


def atom(cover: TameCover, chi: Character1D) -> Atom:
    if chi.subgroup != cover.H:
        cover = cover.with_subgroup(chi.subgroup)
    return Atom(cover, chi)


@dataclass(frozen=True, eq=False)
class AtomExpression:
    terms: tuple[tuple[Atom, int], ...]

    def __post_init__(self):
        if not self.terms:
            raise InputError("empty atom expression")
        m0 = self.terms[0][0].cover.monodromy
        for a, c in self.terms:
            if c < 0:
                raise InputError("atom multiplicities must be non-negative")
            if not _same_closure(a.cover.monodromy, m0):
                raise ClosureMismatch("atoms have different Galois closures")

    @property
    def group(self):
        return self.terms[0][0].cover.group

    @property
    def rank(self) -> int:
        return sum(a.rank * c for a, c in self.terms)

    def character(self) -> Character:
        it = iter(self.terms)
        a, c = next(it)
        total = character(a.rep()) * c
        for a, c in it:
            total = total + character(a.rep()) * c
        return total

    def realize(self) -> ParabolicBundleData:
        parts = [a.realize() for a, c in self.terms for _ in range(c)]
        return direct_sum_data(parts)

    def weights(self) -> tuple[tuple[Fraction, ...], ...]:
        """Local exponents of the underlying representation; needs no genus condition."""
        cover = self.terms[0][0].cover
        out = [[] for _ in cover.monodromy.tuple]
        for a, c in self.terms:
            for i, w in enumerate(tannakian_weights(a.cover, a.rep())):
                out[i].extend(list(w) * c)
        return tuple(tuple(sorted(w)) for w in out)


def _same_closure(m1, m2) -> bool:
    return m1.group is m2.group and m1.tuple == m2.tuple and m1.base == m2.base


def mackey_tensor(a1: Atom, a2: Atom) -> AtomExpression:
    """Tensor product of two atoms as a sum of atoms over double cosets."""
    m1, m2 = a1.cover.monodromy, a2.cover.monodromy
    if not _same_closure(m1, m2):
        raise ClosureMismatch("atoms have different Galois closures")
    G = m1.group
    merged: dict = {}
    order = []
    for s in mackey_decompose(G, a1.cover.H, a1.chi, a2.cover.H, a2.chi):
        at = Atom(a1.cover.with_subgroup(s.subgroup), s.chi)
        k = at.key()
        if k not in merged:
            merged[k] = [at, 0]
            order.append(k)
        merged[k][1] += 1
    expr = AtomExpression(tuple((merged[k][0], merged[k][1]) for k in order))
    ensure(expr.rank == a1.rank * a2.rank, "Mackey rank bookkeeping")
    all_genus0 = all(a.cover.geometry.genus_upstairs == 0 for a in (a1, a2)) and \
        all(a.cover.geometry.genus_upstairs == 0 for a, _ in expr.terms)
    if all_genus0:
        tw = tensor_weights(a1.realize(), a2.realize())
        E = expr.realize()
        ensure(tw.rank == E.rank and tw.weights == E.weights, "Mackey weights differ from tensor weights")
    else:
        w1 = AtomExpression(((a1, 1),)).weights()
        w2 = AtomExpression(((a2, 1),)).weights()
        tw = tuple(tuple(sorted(qz(x + y) for x in p for y in q)) for p, q in zip(w1, w2))
        ensure(tw == expr.weights(), "Mackey weights differ from tensor weights")
    return expr


# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class FiniteRelation:
    """``P(E) = Q(E)`` with coefficient tuples indexed by power."""

    P: tuple[int, ...]
    Q: tuple[int, ...]
    power_multiplicities: tuple[tuple[int, ...], ...]   # decomposition of E^k, k = 0..K searched
    closure: tuple[int, ...]                            # irreducibles met in E^k, 1 <= k <= searched
    closure_sizes: tuple[int, ...]

    def __str__(self):
        return f"{poly_str(self.P)} = {poly_str(self.Q)}"

    def to_json(self) -> dict:
        return {"P": poly_str(self.P), "Q": poly_str(self.Q), "P_coeffs": list(self.P), "Q_coeffs": list(self.Q),
                "closure": list(self.closure), "closure_sizes": list(self.closure_sizes)}


def poly_str(c: Sequence[int]) -> str:
    terms = []
    for k in range(len(c) - 1, -1, -1):
        if not c[k]:
            continue
        mono = "1" if k == 0 else ("x" if k == 1 else f"x^{k}")
        terms.append(mono if c[k] == 1 else (str(c[k]) if k == 0 else f"{c[k]}{mono}"))
    return " + ".join(terms) if terms else "0"


def _lex_first_combination(target, vecs):
    """Lexicographically least non-negative integer ``q`` with ``sum q_j vecs_j = target``."""
    n = len(vecs)

    def rec(j, rem):
        if j == n:
            return [] if not any(rem) else None
        v = vecs[j]
        q = 0
        while all(r >= 0 for r in rem):
            sub = rec(j + 1, rem)
            if sub is not None:
                return [q] + sub
            if not any(v):
                break
            rem = [r - x for r, x in zip(rem, v)]
            q += 1
        return None

    return rec(0, list(target))


def _as_character(E) -> Character:
    if isinstance(E, Character):
        return E
    if isinstance(E, MonomialRep):
        return E.character
    if isinstance(E, Atom):
        return character(E.rep())
    if isinstance(E, AtomExpression):
        return E.character()
    raise InputError(f"cannot read a representation from {type(E).__name__}")


def find_finite_relation(E, K: int = 6, irreducibles: Sequence[MonomialRep] | None = None) -> FiniteRelation:
    """First relation ``P(E) = Q(E)`` of degree ``k`` with ``2 <= k <= K``.

    At each ``k`` the monic form ``x^k = Q(x)`` is tried first, with ``Q``'s
    coefficient vector in lexicographic order.  Failing that, the first linear
    dependence among the multiplicity vectors of ``E^0..E^k`` is split into
    its positive and negative parts.  Both sides are compared through
    multiplicity vectors against a complete list of irreducibles.
    """
    chi = _as_character(E)
    G = chi.group
    irr = list(irreducibles) if irreducibles is not None else monomial_irreducibles(G)
    triv = irr[0].character
    ensure(all(v == 1 for v in triv.class_values), "first irreducible must be trivial")
    powers = [triv]
    vecs = [decompose(triv, irr)]
    closure: set[int] = set()
    sizes = []
    for k in range(1, K + 1):
        powers.append(powers[-1] * chi)
        v = decompose(powers[-1], irr)
        vecs.append(v)
        closure.update(i for i, m in enumerate(v) if m)
        sizes.append(len(closure))
        if k < 2:
            continue
        q = _lex_first_combination(v, vecs[:k])
        if q is not None:
            P, Q = tuple([0] * k + [1]), tuple(q) + (0,)
        else:
            dep = _dependence(vecs, len(irr))
            if dep is None:
                continue
            P = tuple(max(c, 0) for c in dep)
            Q = tuple(max(-c, 0) for c in dep)
        ensure(_evaluate(P, powers) == _evaluate(Q, powers), "relation fails on characters")
        return FiniteRelation(_trim(P), _trim(Q), tuple(vecs), tuple(sorted(closure)), tuple(sizes))
    rel = FiniteRelation((), (), tuple(vecs), tuple(sorted(closure)), tuple(sizes))
    raise SearchExhausted(f"no relation of degree <= {K}", closure=rel)


def _dependence(vecs, width: int) -> tuple[int, ...] | None:
    """Primitive integer relation among ``vecs`` using the last one, last coefficient positive."""
    k = len(vecs) - 1
    cands = []
    for u in _left_kernel([list(v) for v in vecs], width):
        if u[k]:
            g = math.gcd(*u)
            sign = 1 if u[k] > 0 else -1
            cands.append(tuple(sign * c // g for c in u))
    return min(cands) if cands else None


def _evaluate(coeffs, powers) -> Character:
    total = powers[0] * coeffs[0]
    for c, p in zip(coeffs[1:], powers[1:]):
        total = total + p * c
    return total


def _trim(c: tuple[int, ...]) -> tuple[int, ...]:
    c = list(c)
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return tuple(c)
