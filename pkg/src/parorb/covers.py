"""Tame covers of orbifold lines encoded by monodromy tuples.

A tuple ``(g_1..g_n)`` in a finite group ``G`` with product one describes the
Galois cover with group ``G``; a subgroup ``H`` picks the intermediate cover
whose fibre is the coset space ``G/H``.  Upstairs marked points are the
orbits of each ``<g_i>`` on the fibre.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Mapping, Sequence

from .errors import (IncompatibleEnrichment, InputError, NotGenerating, NotNormal, OrderViolation,
                     ProductNotOne)
from .finitegroup import CosetSpace, FiniteGroup, Subgroup, _closure, cosets, group_from_permutations
from .orbifold import OrbifoldCurve


@dataclass(frozen=True, eq=False)
class MonodromyTuple:
    base: OrbifoldCurve
    group: FiniteGroup
    tuple: tuple[int, ...]


def validate_monodromy(base: OrbifoldCurve, group: FiniteGroup, tup: Sequence[int]) -> MonodromyTuple:
    tup = tuple(int(g) for g in tup)
    if len(tup) != len(base.points):
        raise InputError(f"tuple has {len(tup)} entries for {len(base.points)} marked points")
    if any(not 0 <= g < group.n for g in tup):
        raise InputError("tuple entry is not an element index")
    if group.product(tup) != group.identity:
        raise ProductNotOne("product of the monodromy tuple is not the identity")
    for i, (g, r) in enumerate(zip(tup, base.orders)):
        if r % group.element_order(g):
            raise OrderViolation(i, f"order of g_{i} = {group.element_order(g)} does not divide r = {r}")
    if len(_closure(group.mul, tup, group.n)) != group.n:
        raise NotGenerating("tuple does not generate the group")
    return MonodromyTuple(base, group, tup)


@dataclass(frozen=True)
class UpstairsPoint:
    label: str
    base_index: int
    ell: int           # ramification index over the coarse base
    s: int             # residual orbifold order
    orbit: tuple[int, ...]   # cosets in the orbit, starting at the least


@dataclass(frozen=True, eq=False)
class CoverGeometry:
    upstairs: OrbifoldCurve
    alpha: tuple[int, ...]
    ell: tuple[int, ...]
    genus_upstairs: int
    points: tuple[UpstairsPoint, ...]

    @property
    def s(self) -> tuple[int, ...]:
        return self.upstairs.orders


class TameCover:
    """The cover with fibre ``G/H`` attached to a validated monodromy tuple."""

    def __init__(self, monodromy: MonodromyTuple, H: Subgroup):
        if H.parent is not monodromy.group:
            raise InputError("H must be a subgroup of the monodromy group")
        self.monodromy = monodromy
        self.H = H
        self.space: CosetSpace = cosets(monodromy.group, H)
        self.fiber_action = tuple(self.space.action(g) for g in monodromy.tuple)
        if not _transitive(self.fiber_action, len(self.space)):
            raise NotGenerating("fibre action is not transitive")

    @property
    def base(self) -> OrbifoldCurve:
        return self.monodromy.base

    @property
    def group(self) -> FiniteGroup:
        return self.monodromy.group

    @property
    def degree(self) -> int:
        return len(self.space)

    @cached_property
    def geometry(self) -> CoverGeometry:
        return cover_geometry(self)

    def with_subgroup(self, H: Subgroup) -> TameCover:
        return TameCover(self.monodromy, H)


def _transitive(perms, n) -> bool:
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for p in perms:
            if p[x] not in seen:
                seen.add(p[x])
                stack.append(p[x])
    return len(seen) == n


def cycles(perm: Sequence[int]) -> list[tuple[int, ...]]:
    """Cycles of a permutation, each starting at its least point, ordered by that point."""
    seen = [False] * len(perm)
    out = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        cyc = []
        x = start
        while not seen[x]:
            seen[x] = True
            cyc.append(x)
            x = perm[x]
        out.append(tuple(cyc))
    return out


def cover_geometry(cover: TameCover) -> CoverGeometry:
    base = cover.base
    pts = []
    for i, ((label, r), perm) in enumerate(zip(base.points, cover.fiber_action)):
        for orbit in cycles(perm):
            ell = len(orbit)
            assert r % ell == 0, "orbit length must divide the root order"
            pts.append(UpstairsPoint(f"({label},{orbit[0]})", i, ell, r // ell, orbit))
    ram = sum(p.ell - 1 for p in pts)
    # 2g' - 2 = deg (2g - 2) + sum (ell - 1)
    twice = cover.degree * (2 * base.genus - 2) + ram
    assert twice % 2 == 0, "Riemann-Hurwitz parity"
    genus = twice // 2 + 1
    assert genus >= 0
    for i in range(len(base.points)):
        assert sum(p.ell for p in pts if p.base_index == i) == cover.degree
    upstairs = OrbifoldCurve(genus, tuple((p.label, p.s) for p in pts))
    return CoverGeometry(upstairs, tuple(p.base_index for p in pts), tuple(p.ell for p in pts), genus, tuple(pts))


def coarse_genus(cover: TameCover) -> int:
    """Genus from cycle types alone, ignoring orbifold orders."""
    d = cover.degree
    ram = sum(d - len(cycles(p)) for p in cover.fiber_action)
    return (d * (2 * cover.base.genus - 2) + ram) // 2 + 1


def make_cover(base: OrbifoldCurve, group: FiniteGroup, tup: Sequence[int], H: Subgroup | None = None) -> TameCover:
    mono = validate_monodromy(base, group, tup)
    return TameCover(mono, H if H is not None else group.trivial)


def extend_orbifold(cover: TameCover, new_orders: Mapping[str, int]) -> TameCover:
    """Raise root orders on the base (new labels become points with trivial monodromy).

    ``new_orders[label]`` is the enriched order at that point; it must be a
    multiple of the local monodromy order.
    """
    base = cover.base
    points = list(base.points)
    tup = list(cover.monodromy.tuple)
    G = cover.group
    for label, r_new in new_orders.items():
        r_new = int(r_new)
        if r_new < 1:
            raise IncompatibleEnrichment(f"order {r_new} at {label!r} is not positive")
        if label in base.labels:
            i = base.index(label)
            if r_new % G.element_order(tup[i]):
                raise IncompatibleEnrichment(
                    f"order {r_new} at {label!r} is not a multiple of the branching {G.element_order(tup[i])}")
            points[i] = (label, r_new)
        else:
            points.append((label, r_new))
            tup.append(G.identity)
    enriched = OrbifoldCurve(base.genus, tuple(points))
    return TameCover(validate_monodromy(enriched, G, tup), cover.H)


@dataclass(frozen=True, eq=False)
class DeckAction:
    """Deck group ``N(H)/H = G/H`` acting on the fibre and on upstairs marked points.

    ``coset_reps[k]`` is the element of ``G`` representing the k-th deck
    transformation; ``on_fibre[k]`` and ``on_points[k]`` are its permutations.
    """

    coset_reps: tuple[int, ...]
    on_fibre: tuple[tuple[int, ...], ...]
    on_points: tuple[tuple[int, ...], ...]
    group: FiniteGroup
    group_index: tuple[int, ...]   # deck element k -> index in ``group``

    def point_permutation(self, g: int, cover: TameCover) -> tuple[int, ...]:
        return self.on_points[cover.space.coset_of[g]]


def deck_action_on_points(cover: TameCover) -> DeckAction:
    """Deck transformation of ``nH`` sends ``xH`` to ``x n^-1 H``; a left action of ``G/H``."""
    if not cover.H.is_normal():
        raise NotNormal("H is not normal; the cover is not Galois")
    G, sp = cover.group, cover.space
    geo = cover.geometry
    point_of = {}
    for j, p in enumerate(geo.points):
        for c in p.orbit:
            point_of[(p.base_index, c)] = j
    on_fibre, on_points = [], []
    for n in sp.reps:
        ninv = G.inv[n]
        fib = tuple(sp.coset_of[G.mul[x][ninv]] for x in sp.reps)
        on_fibre.append(fib)
        pts = []
        for j, p in enumerate(geo.points):
            target = point_of[(p.base_index, fib[p.orbit[0]])]
            assert geo.points[target].s == p.s and geo.alpha[target] == geo.alpha[j]
            pts.append(target)
        on_points.append(tuple(pts))
    deg = len(sp)
    gens = [on_fibre[sp.coset_of[g]] for g in G.generators]
    Q = group_from_permutations(deg, gens, name="deck group")
    lookup = {tuple(p): i for i, p in enumerate(Q.descriptors)}
    return DeckAction(sp.reps, tuple(on_fibre), tuple(on_points), Q, tuple(lookup[f] for f in on_fibre))


def local_stabilizers(cover: TameCover) -> list[int]:
    """For each upstairs point, ``t^-1 g_i^ell t`` in ``H`` (``t`` = least coset rep of the orbit).

    These are the local monodromies of the Galois closure over the intermediate cover.
    """
    out = []
    sp = cover.space
    for p in cover.geometry.points:
        g = cover.monodromy.tuple[p.base_index]
        h = sp.stabilizer_element(g, p.orbit[0], p.ell)
        assert h in cover.H
        out.append(h)
    return out


def galois_closure_genus(mono: MonodromyTuple) -> int:
    G = mono.group
    ram = sum(G.n - G.n // G.element_order(g) for g in mono.tuple)
    return (G.n * (2 * mono.base.genus - 2) + ram) // 2 + 1

