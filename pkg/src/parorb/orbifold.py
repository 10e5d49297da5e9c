"""Orbifold projective lines and the Picard groups of their root stacks."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .abgroup import FpAbelianGroup, GroupElement, Hom, fp_group, kernel, n_torsion
from .errors import InputError, UnsupportedGenus


@dataclass(frozen=True)
class OrbifoldCurve:
    """A curve of the given genus with marked points ``(label, r)``; char. 0, algebraically closed base."""

    genus: int
    points: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        pts = tuple((str(lbl), int(r)) for lbl, r in self.points)
        labels = [p[0] for p in pts]
        if len(set(labels)) != len(labels):
            raise InputError(f"duplicate point labels in {labels}")
        if any(r < 1 for _, r in pts):
            raise InputError("root orders must be >= 1")
        if self.genus < 0:
            raise InputError("genus must be non-negative")
        object.__setattr__(self, "points", pts)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(p[0] for p in self.points)

    @property
    def orders(self) -> tuple[int, ...]:
        return tuple(p[1] for p in self.points)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(str(label))
        except ValueError:
            raise InputError(f"unknown marked point {label!r}") from None

    def require_genus_zero(self):
        if self.genus != 0:
            raise UnsupportedGenus(f"genus {self.genus} base; only genus 0 is supported")

    def to_json(self) -> dict:
        return {"genus": self.genus, "points": [{"label": l, "r": r} for l, r in self.points]}

    @classmethod
    def from_json(cls, data: dict) -> OrbifoldCurve:
        try:
            pts = tuple((p["label"], p["r"]) for p in data.get("points", []))
            return cls(int(data.get("genus", 0)), pts)
        except (KeyError, TypeError) as exc:
            raise InputError(f"bad orbifold description: {exc}") from exc


def orbifold(*points: tuple[str, int], genus: int = 0) -> OrbifoldCurve:
    return OrbifoldCurve(genus, tuple(points))


@dataclass(frozen=True, eq=False)
class PicGroup:
    """Pic of a genus-0 root stack on generators ``N_1..N_n, f`` with ``r_i N_i = f``."""

    orbifold: OrbifoldCurve
    group: FpAbelianGroup
    generator_labels: tuple[str, ...]
    degree_map: tuple[Fraction, ...]

    @property
    def f_index(self) -> int:
        return len(self.generator_labels) - 1

    def N(self, label: str) -> GroupElement:
        return self.group.generator(self.orbifold.index(label))

    @property
    def f(self) -> GroupElement:
        return self.group.generator(self.f_index)

    def make_class(self, d: int, a: Sequence[int]) -> GroupElement:
        """``d f + sum a_i N_i``."""
        if len(a) != len(self.orbifold.points):
            raise InputError("one coefficient per marked point required")
        return self.group.element(list(a) + [d])

    @cached_property
    def degree_hom(self) -> Hom:
        """Degree scaled by ``lcm(r_i)`` so that it lands in Z."""
        L = math.lcm(*self.orbifold.orders) if self.orbifold.points else 1
        Z = fp_group(1)
        return Hom(self.group, Z, tuple((int(d * L),) for d in self.degree_map)).check()


def picard_group(orb: OrbifoldCurve) -> PicGroup:
    orb.require_genus_zero()
    n = len(orb.points)
    rels = []
    for i, (_, r) in enumerate(orb.points):
        row = [0] * (n + 1)
        row[i] = r
        row[n] = -1
        rels.append(row)
    G = fp_group(n + 1, rels)
    labels = tuple(f"N[{l}]" for l in orb.labels) + ("f",)
    degs = tuple(Fraction(1, r) for r in orb.orders) + (Fraction(1),)
    return PicGroup(orb, G, labels, degs)


def degree(pic: PicGroup, c: GroupElement) -> Fraction:
    x = pic.group.lift(c)
    return sum((Fraction(xi) * d for xi, d in zip(x, pic.degree_map)), Fraction(0))


def canonical_form(pic: PicGroup, c: GroupElement) -> tuple[int, tuple[int, ...]]:
    """Unique ``(d, a)`` with ``c = d f + sum a_i N_i`` and ``0 <= a_i < r_i``."""
    x = pic.group.lift(c)
    n = len(pic.orbifold.points)
    d = x[n]
    a = []
    for i, r in enumerate(pic.orbifold.orders):
        q, rem = divmod(x[i], r)
        d += q
        a.append(rem)
    return d, tuple(a)


def pic_zero(pic: PicGroup) -> tuple[FpAbelianGroup, Hom]:
    """Degree-zero subgroup with its inclusion into ``pic.group``."""
    return kernel(pic.degree_hom)


def pic_zero_torsion(orb: OrbifoldCurve, n: int, pic: PicGroup | None = None) -> tuple[FpAbelianGroup, Hom]:
    """``Pic^0[n]`` with its inclusion into the Picard group (presentation coordinates)."""
    orb.require_genus_zero()
    pic = pic or picard_group(orb)
    K, inc = pic_zero(pic)
    T, inc_t = n_torsion(K, n)
    return T, inc.compose(inc_t)


def quotient_by_f(pic: PicGroup) -> FpAbelianGroup:
    """``Pic / <f>``, which the exact sequence identifies with ``prod Z/r_i``."""
    G = pic.group
    rels = [list(r) for r in G.relations]
    e = [0] * G.generator_count
    e[pic.f_index] = 1
    return fp_group(G.generator_count, rels + [e])


@dataclass(frozen=True)
class PolygonalPresentation:
    """``< x_1..x_n | x_i^{r_i}, x_1 x_2 ... x_n >``."""

    generators: tuple[str, ...]
    orders: tuple[int, ...]

    def relations_text(self) -> list[str]:
        rels = [f"{g}^{r}" for g, r in zip(self.generators, self.orders)]
        rels.append("".join(self.generators) if self.generators else "1")
        return rels

    def abelianization(self) -> FpAbelianGroup:
        n = len(self.generators)
        rels = []
        for i, r in enumerate(self.orders):
            row = [0] * n
            row[i] = r
            rels.append(row)
        rels.append([1] * n)
        return fp_group(n, rels)

    def abelianization_mod(self, m: int) -> FpAbelianGroup:
        """Abelianization tensored with Z/m."""
        ab = self.abelianization()
        n = len(self.generators)
        extra = [[m if i == j else 0 for j in range(n)] for i in range(n)]
        return fp_group(n, [list(r) for r in ab.relations] + extra)


def polygonal_presentation(orb: OrbifoldCurve) -> PolygonalPresentation:
    orb.require_genus_zero()
    return PolygonalPresentation(tuple(f"x[{l}]" for l in orb.labels), orb.orders)

