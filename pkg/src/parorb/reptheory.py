"""Monomial representations of finite groups with exact cyclotomic characters.

A monomial matrix is a pair ``(perm, twist)``: basis vector ``e_k`` goes to
``zeta^twist[perm[k]] * e_perm[k]`` where ``zeta = exp(2 pi i / level)``.
Twists are stored as integers modulo ``level`` and indexed by the target.
Representations keep only generator images; full tables are expanded on
demand by the batch kernels.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Callable, Mapping, Sequence

import numpy as np

from . import kernels
from .abgroup import dual_characters, evaluate_character, fp_group, qz
from .covers import cycles
from .cyclotomic import CycloNumber
from .errors import (GroupMismatch, IncompleteInput, InputError, NegativeMultiplicity, NonIntegral,
                     NotWellDefined, ensure)
from .finitegroup import FiniteGroup, Subgroup, cosets, double_cosets


# ---------------------------------------------------------------------------
# one-dimensional characters
class Character1D:
    """A homomorphism ``H -> Q/Z`` fixed by its values on chosen generators of ``H``.

    ``values`` is either a mapping ``generator -> value`` or a sequence aligned
    with ``subgroup.generators``.  The extension to all of ``H`` is computed
    eagerly and checked against every Cayley-graph edge.
    """

    def __init__(self, subgroup: Subgroup, values):
        self.subgroup = subgroup
        if isinstance(values, Mapping):
            items = [(int(g), qz(Fraction(v))) for g, v in values.items()]
        else:
            values = list(values)
            if len(values) != len(subgroup.generators):
                raise InputError("one value per subgroup generator required")
            items = [(g, qz(Fraction(v))) for g, v in zip(subgroup.generators, values)]
        for g, _ in items:
            if g not in subgroup:
                raise InputError(f"element {g} is not in the subgroup")
        gens = tuple(g for g, _ in items)
        if Subgroup(subgroup.parent, gens).members != subgroup.members:
            raise InputError("character values must be given on a generating set of the subgroup")
        self.generators = gens
        self.gen_values = tuple(v for _, v in items)
        self._table = self._extend()

    def _extend(self) -> dict[int, Fraction]:
        mul = self.subgroup.parent.mul
        table = {0: Fraction(0)}
        q = deque([0])
        while q:
            x = q.popleft()
            for s, v in zip(self.generators, self.gen_values):
                y = mul[x][s]
                val = qz(table[x] + v)
                if y not in table:
                    table[y] = val
                    q.append(y)
                elif table[y] != val:
                    raise NotWellDefined(f"character values violate a relation of the subgroup at element {y}")
        return table

    def __call__(self, h: int) -> Fraction:
        try:
            return self._table[h]
        except KeyError:
            raise InputError(f"element {h} is not in the subgroup") from None

    value = __call__

    @cached_property
    def level(self) -> int:
        return math.lcm(1, *(v.denominator for v in self.gen_values))

    @property
    def order(self) -> int:
        return self.level

    def is_trivial(self) -> bool:
        return all(v == 0 for v in self.gen_values)

    def items(self):
        return sorted(self._table.items())

    def __eq__(self, other):
        return (isinstance(other, Character1D) and self.subgroup == other.subgroup
                and self._table == other._table)

    def __hash__(self):
        return hash((self.subgroup, tuple(self.items())))

    def __repr__(self):
        vals = ", ".join(f"{g}: {v}" for g, v in zip(self.generators, self.gen_values))
        return f"Character1D({{{vals}}} on order {self.subgroup.order})"

    def restrict(self, K: Subgroup) -> Character1D:
        return Character1D(K, {g: self(g) for g in K.small_generators})

    def to_json(self) -> dict:
        return {"H": list(self.generators), "chi": {str(g): _qstr(v) for g, v in zip(self.generators, self.gen_values)}}


def trivial_character(H: Subgroup) -> Character1D:
    return Character1D(H, {g: 0 for g in H.small_generators})


def linear_characters(H: Subgroup) -> list[Character1D]:
    """All characters of ``H``, via the abelianization read off a spanning tree of its Cayley graph.

    The trivial character comes first; the rest follow the lexicographic order
    of the dual of the abelianization.
    """
    G = H.parent
    gens = H.small_generators
    m = len(gens)
    if m == 0:
        return [Character1D(H, {})]
    vec = {0: [0] * m}
    rels = []
    q = deque([0])
    while q:
        x = q.popleft()
        for k, s in enumerate(gens):
            y = G.mul[x][s]
            v = list(vec[x])
            v[k] += 1
            if y not in vec:
                vec[y] = v
                q.append(y)
            else:
                rel = [a - b for a, b in zip(v, vec[y])]
                if any(rel):
                    rels.append(rel)
    A = fp_group(m, rels)
    images = [A.generator(k) for k in range(m)]
    return [Character1D(H, {g: evaluate_character(chi, img) for g, img in zip(gens, images)})
            for chi in dual_characters(A)]


# ---------------------------------------------------------------------------
# class functions
class Character:
    """Class function with values in cyclotomic integers, one per conjugacy class."""

    __slots__ = ("group", "class_values")

    def __init__(self, group: FiniteGroup, class_values: Sequence[CycloNumber]):
        if len(class_values) != len(group.conjugacy_classes):
            raise InputError("one value per conjugacy class required")
        self.group = group
        self.class_values = tuple(class_values)

    def __call__(self, g: int) -> CycloNumber:
        return self.class_values[self.group.class_of[g]]

    @property
    def values(self) -> dict[int, CycloNumber]:
        """Class representative (least element) to value."""
        return {cls[0]: v for cls, v in zip(self.group.conjugacy_classes, self.class_values)}

    @property
    def degree(self) -> int:
        return self.class_values[0].to_rational_integer()

    def _same(self, other: Character):
        if other.group is not self.group:
            raise GroupMismatch("characters of different groups")

    def __add__(self, other: Character) -> Character:
        self._same(other)
        return Character(self.group, [a + b for a, b in zip(self.class_values, other.class_values)])

    def __mul__(self, other):
        if isinstance(other, int):
            return Character(self.group, [a * other for a in self.class_values])
        self._same(other)
        return Character(self.group, [a * b for a, b in zip(self.class_values, other.class_values)])

    __rmul__ = __mul__

    def conj(self) -> Character:
        return Character(self.group, [a.conj() for a in self.class_values])

    def __eq__(self, other):
        if not isinstance(other, Character):
            return NotImplemented
        return other.group is self.group and all(a == b for a, b in zip(self.class_values, other.class_values))

    __hash__ = None

    def __repr__(self):
        return f"Character({list(self.class_values)})"

    def to_json(self):
        return {str(rep): v.to_json() for rep, v in self.values.items()}


def zero_character(G: FiniteGroup) -> Character:
    return Character(G, [CycloNumber.integer(0)] * len(G.conjugacy_classes))


def inner_product(chi: Character, psi: Character) -> int:
    """``(1/|G|) sum_g chi(g) conj(psi(g))``, certified to be a rational integer."""
    chi._same(psi)
    G = chi.group
    total = CycloNumber.integer(0)
    for cls, a, b in zip(G.conjugacy_classes, chi.class_values, psi.class_values):
        total = total + (a * b.conj()) * len(cls)
    try:
        s = total.to_rational_integer()
    except NonIntegral:
        raise NonIntegral("inner product is not rational") from None
    if s % G.n:
        raise NonIntegral(f"inner product {s}/{G.n} is not an integer")
    return s // G.n


# ---------------------------------------------------------------------------
# monomial representations
@dataclass(frozen=True, eq=False)
class Induced:
    subgroup: Subgroup
    chi: Character1D


@dataclass(frozen=True, eq=False)
class TensorOf:
    left: MonomialRep
    right: MonomialRep


@dataclass(frozen=True, eq=False)
class SumOf:
    parts: tuple


class MonomialRep:
    def __init__(self, group: FiniteGroup, dim: int, level: int, gen_perm, gen_twist, provenance=None,
                 tables=None, check: bool = True):
        self.group = group
        self.dim = int(dim)
        self.level = int(level)
        ng = len(group.generators)
        self.gen_perm = np.asarray(gen_perm, dtype=np.int64).reshape(ng, self.dim)
        self.gen_twist = np.asarray(gen_twist, dtype=np.int64).reshape(ng, self.dim) % self.level
        self.provenance = provenance
        if self.dim < 1:
            raise InputError("dimension must be positive")
        for p in self.gen_perm:
            if sorted(p.tolist()) != list(range(self.dim)):
                raise InputError("generator image is not a monomial matrix")
        if tables is not None:
            self.__dict__["tables"] = tables
        if check:
            self.check_multiplicative()

    def __repr__(self):
        return f"MonomialRep(dim={self.dim}, level={self.level}, group={self.group!r})"

    @cached_property
    def tables(self) -> tuple[np.ndarray, np.ndarray]:
        """``(perm, twist)`` arrays of shape ``(|G|, dim)`` for every element."""
        G = self.group
        if not G.generators:
            return np.arange(self.dim, dtype=np.int64)[None, :], np.zeros((1, self.dim), dtype=np.int64)
        order, parent, via = G.bfs_tree
        return kernels.expand_monomial(order, parent, via, self.gen_perm, self.gen_twist, self.level)

    def check_multiplicative(self):
        """``M(x s) = M(x) M(s)`` for every element ``x`` and generator ``s``; raises NotWellDefined."""
        P, T = self.tables
        G = self.group
        mul = np.asarray(G.table)
        if not (P[0] == np.arange(self.dim)).all() or T[0].any():
            raise NotWellDefined("identity does not act trivially")
        for k, s in enumerate(G.generators):
            gp, gt = self.gen_perm[k], self.gen_twist[k]
            tgt = P[:, gp]
            xs = mul[:, s]
            want_t = (gt[gp][None, :] + np.take_along_axis(T, tgt, axis=1)) % self.level
            got_t = np.take_along_axis(T[xs], tgt, axis=1)
            if not (P[xs] == tgt).all() or not (got_t == want_t).all():
                raise NotWellDefined("generator images do not respect the group relations")
        return self

    def matrix(self, g: int) -> tuple[tuple[int, ...], tuple[Fraction, ...]]:
        P, T = self.tables
        return tuple(P[g].tolist()), tuple(Fraction(int(t), self.level) for t in T[g])

    def dense(self, g: int) -> np.ndarray:
        """Complex matrix of ``g``; for numerical cross-checks only."""
        P, T = self.tables
        M = np.zeros((self.dim, self.dim), dtype=complex)
        for k in range(self.dim):
            M[P[g, k], k] = np.exp(2j * np.pi * T[g, P[g, k]] / self.level)
        return M

    def at_level(self, level: int) -> MonomialRep:
        if level % self.level:
            raise InputError("new level must be a multiple")
        f = level // self.level
        P, T = self.tables
        return MonomialRep(self.group, self.dim, level, self.gen_perm, self.gen_twist * f, self.provenance,
                           tables=(P, T * f), check=False)

    @cached_property
    def character(self) -> Character:
        return character(self)


def _induced_images(G: FiniteGroup, H: Subgroup, chi: Character1D):
    sp = cosets(G, H)
    m, level = len(sp), chi.level
    gp = np.empty((len(G.generators), m), dtype=np.int64)
    gt = np.empty((len(G.generators), m), dtype=np.int64)
    for i, s in enumerate(G.generators):
        for k, t in enumerate(sp.reps):
            j = sp.coset_of[G.mul[s][t]]
            h = G.mul[G.inv[sp.reps[j]]][G.mul[s][t]]
            gp[i, k] = j
            gt[i, j] = int(chi(h) * level)
    return m, level, gp, gt


def induce(G: FiniteGroup, H: Subgroup, chi: Character1D) -> MonomialRep:
    """``Ind_H^G chi`` on the left transversal of least coset elements (identity first)."""
    if H.parent is not G or chi.subgroup != H:
        raise GroupMismatch("character must live on a subgroup of G")
    m, level, gp, gt = _induced_images(G, H, chi)
    return MonomialRep(G, m, level, gp, gt, Induced(H, chi))


def trivial_rep(G: FiniteGroup) -> MonomialRep:
    return induce(G, G.whole, trivial_character(G.whole))


def regular_rep(G: FiniteGroup) -> MonomialRep:
    return induce(G, G.trivial, trivial_character(G.trivial))


def tensor(R1: MonomialRep, R2: MonomialRep) -> MonomialRep:
    if R1.group is not R2.group:
        raise GroupMismatch("tensor factors live on different groups")
    L = math.lcm(R1.level, R2.level)
    a, b = R1.at_level(L), R2.at_level(L)
    (p1, t1), (p2, t2) = a.tables, b.tables
    P, T = kernels.kron_monomial(p1, t1, p2, t2, L)
    gens = list(R1.group.generators)
    return MonomialRep(R1.group, R1.dim * R2.dim, L, P[gens], T[gens], TensorOf(R1, R2), tables=(P, T))


def direct_sum(reps: Sequence[MonomialRep]) -> MonomialRep:
    reps = list(reps)
    if not reps:
        raise InputError("empty direct sum")
    G = reps[0].group
    if any(r.group is not G for r in reps):
        raise GroupMismatch("summands live on different groups")
    L = math.lcm(*(r.level for r in reps))
    perms, twists, off = [], [], 0
    for r in reps:
        r = r.at_level(L)
        perms.append(r.gen_perm + off)
        twists.append(r.gen_twist)
        off += r.dim
    gp = np.concatenate(perms, axis=1) if G.generators else np.zeros((0, off), dtype=np.int64)
    gt = np.concatenate(twists, axis=1) if G.generators else np.zeros((0, off), dtype=np.int64)
    return MonomialRep(G, off, L, gp, gt, SumOf(tuple(reps)))


def character(R: MonomialRep) -> Character:
    """Exact character; the raw trace vectors are checked to be constant on each class."""
    P, T = R.tables
    traces = kernels.monomial_traces(P, T, R.level)
    G = R.group
    vals = []
    for cls in G.conjugacy_classes:
        row = traces[cls[0]]
        ensure(all((traces[x] == row).all() for x in cls), "character is not a class function")
        vals.append(CycloNumber(R.level, row.tolist()))
    return Character(G, vals)


def local_exponents(R: MonomialRep, g: int) -> tuple[Fraction, ...]:
    """Eigenvalue exponents of ``R(g)`` in ``[0, 1)``, sorted.

    A cycle of length ``l`` with total twist ``t`` contributes ``(t + m)/l``
    for ``m = 0..l-1``.
    """
    P, T = R.tables
    perm, tw = P[g].tolist(), T[g].tolist()
    out = []
    for cyc in cycles(perm):
        total = Fraction(sum(tw[k] for k in cyc), R.level)
        ell = len(cyc)
        out.extend(qz((total + m) / ell) for m in range(ell))
    return tuple(sorted(out))


def exponents_to_character_value(exps: Sequence[Fraction]) -> CycloNumber:
    total = CycloNumber.integer(0)
    for e in exps:
        total = total + CycloNumber.root(e)
    return total


# ---------------------------------------------------------------------------
# Mackey
@dataclass(frozen=True, eq=False)
class MackeySummand:
    subgroup: Subgroup
    chi: Character1D
    rep: int

    @property
    def index(self) -> int:
        return self.subgroup.parent.n // self.subgroup.order


def mackey_decompose(G: FiniteGroup, H1: Subgroup, chi1: Character1D, H2: Subgroup,
                     chi2: Character1D) -> list[MackeySummand]:
    """``Ind chi1 (x) Ind chi2 = sum_g Ind_{H1 cap gH2g^-1} (chi1 . chi2^g)`` over ``H1\\G/H2``.

    ``chi2^g(x) = chi2(g^-1 x g)``.  Dimensions and characters of both sides
    are compared before returning.
    """
    out = []
    for g in double_cosets(G, H1, H2):
        Hg = H1.intersection(H2.conjugate(g))
        ginv = G.inv[g]
        vals = {x: chi1(x) + chi2(G.mul[G.mul[ginv][x]][g]) for x in Hg.small_generators}
        out.append(MackeySummand(Hg, Character1D(Hg, vals), g))
    ensure(sum(s.index for s in out) == (G.n // H1.order) * (G.n // H2.order), "Mackey dimension count")
    lhs = character(induce(G, H1, chi1)) * character(induce(G, H2, chi2))
    rhs = zero_character(G)
    for s in out:
        rhs = rhs + character(induce(G, s.subgroup, s.chi))
    ensure(lhs == rhs, "Mackey character identity failed")
    return out


# ---------------------------------------------------------------------------
# irreducibles
def is_irreducible(R: MonomialRep) -> bool:
    chi = R.character
    return inner_product(chi, chi) == 1


def _complete(G: FiniteGroup, irr: Sequence[MonomialRep]) -> bool:
    return sum(r.dim ** 2 for r in irr) == G.n


def _orthonormal(irr: Sequence[MonomialRep]) -> bool:
    chars = [r.character for r in irr]
    return all(inner_product(a, b) == (1 if i == j else 0)
               for i, a in enumerate(chars) for j, b in enumerate(chars) if i <= j)


def monomial_irreducibles(G: FiniteGroup) -> list[MonomialRep]:
    """Irreducibles of a monomial group as inductions of linear characters.

    Subgroups are scanned from largest to smallest, so the output is sorted by
    dimension with the trivial representation first.  Raises IncompleteInput
    when the group has a non-monomial irreducible.
    """
    found: list[MonomialRep] = []
    total = 0
    for H in sorted(G.all_subgroups(), key=lambda s: (-s.order, s.sorted_members)):
        for chi in linear_characters(H):
            R = induce(G, H, chi)
            c = R.character
            if inner_product(c, c) != 1:
                continue
            if any(inner_product(c, f.character) for f in found):
                continue
            found.append(R)
            total += R.dim ** 2
            if total == G.n:
                return found
    raise IncompleteInput(f"monomial inductions only reach sum dim^2 = {total} < {G.n}")


def dual_action(A, H: FiniteGroup, act_table) -> list[list[int]]:
    """Left action of ``H`` on the characters of ``A``: ``(h.chi)(a) = chi(h^-1 . a)``.

    Characters are indexed as in ``dual_characters(A)``; ``act_table[h]`` maps
    element indices of ``A`` as produced by ``semidirect_product``.
    """
    elems = A.elements()
    chars = dual_characters(A)
    vecs = [tuple(evaluate_character(c, a) for a in elems) for c in chars]
    pos = {v: i for i, v in enumerate(vecs)}
    out = []
    for h in range(H.n):
        hinv = act_table[H.inv[h]]
        out.append([pos[tuple(v[hinv[a]] for a in range(len(elems)))] for v in vecs])
    return out


@dataclass(frozen=True, eq=False)
class LittleGroupData:
    orbit_reps: tuple[int, ...]          # indices into dual_characters(A)
    orbits: tuple[tuple[int, ...], ...]
    stabilizers: tuple[Subgroup, ...]    # subgroups of H


def little_group_orbits(G: FiniteGroup) -> LittleGroupData:
    A, H = _split(G)
    act = dual_action(A, H, G.action_table)
    seen, reps, orbits, stabs = set(), [], [], []
    for i in range(len(act[0])):
        if i in seen:
            continue
        orb = sorted({act[h][i] for h in range(H.n)})
        seen.update(orb)
        reps.append(i)
        orbits.append(tuple(orb))
        stab = [h for h in range(H.n) if act[h][i] == i]
        stabs.append(Subgroup(H, tuple(stab)))
    return LittleGroupData(tuple(reps), tuple(orbits), tuple(stabs))


def _split(G: FiniteGroup):
    if not (isinstance(G.label, tuple) and G.label and G.label[0] == "semidirect"):
        raise InputError("group was not built by semidirect_product")
    return G.label[1], G.label[2]


def little_groups_irreducibles(
        G: FiniteGroup,
        stabilizer_irreps: Callable[[Subgroup], Sequence[MonomialRep]] | None = None) -> list[MonomialRep]:
    """Irreducibles of ``A x| H`` from ``H``-orbits on the characters of ``A``.

    For each orbit representative ``chi`` with stabilizer ``H_chi`` and each
    irreducible ``rho = Ind_K^{H_chi} lambda`` of ``H_chi``, the output holds
    ``Ind_{A x| K}^G (chi x lambda)``.  ``stabilizer_irreps`` receives the
    stabilizer (a subgroup of ``H``) and must return monomial representations
    of its standalone group ``stab.as_group()[0]``; by default they are found
    by :func:`monomial_irreducibles`.
    """
    A, H = _split(G)
    nh = H.n
    data = little_group_orbits(G)
    chars = dual_characters(A)
    a_gens = [A.index_of(A.snf_generator(k)) * nh for k in range(len(A.moduli))]
    out: list[MonomialRep] = []
    for ci, stab in zip(data.orbit_reps, data.stabilizers):
        chi = chars[ci]
        S, emb = stab.as_group()
        irreps = stabilizer_irreps(stab) if stabilizer_irreps else monomial_irreducibles(S)
        for rho in irreps:
            prov = rho.provenance
            if rho.group is not S or not isinstance(prov, Induced):
                raise InputError("stabilizer representations must be inductions on stab.as_group()[0]")
            K = prov.subgroup
            k_gens = [emb[k] for k in K.small_generators]   # H index == G index of (0, h)
            vals = dict(zip(a_gens, chi))
            for k_local, g in zip(K.small_generators, k_gens):
                vals[g] = prov.chi(k_local)
            sub = Subgroup(G, tuple(vals))
            out.append(induce(G, sub, Character1D(sub, vals)))
    if not _complete(G, out):
        raise IncompleteInput(f"sum of squared dimensions {sum(r.dim ** 2 for r in out)} != |G| = {G.n}")
    ensure(_orthonormal(out), "little-groups output is not orthonormal")
    return out


def decompose(R, irreducibles: Sequence[MonomialRep]) -> tuple[int, ...]:
    """Multiplicities of each irreducible in ``R`` (a MonomialRep or a Character)."""
    chi = R if isinstance(R, Character) else R.character
    mults = tuple(inner_product(chi, irr.character) for irr in irreducibles)
    if any(m < 0 for m in mults):
        raise NegativeMultiplicity(f"negative multiplicity in {mults}")
    dim = chi.degree
    if sum(m * irr.dim for m, irr in zip(mults, irreducibles)) != dim:
        raise NonIntegral(f"multiplicities {mults} do not account for dimension {dim}")
    return mults


def _qstr(v: Fraction) -> str | int:
    return int(v) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
