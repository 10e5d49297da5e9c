"""Concrete finite groups on dense element indices.

Elements are ``0..n-1`` with ``0`` the identity; multiplication is a full
table.  Permutations compose right to left: ``(p*q)[i] = p[q[i]]``.
"""
from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .abgroup import FpAbelianGroup, GroupElement
from .errors import InputError, NotAnAction, OrderBound

DEFAULT_MAX_ORDER = 10**4


class FiniteGroup:
    """A finite group given by its multiplication table.

    ``label`` records provenance: ``("perm", degree, perms)`` or
    ``("semidirect", A, H, action)``; ``descriptors[i]`` is the permutation or
    ``(a, h)`` pair behind element ``i``.
    """

    def __init__(self, table, generators: Sequence[int], label=None, descriptors=None, name: str = ""):
        self.table = np.asarray(table, dtype=np.int64)
        n = self.table.shape[0]
        self.n = n
        self.mul = self.table.tolist()
        self.identity = 0
        if n == 0 or any(self.mul[0][i] != i or self.mul[i][0] != i for i in range(n)):
            raise InputError("element 0 must be the identity")
        inv = [0] * n
        for i, row in enumerate(self.mul):
            inv[i] = row.index(0)
        self.inv = inv
        self.generators = tuple(generators)
        self.label = label
        self.descriptors = descriptors
        self.name = name
        reached = _closure(self.mul, self.generators, n)
        if len(reached) != n:
            raise InputError("generators do not generate the group")

    def __len__(self):
        return self.n

    def __repr__(self):
        return f"FiniteGroup({self.name or 'order ' + str(self.n)})"

    # element arithmetic --------------------------------------------------
    def product(self, elems: Iterable[int]) -> int:
        x = 0
        for g in elems:
            x = self.mul[x][g]
        return x

    def power(self, g: int, k: int) -> int:
        if k < 0:
            g, k = self.inv[g], -k
        x = 0
        for _ in range(k):
            x = self.mul[x][g]
        return x

    def conj(self, g: int, x: int) -> int:
        """``g x g^-1``."""
        return self.mul[self.mul[g][x]][self.inv[g]]

    @cached_property
    def element_orders(self) -> list[int]:
        orders = []
        for g in range(self.n):
            k, x = 1, g
            while x != 0:
                x = self.mul[x][g]
                k += 1
            orders.append(k)
        return orders

    def element_order(self, g: int) -> int:
        return self.element_orders[g]

    @cached_property
    def is_abelian(self) -> bool:
        return bool((self.table == self.table.T).all())

    @cached_property
    def conjugacy_classes(self) -> list[tuple[int, ...]]:
        """Classes ordered by least element; each class sorted."""
        seen = [False] * self.n
        classes = []
        for x in range(self.n):
            if seen[x]:
                continue
            cls = sorted({self.conj(g, x) for g in range(self.n)})
            for y in cls:
                seen[y] = True
            classes.append(tuple(cls))
        return classes

    @cached_property
    def class_of(self) -> list[int]:
        out = [0] * self.n
        for k, cls in enumerate(self.conjugacy_classes):
            for x in cls:
                out[x] = k
        return out

    @cached_property
    def bfs_tree(self):
        """``(order, parent, via)``: breadth-first spanning tree of the Cayley graph.

        Element ``x`` equals ``parent[x] * generators[via[x]]``.
        """
        parent = [-1] * self.n
        via = [-1] * self.n
        order = [0]
        parent[0] = 0
        q = deque([0])
        while q:
            x = q.popleft()
            for k, s in enumerate(self.generators):
                y = self.mul[x][s]
                if parent[y] < 0:
                    parent[y], via[y] = x, k
                    order.append(y)
                    q.append(y)
        return np.array(order), np.array(parent), np.array(via)

    # subgroups -----------------------------------------------------------
    def subgroup(self, gens: Iterable[int]) -> Subgroup:
        return Subgroup(self, tuple(gens))

    @cached_property
    def whole(self) -> Subgroup:
        return Subgroup(self, self.generators)

    @cached_property
    def trivial(self) -> Subgroup:
        return Subgroup(self, ())

    def all_subgroups(self) -> list[Subgroup]:
        """Every subgroup, sorted by (order, members).  Meant for small groups."""
        found: dict[frozenset, Subgroup] = {}
        for g in range(self.n):
            s = Subgroup(self, (g,))
            found.setdefault(s.members, s)
        frontier = list(found.values())
        cyclic = list(found.values())
        while frontier:
            new = []
            for s in frontier:
                for c in cyclic:
                    if c.members <= s.members:
                        continue
                    joined = Subgroup(self, s.generators + c.generators)
                    if joined.members not in found:
                        found[joined.members] = joined
                        new.append(joined)
            frontier = new
        return sorted(found.values(), key=lambda s: (s.order, s.sorted_members))


def _closure(mul, gens, n) -> set[int]:
    seen = {0}
    q = deque([0])
    while q:
        x = q.popleft()
        for s in gens:
            y = mul[x][s]
            if y not in seen:
                seen.add(y)
                q.append(y)
    return seen


@dataclass(frozen=True, eq=False)
class Subgroup:
    parent: FiniteGroup
    generators: tuple[int, ...]
    members: frozenset = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "members", frozenset(_closure(self.parent.mul, self.generators, self.parent.n)))

    def __eq__(self, other):
        return isinstance(other, Subgroup) and other.parent is self.parent and other.members == self.members

    def __hash__(self):
        return hash(self.members)

    def __contains__(self, g):
        return g in self.members

    def __repr__(self):
        return f"Subgroup(order={self.order}, generators={list(self.generators)})"

    @property
    def order(self) -> int:
        return len(self.members)

    @cached_property
    def sorted_members(self) -> tuple[int, ...]:
        return tuple(sorted(self.members))

    @cached_property
    def small_generators(self) -> tuple[int, ...]:
        """Greedy generating set: repeatedly add the least element not yet reached."""
        gens: list[int] = []
        reached = {0}
        for g in self.sorted_members:
            if g not in reached:
                gens.append(g)
                reached = _closure(self.parent.mul, gens, self.parent.n)
        return tuple(gens)

    def conjugate(self, g: int) -> Subgroup:
        """``g H g^-1``."""
        return Subgroup(self.parent, tuple(self.parent.conj(g, h) for h in self.small_generators))

    def intersection(self, other: Subgroup) -> Subgroup:
        common = self.members & other.members
        sub = Subgroup(self.parent, tuple(sorted(common)))
        return Subgroup(self.parent, sub.small_generators)

    def is_normal(self) -> bool:
        G = self.parent
        return all(G.conj(g, h) in self.members for g in G.generators for h in self.small_generators)

    def as_group(self) -> tuple[FiniteGroup, list[int]]:
        """This subgroup as a standalone group plus the map new index -> parent index.

        The result is memoized, so representations built on the standalone
        group stay attached to the same object.
        """
        return self._standalone

    @cached_property
    def _standalone(self) -> tuple[FiniteGroup, list[int]]:
        G = self.parent
        elems = self.sorted_members  # identity first
        pos = {g: i for i, g in enumerate(elems)}
        table = [[pos[G.mul[a][b]] for b in elems] for a in elems]
        gens = [pos[g] for g in self.small_generators]
        return FiniteGroup(table, gens, label=("subgroup", G), name=f"subgroup of order {len(elems)}"), list(elems)


# constructions -------------------------------------------------------------
def group_from_permutations(degree: int, gens: Sequence[Sequence[int]], max_order: int = DEFAULT_MAX_ORDER,
                            name: str = "") -> FiniteGroup:
    """Closure of permutation generators; elements indexed in breadth-first word order."""
    perms = []
    for p in gens:
        p = tuple(int(x) for x in p)
        if sorted(p) != list(range(degree)):
            raise InputError(f"{list(p)} is not a permutation of 0..{degree - 1}")
        perms.append(p)
    ident = tuple(range(degree))
    elements = [ident]
    index = {ident: 0}
    q = deque([ident])
    while q:
        x = q.popleft()
        for s in perms:
            y = tuple(x[s[i]] for i in range(degree))
            if y not in index:
                if len(elements) >= max_order:
                    raise OrderBound(f"closure exceeds {max_order} elements")
                index[y] = len(elements)
                elements.append(y)
                q.append(y)
    table = kernels.perm_mul_table(np.array(elements, dtype=np.int64).reshape(len(elements), degree))
    gen_idx = [index[p] for p in perms]
    return FiniteGroup(table, gen_idx, label=("perm", degree, tuple(perms)), descriptors=elements, name=name)


def cyclic_group(n: int) -> FiniteGroup:
    return group_from_permutations(n, [[(i + 1) % n for i in range(n)]] if n > 1 else [], name=f"C{n}")


def dihedral_group(n: int) -> FiniteGroup:
    """Symmetries of the n-gon, order 2n."""
    rot = [(i + 1) % n for i in range(n)]
    ref = [(-i) % n for i in range(n)]
    return group_from_permutations(n, [rot, ref], name=f"D{n}")


def symmetric_group(n: int) -> FiniteGroup:
    if n < 2:
        return group_from_permutations(max(n, 1), [], name=f"S{n}")
    cyc = [(i + 1) % n for i in range(n)]
    tr = [1, 0] + list(range(2, n))
    return group_from_permutations(n, [tr, cyc], name=f"S{n}")


def alternating_group(n: int) -> FiniteGroup:
    gens = [[1, 2, 0] + list(range(3, n))]
    if n >= 4:
        gens.append([0, 2, 3, 1] + list(range(4, n)))
    return group_from_permutations(n, gens, name=f"A{n}")


def _automorphism_table(A: FpAbelianGroup, matrix) -> list[int]:
    """Action of a presentation-coordinate matrix on the element list of A; raises if not an automorphism."""
    elems = A.elements()
    try:
        images = []
        for r in A.relations:
            img = A.element([sum(r[k] * matrix[k][j] for k in range(len(r))) for j in range(A.generator_count)])
            if not img.is_zero():
                raise NotAnAction("action matrix does not preserve the relations of A")
        for a in elems:
            x = A.lift(a)
            y = [sum(x[k] * matrix[k][j] for k in range(len(x))) for j in range(A.generator_count)]
            images.append(A.index_of(A.element(y)))
    except (IndexError, TypeError) as exc:
        raise NotAnAction(f"malformed action matrix: {exc}") from exc
    if len(set(images)) != len(elems):
        raise NotAnAction("action matrix is not invertible on A")
    return images


def semidirect_product(A: FpAbelianGroup, H: FiniteGroup, action: Sequence, name: str = "") -> FiniteGroup:
    """``A x| H`` with ``(a, h)(a', h') = (a + h.a', h h')``; element index ``a * |H| + h``.

    ``action[k]`` is the matrix (rows = images of presentation generators of A)
    by which ``H.generators[k]`` acts.
    """
    if not A.is_finite:
        raise InputError("A must be finite")
    if len(action) != len(H.generators):
        raise NotAnAction("need one action matrix per generator of H")
    na, nh = int(A.order), H.n
    gen_tables = [_automorphism_table(A, m) for m in action]
    # extend along the Cayley graph of H and check consistency
    act: list[list[int] | None] = [None] * nh
    act[0] = list(range(na))
    order, parent, via = H.bfs_tree
    for x in order[1:]:
        p, s = int(parent[x]), int(via[x])
        act[x] = [act[p][gen_tables[s][a]] for a in range(na)]
    for x in range(nh):
        for k, s in enumerate(H.generators):
            y = H.mul[x][s]
            if act[y] != [act[x][gen_tables[k][a]] for a in range(na)]:
                raise NotAnAction("generator images do not respect the relations of H")
    elems = A.elements()
    a_add = [[A.index_of(a + b) for b in elems] for a in elems]
    table = kernels.semidirect_mul_table(np.array(a_add, dtype=np.int64).reshape(na, na),
                                         np.array(act, dtype=np.int64), H.table)
    gens = [A.index_of(A.snf_generator(k)) * nh for k in range(len(A.moduli))]
    gens += [h for h in H.generators]
    descriptors = [(elems[i // nh], i % nh) for i in range(na * nh)]
    G = FiniteGroup(table, [g for g in gens if g != 0],
                    label=("semidirect", A, H, tuple(tuple(map(tuple, m)) for m in action)),
                    descriptors=descriptors, name=name)
    G.normal_part = Subgroup(G, tuple(A.index_of(e) * nh for e in elems))
    G.complement = Subgroup(G, tuple(H.generators))
    G.action_table = act
    return G


def semidirect_index(G: FiniteGroup, a: GroupElement, h: int) -> int:
    A, H = G.label[1], G.label[2]
    return A.index_of(a) * H.n + h


# cosets ----------------------------------------------------------------------
@dataclass(frozen=True, eq=False)
class CosetSpace:
    """Left cosets ``xH`` with ``G`` acting by left multiplication.

    Cosets are ordered by least element; ``reps[0]`` is the identity.
    """

    group: FiniteGroup
    sub: Subgroup
    reps: tuple[int, ...]
    coset_of: tuple[int, ...]

    def __len__(self):
        return len(self.reps)

    def action(self, g: int) -> tuple[int, ...]:
        G = self.group
        return tuple(self.coset_of[G.mul[g][t]] for t in self.reps)

    def stabilizer_element(self, g: int, k: int, power: int) -> int:
        """``t_k^-1 g^power t_k``, which lies in ``H`` when ``g^power`` fixes coset ``k``."""
        G = self.group
        t = self.reps[k]
        return G.mul[G.mul[G.inv[t]][G.power(g, power)]][t]

    def action_kernel(self) -> frozenset:
        ident = tuple(range(len(self.reps)))
        return frozenset(g for g in range(self.group.n) if self.action(g) == ident)


def cosets(G: FiniteGroup, H: Subgroup) -> CosetSpace:
    coset_of = [-1] * G.n
    reps = []
    for x in range(G.n):
        if coset_of[x] >= 0:
            continue
        k = len(reps)
        reps.append(x)
        for h in H.members:
            coset_of[G.mul[x][h]] = k
    return CosetSpace(G, H, tuple(reps), tuple(coset_of))


def double_cosets(G: FiniteGroup, H1: Subgroup, H2: Subgroup) -> list[int]:
    """Least element of each double coset ``H1 g H2``, ascending."""
    seen = [False] * G.n
    reps = []
    for g in range(G.n):
        if seen[g]:
            continue
        reps.append(g)
        for a in H1.members:
            ag = G.mul[a][g]
            for b in H2.members:
                seen[G.mul[ag][b]] = True
    return reps


def double_coset(G: FiniteGroup, H1: Subgroup, g: int, H2: Subgroup) -> frozenset:
    return frozenset(G.mul[G.mul[a][g]][b] for a in H1.members for b in H2.members)


def is_isomorphic(G1: FiniteGroup, G2: FiniteGroup) -> bool:
    """Search for a bijection matching multiplication tables, driven by generator images."""
    return find_isomorphism(G1, G2) is not None


def find_isomorphism(G1: FiniteGroup, G2: FiniteGroup) -> list[int] | None:
    if G1.n != G2.n or sorted(G1.element_orders) != sorted(G2.element_orders):
        return None
    gens = G1.generators
    order, parent, via = G1.bfs_tree
    candidates = [[y for y in range(G2.n) if G2.element_orders[y] == G1.element_orders[g]] for g in gens]
    for images in itertools.product(*candidates):
        phi = [-1] * G1.n
        phi[0] = 0
        for x in order[1:]:
            phi[x] = G2.mul[phi[parent[x]]][images[via[x]]]
        if len(set(phi)) != G1.n:
            continue
        if all(phi[G1.mul[a][b]] == G2.mul[phi[a]][phi[b]] for a in range(G1.n) for b in gens):
            return phi
    return None


def table_matches(G1: FiniteGroup, G2: FiniteGroup, phi: Sequence[int]) -> bool:
    """Full multiplication-table comparison under a bijection."""
    return all(phi[G1.mul[a][b]] == G2.mul[phi[a]][phi[b]] for a in range(G1.n) for b in range(G1.n))


def lcm_of_orders(G: FiniteGroup) -> int:
    return math.lcm(*G.element_orders)
