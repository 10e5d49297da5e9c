"""Finitely presented abelian groups in Smith normal form coordinates.

A group is ``Z^n / (row space of R)`` for an integer relation matrix ``R``
(rows are relations).  All arithmetic uses Python integers.  Values in Q/Z
are ``Fraction`` objects reduced into ``[0, 1)``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, reduce
from typing import Iterable, Sequence

from .errors import InfiniteGroup, InputError, RelationViolation

Matrix = list[list[int]]


def qz(x) -> Fraction:
    """Reduce a rational into the representative of Q/Z lying in [0, 1)."""
    x = Fraction(x)
    return x - math.floor(x)


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]], inner: int | None = None) -> Matrix:
    if inner is None:
        inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum(row[k] * b[k][j] for k in range(inner)) for j in range(cols)] for row in a]


def vecmat(v: Sequence[int], m: Sequence[Sequence[int]], cols: int | None = None) -> list[int]:
    if cols is None:
        cols = len(m[0]) if m else 0
    return [sum(v[k] * m[k][j] for k in range(len(v))) for j in range(cols)]


def smith_normal_form(M: Sequence[Sequence[int]], cols: int | None = None):
    """Return ``(U, D, V)`` with ``U @ M @ V == D`` diagonal, ``d1 | d2 | ...``.

    ``cols`` is needed only when ``M`` has no rows.  Pivots are the entry of
    least absolute value in the active block, first in row-major order.
    """
    U, D, V, _ = _snf(M, cols)
    return U, D, V


def _snf(M, cols=None):
    m = len(M)
    n = len(M[0]) if m else (cols or 0)
    A = [list(map(int, row)) for row in M]
    for row in A:
        if len(row) != n:
            raise InputError("ragged relation matrix")
    U = identity(m)
    V = identity(n)
    Vinv = identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]
        Vinv[i], Vinv[j] = Vinv[j], Vinv[i]

    def add_row(dst, src, c):  # row_dst += c * row_src
        A[dst] = [x + c * y for x, y in zip(A[dst], A[src])]
        U[dst] = [x + c * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, c):  # col_dst += c * col_src
        for row in A:
            row[dst] += c * row[src]
        for row in V:
            row[dst] += c * row[src]
        Vinv[src] = [x - c * y for x, y in zip(Vinv[src], Vinv[dst])]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    a = A[i][j]
                    if a and (best is None or abs(a) < abs(A[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                return U, A, V, Vinv
            if best[0] != t:
                swap_rows(t, best[0])
            if best[1] != t:
                swap_cols(t, best[1])
            p = A[t][t]
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
            if any(A[i][t] for i in range(t + 1, m)) or any(A[t][j] for j in range(t + 1, n)):
                continue
            bad = next((i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p), None)
            if bad is not None:
                add_row(t, bad, 1)
                continue
            break
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
    return U, A, V, Vinv


@dataclass(frozen=True, eq=False)
class FpAbelianGroup:
    """``Z^generator_count`` modulo the row space of ``relations``."""

    generator_count: int
    relations: tuple[tuple[int, ...], ...] = ()
    U: Matrix = field(init=False, repr=False)
    D: Matrix = field(init=False, repr=False)
    V: Matrix = field(init=False, repr=False)
    Vinv: Matrix = field(init=False, repr=False)
    invariant_factors: tuple[int, ...] = field(init=False)
    free_rank: int = field(init=False)
    _coord_cols: tuple[int, ...] = field(init=False, repr=False)
    moduli: tuple[int, ...] = field(init=False, repr=False)

    def __post_init__(self):
        rels = tuple(tuple(int(x) for x in r) for r in self.relations)
        for r in rels:
            if len(r) != self.generator_count:
                raise InputError(f"relation {list(r)} has length {len(r)}, expected {self.generator_count}")
        object.__setattr__(self, "relations", rels)
        U, D, V, Vinv = _snf([list(r) for r in rels], self.generator_count)
        diag = [D[i][i] if i < len(D) else 0 for i in range(self.generator_count)]
        cols = tuple(i for i, d in enumerate(diag) if d != 1)
        for name, val in (("U", U), ("D", D), ("V", V), ("Vinv", Vinv)):
            object.__setattr__(self, name, val)
        object.__setattr__(self, "_coord_cols", cols)
        object.__setattr__(self, "moduli", tuple(diag[i] for i in cols))
        object.__setattr__(self, "invariant_factors", tuple(d for d in self.moduli if d > 1))
        object.__setattr__(self, "free_rank", sum(1 for d in self.moduli if d == 0))

    # structure -----------------------------------------------------------
    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def order(self) -> int | float:
        if self.free_rank:
            return math.inf
        return math.prod(self.invariant_factors)

    @property
    def exponent(self) -> int:
        """Exponent of the torsion subgroup."""
        return reduce(math.lcm, self.invariant_factors, 1)

    def describe(self) -> str:
        parts = ["Z"] * self.free_rank + [f"Z/{d}" for d in self.invariant_factors]
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {"generators": self.generator_count, "relations": [list(r) for r in self.relations]}

    # elements ------------------------------------------------------------
    def element(self, x: Sequence[int]) -> GroupElement:
        """Class of the presentation vector ``x``."""
        if len(x) != self.generator_count:
            raise InputError(f"vector of length {len(x)} for a group on {self.generator_count} generators")
        y = vecmat(x, self.V, self.generator_count)
        return self.from_coords(y[c] for c in self._coord_cols)

    def from_coords(self, coords: Iterable[int]) -> GroupElement:
        red = tuple(c % d if d else c for c, d in zip(coords, self.moduli))
        return GroupElement(self, red)

    def lift(self, g: GroupElement) -> list[int]:
        """A presentation vector representing ``g``."""
        y = [0] * self.generator_count
        for c, v in zip(self._coord_cols, g.coords):
            y[c] = v
        return vecmat(y, self.Vinv, self.generator_count)

    @cached_property
    def zero(self) -> GroupElement:
        return GroupElement(self, (0,) * len(self.moduli))

    def generator(self, i: int) -> GroupElement:
        """Class of the ``i``-th presentation generator."""
        x = [0] * self.generator_count
        x[i] = 1
        return self.element(x)

    def snf_generator(self, k: int) -> GroupElement:
        c = [0] * len(self.moduli)
        c[k] = 1
        return self.from_coords(c)

    def elements(self) -> list[GroupElement]:
        """All elements in lexicographic order of canonical coordinates."""
        if self.free_rank:
            raise InfiniteGroup("cannot enumerate an infinite group")
        return [GroupElement(self, c) for c in itertools.product(*(range(d) for d in self.moduli))]

    def index_of(self, g: GroupElement) -> int:
        """Position of ``g`` in :meth:`elements`."""
        idx = 0
        for c, d in zip(g.coords, self.moduli):
            idx = idx * d + c
        return idx


@dataclass(frozen=True)
class GroupElement:
    parent: FpAbelianGroup = field(compare=False, hash=False)
    coords: tuple[int, ...]

    def _check(self, other):
        if not isinstance(other, GroupElement) or other.parent is not self.parent:
            raise InputError("elements of different groups")

    def __eq__(self, other):
        return isinstance(other, GroupElement) and other.parent is self.parent and other.coords == self.coords

    def __hash__(self):
        return hash((id(self.parent), self.coords))

    def __add__(self, other):
        self._check(other)
        return self.parent.from_coords(a + b for a, b in zip(self.coords, other.coords))

    def __neg__(self):
        return self.parent.from_coords(-a for a in self.coords)

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, n: int):
        return self.parent.from_coords(n * a for a in self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)


def fp_group(generator_count: int, relations: Iterable[Sequence[int]] = ()) -> FpAbelianGroup:
    return FpAbelianGroup(generator_count, tuple(tuple(r) for r in relations))


def element_order(g: GroupElement) -> int | float:
    """Least ``n >= 1`` with ``n g = 0``; ``math.inf`` if a free coordinate is nonzero."""
    n = 1
    for c, d in zip(g.coords, g.parent.moduli):
        if d == 0:
            if c:
                return math.inf
        else:
            n = math.lcm(n, d // math.gcd(c, d))
    return n


@dataclass(frozen=True, eq=False)
class Hom:
    """Homomorphism given on presentation generators: row ``j`` is the image of generator ``j``."""

    source: FpAbelianGroup
    target: FpAbelianGroup
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        mat = tuple(tuple(int(x) for x in row) for row in self.matrix)
        if len(mat) != self.source.generator_count or any(len(r) != self.target.generator_count for r in mat):
            raise InputError("homomorphism matrix has the wrong shape")
        object.__setattr__(self, "matrix", mat)

    def image_vector(self, x: Sequence[int]) -> list[int]:
        return vecmat(x, self.matrix, self.target.generator_count)

    def __call__(self, g: GroupElement) -> GroupElement:
        return self.target.element(self.image_vector(self.source.lift(g)))

    def check(self) -> Hom:
        for r in self.source.relations:
            if not self.target.element(self.image_vector(r)).is_zero():
                raise RelationViolation(f"relation {list(r)} does not map to zero")
        return self

    def compose(self, inner: Hom) -> Hom:
        """``self o inner``."""
        return Hom(inner.source, self.target, tuple(map(tuple, matmul(inner.matrix, self.matrix))))

    def preimage(self, g: GroupElement) -> GroupElement | None:
        """Some ``x`` with ``self(x) == g``, or ``None``."""
        return _solve(self, self.target.lift(g))


def _left_kernel(B: Matrix, cols: int) -> list[list[int]]:
    """Integer basis of ``{u : u B = 0}``."""
    U, D, _, _ = _snf(B, cols)
    rank = sum(1 for i in range(min(len(D), cols)) if D[i][i])
    return [U[i] for i in range(rank, len(B))]


def _solve(f: Hom, y: Sequence[int]) -> GroupElement | None:
    src, tgt = f.source, f.target
    B = [list(r) for r in f.matrix] + [list(r) for r in tgt.relations]
    n = tgt.generator_count
    U, D, V, _ = _snf(B, n)
    yv = vecmat(y, V, n)
    v = [0] * len(B)
    for i in range(n):
        d = D[i][i] if i < len(D) else 0
        if d == 0:
            if yv[i]:
                return None
        else:
            if yv[i] % d:
                return None
            v[i] = yv[i] // d
    w = vecmat(v, U, len(B))
    return src.element(w[: src.generator_count])


def subgroup_generated(G: FpAbelianGroup, gens: Sequence[GroupElement]) -> tuple[FpAbelianGroup, Hom]:
    """The subgroup spanned by ``gens``, presented on those generators, with its inclusion."""
    K = [G.lift(g) for g in gens]
    s = len(K)
    rels = [u[:s] for u in _left_kernel(K + [list(r) for r in G.relations], G.generator_count)]
    rels = [r for r in rels if any(r)]
    sub = fp_group(s, rels)
    return sub, Hom(sub, G, tuple(map(tuple, K)))


def kernel(f: Hom) -> tuple[FpAbelianGroup, Hom]:
    f.check()
    G = f.source
    B = [list(r) for r in f.matrix] + [list(r) for r in f.target.relations]
    gens = []
    for u in _left_kernel(B, f.target.generator_count):
        g = G.element(u[: G.generator_count])
        if not g.is_zero() and g not in gens:
            gens.append(g)
    return subgroup_generated(G, gens)


def n_torsion(G: FpAbelianGroup, n: int) -> tuple[FpAbelianGroup, Hom]:
    if n < 1:
        raise InputError("n must be positive")
    gens = []
    for k, d in enumerate(G.moduli):
        if d > 1 and math.gcd(n, d) > 1:
            c = [0] * len(G.moduli)
            c[k] = d // math.gcd(n, d)
            gens.append(G.from_coords(c))
    return subgroup_generated(G, gens)


Character = tuple[Fraction, ...]


def dual_characters(A: FpAbelianGroup) -> list[Character]:
    """Every homomorphism ``A -> Q/Z``, as values on the SNF generators of ``A``."""
    if A.free_rank:
        raise InfiniteGroup("character group of an infinite group is not finite")
    return [
        tuple(Fraction(c, d) for c, d in zip(cs, A.moduli))
        for cs in itertools.product(*(range(d) for d in A.moduli))
    ]


def evaluate_character(chi: Character, g: GroupElement) -> Fraction:
    return qz(sum((v * c for v, c in zip(chi, g.coords)), Fraction(0)))
