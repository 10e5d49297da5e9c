"""Fixed families of small groups and covers used by the property suites."""
from __future__ import annotations

import itertools
from typing import Iterator

from .abgroup import fp_group
from .covers import TameCover, make_cover
from .finitegroup import (FiniteGroup, _closure, alternating_group, cyclic_group, dihedral_group,
                          semidirect_product, symmetric_group)
from .orbifold import OrbifoldCurve


def _cyclic_module(n: int):
    return fp_group(1, [[n]])


def split_groups() -> dict[str, FiniteGroup]:
    """Semidirect products ``A x| H`` with ``A`` abelian; every one is monomial."""
    Z2sq = fp_group(2, [[2, 0], [0, 2]])
    Z3sq = fp_group(2, [[3, 0], [0, 3]])
    return {
        "Z3:Z2": semidirect_product(_cyclic_module(3), cyclic_group(2), [[[-1]]], name="Z3:Z2"),
        "Z3:Z4": semidirect_product(_cyclic_module(3), cyclic_group(4), [[[-1]]], name="Z3:Z4"),
        "Z2^2:Z3": semidirect_product(Z2sq, cyclic_group(3), [[[0, 1], [1, 1]]], name="Z2^2:Z3"),
        "Z7:Z3": semidirect_product(_cyclic_module(7), cyclic_group(3), [[[2]]], name="Z7:Z3"),
        "Z5:Z4": semidirect_product(_cyclic_module(5), cyclic_group(4), [[[2]]], name="Z5:Z4"),
        "Z4:Z2": semidirect_product(_cyclic_module(4), cyclic_group(2), [[[-1]]], name="Z4:Z2"),
        "Z3^2:Z2": semidirect_product(Z3sq, cyclic_group(2), [[[-1, 0], [0, -1]]], name="Z3^2:Z2"),
        "Z3xZ2": semidirect_product(_cyclic_module(3), cyclic_group(2), [[[1]]], name="Z3xZ2"),
        "Z5:1": semidirect_product(_cyclic_module(5), cyclic_group(1), [], name="Z5:1"),
    }


def corpus_groups() -> dict[str, FiniteGroup]:
    """Groups of order at most 24: cyclic, dihedral, S3, S4, A4 and the split family."""
    out: dict[str, FiniteGroup] = {}
    for n in (1, 2, 3, 4, 5, 6, 8):
        out[f"C{n}"] = cyclic_group(n)
    for n in (4, 5, 6):
        out[f"D{n}"] = dihedral_group(n)
    out["S3"] = symmetric_group(3)
    out["A4"] = alternating_group(4)
    out["S4"] = symmetric_group(4)
    out.update(split_groups())
    return out


def mackey_groups() -> dict[str, FiniteGroup]:
    """The subset used for the exhaustive subgroup-pair sweep."""
    full = corpus_groups()
    keep = ["C1", "C2", "C4", "C6", "D4", "D5", "D6", "S3", "A4", "S4", "Z3:Z2", "Z3:Z4", "Z2^2:Z3", "Z7:Z3"]
    return {k: full[k] for k in keep}


def _canonical(G: FiniteGroup, tup: tuple[int, ...]) -> tuple[int, ...]:
    return min(tuple(G.conj(g, x) for x in tup) for g in range(G.n))


def monodromy_tuples(G: FiniteGroup, length: int) -> Iterator[tuple[int, ...]]:
    """Generating tuples with product one and no trivial entry, one per conjugation class, ascending."""
    seen = set()
    nontrivial = range(1, G.n)
    for head in itertools.product(nontrivial, repeat=length - 1):
        last = G.inv[G.product(head)]
        if last == 0:
            continue
        tup = head + (last,)
        can = _canonical(G, tup)
        if can in seen:
            continue
        seen.add(can)
        if len(_closure(G.mul, tup, G.n)) == G.n:
            yield can


def covers_for(G: FiniteGroup, max_points: int = 4, max_per_length: int | None = None) -> list[TameCover]:
    """Galois covers of the minimal orbifold line with 2..max_points branch points."""
    out = []
    for n in range(2, max_points + 1):
        count = 0
        for tup in sorted(monodromy_tuples(G, n)):
            base = OrbifoldCurve(0, tuple((f"p{i}", G.element_order(g)) for i, g in enumerate(tup)))
            out.append(make_cover(base, G, tup))
            count += 1
            if max_per_length is not None and count >= max_per_length:
                break
    return out
