"""JSON descriptions of groups, elements, characters and covers.

Every parser raises :class:`InputError` naming the offending field, so the
command-line layer can report it and exit with status 2.
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Mapping

from .abgroup import fp_group
from .covers import TameCover, extend_orbifold, make_cover
from .errors import InputError
from .finitegroup import (DEFAULT_MAX_ORDER, FiniteGroup, Subgroup, alternating_group, cyclic_group,
                          dihedral_group, group_from_permutations, semidirect_product, symmetric_group)
from .orbifold import OrbifoldCurve
from .reptheory import Character1D


def load_json(text: str, source: str = "input") -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{source}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def field(data: Mapping, key: str, path: str, kind=None, default=...):
    if not isinstance(data, Mapping):
        raise InputError(f"{path or '<root>'}: expected an object")
    if key not in data:
        if default is ...:
            raise InputError(f"{_join(path, key)}: missing required field")
        return default
    val = data[key]
    if kind is not None and not isinstance(val, kind):
        names = kind.__name__ if isinstance(kind, type) else "/".join(k.__name__ for k in kind)
        raise InputError(f"{_join(path, key)}: expected {names}, got {type(val).__name__}")
    return val


def _p(path: str) -> str:
    return f"{path}." if path else ""


def _join(path: str, key) -> str:
    return f"{_p(path)}{key}" if path else str(key)


def parse_rational(v, path: str) -> Fraction:
    if isinstance(v, bool) or not isinstance(v, (int, str)):
        raise InputError(f"{path}: expected an integer or a \"p/q\" string")
    try:
        return Fraction(v)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"{path}: {v!r} is not a rational number") from exc


def parse_int(v, path: str) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise InputError(f"{path}: expected an integer")
    return v


# orbifolds -------------------------------------------------------------------
def parse_orbifold(data, path: str = "orbifold") -> OrbifoldCurve:
    genus = parse_int(field(data, "genus", path, default=0), _join(path, "genus"))
    pts = field(data, "points", path, list, default=[])
    out = []
    for i, p in enumerate(pts):
        pp = f"{_p(path)}points[{i}]"
        label = field(p, "label", pp, (str, int))
        r = parse_int(field(p, "r", pp), _join(pp, "r"))
        out.append((str(label), r))
    return OrbifoldCurve(genus, tuple(out))


# groups ------------------------------------------------------------------------
_NAMED = {"C": cyclic_group, "D": dihedral_group, "S": symmetric_group, "A": alternating_group}


def parse_group(data, path: str = "group", max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    """``{"name": "S3"}``, ``{"perm": [[...], ...]}`` or ``{"semidirect": {"A", "H", "action"}}``."""
    if not isinstance(data, Mapping):
        raise InputError(f"{path}: expected an object")
    if "name" in data:
        name = field(data, "name", path, str)
        kind, num = name[:1], name[1:]
        if kind not in _NAMED or not num.isdigit() or int(num) < 1:
            raise InputError(f"{_p(path)}name: unknown group {name!r} (use C<n>, D<n>, S<n> or A<n>)")
        G = _NAMED[kind](int(num))
        if G.n > max_order:
            raise InputError(f"{path}: order {G.n} exceeds --max-order {max_order}")
        return G
    if "perm" in data:
        gens = field(data, "perm", path, list)
        if not gens or not all(isinstance(g, list) for g in gens):
            raise InputError(f"{_p(path)}perm: expected a non-empty list of permutations")
        degree = len(gens[0])
        if any(len(g) != degree for g in gens):
            raise InputError(f"{_p(path)}perm: permutations of different lengths")
        return group_from_permutations(degree, gens, max_order=max_order)
    if "semidirect" in data:
        sd = field(data, "semidirect", path, dict)
        sp = _join(path, "semidirect")
        a = field(sd, "A", sp, dict)
        ngen = parse_int(field(a, "generators", _join(sp, "A")), _join(sp, "A.generators"))
        rels = field(a, "relations", _join(sp, "A"), list, default=[])
        A = fp_group(ngen, rels)
        H = parse_group(field(sd, "H", sp), _join(sp, "H"), max_order)
        action = field(sd, "action", sp, list)
        if A.is_finite and A.order * H.n > max_order:
            raise InputError(f"{path}: order {A.order * H.n} exceeds --max-order {max_order}")
        return semidirect_product(A, H, action)
    raise InputError(f"{path}: expected one of 'name', 'perm', 'semidirect'")


def parse_element(G: FiniteGroup, spec, path: str) -> int:
    """Element index, permutation list, or ``{"a": [...], "h": ...}`` for semidirect products."""
    if isinstance(spec, bool):
        raise InputError(f"{path}: expected an element")
    if isinstance(spec, int):
        if not 0 <= spec < G.n:
            raise InputError(f"{path}: element index {spec} out of range 0..{G.n - 1}")
        return spec
    if isinstance(spec, list):
        if not (isinstance(G.label, tuple) and G.label[0] == "perm"):
            raise InputError(f"{path}: permutation given for a non-permutation group")
        try:
            return G.descriptors.index(tuple(spec))
        except ValueError:
            raise InputError(f"{path}: {spec} is not an element of the group") from None
    if isinstance(spec, Mapping):
        if not (isinstance(G.label, tuple) and G.label[0] == "semidirect"):
            raise InputError(f"{path}: pair given for a group that is not a semidirect product")
        A, H = G.label[1], G.label[2]
        a = field(spec, "a", path, list)
        if len(a) != A.generator_count:
            raise InputError(f"{_p(path)}a: expected {A.generator_count} coordinates")
        h = parse_element(H, field(spec, "h", path, default=0), _join(path, "h"))
        return A.index_of(A.element([parse_int(x, f"{_p(path)}a") for x in a])) * H.n + h
    raise InputError(f"{path}: expected an index, a permutation or a pair")


def parse_subgroup(G: FiniteGroup, spec, path: str) -> Subgroup:
    if not isinstance(spec, list):
        raise InputError(f"{path}: expected a list of generators")
    return Subgroup(G, tuple(parse_element(G, g, f"{path}[{i}]") for i, g in enumerate(spec)))


def parse_character(G: FiniteGroup, spec, path: str) -> Character1D:
    """``{"H": [gens], "chi": {index: value}}`` or ``"chi": [values aligned with H]``.

    Dictionary keys are element indices; generators of ``H`` left out get 0.
    """
    H = parse_subgroup(G, field(spec, "H", path, list), _join(path, "H"))
    raw = field(spec, "chi", path, (dict, list), default={})
    gens = [parse_element(G, g, f"{_p(path)}H[{i}]") for i, g in enumerate(spec["H"])]
    if isinstance(raw, list):
        if len(raw) != len(gens):
            raise InputError(f"{_p(path)}chi: expected {len(gens)} values")
        vals = {g: parse_rational(v, f"{_p(path)}chi[{i}]") for i, (g, v) in enumerate(zip(gens, raw))}
    else:
        vals = {}
        for k, v in raw.items():
            try:
                g = int(k)
            except ValueError:
                raise InputError(f"{_p(path)}chi: key {k!r} is not an element index") from None
            vals[parse_element(G, g, f"{_p(path)}chi")] = parse_rational(v, f"{_p(path)}chi.{k}")
        for g in gens:
            vals.setdefault(g, Fraction(0))
    return Character1D(H, vals)


def parse_cover(data, path: str = "cover", max_order: int = DEFAULT_MAX_ORDER) -> TameCover:
    """``{"orbifold", "group", "tuple", "H"?, "enrich"?}``; ``"base"`` is accepted for ``"orbifold"``."""
    key = "base" if isinstance(data, Mapping) and "base" in data and "orbifold" not in data else "orbifold"
    base = parse_orbifold(field(data, key, path), _join(path, key))
    G = parse_group(field(data, "group", path), _join(path, "group"), max_order)
    tup = [parse_element(G, g, f"{_p(path)}tuple[{i}]") for i, g in enumerate(field(data, "tuple", path, list))]
    H = parse_subgroup(G, field(data, "H", path, list), _join(path, "H")) if "H" in data else None
    cover = make_cover(base, G, tup, H)
    enrich = field(data, "enrich", path, dict, default=None)
    if enrich:
        cover = extend_orbifold(cover, {str(k): parse_int(v, f"{_p(path)}enrich.{k}") for k, v in enrich.items()})
    return cover
