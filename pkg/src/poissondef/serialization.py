"""
JSON interchange for algebras, Poisson pairs, multilinear maps and jets.

All indices are 1-based.  Rationals are written as ``"p/q"`` strings (``"p"``
when integral); integers are also accepted on input.  Output is canonical:
zero entries omitted, entries in lexicographic index order, keys sorted.
"""

from __future__ import annotations

import json

from .algebra import Algebra, PoissonPair
from .linalg import Subspace, as_rational, format_rational
from .multilinear import MultilinearMap


class SchemaError(ValueError):
    """Malformed input; the message names the offending field."""


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def _field(obj, key, path):
    if not isinstance(obj, dict):
        raise SchemaError(f"{path or '<root>'}: expected an object")
    if key not in obj:
        raise SchemaError(f"{path + '.' if path else ''}{key}: missing field")
    return obj[key]


def _int(x, path, lo=None, hi=None):
    if isinstance(x, bool) or not isinstance(x, int):
        raise SchemaError(f"{path}: expected an integer, got {x!r}")
    if lo is not None and not lo <= x <= hi:
        raise SchemaError(f"{path}: index {x} outside {lo}..{hi}")
    return x


def _val(x, path):
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise SchemaError(f"{path}: expected a 'p/q' string or integer, got {x!r}")
    try:
        return as_rational(x)
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"{path}: {exc}") from None


def _dim(obj, path=""):
    n = _int(_field(obj, "dim", path), f"{path + '.' if path else ''}dim")
    if n < 1:
        raise SchemaError(f"{path + '.' if path else ''}dim: must be positive")
    return n


# --------------------------------------------------------------------------
# multilinear maps


def map_to_json(m: MultilinearMap) -> dict:
    return {
        "arity": m.arity,
        "dim": m.dim,
        "entries": [{"in": list(ins), "out": s, "val": format_rational(v)} for ins, s, v in m.entries()],
    }


def map_from_json(obj, path: str = "") -> MultilinearMap:
    p = path + "." if path else ""
    n = _dim(obj, path)
    k = _int(_field(obj, "arity", path), p + "arity")
    if not 1 <= k <= 4:
        raise SchemaError(f"{p}arity: must be between 1 and 4")
    entries = _field(obj, "entries", path)
    if not isinstance(entries, list):
        raise SchemaError(f"{p}entries: expected a list")
    out = []
    for idx, e in enumerate(entries):
        ep = f"{p}entries[{idx}]"
        ins = _field(e, "in", ep)
        if not isinstance(ins, list) or len(ins) != k:
            raise SchemaError(f"{ep}.in: expected a list of {k} indices")
        ins = tuple(_int(i, f"{ep}.in[{a}]", 1, n) for a, i in enumerate(ins))
        s = _int(_field(e, "out", ep), f"{ep}.out", 1, n)
        out.append((ins, s, _val(_field(e, "val", ep), f"{ep}.val")))
    return MultilinearMap.from_entries(k, n, out)


# --------------------------------------------------------------------------
# algebras and pairs


def _product_list(m: MultilinearMap) -> list:
    return [{"i": i, "j": j, "k": s, "val": format_rational(v)} for (i, j), s, v in m.entries()]


def _product_from_list(rows, n, path) -> MultilinearMap:
    if not isinstance(rows, list):
        raise SchemaError(f"{path}: expected a list")
    out = []
    for idx, e in enumerate(rows):
        ep = f"{path}[{idx}]"
        i = _int(_field(e, "i", ep), f"{ep}.i", 1, n)
        j = _int(_field(e, "j", ep), f"{ep}.j", 1, n)
        k = _int(_field(e, "k", ep), f"{ep}.k", 1, n)
        out.append(((i, j), k, _val(_field(e, "val", ep), f"{ep}.val")))
    return MultilinearMap.from_entries(2, n, out)


def algebra_to_json(a: Algebra) -> dict:
    return {"dim": a.dim, "product": _product_list(a.mu)}


def algebra_from_json(obj, path: str = "") -> Algebra:
    n = _dim(obj, path)
    return Algebra(_product_from_list(_field(obj, "product", path), n, (path + "." if path else "") + "product"))


def pair_to_json(p: PoissonPair) -> dict:
    return {"dim": p.dim, "bullet": _product_list(p.bullet), "bracket": _product_list(p.bracket)}


def pair_from_json(obj, path: str = "") -> PoissonPair:
    n = _dim(obj, path)
    p = path + "." if path else ""
    bullet = _product_from_list(_field(obj, "bullet", path), n, p + "bullet")
    bracket = _product_from_list(_field(obj, "bracket", path), n, p + "bracket")
    try:
        return PoissonPair(bullet, bracket)
    except ValueError as exc:
        raise SchemaError(f"{path or '<root>'}: {exc}") from None


def structure_from_json(obj, path: str = ""):
    """An :class:`Algebra` (``"product"``) or a :class:`PoissonPair` (``"bullet"``/``"bracket"``)."""
    if isinstance(obj, dict) and "product" in obj:
        return algebra_from_json(obj, path)
    if isinstance(obj, dict) and ("bullet" in obj or "bracket" in obj):
        return pair_from_json(obj, path)
    raise SchemaError(f"{path or '<root>'}: expected an algebra ('product') or a Poisson pair ('bullet', 'bracket')")


def bracket_from_json(obj) -> MultilinearMap:
    """A bracket given as a bilinear map, a pair, or a product list."""
    if isinstance(obj, dict) and "entries" in obj:
        m = map_from_json(obj)
        if m.arity != 2:
            raise SchemaError("arity: a bracket must be bilinear")
        return m
    if isinstance(obj, dict) and "bracket" in obj:
        return _product_from_list(obj["bracket"], _dim(obj), "bracket")
    if isinstance(obj, dict) and "product" in obj:
        return algebra_from_json(obj).mu
    raise SchemaError("<root>: expected a bracket as 'entries', 'bracket' or 'product'")


# --------------------------------------------------------------------------
# spaces and jets


def subspace_to_json(space: Subspace, arity: int, n: int) -> dict:
    basis = [map_to_json(MultilinearMap.from_vector(arity, n, v)) for v in space.basis]
    return {"arity": arity, "ambient_dim": space.ambient_dim, "dim": space.dim, "basis": basis}


def jet_to_json(base: Algebra, terms) -> dict:
    return {"base": algebra_to_json(base), "terms": [map_to_json(t) for t in terms]}


def jet_from_json(obj):
    """(base Algebra, list of terms); the caller builds the jet so base checks raise there."""
    base_obj = _field(obj, "base", "")
    base = structure_from_json(base_obj, "base")
    terms = _field(obj, "terms", "")
    if not isinstance(terms, list):
        raise SchemaError("terms: expected a list")
    out = []
    for i, t in enumerate(terms):
        m = map_from_json(t, f"terms[{i}]")
        if m.arity != 2:
            raise SchemaError(f"terms[{i}].arity: jet terms are bilinear")
        if m.dim != base.dim:
            raise SchemaError(f"terms[{i}].dim: term has dim {m.dim}, base has dim {base.dim}")
        out.append(m)
    return base, out
