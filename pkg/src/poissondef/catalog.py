"""
Complex Poisson algebras of dimension 2 and 3 (rational points).

Products are written on the basis e_1, ..., e_n with 1-based indices.
Unlisted products are zero; bullet rows are stored symmetrized and brackets
skew-completed.  ``P_5^3`` and ``P_7^3`` take a switch ``a`` in {0, 1}
selecting whether the bracket ``{e_2, e_3} = e_3`` is present, and
``P_12^3`` takes an arbitrary Lie bracket.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .algebra import PoissonPair, verify
from .linalg import as_rational
from .multilinear import MultilinearMap


class UnknownEntry(KeyError):
    pass


class BadParameter(ValueError):
    pass


@dataclass(frozen=True)
class Parameter:
    name: str
    domain: str  # "{0,1}", "Q" or "lie-bracket"

    def check(self, value):
        if self.domain == "lie-bracket":
            return _as_bracket(value)
        try:
            q = as_rational(value)
        except (TypeError, ValueError) as exc:
            raise BadParameter(f"parameter {self.name}: {exc}") from None
        if self.domain == "{0,1}" and q not in (0, 1):
            raise BadParameter(f"parameter {self.name} must be 0 or 1, got {value}")
        return q


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    dim: int
    params: tuple
    build: Callable  # (**params) -> (bullet rows, bracket rows)

    def signature(self) -> str:
        if not self.params:
            return self.name
        return f"{self.name}(" + ", ".join(f"{p.name} in {p.domain}" for p in self.params) + ")"


def _bullet(n, rows):
    entries = []
    for (i, j), out in rows.items():
        for k, v in out.items():
            entries.append(((i, j), k, v))
            if i != j:
                entries.append(((j, i), k, v))
    return MultilinearMap.from_entries(2, n, entries)


def _bracket(n, rows):
    entries = []
    for (i, j), out in rows.items():
        for k, v in out.items():
            entries.append(((i, j), k, v))
            entries.append(((j, i), k, -as_rational(v)))
    return MultilinearMap.from_entries(2, n, entries)


def _unit(n, upto):
    """e_1 . e_i = e_i for i = 1..upto."""
    return {(1, i): {i: 1} for i in range(1, upto + 1)}


def _as_bracket(value) -> MultilinearMap:
    if isinstance(value, PoissonPair):
        value = value.bracket
    if not isinstance(value, MultilinearMap) or value.arity != 2:
        raise BadParameter("bracket must be a bilinear MultilinearMap")
    if value.swapped() != -value:
        raise BadParameter("bracket is not skew-symmetric")
    report = verify(PoissonPair(MultilinearMap.zero(2, value.dim), value))
    if not report.jacobi:
        raise BadParameter("bracket fails the Jacobi identity")
    return value


def sl2_bracket() -> MultilinearMap:
    """{e1,e2} = 2e2, {e1,e3} = -2e3, {e2,e3} = e1."""
    return _bracket(3, {(1, 2): {2: 2}, (1, 3): {3: -2}, (2, 3): {1: 1}})


def heisenberg_bracket() -> MultilinearMap:
    """{e1,e2} = e3."""
    return _bracket(3, {(1, 2): {3: 1}})


def _simple(n, bullet_rows, bracket_rows=None):
    def build():
        return _bullet(n, bullet_rows), _bracket(n, bracket_rows or {})
    return build


def _switched(n, bullet_rows, bracket_rows):
    def build(a):
        return _bullet(n, bullet_rows), _bracket(n, bracket_rows if a == 1 else {})
    return build


def _p5_2(a):
    return _bullet(2, {}), _bracket(2, {(1, 2): {2: a}})


def _p10_3(a, b):
    return _bullet(3, {(1, 1): {2: 1}}), _bracket(3, {(1, 3): {2: a, 3: b}})


def _p12_3(bracket):
    return MultilinearMap.zero(2, bracket.dim), bracket


_A01 = Parameter("a", "{0,1}")

_ENTRIES = [
    CatalogEntry("P_1^2", 2, (), _simple(2, {**_unit(2, 2), (2, 2): {2: 1}})),
    CatalogEntry("P_2^2", 2, (), _simple(2, _unit(2, 2))),
    CatalogEntry("P_3^2", 2, (), _simple(2, {(1, 1): {2: 1}})),
    CatalogEntry("P_4^2", 2, (), _simple(2, {(1, 1): {1: 1}})),
    CatalogEntry("P_5^2", 2, (_A01,), _p5_2),
    CatalogEntry("P_1^3", 3, (), _simple(3, {**_unit(3, 3), (2, 2): {2: 1}, (3, 3): {3: 1}})),
    CatalogEntry("P_2^3", 3, (), _simple(3, {**_unit(3, 3), (2, 2): {2: 1}, (3, 3): {2: 1, 1: -1}})),
    CatalogEntry("P_3^3", 3, (), _simple(3, {**_unit(3, 3), (2, 2): {2: 1}})),
    CatalogEntry("P_4^3", 3, (), _simple(3, {**_unit(3, 3), (3, 3): {2: 1}})),
    CatalogEntry("P_5^3", 3, (_A01,), _switched(3, _unit(3, 3), {(2, 3): {3: 1}})),
    CatalogEntry("P_6^3", 3, (), _simple(3, {**_unit(3, 2), (2, 2): {2: 1}})),
    CatalogEntry("P_7^3", 3, (_A01,), _switched(3, {(1, 1): {1: 1}}, {(2, 3): {3: 1}})),
    CatalogEntry("P_8^3", 3, (), _simple(3, _unit(3, 2))),
    CatalogEntry("P_9^3", 3, (), _simple(3, {(1, 1): {1: 1}, (2, 2): {3: 1}})),
    CatalogEntry("P_10^3", 3, (Parameter("a", "Q"), Parameter("b", "Q")), _p10_3),
    CatalogEntry("P_11^3", 3, (), _simple(3, {(1, 1): {2: 1}, (1, 2): {3: 1}})),
    CatalogEntry("P_12^3", 3, (Parameter("bracket", "lie-bracket"),), _p12_3),
]

CATALOG = {e.name: e for e in _ENTRIES}


def list_entries() -> list[CatalogEntry]:
    return list(_ENTRIES)


def get_entry(name: str) -> CatalogEntry:
    try:
        return CATALOG[name]
    except KeyError:
        raise UnknownEntry(f"no catalog entry named {name!r}; known: {', '.join(CATALOG)}") from None


def instantiate(name: str, params: dict | None = None, **kwargs) -> PoissonPair:
    """Concrete Poisson pair for a table row after parameter substitution."""
    entry = get_entry(name)
    given = dict(params or {}, **kwargs)
    expected = {p.name for p in entry.params}
    extra = set(given) - expected
    if extra:
        raise BadParameter(f"{name} takes no parameter(s) {sorted(extra)}")
    missing = expected - set(given)
    if missing:
        raise BadParameter(f"{name} needs parameter(s) {sorted(missing)}")
    values = {p.name: p.check(given[p.name]) for p in entry.params}
    if name == "P_12^3" and values["bracket"].dim != 3:
        raise BadParameter("P_12^3 needs a bracket on a 3-dimensional space")
    bullet, bracket = entry.build(**values)
    return PoissonPair(bullet, bracket)


def sample_instances(grid=(0, 1, -1, 2)):
    """Every family over a small parameter grid, as ``(label, pair)`` tuples."""
    out = []
    for entry in _ENTRIES:
        if not entry.params:
            out.append((entry.name, instantiate(entry.name)))
        elif entry.name == "P_12^3":
            for label, br in (("sl2", sl2_bracket()), ("heisenberg", heisenberg_bracket())):
                out.append((f"{entry.name}[{label}]", instantiate(entry.name, bracket=br)))
        elif entry.name == "P_10^3":
            for a in grid:
                for b in grid:
                    out.append((f"{entry.name}(a={a},b={b})", instantiate(entry.name, a=a, b=b)))
        else:
            for a in (0, 1):
                out.append((f"{entry.name}(a={a})", instantiate(entry.name, a=a)))
    return out
