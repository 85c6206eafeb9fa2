"""Command-line frontend.

Exit status: 0 on success, 2 when the computation ran but the tested
property fails (payload still printed), 1 on malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import catalog, deformation
from .algebra import NotPoisson, as_algebra, as_pair, combine, verify
from .cohomology import OperatorKind, cocycle_space
from .linalg import format_rational
from .serialization import (
    SchemaError, algebra_to_json, bracket_from_json, dumps, jet_from_json, map_to_json,
    pair_to_json, structure_from_json, subspace_to_json,
)

OK, MALFORMED, FAILED = 0, 1, 2


class UsageError(ValueError):
    pass


def _read_json(path: str):
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno} column {exc.colno})") from None


def _parse_params(text: str | None) -> dict:
    out = {}
    if not text:
        return out
    for item in text.split(","):
        key, sep, value = item.partition("=")
        if not sep or not key.strip():
            raise UsageError(f"--params: expected name=value, got {item!r}")
        out[key.strip()] = value.strip()
    return out


def _source(args):
    """The structure named by FILE or by --catalog/--params/--bracket."""
    if args.catalog and args.file:
        raise UsageError("give either an input file or --catalog, not both")
    if args.catalog:
        params = _parse_params(args.params)
        if args.bracket:
            params["bracket"] = bracket_from_json(_read_json(args.bracket))
        return catalog.instantiate(args.catalog, params)
    if args.params or args.bracket:
        raise UsageError("--params and --bracket only apply with --catalog")
    if not args.file:
        raise UsageError("missing input: give a JSON file (or '-') or --catalog NAME")
    return structure_from_json(_read_json(args.file))


def _vec(v) -> list:
    return [format_rational(x) for x in v]


# --------------------------------------------------------------------------
# verbs


def _verify(args):
    report = verify(_source(args))
    payload = {
        "commutative": report.commutative,
        "associative": report.associative,
        "jacobi": report.jacobi,
        "leibniz": report.leibniz,
        "markl_remm": report.markl_remm,
        "poisson": report.all_true,
        "witnesses": [{"axiom": w.axiom, "triple": list(w.triple), "residual": _vec(w.residual)}
                      for w in report.witnesses],
    }
    return payload, OK if report.all_true else FAILED


def _split(args):
    return pair_to_json(as_pair(_source(args))), OK


def _combine(args):
    return algebra_to_json(as_algebra(_source(args))), OK


def _catalog_list(args):
    entries = [{"name": e.name, "dim": e.dim, "signature": e.signature(),
                "params": [{"name": p.name, "domain": p.domain} for p in e.params]}
               for e in catalog.list_entries()]
    return {"entries": entries}, OK


def _catalog_show(args):
    params = _parse_params(args.params)
    if args.bracket:
        params["bracket"] = bracket_from_json(_read_json(args.bracket))
    pair = catalog.instantiate(args.name, params)
    if args.combined:
        return algebra_to_json(combine(pair)), OK
    return pair_to_json(pair), OK


def _cocycles(args):
    src = _source(args)
    kind = OperatorKind.parse(args.kind)
    space = cocycle_space(src, kind, args.filter)
    out = subspace_to_json(space, kind.arity, src.dim)
    out["operator"] = str(kind)
    out["filter"] = args.filter
    return out, OK


def _biderivations(args):
    src = _source(args)
    out = subspace_to_json(deformation.lie_biderivation_space(src, args.filter), 2, src.dim)
    out["filter"] = args.filter
    return out, OK


def _ph_space(args):
    src = _source(args)
    space = deformation.ph_cochain_space(src, args.k, fully_symmetric=args.fully_symmetric)
    out = subspace_to_json(space, args.k, src.dim)
    out["symmetry"] = "full" if args.fully_symmetric else "signed-sum"
    return out, OK


def _load_jet(path):
    base, terms = jet_from_json(_read_json(path))
    return deformation.Jet(base, terms)


def _deform_verify(args):
    j = _load_jet(args.jet)
    v = deformation.verify_jet(j, deformation.DeformationKind(args.kind))
    payload = {"ok": v.ok, "kind": args.kind, "order": j.order}
    if not v.ok:
        payload.update(stage=v.stage, index=v.k, residual=map_to_json(v.residual))
    return payload, OK if v.ok else FAILED


def _deform_extend(args):
    j = _load_jet(args.jet)
    kind = deformation.DeformationKind(args.kind)
    v = deformation.verify_jet(j, kind)
    if not v.ok:
        return {"status": "invalid-jet", "stage": v.stage, "index": v.k,
                "residual": map_to_json(v.residual)}, FAILED
    res = deformation.extend_jet(j, kind)
    if isinstance(res, deformation.Obstructed):
        return {"status": "obstructed", "order": j.order + 1, "residual": map_to_json(res.residual),
                "certificate": _vec(res.certificate)}, FAILED
    return {"status": "solutions", "order": j.order + 1, "kind": args.kind,
            "particular": map_to_json(res.particular),
            "kernel": subspace_to_json(res.kernel, 2, j.base.dim)}, OK


def _rigidity(args):
    r = deformation.rigidity_probe(_source(args))
    return {"assoc_rigid_order1": r.assoc_rigid_order1, "lie_order1_dim": r.lie_order1_dim,
            "sym_order1_dim": r.sym_order1_dim, "biderivation_dim": r.biderivation_dim}, OK


# --------------------------------------------------------------------------
# output


def _text(obj, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for key in sorted(obj):
            v = obj[key]
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{key}:")
                lines.extend(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{key}: {_scalar(v)}")
    elif isinstance(obj, list):
        for item in obj:
            if isinstance(item, dict) and _is_row(item):
                lines.append(pad + "- " + " ".join(f"{k}={_scalar(item[k])}" for k in sorted(item)))
            elif isinstance(item, (dict, list)):
                lines.append(f"{pad}-")
                lines.extend(_text(item, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(item)}")
    else:
        lines.append(pad + _scalar(obj))
    return lines


def _is_row(d) -> bool:
    return all(not isinstance(v, dict) and not (isinstance(v, list) and any(isinstance(x, (dict, list)) for x in v))
               for v in d.values())


def _scalar(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "null"
    if isinstance(v, list):
        return "[" + ",".join(str(x) for x in v) + "]"
    if v == {} or v == []:
        return "[]" if isinstance(v, list) else "{}"
    return str(v)


def _source_args(p):
    p.add_argument("file", nargs="?", help="input JSON file, or '-' for stdin")
    p.add_argument("--catalog", metavar="NAME", help="use a catalog entry instead of a file")
    p.add_argument("--params", metavar="a=1,b=0", help="catalog parameters")
    p.add_argument("--bracket", metavar="FILE", help="bracket JSON for entries taking a Lie bracket")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="poissondef", description="Exact computations on finite-dimensional Poisson algebras.")
    parser.add_argument("--format", choices=("json", "text"), default="json")
    sub = parser.add_subparsers(dest="verb", required=True, metavar="VERB")

    def verb(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(fn=fn)
        p.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS)
        return p

    _source_args(verb("verify", _verify, "check every Poisson axiom and the single-product identity"))
    _source_args(verb("split", _split, "algebra -> bullet and bracket"))
    _source_args(verb("combine", _combine, "bullet and bracket -> single product"))
    verb("catalog-list", _catalog_list, "list catalog families")
    p = verb("catalog-show", _catalog_show, "instantiate a catalog family")
    p.add_argument("name")
    p.add_argument("--params", metavar="a=1,b=0")
    p.add_argument("--bracket", metavar="FILE")
    p.add_argument("--combined", action="store_true", help="emit the single-product form")
    p = verb("cocycles", _cocycles, "kernel of a coboundary operator")
    _source_args(p)
    p.add_argument("--kind", default="P2", help="P1, P2, C2, C2~, H2, L1, L2, LP2, Chevalley(k), Hochschild(k)")
    p.add_argument("--filter", choices=("none", "symmetric", "skew"), default="none")
    p = verb("biderivations", _biderivations, "Lie biderivations of the bracket")
    _source_args(p)
    p.add_argument("--filter", choices=("none", "symmetric", "skew"), default="none")
    p = verb("ph-space", _ph_space, "symmetric Lie k-derivations")
    _source_args(p)
    p.add_argument("--k", type=int, default=2, choices=(1, 2, 3))
    p.add_argument("--fully-symmetric", action="store_true")
    kinds = [k.value for k in deformation.DeformationKind]
    p = verb("deform-verify", _deform_verify, "check a truncated deformation")
    p.add_argument("jet", help="jet JSON file, or '-'")
    p.add_argument("--kind", choices=kinds, default="General")
    p = verb("deform-extend", _deform_extend, "solve for the next deformation term")
    p.add_argument("jet", help="jet JSON file, or '-'")
    p.add_argument("--kind", choices=kinds, default="General")
    _source_args(verb("rigidity", _rigidity, "first-order rigidity certificates"))
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        payload, code = args.fn(args)
    except NotPoisson as exc:
        payload, code = {"error": str(exc)}, FAILED
    except (UsageError, SchemaError, catalog.UnknownEntry, catalog.BadParameter, ValueError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else str(exc)
        print(f"error: {msg}", file=sys.stderr)
        return MALFORMED
    if args.format == "json":
        sys.stdout.write(dumps(payload))
    else:
        sys.stdout.write("\n".join(_text(payload)) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
