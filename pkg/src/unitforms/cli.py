"""Command line front end.

Every command reads forms or quivers as JSON (a file path, ``-`` for stdin,
or the JSON text itself) and prints one JSON document, or aligned text with
``--format pretty``.  Exit codes: 0 success or congruent, 1 not congruent,
2 undecided, 3 and above for errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from itertools import combinations

from . import _matrix as mx
from .classify import classify, realize_as_quiver
from .coxeter import (
    coxeter_from_form,
    coxeter_from_quiver,
    inverse_quiver,
    inverse_via_gram,
    inverse_via_recursion,
    one_star_coxeter_polynomial,
)
from .errors import UnitFormError
from .forms import (
    Bigraph,
    CongruenceCertificate,
    CongruenceKind,
    UnitForm,
    is_connected,
    is_non_negative,
    rank_corank,
    verify_congruence,
)
from .quivers import Quiver, incidence_bigraph, incidence_matrix, structural_predicates, unit_form_of
from .stars import canonical_one_star, canonical_star, one_star_quiver, one_star_shape, one_tree_to_one_star, tree_to_star
from .transforms import IteratedTransform, replay

EXIT_OK, EXIT_NOT_CONGRUENT, EXIT_UNDECIDED, EXIT_ERROR = 0, 1, 2, 3


class InputError(ValueError):
    pass


# -- input ------------------------------------------------------------------

def _load(text: str):
    if text == "-":
        return json.load(sys.stdin)
    if os.path.exists(text):
        with open(text) as fh:
            return json.load(fh)
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        raise InputError(f"{text!r} is neither a file nor JSON") from None


def _as_quiver(data) -> Quiver | None:
    if isinstance(data, dict) and "arrows" in data:
        return Quiver.from_json(data)
    return None


def read_form(text: str) -> UnitForm:
    """A unit form from form JSON, quiver JSON or a bare matrix."""
    data = _load(text)
    quiver = _as_quiver(data)
    if quiver is not None:
        return unit_form_of(quiver)
    if isinstance(data, dict):
        if "tri_gram" in data:
            return UnitForm.from_json(data)
        if "symmetric" in data:
            return UnitForm.from_symmetric(data["symmetric"])
        raise InputError("form JSON needs 'tri_gram', 'symmetric' or 'arrows'")
    if isinstance(data, list):
        if mx.is_upper_triangular(data) and all(data[i][i] == 1 for i in range(len(data))):
            return UnitForm.from_tri_gram(data)
        return UnitForm.from_symmetric(data)
    raise InputError("cannot read a unit form")


def read_quiver(args) -> Quiver:
    if getattr(args, "arrows", None):
        return Quiver.from_text(args.arrows)
    if not getattr(args, "input", None):
        raise InputError("give a quiver file, JSON, or --arrows")
    data = _load(args.input)
    quiver = _as_quiver(data)
    if quiver is None:
        raise InputError("quiver JSON needs 'arrows'")
    return quiver


def _read_context(args):
    if getattr(args, "arrows", None):
        return Quiver.from_text(args.arrows)
    data = _load(args.input)
    quiver = _as_quiver(data)
    return quiver if quiver is not None else read_form(args.input)


# -- commands ---------------------------------------------------------------

def _matrix(m) -> list[list[int]]:
    return [list(r) for r in m]


def cmd_form(args):
    q = read_form(args.input)
    rank, corank = rank_corank(q)
    nonneg = is_non_negative(q)
    return EXIT_OK, {
        "tri_gram": _matrix(q.tri_gram),
        "symmetric_gram": q.symmetric_gram(),
        "bigraph": _matrix(Bigraph.from_form(q).tri_adj),
        "rank": rank,
        "corank": corank,
        "connected": is_connected(q),
        "non_negative": nonneg,
        "positive": nonneg and corank == 0,
        "principal": nonneg and corank == 1,
    }


def cmd_quiver(args):
    quiver = read_quiver(args)
    s = structural_predicates(quiver)
    out = {
        "quiver": quiver.to_json(),
        "incidence": incidence_matrix(quiver),
        "bigraph": _matrix(incidence_bigraph(quiver).tri_adj),
        "tri_gram": _matrix(unit_form_of(quiver).tri_gram),
        "connected": s.connected,
        "tree": s.tree,
        "one_tree": s.one_tree,
    }
    if s.connected:
        out["corank"] = quiver.n_arrows - quiver.n_vertices + 1
    return EXIT_OK, out


def cmd_transform(args):
    context = _read_context(args)
    n = context.n if isinstance(context, UnitForm) else context.n_arrows
    it = IteratedTransform.from_json(n, _load(args.log))
    done, result = replay(context, it.steps, require_admissible=args.admissible)
    return EXIT_OK, {
        "result": result.to_json(),
        "b": _matrix(done.accumulated),
        "steps": done.to_json(),
    }


def cmd_reduce(args):
    quiver = read_quiver(args)
    s = structural_predicates(quiver)
    shape = None
    if s.tree:
        if args.canonical:
            out, it = canonical_star(quiver, args.center or 1)
        else:
            out, it = tree_to_star(quiver, args.center or 1)
    elif s.one_tree:
        if args.canonical:
            out, _, it = canonical_one_star(quiver)
        else:
            out, _, it = one_tree_to_one_star(quiver, args.center)
        shape = one_star_shape(out).to_json()
    else:
        raise InputError("reduce needs a tree or a 1-tree quiver")
    cert = CongruenceCertificate(it.accumulated, CongruenceKind.STRONG)
    verified = verify_congruence(unit_form_of(out), unit_form_of(quiver), cert) if args.verify else None
    return EXIT_OK, {
        "input": quiver.to_json(),
        "output": out.to_json(),
        "shape": shape,
        "steps": it.to_json(),
        "b": _matrix(it.accumulated),
        "verified": verified,
    }


def cmd_inverse(args):
    quiver = read_quiver(args)
    routes = {
        "walk": inverse_quiver(quiver),
        "gram": inverse_via_gram(quiver),
        "recursion": inverse_via_recursion(quiver),
    }
    agree = len({r for r in routes.values()}) == 1
    out = {k: v.to_json() for k, v in routes.items()}
    out["agree"] = agree
    return (EXIT_OK if agree else EXIT_ERROR), out


def _triple(text: str) -> tuple[int, int, int]:
    try:
        n, ell, m = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("expected n,ell,m") from None
    return n, ell, m


def cmd_coxeter(args):
    if args.one_star:
        n, ell, m = args.one_star
        data = coxeter_from_quiver(one_star_quiver(n, ell, m), args.cap)
        out = data.to_json()
        closed = one_star_coxeter_polynomial(n, ell, m)
        out["closed_form"] = closed
        out["agree"] = list(data.char_poly) == closed
        return EXIT_OK, out
    context = _read_context(args)
    if isinstance(context, Quiver):
        return EXIT_OK, coxeter_from_quiver(context, args.cap).to_json()
    return EXIT_OK, coxeter_from_form(context, args.cap).to_json()


def cmd_realize(args):
    q = read_form(args.input)
    return EXIT_OK, realize_as_quiver(q, args.limit).to_json()


def _classify_pair(pair):
    a, b, verify = pair
    return classify(a, b, verify=verify).to_json()


def _exit_for(verdicts) -> int:
    if any(v["congruent"] is None for v in verdicts):
        return EXIT_UNDECIDED
    if any(v["congruent"] is False for v in verdicts):
        return EXIT_NOT_CONGRUENT
    return EXIT_OK


def cmd_classify(args):
    forms = [read_form(x) for x in args.inputs]
    if len(forms) < 2:
        raise InputError("classify needs at least two forms")
    if len(forms) == 2:
        verdict = classify(forms[0], forms[1], verify=args.verify).to_json()
        return _exit_for([verdict]), verdict
    pairs = [(forms[i], forms[j], args.verify) for i, j in combinations(range(len(forms)), 2)]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            verdicts = list(pool.map(_classify_pair, pairs, chunksize=16))
    else:
        verdicts = [_classify_pair(p) for p in pairs]
    out = [
        {"i": i + 1, "j": j + 1, **v}
        for (i, j), v in zip(combinations(range(len(forms)), 2), verdicts)
    ]
    return _exit_for(verdicts), out


# -- output -----------------------------------------------------------------

def _is_matrix(v) -> bool:
    return (
        isinstance(v, list)
        and len(v) > 0
        and all(isinstance(r, list) and all(isinstance(x, int) and not isinstance(x, bool) for x in r) for r in v)
    )


def format_poly(coeffs) -> str:
    """Ascending degree with explicit signs, e.g. ``1 - 2x + x^2``."""
    terms = []
    for k, c in enumerate(coeffs):
        if c == 0:
            continue
        mon = "" if k == 0 else "x" if k == 1 else f"x^{k}"
        mag = abs(c)
        body = f"{mag}{mon}" if (mag != 1 or not mon) else mon
        if not terms:
            terms.append(body if c > 0 else f"-{body}")
        else:
            terms.append(("+ " if c > 0 else "- ") + body)
    return " ".join(terms) or "0"


def _pretty(value, indent: int = 0) -> list[str]:
    pad = " " * indent
    lines = []
    if isinstance(value, dict):
        for k, v in value.items():
            if _is_matrix(v):
                width = max(len(str(x)) for r in v for x in r)
                lines.append(f"{pad}{k}:")
                lines += [pad + "  " + " ".join(str(x).rjust(width) for x in r) for r in v]
            elif k in ("charpoly", "char_poly", "closed_form") and isinstance(v, list):
                lines.append(f"{pad}{k}: {format_poly(v)}")
            elif (isinstance(v, dict) and v) or (isinstance(v, list) and any(isinstance(x, (dict, list)) for x in v)):
                lines.append(f"{pad}{k}:")
                lines += _pretty(v, indent + 2)
            else:
                lines.append(f"{pad}{k}: {json.dumps(v)}")
    elif isinstance(value, list):
        for item in value:
            sub = _pretty(item, indent + 2)
            lines.append(pad + "-" + (sub[0][indent + 1:] if sub else ""))
            lines += sub[1:]
    else:
        lines.append(pad + json.dumps(value))
    return lines


def emit(doc, fmt: str, stream=None) -> None:
    stream = stream or sys.stdout
    if fmt == "pretty":
        stream.write("\n".join(_pretty(doc)) + "\n")
    else:
        stream.write(json.dumps(doc, sort_keys=False) + "\n")


# -- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "pretty"], default="json")
    common.add_argument("--cap", type=int, default=None, help="only try Coxeter powers up to this bound")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for pairwise sweeps")
    common.add_argument("--verify", action=argparse.BooleanOptionalAction, default=True)

    parser = argparse.ArgumentParser(prog="unitforms", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("form", parents=[common], help="Gram matrices, rank, corank, connectivity")
    p.add_argument("input")
    p.set_defaults(func=cmd_form)

    p = sub.add_parser("quiver", parents=[common], help="incidence matrix, bigraph and unit form")
    p.add_argument("input", nargs="?")
    p.add_argument("--arrows", help='inline arrows, e.g. "1->2, 2->3"')
    p.set_defaults(func=cmd_quiver)

    p = sub.add_parser("transform", parents=[common], help="replay a transformation log")
    p.add_argument("input", nargs="?")
    p.add_argument("log", help="JSON list of {op, ...} steps")
    p.add_argument("--arrows")
    p.add_argument("--admissible", action="store_true", help="reject non-admissible FS steps")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("reduce", parents=[common], help="tree to star, or 1-tree to 1-star")
    p.add_argument("input", nargs="?")
    p.add_argument("--arrows")
    p.add_argument("--center", type=int, default=None)
    p.add_argument("--canonical", action="store_true", help="continue to the canonical outward star")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("inverse", parents=[common], help="inverse quiver by three routes")
    p.add_argument("input", nargs="?")
    p.add_argument("--arrows")
    p.set_defaults(func=cmd_inverse)

    p = sub.add_parser("coxeter", parents=[common], help="Coxeter matrix, polynomial and number")
    p.add_argument("input", nargs="?")
    p.add_argument("--arrows")
    p.add_argument("--one-star", type=_triple, metavar="N,ELL,M")
    p.set_defaults(func=cmd_coxeter)

    p = sub.add_parser("realize", parents=[common], help="realize a form as a quiver")
    p.add_argument("input")
    p.add_argument("--limit", type=int, default=10**6, help="maximum visited states")
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("classify", parents=[common], help="strong congruence verdict")
    p.add_argument("inputs", nargs="+")
    p.set_defaults(func=cmd_classify)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "coxeter" and not (args.one_star or args.input or args.arrows):
        parser.error("coxeter needs an input, --arrows or --one-star")
    try:
        code, doc = args.func(args)
    except (UnitFormError, ValueError, KeyError, TypeError, IndexError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR + 1 if isinstance(exc, OSError) else EXIT_ERROR
    emit(doc, args.format)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
