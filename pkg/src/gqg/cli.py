"""Command-line surface.

Subcommands map one-to-one onto the library operations; every command prints
a single JSON document (stable key order, no timestamps) to stdout with the
resolved session configuration embedded, so identical invocations produce
byte-identical output.  Exit codes: 0 success, 1 domain error, 2 verification
mismatch.

Vertex indices and word letters are 1-based on the command line, matching
the usual Dynkin-diagram numbering; the Python API underneath is 0-based.
"""
from __future__ import annotations

import argparse
import json
import sys

from .bihom import (BiHom, FamilySpec, bihom_from_json, dynkin_diagram,
                    family_spec_from_json, make_family, DEFAULT_TORSION)
from .cartan import CartanUndefinedError, cartan_matrix, reflect_bihom
from .groupoid import (NotFiniteTypeError, builtin_word, enumerate_objects,
                       greedy_longest_word, root_system, verify_word)
from .classify import classify as classify_weight
from .classify import run_grid, summarize_grid
from .highestweight import (InfiniteReflectionError, chain, h_value,
                            is_finite_dimensional, weight_from_json)
from .scalar import TorsionMismatchError, parse_monomial


class CliError(Exception):
    pass


def _emit(doc: dict) -> None:
    sys.stdout.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")


def _parse_word(text: str) -> tuple[int, ...]:
    try:
        letters = tuple(int(x) - 1 for x in text.replace(",", " ").split())
    except ValueError:
        raise CliError(f"cannot parse word {text!r}; expected 1-based letters")
    return letters


def _load_input(args) -> tuple[BiHom, FamilySpec | None, dict]:
    """Resolve the braiding from --family flags or an input document."""
    if args.input:
        with open(args.input) as fh:
            doc = json.load(fh)
        if "matrix" in doc:
            chi = bihom_from_json(doc)
            return chi, None, {"input": "matrix", "torsion": chi.torsion}
        spec = family_spec_from_json(doc)
        return make_family(spec), spec, {"family": spec.to_json()}
    if args.family is None:
        raise CliError("either --family or --input is required")
    r_subst = None
    if args.r_subst:
        a, _, e = args.r_subst.partition(",")
        r_subst = (int(a), int(e))
    spec = FamilySpec(
        family=args.family,
        rank=args.N or 0,
        m=args.m,
        cartan_type=args.cartan_type,
        torsion=args.torsion,
        r_subst=r_subst,
    )
    return make_family(spec), spec, {"family": spec.to_json()}


def _load_weight(args, chi: BiHom):
    text = args.weight
    if text is None:
        raise CliError("--weight is required for this command")
    text = text.strip()
    if text.startswith("["):
        return weight_from_json(json.loads(text), chi.torsion)
    lam = tuple(parse_monomial(part, chi.torsion)
                for part in text.split(";"))
    if len(lam) != chi.rank:
        raise CliError(f"weight has {len(lam)} components, rank is {chi.rank}")
    return lam


def _config(args, source: dict) -> dict:
    cfg = dict(source)
    cfg["max_len"] = args.max_len
    if getattr(args, "max_objects", None) is not None:
        cfg["max_objects"] = args.max_objects
    return cfg


def _cmd_cartan(args) -> int:
    chi, _, src = _load_input(args)
    mat = [["-inf" if c is None else c for c in row] for row in cartan_matrix(chi)]
    _emit({"config": _config(args, src), "cartan_matrix": mat})
    return 0


def _cmd_diagram(args) -> int:
    chi, _, src = _load_input(args)
    diag = dynkin_diagram(chi)
    if args.format == "dot":
        sys.stdout.write(diag.to_dot() + "\n")
    elif args.format == "ascii":
        sys.stdout.write(diag.to_ascii() + "\n")
    else:
        _emit({"config": _config(args, src), "diagram": diag.to_json()})
    return 0


def _cmd_reflect(args) -> int:
    chi, _, src = _load_input(args)
    i = args.index - 1
    if not 0 <= i < chi.rank:
        raise CliError(f"--index must be 1..{chi.rank}")
    out = reflect_bihom(chi, i)
    _emit({"config": _config(args, src), "index": args.index,
           "bihom": out.to_json()})
    return 0


def _cmd_roots(args) -> int:
    chi, _, src = _load_input(args)
    rs = root_system(chi, args.max_len)
    _emit({"config": _config(args, src),
           "count": rs.count,
           "roots": [list(r) for r in rs.positive_roots],
           "word": [x + 1 for x in rs.word.letters]})
    return 0


def _cmd_longest(args) -> int:
    chi, _, src = _load_input(args)
    w = greedy_longest_word(chi, args.max_len)
    _emit({"config": _config(args, src),
           "length": w.length,
           "letters": [x + 1 for x in w.letters],
           "matrix": [list(r) for r in w.matrix],
           "end_permutation": [p + 1 for p in w.end_permutation()]})
    return 0


def _cmd_objects(args) -> int:
    chi, _, src = _load_input(args)
    objs = enumerate_objects(chi, args.max_objects)
    _emit({"config": _config(args, src),
           "count": len(objs),
           "objects": [o.to_json() for o in objs],
           "diagrams_dot": [dynkin_diagram(o).to_dot() for o in objs]})
    return 0


def _cmd_verify_word(args) -> int:
    chi, spec, src = _load_input(args)
    if args.builtin:
        if spec is None:
            raise CliError("--builtin needs a family input")
        letters = builtin_word(spec)
    elif args.word:
        letters = _parse_word(args.word)
    else:
        raise CliError("give --word or --builtin")
    rep = verify_word(chi, letters)
    _emit({"config": _config(args, src),
           "letters": [x + 1 for x in letters],
           "report": rep.to_json()})
    return 0 if rep.ok else 2


def _cmd_hvalue(args) -> int:
    chi, _, src = _load_input(args)
    lam = _load_weight(args, chi)
    i = args.index - 1
    if not 0 <= i < chi.rank:
        raise CliError(f"--index must be 1..{chi.rank}")
    h = h_value(chi, lam, i)
    _emit({"config": _config(args, src), "index": args.index,
           "h": "infinite" if h is None else h})
    return 0


def _cmd_chain(args) -> int:
    chi, spec, src = _load_input(args)
    lam = _load_weight(args, chi)
    if args.builtin:
        if spec is None:
            raise CliError("--builtin needs a family input")
        letters = builtin_word(spec)
    elif args.word:
        letters = _parse_word(args.word)
    else:
        letters = greedy_longest_word(chi, args.max_len).letters
    wc = chain(chi, lam, letters)
    steps = []
    cur = chi
    for t in range(wc.completed):
        i = wc.letters[t]
        diag, prods = cur.equiv_key()
        steps.append({
            "letter": i + 1,
            "h": wc.h_values[t],
            "object": {"diagonal": [x.to_text() for x in diag],
                       "products": [x.to_text() for x in prods]},
            "weight": [x.to_text() for x in wc.weights[t + 1]],
        })
        cur = reflect_bihom(cur, i)
    _emit({"config": _config(args, src),
           "letters": [x + 1 for x in wc.letters],
           "H": wc.completed,
           "finished": wc.finished,
           "steps": steps})
    return 0


def _cmd_findim(args) -> int:
    chi, _, src = _load_input(args)
    lam = _load_weight(args, chi)
    word = greedy_longest_word(chi, args.max_len)
    wc = chain(chi, lam, word.letters)
    _emit({"config": _config(args, src),
           "finite_dimensional": wc.finished,
           "H": wc.completed,
           "length": word.length})
    return 0


def _cmd_classify(args) -> int:
    chi, spec, src = _load_input(args)
    if spec is None:
        raise CliError("classify needs a family input")
    lam = _load_weight(args, chi)
    rep = classify_weight(spec, chi, lam)
    _emit({"config": _config(args, src), "report": rep.to_json()})
    return 0


def _cmd_verify(args) -> int:
    _, spec, src = _load_input(args)
    if spec is None:
        raise CliError("verify needs a family input")
    results = run_grid(spec, args.bound, jobs=args.jobs)
    rep = summarize_grid(spec, args.bound, results)
    _emit({"config": _config(args, src), "bound": args.bound,
           "report": rep.to_json()})
    return 0 if rep.ok else 2


def _cmd_report(args) -> int:
    from .report import run_report
    chi, spec, src = _load_input(args)
    if spec is None:
        raise CliError("report needs a family input")
    summary = run_report(spec, chi, args.bound, args.out, args.jobs)
    _emit({"config": _config(args, src), "report": summary})
    return 0 if summary["verification"]["ok"] else 2


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="gqg",
        description="Exact root systems, reflections, and the finite-"
                    "dimensionality classification for diagonal braidings.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, weight=False, word=False):
        sp.add_argument("--family", type=int, help="family number 1..10")
        sp.add_argument("--N", type=int, help="rank (families 2..5)")
        sp.add_argument("--m", type=int, help="split parameter (families 2, 3, 5)")
        sp.add_argument("--cartan-type", help="Cartan type for family 1, e.g. A2")
        sp.add_argument("--torsion", type=int, default=DEFAULT_TORSION,
                        help="torsion order K (default %(default)s)")
        sp.add_argument("--r-subst", help="specialise r to zeta^a q^e, as 'a,e' (family 8)")
        sp.add_argument("--input", help="JSON file: braiding matrix or family document")
        sp.add_argument("--max-len", type=int, default=None,
                        help="longest-word cutoff (default 10 N^2)")
        if weight:
            sp.add_argument("--weight",
                            help="kappa-vector: JSON array of {zeta,q,r} or "
                                 "semicolon-separated monomials like '1;q^2'")
        if word:
            sp.add_argument("--word", help="comma-separated 1-based letters")
            sp.add_argument("--builtin", action="store_true",
                            help="use the family's classical word")

    sp = sub.add_parser("cartan", help="print the Cartan matrix")
    common(sp); sp.set_defaults(fn=_cmd_cartan)

    sp = sub.add_parser("diagram", help="print the labelled Dynkin diagram")
    common(sp)
    sp.add_argument("--format", choices=("json", "dot", "ascii"), default="json")
    sp.set_defaults(fn=_cmd_diagram)

    sp = sub.add_parser("reflect", help="reflect the braiding at a vertex")
    common(sp)
    sp.add_argument("--index", type=int, required=True, help="1-based vertex")
    sp.set_defaults(fn=_cmd_reflect)

    sp = sub.add_parser("roots", help="positive roots from the greedy longest word")
    common(sp); sp.set_defaults(fn=_cmd_roots)

    sp = sub.add_parser("longest", help="greedy longest word and its matrix")
    common(sp); sp.set_defaults(fn=_cmd_longest)

    sp = sub.add_parser("objects", help="enumerate reflection classes")
    common(sp)
    sp.add_argument("--max-objects", type=int, default=4096)
    sp.set_defaults(fn=_cmd_objects)

    sp = sub.add_parser("verify-word", help="check a word against the braiding")
    common(sp, word=True); sp.set_defaults(fn=_cmd_verify_word)

    sp = sub.add_parser("hvalue", help="step bound at a vertex")
    common(sp, weight=True)
    sp.add_argument("--index", type=int, required=True, help="1-based vertex")
    sp.set_defaults(fn=_cmd_hvalue)

    sp = sub.add_parser("chain", help="reflect a weight along a word")
    common(sp, weight=True, word=True); sp.set_defaults(fn=_cmd_chain)

    sp = sub.add_parser("findim", help="finite-dimensionality of the module")
    common(sp, weight=True); sp.set_defaults(fn=_cmd_findim)

    sp = sub.add_parser("classify", help="closed-form membership test")
    common(sp, weight=True); sp.set_defaults(fn=_cmd_classify)

    sp = sub.add_parser("verify", help="grid comparison of closed form vs algorithm")
    common(sp)
    sp.add_argument("--bound", type=int, default=5, help="dominance exponent bound")
    sp.add_argument("--jobs", type=int, default=1, help="worker processes")
    sp.set_defaults(fn=_cmd_verify)

    sp = sub.add_parser("report", help="figures and delimited tables for a family")
    common(sp)
    sp.add_argument("--bound", type=int, default=3)
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--out", required=True, help="output directory")
    sp.set_defaults(fn=_cmd_report)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (CliError, ValueError, TorsionMismatchError, CartanUndefinedError,
            NotFiniteTypeError, InfiniteReflectionError, OSError,
            json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
