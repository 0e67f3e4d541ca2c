"""Command line interface.

Every verb reads an arrangement from a document path or a builtin name
(``running-example``, ``nongeneric-example``, ``cyclic N D``,
``hypersimplex K N``) and writes JSON with sorted keys to standard output.
``render`` writes SVG and ``generate`` writes a new document.

Exit codes: 0 success, 1 invariant failure, 2 input error, 3 resource limit.
"""

from __future__ import annotations

import argparse
import sys

from .complex import DEFAULT_NODE_LIMIT, ResourceLimitError, bounded_subcomplex, enumerate_cells, is_fine
from .ideals import alexander_dual, coarse_type_ideal, cotype_ideal, fine_type_ideal
from .io import ArrangementDocument, DocumentError, dumps_report
from .mixed import (
    CalibrationError,
    coarse_type_mixed,
    cyclic_arrangement,
    embed_mixed_cell,
    from_tropical_complex,
    hypersimplex_vertices,
)
from .pipeline import (
    LABELINGS,
    NONGENERIC_EXAMPLE,
    RUNNING_EXAMPLE,
    ConsistencyError,
    face_poset_from_points,
    generate_random_generic,
    verify_all,
)
from .render import UnsupportedDimensionError, render_svg
from .resolutions import betti_table, check_minimality, fvector_from_betti, generic_fvector, resolve, verify_resolution

EXIT_OK, EXIT_INVARIANT, EXIT_INPUT, EXIT_RESOURCE = 0, 1, 2, 3


class InputError(ValueError):
    pass


def _int(tok, what):
    try:
        return int(tok)
    except ValueError:
        raise InputError(f"{what} must be an integer, got {tok!r}") from None


def load_source(tokens: list[str]) -> ArrangementDocument:
    """Resolve a builtin name with its arguments, or a document path."""
    head, rest = tokens[0], tokens[1:]
    if head == "running-example" and not rest:
        return ArrangementDocument(RUNNING_EXAMPLE, name=head)
    if head == "nongeneric-example" and not rest:
        return ArrangementDocument(NONGENERIC_EXAMPLE, name=head)
    if head == "cyclic":
        if len(rest) != 2:
            raise InputError("usage: cyclic N D")
        n, d = _int(rest[0], "N"), _int(rest[1], "D")
        if n < 1 or d < 1:
            raise InputError("cyclic needs N >= 1 and D >= 1")
        return ArrangementDocument.from_arrangement(cyclic_arrangement(n, d), name=f"cyclic-{n}-{d}")
    if head == "hypersimplex":
        if len(rest) != 2:
            raise InputError("usage: hypersimplex K N")
        k, n = _int(rest[0], "K"), _int(rest[1], "N")
        try:
            arr = hypersimplex_vertices(k, n)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        return ArrangementDocument.from_arrangement(arr, name=f"hypersimplex-{k}-{n}")
    if rest:
        raise InputError(f"unexpected arguments after {head!r}: {' '.join(rest)}")
    try:
        return ArrangementDocument.load(head)
    except OSError as exc:
        raise InputError(f"cannot read {head}: {exc.strerror or exc}") from None


def _rows(T):
    return [[k + 1 for k, x in enumerate(row) if x] for row in T]


def _cells(tc):
    return [
        {"dim": c.dim, "fine_type": _rows(c.type), "coarse_type": list(c.coarse), "bounded": c.bounded}
        for c in tc.cells
    ]


def cmd_cells(doc, tc, args):
    return {
        "name": doc.name,
        "f_vector": list(tc.f_vector()),
        "generic": is_fine(tc),
        "cells": _cells(tc),
        "covers": sorted([list(c) for c in tc.covers]),
    }


def cmd_bounded(doc, tc, args):
    bc = bounded_subcomplex(tc)
    return {
        "name": doc.name,
        "f_vector": list(bc.f_vector()),
        "cells": _cells(bc),
        "covers": sorted([list(c) for c in bc.covers]),
        "maximal": sorted(bc.maximal()),
    }


def cmd_ideals(doc, tc, args):
    n, d = tc.arrangement.n, tc.arrangement.d
    coarse = coarse_type_ideal(tc)
    return {
        "name": doc.name,
        "fine_type": fine_type_ideal(tc).to_text(),
        "coarse_type": coarse.to_text(),
        "fine_cotype": cotype_ideal(tc, "fine").to_text(),
        "coarse_cotype": cotype_ideal(tc, "coarse").to_text(),
        "alexander_dual_of_coarse_type": alexander_dual(
            coarse.without(lambda g: max(g) == n), (max(n - 1, 0),) * d
        ).to_text(),
    }


def cmd_betti(doc, tc, args):
    out = {"name": doc.name}
    ok = True
    for lab in args.labels or LABELINGS:
        ac, ideal = resolve(tc, lab)
        bt = betti_table(ac)
        rep = verify_resolution(ac, ideal)
        minimal = check_minimality(ac)
        ok &= rep.ok and minimal
        out[lab] = {
            "ideal": ideal.to_text(),
            "ranks": list(ac.ranks),
            "coarse": [list(r) for r in sorted((i, deg, m) for (i, deg), m in bt.coarse.items())],
            "totals": list(bt.totals()),
            "exact": rep.ok,
            "minimal": minimal,
        }
    return out, (EXIT_OK if ok else EXIT_INVARIANT)


def cmd_fvector(doc, tc, args):
    arr = tc.arrangement
    ac, _ = resolve(tc, "coarse_type")
    f, fb = fvector_from_betti(betti_table(ac), arr.n, arr.d)
    out = {
        "name": doc.name,
        "f_vector": list(tc.f_vector()),
        "bounded_f_vector": list(bounded_subcomplex(tc).f_vector()),
        "from_betti": {"f_vector": list(f), "bounded_f_vector": list(fb)},
        "generic": is_fine(tc),
    }
    if out["generic"]:
        out["generic_formula"] = list(generic_fvector(arr.n, arr.d))
    return out


def cmd_mixed(doc, tc, args):
    ms = from_tropical_complex(tc)
    return {
        "name": doc.name,
        "fine": ms.fine,
        "f_vector": list(ms.f_vector()),
        "maximal_cells": sorted(
            ({"cell": repr(ms.cells[i]), "coarse_type": list(coarse_type_mixed(ms.cells[i], ms.d))}
             for i in ms.maximal()),
            key=lambda c: c["cell"],
        ),
        "vertices": sorted(list(embed_mixed_cell(ms.cells[i], ms.d)[0]) for i in ms.vertices()),
    }


def cmd_faceposet(doc, tc, args):
    return face_poset_from_points(doc.arrangement(), tc=tc).to_dict()


def cmd_verify(doc, tc, args):
    status, checks = verify_all(doc.arrangement(), tc=tc)
    report = {
        "name": doc.name,
        "passed": status == 0,
        "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in checks],
    }
    return report, status


COMMANDS = {
    "cells": cmd_cells,
    "bounded": cmd_bounded,
    "ideals": cmd_ideals,
    "betti": cmd_betti,
    "fvector": cmd_fvector,
    "mixed": cmd_mixed,
    "faceposet": cmd_faceposet,
    "verify": cmd_verify,
}

HELP = {
    "cells": "all cells of the decomposition with types and covers",
    "bounded": "the bounded subcomplex",
    "ideals": "fine and coarse (co)type ideals",
    "betti": "resolutions, Betti numbers and their verification",
    "fvector": "face numbers, also recovered from Betti numbers",
    "mixed": "the dual mixed subdivision",
    "faceposet": "face poset of the bounded complex via the crosscut complex",
    "render": "SVG picture (three coordinates only)",
    "verify": "run every invariant check",
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tropres", description="Tropical hyperplane arrangements and their resolutions.")
    sub = parser.add_subparsers(dest="verb", required=True)
    for verb, text in HELP.items():
        p = sub.add_parser(verb, help=text)
        p.add_argument("source", nargs="+", help="document path or builtin: running-example, "
                       "nongeneric-example, cyclic N D, hypersimplex K N")
        p.add_argument("--node-limit", type=int, default=DEFAULT_NODE_LIMIT, help="enumeration budget")
        if verb == "betti":
            p.add_argument("--labels", action="append", choices=LABELINGS, help="restrict to these labelings")
        if verb == "render":
            p.add_argument("--mixed", action="store_true", help="draw the mixed subdivision instead")
            p.add_argument("-o", "--output", help="write to a file instead of standard output")
    g = sub.add_parser("generate", help="random generic arrangement document")
    g.add_argument("n", type=int)
    g.add_argument("d", type=int)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--max-tries", type=int, default=200)
    return parser


def _run(args) -> int:
    if args.verb == "generate":
        if args.n < 1 or args.d < 1:
            raise InputError("generate needs n >= 1 and d >= 1")
        try:
            doc = generate_random_generic(args.n, args.d, args.seed, max_tries=args.max_tries)
        except RuntimeError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_RESOURCE
        sys.stdout.write(doc.dumps())
        return EXIT_OK
    doc = load_source(args.source)
    tc = enumerate_cells(doc.arrangement(), node_limit=args.node_limit)
    if args.verb == "render":
        svg = render_svg(from_tropical_complex(tc) if args.mixed else tc)
        if args.output:
            with open(args.output, "w") as fh:
                fh.write(svg)
        else:
            sys.stdout.write(svg)
        return EXIT_OK
    result = COMMANDS[args.verb](doc, tc, args)
    status = EXIT_OK
    if isinstance(result, tuple):
        result, status = result
    sys.stdout.write(dumps_report(result))
    return status


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _run(args)
    except (InputError, DocumentError, UnsupportedDimensionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (ConsistencyError, CalibrationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
