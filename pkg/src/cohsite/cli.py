"""Command-line front end.

Exit codes: 0 verdict true or success, 1 verdict false, 2 input error, 3 size guard.
"""
from __future__ import annotations

import argparse
import contextlib
import sys
from pathlib import Path

import numpy as np

from . import lattice as lattice_mod
from . import spectrum as spectrum_mod
from .algebra import FiniteAlgebra, Hom, MonomialAlgebra, find_isomorphism
from .catalog import lattice_catalog, monoid_catalog, monomial_catalog, ring_catalog, ring_products
from .documents import dump, load_algebra, load_module, read_document
from .errors import CohsiteError, SizeGuardError
from .lattice import DistLattice, distributive_lattices, stone_roundtrip, stone_space
from .scheme import SpecScheme, chart_restriction_check, counit_check, glue, is_affine
from .sheaves import shf, zar_faithfulness_sweep
from .site import TAGS, covers, descent_check, partition_of_unity, topology_axiom_check

EXIT_TRUE, EXIT_FALSE, EXIT_INPUT, EXIT_GUARD = 0, 1, 2, 3

CATALOGS = {
    "rings": lambda: ring_catalog(30) + ring_products(),
    "small-rings": lambda: ring_catalog(12) + ring_products(),
    "monoids": lambda: monoid_catalog(),
    "lattices": lambda: lattice_catalog(6),
    "monomial": lambda: monomial_catalog(),
}


class InputError(CohsiteError):
    pass


def split_elements(text):
    """Split on commas that are not inside parentheses."""
    out, depth, cur = [], 0, ""
    for ch in text:
        if ch == "," and depth == 0:
            out.append(cur.strip())
            cur = ""
            continue
        depth += {"(": 1, ")": -1}.get(ch, 0)
        cur += ch
    if cur.strip():
        out.append(cur.strip())
    return out


def parse_family(R, text):
    if text is None or text.strip() == "":
        return []
    return [R.element(x) for x in split_elements(text)]


def parse_matrix(text, k):
    if text is None:
        return np.eye(k, dtype=np.int64)
    rows = [[int(v) for v in row.split(",")] for row in text.split(";")]
    M = np.array(rows, dtype=np.int64)
    if M.shape != (k, k):
        raise InputError(f"--matrix must be {k}x{k}, got {M.shape[0]}x{M.shape[1] if M.ndim > 1 else 0}")
    return M


def catalog(name):
    if name == "all":
        return [A for key in ("rings", "monoids", "lattices") for A in CATALOGS[key]()]
    if name not in CATALOGS:
        raise InputError(f"unknown catalog {name!r}; expected one of {sorted(CATALOGS) + ['all']}")
    return CATALOGS[name]()


# ---------------------------------------------------------------------------
# scheme sources


def build_scheme(args):
    if args.algebra:
        return SpecScheme(load_algebra(args.algebra), args.topology)
    if args.left and args.right:
        return build_glued(args)
    raise InputError("give --algebra, or --left and --right with the gluing opens")


def build_glued(args):
    A, B = load_algebra(args.left, "left"), load_algebra(args.right, "right")
    X, Y = SpecScheme(A, args.topology), SpecScheme(B, args.topology)
    ux = X.O.classify(parse_family(A, args.left_open))
    uy = Y.O.classify(parse_family(B, args.right_open))
    VA, VB = X.value(ux), Y.value(uy)
    if isinstance(VA, MonomialAlgebra) and isinstance(VB, MonomialAlgebra):
        theta = Hom(VA, VB, matrix=parse_matrix(args.matrix, VA.k))
    elif isinstance(VA, FiniteAlgebra) and isinstance(VB, FiniteAlgebra):
        if args.map:
            pairs = dict(kv.split("=", 1) for kv in split_elements(args.map))
            table = [VB.element(pairs[VA.name(x)]) if VA.name(x) in pairs else None for x in VA.elements()]
            if None in table:
                raise InputError("--map must list every element of the overlap value")
        else:
            table = find_isomorphism(VA, VB)
            if table is None:
                raise InputError(f"the overlap values {VA.label} and {VB.label} are not isomorphic")
        theta = Hom(VA, VB, table)
    else:
        raise InputError("the two overlap values are of different kinds")
    return glue(X, Y, ux, uy, theta, names=(args.left_name, args.right_name))


# ---------------------------------------------------------------------------
# verbs


def cmd_spec(args):
    X = SpecScheme(load_algebra(args.algebra), args.topology)
    return EXIT_TRUE, X.to_document(), X.to_dot(X.label)


def cmd_cover_check(args):
    R = load_algebra(args.algebra)
    F = parse_family(R, args.elements)
    ok = covers(R, F, args.topology)
    doc = {"algebra": R.label, "family": [R.name(f) for f in F], "topology": args.topology, "cover": ok}
    if ok and args.topology == "zar":
        found = partition_of_unity(R, F)
        if found is not None:
            psi, N = found
            doc["partition_of_unity"] = {"psi": psi.describe(), "exponent": N}
    return (EXIT_TRUE if ok else EXIT_FALSE), doc, None


def cmd_descent(args):
    R = load_algebra(args.algebra)
    rep = descent_check(R, parse_family(R, args.elements))
    return (EXIT_TRUE if rep.exact else EXIT_FALSE), rep.to_document(), None


def cmd_glue(args):
    Z = build_glued(args)
    doc = Z.to_document()
    doc["charts_recovered"] = [bool(chart_restriction_check(Z, 0)), bool(chart_restriction_check(Z, 1))]
    return EXIT_TRUE, doc, Z.to_dot(Z.label)


def _algebra_doc(G):
    doc = {"algebra": G.label}
    if isinstance(G, FiniteAlgebra):
        doc["size"] = G.n
        doc["elements"] = list(G.names)
    else:
        doc["size"] = "infinite"
        doc["presentation"] = G.to_document()
    return doc


def cmd_gamma(args):
    X = build_scheme(args)
    doc = {"scheme": X.label, "gamma": _algebra_doc(X.global_sections())}
    code = EXIT_TRUE
    if args.algebra:
        wit = counit_check(X.R, args.topology)
        doc["counit"] = {"iso": bool(wit), "map": wit.forward}
        if not wit:
            doc["counit"]["failure"] = wit.counterexample
            code = EXIT_FALSE
    return code, doc, None


def cmd_affine(args):
    X = build_scheme(args)
    rep = is_affine(X)
    doc = {"scheme": X.label, "affine": rep.affine, "reason": rep.reason, "points": len(X.space),
           "opens": X.opens.n, "gamma": rep.gamma.label}
    return (EXIT_TRUE if rep else EXIT_FALSE), doc, None


def cmd_duality(args):
    if args.lattice:
        L = DistLattice.from_document(read_document(args.lattice))
        wit = stone_roundtrip(L)
        X, _, _ = stone_space(L)
        doc = {"lattice": L.to_document(), "space": X.to_document(), "roundtrip": bool(wit)}
        if not wit:
            doc["failure"] = wit.counterexample
        return (EXIT_TRUE if wit else EXIT_FALSE), doc, X.to_dot("pt(L)")
    lats = distributive_lattices(args.max_size)
    fails = [i for i, L in enumerate(lats) if not stone_roundtrip(L)]
    doc = {"max_size": args.max_size, "lattices": len(lats), "failures": fails}
    return (EXIT_FALSE if fails else EXIT_TRUE), doc, None


def cmd_vanish(args):
    M = load_module(args.module)
    S = shf(M.R, M, args.topology)
    zero = all(S.stalk(p).is_zero for p in range(len(S.base.space)))
    doc = S.to_document()
    doc["zero"] = zero
    if not zero:
        doc["witness"] = next(str(p) for p, V in sorted(S.stalks().items()) if not V.is_zero)
    return (EXIT_TRUE if zero else EXIT_FALSE), doc, None


def cmd_sweep(args):
    rep = zar_faithfulness_sweep(catalog(args.catalog), args.topology, args.max_family)
    doc = rep.to_document()
    return (EXIT_TRUE if rep.ok else EXIT_FALSE), doc, None


def cmd_axioms(args):
    algs = catalog(args.catalog)
    rep = topology_axiom_check(algs, args.topology, args.max_family)
    return (EXIT_TRUE if rep.ok else EXIT_FALSE), rep.to_document(), None


VERBS = {
    "spec": (cmd_spec, "points, opens and structure sheaf of Spec R"),
    "cover-check": (cmd_cover_check, "whether a family of elements covers"),
    "descent": (cmd_descent, "the descent fork of a family and its exactness"),
    "glue": (cmd_glue, "glue two spectra along an open"),
    "gamma": (cmd_gamma, "global sections (and the counit for a spectrum)"),
    "affine": (cmd_affine, "whether a scheme is isomorphic to Spec of its global sections"),
    "duality": (cmd_duality, "lattice -> space -> lattice round trip"),
    "vanish": (cmd_vanish, "stalks of the module sheaf and whether it vanishes"),
    "sweep": (cmd_sweep, "faithfulness sweep over a catalog"),
    "axioms": (cmd_axioms, "topology axioms over a catalog"),
}


def build_parser():
    parser = argparse.ArgumentParser(prog="cohsite", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--topology", choices=TAGS, default="zar")
    common.add_argument("--out", choices=("doc", "dot"), default="doc", help="output format")
    common.add_argument("--output", help="write to this file instead of standard output")
    common.add_argument("--budget", type=int, help="raise the size guard for spectra and ideal lattices")

    glue_opts = argparse.ArgumentParser(add_help=False)
    glue_opts.add_argument("--left")
    glue_opts.add_argument("--right")
    glue_opts.add_argument("--left-open", help="family (comma separated) naming the open of the left spectrum")
    glue_opts.add_argument("--right-open")
    glue_opts.add_argument("--matrix", help="monomial gluing exponent matrix, rows separated by ';'")
    glue_opts.add_argument("--map", help="finite gluing map as a=b pairs")
    glue_opts.add_argument("--left-name", default="X")
    glue_opts.add_argument("--right-name", default="Y")

    for verb, (_, help_text) in VERBS.items():
        parents = [common] + ([glue_opts] if verb in ("glue", "gamma", "affine") else [])
        p = sub.add_parser(verb, help=help_text, parents=parents)
        if verb in ("spec", "cover-check", "descent", "gamma", "affine"):
            p.add_argument("--algebra", required=verb in ("spec", "cover-check", "descent"))
        if verb in ("cover-check", "descent"):
            p.add_argument("--elements", required=True)
        if verb == "duality":
            p.add_argument("--lattice")
            p.add_argument("--max-size", type=int, default=8)
        if verb == "vanish":
            p.add_argument("--module", required=True)
        if verb in ("sweep", "axioms"):
            p.add_argument("--catalog", default="rings")
            p.add_argument("--max-family", type=int, default=2)
    return parser


def run(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        # usage errors and --help go to the caller's streams
        with contextlib.redirect_stdout(stdout), contextlib.redirect_stderr(stderr):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_TRUE
    saved = spectrum_mod.OMEGA_BUDGET, spectrum_mod.IDEAL_BUDGET, lattice_mod.COMP_BUDGET
    if args.budget:
        spectrum_mod.OMEGA_BUDGET = spectrum_mod.IDEAL_BUDGET = lattice_mod.COMP_BUDGET = args.budget
    try:
        code, doc, dot = VERBS[args.verb][0](args)
    except SizeGuardError as exc:
        print(f"size guard: {exc}", file=stderr)
        return EXIT_GUARD
    except (CohsiteError, KeyError, ValueError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=stderr)
        return EXIT_INPUT
    finally:
        spectrum_mod.OMEGA_BUDGET, spectrum_mod.IDEAL_BUDGET, lattice_mod.COMP_BUDGET = saved
    if args.out == "dot":
        if dot is None:
            print(f"error: {args.verb} has no dot output", file=stderr)
            return EXIT_INPUT
        text = dot
    else:
        text = dump(doc)
    if args.output:
        Path(args.output).write_text(text)
    else:
        stdout.write(text)
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
