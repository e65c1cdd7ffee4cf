"""Loading algebra and module presentation documents (JSON).

Algebra documents::

    {"kind": "ring", "carrier": ["0", "1", ...], "mul": [[...]], "add": [[...]],
     "zero": "0", "one": "1"}
    {"kind": "monoid_zero", "carrier": [...], "mul": [[...]]}
    {"kind": "lattice", "carrier": [...], "mul": [[...]], "add": [[...]]}
    {"kind": "lattice", "elements": [...], "covers": [["a", "b"], ...]}
    {"kind": "monomial", "variables": ["x", "y"], "inverted": ["y"]}
    {"kind": "monomial", "variables": ["x"], "truncation": {"x": 3},
     "relations": [["x*y", "0"], ["x^3", "x^2"]]}

Table entries are element names.  A monomial document with a truncation or
relations denotes the finite quotient monoid.  Module documents reference
their algebra inline or by path::

    {"kind": "module", "algebra": "z6.json", "carrier": [...], "action": [[...]],
     "add": [[...]], "zero": "0"}
    {"kind": "module", "algebra": {...}, "quotient": [["x", "0"]]}
"""
from __future__ import annotations

import itertools
import json
from pathlib import Path

from .algebra import FiniteAlgebra, MonomialAlgebra, lattice_algebra
from .congruence import RModule, congruence_from_pairs, quotient_module
from .errors import AxiomError, CohsiteError, DocumentError
from .lattice import DistLattice

ALGEBRA_KINDS = {"ring": "ring", "monoid_zero": "monoid", "monoid": "monoid", "lattice": "lattice",
                 "monomial": "monomial"}
FINITE_MONOMIAL_BOUND = 4096


def read_document(source):
    """Parse a JSON document from a path, a JSON string or an already-parsed dict."""
    if isinstance(source, dict):
        return source
    text = source
    where = "<string>"
    if isinstance(source, Path) or (isinstance(source, str) and not source.lstrip().startswith("{")):
        where = str(source)
        try:
            text = Path(source).read_text()
        except OSError as exc:
            raise DocumentError(f"cannot read document ({exc.strerror})", where) from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"expected {exc.msg.lower()}", f"{where}:{exc.lineno}:{exc.colno}") from None
    if not isinstance(doc, dict):
        raise DocumentError("expected an object at top level", where)
    return doc


def _need(doc, key, where):
    if key not in doc:
        raise DocumentError(f"missing field {key!r}", where)
    return doc[key]


def _table(doc, key, index, where):
    rows = _need(doc, key, where)
    n = len(index)
    if not isinstance(rows, list) or len(rows) != n:
        raise DocumentError(f"expected {n} rows", f"{where}.{key}")
    out = []
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise DocumentError(f"expected a row of {n} entries", f"{where}.{key}[{i}]")
        try:
            out.append([index[str(x)] for x in row])
        except KeyError as exc:
            j = [str(x) for x in row].index(exc.args[0])
            raise DocumentError(f"unknown element {exc.args[0]!r}", f"{where}.{key}[{i}][{j}]") from None
    return out


def load_algebra(source, where="algebra"):
    """Build and validate an algebra from a presentation document."""
    doc = read_document(source)
    kind = _need(doc, "kind", where)
    if kind not in ALGEBRA_KINDS:
        raise DocumentError(f"unknown kind {kind!r}; expected one of {sorted(ALGEBRA_KINDS)}", f"{where}.kind")
    if kind == "monomial":
        return _load_monomial(doc, where)
    if kind == "lattice" and "covers" in doc:
        A = lattice_algebra(DistLattice.from_document(doc))
        A.label = doc.get("name", A.label)
        return A
    carrier = [str(x) for x in _need(doc, "carrier", where)]
    if len(set(carrier)) != len(carrier) or not carrier:
        raise DocumentError("carrier must be a non-empty list of distinct names", f"{where}.carrier")
    index = {x: i for i, x in enumerate(carrier)}
    mul = _table(doc, "mul", index, where)
    add = _table(doc, "add", index, where) if ALGEBRA_KINDS[kind] != "monoid" else None
    zero, one = str(doc.get("zero", "0")), str(doc.get("one", "1"))
    for key, val in (("zero", zero), ("one", one)):
        if val not in index:
            raise DocumentError(f"{val!r} is not in the carrier", f"{where}.{key}")
    return FiniteAlgebra(ALGEBRA_KINDS[kind], carrier, mul, zero, one, add, label=doc.get("name"))


def _load_monomial(doc, where):
    if "variables" in doc:
        variables = [str(v) for v in doc["variables"]]
    else:
        k = _need(doc, "rank", where)
        variables = [f"x{i + 1}" for i in range(int(k))]
    inverted = [str(v) for v in doc.get("inverted", [])]
    for v in inverted:
        if v not in variables:
            raise DocumentError(f"unknown variable {v!r}", f"{where}.inverted")
    if not doc.get("truncation") and not doc.get("relations"):
        return MonomialAlgebra(variables, inverted)
    if inverted:
        raise DocumentError("finite monomial quotients cannot invert variables", f"{where}.inverted")
    return finite_monomial_monoid(variables, doc.get("truncation", {}), doc.get("relations", []),
                                  where=where, label=doc.get("name"))


def finite_monomial_monoid(variables, truncation=None, relations=(), where="algebra", label=None):
    """The finite monoid F1[x..]/(x_i^{n_i} = 0, relations), with 0 adjoined.

    Every variable needs a bound: a truncation x^n = 0, or a relation
    x^a = x^b with a > b.
    """
    M = MonomialAlgebra(variables)
    truncation = {str(k): int(v) for k, v in (truncation or {}).items()}
    try:
        rels = [(M.element(a), M.element(b)) for a, b in relations]
    except CohsiteError as exc:
        raise DocumentError(str(exc), f"{where}.relations") from None
    box, cycle = [], []
    for i, v in enumerate(variables):
        if v in truncation:
            box.append(truncation[v])
            cycle.append(None)
            continue
        pure = [(a, b) for a, b in rels if a is not None and b is not None
                and all(a[j] == 0 == b[j] for j in range(M.k) if j != i) and a[i] != b[i]]
        if not pure:
            raise DocumentError(f"variable {v!r} needs a truncation or a relation {v}^a = {v}^b",
                                f"{where}.truncation")
        a, b = max(pure[0][0][i], pure[0][1][i]), min(pure[0][0][i], pure[0][1][i])
        box.append(a)
        cycle.append((b, a - b))
    size = 1
    for b in box:
        size *= b
    if size + 1 > FINITE_MONOMIAL_BOUND:
        raise DocumentError(f"quotient has up to {size + 1} elements (bound {FINITE_MONOMIAL_BOUND})", where)
    exps = list(itertools.product(*[range(b) for b in box]))

    def reduce(e):
        if e is None:
            return None
        out = []
        for x, bound, cyc in zip(e, box, cycle):
            if x >= bound:
                if cyc is None:
                    return None
                start, period = cyc
                x = start + (x - start) % period
            out.append(x)
        return tuple(out)

    elems = exps + [None]
    pos = {e: i for i, e in enumerate(elems)}
    mul = [[pos[reduce(M.mul(a, b))] for b in elems] for a in elems]
    names = [M.name(e) for e in elems]
    A = FiniteAlgebra("monoid", names, mul, "0", "1", validate=False, label=label)
    pairs = [(pos[reduce(a)], pos[reduce(b)]) for a, b in rels]
    if pairs:
        c = congruence_from_pairs(RModule.regular(A), pairs)
        Q, proj = quotient_module(RModule.regular(A), c)
        reps = sorted(set(c.labels))
        qmul = [[proj[A.mul(a, b)] for b in reps] for a in reps]
        names = [A.names[r] for r in reps]
        names[proj[A.zero]] = "0"
        A = FiniteAlgebra("monoid", names, qmul, proj[A.zero], proj[A.one], validate=False, label=label)
    A.label = label or "F1[" + ",".join(variables) + "]/~"
    try:
        A.validate()
    except AxiomError as exc:
        raise DocumentError(str(exc), where) from None
    return A


def load_module(source, where="module", base=None):
    """Build and validate a finite module document.  Relative algebra paths resolve against ``base``."""
    doc = read_document(source)
    if base is None and isinstance(source, (str, Path)) and not str(source).lstrip().startswith("{"):
        base = Path(source).parent
    if doc.get("kind", "module") != "module":
        raise DocumentError("expected kind 'module'", f"{where}.kind")
    alg = _need(doc, "algebra", where)
    if isinstance(alg, str) and base is not None and not Path(alg).is_absolute():
        alg = str(Path(base) / alg)
    R = load_algebra(alg, f"{where}.algebra")
    if not isinstance(R, FiniteAlgebra):
        raise DocumentError("modules need a finite algebra", f"{where}.algebra")
    if "quotient" in doc or doc.get("regular"):
        reg = RModule.regular(R)
        try:
            pairs = [(R.element(a), R.element(b)) for a, b in doc.get("quotient", [])]
        except (CohsiteError, ValueError, TypeError) as exc:
            raise DocumentError(str(exc), f"{where}.quotient") from None
        Q, _ = quotient_module(reg, congruence_from_pairs(reg, pairs))
        Q.label = doc.get("name", Q.label)
        return Q
    carrier = [str(x) for x in _need(doc, "carrier", where)]
    index = {x: i for i, x in enumerate(carrier)}
    rows = _need(doc, "action", where)
    if not isinstance(rows, list) or len(rows) != R.n:
        raise DocumentError(f"expected one row per algebra element ({R.n})", f"{where}.action")
    act = []
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != len(carrier):
            raise DocumentError(f"expected a row of {len(carrier)} entries", f"{where}.action[{i}]")
        try:
            act.append([index[str(x)] for x in row])
        except KeyError as exc:
            raise DocumentError(f"unknown element {exc.args[0]!r}", f"{where}.action[{i}]") from None
    add = _table(doc, "add", index, where) if "add" in doc else None
    if (add is None) != (R.add_table is None):
        raise DocumentError("module needs an 'add' table exactly when the algebra has one", where)
    zero = str(doc.get("zero", carrier[0]))
    if zero not in index:
        raise DocumentError(f"{zero!r} is not in the carrier", f"{where}.zero")
    return RModule(R, carrier, act, index[zero], add, label=doc.get("name", "M"))


def dump(doc) -> str:
    """Deterministic JSON text."""
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
