"""Commutative monoid objects in three algebraic types, with ideals and localizations.

``FiniteAlgebra`` covers monoids with zero (``kind="monoid"``, the pointed-set
case), finite commutative rings (``kind="ring"``) and distributive lattices
(``kind="lattice"``: multiplication is meet, the additive operator is join).
Elements are integer indices.  ``MonomialAlgebra`` is the infinite exponent
monoid: elements are ``None`` (zero) or exponent tuples.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
import numpy as np

from .errors import AxiomError, CohsiteError, UnsupportedError

KINDS = ("monoid", "ring", "lattice")


class FiniteAlgebra:
    """A finite commutative monoid object given by tables.

    ``add`` is the binary V-operator (group addition for rings, join for
    lattices) and is ``None`` for monoids, whose only operator is the constant 0.
    """

    def __init__(self, kind, names, mul, zero=None, one=None, add=None, validate=True, label=None):
        if kind not in KINDS:
            raise CohsiteError(f"unknown algebra kind {kind!r}")
        self.kind = kind
        self.names = tuple(str(x) for x in names)
        self.n = len(self.names)
        self.mul_table = np.asarray(mul, dtype=np.int64)
        self.mul_table.setflags(write=False)
        self.add_table = None if add is None else np.asarray(add, dtype=np.int64)
        if self.add_table is not None:
            self.add_table.setflags(write=False)
        if (kind == "monoid") != (add is None):
            raise CohsiteError(f"kind {kind!r} {'forbids' if kind == 'monoid' else 'requires'} an add table")
        self._index = {x: i for i, x in enumerate(self.names)}
        if len(self._index) != self.n:
            raise AxiomError("distinct element names", self.names)
        self.zero = self._find(zero, "0")
        self.one = self._find(one, "1")
        self.label = label or f"{kind}[{self.n}]"
        self._cache = {}
        if validate:
            self.validate()
        inv = np.full(self.n, -1)
        for a, b in np.argwhere(self.mul_table == self.one):
            inv[a] = b
        self._inverse = inv
        if kind == "ring":
            neg = np.full(self.n, -1)
            for a, b in np.argwhere(self.add_table == self.zero):
                neg[a] = b
            self._neg = neg

    def _find(self, name, default):
        if name is None:
            name = default
        if isinstance(name, (int, np.integer)):
            return int(name)
        if name not in self._index:
            raise AxiomError(f"distinguished element {name!r} present", self.names)
        return self._index[name]

    def __repr__(self):
        return f"FiniteAlgebra({self.label})"

    def __len__(self):
        return self.n

    # -- element access -----------------------------------------------------
    def elements(self):
        return range(self.n)

    def element(self, name):
        try:
            return self._index[str(name).strip()]
        except KeyError:
            raise CohsiteError(f"{name!r} is not an element of {self.label}") from None

    def name(self, x):
        return self.names[x]

    def mul(self, a, b):
        return int(self.mul_table[a, b])

    def add(self, a, b):
        return int(self.add_table[a, b])

    def neg(self, a):
        return int(self._neg[a])

    def power(self, a, k):
        out = self.one
        for _ in range(k):
            out = int(self.mul_table[out, a])
        return out

    def product(self, elems):
        out = self.one
        for e in elems:
            out = int(self.mul_table[out, e])
        return out

    def is_unit(self, a):
        return self._inverse[a] >= 0

    def inverse(self, a):
        inv = int(self._inverse[a])
        if inv < 0:
            raise CohsiteError(f"{self.names[a]} is not a unit")
        return inv

    @property
    def trivial(self):
        return self.n == 1

    @property
    def finite(self):
        return True

    def idempotent_power(self, f):
        """The idempotent in the cyclic semigroup generated by ``f``."""
        seen = {}
        x, k = f, 1
        while x not in seen:
            seen[x] = k
            x, k = self.mul(x, f), k + 1
        start, period = seen[x], k - seen[x]
        m = ((start + period - 1) // period) * period
        return self.power(f, m)

    # -- validation ---------------------------------------------------------
    def validate(self):
        M, n, N = self.mul_table, self.n, self.names
        r = np.arange(n)
        if M.shape != (n, n) or M.min() < 0 or M.max() >= n:
            raise AxiomError("multiplication table is n x n over the carrier", (M.shape,))

        def w(mask):
            return tuple(N[int(i)] for i in np.argwhere(mask)[0])

        if (M != M.T).any():
            raise AxiomError("commutativity of *", w(M != M.T))
        assoc = M[M[:, :, None], r[None, None, :]] != M[r[:, None, None], M[None, :, :]]
        if assoc.any():
            raise AxiomError("associativity of *", w(assoc))
        if (M[self.one] != r).any():
            raise AxiomError("1 is a multiplicative unit", w(M[self.one] != r)[:1])
        if (M[self.zero] != self.zero).any():
            raise AxiomError("0 is absorbing", w(M[self.zero] != self.zero)[:1])
        if self.add_table is None:
            return
        A = self.add_table
        if A.shape != (n, n) or A.min() < 0 or A.max() >= n:
            raise AxiomError("addition table is n x n over the carrier", (A.shape,))
        if (A != A.T).any():
            raise AxiomError("commutativity of +", w(A != A.T))
        assoc = A[A[:, :, None], r[None, None, :]] != A[r[:, None, None], A[None, :, :]]
        if assoc.any():
            raise AxiomError("associativity of +", w(assoc))
        if (A[self.zero] != r).any():
            raise AxiomError("0 is an additive unit", w(A[self.zero] != r)[:1])
        dist = M[r[:, None, None], A[None, :, :]] != A[M[:, :, None], M[:, None, :]]
        if dist.any():
            raise AxiomError("distributivity", w(dist))
        if self.kind == "ring":
            has_neg = (A == self.zero).any(axis=1)
            if not has_neg.all():
                raise AxiomError("additive inverses", (N[int(np.argmin(has_neg))],))
        else:
            if (A[r, r] != r).any():
                raise AxiomError("idempotent join", w(A[r, r] != r)[:1])
            if (M[r, r] != r).any():
                raise AxiomError("idempotent meet", w(M[r, r] != r)[:1])

    # -- V-operations and spans --------------------------------------------
    def span(self, elems):
        """Closure of ``elems`` plus 0 under the V-operator."""
        out = {self.zero} | {int(e) for e in elems}
        if self.add_table is None:
            return frozenset(out)
        idx = np.fromiter(sorted(out), dtype=np.int64)
        while True:
            grown = np.union1d(idx, self.add_table[np.ix_(idx, idx)].ravel())
            if len(grown) == len(idx):
                return frozenset(idx.tolist())
            idx = grown

    def ideal_closure(self, gens):
        M = self.mul_table
        return self.span({int(M[r, g]) for g in gens for r in range(self.n)})

    # -- tables ---------------------------------------------------------------
    def to_document(self):
        doc = {"kind": self.kind, "carrier": list(self.names),
               "mul": [[self.names[int(c)] for c in row] for row in self.mul_table],
               "zero": self.names[self.zero], "one": self.names[self.one]}
        if self.add_table is not None:
            doc["add"] = [[self.names[int(c)] for c in row] for row in self.add_table]
        return doc


def trivial_algebra(kind="monoid"):
    add = None if kind == "monoid" else [[0]]
    return FiniteAlgebra(kind, ["0"], [[0]], 0, 0, add, validate=False, label=f"0_{kind}")


def zmod(n):
    r = np.arange(n)
    return FiniteAlgebra("ring", [str(i) for i in r], (r[:, None] * r[None, :]) % n,
                         "0", "1" if n > 1 else "0", (r[:, None] + r[None, :]) % n, validate=False,
                         label=f"Z/{n}")


def product_algebra(*algs):
    """Finite direct product with componentwise operations."""
    kind = algs[0].kind
    if any(a.kind != kind for a in algs):
        raise CohsiteError("product of algebras of different kinds")
    elems = list(itertools.product(*[range(a.n) for a in algs]))
    pos = {e: i for i, e in enumerate(elems)}
    names = ["(" + ",".join(a.names[x] for a, x in zip(algs, e)) + ")" for e in elems]
    mul = [[pos[tuple(a.mul(x, y) for a, x, y in zip(algs, e, f))] for f in elems] for e in elems]
    add = None
    if kind != "monoid":
        add = [[pos[tuple(a.add(x, y) for a, x, y in zip(algs, e, f))] for f in elems] for e in elems]
    zero = pos[tuple(a.zero for a in algs)]
    one = pos[tuple(a.one for a in algs)]
    return FiniteAlgebra(kind, names, mul, zero, one, add, validate=False,
                         label=" x ".join(a.label for a in algs))


def lattice_algebra(L):
    """A distributive lattice as a commutative monoid object (meet as product, join as operator)."""
    return FiniteAlgebra("lattice", L.labels, L.meet_table, L.bottom, L.top, L.join_table,
                         validate=False, label=f"Lat[{L.n}]")


# ---------------------------------------------------------------------------
# monomial backend

SIGNS = ("+", "-", "±", "0")
_SIGN_OK = {"+": lambda e: e >= 0, "-": lambda e: e <= 0, "±": lambda e: True, "0": lambda e: e == 0}
_TERM = re.compile(r"^([A-Za-z_][A-Za-z_0-9]*)(?:\^\(?(-?\d+)\)?)?$")


class MonomialAlgebra:
    """Laurent monomials in k variables cut down by a sign per coordinate, plus 0.

    Signs: ``+`` (exponent >= 0), ``-`` (<= 0), ``±`` (inverted, any exponent)
    and ``0`` (exponent fixed at 0).  The usual F1[x_1..x_k] has every sign
    ``+``; ``inverted`` lists coordinates with sign ``±``.
    """

    def __init__(self, variables, inverted=(), signs=None):
        self.variables = tuple(str(v) for v in variables)
        self.k = len(self.variables)
        if signs is None:
            signs = ["+"] * self.k
            for v in inverted:
                signs[self.variables.index(v) if isinstance(v, str) else int(v)] = "±"
        self.signs = tuple(signs)
        if len(self.signs) != self.k or any(c not in SIGNS for c in self.signs):
            raise CohsiteError(f"bad sign pattern {self.signs!r}")
        self.inverted = frozenset(i for i, c in enumerate(self.signs) if c == "±")
        self.zero = None
        self.one = (0,) * self.k
        self._cache = {}
        shown = [{"+": v, "-": f"{v}^-1", "±": f"{v}^±"}[c] for v, c in zip(self.variables, self.signs) if c != "0"]
        self.label = f"F1[{','.join(shown)}]" if shown else "F1"
        self.kind = "monomial"

    def __repr__(self):
        return f"MonomialAlgebra({self.label})"

    def __eq__(self, other):
        return (isinstance(other, MonomialAlgebra) and self.variables == other.variables
                and self.signs == other.signs)

    def __hash__(self):
        return hash((self.variables, self.signs))

    @property
    def trivial(self):
        return False

    @property
    def finite(self):
        return False

    @property
    def free(self):
        """Coordinates carrying a one-sided sign (the non-invertible directions)."""
        return tuple(i for i, c in enumerate(self.signs) if c in "+-")

    def contains(self, x):
        if x is None:
            return True
        return len(x) == self.k and all(_SIGN_OK[c](e) for c, e in zip(self.signs, x))

    def mul(self, a, b):
        if a is None or b is None:
            return None
        return tuple(p + q for p, q in zip(a, b))

    def power(self, a, n):
        if a is None:
            return None if n else self.one
        return tuple(n * p for p in a)

    def product(self, elems):
        out = self.one
        for e in elems:
            out = self.mul(out, e)
        return out

    def is_unit(self, a):
        return a is not None and all(a[i] == 0 for i in self.free)

    def inverse(self, a):
        if not self.is_unit(a):
            raise CohsiteError(f"{self.name(a)} is not a unit")
        return tuple(-p for p in a)

    def divides(self, a, b):
        """Whether b lies in the principal ideal (a)."""
        if b is None:
            return True
        if a is None:
            return False
        return self.contains(tuple(q - p for p, q in zip(a, b)))

    def support(self, a):
        """Non-inverted coordinates occurring in ``a`` (the squarefree part)."""
        return frozenset(i for i in self.free if a[i] != 0)

    def squarefree(self, support):
        """The monomial with exponent +-1 on ``support`` (sign following the cone)."""
        return tuple((-1 if self.signs[i] == "-" else 1) if i in support else 0 for i in range(self.k))

    def canonical(self, a):
        """Associate of ``a`` with inverted coordinates cleared."""
        if a is None:
            return None
        return tuple(0 if i in self.inverted else p for i, p in enumerate(a))

    def name(self, a):
        if a is None:
            return "0"
        parts = []
        for v, p in zip(self.variables, a):
            if p == 1:
                parts.append(v)
            elif p:
                parts.append(f"{v}^{p}")
        return "*".join(parts) or "1"

    def element(self, text):
        text = str(text).strip()
        if text == "0":
            return None
        exps = [0] * self.k
        if text != "1":
            for term in text.split("*"):
                m = _TERM.match(term.strip())
                if not m or m.group(1) not in self.variables:
                    raise CohsiteError(f"cannot parse monomial {text!r}")
                exps[self.variables.index(m.group(1))] += int(m.group(2) or 1)
        x = tuple(exps)
        if not self.contains(x):
            raise CohsiteError(f"{text!r} is not in {self.label}")
        return x

    def monomials(self, max_degree, negative=1):
        """Sample of elements with total degree <= max_degree (inverted exponents reach down to -negative)."""
        span = {"+": range(0, max_degree + 1), "-": range(-max_degree, 1),
                "±": range(-negative, max_degree + 1), "0": range(0, 1)}
        ranges = [span[c] for c in self.signs]
        out = [None]
        for e in itertools.product(*ranges):
            if sum(abs(p) for p in e) <= max_degree:
                out.append(tuple(e))
        return out

    def to_document(self):
        doc = {"kind": "monomial", "variables": list(self.variables),
               "inverted": [self.variables[i] for i in sorted(self.inverted)]}
        if any(c in "-0" for c in self.signs):
            doc["signs"] = list(self.signs)
        return doc

    def localized_at(self, f):
        """The cone with the support of ``f`` inverted."""
        supp = self.support(f)
        return MonomialAlgebra(self.variables, signs=["±" if i in supp else c for i, c in enumerate(self.signs)])


# ---------------------------------------------------------------------------
# homomorphisms


class Hom:
    """A homomorphism of commutative monoid objects.

    Exactly one of ``table`` (finite source: list of target elements) or
    ``matrix`` (monomial to monomial: exponent map, 0 to 0) is given; a trivial
    target needs neither.
    """

    def __init__(self, source, target, table=None, matrix=None, name=""):
        self.source, self.target, self.name = source, target, name
        self.table = None if table is None else tuple(table)
        self.matrix = None if matrix is None else np.asarray(matrix, dtype=np.int64).reshape(target.k, source.k)
        self._identity = self.matrix is not None and source.k == target.k and (
            self.matrix == np.eye(source.k, dtype=np.int64)).all()
        if self.table is None and self.matrix is None and not target.trivial:
            raise CohsiteError("a homomorphism needs a table or an exponent matrix")

    def __call__(self, x):
        if self.target.trivial:
            return self.target.zero
        if self.table is not None:
            return self.table[x]
        if x is None or self._identity:
            return x
        return tuple(int(v) for v in self.matrix @ np.asarray(x, dtype=np.int64))

    def __repr__(self):
        return f"Hom({self.source.label} -> {self.target.label})"

    def compose(self, first):
        """``self`` after ``first``."""
        src = first.source
        if isinstance(src, FiniteAlgebra):
            return Hom(src, self.target, [self(first(x)) for x in src.elements()])
        if self.target.trivial:
            return Hom(src, self.target)
        if first.target.trivial:
            raise UnsupportedError("composite through a trivial algebra into a monomial one")
        return Hom(src, self.target, matrix=self.matrix @ first.matrix)

    def check(self, sample=None):
        """Raise AxiomError unless the map preserves 0, 1, products and the V-operator."""
        A, B = self.source, self.target
        if self(A.one) != B.one or self(A.zero) != B.zero:
            raise AxiomError("homomorphism preserves 0 and 1", (self.name,))
        elems = list(A.elements()) if isinstance(A, FiniteAlgebra) else (sample or A.monomials(2))
        for x in elems:
            if isinstance(B, MonomialAlgebra) and not B.contains(self(x)):
                raise AxiomError("image lies in the target", (A.name(x),))
            for y in elems:
                if self(A.mul(x, y)) != B.mul(self(x), self(y)):
                    raise AxiomError("homomorphism preserves *", (A.name(x), A.name(y)))
                if getattr(A, "add_table", None) is not None and self(A.add(x, y)) != B.add(self(x), self(y)):
                    raise AxiomError("homomorphism preserves +", (A.name(x), A.name(y)))
        return True

    def is_bijective(self):
        if isinstance(self.source, FiniteAlgebra) and isinstance(self.target, FiniteAlgebra):
            return sorted(self.table) == list(range(self.target.n))
        if isinstance(self.source, MonomialAlgebra) and isinstance(self.target, MonomialAlgebra):
            return monomial_iso(self)
        return False


def monomial_iso(h):
    """Whether a monomial hom given by an exponent matrix maps its source cone onto the target cone."""
    A, B, M = h.source, h.target, h.matrix
    if A.k != B.k:
        return False
    if A.k == 0:
        return True
    if round(abs(np.linalg.det(M))) != 1:
        return False
    Minv = np.rint(np.linalg.inv(M)).astype(np.int64)
    if not (Minv @ M == np.eye(A.k, dtype=np.int64)).all():
        return False
    # generators of each cone must land inside the other cone
    def gens(C):
        out = []
        for i, c in enumerate(C.signs):
            for step in {"+": (1,), "-": (-1,), "±": (1, -1), "0": ()}[c]:
                e = [0] * C.k
                e[i] = step
                out.append(tuple(e))
        return out
    fwd = all(B.contains(tuple(int(v) for v in M @ np.array(g))) for g in gens(A))
    back = all(A.contains(tuple(int(v) for v in Minv @ np.array(g))) for g in gens(B))
    return fwd and back


def identity_hom(A):
    if isinstance(A, FiniteAlgebra):
        return Hom(A, A, list(A.elements()), name="id")
    return Hom(A, A, matrix=np.eye(A.k, dtype=np.int64), name="id")


def hom_from_names(A, B, mapping):
    """Hom of finite algebras from a {name: name} dict (every element listed)."""
    table = [B.element(mapping[A.name(x)]) for x in A.elements()]
    h = Hom(A, B, table)
    h.check()
    return h


# ---------------------------------------------------------------------------
# localization


def localize(R, f):
    """The localization R_f and the canonical map R -> R_f.

    For finite algebras, R_f is realized as eR where e is the idempotent power
    of f: in a finite monoid the pairs (x, f^n) under (x,s) ~ (y,t) iff
    u t x = u s y collapse exactly onto multiplication by e (see
    ``localize_by_fractions`` for the direct quotient).  Results are cached on R.
    """
    key = ("loc", f)
    if key in R._cache:
        return R._cache[key]
    if isinstance(R, MonomialAlgebra):
        if f is None:
            Rf = trivial_algebra("monoid")
            out = (Rf, Hom(R, Rf, name=f"R->R_{R.name(f)}"))
        else:
            Rf = R.localized_at(f)
            out = (Rf, Hom(R, Rf, matrix=np.eye(R.k, dtype=np.int64), name=f"R->R_{R.name(f)}"))
        R._cache[key] = out
        return out
    e = R.idempotent_power(f)
    pre = {}
    for x in R.elements():
        pre.setdefault(R.mul(e, x), x)
    image = sorted(pre, key=pre.get)
    pos = {a: i for i, a in enumerate(image)}
    names = [R.names[pre[a]] for a in image]
    mul = [[pos[R.mul(a, b)] for b in image] for a in image]
    add = None
    if R.add_table is not None:
        add = [[pos[R.mul(e, R.add(a, b))] for b in image] for a in image]
    Rf = FiniteAlgebra(R.kind, names, mul, pos[R.mul(e, R.zero)], pos[e], add, validate=False,
                       label=f"{R.label}_[{R.names[f]}]")
    Rf.parent_map = Hom(R, Rf, [pos[R.mul(e, x)] for x in R.elements()], name=f"R->R_{R.names[f]}")
    Rf.preimage = tuple(pre[a] for a in image)
    out = (Rf, Rf.parent_map)
    R._cache[key] = out
    return out


def localize_by_fractions(R: FiniteAlgebra, f):
    """R_f as the literal quotient of R x {f^n} by (x,s) ~ (y,t) iff u t x = u s y, u in S.

    Returns (classes, to_class) where each class is a frozenset of (x, s) pairs.
    Quadratic in |R x S|; used as an independent oracle.
    """
    S = sorted({R.power(f, k) for k in range(R.n + 1)})
    pairs = [(x, s) for x in R.elements() for s in S]
    classes = []
    for p in pairs:
        for c in classes:
            q = next(iter(c))
            if any(R.mul(R.mul(u, q[1]), p[0]) == R.mul(R.mul(u, p[1]), q[0]) for u in S):
                c.add(p)
                break
        else:
            classes.append({p})
    classes = [frozenset(c) for c in classes]
    to_class = {p: i for i, c in enumerate(classes) for p in c}
    return classes, to_class


def localization_map(R, f, g):
    """The canonical map R_f -> R_{fg}."""
    Rf, _ = localize(R, f)
    fg = R.mul(f, g)
    Rfg, to_fg = localize(R, fg)
    if isinstance(R, MonomialAlgebra):
        if Rfg.trivial:
            return Hom(Rf, Rfg)
        return Hom(Rf, Rfg, matrix=np.eye(R.k, dtype=np.int64))
    return Hom(Rf, Rfg, [to_fg(x) for x in Rf.preimage])


def localized_hom(h: Hom, f):
    """For h: A -> B, the induced A_f -> B_{h(f)}."""
    A, B = h.source, h.target
    Af, _ = localize(A, f)
    Bg, to_g = localize(B, h(f))
    if isinstance(A, FiniteAlgebra):
        if isinstance(B, FiniteAlgebra):
            return Hom(Af, Bg, [to_g(h(x)) for x in Af.preimage])
        raise UnsupportedError("finite algebra mapping into a monomial algebra")
    if Bg.trivial:
        return Hom(Af, Bg)
    if Af.trivial:
        raise CohsiteError("trivial algebra cannot map to a non-trivial one")
    return Hom(Af, Bg, matrix=h.matrix)


def compose_localizations(R, f, g):
    """IsomorphismWitness for (R_f)_{g/1} = R_{fg}."""
    from .lattice import IsomorphismWitness

    Rf, to_f = localize(R, f)
    Rfg2, to_2 = localize(Rf, to_f(g))
    Rfg, to_fg = localize(R, R.mul(f, g))
    if isinstance(R, MonomialAlgebra):
        same = (Rfg2.trivial and Rfg.trivial) or Rfg2 == Rfg
        return IsomorphismWitness({"identity": True}, same, None if same else "cones differ",
                                  {"left": Rfg2, "right": Rfg})
    fwd = {}
    for x in R.elements():
        a, b = to_2(to_f(x)), to_fg(x)
        if fwd.setdefault(a, b) != b:
            return IsomorphismWitness(fwd, False, f"not well defined at {R.name(x)}")
    if len(fwd) != Rfg2.n or len(set(fwd.values())) != Rfg.n or Rfg2.n != Rfg.n:
        return IsomorphismWitness(fwd, False, "comparison map is not bijective")
    return IsomorphismWitness(fwd, detail={"left": Rfg2, "right": Rfg})


# ---------------------------------------------------------------------------
# ideals


class Ideal:
    """A finitely generated ideal.

    Finite parents store the full element set; monomial parents store a
    canonical antichain of monomial generators (membership is divisibility).
    """

    def __init__(self, parent, generators):
        self.parent = parent
        if isinstance(parent, FiniteAlgebra):
            gens = sorted(set(int(g) for g in generators))
            self.elements = parent.ideal_closure(gens) if gens else frozenset([parent.zero])
            self.generators = tuple(_prune_finite(parent, gens))
        else:
            self.generators = tuple(_prune_monomial(parent, generators))
            self.elements = None

    def __contains__(self, x):
        if self.elements is not None:
            return x in self.elements
        return any(self.parent.divides(g, x) for g in self.generators)

    def __eq__(self, other):
        if not isinstance(other, Ideal) or other.parent is not self.parent:
            return NotImplemented
        if self.elements is not None:
            return self.elements == other.elements
        return self.generators == other.generators

    def __hash__(self):
        return hash(self.elements if self.elements is not None else self.generators)

    def __repr__(self):
        return "(" + ",".join(self.parent.name(g) for g in self.generators) + ")"

    def is_unit(self):
        return self.parent.one in self

    def __le__(self, other):
        if self.elements is not None:
            return self.elements <= other.elements
        return all(g in other for g in self.generators)


def _prune_finite(R, gens):
    out = list(gens)
    for g in sorted(gens, reverse=True):
        rest = [h for h in out if h != g]
        if g in (R.ideal_closure(rest) if rest else {R.zero}):
            out = rest
    return out


def _prune_monomial(R, gens):
    gens = {R.canonical(g) for g in gens} - {None}
    keep = [g for g in gens if not any(h != g and R.divides(h, g) for h in gens)]
    if not keep:
        return [None]
    return sorted(keep, key=lambda g: (sum(g), g))


def _same_parent(a, b):
    if a.parent is not b.parent:
        raise CohsiteError("ideals of different algebras")


def ideal_sum(a: Ideal, b: Ideal) -> Ideal:
    _same_parent(a, b)
    return Ideal(a.parent, list(a.generators) + list(b.generators))


def ideal_product(a: Ideal, b: Ideal) -> Ideal:
    _same_parent(a, b)
    R = a.parent
    return Ideal(R, [R.mul(x, y) for x in a.generators for y in b.generators])


def ideal_contains(a: Ideal, x) -> bool:
    return x in a


def is_unit_ideal(a: Ideal) -> bool:
    return a.is_unit()


def extend_ideal(h: Hom, a: Ideal) -> Ideal:
    return Ideal(h.target, [h(g) for g in a.generators])


# ---------------------------------------------------------------------------
# operator terms


@dataclass(frozen=True)
class OperatorTerm:
    """An R-equivariant map R^n -> R.

    ``coefficients`` gives the sum (join for lattices) of a_i * v_i; for monoid
    backends only ``index``/``multiplier`` is used: v -> a * v_j.
    """

    algebra: object
    arity: int
    coefficients: tuple = ()
    index: int = -1
    multiplier: object = None

    def __call__(self, values):
        R = self.algebra
        values = list(values)
        if len(values) != self.arity:
            raise CohsiteError(f"operator of arity {self.arity} applied to {len(values)} values")
        if self.index >= 0:
            return R.mul(self.multiplier, values[self.index])
        out = R.zero
        for a, v in zip(self.coefficients, values):
            out = R.add(out, R.mul(a, v))
        return out

    def describe(self):
        R = self.algebra
        if self.index >= 0:
            return f"{R.name(self.multiplier)}*(-)_{self.index + 1}"
        sep = " v " if getattr(R, "kind", "") == "lattice" else " + "
        return sep.join(f"{R.name(a)}*(-)_{i + 1}" for i, a in enumerate(self.coefficients))


def linear_term(R, coefficients):
    return OperatorTerm(R, len(coefficients), tuple(coefficients))


def scaled_term(R, arity, index, multiplier):
    return OperatorTerm(R, arity, (), index, multiplier)


def operator_terms(R: FiniteAlgebra, arity):
    """Every operator term of the given arity (exhaustive; finite backends only)."""
    if R.add_table is None:
        for j in range(arity):
            for a in R.elements():
                yield scaled_term(R, arity, j, a)
    else:
        for coeffs in itertools.product(range(R.n), repeat=arity):
            yield linear_term(R, coeffs)


def solve_operator(R: FiniteAlgebra, values, target):
    """Find an operator term psi with psi(values) = target, or None.

    Uses a breadth-first span over prefixes, so the cost is O(n |R|^2) rather
    than enumerating all coefficient tuples.
    """
    values = list(values)
    if R.add_table is None:
        for j, v in enumerate(values):
            for a in R.elements():
                if R.mul(a, v) == target:
                    return scaled_term(R, len(values), j, a)
        return None
    vals = np.array([R.zero])
    coeffs = np.zeros((1, 0), dtype=np.int64)
    col = np.arange(R.n)
    for v in values:
        sums = R.add_table[vals[:, None], R.mul_table[col, v][None, :]].ravel()
        vals, first = np.unique(sums, return_index=True)
        rows, a = np.divmod(first, R.n)
        coeffs = np.hstack([coeffs[rows], a[:, None]])
    hit = np.flatnonzero(vals == target)
    if len(hit):
        return linear_term(R, tuple(int(c) for c in coeffs[hit[0]]))
    return None


def extend_operator_to_localization(phi: OperatorTerm, R, f) -> OperatorTerm:
    """The extension of ``phi`` to R_f (coefficients a become a/1)."""
    Rf, to = localize(R, f)
    if phi.index >= 0:
        return scaled_term(Rf, phi.arity, phi.index, to(phi.multiplier))
    return linear_term(Rf, [to(a) for a in phi.coefficients])


def evaluate_on_fractions(phi: OperatorTerm, R, f, fractions):
    """Evaluate the extension of ``phi`` on fractions (x_i, s_i) by the product-of-denominators rule.

    phi(x_1/s_1, ..., x_n/s_n) = (1 / prod s_i) * phi(..., (prod_{j != i} s_j) x_i, ...)
    Returns an element of R_f.
    """
    Rf, to = localize(R, f)
    dens = [s for _, s in fractions]
    scaled = [R.mul(R.product(dens[:i] + dens[i + 1:]), x) for i, (x, _) in enumerate(fractions)]
    num = phi(scaled)
    return Rf.mul(to(num), Rf.inverse(to(R.product(dens))))


# ---------------------------------------------------------------------------
# isomorphisms, homomorphisms, equalizers of finite algebras


def _signature(A: FiniteAlgebra, x):
    sig = (x == A.zero, x == A.one, A.is_unit(x), A.mul(x, x) == x,
           len({A.mul(x, y) for y in A.elements()}),
           sum(1 for y in A.elements() if A.mul(y, y) == x))
    if A.add_table is not None:
        k, y = 1, x
        while y != A.zero and k <= A.n:
            y, k = A.add(y, x), k + 1
        sig += (k,)
    return sig


def find_isomorphism(A: FiniteAlgebra, B: FiniteAlgebra, pinned=None):
    """An isomorphism A -> B as a list, or None.  ``pinned`` fixes some images."""
    if A.n != B.n or A.kind != B.kind:
        return None
    sa = [_signature(A, x) for x in A.elements()]
    sb = [_signature(B, y) for y in B.elements()]
    if sorted(sa) != sorted(sb):
        return None
    fixed = {A.zero: B.zero, A.one: B.one}
    for k, v in (pinned or {}).items():
        if fixed.get(k, v) != v:
            return None
        fixed[k] = v
    order = sorted(A.elements(), key=lambda x: (x not in fixed, sum(1 for s in sa if s == sa[x]), x))
    image = [-1] * A.n
    used = set()

    def consistent(x):
        for y in A.elements():
            if image[y] < 0:
                continue
            p = A.mul(x, y)
            if image[p] >= 0 and image[p] != B.mul(image[x], image[y]):
                return False
            if A.add_table is not None:
                s = A.add(x, y)
                if image[s] >= 0 and image[s] != B.add(image[x], image[y]):
                    return False
        return True

    def go(i):
        if i == len(order):
            return True
        x = order[i]
        cands = [fixed[x]] if x in fixed else [y for y in B.elements() if sb[y] == sa[x] and y not in used]
        for y in cands:
            if y in used and x not in fixed:
                continue
            image[x] = y
            used.add(y)
            if consistent(x) and go(i + 1):
                return True
            used.discard(y)
            image[x] = -1
        return False

    if len(set(fixed.values())) != len(fixed):
        return None
    if not go(0):
        return None
    h = Hom(A, B, image)
    h.check()
    return image


def enumerate_homs(A: FiniteAlgebra, B: FiniteAlgebra, limit=None):
    """All homomorphisms A -> B (backtracking over tables)."""
    image = [-1] * A.n
    image[A.zero], image[A.one] = B.zero, B.one
    if A.zero == A.one and B.zero != B.one:
        return []
    out = []
    order = [x for x in A.elements() if x not in (A.zero, A.one)]

    def ok():
        for x in A.elements():
            if image[x] < 0:
                continue
            for y in A.elements():
                if image[y] < 0:
                    continue
                p = A.mul(x, y)
                if image[p] >= 0 and image[p] != B.mul(image[x], image[y]):
                    return False
                if A.add_table is not None:
                    s = A.add(x, y)
                    if image[s] >= 0 and image[s] != B.add(image[x], image[y]):
                        return False
        return True

    def go(i):
        if limit is not None and len(out) >= limit:
            return
        if i == len(order):
            out.append(Hom(A, B, list(image)))
            return
        x = order[i]
        for y in B.elements():
            image[x] = y
            if ok():
                go(i + 1)
        image[x] = -1

    if ok():
        go(0)
    return out


def equalizer_tuples(components, constraints):
    """Tuples (u_i) in the product of ``components`` with p(u_i) == q(u_j) for every constraint.

    ``constraints`` lists (i, j, p, q) with p: components[i] -> C and
    q: components[j] -> C.  Backtracking: each coordinate is filtered against
    every earlier one.
    """
    m = len(components)
    by_pair = {}
    for i, j, p, q in constraints:
        if i > j:
            i, j, p, q = j, i, q, p
        by_pair.setdefault(j, []).append((i, p, q))
    index = {}
    for j, lst in by_pair.items():
        for i, p, q in lst:
            d = {}
            for v in components[j].elements():
                d.setdefault(q(v), []).append(v)
            index[(i, j, id(p))] = d
    out = []
    cur = [None] * m

    def go(j):
        if j == m:
            out.append(tuple(cur))
            return
        cands = None
        for i, p, q in by_pair.get(j, ()):
            allowed = index[(i, j, id(p))].get(p(cur[i]), ())
            cands = set(allowed) if cands is None else cands & set(allowed)
            if not cands:
                return
        for v in (sorted(cands) if cands is not None else components[j].elements()):
            cur[j] = v
            go(j + 1)

    go(0)
    return out


def subalgebra_of_product(components, tuples, label="eq"):
    """A FiniteAlgebra on ``tuples`` (closed under the componentwise operations)."""
    kind = components[0].kind if components else "monoid"
    if not components:
        return trivial_algebra(kind), []
    pos = {t: i for i, t in enumerate(tuples)}

    def op(f):
        return [[pos[tuple(f(c, a, b) for c, a, b in zip(components, s, t))] for t in tuples] for s in tuples]

    try:
        mul = op(lambda c, a, b: c.mul(a, b))
        add = op(lambda c, a, b: c.add(a, b)) if kind != "monoid" else None
        zero = pos[tuple(c.zero for c in components)]
        one = pos[tuple(c.one for c in components)]
    except KeyError:
        raise CohsiteError("tuple set is not closed under the operations") from None
    names = ["(" + ",".join(c.name(a) for c, a in zip(components, t)) + ")" for t in tuples]
    E = FiniteAlgebra(kind, names, mul, zero, one, add, validate=False, label=label)
    projections = [Hom(E, c, [t[i] for t in tuples]) for i, c in enumerate(components)]
    return E, projections


def is_trivial_algebra(A):
    return A.trivial


def power_prod(R, elems):
    return R.product(elems) if elems else R.one

