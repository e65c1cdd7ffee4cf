"""Weak schemes: Spec of an algebra, gluing along opens, global sections and affinity."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import (FiniteAlgebra, Hom, MonomialAlgebra, equalizer_tuples, find_isomorphism, localization_map,
                      localize, localized_hom, monomial_iso, subalgebra_of_product, trivial_algebra)
from .errors import CohsiteError, UnsupportedError
from .lattice import CoherentSpace, DistLattice, IsomorphismWitness, _frozen, hasse_dot, pt
from .site import check_tag, descent_check
from .spectrum import omega1

SECTION_DEGREE = 2


class WeakScheme:
    """A finite coherent space with an algebra per open, restriction maps and the support map beta.

    Subclasses provide ``_value``, ``_restriction`` and ``_beta``; results are cached.
    """

    def __init__(self, space: CoherentSpace, tag, label):
        self.space = space
        self.tag = tag
        self.label = label
        self._values = {}
        self._res = {}

    @property
    def opens(self) -> DistLattice:
        return self.space.opens

    @property
    def top(self):
        return self.opens.top

    @property
    def bottom(self):
        return self.opens.bottom

    def value(self, u):
        if u not in self._values:
            self._values[u] = self._value(u)
        return self._values[u]

    def restriction(self, u, v) -> Hom:
        """The restriction value(u) -> value(v) for v <= u."""
        if not self.opens.le(v, u):
            raise CohsiteError(f"{self.opens.labels[v]} is not below {self.opens.labels[u]}")
        if (u, v) not in self._res:
            if self.value(v).trivial:
                self._res[(u, v)] = Hom(self.value(u), self.value(v))
            else:
                self._res[(u, v)] = self._restriction(u, v)
        return self._res[(u, v)]

    def beta(self, u, h):
        """The open attached to the localization of value(u) at h (an open below u)."""
        if self.value(u).trivial:
            return self.bottom
        return self._beta(u, h)

    def sections(self, u):
        """All elements of value(u), or a bounded sample for monomial values."""
        A = self.value(u)
        if isinstance(A, MonomialAlgebra):
            return A.monomials(SECTION_DEGREE)
        return list(A.elements())

    def global_sections(self):
        return self.value(self.top)

    def stalk(self, p):
        """Value at the smallest open containing p (the colimit over the finite neighbourhood filter)."""
        return self.value(self.space.smallest_open(p))

    def restrict(self, w):
        return OpenSubscheme(self, w)

    # -- checks -----------------------------------------------------------
    def check_sheaf_condition(self):
        """For all opens u1, u2: value(u1 v u2) is the equalizer of value(u1) x value(u2) over value(u1 ^ u2)."""
        L = self.opens
        failures = []
        for u1 in range(L.n):
            for u2 in range(u1 + 1, L.n):
                u, w = L.join(u1, u2), L.meet(u1, u2)
                if not _equalizer_property(self, u, u1, u2, w):
                    failures.append((L.labels[u1], L.labels[u2]))
        return failures

    def check_functoriality(self):
        L = self.opens
        bad = []
        for u in range(L.n):
            for v in range(L.n):
                if not L.le(v, u):
                    continue
                for w in range(L.n):
                    if not L.le(w, v):
                        continue
                    r_uv, r_vw, r_uw = self.restriction(u, v), self.restriction(v, w), self.restriction(u, w)
                    if any(r_vw(r_uv(h)) != r_uw(h) for h in self.sections(u)):
                        bad.append((L.labels[u], L.labels[v], L.labels[w]))
        return bad

    def check_beta(self):
        """beta(u)(h) <= u, and beta commutes with restriction: beta(v)(h|v) = beta(u)(h) ^ v."""
        L = self.opens
        bad = []
        for u in range(L.n):
            for h in self.sections(u):
                b = self.beta(u, h)
                if not L.le(b, u):
                    bad.append(("below", L.labels[u], str(h)))
                for v in range(L.n):
                    if L.le(v, u) and self.beta(v, self.restriction(u, v)(h)) != L.meet(b, v):
                        bad.append(("natural", L.labels[u], L.labels[v], str(h)))
        return bad

    # -- output -----------------------------------------------------------
    def to_document(self):
        L = self.opens
        order = L.linear_extension()
        doc = {"kind": "scheme", "label": self.label, "tag": self.tag, "space": self.space.to_document()}
        sheaf = {}
        for u in order:
            A = self.value(u)
            entry = {"algebra": A.label, "size": A.n if isinstance(A, FiniteAlgebra) else "infinite"}
            if isinstance(A, FiniteAlgebra) and A.n <= 64:
                entry["elements"] = list(A.names)
            sheaf[L.labels[u]] = entry
        doc["sheaf"] = sheaf
        res = {}
        for lo, hi in L.covers():
            A, B = self.value(hi), self.value(lo)
            if isinstance(A, FiniteAlgebra) and A.n <= 64:
                r = self.restriction(hi, lo)
                res[f"{L.labels[hi]} -> {L.labels[lo]}"] = {A.name(h): B.name(r(h)) for h in A.elements()}
        doc["restrictions"] = dict(sorted(res.items()))
        beta = {}
        for u in order:
            A = self.value(u)
            beta[L.labels[u]] = {A.name(h): L.labels[self.beta(u, h)] for h in self.sections(u)}
        doc["beta"] = beta
        return doc

    def to_dot(self, name="X"):
        notes = [self.stalk(p).label for p in range(len(self.space))]
        return self.space.to_dot(name, notes)


def _equalizer_property(X, u, u1, u2, w):
    A, B1, B2 = X.value(u), X.value(u1), X.value(u2)
    if isinstance(A, MonomialAlgebra) or isinstance(B1, MonomialAlgebra) or isinstance(B2, MonomialAlgebra):
        return _monomial_equalizer_property(X, u, u1, u2, w)
    r1, r2 = X.restriction(u, u1), X.restriction(u, u2)
    p, q = X.restriction(u1, w), X.restriction(u2, w)
    eq = equalizer_tuples([B1, B2], [(0, 1, p, q)])
    image = sorted({(r1(h), r2(h)) for h in A.elements()})
    return len(image) == A.n and image == sorted(eq)


def _monomial_equalizer_property(X, u, u1, u2, w):
    vals = [X.value(v) for v in (u, u1, u2, w)]
    if vals[3].trivial:
        # disjoint pieces: only fine when one side is empty
        return (vals[1].trivial and _same_cone(vals[0], vals[2])) or (vals[2].trivial and _same_cone(vals[0], vals[1]))
    A, B1, B2 = vals[:3]
    if B1.trivial or B2.trivial:
        return _same_cone(A, B2 if B1.trivial else B1)
    return A.signs == tuple(_meet_sign(a, b) for a, b in zip(B1.signs, B2.signs))


def _same_cone(A, B):
    if A.trivial or B.trivial:
        return A.trivial and B.trivial
    return A == B


_DIRS = {"+": frozenset([1]), "-": frozenset([-1]), "±": frozenset([1, -1]), "0": frozenset()}
_SIGN_OF = {v: k for k, v in _DIRS.items()}


def _meet_sign(a, b):
    return _SIGN_OF[_DIRS[a] & _DIRS[b]]


# ---------------------------------------------------------------------------
# Spec


class SpecScheme(WeakScheme):
    """Spec R: points of Omega_1(R, tag), values the equalizers over representative families."""

    def __init__(self, R, tag="zar"):
        check_tag(tag)
        self.R = R
        self.O = omega1(R, tag)
        super().__init__(pt(self.O.lattice), tag, f"Spec {R.label}")
        self._tuples = {}

    def family(self, u):
        return list(self.O.representatives[u])

    def _value(self, u):
        R, F = self.R, self.family(u)
        if isinstance(R, MonomialAlgebra):
            nonzero = [f for f in F if f is not None]
            if not nonzero:
                return trivial_algebra("monoid")
            common = frozenset.intersection(*[R.support(f) for f in nonzero])
            return MonomialAlgebra(R.variables, signs=["±" if i in common else c for i, c in enumerate(R.signs)])
        if not F:
            self._tuples[u] = [()]
            return trivial_algebra(R.kind)
        rep = descent_check(R, F)
        self._tuples[u] = rep.equalizer
        label = f"O({self.O.lattice.labels[u]})"
        if len(F) == 1:
            label = R.label if R.is_unit(F[0]) else rep.components[0].label
        A, _ = subalgebra_of_product(rep.components, rep.equalizer, label=label)
        A.charts = rep.components
        return A

    def _restriction(self, u, v):
        R = self.R
        A, B = self.value(u), self.value(v)
        if isinstance(R, MonomialAlgebra):
            return Hom(A, B, matrix=np.eye(R.k, dtype=np.int64))
        F, G = self.family(u), self.family(v)
        target = {t: i for i, t in enumerate(self._tuples[v])}
        table = []
        for s in self._tuples[u]:
            t = tuple(restrict_section(R, F, s, g) for g in G)
            table.append(target[t])
        return Hom(A, B, table)

    def _beta(self, u, h):
        R, F = self.R, self.family(u)
        if isinstance(R, MonomialAlgebra):
            if h is None:
                return self.bottom
            m = R.squarefree(R.support(h))
            return self.O.classify([R.mul(f, m) for f in F])
        s = self._tuples[u][h]
        charts = self.value(u).charts
        return self.O.classify([R.mul(f, C.preimage[a]) for f, C, a in zip(F, charts, s)])


def restrict_section(R, F, s, g):
    """The element y of R_g agreeing with s = (s_i) in R_{f_i} on every overlap R_{g f_i}."""
    Rg, _ = localize(R, g)
    checks = [(localization_map(R, g, f), localization_map(R, f, g)(a)) for f, a in zip(F, s)]
    found = [y for y in Rg.elements() if all(p(y) == target for p, target in checks)]
    if len(found) != 1:
        raise CohsiteError(f"restriction to chart {R.name(g)} is {'ambiguous' if found else 'undefined'}")
    return found[0]


def spec_scheme(R, tag="zar") -> SpecScheme:
    return SpecScheme(R, tag)


def global_sections(X: WeakScheme):
    return X.global_sections()


def counit_check(R, tag="zar") -> IsomorphismWitness:
    """eta_R: R -> Gamma(Spec R) is an isomorphism.

    Gamma is computed over a top representative made of proper charts when the
    top class has one (the union of the representatives of the coatoms), so the
    check exercises descent rather than the trivial chart {1}.
    """
    X = SpecScheme(R, tag)
    O, L = X.O, X.O.lattice
    if isinstance(R, MonomialAlgebra):
        G = X.global_sections()
        ok = G == R
        return IsomorphismWitness({"identity": True}, ok, None if ok else f"Gamma is {G.label}")
    coatoms = [a for a, b in L.covers() if b == L.top]
    family = [f for c in coatoms for f in O.representatives[c]]
    if not family or O.classify(family) != L.top:
        family = list(O.representatives[L.top])
    rep = descent_check(R, family)
    if not rep.exact:
        why = ("not injective: " + ",".join(R.name(x) for x in rep.collision) if rep.collision
               else "misses " + rep.describe_tuple(rep.missing))
        return IsomorphismWitness({}, False, why, {"family": family})
    _, tos = zip(*[localize(R, f) for f in family]) if family else ((), ())
    fwd = {R.name(x): rep.describe_tuple(tuple(to(x) for to in tos)) for x in R.elements()}
    return IsomorphismWitness(fwd, detail={"family": [R.name(f) for f in family]})


def stalks(X: WeakScheme):
    return {X.space.points[p]: X.stalk(p) for p in range(len(X.space))}


# ---------------------------------------------------------------------------
# open subschemes and gluing


class OpenSubscheme(WeakScheme):
    """The restriction of a weak scheme to the opens below ``w``."""

    def __init__(self, X: WeakScheme, w):
        L = X.opens
        below = [u for u in range(L.n) if L.le(u, w)]
        pts = [p for p in range(len(X.space)) if X.space.member[p, w]]
        sub = DistLattice(L.leq[np.ix_(below, below)], [L.labels[u] for u in below], validate=False)
        member = X.space.member[np.ix_(pts, below)]
        homs = tuple(X.space.homs[p][below] for p in pts) if X.space.homs else ()
        super().__init__(CoherentSpace(tuple(X.space.points[p] for p in pts), sub, _frozen(member), homs),
                         X.tag, f"{X.label}|{L.labels[w]}")
        self.parent, self.embed = X, below

    def _value(self, u):
        return self.parent.value(self.embed[u])

    def _restriction(self, u, v):
        return self.parent.restriction(self.embed[u], self.embed[v])

    def _beta(self, u, h):
        return self.embed.index(self.parent.beta(self.embed[u], h))


def _open_iso(X, Y, ux, uy, theta):
    """The lattice isomorphism of opens below ux and uy induced by theta via beta."""
    LX, LY = X.opens, Y.opens
    principal = [(X.beta(ux, h), Y.beta(uy, theta(h))) for h in X.sections(ux)]
    iota = {}
    for w in range(LX.n):
        if not LX.le(w, ux):
            continue
        parts = [(a, b) for a, b in principal if LX.le(a, w)]
        if LX.join_all([a for a, _ in parts]) != w:
            raise UnsupportedError(f"open {LX.labels[w]} is not a union of basic opens of the overlap")
        iota[w] = LY.join_all([b for _, b in parts])
    below_y = sorted(v for v in range(LY.n) if LY.le(v, uy))
    if sorted(iota.values()) != below_y:
        raise CohsiteError("the gluing map does not identify the opens of the overlaps")
    for a in iota:
        for b in iota:
            if LX.le(a, b) != LY.le(iota[a], iota[b]):
                raise CohsiteError("the gluing map does not preserve the order of opens")
    return iota


class GluedScheme(WeakScheme):
    """X and Y glued along ux = uy via an isomorphism theta: value_X(ux) -> value_Y(uy).

    Opens are pairs (a, b) with iota(a ^ ux) = b ^ uy; the value at (a, b) is
    the pullback of value_X(a) and value_Y(b) over the overlap.
    """

    def __init__(self, X: WeakScheme, Y: WeakScheme, ux, uy, theta: Hom, names=("X", "Y")):
        self.X, self.Y, self.ux, self.uy, self.theta = X, Y, ux, uy, theta
        if not theta.is_bijective():
            raise CohsiteError("the gluing map is not an isomorphism")
        self.monomial = isinstance(theta.source, MonomialAlgebra)
        if self.monomial:
            self.perm = _signed_permutation(theta.matrix)
        self.iota = _open_iso(X, Y, ux, uy, theta)
        self._thetas = {}
        LX, LY = X.opens, Y.opens
        # points: X, then the points of Y outside uy
        SX, SY = X.space, Y.space
        ident = {}
        for q in range(len(SY)):
            if SY.member[q, uy]:
                match = [p for p in range(len(SX)) if SX.member[p, ux]
                         and all(SX.member[p, w] == SY.member[q, v] for w, v in self.iota.items())]
                if len(match) != 1:
                    raise CohsiteError("overlap points do not match")
                ident[q] = match[0]
        points = [f"{names[0]}.{SX.points[p]}" for p in range(len(SX))]
        ypos = {}
        for q in range(len(SY)):
            if q in ident:
                ypos[q] = ident[q]
            else:
                ypos[q] = len(points)
                points.append(f"{names[1]}.{SY.points[q]}")
        self.xpos = list(range(len(SX)))
        self.ypos = ypos
        pairs = [(a, b) for a in range(LX.n) for b in range(LY.n)
                 if self.iota[LX.meet(a, ux)] == LY.meet(b, uy)]
        sets = []
        for a, b in pairs:
            s = {p for p in range(len(SX)) if SX.member[p, a]} | {ypos[q] for q in range(len(SY)) if SY.member[q, b]}
            sets.append(frozenset(s))
        labels = [f"({LX.labels[a]}|{LY.labels[b]})" for a, b in pairs]
        opens = DistLattice.from_sets(sets, labels, validate=True)
        member = np.array([[p in s for s in sets] for p in range(len(points))], dtype=bool).reshape(len(points), len(sets))
        space = CoherentSpace(tuple(points), opens, _frozen(member))
        super().__init__(space, X.tag, f"{X.label} + {Y.label}")
        self.pairs = pairs
        self.pair_index = {p: i for i, p in enumerate(pairs)}
        self._tuples = {}

    def chart_open(self, which):
        """The open of the glued scheme corresponding to all of X (0) or all of Y (1)."""
        LX, LY = self.X.opens, self.Y.opens
        if which == 0:
            return self.pair_index[(LX.top, self.iota[self.ux])]
        inv = {v: w for w, v in self.iota.items()}
        return self.pair_index[(inv[self.uy], LY.top)]

    def theta_at(self, w):
        """theta restricted to the overlap open w <= ux: value_X(w) -> value_Y(iota w)."""
        if w in self._thetas:
            return self._thetas[w]
        X, Y, v = self.X, self.Y, self.iota[w]
        A, B = X.value(w), Y.value(v)
        if A.trivial or B.trivial:
            if not (A.trivial and B.trivial):
                raise CohsiteError("gluing map is not an isomorphism on a smaller overlap")
            h = Hom(A, B, [0] if isinstance(A, FiniteAlgebra) else None)
        elif self.monomial:
            h = Hom(A, B, matrix=self.theta.matrix)
            if not monomial_iso(h):
                raise CohsiteError(f"gluing map does not restrict to {X.opens.labels[w]}")
        else:
            rx, ry = X.restriction(self.ux, w), Y.restriction(self.uy, v)
            pinned = {}
            for s in X.value(self.ux).elements():
                a, b = rx(s), ry(self.theta(s))
                if pinned.setdefault(a, b) != b:
                    raise CohsiteError("gluing map is incompatible with restriction")
            image = find_isomorphism(A, B, pinned)
            if image is None:
                raise CohsiteError(f"no isomorphism over {X.opens.labels[w]} extends the gluing map")
            h = Hom(A, B, image)
        self._thetas[w] = h
        return h

    def _value(self, u):
        a, b = self.pairs[u]
        X, Y, LX = self.X, self.Y, self.X.opens
        A, B = X.value(a), Y.value(b)
        w = LX.meet(a, self.ux)
        if self.monomial:
            return self._monomial_value(a, b, w)
        p = self.theta_at(w).compose(X.restriction(a, w))
        q = Y.restriction(b, self.iota[w])
        tuples = equalizer_tuples([A, B], [(0, 1, p, q)])
        self._tuples[u] = tuples
        V, _ = subalgebra_of_product([A, B], tuples, label=f"O{self.opens.labels[u]}")
        return V

    def _monomial_value(self, a, b, w):
        X, Y = self.X, self.Y
        A, B = X.value(a), Y.value(b)
        if A.trivial and B.trivial:
            return trivial_algebra("monoid")
        if not A.trivial and not B.trivial and X.value(w).trivial:
            raise UnsupportedError("monomial gluing of disjoint pieces (a product of cones)")
        k = len(self.perm)
        dirs = [_DIRS[c] for c in A.signs] if not A.trivial else [_DIRS["±"]] * k
        if not B.trivial:
            for j, (i, sigma) in enumerate(self.perm):
                dirs[i] = dirs[i] & frozenset(sigma * d for d in _DIRS[B.signs[j]])
        ref = A if not A.trivial else X.value(X.top)
        return MonomialAlgebra(ref.variables, signs=[_SIGN_OF[d] for d in dirs])

    def _restriction(self, u, v):
        A, B = self.value(u), self.value(v)
        if self.monomial:
            return Hom(A, B, matrix=np.eye(A.k, dtype=np.int64))
        (a, b), (c, d) = self.pairs[u], self.pairs[v]
        rx, ry = self.X.restriction(a, c), self.Y.restriction(b, d)
        target = {t: i for i, t in enumerate(self._tuples[v])}
        return Hom(A, B, [target[(rx(s), ry(t))] for s, t in self._tuples[u]])

    def _beta(self, u, h):
        a, b = self.pairs[u]
        X, Y = self.X, self.Y
        if self.monomial:
            if h is None:
                return self.bottom
            ba = X.beta(a, h) if not X.value(a).trivial else X.bottom
            bb = Y.beta(b, self.theta(h)) if not Y.value(b).trivial else Y.bottom
        else:
            s, t = self._tuples[u][h]
            ba, bb = X.beta(a, s), Y.beta(b, t)
        return self.pair_index[(ba, bb)]


def _signed_permutation(M):
    """[(source coordinate, sign)] per target coordinate, or raise."""
    M = np.asarray(M)
    out = []
    for row in M:
        nz = np.flatnonzero(row)
        if len(nz) != 1 or abs(row[nz[0]]) != 1:
            raise UnsupportedError("monomial gluing needs a signed permutation of exponents")
        out.append((int(nz[0]), int(row[nz[0]])))
    if sorted(i for i, _ in out) != list(range(M.shape[1])):
        raise UnsupportedError("monomial gluing needs a signed permutation of exponents")
    return out


def glue(X: WeakScheme, Y: WeakScheme, ux, uy, theta: Hom, names=("X", "Y")) -> GluedScheme:
    return GluedScheme(X, Y, ux, uy, theta, names)


def projective_line():
    """P^1 over F1: Spec F1[x] and Spec F1[y] glued along x -> y^-1."""
    X = SpecScheme(MonomialAlgebra(["x"]), "zar")
    Y = SpecScheme(MonomialAlgebra(["y"]), "zar")
    ux = X.O.classify([(1,)])
    uy = Y.O.classify([(1,)])
    theta = Hom(X.value(ux), Y.value(uy), matrix=[[-1]])
    return glue(X, Y, ux, uy, theta, names=("U0", "U1"))


# ---------------------------------------------------------------------------
# comparisons


def algebras_isomorphic(A, B):
    if A.trivial or B.trivial:
        return A.trivial and B.trivial
    if isinstance(A, MonomialAlgebra) or isinstance(B, MonomialAlgebra):
        if not (isinstance(A, MonomialAlgebra) and isinstance(B, MonomialAlgebra)):
            return False
        return sorted(c for c in A.signs if c != "0") == [c for c in sorted(c for c in B.signs if c != "0")] or \
            _cone_type(A) == _cone_type(B)
    return find_isomorphism(A, B) is not None


def _cone_type(A):
    one_sided = sum(1 for c in A.signs if c in "+-")
    two_sided = sum(1 for c in A.signs if c == "±")
    return one_sided, two_sided


def schemes_isomorphic(X: WeakScheme, Y: WeakScheme, open_map):
    """Check that ``open_map`` (opens of X -> opens of Y) is a lattice iso with isomorphic values."""
    LX, LY = X.opens, Y.opens
    if sorted(open_map) != list(range(LY.n)) or LX.n != LY.n:
        return IsomorphismWitness(dict(enumerate(open_map)), False, "open map is not bijective")
    for a in range(LX.n):
        for b in range(LX.n):
            if LX.le(a, b) != LY.le(open_map[a], open_map[b]):
                return IsomorphismWitness(dict(enumerate(open_map)), False,
                                          f"order differs at {LX.labels[a]}, {LX.labels[b]}")
    for u in range(LX.n):
        if not algebras_isomorphic(X.value(u), Y.value(open_map[u])):
            return IsomorphismWitness(dict(enumerate(open_map)), False,
                                      f"values differ over {LX.labels[u]}: {X.value(u).label} vs "
                                      f"{Y.value(open_map[u]).label}")
    return IsomorphismWitness({LX.labels[u]: LY.labels[open_map[u]] for u in range(LX.n)})


def chart_restriction_check(Z: GluedScheme, which):
    """Restricting the glued scheme to chart ``which`` recovers that chart."""
    w = Z.chart_open(which)
    sub = Z.restrict(w)
    chart = Z.X if which == 0 else Z.Y
    LZ = Z.opens
    # opens of the chart -> opens of the restriction
    inv = {v: k for k, v in Z.iota.items()}
    mapping = []
    for a in range(chart.opens.n):
        pair = (a, Z.iota[Z.X.opens.meet(a, Z.ux)]) if which == 0 else (inv[Z.Y.opens.meet(a, Z.uy)], a)
        mapping.append(sub.embed.index(Z.pair_index[pair]))
    wit = schemes_isomorphic(chart, sub, mapping)
    if not wit or not Z.monomial:
        return wit
    # monomial values must coincide as cones (after moving Y into X coordinates)
    for a, u in enumerate(mapping):
        V, C = sub.value(u), chart.value(a)
        if V.trivial or C.trivial:
            continue
        h = Hom(V, C, matrix=np.eye(V.k, dtype=np.int64) if which == 0 else Z.theta.matrix)
        if not monomial_iso(h):
            return IsomorphismWitness({}, False, f"cone over {chart.opens.labels[a]} differs")
    return wit


@dataclass
class AffinityReport:
    affine: bool
    reason: str
    gamma: object = None
    lam: list = field(default_factory=list)

    def __bool__(self):
        return self.affine


def is_affine(X: WeakScheme) -> AffinityReport:
    """Build lambda: Omega_1(Gamma) -> Omega(X) from beta and test it is an isomorphism of schemes."""
    G = X.global_sections()
    S = SpecScheme(G, X.tag)
    LS, LX = S.opens, X.opens
    lam = []
    for fam in S.O.representatives:
        lam.append(LX.join_all([X.beta(X.top, h) for h in fam]) if fam else LX.bottom)
    if len(set(lam)) != len(lam) or len(lam) != LX.n:
        return AffinityReport(False, f"Spec of global sections has {LS.n} opens and {len(S.space)} points; "
                                     f"the scheme has {LX.n} opens and {len(X.space)} points", G, lam)
    for a in range(LS.n):
        for b in range(LS.n):
            if lam[LS.join(a, b)] != LX.join(lam[a], lam[b]) or lam[LS.meet(a, b)] != LX.meet(lam[a], lam[b]):
                return AffinityReport(False, "lambda is not a lattice homomorphism", G, lam)
    wit = schemes_isomorphic(S, X, lam)
    if not wit:
        return AffinityReport(False, wit.counterexample, G, lam)
    return AffinityReport(True, "lambda is an isomorphism", G, lam)


# ---------------------------------------------------------------------------
# morphisms


@dataclass
class SchemeMorphism:
    """Spec B -> Spec A induced by h: A -> B (algebra direction O_A(U) -> O_B(h*U))."""

    hom: Hom
    source: SpecScheme
    target: SpecScheme
    open_map: list
    point_map: list
    valid: bool
    problems: list = field(default_factory=list)

    def describe(self):
        S, T = self.source.space, self.target.space
        return {S.points[p]: T.points[q] for p, q in enumerate(self.point_map)}


def spec_morphism(h: Hom, tag="zar") -> SchemeMorphism:
    A, B = h.source, h.target
    SA, SB = SpecScheme(A, tag), SpecScheme(B, tag)
    LA, LB = SA.opens, SB.opens
    open_map = [SB.O.classify([h(f) for f in fam]) for fam in SA.O.representatives]
    problems = []
    for a in range(LA.n):
        for b in range(LA.n):
            if open_map[LA.join(a, b)] != LB.join(open_map[a], open_map[b]) or \
                    open_map[LA.meet(a, b)] != LB.meet(open_map[a], open_map[b]):
                problems.append(("lattice", LA.labels[a], LA.labels[b]))
    point_map = []
    homsA = [tuple(p) for p in SA.space.homs]
    for q in SB.space.homs:
        pulled = tuple(bool(q[open_map[u]]) for u in range(LA.n))
        if pulled not in homsA:
            problems.append(("point", pulled))
            point_map.append(-1)
        else:
            point_map.append(homsA.index(pulled))
    if isinstance(A, FiniteAlgebra) and isinstance(B, FiniteAlgebra):
        problems += _sheaf_square(h, SA, SB, open_map)
    return SchemeMorphism(h, SB, SA, open_map, point_map, not problems, problems)


def _sheaf_square(h, SA, SB, open_map):
    """The maps O_A(U) -> O_B(h*U) commute with restriction."""
    A, B = h.source, h.target
    LA = SA.opens
    maps = {}
    for u in range(LA.n):
        F = SA.family(u)
        VA = SA.value(u)
        v = open_map[u]
        G = SB.family(v)
        table = []
        for s in SA._tuples[u]:
            imgs = [localized_hom(h, f)(a) for f, a in zip(F, s)]
            hF = [h(f) for f in F]
            table.append(tuple(restrict_section(B, hF, imgs, g) for g in G) if G else ())
        target = {t: i for i, t in enumerate(SB._tuples[v])} if not SB.value(v).trivial else None
        maps[u] = [target[t] if target is not None else 0 for t in table] if VA.n else []
    problems = []
    for u in range(LA.n):
        for w in range(LA.n):
            if not LA.le(w, u):
                continue
            ra = SA.restriction(u, w)
            rb = SB.restriction(open_map[u], open_map[w])
            for s in SA.value(u).elements():
                if maps[w][ra(s)] != rb(maps[u][s]):
                    problems.append(("sheaf", LA.labels[u], LA.labels[w]))
                    break
    return problems


def compose_morphisms(first: SchemeMorphism, second: SchemeMorphism):
    """Point map of first followed by second (Spec C -> Spec B -> Spec A)."""
    return [second.point_map[p] for p in first.point_map]


def lattice_gluing_sweep(lattices, tag="zar", limit=None):
    """Glue Spec L1 and Spec L2 along every pair of opens with isomorphic values and test affinity.

    Yields (L1 label, L2 label, ux label, uy label, AffinityReport).
    """
    specs = [SpecScheme(A, tag) for A in lattices]
    count = 0
    for X in specs:
        for Y in specs:
            for ux in range(X.opens.n):
                for uy in range(Y.opens.n):
                    A, B = X.value(ux), Y.value(uy)
                    if A.n != B.n:
                        continue
                    image = find_isomorphism(A, B)
                    if image is None:
                        continue
                    Z = GluedScheme(X, Y, ux, uy, Hom(A, B, image))
                    yield X.R.label, Y.R.label, X.opens.labels[ux], Y.opens.labels[uy], is_affine(Z)
                    count += 1
                    if limit is not None and count >= limit:
                        return
