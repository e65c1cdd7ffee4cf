"""Coherent Grothendieck topologies on localization families: covers, descent, axioms, locality."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .algebra import (FiniteAlgebra, MonomialAlgebra, enumerate_homs, equalizer_tuples, localization_map,
                      localize, scaled_term, solve_operator)
from .errors import CohsiteError, UnsupportedError

TAGS = ("min", "zar", "tot")


def check_tag(tag):
    if tag not in TAGS:
        raise CohsiteError(f"unknown topology {tag!r}; expected one of {', '.join(TAGS)}")
    return tag


@dataclass
class ExactnessReport:
    """The fork R -> prod R_{f_i} => prod R_{f_i f_j} and its verdicts."""

    algebra: FiniteAlgebra
    family: tuple
    components: list
    equalizer: list
    image: list
    injective: bool
    surjective: bool
    collision: tuple | None = None  # two elements of R with the same image
    missing: tuple | None = None  # equalizer element outside the image
    maps: list = field(default_factory=list, repr=False)

    @property
    def exact(self):
        return self.injective and self.surjective

    def describe_tuple(self, t):
        return "(" + ", ".join(C.name(x) for C, x in zip(self.components, t)) + ")"

    def to_document(self, limit=64):
        R = self.algebra
        doc = {
            "algebra": R.label,
            "family": [R.name(f) for f in self.family],
            "charts": [C.label for C in self.components],
            "equalizer_size": len(self.equalizer),
            "equalizer": [self.describe_tuple(t) for t in self.equalizer[:limit]],
            "injective": self.injective,
            "surjective": self.surjective,
            "exact": self.exact,
        }
        if self.collision:
            doc["collision"] = [R.name(x) for x in self.collision]
        if self.missing is not None:
            doc["missing"] = self.describe_tuple(self.missing)
        return doc


def _charts(R, family):
    comps, tos = [], []
    for f in family:
        Rf, to = localize(R, f)
        comps.append(Rf)
        tos.append(to)
    return comps, tos


def descent_check(R, family) -> ExactnessReport:
    """Compute the equalizer of the fork and compare it with the image of R."""
    if not isinstance(R, FiniteAlgebra):
        raise UnsupportedError("descent needs a finite algebra (truncate the monomial algebra first)")
    family = tuple(family)
    comps, tos = _charts(R, family)
    constraints = []
    for i, j in itertools.combinations(range(len(family)), 2):
        p = localization_map(R, family[i], family[j])
        q = localization_map(R, family[j], family[i])
        constraints.append((i, j, p, q))
    eq = equalizer_tuples(comps, constraints)
    image_of = {}
    collision = None
    for x in R.elements():
        t = tuple(to(x) for to in tos)
        if t in image_of and collision is None:
            collision = (image_of[t], x)
        image_of.setdefault(t, x)
    missing = next((t for t in eq if t not in image_of), None)
    return ExactnessReport(R, family, comps, eq, sorted(image_of), collision is None, missing is None,
                           collision, missing, constraints)


def _exact(A, family):
    key = ("exact", frozenset(A.idempotent_power(f) for f in family))
    if key not in A._cache:
        A._cache[key] = descent_check(A, family).exact
    return A._cache[key]


def covers(A, family, tag):
    """Whether {A_g -> A}_{g in family} is a cover of A for the topology ``tag``.

    The empty family covers exactly the trivial algebra under every tag.
    """
    check_tag(tag)
    family = list(family)
    if A.trivial:
        return True
    if not family:
        return False
    if tag == "min" or (tag == "zar" and getattr(A, "kind", None) in ("monoid", "monomial")):
        return any(A.is_unit(g) for g in family)
    if tag == "zar":
        return A.one in A.ideal_closure(family)
    if isinstance(A, MonomialAlgebra):
        raise UnsupportedError("the tot topology needs a finite algebra (supply a truncation)")
    return _exact(A, family)


def is_cover(R, family, tag):
    return covers(R, family, tag)


def partition_of_unity(R, family):
    """(psi, N) with psi(f_1^N, ..., f_n^N) = 1, or None if the ideal is not unital.

    N is the least exponent that works; it is 1 whenever (f_i) = (1).
    """
    family = list(family)
    if isinstance(R, MonomialAlgebra):
        for j, f in enumerate(family):
            if R.is_unit(f):
                return scaled_term(R, len(family), j, R.inverse(f)), 1
        return None
    for N in range(1, R.n + 1):
        psi = solve_operator(R, [R.power(f, N) for f in family], R.one)
        if psi is not None:
            return psi, N
    return None


def reconstruct_section(R: FiniteAlgebra, family, u):
    """Recover x in R from an equalizer element u = (x_i/1)_i of a zar cover.

    Replace f_i by g_i = f_i^M with g_i g_j x_i = g_i g_j x_j for all i, j; with
    psi(g_1..g_n) = 1 the element x = psi(g_1 x_1, ..., g_n x_n) satisfies
    g_j x = g_j x_j, so x restricts to u_j on every chart.  Returns (x, M, psi).
    """
    family = list(family)
    comps, tos = _charts(R, family)
    xs = [C.preimage[a] for C, a in zip(comps, u)]
    for M in range(1, R.n + 1):
        g = [R.power(f, M) for f in family]
        if all(R.mul(R.mul(g[i], g[j]), xs[i]) == R.mul(R.mul(g[i], g[j]), xs[j])
               for i in range(len(g)) for j in range(len(g))):
            psi = solve_operator(R, g, R.one)
            if psi is None:
                continue
            x = psi([R.mul(gi, xi) for gi, xi in zip(g, xs)])
            if all(to(x) == a for to, a in zip(tos, u)):
                return x, M, psi
    return None


# ---------------------------------------------------------------------------
# coherent-site axioms


@dataclass
class AxiomReport:
    tag: str
    checked: dict = field(default_factory=dict)
    failures: dict = field(default_factory=dict)

    @property
    def ok(self):
        return not any(self.failures.values())

    def record(self, axiom, ok, witness=None):
        self.checked[axiom] = self.checked.get(axiom, 0) + 1
        self.failures.setdefault(axiom, [])
        if not ok and len(self.failures[axiom]) < 5:
            self.failures[axiom].append(witness)

    def to_document(self):
        return {"tag": self.tag, "ok": self.ok, "checked": dict(sorted(self.checked.items())),
                "failures": {k: [str(w) for w in v] for k, v in sorted(self.failures.items())}}


def _families(elements, max_size):
    for k in range(0, max_size + 1):
        yield from itertools.combinations(elements, k)


def topology_axiom_check(algebras, tag, max_family=2, hom_targets=None) -> AxiomReport:
    """Exhaustively test identity, stability, base change and local character on samples.

    (a) {1} covers; (b) adding members keeps a cover; (c) the image of a cover
    along every homomorphism into ``hom_targets`` covers; (d) sieve locality:
    if F covers R and G covers each chart R_f (f in F) then G covers R, and
    composites {f g} of covers of charts form a cover.
    """
    check_tag(tag)
    rep = AxiomReport(tag)
    targets = list(hom_targets if hom_targets is not None else algebras)
    for R in algebras:
        elems = list(R.elements()) if isinstance(R, FiniteAlgebra) else _monomial_sample(R)
        rep.record("a.identity", covers(R, [R.one], tag), R.label)
        fams = list(_families(elems, max_family))
        cov = {F: covers(R, F, tag) for F in fams}
        for F, ok in cov.items():
            if not ok:
                continue
            for g in elems:
                rep.record("b.superset", covers(R, F + (g,), tag), (R.label, F, g))
        if isinstance(R, FiniteAlgebra):
            for B in targets:
                if not isinstance(B, FiniteAlgebra) or B.n > 12 or B.kind != R.kind:
                    continue
                for h in enumerate_homs(R, B):
                    for F, ok in cov.items():
                        if ok:
                            rep.record("c.base_change", covers(B, [h(f) for f in F], tag), (R.label, B.label, F))
        for F, ok in cov.items():
            if not ok or not F:
                continue
            charts = [localize(R, f) for f in F]
            for G in fams:
                if all(covers(Rf, [to(g) for g in G], tag) for Rf, to in charts):
                    rep.record("d.locality", cov[G], (R.label, F, G))
            # composition: one chart refined by a cover of it
            if len(F) <= 2:
                for G in fams:
                    Rf, to = charts[0]
                    if G and covers(Rf, [to(g) for g in G], tag):
                        comp = tuple(R.mul(F[0], g) for g in G) + F[1:]
                        rep.record("d.composition", covers(R, comp, tag), (R.label, F, G))
    return rep


def _monomial_sample(R: MonomialAlgebra, degree=1):
    return [m for m in R.monomials(degree, negative=0)]


# ---------------------------------------------------------------------------
# locality


def is_local_object(A, tag="zar"):
    """Whether every cover of A contains a member equivalent to A itself.

    In lattice terms the top of Omega_1(A) is join-irreducible, which for a
    finite spectral space means exactly one closed point.
    """
    from .spectrum import omega1

    L = omega1(A, tag).lattice
    if L.trivial:
        return False
    lower = [a for a, b in L.covers() if b == L.top]
    return len(lower) == 1


def is_local_morphism(h, tag="zar"):
    """f^{-1}(U) = 1 implies U = 1: only the top class of Omega_1(A) maps to the top of Omega_1(B)."""
    from .spectrum import omega1

    OA, OB = omega1(h.source, tag), omega1(h.target, tag)
    for u, fam in enumerate(OA.representatives):
        if OB.classify([h(f) for f in fam]) == OB.lattice.top and u != OA.lattice.top:
            return False
    return True
