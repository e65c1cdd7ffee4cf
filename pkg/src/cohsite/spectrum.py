"""Ideal semirings, radical lattices, the open-class lattice Omega_1 and point spectra."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .algebra import FiniteAlgebra, MonomialAlgebra, localize
from .errors import CohsiteError, SizeGuardError
from .lattice import (CoherentSpace, DistLattice, IdempotentSemiring, IsomorphismWitness, lattice_isomorphism, pt,
                      rad)
from .site import check_tag, covers

IDEAL_BUDGET = 4096
OMEGA_BUDGET = 4096
MONOMIAL_DEGREE = 3


# ---------------------------------------------------------------------------
# ideal semiring


@dataclass
class IdealSemiring:
    """I(R) with its elements.  ``ideals[i]`` is a frozenset (finite) or a support antichain (monomial)."""

    algebra: object
    ideals: list
    semiring: IdempotentSemiring
    index: dict

    def of_family(self, family):
        """Index of the ideal generated by ``family``."""
        return self.index[_ideal_key(self.algebra, family)]


def _ideal_key(R, family):
    if isinstance(R, MonomialAlgebra):
        return _antichain({R.support(f) for f in family if f is not None})
    return R.ideal_closure(family) if family else frozenset([R.zero])


def _antichain(sets):
    sets = set(sets)
    return frozenset(s for s in sets if not any(t < s for t in sets))


def _all_antichains(ground):
    """Every antichain of subsets of ``ground`` (the Dedekind enumeration, fine for |ground| <= 4)."""
    subsets = [frozenset(c) for k in range(len(ground) + 1) for c in itertools.combinations(ground, k)]
    out = [frozenset()]

    def extend(chosen, start):
        for i in range(start, len(subsets)):
            s = subsets[i]
            if any(s <= t or t <= s for t in chosen):
                continue
            new = chosen | {s}
            out.append(frozenset(new))
            extend(new, i + 1)

    extend(frozenset(), 0)
    return out


def _ideal_label(R, key):
    if isinstance(R, MonomialAlgebra):
        if not key:
            return "(0)"
        return "(" + ",".join(R.name(R.squarefree(s))
                              for s in sorted(key, key=lambda s: (len(s), sorted(s)))) + ")"
    gens = _generators(R, key)
    return "(" + ",".join(R.name(g) for g in gens) + ")"


def _generators(R, ideal):
    """A small generating set: greedily add elements not yet generated."""
    gens, cur = [], frozenset([R.zero])
    if ideal == cur:
        return [R.zero]
    order = sorted(ideal, key=lambda x: (-len(R.ideal_closure([x])), x))
    for x in order:
        if x not in cur:
            gens.append(x)
            cur = R.ideal_closure(gens)
        if cur == ideal:
            break
    return sorted(gens)


def ideal_semiring(R, budget=None) -> IdealSemiring:
    """I(R): all ideals of a finite algebra, or radical monomial ideals of a monomial algebra."""
    budget = IDEAL_BUDGET if budget is None else budget
    key = ("ideals",)
    if key in R._cache:
        return R._cache[key]
    if isinstance(R, MonomialAlgebra):
        free = R.free
        if len(free) > 5:
            raise SizeGuardError("radical monomial ideals", 2 ** (2 ** len(free)), budget)
        ideals = sorted(_all_antichains(free), key=lambda a: (sum(2 ** len(s) for s in a), sorted(map(sorted, a))))

        def plus(a, b):
            return _antichain(a | b)

        def times(a, b):
            return _antichain({s | t for s in a for t in b})

        zero, one = frozenset(), frozenset([frozenset()])
    else:
        principal = {R.ideal_closure([x]) for x in R.elements()}
        ideals = set(principal)
        frontier = list(ideals)
        while frontier:
            nxt = []
            for a in frontier:
                for p in principal:
                    s = R.span(a | p)
                    if s not in ideals:
                        if len(ideals) >= budget:
                            raise SizeGuardError("ideal enumeration", len(ideals) + 1, budget)
                        ideals.add(s)
                        nxt.append(s)
            frontier = nxt
        ideals = sorted(ideals, key=lambda s: (len(s), sorted(s)))

        def plus(a, b):
            return R.span(a | b)

        def times(a, b):
            return R.ideal_closure({R.mul(x, y) for x in a for y in b})

        zero, one = frozenset([R.zero]), frozenset(R.elements())
    index = {a: i for i, a in enumerate(ideals)}
    n = len(ideals)
    add = np.empty((n, n), dtype=np.int64)
    mul = np.empty((n, n), dtype=np.int64)
    for i, a in enumerate(ideals):
        for j in range(i, n):
            b = ideals[j]
            add[i, j] = add[j, i] = index[plus(a, b)]
            mul[i, j] = mul[j, i] = index[times(a, b)]
    labels = [_ideal_label(R, a) for a in ideals]
    labels = _dedupe(labels)
    S = IdempotentSemiring(add, mul, index[zero], index[one], labels)
    out = IdealSemiring(R, ideals, S, index)
    R._cache[key] = out
    return out


def _dedupe(labels):
    seen = {}
    out = []
    for lab in labels:
        k = seen.get(lab, 0)
        seen[lab] = k + 1
        out.append(lab if k == 0 else f"{lab}#{k}")
    return out


def radical_lattice(R):
    """rad(I(R)) with the quotient map eps from ideal indices to lattice elements."""
    key = ("radical",)
    if key not in R._cache:
        I = ideal_semiring(R)
        L, eps = rad(I.semiring)
        R._cache[key] = (L, eps)
    return R._cache[key]


def radical_contains(R, ideal_family, a):
    """Whether a lies in the radical of the ideal generated by ``ideal_family``: (a) <= rad(J)."""
    I = ideal_semiring(R)
    L, eps = radical_lattice(R)
    return L.le(eps[I.of_family([a])], eps[I.of_family(list(ideal_family))])


def radical_classes_bruteforce(R):
    """Partition of I(R) by a ~ b iff a^n <= b and b^n <= a, checked directly on ideal sets."""
    I = ideal_semiring(R)
    n = len(I.ideals)
    S = I.semiring

    def pw(a, k):
        return S.power(a, k)

    def below(a, b):
        if isinstance(R, MonomialAlgebra):
            return all(any(t <= s for t in I.ideals[b]) for s in I.ideals[a])
        return I.ideals[a] <= I.ideals[b]

    cls = []
    for a in range(n):
        label = next((c for c in range(a) if
                      any(below(pw(a, k), c) for k in range(1, n + 1)) and
                      any(below(pw(c, k), a) for k in range(1, n + 1))), a)
        cls.append(cls[label] if label != a else a)
    return cls


# ---------------------------------------------------------------------------
# Omega_1


@dataclass
class OpenClassLattice:
    """Classes of localization families under the refinement preorder of a topology.

    ``pool`` holds one representative element per singleton class, and
    ``keys[u]`` is the set of pool indices s with {s} refining the class u; the
    lattice order is inclusion of keys.
    """

    algebra: object
    tag: str
    pool: list
    keys: list
    lattice: DistLattice
    representatives: list
    _index: dict = field(default_factory=dict, repr=False)
    refines: object = field(default=None, repr=False)

    def key_of(self, family):
        R = self.algebra
        family = [_canon(R, f) for f in family]
        refines = self.refines or _refines
        return frozenset(s for s, p in enumerate(self.pool) if refines(R, p, family, self.tag))

    def classify(self, family):
        """Lattice element of the class of ``family``."""
        k = self.key_of(family)
        try:
            return self._index[k]
        except KeyError:
            raise CohsiteError("family falls outside the enumerated pool; increase the sample bound") from None

    def label(self, u):
        return self.lattice.labels[u]


def _canon(R, f):
    if isinstance(R, MonomialAlgebra) and f is not None:
        return R.squarefree(R.support(f))
    return f


def _refines(R, f, family, tag):
    """{f} refines the family: {g/1} covers R_f."""
    Rf, to = localize(R, f)
    return covers(Rf, [to(g) for g in family], tag)


def _ideal_refines(R: FiniteAlgebra, tag):
    """Fast form of ``_refines`` for min and zar on a finite algebra.

    R_f is eR with e the idempotent power of f, and {e g} covers eR iff
    e lies in the ideal of the family (zar) or in one principal ideal (min).
    """
    closures = {}
    idem = [R.idempotent_power(f) for f in R.elements()]

    def ideal(fam):
        if fam not in closures:
            if tag == "zar":
                closures[fam] = R.ideal_closure(fam)
            else:
                closures[fam] = frozenset({R.zero}).union(*[R.ideal_closure([g]) for g in fam])
        return closures[fam]

    def refines(_, f, family, __):
        return idem[f] in ideal(frozenset(family))

    return refines


def _pool(R, degree=MONOMIAL_DEGREE):
    if isinstance(R, MonomialAlgebra):
        # squarefree supports decide the class, so the pool must reach every one of them
        cands = R.monomials(max(degree, len(R.free)), negative=0)
        return sorted({_canon(R, m) for m in cands}, key=lambda m: (-1, ()) if m is None else (sum(m), m))
    return list(R.elements())


def omega1(R, tag, budget=None, degree=MONOMIAL_DEGREE) -> OpenClassLattice:
    """Omega_1(R) for a topology: join = union of families, meet = pairwise products."""
    budget = OMEGA_BUDGET if budget is None else budget
    check_tag(tag)
    cache_key = ("omega1", tag, degree)
    if cache_key in R._cache:
        return R._cache[cache_key]
    raw = _pool(R, degree)
    refines = _refines
    if isinstance(R, FiniteAlgebra) and tag != "tot":
        refines = _ideal_refines(R, tag)
    # singleton classes: f ~ g iff {f} and {g} refine each other
    rel = {f: {g for g in raw if refines(R, f, [g], tag)} for f in raw}
    pool = []
    for f in raw:
        if not any(f in rel[p] and p in rel[f] for p in pool):
            pool.append(f)
    below = [frozenset(s for s, p in enumerate(pool) if g in rel[p]) for g in pool]

    def key(fam):
        return frozenset(s for s, p in enumerate(pool) if refines(R, p, [pool[i] for i in fam], tag))

    empty = key(())
    found = {empty: ()}
    frontier = [()]
    while frontier:
        nxt = []
        for fam in frontier:
            for i in range(len(pool)):
                if i in fam:
                    continue
                new = tuple(sorted(set(fam) | {i}))
                k = key(new) if len(new) > 1 else below[i]
                if k not in found:
                    if len(found) >= budget:
                        raise SizeGuardError("Omega_1 classes", len(found) + 1, budget)
                    found[k] = new
                    nxt.append(new)
        frontier = nxt
    keys = sorted(found, key=lambda k: (len(k), sorted(k)))
    # canonical representative: the maximal singleton classes inside the key
    reps = []
    for k in keys:
        maxi = [s for s in k if not any(t != s and s in below[t] and t not in below[s] for t in k)]
        chosen = []
        for s in sorted(maxi):
            if not any(s in below[c] and c in below[s] for c in chosen):
                chosen.append(s)
        reps.append([pool[s] for s in chosen])
    labels = _dedupe(["{" + ",".join(R.name(f) for f in fam) + "}" for fam in reps])
    L = DistLattice.from_sets(keys, labels, validate=True)
    out = OpenClassLattice(R, tag, pool, keys, L, reps, {k: i for i, k in enumerate(keys)}, refines)
    R._cache[cache_key] = out
    return out


def check_meets(O: OpenClassLattice):
    """Raise unless every lattice meet is the class of the pairwise products of representatives."""
    R, L = O.algebra, O.lattice
    for u, v in itertools.combinations(range(L.n), 2):
        prod = [R.mul(f, g) for f in O.representatives[u] for g in O.representatives[v]]
        if O.classify(prod) != L.meet(u, v):
            raise CohsiteError(f"meet of {L.labels[u]} and {L.labels[v]} is not the class of products")


def omega1_join(O: OpenClassLattice, u, v):
    """Class of the union of representatives (agrees with the lattice join)."""
    return O.classify(list(O.representatives[u]) + list(O.representatives[v]))


def omega1_meet(O: OpenClassLattice, u, v):
    R = O.algebra
    return O.classify([R.mul(f, g) for f in O.representatives[u] for g in O.representatives[v]])


# ---------------------------------------------------------------------------
# points


def spec0(R, tag="zar") -> CoherentSpace:
    """Point spectrum: homomorphisms from the open-class lattice to {0,1}.

    For zar the lattice is rad(I(R)); otherwise Omega_1(R, tag).  The points of
    pt(comp(L)) that respect the joins of L are exactly pt(L), and those are the
    points used here.
    """
    check_tag(tag)
    L = radical_lattice(R)[0] if tag == "zar" else omega1(R, tag).lattice
    return pt(L)


def prime_of_point(R, X: CoherentSpace, p):
    """{a in R | p(eps(a)) = 0} for a point of spec0(R, zar) (finite backends)."""
    I = ideal_semiring(R)
    L, eps = radical_lattice(R)
    hom = X.homs[p]
    return frozenset(a for a in R.elements() if not hom[eps[I.of_family([a])]])


def prime_ideals_bruteforce(R: FiniteAlgebra):
    """Prime ideals found by testing every ideal directly: proper, and ab in P implies a or b in P."""
    out = []
    for P in ideal_semiring(R).ideals:
        if R.one in P:
            continue
        if all(R.mul(a, b) not in P for a in R.elements() if a not in P for b in R.elements() if b not in P):
            out.append(P)
    return out


# ---------------------------------------------------------------------------
# correspondence and comparisons


def phi_correspondence(R) -> IsomorphismWitness:
    """The lattice isomorphism Omega_1(R, zar) -> rad(I(R)), {f_i} -> class of (f_i)."""
    O = omega1(R, "zar")
    I = ideal_semiring(R)
    L, eps = radical_lattice(R)
    fwd = {}
    for u, fam in enumerate(O.representatives):
        fwd[u] = int(eps[I.of_family(fam)])
    # well defined: every pool element lands consistently with its class
    for s, f in enumerate(O.pool):
        u = O.classify([f])
        if int(eps[I.of_family([f])]) != fwd[u]:
            return IsomorphismWitness(fwd, False, f"singleton {R.name(f)} disagrees with its class")
    if sorted(fwd.values()) != list(range(L.n)):
        return IsomorphismWitness(fwd, False, "comparison map is not bijective")
    A = O.lattice
    for u in range(A.n):
        for v in range(A.n):
            if fwd[A.join(u, v)] != L.join(fwd[u], fwd[v]) or fwd[A.meet(u, v)] != L.meet(fwd[u], fwd[v]):
                return IsomorphismWitness(fwd, False, f"operations differ at {A.labels[u]}, {A.labels[v]}")
    return IsomorphismWitness({A.labels[u]: L.labels[v] for u, v in fwd.items()},
                              detail={"omega1": A, "radical": L, "map": fwd})


def phi_naturality(h):
    """For h: R -> B (finite), pulling back covers then phi equals phi then extending ideals."""
    R, B = h.source, h.target
    OR, OB = omega1(R, "zar"), omega1(B, "zar")
    IR, IB = ideal_semiring(R), ideal_semiring(B)
    LB, epsB = radical_lattice(B)
    for fam in OR.representatives:
        img = [h(f) for f in fam]
        via_omega = int(epsB[IB.of_family(OB.representatives[OB.classify(img)])])
        extended = int(epsB[IB.of_family(img)])
        if via_omega != extended:
            return False
    return True


def topology_comparison(R, source_tag, target_tag):
    """The canonical map Omega_1(R, source) -> Omega_1(R, target) and whether it is a surjective lattice hom."""
    A, B = omega1(R, source_tag), omega1(R, target_tag)
    fwd = [B.classify(fam) for fam in A.representatives]
    LA, LB = A.lattice, B.lattice
    hom = all(fwd[LA.join(u, v)] == LB.join(fwd[u], fwd[v]) and fwd[LA.meet(u, v)] == LB.meet(fwd[u], fwd[v])
              for u in range(LA.n) for v in range(LA.n))
    hom = hom and fwd[LA.bottom] == LB.bottom and fwd[LA.top] == LB.top
    surjective = sorted(set(fwd)) == list(range(LB.n))
    return {"map": fwd, "homomorphism": hom, "surjective": surjective, "sizes": (LA.n, LB.n)}


def spaces_isomorphic(X: CoherentSpace, Y: CoherentSpace):
    return len(X) == len(Y) and lattice_isomorphism(X.opens, Y.opens) is not None
