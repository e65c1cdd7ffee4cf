"""Finite distributive lattices, idempotent semirings and their spectra.

Elements are addressed by integer index ``0..n-1``; ``labels`` carry the
printable names.  All tables are read-only numpy arrays, so instances are safe
to share.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .errors import AxiomError, CohsiteError, NotALatticeError, SizeGuardError

COMP_BUDGET = 2 ** 16


def _frozen(a):
    a = np.ascontiguousarray(a)
    a.setflags(write=False)
    return a


def _least(candidates, leq):
    """Row-wise least element of boolean candidate masks under ``leq``; -1 if none."""
    # x is least in C  <=>  x in C and C is contained in the up-set of x
    outside = (~leq).astype(np.float32)
    bad = candidates.astype(np.float32) @ outside.T
    ok = candidates & (bad == 0)
    idx = np.where(ok.any(axis=1), ok.argmax(axis=1), -1)
    return idx


class DistLattice:
    """A finite bounded distributive lattice.

    ``leq[a, b]`` is True iff a <= b.  Joins and meets are derived and the
    distribution law is checked at construction (``validate=False`` skips it for
    lattices produced by trusted constructions).
    """

    def __init__(self, leq, labels=None, validate=True):
        leq = np.asarray(leq, dtype=bool)
        n = leq.shape[0]
        if n == 0 or leq.shape != (n, n):
            raise NotALatticeError("non-empty square order matrix", (leq.shape,))
        if labels is None:
            labels = [str(i) for i in range(n)]
        self.labels = tuple(str(x) for x in labels)
        if len(set(self.labels)) != n:
            raise NotALatticeError("distinct labels", self.labels)
        if validate:
            _check_partial_order(leq, self.labels)
        self.leq = _frozen(leq)
        self.n = n
        join = np.empty((n, n), dtype=np.int64)
        meet = np.empty((n, n), dtype=np.int64)
        geq = leq.T
        for a in range(n):
            ub = leq[a][None, :] & leq
            lb = geq[a][None, :] & geq
            join[a] = _least(ub, leq)
            meet[a] = _least(lb, geq)
        if (join < 0).any():
            a, b = np.argwhere(join < 0)[0]
            raise NotALatticeError("join exists", (self.labels[a], self.labels[b]))
        if (meet < 0).any():
            a, b = np.argwhere(meet < 0)[0]
            raise NotALatticeError("meet exists", (self.labels[a], self.labels[b]))
        self.join_table = _frozen(join)
        self.meet_table = _frozen(meet)
        self.bottom = int(np.argmax(leq.all(axis=1)))
        self.top = int(np.argmax(leq.all(axis=0)))
        if validate:
            bad = _distributivity_failure(join, meet)
            if bad is not None:
                raise NotALatticeError("distribution law", tuple(self.labels[i] for i in bad))
        self._index = {lab: i for i, lab in enumerate(self.labels)}

    # -- constructors -----------------------------------------------------
    @classmethod
    def from_join_table(cls, join, labels=None, validate=True):
        join = np.asarray(join)
        n = join.shape[0]
        leq = join == np.arange(n)[None, :]
        return cls(leq, labels, validate)

    @classmethod
    def from_sets(cls, sets, labels=None, validate=False):
        """Lattice of the given sets ordered by inclusion (must be closed under the lattice ops)."""
        sets = [frozenset(s) for s in sets]
        leq = np.array([[a <= b for b in sets] for a in sets], dtype=bool)
        return cls(leq, labels, validate)

    @classmethod
    def from_covers(cls, labels, covers, validate=True):
        labels = list(labels)
        pos = {lab: i for i, lab in enumerate(labels)}
        n = len(labels)
        leq = np.eye(n, dtype=bool)
        for lo, hi in covers:
            leq[pos[lo], pos[hi]] = True
        # transitive closure (Warshall)
        for k in range(n):
            leq |= leq[:, k][:, None] & leq[k][None, :]
        return cls(leq, labels, validate)

    @classmethod
    def chain(cls, n):
        return cls(np.tri(n, dtype=bool).T, [str(i) for i in range(n)], validate=False)

    # -- operations -------------------------------------------------------
    def __len__(self):
        return self.n

    def __repr__(self):
        return f"DistLattice(n={self.n}, labels={self.labels[:6]}{'...' if self.n > 6 else ''})"

    def index(self, label):
        return self._index[str(label)]

    def join(self, a, b):
        return int(self.join_table[a, b])

    def meet(self, a, b):
        return int(self.meet_table[a, b])

    def le(self, a, b):
        return bool(self.leq[a, b])

    def join_all(self, elems):
        out = self.bottom
        for e in elems:
            out = int(self.join_table[out, e])
        return out

    def meet_all(self, elems):
        out = self.top
        for e in elems:
            out = int(self.meet_table[out, e])
        return out

    @property
    def trivial(self):
        return self.n == 1

    def covers(self):
        """Hasse edges (lo, hi) as index pairs, in a fixed order."""
        strict = self.leq & ~np.eye(self.n, dtype=bool)
        between = (strict.astype(np.int64) @ strict.astype(np.int64)) > 0
        hasse = strict & ~between
        return [(int(a), int(b)) for a, b in np.argwhere(hasse)]

    def join_irreducibles(self):
        out = []
        for x in range(self.n):
            if x == self.bottom:
                continue
            below = [y for y in range(self.n) if self.leq[y, x] and y != x]
            if self.join_all(below) != x:
                out.append(x)
        return out

    def down(self, a):
        return frozenset(np.flatnonzero(self.leq[:, a]).tolist())

    def is_homomorphism_to_two(self, p):
        """Whether the 0/1 vector ``p`` is a lattice homomorphism into the two-element lattice."""
        p = np.asarray(p, dtype=bool)
        if p[self.bottom] or not p[self.top]:
            return False
        if (p[self.join_table] != (p[:, None] | p[None, :])).any():
            return False
        return not (p[self.meet_table] != (p[:, None] & p[None, :])).any()

    def linear_extension(self):
        """A deterministic linear extension: by rank, then by label."""
        rank = self.leq.sum(axis=0)
        return sorted(range(self.n), key=lambda i: (int(rank[i]), self.labels[i]))

    # -- serialization ------------------------------------------------------
    def to_document(self):
        order = self.linear_extension()
        return {
            "kind": "lattice",
            "elements": [self.labels[i] for i in order],
            "covers": sorted([self.labels[a], self.labels[b]] for a, b in self.covers()),
            "bottom": self.labels[self.bottom],
            "top": self.labels[self.top],
        }

    @classmethod
    def from_document(cls, doc):
        from .errors import DocumentError

        try:
            labels = [str(x) for x in doc["elements"]]
            covers = [(str(a), str(b)) for a, b in doc["covers"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise DocumentError(f"expected elements/covers ({exc})", "lattice") from None
        unknown = {x for e in covers for x in e} - set(labels)
        if unknown:
            raise DocumentError(f"cover edge mentions unknown elements {sorted(unknown)}", "lattice.covers")
        lat = cls.from_covers(labels, covers)
        for key, want in (("bottom", lat.bottom), ("top", lat.top)):
            if key in doc and lat.index(doc[key]) != want:
                raise DocumentError(f"declared {key} {doc[key]!r} is not the {key}", f"lattice.{key}")
        return lat

    def to_dot(self, name="L"):
        return hasse_dot(self.labels, self.covers(), name)


def hasse_dot(labels, covers, name="G", annotations=None):
    """DOT source for a Hasse diagram drawn bottom-up."""
    lines = [f'digraph "{name}" {{', "  rankdir=BT;", "  node [shape=plaintext];"]
    for i in sorted(range(len(labels)), key=lambda i: labels[i]):
        text = labels[i] if annotations is None else f"{labels[i]}\\n{annotations[i]}"
        lines.append(f'  "{labels[i]}" [label="{text}"];')
    for a, b in sorted((labels[a], labels[b]) for a, b in covers):
        lines.append(f'  "{a}" -> "{b}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _check_partial_order(leq, labels):
    n = leq.shape[0]
    diag = np.diag(leq)
    if not diag.all():
        raise NotALatticeError("reflexivity", (labels[int(np.argmin(diag))],))
    both = leq & leq.T & ~np.eye(n, dtype=bool)
    if both.any():
        a, b = np.argwhere(both)[0]
        raise NotALatticeError("antisymmetry", (labels[a], labels[b]))
    trans = (leq.astype(np.float32) @ leq.astype(np.float32)) > 0
    if (trans & ~leq).any():
        a, c = np.argwhere(trans & ~leq)[0]
        raise NotALatticeError("transitivity", (labels[a], labels[c]))


def _distributivity_failure(join, meet):
    n = join.shape[0]
    x = np.arange(n)[:, None, None]
    lhs = meet[x, join[None, :, :]]
    rhs = join[meet[:, :, None], meet[:, None, :]]
    bad = np.argwhere(lhs != rhs)
    return tuple(int(i) for i in bad[0]) if len(bad) else None


def lattice_isomorphism(a: DistLattice, b: DistLattice):
    """An order isomorphism a -> b as a list, or None."""
    if a.n != b.n:
        return None
    import networkx as nx
    from networkx.algorithms.isomorphism import DiGraphMatcher

    ga, gb = nx.DiGraph(), nx.DiGraph()
    ga.add_nodes_from(range(a.n))
    gb.add_nodes_from(range(b.n))
    ga.add_edges_from(a.covers())
    gb.add_edges_from(b.covers())
    m = DiGraphMatcher(ga, gb)
    if not m.is_isomorphic():
        return None
    return [m.mapping[i] for i in range(a.n)]


# ---------------------------------------------------------------------------
# idempotent semirings


class IdempotentSemiring:
    """Finite semiring with idempotent addition, given by operation tables."""

    def __init__(self, add, mul, zero, one, labels=None, validate=True):
        self.add_table = _frozen(np.asarray(add, dtype=np.int64))
        self.mul_table = _frozen(np.asarray(mul, dtype=np.int64))
        self.n = self.add_table.shape[0]
        self.zero, self.one = int(zero), int(one)
        self.labels = tuple(str(x) for x in (labels or range(self.n)))
        if validate:
            self.validate()

    def __len__(self):
        return self.n

    def add(self, a, b):
        return int(self.add_table[a, b])

    def mul(self, a, b):
        return int(self.mul_table[a, b])

    def le(self, a, b):
        return int(self.add_table[a, b]) == b

    def power(self, a, k):
        out = self.one
        for _ in range(k):
            out = int(self.mul_table[out, a])
        return out

    @property
    def leq(self):
        return self.add_table == np.arange(self.n)[None, :]

    def validate(self):
        A, M, n = self.add_table, self.mul_table, self.n
        L = self.labels
        r = np.arange(n)

        def first(mask):
            return tuple(L[int(i)] for i in np.argwhere(mask)[0])

        for name, T in (("+", A), ("*", M)):
            if (T != T.T).any():
                raise AxiomError(f"commutativity of {name}", first(T != T.T))
            assoc = T[T[:, :, None], r[None, None, :]] != T[r[:, None, None], T[None, :, :]]
            if assoc.any():
                raise AxiomError(f"associativity of {name}", first(assoc))
        if (A[r, r] != r).any():
            raise AxiomError("idempotent addition", first(A[r, r] != r))
        if (A[self.zero] != r).any():
            raise AxiomError("zero is additive unit", first(A[self.zero] != r))
        if (M[self.one] != r).any():
            raise AxiomError("one is multiplicative unit", first(M[self.one] != r))
        if (M[self.zero] != self.zero).any():
            raise AxiomError("zero absorbs multiplication", first(M[self.zero] != self.zero))
        if (A[self.one] != self.one).any():
            raise AxiomError("one absorbs addition", first(A[self.one] != self.one))
        dist = M[r[:, None, None], A[None, :, :]] != A[M[:, :, None], M[:, None, :]]
        if dist.any():
            raise AxiomError("distribution law", first(dist))

    def has_idempotent_multiplication(self):
        r = np.arange(self.n)
        return bool((self.mul_table[r, r] == r).all())


def lattice_from_semiring(S: IdempotentSemiring) -> DistLattice:
    """+ becomes join and * becomes meet; refuses non-idempotent multiplication."""
    r = np.arange(S.n)
    bad = np.flatnonzero(S.mul_table[r, r] != r)
    if len(bad):
        raise NotALatticeError("idempotent multiplication", (S.labels[int(bad[0])],))
    lat = DistLattice.from_join_table(S.add_table, S.labels)
    if not (lat.meet_table == S.mul_table).all():
        a, b = np.argwhere(lat.meet_table != S.mul_table)[0]
        raise NotALatticeError("multiplication is the meet", (S.labels[a], S.labels[b]))
    return lat


def semiring_from_lattice(L: DistLattice) -> IdempotentSemiring:
    return IdempotentSemiring(L.join_table, L.meet_table, L.bottom, L.top, L.labels, validate=False)


def rad(S: IdempotentSemiring):
    """Quotient of ``S`` by a ~ b iff a^n <= b and b^n <= a for some n.

    Returns ``(lattice, quotient_map)`` where ``quotient_map[a]`` is the index
    of the class of ``a``.  Since 1 absorbs +, powers descend, so n = |S|
    already realizes every witness.
    """
    n = S.n
    top_power = np.array([S.power(a, n) for a in range(n)])
    le = S.leq
    rel = le[top_power][:, :] & le[top_power].T  # rel[a,b]: a^n <= b and b^n <= a
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in np.argwhere(rel):
        ra, rb = find(int(a)), find(int(b))
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    roots = sorted({find(a) for a in range(n)})
    cls_of = {r_: i for i, r_ in enumerate(roots)}
    qmap = np.array([cls_of[find(a)] for a in range(n)])
    k = len(roots)
    add = np.empty((k, k), dtype=np.int64)
    mul = np.empty((k, k), dtype=np.int64)
    for i, a in enumerate(roots):
        for j, b in enumerate(roots):
            add[i, j] = qmap[S.add_table[a, b]]
            mul[i, j] = qmap[S.mul_table[a, b]]
    # the relation must be a congruence
    q = qmap
    if (q[S.add_table] != add[q[:, None], q[None, :]]).any() or (q[S.mul_table] != mul[q[:, None], q[None, :]]).any():
        raise CohsiteError("radical relation is not a congruence (semiring axioms violated?)")
    labels = ["{" + ",".join(S.labels[a] for a in range(n) if qmap[a] == i) + "}" for i in range(k)]
    quotient = IdempotentSemiring(add, mul, qmap[S.zero], qmap[S.one], labels, validate=False)
    return lattice_from_semiring(quotient), _frozen(qmap)


# ---------------------------------------------------------------------------
# spaces and Stone duality


@dataclass(frozen=True, eq=False)
class CoherentSpace:
    """Finite coherent space: points, the lattice of (quasi-compact) opens, membership.

    ``member[p, u]`` is True iff point ``p`` lies in open ``u``.  ``homs`` keeps,
    for each point, the 0/1 vector of the lattice homomorphism defining it
    (when the space came from ``pt``).
    """

    points: tuple
    opens: DistLattice
    member: np.ndarray
    homs: tuple = field(default=())

    def __len__(self):
        return len(self.points)

    def open_set(self, u):
        return frozenset(np.flatnonzero(self.member[:, u]).tolist())

    def smallest_open(self, p):
        """The minimal open containing point ``p``."""
        return self.opens.meet_all(np.flatnonzero(self.member[p]).tolist())

    def specialization(self):
        """``spec[p, q]`` iff every open containing p contains q."""
        m = self.member.astype(np.int64)
        contains_p_not_q = m @ (1 - m).T
        return contains_p_not_q == 0

    def closed_points(self):
        spec = self.specialization()
        # p is closed iff nothing else lies in its closure: no q != p with q specializing to p
        out = []
        for p in range(len(self.points)):
            if not any(spec[q, p] and q != p for q in range(len(self.points))):
                out.append(p)
        return out

    def check(self):
        """Raise if membership does not respect the lattice operations."""
        L, m = self.opens, self.member
        if m[:, L.bottom].any():
            raise AxiomError("no point in bottom", ())
        if len(self.points) and not m[:, L.top].all():
            raise AxiomError("every point in top", ())
        if (m[:, L.join_table] != (m[:, :, None] | m[:, None, :])).any():
            raise AxiomError("membership preserves joins", ())
        if (m[:, L.meet_table] != (m[:, :, None] & m[:, None, :])).any():
            raise AxiomError("membership preserves meets", ())
        cols = {tuple(m[:, u]) for u in range(L.n)}
        if len(cols) != L.n:
            raise AxiomError("points separate opens", ())
        spec = self.specialization()
        if (spec & spec.T & ~np.eye(len(self.points), dtype=bool)).any():
            raise AxiomError("specialization is antisymmetric", ())

    def specialization_covers(self):
        """Hasse edges (generic, special) of the specialization order: q in closure of p."""
        spec = self.specialization()
        n = len(self.points)
        strict = spec & ~np.eye(n, dtype=bool)
        between = (strict.astype(np.int64) @ strict.astype(np.int64)) > 0
        return [(int(a), int(b)) for a, b in np.argwhere(strict & ~between)]

    def to_document(self):
        order = self.opens.linear_extension()
        pts = sorted(range(len(self.points)), key=lambda p: str(self.points[p]))
        return {
            "kind": "space",
            "points": [str(self.points[p]) for p in pts],
            "specialization": sorted([str(self.points[a]), str(self.points[b])]
                                     for a, b in self.specialization_covers()),
            "opens": self.opens.to_document(),
            "membership": {self.opens.labels[u]: sorted(str(self.points[p]) for p in self.open_set(u))
                           for u in order},
        }

    @classmethod
    def from_document(cls, doc):
        opens = DistLattice.from_document(doc["opens"])
        points = tuple(doc["points"])
        pos = {p: i for i, p in enumerate(points)}
        member = np.zeros((len(points), opens.n), dtype=bool)
        for lab, pts in doc["membership"].items():
            for p in pts:
                member[pos[p], opens.index(lab)] = True
        return cls(points, opens, _frozen(member))

    def to_dot(self, name="X", annotations=None):
        return hasse_dot([str(p) for p in self.points], self.specialization_covers(), name, annotations)


def pt(L: DistLattice) -> CoherentSpace:
    """Points are homomorphisms L -> {0,1}; the open for ``a`` is {p | p(a) = 1}.

    A homomorphism is determined by the filter p^-1(1), which in a finite
    lattice is principal, so scanning the principal filters enumerates every
    point.
    """
    homs = []
    for x in range(L.n):
        p = L.leq[x]
        if L.is_homomorphism_to_two(p):
            homs.append(p.copy())
    homs.sort(key=lambda p: tuple(~p))
    member = np.array(homs, dtype=bool).reshape(len(homs), L.n)
    names = []
    for p in homs:
        gen = L.meet_all(np.flatnonzero(p).tolist())
        names.append(f"p[{L.labels[gen]}]")
    return CoherentSpace(tuple(names), L, _frozen(member), tuple(_frozen(p) for p in homs))


def pt_bruteforce(L: DistLattice):
    """All 0/1 vectors on L that are lattice homomorphisms (exponential; for small L only)."""
    out = []
    for bits in itertools.product((False, True), repeat=L.n):
        if L.is_homomorphism_to_two(bits):
            out.append(tuple(bits))
    return out


def lower_sets(L: DistLattice, budget=None):
    """All non-empty lower sets of L, each as a frozenset of indices."""
    budget = COMP_BUDGET if budget is None else budget
    found = {frozenset([L.bottom])}
    frontier = list(found)
    while frontier:
        nxt = []
        for s in frontier:
            for x in range(L.n):
                if x in s:
                    continue
                if all(y in s for y in range(L.n) if L.leq[y, x] and y != x):
                    t = s | {x}
                    if t not in found:
                        found.add(t)
                        nxt.append(t)
                        if len(found) > budget:
                            raise SizeGuardError("comp", len(found), budget)
        frontier = nxt
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def comp(L: DistLattice, budget=None):
    """Lattice of non-empty lower sets of L under inclusion, plus the embedding a -> down(a)."""
    budget = COMP_BUDGET if budget is None else budget
    sets = lower_sets(L, budget)
    labels = ["{" + ",".join(L.labels[i] for i in sorted(s)) + "}" for s in sets]
    C = DistLattice.from_sets(sets, labels)
    pos = {s: i for i, s in enumerate(sets)}
    embed = np.array([pos[L.down(a)] for a in range(L.n)])
    return C, _frozen(embed)


@dataclass(frozen=True)
class IsomorphismWitness:
    """Outcome of an explicit isomorphism construction.

    ``forward`` maps source elements to target elements.  Falsy when the
    comparison failed, in which case ``counterexample`` explains why.
    """

    forward: dict
    ok: bool = True
    counterexample: str | None = None
    detail: dict = field(default_factory=dict)

    def __bool__(self):
        return self.ok


def stone_space(L: DistLattice, budget=None):
    """pt(comp(L)) cut down to the points whose restriction along L -> comp(L) is a homomorphism of L.

    Points of comp(L) that do not respect the joins already present in L are
    not points of the coherent space; dropping them leaves exactly pt(L).
    """
    budget = COMP_BUDGET if budget is None else budget
    C, embed = comp(L, budget)
    X = pt(C)
    keep = [i for i, p in enumerate(X.homs) if L.is_homomorphism_to_two(p[embed])]
    member = X.member[keep]
    cols = {}
    for u in range(C.n):
        cols.setdefault(tuple(member[:, u]), []).append(u)
    sets = [frozenset(np.flatnonzero(np.array(c)).tolist()) for c in cols]
    labels = ["{" + ",".join(X.points[keep[i]] for i in sorted(s)) + "}" for s in sets]
    opens = DistLattice.from_sets(sets, labels)
    m = np.array([[i in s for s in sets] for i in range(len(keep))], dtype=bool).reshape(len(keep), len(sets))
    space = CoherentSpace(tuple(X.points[i] for i in keep), opens, _frozen(m),
                          tuple(X.homs[i][embed] for i in keep))
    return space, C, embed


def stone_roundtrip(L: DistLattice, budget=None) -> IsomorphismWitness:
    """Explicit isomorphism L -> Omega_c(pt(comp(L))), a -> open of down(a)."""
    budget = COMP_BUDGET if budget is None else budget
    X, C, embed = stone_space(L, budget)
    X.check()
    sets = [X.open_set(u) for u in range(X.opens.n)]
    pos = {s: i for i, s in enumerate(sets)}
    fwd = {}
    for a in range(L.n):
        s = frozenset(i for i, p in enumerate(X.homs) if p[a])
        if s not in pos:
            return IsomorphismWitness({}, False, f"open of {L.labels[a]} missing from Omega_c")
        fwd[a] = pos[s]
    if len(set(fwd.values())) != L.n:
        a, b = next((a, b) for a in range(L.n) for b in range(a) if fwd[a] == fwd[b])
        return IsomorphismWitness(fwd, False, f"not injective: {L.labels[a]}, {L.labels[b]}")
    if len(fwd) != X.opens.n:
        return IsomorphismWitness(fwd, False, "not surjective onto Omega_c")
    O = X.opens
    for a in range(L.n):
        for b in range(L.n):
            if fwd[L.join(a, b)] != O.join(fwd[a], fwd[b]) or fwd[L.meet(a, b)] != O.meet(fwd[a], fwd[b]):
                return IsomorphismWitness(fwd, False, f"operations disagree at {L.labels[a]}, {L.labels[b]}")
    if fwd[L.bottom] != O.bottom or fwd[L.top] != O.top:
        return IsomorphismWitness(fwd, False, "bounds not preserved")
    return IsomorphismWitness(fwd, detail={"space": X, "comp": C})


# ---------------------------------------------------------------------------
# generation of small lattices


def _downsets_of_poset(n, below):
    """All down-sets of a poset on range(n); ``below[x]`` is the strict down-set of x."""
    out = []
    for bits in itertools.product((0, 1), repeat=n):
        s = {i for i in range(n) if bits[i]}
        if all(below[x] <= s for x in s):
            out.append(frozenset(s))
    return out


def lattice_of_poset(n, below, labels=None):
    """Birkhoff: the lattice of down-sets of a finite poset."""
    sets = sorted(_downsets_of_poset(n, below), key=lambda s: (len(s), sorted(s)))
    names = labels or [str(i) for i in range(n)]
    lab = ["{" + ",".join(names[i] for i in sorted(s)) + "}" for s in sets]
    return DistLattice.from_sets(sets, lab)


def distributive_lattices(max_size):
    """Every distributive lattice with at most ``max_size`` elements, up to isomorphism.

    Built from posets of join-irreducibles: each poset grows by a new maximal
    element whose strict down-set is a down-set of the old poset.
    """
    import networkx as nx

    found = [DistLattice(np.ones((1, 1), dtype=bool), ["{}"])]
    seen_graphs = []
    frontier = [(0, [])]
    while frontier:
        nxt = []
        for n, below in frontier:
            bl = below
            for ds in _downsets_of_poset(n, bl):
                new_below = list(bl) + [frozenset(ds)]
                m = n + 1
                count = len(_downsets_of_poset(m, new_below))
                if count > max_size:
                    continue
                g = nx.DiGraph()
                g.add_nodes_from(range(m))
                g.add_edges_from((y, x) for x in range(m) for y in new_below[x])
                if any(nx.is_isomorphic(g, h) for h in seen_graphs if h.number_of_nodes() == m):
                    continue
                seen_graphs.append(g)
                nxt.append((m, new_below))
                found.append(lattice_of_poset(m, new_below))
        frontier = nxt
    return sorted(found, key=lambda L: (L.n, L.labels))
