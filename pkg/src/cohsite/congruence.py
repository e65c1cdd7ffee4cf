"""Finite R-modules, module congruences, quotients and localizations of modules."""
from __future__ import annotations

import itertools

import numpy as np

from .algebra import FiniteAlgebra, Hom, localize
from .errors import AxiomError, CohsiteError, UnitalCongruenceError, UnsupportedError


class RModule:
    """A finite module over a finite algebra R.

    ``act[r, m]`` is the action; ``add`` is the V-operator on M (abelian group
    for rings, join for lattices, ``None`` for pointed sets) and ``zero`` is
    the zero/basepoint.
    """

    def __init__(self, R: FiniteAlgebra, names, act, zero=None, add=None, validate=True, label="M"):
        self.R = R
        self.names = tuple(str(x) for x in names)
        self.n = len(self.names)
        self.act = np.asarray(act, dtype=np.int64).reshape(R.n, self.n)
        self.add_table = None if add is None else np.asarray(add, dtype=np.int64).reshape(self.n, self.n)
        self._index = {x: i for i, x in enumerate(self.names)}
        self.zero = self._index.get(zero, 0) if isinstance(zero, str) else (0 if zero is None else int(zero))
        self.label = label
        if validate:
            self.validate()

    def __repr__(self):
        return f"RModule({self.label}, {self.n} elements over {self.R.label})"

    def __len__(self):
        return self.n

    @classmethod
    def regular(cls, R):
        """R as a module over itself."""
        return cls(R, R.names, R.mul_table, R.zero, R.add_table, validate=False, label=R.label)

    @classmethod
    def zero_module(cls, R):
        return cls(R, ["0"], np.zeros((R.n, 1)), 0, None if R.add_table is None else [[0]], validate=False, label="0")

    def elements(self):
        return range(self.n)

    def element(self, name):
        try:
            return self._index[str(name)]
        except KeyError:
            raise CohsiteError(f"{name!r} is not an element of {self.label}") from None

    def name(self, m):
        return self.names[m]

    def action(self, r, m):
        return int(self.act[r, m])

    def add(self, a, b):
        return int(self.add_table[a, b])

    @property
    def is_zero(self):
        return self.n == 1

    def validate(self):
        R, A, N = self.R, self.act, self.names
        if (A.min(initial=0) < 0) or (A.max(initial=0) >= self.n):
            raise AxiomError("action lands in the carrier", ())
        if (A[R.one] != np.arange(self.n)).any():
            m = int(np.argmax(A[R.one] != np.arange(self.n)))
            raise AxiomError("unital law 1*m = m", (N[m],))
        if (A[R.zero] != self.zero).any():
            raise AxiomError("0*m is the zero element", ())
        # (rs)m = r(sm)
        lhs = A[R.mul_table]  # [r, s, m] -> (rs)m
        rhs = A[np.arange(R.n)[:, None, None], A[None, :, :]]  # [r, s, m] -> r(sm)
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            r, s, m = bad[0]
            raise AxiomError("associativity of the action", (R.names[r], R.names[s], N[m]))
        if self.add_table is None:
            if (A[:, self.zero] != self.zero).any():
                raise AxiomError("r*0 = 0", ())
            return
        P = self.add_table
        for r in R.elements():
            Ar = A[r]
            bad = np.argwhere(Ar[P] != P[Ar[:, None], Ar[None, :]])
            if len(bad):
                a, b = bad[0]
                raise AxiomError("action distributes over +", (R.names[r], N[a], N[b]))
        if R.add_table is not None:
            # (r + s) m = rm + sm
            bad = np.argwhere(A[R.add_table] != P[A[:, None, :], A[None, :, :]])
            if len(bad):
                r, s, m = bad[0]
                raise AxiomError("(r+s)m = rm + sm", (R.names[r], R.names[s], N[m]))

    def to_document(self):
        doc = {"kind": "module", "carrier": list(self.names), "zero": self.names[self.zero],
               "action": [[self.names[int(c)] for c in row] for row in self.act]}
        if self.add_table is not None:
            doc["add"] = [[self.names[int(c)] for c in row] for row in self.add_table]
        return doc


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        a, b = self.find(a), self.find(b)
        if a == b:
            return False
        if a > b:
            a, b = b, a
        self.parent[b] = a
        return True


class Congruence:
    """A module congruence stored as a canonical partition (class id = least member)."""

    def __init__(self, M: RModule, labels):
        self.M = M
        self.labels = tuple(int(x) for x in labels)

    def __eq__(self, other):
        return isinstance(other, Congruence) and self.labels == other.labels

    def __hash__(self):
        return hash(self.labels)

    def __contains__(self, pair):
        a, b = pair
        return self.labels[a] == self.labels[b]

    def __le__(self, other):
        return all(other.labels[a] == other.labels[self.labels[a]] for a in range(len(self.labels)))

    def classes(self):
        out = {}
        for x, c in enumerate(self.labels):
            out.setdefault(c, []).append(x)
        return [tuple(v) for _, v in sorted(out.items())]

    @property
    def is_unital(self):
        """Whether (1, 0) lies in the congruence (only meaningful on R itself)."""
        R = self.M.R
        return (R.one, R.zero) in self if self.M.n == R.n else False

    @property
    def is_total(self):
        return len(set(self.labels)) == 1

    def pairs(self):
        return [(a, b) for a in range(len(self.labels)) for b in range(a + 1, len(self.labels)) if (a, b) in self]


def congruence_from_pairs(M: RModule, pairs, base: Congruence | None = None) -> Congruence:
    """The least congruence containing ``pairs`` (and ``base``), by fixpoint closure."""
    uf = _UnionFind(M.n)
    if base is not None:
        for x, c in enumerate(base.labels):
            uf.union(x, c)
    for a, b in pairs:
        uf.union(int(a), int(b))
    changed = True
    while changed:
        changed = False
        for x in M.elements():
            rx = uf.find(x)
            if rx == x:
                continue
            for r in M.R.elements():
                changed |= uf.union(M.action(r, x), M.action(r, rx))
            if M.add_table is not None:
                for c in M.elements():
                    changed |= uf.union(M.add(x, c), M.add(rx, c))
    return Congruence(M, [uf.find(x) for x in M.elements()])


def diagonal(M: RModule) -> Congruence:
    return Congruence(M, range(M.n))


def quotient_module(M: RModule, c: Congruence):
    """M/c with the induced action; returns (quotient, projection list)."""
    reps = sorted(set(c.labels))
    pos = {r: i for i, r in enumerate(reps)}
    proj = [pos[c.labels[x]] for x in M.elements()]
    act = [[proj[M.action(r, m)] for m in reps] for r in M.R.elements()]
    add = None
    if M.add_table is not None:
        add = [[proj[M.add(a, b)] for b in reps] for a in reps]
    sizes = {r: c.labels.count(r) for r in reps}
    zrep = c.labels[M.zero]
    names = [M.names[M.zero] if r == zrep else M.names[r] if sizes[r] == 1 else f"[{M.names[r]}]" for r in reps]
    Q = RModule(M.R, names, act, proj[M.zero], add, validate=False, label=f"{M.label}/~")
    return Q, proj


def maximal_congruence_above(R: FiniteAlgebra, a: Congruence) -> Congruence:
    """A congruence on R maximal among non-unital ones containing ``a``.

    Pairs are tried in a fixed order and kept whenever the closure stays
    non-unital.  Any strictly larger non-unital congruence would contain a
    rejected pair whose closure with an earlier stage it also contains, so the
    result is maximal.
    """
    if a.is_unital:
        raise UnitalCongruenceError("the congruence contains (1,0); its quotient is zero")
    M = a.M
    cur = a
    for x, y in itertools.combinations(M.elements(), 2):
        if (x, y) in cur:
            continue
        trial = congruence_from_pairs(M, [(x, y)], cur)
        if not trial.is_unital:
            cur = trial
    return cur


def prime_of_congruence(R: FiniteAlgebra, m: Congruence):
    """The prime n = {a | (a, 0) in m} attached to a maximal congruence."""
    return frozenset(a for a in R.elements() if (a, R.zero) in m)


# ---------------------------------------------------------------------------
# localization of modules


def localize_module(M: RModule, f):
    """M_f realized as eM (e the idempotent power of f), with the map M -> M_f.

    Returns (M_f as a module over R_f, map list).
    """
    R = M.R
    Rf, to = localize(R, f)
    e = R.idempotent_power(f)
    pre = {}
    for m in M.elements():
        pre.setdefault(M.action(e, m), m)
    image = sorted(pre, key=pre.get)
    pos = {x: i for i, x in enumerate(image)}
    act = np.zeros((Rf.n, len(image)), dtype=np.int64)
    for a in Rf.elements():
        r = Rf.preimage[a]
        for x in image:
            act[a, pos[x]] = pos[M.action(r, x)]
    add = None
    if M.add_table is not None:
        add = [[pos[M.action(e, M.add(x, y))] for y in image] for x in image]
    Mf = RModule(Rf, [M.names[pre[x]] for x in image], act, pos[M.action(e, M.zero)], add,
                 validate=False, label=f"{M.label}_[{R.names[f]}]")
    Mf.idempotent = e
    Mf.image = tuple(image)
    return Mf, [pos[M.action(e, m)] for m in M.elements()]


def module_localization_map(M: RModule, f, g):
    """The canonical map M_f -> M_{fg} as a list."""
    Mf, _ = localize_module(M, f)
    Mfg, to = localize_module(M, M.R.mul(f, g))
    return [to[x] for x in Mf.image]


def tensor_with_localization(M: RModule, f):
    """R_f (x)_R M built from generators a (x) m and bilinearity relations.

    Pointed sets: set quotient of R_f x M.  Abelian groups: integer row
    reduction of the relation lattice decides which generators agree.  Returns
    the number of elements and the partition of M induced by m -> 1 (x) m.
    """
    R = M.R
    Rf, to = localize(R, f)
    gens = [(a, m) for a in Rf.elements() for m in M.elements()]
    gi = {g: i for i, g in enumerate(gens)}
    if R.kind == "lattice":
        raise UnsupportedError("tensor products of semilattice modules")
    if M.add_table is None:
        uf = _UnionFind(len(gens))
        for a in Rf.elements():
            for m in M.elements():
                uf.union(gi[(a, M.zero)], gi[(Rf.zero, m)])
                for r in R.elements():
                    uf.union(gi[(Rf.mul(a, to(r)), m)], gi[(a, M.action(r, m))])
        classes = {uf.find(gi[(Rf.one, m)]) for m in M.elements()}
        part = [uf.find(gi[(Rf.one, m)]) for m in M.elements()]
        if any(uf.find(i) not in classes for i in range(len(gens))):
            raise CohsiteError("tensor generators are not all of the form 1 (x) m")
        return len(classes), _canonical_partition(part)
    rows = []
    n = len(gens)

    def vec(*terms):
        v = [0] * n
        for sign, g in terms:
            v[gi[g]] += sign
        return v

    for a, a2 in itertools.product(Rf.elements(), repeat=2):
        for m in M.elements():
            rows.append(vec((1, (Rf.add(a, a2), m)), (-1, (a, m)), (-1, (a2, m))))
    for a in Rf.elements():
        for m, m2 in itertools.product(M.elements(), repeat=2):
            rows.append(vec((1, (a, M.add(m, m2))), (-1, (a, m)), (-1, (a, m2))))
        for r in R.elements():
            for m in M.elements():
                rows.append(vec((1, (Rf.mul(a, to(r)), m)), (-1, (a, M.action(r, m)))))
    H = _echelon(np.array(rows, dtype=object))
    order = 1
    for i in range(n):
        piv = [row for row in H if _lead(row) == i]
        if not piv:
            raise CohsiteError("tensor product is infinite")
        order *= abs(piv[0][i])
    part = []
    reps = []
    for m in M.elements():
        v = np.array(vec((1, (Rf.one, m))), dtype=object)
        for j, w in enumerate(reps):
            if _in_lattice(H, v - w):
                part.append(j)
                break
        else:
            part.append(len(reps))
            reps.append(v)
    return order, _canonical_partition(part)


def _canonical_partition(labels):
    seen = {}
    out = []
    for i, x in enumerate(labels):
        out.append(seen.setdefault(x, i))
    return tuple(out)


def _lead(row):
    for i, x in enumerate(row):
        if x != 0:
            return i
    return None


def _echelon(A):
    """Integer row echelon form (Euclid on columns), zero rows dropped."""
    A = [list(r) for r in A]
    out = []
    ncols = len(A[0]) if A else 0
    for col in range(ncols):
        rows = [r for r in A if _lead(r) == col]
        rest = [r for r in A if _lead(r) != col]
        while len(rows) > 1:
            rows.sort(key=lambda r: abs(r[col]))
            p = rows[0]
            nxt = [p]
            for r in rows[1:]:
                q = r[col] // p[col]
                r = [x - q * y for x, y in zip(r, p)]
                if r[col] != 0:
                    nxt.append(r)
                elif any(r):
                    rest.append(r)
            rows = nxt
        if rows:
            out.append(rows[0])
        A = rest
    return out


def _in_lattice(H, v):
    v = list(v)
    for row in H:
        i = _lead(row)
        if v[i] % row[i]:
            return False
        q = v[i] // row[i]
        v = [x - q * y for x, y in zip(v, row)]
    return not any(v)


def module_hom_is_iso(M: RModule, N: RModule, table):
    """Whether a list M -> N is a bijective module map (actions matched through the rings)."""
    return sorted(table) == list(range(N.n)) and M.n == N.n


def modules_isomorphic(M: RModule, N: RModule):
    """Brute-force search for an isomorphism of modules over the same algebra R."""
    if M.n != N.n or M.R is not N.R:
        return None
    for perm in itertools.permutations(range(N.n)):
        if perm[M.zero] != N.zero:
            continue
        if all(perm[M.action(r, m)] == N.action(r, perm[m]) for r in M.R.elements() for m in M.elements()):
            if M.add_table is None or all(perm[M.add(a, b)] == N.add(perm[a], perm[b])
                                          for a in M.elements() for b in M.elements()):
                return list(perm)
    return None


def restrict_scalars(M: RModule, h: Hom):
    """View an R'-module as an R-module along h: R -> R'."""
    R = h.source
    act = [[M.action(h(r), m) for m in M.elements()] for r in R.elements()]
    return RModule(R, M.names, act, M.zero, M.add_table, validate=False, label=M.label)
