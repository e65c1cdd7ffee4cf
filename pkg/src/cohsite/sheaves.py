"""Module sheaves Shf(M) on Spec R, stalkwise vanishing and the Zariski faithfulness sweep."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .algebra import FiniteAlgebra, equalizer_tuples
from .congruence import RModule, congruence_from_pairs, localize_module, module_localization_map, quotient_module
from .errors import CohsiteError, UnsupportedError
from .scheme import SpecScheme
from .site import check_tag, covers


class ModuleSheaf:
    """Shf(M): the open class {f_i} goes to the equalizer of prod M_{f_i} => prod M_{f_i f_j}.

    Values are R-modules on tuples of chart elements; r acts on the i-th
    coordinate through R -> R_{f_i}.
    """

    def __init__(self, M: RModule, tag="zar", base: SpecScheme | None = None):
        if not isinstance(M.R, FiniteAlgebra):
            raise UnsupportedError("module sheaves need a finite algebra")
        self.M, self.R = M, M.R
        self.base = base or SpecScheme(M.R, check_tag(tag))
        self.tag = self.base.tag
        self._values = {}
        self._tuples = {}

    @property
    def opens(self):
        return self.base.opens

    def charts(self, u):
        return [localize_module(self.M, f)[0] for f in self.base.family(u)]

    def value(self, u) -> RModule:
        if u in self._values:
            return self._values[u]
        M, R = self.M, self.R
        F = self.base.family(u)
        comps = [localize_module(M, f) for f in F]
        if not F:
            tuples = [()]
        else:
            constraints = []
            for i, j in itertools.combinations(range(len(F)), 2):
                constraints.append((i, j, module_localization_map(M, F[i], F[j]).__getitem__,
                                    module_localization_map(M, F[j], F[i]).__getitem__))
            tuples = equalizer_tuples([C for C, _ in comps], constraints)
        pos = {t: k for k, t in enumerate(tuples)}
        # r acts on M_f through the image of r in R_f, i.e. r * (preimage of x)
        act = np.zeros((R.n, len(tuples)), dtype=np.int64)
        for r in R.elements():
            for k, t in enumerate(tuples):
                act[r, k] = pos[tuple(to[M.action(r, C.image[x])] for (C, to), x in zip(comps, t))]
        add = None
        if M.add_table is not None:
            add = [[pos[tuple(to[M.add(C.image[x], C.image[y])] for (C, to), x, y in zip(comps, s, t))]
                    for t in tuples] for s in tuples]
        names = ["(" + ",".join(C.name(x) for (C, _), x in zip(comps, t)) + ")" for t in tuples]
        zero = pos[tuple(C.zero for C, _ in comps)]
        V = RModule(R, names, act, zero, add, validate=False, label=f"{M.label}({self.opens.labels[u]})")
        self._values[u], self._tuples[u] = V, tuples
        return V

    def restriction(self, u, v):
        """The restriction value(u) -> value(v) as a list, for v <= u."""
        if not self.opens.le(v, u):
            raise CohsiteError("restriction needs v <= u")
        M = self.M
        A, B = self.value(u), self.value(v)
        F, G = self.base.family(u), self.base.family(v)
        target = {t: k for k, t in enumerate(self._tuples[v])}
        out = []
        for s in self._tuples[u]:
            t = []
            for g in G:
                Mg, _ = localize_module(M, g)
                checks = [(module_localization_map(M, g, f), module_localization_map(M, f, g)[a]) for f, a in zip(F, s)]
                found = [y for y in Mg.elements() if all(p[y] == want for p, want in checks)]
                if len(found) != 1:
                    raise CohsiteError(f"module restriction to {self.R.name(g)} is not unique")
                t.append(found[0])
            out.append(target[tuple(t)])
        return out

    def stalk(self, p) -> RModule:
        return self.value(self.base.space.smallest_open(p))

    def stalks(self):
        return {self.base.space.points[p]: self.stalk(p) for p in range(len(self.base.space))}

    def check_functoriality(self):
        L = self.opens
        bad = []
        for u, v, w in itertools.product(range(L.n), repeat=3):
            if L.le(v, u) and L.le(w, v):
                a, b, c = self.restriction(u, v), self.restriction(v, w), self.restriction(u, w)
                if any(b[a[s]] != c[s] for s in range(len(a))):
                    bad.append((L.labels[u], L.labels[v], L.labels[w]))
        return bad

    def to_document(self):
        L = self.opens
        return {
            "kind": "module_sheaf", "module": self.M.label, "algebra": self.R.label, "tag": self.tag,
            "values": {L.labels[u]: list(self.value(u).names) for u in L.linear_extension()},
            "stalks": {str(p): list(S.names) for p, S in sorted(self.stalks().items())},
        }


def shf(R, M: RModule, tag="zar") -> ModuleSheaf:
    if M.R is not R:
        raise CohsiteError("the module is over a different algebra")
    return ModuleSheaf(M, tag)


def shf_is_zero(R, M: RModule, tag="zar"):
    """(True, None) when every stalk vanishes, else (False, a point with nonzero stalk)."""
    S = shf(R, M, tag)
    for p in range(len(S.base.space)):
        if not S.stalk(p).is_zero:
            return False, S.base.space.points[p]
    return True, None


def quotient_by_family(R: FiniteAlgebra, family):
    """M = R/J with J the congruence generated by (0, f_i)."""
    reg = RModule.regular(R)
    J = congruence_from_pairs(reg, [(R.zero, f) for f in family])
    Q, _ = quotient_module(reg, J)
    Q.label = f"{R.label}/({','.join(R.name(f) for f in family)})"
    return Q, J


@dataclass
class SweepCase:
    algebra: str
    family: tuple
    kind: str  # "zar" (condition checked) or "gap" (tag-cover that is not a zar-cover)
    ok: bool
    detail: str = ""

    def line(self):
        fam = "{" + ",".join(self.family) + "}"
        return f"{'ok  ' if self.ok else 'FAIL'} {self.kind:4} {self.algebra} {fam} {self.detail}".rstrip()


@dataclass
class SweepReport:
    tag: str
    cases: list = field(default_factory=list)

    @property
    def counterexamples(self):
        return [c for c in self.cases if not c.ok]

    @property
    def ok(self):
        return not self.counterexamples

    @property
    def gaps(self):
        return [c for c in self.cases if c.kind == "gap"]

    def to_document(self):
        return {"tag": self.tag, "cases": len(self.cases), "gaps": len(self.gaps),
                "counterexamples": [c.line() for c in self.counterexamples],
                "gap_cases": [c.line() for c in self.gaps]}

    def lines(self):
        return [c.line() for c in self.cases]


def zar_faithfulness_sweep(catalog, tag="zar", max_family=2) -> SweepReport:
    """Exercise condition (*): Shf(M) = 0 iff M = 0, on the quotients M = R/J_F.

    For every family F of at most ``max_family`` elements: under zar, (*) is
    checked for M = R/J_F.  Under another tag, each tag-cover F that is not a
    zar-cover must give M != 0 with every chart localization M_{f_i} = 0.
    """
    check_tag(tag)
    rep = SweepReport(tag)
    for R in catalog:
        if not isinstance(R, FiniteAlgebra) or R.trivial:
            continue
        base = SpecScheme(R, "zar")
        seen = set()
        for k in range(1, max_family + 1):
            for F in itertools.combinations(R.elements(), k):
                key = frozenset(R.idempotent_power(f) for f in F)
                if key in seen:
                    continue
                seen.add(key)
                names = tuple(R.name(f) for f in F)
                zar_cover = covers(R, F, "zar")
                M, _ = quotient_by_family(R, F)
                if tag == "zar":
                    S = ModuleSheaf(M, base=base)
                    nonzero = next((p for p in range(len(base.space)) if not S.stalk(p).is_zero), None)
                    ok = (nonzero is None) == M.is_zero
                    where = "" if nonzero is None else f"stalk at {base.space.points[nonzero]}"
                    rep.cases.append(SweepCase(R.label, names, "zar", ok, f"|M|={M.n} {where}".strip()))
                elif covers(R, F, tag) and not zar_cover:
                    charts_zero = all(localize_module(M, f)[0].is_zero for f in F)
                    ok = not M.is_zero and charts_zero
                    rep.cases.append(SweepCase(R.label, names, "gap", ok,
                                               f"|M|={M.n} charts {'zero' if charts_zero else 'nonzero'}"))
    return rep
