import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cohsite.algebra import MonomialAlgebra, zmod
from cohsite.catalog import monoid_catalog, truncated_monomial
from cohsite.congruence import RModule
from cohsite.documents import load_algebra, load_module
from cohsite.errors import CohsiteError, UnsupportedError
from cohsite.sheaves import ModuleSheaf, quotient_by_family, shf, shf_is_zero, zar_faithfulness_sweep

from conftest import EXAMPLES


def test_shf_of_z2_over_z6():
    M = load_module(EXAMPLES / "z6_mod2.json")
    S = shf(M.R, M)
    d2, d3 = S.base.O.classify([2]), S.base.O.classify([3])
    assert S.value(d3).n == 2 and S.value(d2).is_zero
    assert S.value(S.base.top).n == 2
    zero, where = shf_is_zero(M.R, M)
    assert not zero and where == "p[{3}]"
    assert S.check_functoriality() == []


def test_regular_sheaf_matches_structure_sheaf():
    R = zmod(12)
    S = shf(R, RModule.regular(R))
    for u in range(S.opens.n):
        assert S.value(u).n == S.base.value(u).n


def test_zero_module_has_zero_sheaf():
    M = load_module(EXAMPLES / "z6_zero.json")
    assert shf_is_zero(M.R, M) == (True, None)


def test_truncated_quotient_stalk_is_nonzero():
    T = truncated_monomial(3)
    M, _ = quotient_by_family(T, [T.element("x")])
    assert not M.is_zero
    zero, where = shf_is_zero(T, M)
    assert not zero and where is not None


def test_shf_rejects_foreign_and_infinite_modules():
    M = RModule.regular(zmod(6))
    with pytest.raises(CohsiteError):
        shf(zmod(6), M)  # a different Z/6 object
    with pytest.raises(UnsupportedError):
        ModuleSheaf(type("M", (), {"R": MonomialAlgebra(["x"])})())


def test_document_lists_every_open():
    R = zmod(6)
    S = shf(R, quotient_by_family(R, [2])[0])
    doc = S.to_document()
    assert set(doc["values"]) == set(S.opens.labels)
    assert len(doc["stalks"]) == 2


def test_zar_sweep_small():
    rep = zar_faithfulness_sweep([zmod(n) for n in (2, 4, 6, 12)] + list(monoid_catalog(3)), "zar")
    assert rep.ok and rep.gaps == []
    assert all(c.kind == "zar" for c in rep.cases)


def test_tot_gap_on_the_pair_monoid():
    P = load_algebra(EXAMPLES / "pair.json")
    rep = zar_faithfulness_sweep([P], "tot")
    assert [c.family for c in rep.gaps] == [("a", "b")]
    assert rep.ok
    M, _ = quotient_by_family(P, [P.element("a"), P.element("b")])
    # nonzero, yet invisible on the charts of the tot cover
    assert not M.is_zero
    assert rep.gaps[0].line().startswith("ok   gap  {0,1,a,b} {a,b}")


def test_min_sweep_has_no_gaps_on_local_rings():
    rep = zar_faithfulness_sweep([zmod(4), zmod(9)], "min")
    assert rep.cases == []


@settings(max_examples=25)
@given(st.integers(2, 30).flatmap(lambda n: st.tuples(st.just(n), st.lists(st.integers(0, n - 1), max_size=2))))
def test_stalks_detect_zero_modules(case):
    n, F = case
    R = zmod(n)
    M, _ = quotient_by_family(R, F)
    zero, _ = shf_is_zero(R, M)
    assert zero == M.is_zero
    # global sections of Shf(M) recover M for a finite ring
    S = shf(R, M)
    assert S.value(S.base.top).n == M.n


def test_quotient_by_family_matches_ideal():
    R = zmod(12)
    M, J = quotient_by_family(R, [R.element("4"), R.element("6")])
    # (4, 6) = (2), so M = Z/2 with the even residues collapsed to 0
    assert M.n == 2
    assert sorted(map(len, J.classes())) == [6, 6]
