from hypothesis import given, settings
from hypothesis import strategies as st

from cohsite.algebra import Hom, MonomialAlgebra, find_isomorphism, identity_hom, zmod
from cohsite.catalog import lattice_catalog, monoid_catalog, truncated_monomial
from cohsite.scheme import (GluedScheme, SpecScheme, chart_restriction_check, compose_morphisms, counit_check,
                            glue, global_sections, is_affine, projective_line, spec_morphism, spec_scheme, stalks)
from cohsite.site import is_local_object


def quotient_hom(m, n):
    return Hom(zmod(m), zmod(n), [x % n for x in range(m)])


def sound(X):
    return X.check_sheaf_condition() == [] and X.check_functoriality() == [] and X.check_beta() == []


def test_spec_z6_values():
    R = zmod(6)
    X = spec_scheme(R)
    assert len(X.space) == 2
    d2, d3 = X.O.classify([2]), X.O.classify([3])
    assert find_isomorphism(X.value(d2), zmod(3)) is not None
    assert find_isomorphism(X.value(d3), zmod(2)) is not None
    assert X.value(X.bottom).trivial
    assert find_isomorphism(global_sections(X), R) is not None
    assert sound(X)


def test_spec_monomial_values():
    X = spec_scheme(MonomialAlgebra(["x", "y"]))
    assert len(X.space) == 4
    assert X.value(X.O.classify([(1, 0)])).signs == ("±", "+")
    assert sound(X)


def test_counit_on_samples():
    for R in [zmod(n) for n in (1, 4, 6, 12, 30)] + list(monoid_catalog(4)) + lattice_catalog(4):
        assert counit_check(R), R.label
    assert counit_check(MonomialAlgebra(["x"], ["x"]))
    assert counit_check(truncated_monomial(3), "tot")


def test_trivial_spectrum():
    X = spec_scheme(zmod(1))
    assert len(X.space) == 0
    assert X.global_sections().trivial


def test_stalks_are_local():
    for R in (zmod(12), zmod(30), truncated_monomial(3)):
        for A in stalks(spec_scheme(R)).values():
            assert is_local_object(A)


def test_projective_line():
    P = projective_line()
    assert len(P.space) == 3 and P.opens.n == 5
    assert sound(P)
    rep = is_affine(P)
    assert not rep and "points" in rep.reason
    assert chart_restriction_check(P, 0) and chart_restriction_check(P, 1)


def test_gluing_along_identity_is_affine():
    X = SpecScheme(zmod(6))
    Z = glue(X, X, X.top, X.top, identity_hom(X.value(X.top)))
    assert len(Z.space) == 2
    assert is_affine(Z)


def test_gluing_two_copies_along_an_open():
    X = SpecScheme(zmod(6))
    u = X.O.classify([2])
    Z = glue(X, X, u, u, identity_hom(X.value(u)))
    assert len(Z.space) == 3
    assert sound(Z)
    assert chart_restriction_check(Z, 0) and chart_restriction_check(Z, 1)
    # the shared Spec Z/3 plus two copies of Spec Z/2: a finite scheme with 12 global sections
    assert Z.global_sections().n == 12
    assert is_affine(Z)


def test_glued_monomial_charts():
    X = SpecScheme(MonomialAlgebra(["x"]))
    u = X.O.classify([(1,)])
    Z = glue(X, X, u, u, identity_hom(X.value(u)))
    assert isinstance(Z, GluedScheme) and len(Z.space) == 3
    assert not is_affine(Z)


def test_morphism_z6_to_z3():
    m = spec_morphism(quotient_hom(6, 3))
    assert m.valid and len(m.point_map) == 1
    assert len(m.describe()) == 1 and len(m.target.space) == 2


def test_morphisms_compose():
    f, g = spec_morphism(quotient_hom(12, 6)), spec_morphism(quotient_hom(6, 3))
    direct = spec_morphism(quotient_hom(12, 3))
    assert f.valid and g.valid and direct.valid
    assert compose_morphisms(g, f) == direct.point_map


def test_open_immersion_of_monomials():
    A, B = MonomialAlgebra(["x"]), MonomialAlgebra(["x"], ["x"])
    m = spec_morphism(Hom(A, B, matrix=[[1]]))
    # the single point of Spec F1[x^-1, x] goes to the generic point of the line
    assert m.valid and len(m.point_map) == 1
    generic = [p for p in range(len(m.target.space)) if p not in m.target.space.closed_points()]
    assert m.point_map == generic


def test_documents_and_dot_are_stable():
    X = spec_scheme(zmod(12))
    assert X.to_document() == spec_scheme(zmod(12)).to_document()
    dot = X.to_dot("S")
    assert dot.startswith('digraph "S"') and dot == spec_scheme(zmod(12)).to_dot("S")


@settings(max_examples=20)
@given(st.integers(1, 30))
def test_spec_zmod_is_a_sound_affine_scheme(n):
    X = spec_scheme(zmod(n))
    assert sound(X)
    assert is_affine(X)


@settings(max_examples=20)
@given(st.sampled_from([(m, n) for m in range(2, 25) for n in range(2, m + 1) if m % n == 0]))
def test_quotient_morphisms_are_valid(case):
    m = spec_morphism(quotient_hom(*case))
    assert m.valid and -1 not in m.point_map
