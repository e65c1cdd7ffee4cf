import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cohsite.algebra import localize, zmod
from cohsite.catalog import monoid_catalog, truncated_monomial
from cohsite.congruence import (RModule, congruence_from_pairs, diagonal, localize_module, maximal_congruence_above,
                                prime_of_congruence, quotient_module, restrict_scalars,
                                tensor_with_localization)
from cohsite.errors import AxiomError, UnitalCongruenceError
from cohsite.spectrum import prime_ideals_bruteforce


def _over_R(M, f):
    """M_f viewed as a module over R through R -> R_f."""
    Mf, to_m = localize_module(M, f)
    _, to = localize(M.R, f)
    return restrict_scalars(Mf, to), to_m


def test_closure_on_z6():
    R = zmod(6)
    reg = RModule.regular(R)
    c = congruence_from_pairs(reg, [(R.element("0"), R.element("2"))])
    assert sorted(len(k) for k in c.classes()) == [3, 3]
    Q, proj = quotient_module(reg, c)
    assert Q.n == 2 and proj[R.element("4")] == proj[R.zero]
    assert diagonal(reg) <= c and not c <= diagonal(reg)


def test_closure_is_least():
    R = zmod(12)
    reg = RModule.regular(R)
    pair = (R.element("0"), R.element("8"))
    c = congruence_from_pairs(reg, [pair])
    # every congruence containing the pair, among closures of single pairs, contains c
    for a, b in itertools.combinations(R.elements(), 2):
        d = congruence_from_pairs(reg, [(a, b)])
        if pair in d:
            assert c <= d


def test_maximal_congruence_and_prime_z6():
    R = zmod(6)
    reg = RModule.regular(R)
    primes = set()
    for a, b in itertools.combinations(R.elements(), 2):
        c = congruence_from_pairs(reg, [(a, b)])
        if c.is_unital:
            with pytest.raises(UnitalCongruenceError):
                maximal_congruence_above(R, c)
            continue
        m = maximal_congruence_above(R, c)
        assert c <= m and not m.is_unital
        for x, y in itertools.combinations(R.elements(), 2):
            if (x, y) not in m:
                assert congruence_from_pairs(reg, [(x, y)], m).is_unital
        primes.add(prime_of_congruence(R, m))
    assert primes <= {frozenset(P) for P in prime_ideals_bruteforce(R)}


def test_primes_from_maximal_congruences_on_monoids():
    for R in monoid_catalog():
        if R.trivial:
            continue
        reg = RModule.regular(R)
        m = maximal_congruence_above(R, diagonal(reg))
        assert prime_of_congruence(R, m) in {frozenset(P) for P in prime_ideals_bruteforce(R)}, R.label


def test_module_validation():
    R = zmod(2)
    with pytest.raises(AxiomError):
        RModule(R, ["0", "m"], [[0, 0], [1, 0]], 0)  # 1 acts as a swap


def test_localized_module_of_truncated_quotient():
    T = truncated_monomial(3)
    M, _ = quotient_module(RModule.regular(T), congruence_from_pairs(RModule.regular(T), [(T.zero, T.element("x"))]))
    assert M.n == 2
    assert localize_module(M, T.element("x"))[0].is_zero
    assert not localize_module(M, T.one)[0].is_zero


def test_localization_agrees_with_tensor():
    for n in (2, 3, 4, 6):
        R = zmod(n)
        for M in (RModule.regular(R), quotient_module(RModule.regular(R), congruence_from_pairs(
                RModule.regular(R), [(R.zero, R.element(str(n // 2 or 1)))]))[0]):
            for f in R.elements():
                Mf, to = localize_module(M, f)
                size, part = tensor_with_localization(M, f)
                assert size == Mf.n
                assert part == tensor_partition(to)


def tensor_partition(labels):
    seen = {}
    return tuple(seen.setdefault(x, i) for i, x in enumerate(labels))


def test_localization_agrees_with_tensor_on_monoids():
    for R in monoid_catalog():
        M = RModule.regular(R)
        for f in R.elements():
            Mf, to = localize_module(M, f)
            size, part = tensor_with_localization(M, f)
            assert size == Mf.n and part == tensor_partition(to)


@given(st.integers(2, 16).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, n - 1), st.integers(0, n - 1))))
def test_localization_commutes_with_quotients(case):
    n, f, j = case
    R = zmod(n)
    reg = RModule.regular(R)
    J = congruence_from_pairs(reg, [(R.zero, j)])
    Q, q = quotient_module(reg, J)
    Qf, to_q = _over_R(Q, f)
    Mf, to = _over_R(reg, f)
    Jf = congruence_from_pairs(Mf, [(to[a], to[b]) for a, b in J.pairs()])
    MJ, proj = quotient_module(Mf, Jf)
    # the natural map (M/J)_f -> M_f/J_f, read off on representatives m in M
    table = {}
    for m in R.elements():
        assert table.setdefault(to_q[q[m]], proj[to[m]]) == proj[to[m]]
    assert sorted(table) == list(range(Qf.n)) and sorted(table.values()) == list(range(MJ.n))
    assert all(table[Qf.action(r, x)] == MJ.action(r, table[x]) for r in R.elements() for x in table)


@given(st.integers(1, 20).flatmap(lambda n: st.tuples(st.just(n), st.lists(st.integers(0, n - 1), max_size=3))))
def test_closure_properties(case):
    n, gens = case
    R = zmod(n)
    reg = RModule.regular(R)
    c = congruence_from_pairs(reg, [(R.zero, g) for g in gens])
    # a submodule congruence: the zero class is an ideal and classes are its cosets
    zero_class = {x for x in R.elements() if (x, R.zero) in c}
    assert zero_class == set(R.ideal_closure(gens)) | {R.zero}
    assert congruence_from_pairs(reg, c.pairs()) == c
