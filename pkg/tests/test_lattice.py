import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cohsite.errors import DocumentError, NotALatticeError, SizeGuardError
from cohsite.lattice import (CoherentSpace, DistLattice, IdempotentSemiring, comp, distributive_lattices, hasse_dot,
                             lattice_from_semiring, lattice_isomorphism, lattice_of_poset, pt, pt_bruteforce, rad,
                             semiring_from_lattice, stone_roundtrip, stone_space)


@st.composite
def posets(draw, max_n=4):
    """Random finite posets as (n, strict down-sets), built by adding maximal elements."""
    n = draw(st.integers(0, max_n))
    below = []
    for x in range(n):
        picks = draw(st.sets(st.integers(0, max(x - 1, 0)), max_size=x)) if x else set()
        down = set()
        for y in picks:
            down |= {y} | below[y]
        below.append(frozenset(down))
    return n, below


def diamond():
    return DistLattice.from_covers(["0", "a", "b", "1"], [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")])


# -- oracles ------------------------------------------------------------------


def test_diamond_tables():
    L = diamond()
    a, b = L.index("a"), L.index("b")
    assert L.labels[L.join(a, b)] == "1"
    assert L.labels[L.meet(a, b)] == "0"
    assert (L.bottom, L.top) == (L.index("0"), L.index("1"))


def test_pentagon_and_m3_are_rejected():
    n5 = [("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")]
    with pytest.raises(NotALatticeError, match="distribution"):
        DistLattice.from_covers(["0", "a", "b", "c", "1"], n5)
    m3 = [("0", x) for x in "abc"] + [(x, "1") for x in "abc"]
    with pytest.raises(NotALatticeError, match="distribution"):
        DistLattice.from_covers(["0", "a", "b", "c", "1"], m3)


def test_missing_join_is_reported():
    with pytest.raises(NotALatticeError, match="join"):
        DistLattice.from_covers(["a", "b"], [])


def test_counts_of_small_distributive_lattices():
    # known sequence 1, 1, 1, 2, 3, 5, 8, 15 for sizes 1..8
    lats = distributive_lattices(8)
    assert [sum(1 for L in lats if L.n == k) for k in range(1, 9)] == [1, 1, 1, 2, 3, 5, 8, 15]
    for A, B in itertools.combinations(lats, 2):
        if A.n == B.n:
            assert lattice_isomorphism(A, B) is None


def test_pt_of_chain_and_diamond():
    assert len(pt(DistLattice.chain(4))) == 3
    X = pt(diamond())
    assert len(X) == 2
    X.check()
    assert len(X.closed_points()) == 2


def test_pt_of_trivial_lattice_is_empty():
    L = DistLattice(np.ones((1, 1), dtype=bool))
    assert len(pt(L)) == 0


def test_comp_of_chain():
    C, embed = comp(DistLattice.chain(3))
    assert C.n == 3
    assert list(embed) == sorted(embed)


def test_rad_of_semiring_with_nilpotent():
    # {0, n, 1}: n*n = 0, so n and 0 have the same radical
    add = [[0, 1, 2], [1, 1, 2], [2, 2, 2]]
    mul = [[0, 0, 0], [0, 0, 1], [0, 1, 2]]
    S = IdempotentSemiring(add, mul, 0, 2, ["0", "n", "1"])
    L, q = rad(S)
    assert L.n == 2 and q[0] == q[1] != q[2]


def test_semiring_needs_idempotent_multiplication():
    add = [[0, 1, 2], [1, 1, 2], [2, 2, 2]]
    mul = [[0, 0, 0], [0, 0, 1], [0, 1, 2]]
    with pytest.raises(NotALatticeError):
        lattice_from_semiring(IdempotentSemiring(add, mul, 0, 2))


def test_document_round_trip_and_errors():
    L = diamond()
    back = DistLattice.from_document(L.to_document())
    assert lattice_isomorphism(L, back) is not None
    with pytest.raises(DocumentError, match="lattice.covers"):
        DistLattice.from_document({"elements": ["0"], "covers": [["0", "z"]]})
    with pytest.raises(DocumentError):
        DistLattice.from_document({"covers": []})


def test_space_document_round_trip():
    X = pt(diamond())
    Y = CoherentSpace.from_document(X.to_document())
    assert Y.points == X.points
    assert (Y.member == X.member).all()


def test_dot_is_sorted_and_stable():
    text = diamond().to_dot("D")
    assert text.startswith('digraph "D" {')
    assert text == diamond().to_dot("D")
    assert '"0" -> "a";' in text
    assert hasse_dot(["x"], [], "G").count("->") == 0


def test_comp_size_guard():
    with pytest.raises(SizeGuardError):
        comp(DistLattice.from_sets([frozenset(s) for k in range(5) for s in itertools.combinations(range(4), k)]),
             budget=4)


# -- properties ---------------------------------------------------------------


@given(posets())
def test_birkhoff_points_are_join_irreducibles(poset):
    n, below = poset
    L = lattice_of_poset(n, below)
    assert len(pt(L)) == len(L.join_irreducibles()) == n


@given(posets(3))
def test_pt_matches_bruteforce(poset):
    L = lattice_of_poset(*poset)
    assert sorted(tuple(map(bool, p)) for p in pt(L).homs) == sorted(pt_bruteforce(L))


@given(posets())
def test_stone_roundtrip_property(poset):
    L = lattice_of_poset(*poset)
    assert stone_roundtrip(L)
    X, _, _ = stone_space(L)
    X.check()


@given(posets())
def test_lattice_laws(poset):
    L = lattice_of_poset(*poset)
    J, M = L.join_table, L.meet_table
    r = np.arange(L.n)
    assert (J == J.T).all() and (M == M.T).all()
    assert (J[r[:, None], M] == r[:, None]).all()  # absorption a v (a ^ b) = a
    for a, b, c in itertools.product(range(L.n), repeat=3):
        assert L.meet(a, L.join(b, c)) == L.join(L.meet(a, b), L.meet(a, c))


@given(posets())
def test_semiring_round_trip_property(poset):
    L = lattice_of_poset(*poset)
    S = semiring_from_lattice(L)
    assert (lattice_from_semiring(S).leq == L.leq).all()
    L2, q = rad(S)
    assert L2.n == L.n and sorted(q) == list(range(L.n))


@given(posets())
def test_linear_extension_respects_order(poset):
    L = lattice_of_poset(*poset)
    order = L.linear_extension()
    pos = {x: i for i, x in enumerate(order)}
    assert all(pos[a] < pos[b] for a, b in L.covers())
