"""Named sample algebras used by the sweeps, the acceptance suite and the CLI."""
from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

from .algebra import FiniteAlgebra, MonomialAlgebra, find_isomorphism, lattice_algebra, product_algebra, zmod
from .documents import finite_monomial_monoid
from .lattice import distributive_lattices


def boolean_monoid():
    """F1 = {0, 1}."""
    return FiniteAlgebra("monoid", ["0", "1"], [[0, 0], [0, 1]], 0, 1, validate=False, label="F1")


def truncated_monomial(n):
    """F1[x]/(x^n = 0)."""
    return finite_monomial_monoid(["x"], {"x": n}, label=f"F1[x]/(x^{n})")


def cyclic_with_zero(n):
    """The cyclic group of order n with an absorbing 0 adjoined."""
    names = ["0", "1"] + (["g"] if n > 1 else []) + [f"g^{i}" for i in range(2, n)]
    mul = np.zeros((n + 1, n + 1), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            mul[i + 1, j + 1] = (i + j) % n + 1
    return FiniteAlgebra("monoid", names, mul, 0, 1, validate=False, label=f"C{n}+0")


def idempotent_pair():
    """{0,1,a,b} with a, b idempotent and ab = 0, i.e. F1 x F1 with a = (1,0), b = (0,1)."""
    return FiniteAlgebra("monoid", ["0", "1", "a", "b"],
                         [[0, 0, 0, 0], [0, 1, 2, 3], [0, 2, 2, 0], [0, 3, 0, 3]], 0, 1, label="{0,1,a,b}")


def monoid_product(A, B):
    return product_algebra(A, B)


@lru_cache(maxsize=None)
def small_monoids(max_size=5):
    """All commutative monoids with absorbing zero of at most ``max_size`` elements, up to isomorphism.

    Element 0 is the zero and element 1 the unit; the remaining products are
    enumerated exhaustively and kept when associative.
    """
    found = []
    for n in range(1, max_size + 1):
        for table in _monoid_tables(n):
            A = FiniteAlgebra("monoid", _names(n), table, 0, 1 if n > 1 else 0, validate=False)
            if not any(B.n == n and find_isomorphism(A, B) is not None for B in found):
                found.append(A)
    for i, A in enumerate(found):
        A.label = f"mon{A.n}.{sum(1 for B in found[:i] if B.n == A.n)}"
    return tuple(found)


def _names(n):
    return ["0", "1", "a", "b", "c", "d", "e", "f"][:n] if n > 1 else ["0"]


def _monoid_tables(n):
    if n == 1:
        yield np.zeros((1, 1), dtype=np.int64)
        return
    free = [(i, j) for i in range(2, n) for j in range(i, n)]
    base = np.zeros((n, n), dtype=np.int64)
    base[1, :] = np.arange(n)
    base[:, 1] = np.arange(n)
    r = np.arange(n)
    for vals in itertools.product(range(n), repeat=len(free)):
        M = base.copy()
        for (i, j), v in zip(free, vals):
            M[i, j] = M[j, i] = v
        if (M[M[:, :, None], r[None, None, :]] == M[r[:, None, None], M[None, :, :]]).all():
            yield M


def ring_catalog(max_n=30):
    return [zmod(n) for n in range(1, max_n + 1)]


def ring_products():
    return [product_algebra(zmod(2), zmod(2)), product_algebra(zmod(2), zmod(3)),
            product_algebra(zmod(4), zmod(2))]


def monoid_catalog(max_size=5):
    """Exhaustive small monoids plus curated six-element examples."""
    six = [truncated_monomial(5), cyclic_with_zero(5),
           finite_monomial_monoid(["x", "y"], {"x": 2, "y": 3}, label="F1[x,y]/(x^2,y^3)"),
           finite_monomial_monoid(["x", "y"], {"x": 3, "y": 3}, [["x*y", "0"]], label="F1[x,y]/(x^3,y^3,xy)"),
           monoid_product(boolean_monoid(), cyclic_with_zero(2))]
    return list(small_monoids(max_size)) + [A for A in six if A.n <= 6]


def monomial_catalog(max_rank=3):
    names = ["x", "y", "z"]
    out = []
    for k in range(1, max_rank + 1):
        out.append(MonomialAlgebra(names[:k]))
    out.append(MonomialAlgebra(["x"], ["x"]))
    out.append(MonomialAlgebra(["x", "y"], ["y"]))
    return out


def lattice_catalog(max_size=6):
    return [lattice_algebra(L) for L in distributive_lattices(max_size)]


def named(name):
    """Look up a catalog algebra by a short name such as ``Z/6``, ``F1[x,y]``, ``trunc3``."""
    name = name.strip()
    if name.startswith("Z/"):
        return zmod(int(name[2:]))
    if name.startswith("F1[") and name.endswith("]"):
        body = name[3:-1]
        variables, inverted = [], []
        for part in body.split(","):
            part = part.strip()
            if part.endswith("^±") or part.endswith("^pm"):
                part = part.rsplit("^", 1)[0]
                inverted.append(part)
            variables.append(part)
        return MonomialAlgebra(variables, inverted)
    if name.startswith("trunc"):
        return truncated_monomial(int(name[5:]))
    if name == "F1":
        return boolean_monoid()
    raise KeyError(name)
