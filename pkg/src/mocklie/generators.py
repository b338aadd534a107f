"""Seeded generators of valid (and deliberately broken) test instances.

Random structure constants essentially never satisfy the Jacobi identity, so
algebras are drawn from 3-step graded families ``V1 ⊕ V2 ⊕ V3``: the product
``V1×V1 → V2`` is random and ``V1×V2 → V3`` is a random point of the linear
space cut out by the axiom, found with an exact nullspace.  An optional
unitriangular change of basis hides the grading.
"""

from __future__ import annotations

import random
from fractions import Fraction

import numpy as np

from .algebra import (MockLieAlgebra, adjoint_rep, change_basis, random_central_extension,
                      random_rational)
from .linalg import block_diag, identity, invert_matrix, nullspace, qarray, zeros
from .prelie import MockPreLieAlgebra
from .representation import Representation, coadjoint_rep


def _rng(seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def random_matrix(rows: int, cols: int, seed, bound: int = 2, density: float = 0.6) -> np.ndarray:
    rng = _rng(seed)
    m = zeros(rows, cols)
    for idx in np.ndindex(rows, cols):
        if rng.random() < density:
            m[idx] = random_rational(rng, bound)
    return m


def random_skew(n: int, seed, bound: int = 2) -> np.ndarray:
    m = random_matrix(n, n, seed, bound)
    return m - m.T


def unitriangular(n: int, seed, bound: int = 1) -> np.ndarray:
    """Random invertible matrix: a permuted unit lower-triangular matrix."""
    rng = _rng(seed)
    p = identity(n)
    for i in range(n):
        for j in range(i):
            p[i, j] = Fraction(rng.randint(-bound, bound))
    perm = list(range(n))
    rng.shuffle(perm)
    return p[perm]


def _solve_point(rows: list[list[Fraction]], unknowns: int, rng: random.Random) -> list[Fraction]:
    if not rows:
        return [Fraction(rng.randint(-2, 2)) for _ in range(unknowns)]
    basis = nullspace(qarray(rows))
    point = [Fraction(0)] * unknowns
    for v in basis:
        coeff = rng.randint(-2, 2)
        point = [p + coeff * x for p, x in zip(point, v)]
    return point


def random_graded_algebra(d1: int, d2: int, d3: int, seed, scramble: bool = True) -> MockLieAlgebra:
    """Graded mock-Lie algebra with nonzero triple products in general."""
    rng = _rng(seed)
    n = d1 + d2 + d3
    v1, v2, v3 = range(d1), range(d1, d1 + d2), range(d1 + d2, n)
    c = zeros(n, n, n)
    for i in v1:
        for j in v1:
            if j < i:
                continue
            for k in v2:
                q = random_rational(rng)
                c[i, j, k] = c[j, i, k] = q
    unknown = {key: idx for idx, key in enumerate(
        (x, u, w) for x in v1 for u in v2 for w in v3)}
    rows = []
    # Jacobi is symmetric in x, y, z: one equation per multiset and output
    for x in v1:
        for y in v1:
            for z in v1:
                if not x <= y <= z:
                    continue
                for w in v3:
                    row = [Fraction(0)] * len(unknown)
                    for s, (p, q) in ((x, (y, z)), (y, (z, x)), (z, (x, y))):
                        for u in v2:
                            if c[p, q, u] != 0:
                                row[unknown[(s, u, w)]] += c[p, q, u]
                    rows.append(row)
    point = _solve_point(rows, len(unknown), rng)
    for (x, u, w), idx in unknown.items():
        c[x, u, w] = c[u, x, w] = point[idx]
    if scramble:
        c = change_basis(c, unitriangular(n, rng))
    return MockLieAlgebra(c)


def random_prelie(d1: int, d2: int, d3: int, seed, scramble: bool = True) -> MockPreLieAlgebra:
    """Graded mock-pre-Lie algebra: ``V1·V1 → V2`` random, ``V1·V2, V2·V1 → V3`` solved."""
    rng = _rng(seed)
    n = d1 + d2 + d3
    v1, v2, v3 = range(d1), range(d1, d1 + d2), range(d1 + d2, n)
    d = zeros(n, n, n)
    for i in v1:
        for j in v1:
            for k in v2:
                d[i, j, k] = random_rational(rng)
    unknown = {}
    for x in v1:
        for u in v2:
            for w in v3:
                unknown[("l", x, u, w)] = len(unknown)   # e_x · e_u
                unknown[("r", u, x, w)] = len(unknown)   # e_u · e_x
    rows = []
    # Aass(x,y,z) + Aass(y,x,z) = 0 with Aass(x,y,z) = (x·y)·z + x·(y·z)
    for x in v1:
        for y in v1:
            for z in v1:
                for w in v3:
                    row = [Fraction(0)] * len(unknown)
                    for a, b in ((x, y), (y, x)):
                        for u in v2:
                            if d[a, b, u] != 0:
                                row[unknown[("r", u, z, w)]] += d[a, b, u]
                            if d[b, z, u] != 0:
                                row[unknown[("l", a, u, w)]] += d[b, z, u]
                    rows.append(row)
    point = _solve_point(rows, len(unknown), rng)
    for key, idx in unknown.items():
        _, p, q, w = key
        d[p, q, w] = point[idx]
    if scramble:
        d = change_basis(d, unitriangular(n, rng))
    return MockPreLieAlgebra(d)


def random_algebra(seed, max_dim: int = 5) -> MockLieAlgebra:
    """Draw from every family: graded, central extension, abelian, semidirect."""
    rng = _rng(seed)
    kind = rng.choice(["graded", "graded", "central", "semidirect", "abelian"])
    if kind == "graded":
        dims = [(1, 1, 1), (1, 2, 1), (2, 3, 1), (1, 3, 1), (2, 2, 1), (1, 1, 2)]
        dims = [t for t in dims if sum(t) <= max_dim] or [(1, 1, 1)]
        return random_graded_algebra(*rng.choice(dims), rng)
    if kind == "central":
        dv = rng.randint(0, min(3, max_dim))
        return random_central_extension(dv, rng.randint(0, max_dim - dv), rng.randrange(10**6))
    if kind == "abelian":
        return MockLieAlgebra.abelian(rng.randint(0, max_dim))
    base = random_graded_algebra(1, 1, 0, rng) if max_dim >= 4 else MockLieAlgebra.abelian(1)
    rep = coadjoint_rep(base) if rng.random() < 0.5 else adjoint_rep(base)
    from .representation import semidirect_product
    return MockLieAlgebra(change_basis(semidirect_product(rep).structure,
                                       unitriangular(2 * base.dim, rng)))


def random_representation(a: MockLieAlgebra, seed) -> Representation:
    """Conjugated direct sum of adjoint, coadjoint and trivial pieces."""
    rng = _rng(seed)
    pieces = []
    for _ in range(rng.randint(1, 2)):
        kind = rng.choice(["adjoint", "coadjoint", "trivial"])
        if kind == "adjoint":
            pieces.append(a.left_multiplications())
        elif kind == "coadjoint":
            pieces.append(a.structure.copy())
        else:
            k = rng.randint(1, 2)
            pieces.append(zeros(a.dim, k, k))
    action = np.array([block_diag(*[p[i] for p in pieces]) for i in range(a.dim)], dtype=object)
    if a.dim == 0:
        m = sum(p.shape[1] for p in pieces)
        action = zeros(0, m, m)
    m = action.shape[1]
    p = unitriangular(m, rng)
    p_inv = invert_matrix(p)
    action = np.array([p @ action[i] @ p_inv for i in range(a.dim)], dtype=object).reshape(
        a.dim, m, m)
    return Representation(a, action)


def corrupt(array: np.ndarray, seed, symmetric_axes: tuple[int, int] | None = None) -> np.ndarray:
    """Copy of ``array`` with one entry shifted by a nonzero rational."""
    rng = _rng(seed)
    out = qarray(array)
    idx = tuple(rng.randrange(s) for s in out.shape)
    delta = Fraction(rng.choice([-2, -1, 1, 2]), rng.choice([1, 2]))
    out[idx] += delta
    if symmetric_axes is not None:
        a, b = symmetric_axes
        twin = list(idx)
        twin[a], twin[b] = twin[b], twin[a]
        twin = tuple(twin)
        if twin != idx:
            out[twin] += delta
    return out
