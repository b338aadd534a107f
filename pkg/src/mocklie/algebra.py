"""Mock-Lie algebras given by structure constants.

A structure array ``C`` of shape ``(n, n, n)`` encodes
``e_i • e_j = Σ_k C[i, j, k] e_k``.  A mock-Lie algebra is commutative and
satisfies the Jacobi identity ``x•(y•z) + y•(z•x) + z•(x•y) = 0``.
"""

from __future__ import annotations

import random
from typing import Sequence

import numpy as np

from .checks import AxiomReport, ReportBuilder
from .errors import DimMismatch, InvalidAlgebra, NotAntiAssociative, ShapeError
from .linalg import invert_matrix, is_zero, qarray, qcombine, qeinsum, to_fraction, zeros


def _as_structure(structure) -> np.ndarray:
    c = structure.structure if isinstance(structure, MockLieAlgebra) else qarray(structure)
    if c.ndim != 3 or not (c.shape[0] == c.shape[1] == c.shape[2]):
        raise ShapeError(f"structure constants must be n×n×n, got shape {c.shape}")
    return c


def jacobiator(c: np.ndarray) -> np.ndarray:
    """``J[i, j, k] = e_i•(e_j•e_k) + e_j•(e_k•e_i) + e_k•(e_i•e_j)``."""
    return qcombine((1, "jka,iam->ijkm", c, c),
                    (1, "kia,jam->ijkm", c, c),
                    (1, "ija,kam->ijkm", c, c))


def validate_mock_lie(structure, verbose: bool = False) -> AxiomReport:
    """Check commutativity and the Jacobi identity on all basis tuples."""
    c = _as_structure(structure)
    rb = ReportBuilder(verbose)
    rb.residuals("commutative", c - c.transpose(1, 0, 2), 2)
    rb.residuals("jacobi", jacobiator(c), 3)
    return rb.build()


class MockLieAlgebra:
    """A validated finite-dimensional mock-Lie algebra over ℚ.

    Construction raises :class:`InvalidAlgebra` unless both axioms hold, so an
    instance is always a genuine mock-Lie algebra.  Instances are treated as
    immutable; equality compares structure constants.
    """

    def __init__(self, structure, basis_names: Sequence[str] | None = None):
        c = _as_structure(structure)
        report = validate_mock_lie(c)
        if not report.ok:
            v = report.first_violation
            raise InvalidAlgebra(
                f"not a mock-Lie algebra: {v.axiom} fails at basis tuple "
                f"{tuple(i + 1 for i in v.at)}", report)
        c.flags.writeable = False
        self.structure = c
        n = c.shape[0]
        if basis_names is None:
            basis_names = [f"e{i + 1}" for i in range(n)]
        if len(basis_names) != n:
            raise ShapeError(f"{len(basis_names)} basis names for dimension {n}")
        self.basis_names = tuple(basis_names)

    @classmethod
    def from_products(cls, dim: int, products: dict, basis_names=None) -> "MockLieAlgebra":
        """Build from ``{(i, j): {k: c}}`` with 0-based indices.

        Each unordered pair is listed once; the symmetric entry is filled in.
        """
        c = zeros(dim, dim, dim)
        for (i, j), image in products.items():
            for k, coeff in image.items():
                c[i, j, k] = to_fraction(coeff)
                c[j, i, k] = to_fraction(coeff)
        return cls(c, basis_names)

    @classmethod
    def abelian(cls, dim: int) -> "MockLieAlgebra":
        return cls(zeros(dim, dim, dim))

    @property
    def dim(self) -> int:
        return self.structure.shape[0]

    def __eq__(self, other):
        if not isinstance(other, MockLieAlgebra):
            return NotImplemented
        return self.structure.shape == other.structure.shape and bool(
            np.all(self.structure == other.structure))

    def __hash__(self):
        return hash(tuple(self.structure.flat))

    def __repr__(self):
        nnz = sum(1 for x in self.structure.flat if x != 0)
        return f"MockLieAlgebra(dim={self.dim}, nonzero_constants={nnz})"

    def multiply(self, x, y) -> np.ndarray:
        return multiply(self, x, y)

    def left_multiplications(self) -> np.ndarray:
        """Stack of matrices ``L(e_i)`` with ``L(e_i)[k, j] = C[i, j, k]``."""
        return self.structure.transpose(0, 2, 1).copy()

    def left(self, x) -> np.ndarray:
        """Matrix of ``L(x)`` for an arbitrary vector ``x``."""
        x = qarray(x)
        if x.shape != (self.dim,):
            raise DimMismatch(f"vector of length {x.shape} in dimension {self.dim}")
        return qeinsum("i,ijk->kj", x, self.structure)


def multiply(a: MockLieAlgebra, x, y) -> np.ndarray:
    """Bilinear product ``x • y`` of coordinate vectors."""
    x, y = qarray(x), qarray(y)
    if x.shape != (a.dim,) or y.shape != (a.dim,):
        raise DimMismatch(f"vectors of shape {x.shape}, {y.shape} in dimension {a.dim}")
    return qeinsum("i,j,ijk->k", x, y, a.structure)


def adjoint_rep(a: MockLieAlgebra):
    """The adjoint representation ``x ↦ L(x)`` on ``A`` itself."""
    from .representation import Representation
    return Representation(a, a.left_multiplications())


def anti_associator(star: np.ndarray) -> np.ndarray:
    """``Aass[i, j, k] = (e_i⋆e_j)⋆e_k + e_i⋆(e_j⋆e_k)``."""
    return qcombine((1, "ija,akm->ijkm", star, star), (1, "jka,iam->ijkm", star, star))


def from_anti_associative(star) -> MockLieAlgebra:
    """Symmetrize an anti-associative product: ``x•y = x⋆y + y⋆x``."""
    s = _as_structure(star)
    rb = ReportBuilder()
    if not rb.residuals("anti_associative", anti_associator(s), 3):
        report = rb.build()
        at = tuple(i + 1 for i in report.first_violation.at)
        raise NotAntiAssociative(f"anti-associator nonzero at basis triple {at}", report)
    return MockLieAlgebra(s + s.transpose(1, 0, 2))


def change_basis(structure, p: np.ndarray) -> np.ndarray:
    """Structure constants in the basis ``b_i = Σ_a p[a, i] e_a``."""
    p = qarray(p)
    return qeinsum("ai,bj,abc,kc->ijk", p, p, qarray(structure), invert_matrix(p))


def random_rational(rng: random.Random, bound: int = 3, denominators=(1, 1, 1, 2, 3),
                    nonzero: bool = False):
    from fractions import Fraction
    numerators = [k for k in range(-bound, bound + 1) if k or not nonzero]
    return Fraction(rng.choice(numerators), rng.choice(denominators))


def random_central_extension(dim_v: int, dim_w: int, seed: int) -> MockLieAlgebra:
    """Random square-zero central extension on ``V ⊕ W``.

    Products ``V × V → W`` come from a seeded random symmetric bilinear map
    with nonzero coefficients and every other product is zero.  Since all
    products land in the annihilating subspace ``W``, every triple product
    vanishes and Jacobi holds.
    """
    if dim_v < 0 or dim_w < 0:
        raise ValueError("dimensions must be non-negative")
    rng = random.Random(seed)
    n = dim_v + dim_w
    c = zeros(n, n, n)
    for i in range(dim_v):
        for j in range(i, dim_v):
            for k in range(dim_v, n):
                q = random_rational(rng, nonzero=True)
                c[i, j, k] = q
                c[j, i, k] = q
    return MockLieAlgebra(c)


def is_abelian(a: MockLieAlgebra) -> bool:
    return is_zero(a.structure)
