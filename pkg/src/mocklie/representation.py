"""Representations, dual representations, semidirect products and bilinear forms.

A representation of ``A`` on an ``m``-dimensional space ``V`` is a stack
``action`` of shape ``(n, m, m)`` with ``action[i] = ρ(e_i)``, subject to
``ρ(x•y) = -ρ(x)ρ(y) - ρ(y)ρ(x)``.  Dual spaces are always taken in the dual
basis, so ``ρ*(x)`` is the transpose of ``ρ(x)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import MockLieAlgebra
from .checks import AxiomReport, ReportBuilder
from .errors import FormNotAdmissible, InvalidRepresentation, PostconditionFailed, ShapeError
from .linalg import is_zero, qarray, qcombine, rank, zeros


def _as_action(a: MockLieAlgebra, action) -> np.ndarray:
    act = qarray(action)
    if act.ndim == 1 and act.shape[0] == 0:
        act = zeros(0, 0, 0)
    if act.ndim != 3 or act.shape[0] != a.dim or act.shape[1] != act.shape[2]:
        raise ShapeError(
            f"action must be {a.dim} square matrices of equal size, got shape {act.shape}")
    return act


def representation_residual(structure: np.ndarray, action: np.ndarray) -> np.ndarray:
    """``R[i, j] = ρ(e_i•e_j) + ρ(e_i)ρ(e_j) + ρ(e_j)ρ(e_i)``."""
    return qcombine((1, "ijk,kab->ijab", structure, action),
                    (1, "iab,jbc->ijac", action, action),
                    (1, "jab,ibc->ijac", action, action))


def validate_representation(a: MockLieAlgebra, action, verbose: bool = False) -> AxiomReport:
    act = _as_action(a, action)
    rb = ReportBuilder(verbose)
    rb.residuals("representation", representation_residual(a.structure, act), 2)
    return rb.build()


class Representation:
    """A validated representation of ``algebra`` on a ``module_dim`` space."""

    def __init__(self, algebra: MockLieAlgebra, action):
        act = _as_action(algebra, action)
        report = validate_representation(algebra, act)
        if not report.ok:
            at = tuple(i + 1 for i in report.first_violation.at)
            raise InvalidRepresentation(
                f"not a representation: anticommutator identity fails at {at}", report)
        act.flags.writeable = False
        self.algebra = algebra
        self.action = act

    @property
    def module_dim(self) -> int:
        return self.action.shape[1]

    def of(self, x) -> np.ndarray:
        """Matrix ``ρ(x)`` for a coordinate vector ``x`` of the algebra."""
        return np.tensordot(qarray(x), self.action, axes=1)

    def is_adjoint(self) -> bool:
        """True when this is the adjoint representation of its own algebra."""
        return self.action.shape == (self.algebra.dim,) * 3 and bool(
            np.all(self.action == self.algebra.left_multiplications()))

    def __eq__(self, other):
        if not isinstance(other, Representation):
            return NotImplemented
        return (self.algebra == other.algebra and self.action.shape == other.action.shape
                and bool(np.all(self.action == other.action)))

    def __repr__(self):
        return f"Representation(algebra_dim={self.algebra.dim}, module_dim={self.module_dim})"


def dual_representation(r: Representation) -> Representation:
    """``ρ*`` on ``V*``: ``⟨ρ*(x)u*, v⟩ = ⟨u*, ρ(x)v⟩``, i.e. transposed matrices."""
    return Representation(r.algebra, r.action.transpose(0, 2, 1))


def coadjoint_rep(a: MockLieAlgebra) -> Representation:
    return Representation(a, a.structure.copy())


def semidirect_structure(structure: np.ndarray, action: np.ndarray) -> np.ndarray:
    """Raw constants of ``A ⋉_ρ V`` on the basis ``(e_1..e_n, v_1..v_m)``."""
    n, m = structure.shape[0], action.shape[1]
    c = zeros(n + m, n + m, n + m)
    c[:n, :n, :n] = structure
    # e_i • v_a = ρ(e_i) v_a = Σ_b action[i, b, a] v_b
    block = action.transpose(0, 2, 1)
    c[:n, n:, n:] = block
    c[n:, :n, n:] = block.transpose(1, 0, 2)
    return c


def semidirect_product(r: Representation, module_names=None) -> MockLieAlgebra:
    """``A ⋉_ρ V`` with ``(x+u)•(y+v) = x•y + ρ(x)v + ρ(y)u``."""
    a = r.algebra
    if module_names is None:
        module_names = [f"v{i + 1}" for i in range(r.module_dim)]
    names = list(a.basis_names) + list(module_names)
    return MockLieAlgebra(semidirect_structure(a.structure, r.action), names)


@dataclass(frozen=True)
class BilinearForm:
    """``ω(e_i, e_j) = gram[i, j]`` on ``algebra``."""

    algebra: MockLieAlgebra
    gram: np.ndarray

    def __post_init__(self):
        g = qarray(self.gram)
        n = self.algebra.dim
        if g.shape != (n, n):
            raise ShapeError(f"gram matrix must be {n}×{n}, got {g.shape}")
        object.__setattr__(self, "gram", g)

    def __call__(self, x, y):
        return qarray(x) @ self.gram @ qarray(y)

    def to_dual_map(self) -> np.ndarray:
        """Matrix of ``φ: A → A*`` with ``⟨φ(x), y⟩ = ω(x, y)``."""
        return self.gram.T.copy()


def invariance_residual(structure: np.ndarray, gram: np.ndarray) -> np.ndarray:
    """``R[i, j, k] = ω(e_i•e_j, e_k) - ω(e_i, e_j•e_k)``."""
    return qcombine((1, "ija,ak->ijk", structure, gram), (-1, "jka,ia->ijk", structure, gram))


def check_invariant_form(a: MockLieAlgebra, w: BilinearForm, verbose: bool = False) -> AxiomReport:
    g = w.gram
    if g.shape != (a.dim, a.dim):
        raise ShapeError(f"gram matrix must be {a.dim}×{a.dim}")
    rb = ReportBuilder(verbose)
    rb.residuals("invariant", invariance_residual(a.structure, g), 3)
    rb.residuals("symmetric", g - g.T, 2)
    r = rank(g)
    rb.flag("nondegenerate", r == a.dim)
    rb.info["rank"] = r
    return rb.build()


def equivalence_from_form(a: MockLieAlgebra, w: BilinearForm) -> np.ndarray:
    """The isomorphism ``φ: (A, L) → (A*, L*)`` induced by an admissible form."""
    report = check_invariant_form(a, w)
    if not report.ok:
        bad = ", ".join(f"{k}=false" for k, v in report.flags.items() if not v)
        raise FormNotAdmissible(f"form is not admissible ({bad})", report)
    phi = w.to_dual_map()
    left = a.left_multiplications()
    for i in range(a.dim):
        # L*(e_i) φ = φ L(e_i)
        if not is_zero(left[i].T @ phi - phi @ left[i]):
            raise PostconditionFailed(f"φ does not intertwine L(e{i + 1})")
    return phi


def cyclic_residual(structure: np.ndarray, gram: np.ndarray) -> np.ndarray:
    """``R[i, j, k] = ω(e_i•e_j, e_k) + ω(e_j•e_k, e_i) + ω(e_k•e_i, e_j)``."""
    return qcombine((1, "ija,ak->ijk", structure, gram),
                    (1, "kia,aj->ijk", structure, gram),
                    (1, "jka,ai->ijk", structure, gram))


def check_symplectic_form(a: MockLieAlgebra, w: BilinearForm, verbose: bool = False) -> AxiomReport:
    g = w.gram
    if g.shape != (a.dim, a.dim):
        raise ShapeError(f"gram matrix must be {a.dim}×{a.dim}")
    rb = ReportBuilder(verbose)
    rb.residuals("skew", g + g.T, 2)
    r = rank(g)
    rb.flag("nondegenerate", r == a.dim)
    rb.residuals("cyclic", cyclic_residual(a.structure, g), 3)
    rb.info["rank"] = r
    return rb.build()
