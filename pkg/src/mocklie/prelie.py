"""Mock-pre-Lie algebras, O-operators and Rota-Baxter operators.

A mock-pre-Lie product ``e_i · e_j = Σ_k D[i, j, k] e_k`` need not be
commutative; its anti-associator ``Aass(x, y, z) = (x·y)·z + x·(y·z)`` must be
antisymmetric in ``x`` and ``y``.
"""

from __future__ import annotations

import numpy as np

from .algebra import MockLieAlgebra, anti_associator, adjoint_rep
from .checks import AxiomReport, ReportBuilder
from .errors import (NotMockPreLie, NotOOperator, NotSymplectic,
                     PostconditionFailed, ShapeError)
from .linalg import identity, invert_matrix, is_zero, qarray, qcombine, qeinsum
from .representation import BilinearForm, Representation, check_symplectic_form


def _as_structure(structure) -> np.ndarray:
    d = structure.structure if isinstance(structure, MockPreLieAlgebra) else qarray(structure)
    if d.ndim != 3 or not (d.shape[0] == d.shape[1] == d.shape[2]):
        raise ShapeError(f"structure constants must be n×n×n, got shape {d.shape}")
    return d


def validate_mock_pre_lie(structure, verbose: bool = False) -> AxiomReport:
    d = _as_structure(structure)
    aass = anti_associator(d)
    rb = ReportBuilder(verbose)
    rb.residuals("left_symmetric_aass", aass + aass.transpose(1, 0, 2, 3), 3)
    return rb.build()


class MockPreLieAlgebra:
    """A validated mock-pre-Lie algebra; construction raises :class:`NotMockPreLie`."""

    def __init__(self, structure, basis_names=None):
        d = _as_structure(structure)
        report = validate_mock_pre_lie(d)
        if not report.ok:
            at = tuple(i + 1 for i in report.first_violation.at)
            raise NotMockPreLie(f"Aass(x,y,z) = -Aass(y,x,z) fails at {at}", report)
        d.flags.writeable = False
        self.structure = d
        n = d.shape[0]
        self.basis_names = tuple(basis_names or [f"e{i + 1}" for i in range(n)])

    @property
    def dim(self) -> int:
        return self.structure.shape[0]

    def __eq__(self, other):
        if not isinstance(other, MockPreLieAlgebra):
            return NotImplemented
        return self.structure.shape == other.structure.shape and bool(
            np.all(self.structure == other.structure))

    def __hash__(self):
        return hash(tuple(self.structure.flat))

    def __repr__(self):
        return f"MockPreLieAlgebra(dim={self.dim})"


def sub_adjacent(p: MockPreLieAlgebra) -> tuple[MockLieAlgebra, Representation]:
    """``A^ac`` with ``x⋆y = x·y + y·x`` and its representation ``Θ(x)y = x·y``."""
    d = p.structure
    algebra = MockLieAlgebra(d + d.transpose(1, 0, 2), p.basis_names)
    theta = Representation(algebra, d.transpose(0, 2, 1))
    return algebra, theta


def o_operator_residual(rep: Representation, t: np.ndarray) -> np.ndarray:
    """``R[a, b] = T(v_a)•T(v_b) - T(ρ(T v_a)v_b + ρ(T v_b)v_a)``."""
    c = rep.algebra.structure
    # (ρ(T v_a) v_b)_c = Σ_p t[p, a] ρ[p, c, b]
    return qcombine((1, "pa,qb,pqk->abk", t, t, c),
                    (-1, "kc,pa,pcb->abk", t, t, rep.action),
                    (-1, "kc,pb,pca->abk", t, t, rep.action))


def _as_map(rep: Representation, t) -> np.ndarray:
    t = qarray(t)
    if t.shape != (rep.algebra.dim, rep.module_dim):
        raise ShapeError(
            f"O-operator must be a {rep.algebra.dim}×{rep.module_dim} matrix, got {t.shape}")
    return t


def check_O_operator(rep: Representation, t, verbose: bool = False) -> AxiomReport:
    """Check ``T(u)•T(v) = T(ρ(Tu)v + ρ(Tv)u)`` on all basis pairs of ``V``.

    ``info['rota_baxter']`` is set when ``rep`` is the adjoint representation
    and the identity holds.
    """
    t = _as_map(rep, t)
    rb = ReportBuilder(verbose)
    ok = rb.residuals("o_operator", o_operator_residual(rep, t), 2)
    adjoint = rep.is_adjoint()
    rb.info["adjoint"] = adjoint
    rb.info["rota_baxter"] = adjoint and ok
    return rb.build()


class OOperator:
    """A validated O-operator ``T: V → A`` associated to ``rep``."""

    def __init__(self, rep: Representation, t):
        t = _as_map(rep, t)
        report = check_O_operator(rep, t)
        if not report.ok:
            at = tuple(i + 1 for i in report.first_violation.at)
            raise NotOOperator(f"O-operator identity fails at module basis pair {at}", report)
        t.flags.writeable = False
        self.rep = rep
        self.map = t

    def __repr__(self):
        return f"OOperator({self.map.shape[0]}×{self.map.shape[1]})"


def rota_baxter(a: MockLieAlgebra, t) -> OOperator:
    return OOperator(adjoint_rep(a), t)


def _o_operator(op, t=None) -> OOperator:
    if isinstance(op, OOperator):
        return op
    return OOperator(op, t)


def prelie_from_O_operator(op: OOperator) -> MockPreLieAlgebra:
    """``u·v = ρ(Tu)v`` on the module space."""
    op = _o_operator(op)
    acts = qeinsum("pa,pij->aij", op.map, op.rep.action)
    # D[a, b, k] = (ρ(T v_a) v_b)_k
    return MockPreLieAlgebra(acts.transpose(0, 2, 1))


def compatible_prelie_from_invertible_O(op: OOperator) -> MockPreLieAlgebra:
    """``x·y = T(ρ(x)T⁻¹(y))`` on ``A``; its symmetrization is ``•``."""
    op = _o_operator(op)
    t = op.map
    t_inv = invert_matrix(t)
    conj = qeinsum("ka,iab,bj->ikj", t, op.rep.action, t_inv)
    d = conj.transpose(0, 2, 1)
    p = MockPreLieAlgebra(d, op.rep.algebra.basis_names)
    if not is_zero(d + d.transpose(1, 0, 2) - op.rep.algebra.structure):
        raise PostconditionFailed("symmetrized product differs from the algebra product")
    return p


def prelie_from_symplectic(a: MockLieAlgebra, w: BilinearForm) -> MockPreLieAlgebra:
    """Compatible pre-Lie product with ``ω(x·y, z) = ω(y, x•z)``.

    Uses ``x·y = T⁻¹(L*(x)T(y))`` where ``⟨T(x), y⟩ = ω(x, y)``.
    """
    report = check_symplectic_form(a, w)
    if not report.ok:
        bad = ", ".join(k for k, v in report.flags.items() if not v)
        raise NotSymplectic(f"form is not symplectic ({bad} fails)", report)
    t = w.to_dual_map()
    t_inv = invert_matrix(t)
    left = a.left_multiplications()
    conj = qeinsum("ka,iba,bj->ikj", t_inv, left, t)
    d = conj.transpose(0, 2, 1)
    g = w.gram
    # ω(e_i·e_j, e_k) = ω(e_j, e_i•e_k)
    residual = (qeinsum("ija,ak->ijk", d, g)
                - qeinsum("ika,ja->ijk", a.structure, g))
    if not is_zero(residual):
        raise PostconditionFailed("ω(x·y, z) = ω(y, x•z) does not hold")
    p = MockPreLieAlgebra(d, a.basis_names)
    if not is_zero(d + d.transpose(1, 0, 2) - a.structure):
        raise PostconditionFailed("symmetrized product differs from the algebra product")
    return p


def identity_o_operator(p: MockPreLieAlgebra) -> OOperator:
    """``id`` as an O-operator of ``A^ac`` associated to ``(A, Θ)``."""
    _, theta = sub_adjacent(p)
    return OOperator(theta, identity(p.dim))
