"""Coboundary cobrackets and the mock-Lie Yang-Baxter equation.

An element ``r = Σ_{ij} r[i, j] e_i ⊗ e_j`` of ``A⊗A`` is also read as the map
``A* → A`` with ``r(f_j) = Σ_i r[i, j] e_i``, so its matrix is ``r`` itself.
The bracket ``[[r, r]] = r₁₂•r₁₃ + r₁₃•r₂₃ - r₁₂•r₂₃`` is computed straight
from structure-constant contractions; no unit is adjoined.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .algebra import MockLieAlgebra
from .bialgebra import Cobracket
from .checks import AxiomReport, ReportBuilder
from .errors import DimMismatch, FormNotAdmissible, NotSkew, ShapeError
from .linalg import cyclic, identity, is_zero, qarray, qcombine, qeinsum, rank, zeros
from .prelie import MockPreLieAlgebra, OOperator, check_O_operator, sub_adjacent
from .representation import (BilinearForm, Representation, check_invariant_form,
                             dual_representation, semidirect_product)


@dataclass(frozen=True)
class RTensor:
    algebra: MockLieAlgebra
    tensor: np.ndarray

    def __post_init__(self):
        t = qarray(self.tensor)
        n = self.algebra.dim
        if t.shape != (n, n):
            raise ShapeError(f"r must be {n}×{n}, got {t.shape}")
        t.flags.writeable = False
        object.__setattr__(self, "tensor", t)

    @property
    def is_skew(self) -> bool:
        return is_zero(self.tensor + self.tensor.T)

    @property
    def is_symmetric(self) -> bool:
        return is_zero(self.tensor - self.tensor.T)

    def __eq__(self, other):
        if not isinstance(other, RTensor):
            return NotImplemented
        return self.algebra == other.algebra and bool(np.all(self.tensor == other.tensor))

    def __hash__(self):
        return hash(tuple(self.tensor.flat))


def r_as_map(r: RTensor) -> tuple[np.ndarray, bool]:
    """Matrix of ``r: A* → A`` and whether it is invertible."""
    m = r.tensor.copy()
    return m, rank(m) == r.algebra.dim


def coboundary_cobracket(r: RTensor) -> Cobracket:
    """``Δ(x) = (L(x)⊗id - id⊗L(x)) r``."""
    a = r.algebra
    left = a.left_multiplications()
    images = qcombine((1, "iab,bc->iac", left, r.tensor), (-1, "ab,icb->iac", r.tensor, left))
    return Cobracket(a, images)


def e_delta(d: Cobracket) -> list[np.ndarray]:
    """``E_Δ(e_i) = (id + σ + σ²)((id⊗Δ)Δ(e_i))`` for every basis element."""
    out = []
    for i in range(d.algebra.dim):
        # (id⊗Δ)(Σ Δ(e_i)[a, b] e_a⊗e_b) = Σ Δ(e_i)[a, b] e_a ⊗ Δ(e_b)
        t = qeinsum("ab,bcd->acd", d.images[i], d.images)
        s = cyclic(t)
        out.append(t + s + cyclic(s))
    return out


def yb_bracket(r: RTensor) -> np.ndarray:
    """``[[r, r]]`` as a coefficient array over ``e_k ⊗ e_j ⊗ e_q``."""
    c = r.algebra.structure
    a = r.tensor
    # r₁₂•r₁₃ = Σ a_ij a_pq (e_i•e_p) ⊗ e_j ⊗ e_q
    # r₁₃•r₂₃ = Σ a_ij a_pq e_i ⊗ e_p ⊗ (e_j•e_q)
    # r₁₂•r₂₃ = Σ a_ij a_pq e_i ⊗ (e_j•e_p) ⊗ e_q
    return qcombine((1, "ipk,ij,pq->kjq", c, a, a),
                    (1, "jqk,ij,pq->ipk", c, a, a),
                    (-1, "jpk,ij,pq->ikq", c, a, a))


def q_action(a: MockLieAlgebra, x, t: np.ndarray) -> np.ndarray:
    """``Q(x) = L(x)⊗id⊗id + id⊗L(x)⊗id + id⊗id⊗L(x)`` applied to ``t``."""
    x = qarray(x)
    if x.shape != (a.dim,):
        raise DimMismatch(f"vector of length {x.shape} in dimension {a.dim}")
    lx = a.left(x)
    if t.shape != (a.dim,) * 3:
        raise DimMismatch(f"tensor of shape {t.shape} in dimension {a.dim}")
    return qcombine((1, "ua,abc->ubc", lx, t),
                    (1, "vb,abc->avc", lx, t),
                    (1, "wc,abc->abw", lx, t))


TRIANGULAR = "triangular"
QUASITRIANGULAR = "quasitriangular"
COBOUNDARY_ONLY = "coboundary-only"
NOT_ADMISSIBLE = "not-coboundary-admissible"


@dataclass(frozen=True)
class CoboundaryReport:
    cond_i: bool
    cond_ii: bool
    ybe: bool
    skew: bool
    classification: str
    bracket: np.ndarray

    @property
    def bialgebra(self) -> bool:
        return self.cond_i and self.cond_ii


def coboundary_axiom_report(r: RTensor, verbose: bool = False) -> AxiomReport:
    """Flags ``cond_i``, ``cond_ii`` and ``ybe`` with residual witnesses.

    ``cond_i`` is indexed by ``x = e_i`` with residual
    ``(L(x)⊗id - id⊗L(x))(r + τ(r))``; ``cond_ii`` by ``e_i`` with residual
    ``Q(e_i)[[r, r]]``; ``ybe`` carries the whole bracket as its residual.
    """
    a = r.algebra
    left = a.left_multiplications()
    sym = r.tensor + r.tensor.T
    rb = ReportBuilder(verbose)
    cond_i = qcombine((1, "iab,bc->iac", left, sym), (-1, "ab,icb->iac", sym, left))
    rb.residuals("cond_i", cond_i, 1)
    bracket = yb_bracket(r)
    if is_zero(bracket):
        rb.flag("cond_ii", True)
    else:
        basis = identity(a.dim)
        q = np.array([q_action(a, basis[i], bracket) for i in range(a.dim)], dtype=object)
        rb.residuals("cond_ii", q.reshape((a.dim,) + bracket.shape), 1)
    rb.flag("ybe", is_zero(bracket), residual=bracket)
    rb.info["skew"] = r.is_skew
    rb.info["bracket"] = bracket
    return rb.build()


def check_coboundary_conditions(r: RTensor) -> CoboundaryReport:
    """Evaluate both conditions for ``Δ_r`` to define a mock-Lie bialgebra.

    (i)  ``(L(x)⊗id - id⊗L(x))(r + τ(r)) = 0`` and (ii) ``Q(x)[[r, r]] = 0``
    for all basis ``x``.
    """
    report = coboundary_axiom_report(r)
    cond_i, cond_ii, ybe = report.cond_i, report.cond_ii, report.ybe
    skew = report.skew
    if not (cond_i and cond_ii):
        cls = NOT_ADMISSIBLE
    elif ybe and skew:
        cls = TRIANGULAR
    elif ybe:
        cls = QUASITRIANGULAR
    else:
        cls = COBOUNDARY_ONLY
    return CoboundaryReport(cond_i, cond_ii, ybe, skew, cls, report.bracket)


def operator_form_residual(a: MockLieAlgebra, m: np.ndarray) -> np.ndarray:
    """``R[j, q] = r(f_j)•r(f_q) - r(L*(r f_j) f_q + L*(r f_q) f_j)`` for map ``m``."""
    c = a.structure
    # (L*(r f_j) f_q)_u = Σ_p m[p, j] C[p, u, q]
    return qcombine((1, "pj,sq,psk->jqk", m, m, c),
                    (-1, "ku,pj,puq->jqk", m, m, c),
                    (-1, "ku,pq,puj->jqk", m, m, c))


def check_ybe_operator_form(r: RTensor, verbose: bool = False) -> AxiomReport:
    """Check ``r(ξ)•r(η) = r(L*(r(ξ))η + L*(r(η))ξ)`` on all dual basis pairs."""
    if not r.is_skew:
        raise NotSkew("operator form requires a skew-symmetric r")
    rb = ReportBuilder(verbose)
    rb.residuals("operator_form", operator_form_residual(r.algebra, r.tensor), 2)
    return rb.build()


@dataclass(frozen=True)
class RotaBaxterCorrespondence:
    ybe: bool
    rota_baxter: bool
    operator: np.ndarray

    @property
    def agree(self) -> bool:
        return self.ybe == self.rota_baxter


def rota_baxter_correspondence(r: RTensor, w: BilinearForm) -> RotaBaxterCorrespondence:
    """Compare ``[[r, r]] = 0`` with ``r∘φ`` being a Rota-Baxter operator."""
    from .algebra import adjoint_rep

    if not r.is_skew:
        raise NotSkew("the correspondence requires a skew-symmetric r")
    report = check_invariant_form(r.algebra, w)
    if not report.ok:
        bad = ", ".join(f"{k}=false" for k, v in report.flags.items() if not v)
        raise FormNotAdmissible(f"form is not admissible ({bad})", report)
    operator = r.tensor @ w.to_dual_map()
    rb = check_O_operator(adjoint_rep(r.algebra), operator)
    return RotaBaxterCorrespondence(is_zero(yb_bracket(r)), rb.ok, operator)


class Lift(NamedTuple):
    algebra: MockLieAlgebra
    r: RTensor
    bracket: np.ndarray


def lift_O_operator(rep: Representation | OOperator, t=None) -> Lift:
    """Embed ``T: V → A`` as ``r = T - τ(T)`` in ``A ⋉_{ρ*} V*``.

    Accepts a validated :class:`OOperator` or a representation with any map
    ``t``: ``[[r, r]]`` vanishes exactly when ``t`` is an O-operator.
    Basis order of the lift is ``(e_1..e_n, v_1*..v_m*)``.
    """
    if isinstance(rep, OOperator):
        rep, t = rep.rep, rep.map
    t = qarray(t)
    n, m = rep.algebra.dim, rep.module_dim
    if t.shape != (n, m):
        raise ShapeError(f"T must be {n}×{m}, got {t.shape}")
    hat = semidirect_product(dual_representation(rep), [f"v{i + 1}*" for i in range(m)])
    r = zeros(n + m, n + m)
    r[:n, n:] = t
    r[n:, :n] = -t.T
    r_tensor = RTensor(hat, r)
    return Lift(hat, r_tensor, yb_bracket(r_tensor))


def canonical_solution_from_prelie(p: MockPreLieAlgebra) -> Lift:
    """``r = Σ (e_i ⊗ e_i* - e_i* ⊗ e_i)`` in ``A^ac ⋉_{Θ*} (A^ac)*``."""
    _, theta = sub_adjacent(p)
    return lift_O_operator(theta, identity(p.dim))
