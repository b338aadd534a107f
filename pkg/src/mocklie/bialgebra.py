"""Cobrackets, mock-Lie bialgebras, matched pairs, Manin triples and the double.

A cobracket ``Δ: A → A⊗A`` is stored as ``images`` of shape ``(n, n, n)``
with ``images[i] = Δ(e_i)``.  The dual space ``A*`` always uses the dual basis
``f_1..f_n``; the dual product is ``f_j ⋄ f_k = Σ_i Δ(e_i)[j, k] f_i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .algebra import MockLieAlgebra, jacobiator, validate_mock_lie
from .checks import AxiomReport, ReportBuilder
from .errors import NotBialgebra, NotMatchedPair, PostconditionFailed, ShapeError
from .linalg import identity, is_zero, qarray, qcombine, rank, zeros
from .representation import (invariance_residual, representation_residual,
                             semidirect_structure)


@dataclass(frozen=True)
class Cobracket:
    algebra: MockLieAlgebra
    images: np.ndarray

    def __post_init__(self):
        imgs = qarray(self.images)
        n = self.algebra.dim
        if imgs.shape != (n, n, n):
            raise ShapeError(f"cobracket images must have shape {(n, n, n)}, got {imgs.shape}")
        imgs.flags.writeable = False
        object.__setattr__(self, "images", imgs)

    @classmethod
    def zero(cls, algebra: MockLieAlgebra) -> "Cobracket":
        n = algebra.dim
        return cls(algebra, zeros(n, n, n))

    def __call__(self, x) -> np.ndarray:
        return np.tensordot(qarray(x), self.images, axes=1)

    def __eq__(self, other):
        if not isinstance(other, Cobracket):
            return NotImplemented
        return self.algebra == other.algebra and bool(np.all(self.images == other.images))

    def __hash__(self):
        return hash(tuple(self.images.flat))


def tensor_action(left: np.ndarray, t: np.ndarray) -> np.ndarray:
    """``L(x)`` acting on ``A⊗A`` by ``(L(x)⊗id + id⊗L(x))``."""
    return left @ t + t @ left.T


def dual_product_from_cobracket(d: Cobracket) -> np.ndarray:
    """Raw constants of ``⋄`` on ``A*``: ``D[j, k, i] = Δ(e_i)[j, k]``."""
    dual = d.images.transpose(1, 2, 0).copy()
    # ⟨f_j ⋄ f_k, e_i⟩ = ⟨f_j ⊗ f_k, Δ(e_i)⟩ for every triple
    for i, j, k in np.ndindex(dual.shape):
        if dual[j, k, i] != d.images[i, j, k]:
            raise PostconditionFailed("dual product is not adjoint to the cobracket")
    return dual


def cocycle_residual(structure: np.ndarray, images: np.ndarray) -> np.ndarray:
    """``d¹Δ(e_i, e_j) = Δ(e_i•e_j) + L(e_i)Δ(e_j) + L(e_j)Δ(e_i)``."""
    # (L(e_i)Δ(e_j))[a, b] = Σ_c C[i, c, a] Δ(e_j)[c, b], likewise on the right
    return qcombine((1, "ijk,kab->ijab", structure, images),
                    (1, "ica,jcb->ijab", structure, images),
                    (1, "jac,icb->ijab", images, structure),
                    (1, "jca,icb->ijab", structure, images),
                    (1, "iac,jcb->ijab", images, structure))


def check_cocycle_compatibility(d: Cobracket, verbose: bool = False) -> AxiomReport:
    """``Δ(x•y) = -(L(x)⊗id + id⊗L(x))Δ(y) - (L(y)⊗id + id⊗L(y))Δ(x)``."""
    rb = ReportBuilder(verbose)
    rb.residuals("compatible", cocycle_residual(d.algebra.structure, d.images), 2)
    return rb.build()


def validate_bialgebra(d: Cobracket, verbose: bool = False) -> AxiomReport:
    rb = ReportBuilder(verbose)
    rb.residuals("symmetric", d.images - d.images.transpose(0, 2, 1), 1)
    rb.residuals("dual_jacobi", jacobiator(dual_product_from_cobracket(d)), 3)
    rb.residuals("compatible", cocycle_residual(d.algebra.structure, d.images), 2)
    return rb.build()


def dual_algebra(d: Cobracket) -> MockLieAlgebra:
    """``(A*, ⋄)`` as a validated algebra (raises if ``Δ`` is not a bialgebra dual)."""
    names = [f"f{i + 1}" for i in range(d.algebra.dim)]
    return MockLieAlgebra(dual_product_from_cobracket(d), names)


def dual_cobracket(d: Cobracket) -> Cobracket:
    """``γ: A* → A*⊗A*`` whose dual product is ``•``: ``γ(f_k)[i, j] = C[i, j, k]``."""
    return Cobracket(dual_algebra(d), d.algebra.structure.transpose(2, 0, 1))


# -- matched pairs ---------------------------------------------------------

@dataclass(frozen=True)
class MatchedPairData:
    """Candidate matched pair ``(A, H; ρ, μ)``.

    The algebras may be validated :class:`MockLieAlgebra` objects or raw
    structure arrays; ``rho[i] = ρ(e_i) ∈ End(H)`` and ``mu[a] = μ(h_a) ∈ End(A)``.
    """

    algebra_a: object
    algebra_h: object
    rho: np.ndarray
    mu: np.ndarray

    def __post_init__(self):
        ca, ch = _structure(self.algebra_a), _structure(self.algebra_h)
        rho, mu = qarray(self.rho), qarray(self.mu)
        n, m = ca.shape[0], ch.shape[0]
        if rho.shape != (n, m, m) or mu.shape != (m, n, n):
            raise ShapeError(
                f"rho must be {(n, m, m)} and mu {(m, n, n)}, got {rho.shape}, {mu.shape}")
        object.__setattr__(self, "rho", rho)
        object.__setattr__(self, "mu", mu)

    @property
    def structure_a(self) -> np.ndarray:
        return _structure(self.algebra_a)

    @property
    def structure_h(self) -> np.ndarray:
        return _structure(self.algebra_h)


def _structure(x) -> np.ndarray:
    if isinstance(x, MockLieAlgebra):
        return x.structure
    c = qarray(x)
    if c.ndim != 3 or not (c.shape[0] == c.shape[1] == c.shape[2]):
        raise ShapeError(f"structure constants must be n×n×n, got shape {c.shape}")
    return c


def _compat_residual(c_a, c_h, rho, mu) -> np.ndarray:
    """Residual of ``ρ(x)(a⋄b) + ρ(x)a⋄b + a⋄ρ(x)b + ρ(μ(a)x)b + ρ(μ(b)x)a``.

    Indexed ``[x, a, b]`` over basis elements, valued in ``H``.  Swapping the
    roles of the two algebras gives the second compatibility condition.
    """
    # rho[i] acts on H: (ρ(e_i) h_a)_c = rho[i, c, a]
    prod_h = c_h                                     # h_a ⋄ h_b = Σ_c c_h[a, b, c] h_c
    rx_a = rho.transpose(0, 2, 1)                    # rx_a[i, a, :] = ρ(e_i) h_a
    # μ(h_a) e_i = Σ_p mu[a, p, i] e_p ; ρ(μ(a)x) b = Σ_p mu[a, p, i] ρ(e_p) h_b
    return qcombine((1, "abc,idc->iabd", prod_h, rho),     # ρ(x)(a⋄b)
                    (1, "iac,cbd->iabd", rx_a, prod_h),    # (ρ(x)a) ⋄ b
                    (1, "ibc,acd->iabd", rx_a, prod_h),    # a ⋄ (ρ(x)b)
                    (1, "api,pdb->iabd", mu, rho),
                    (1, "bpi,pda->iabd", mu, rho))


def check_matched_pair(m: MatchedPairData, verbose: bool = False) -> AxiomReport:
    """All conditions for ``(A ⊕ H, ∘)`` to be mock-Lie.

    Flags ``a_mock_lie`` / ``h_mock_lie`` / ``rho_rep`` / ``mu_rep`` check the
    hypotheses; ``compat_rho`` and ``compat_mu`` are the two compatibility
    identities (the first valued in ``H``, the second in ``A``).
    """
    ca, ch = m.structure_a, m.structure_h
    rb = ReportBuilder(verbose)
    for name, c in (("a_mock_lie", ca), ("h_mock_lie", ch)):
        sub = validate_mock_lie(c)
        rb.flag(name, sub.ok, *((sub.first_violation.at, sub.first_violation.residual)
                                if not sub.ok else ()))
    rb.residuals("rho_rep", representation_residual(ca, m.rho), 2)
    rb.residuals("mu_rep", representation_residual(ch, m.mu), 2)
    rb.residuals("compat_rho", _compat_residual(ca, ch, m.rho, m.mu), 3)
    rb.residuals("compat_mu", _compat_residual(ch, ca, m.mu, m.rho), 3)
    return rb.build()


def bicrossed_structure(m: MatchedPairData) -> np.ndarray:
    """Raw constants of ``(x+a)∘(y+b) = x•y + μ(b)x + μ(a)y + a⋄b + ρ(y)a + ρ(x)b``."""
    ca, ch = m.structure_a, m.structure_h
    n, k = ca.shape[0], ch.shape[0]
    c = semidirect_structure(ca, m.rho)
    c[n:, n:, n:] = ch
    # e_i ∘ h_a has A-component μ(h_a) e_i = Σ_p mu[a, p, i] e_p
    block = m.mu.transpose(2, 0, 1)
    c[:n, n:, :n] = block
    c[n:, :n, :n] = block.transpose(1, 0, 2)
    assert c.shape == (n + k,) * 3
    return c


def bicrossed_product(m: MatchedPairData, names: Sequence[str] | None = None) -> MockLieAlgebra:
    report = check_matched_pair(m)
    if not report.ok:
        bad = ", ".join(k for k, v in report.flags.items() if not v)
        raise NotMatchedPair(f"not a matched pair ({bad} fails)", report)
    return MockLieAlgebra(bicrossed_structure(m), names)


def matched_pair_of_cobracket(d: Cobracket) -> MatchedPairData:
    """``(A, A*; L*, 𝓛*)`` with ``A*`` carrying the (possibly invalid) dual product."""
    dual = dual_product_from_cobracket(d)
    # coadjoint actions are transposes of left multiplications: L*(e_i) = C[i]
    return MatchedPairData(d.algebra, dual, d.algebra.structure.copy(), dual.copy())


# -- Manin triples ---------------------------------------------------------

@dataclass(frozen=True)
class ManinTripleData:
    """Candidate Manin triple split along basis indices (0-based)."""

    total: object
    plus_basis: tuple[int, ...]
    minus_basis: tuple[int, ...]
    form: np.ndarray

    def __post_init__(self):
        c = _structure(self.total)
        g = qarray(self.form)
        if g.shape != (c.shape[0],) * 2:
            raise ShapeError(f"form must be {c.shape[0]}×{c.shape[0]}, got {g.shape}")
        object.__setattr__(self, "form", g)
        object.__setattr__(self, "plus_basis", tuple(self.plus_basis))
        object.__setattr__(self, "minus_basis", tuple(self.minus_basis))

    @property
    def structure(self) -> np.ndarray:
        return _structure(self.total)


def standard_form(n: int) -> np.ndarray:
    """Gram matrix of ``ω_d(x+ξ, y+η) = ⟨x, η⟩ + ⟨ξ, y⟩`` on ``A ⊕ A*``."""
    g = zeros(2 * n, 2 * n)
    g[:n, n:] = identity(n)
    g[n:, :n] = identity(n)
    return g


def standard_manin_triple(d: Cobracket) -> ManinTripleData:
    n = d.algebra.dim
    total = bicrossed_structure(matched_pair_of_cobracket(d))
    return ManinTripleData(total, tuple(range(n)), tuple(range(n, 2 * n)), standard_form(n))


def _closure_residual(c: np.ndarray, part: tuple[int, ...]) -> np.ndarray:
    outside = [k for k in range(c.shape[0]) if k not in part]
    sub = c[np.ix_(part, part, outside)] if outside and part else zeros(len(part), len(part), 0)
    return sub


def check_manin_triple(m: ManinTripleData, verbose: bool = False) -> AxiomReport:
    c, g = m.structure, m.form
    n = c.shape[0]
    plus, minus = m.plus_basis, m.minus_basis
    if sorted(plus + minus) != list(range(n)):
        raise ShapeError("plus and minus index sets must partition the basis")
    rb = ReportBuilder(verbose)
    total = validate_mock_lie(c)
    rb.flag("total_mock_lie", total.ok,
            *((total.first_violation.at, total.first_violation.residual) if not total.ok else ()))
    rb.residuals("plus_subalgebra", _closure_residual(c, plus), 2)
    rb.residuals("minus_subalgebra", _closure_residual(c, minus), 2)
    rb.residuals("plus_isotropic", g[np.ix_(plus, plus)], 2)
    rb.residuals("minus_isotropic", g[np.ix_(minus, minus)], 2)
    rb.residuals("form_symmetric", g - g.T, 2)
    rb.residuals("form_invariant", invariance_residual(c, g), 3)
    rb.flag("form_nondegenerate", rank(g) == n)
    half = n // 2
    rb.info["standard"] = (n % 2 == 0 and plus == tuple(range(half))
                           and minus == tuple(range(half, n))
                           and bool(np.all(g == standard_form(half))))
    return rb.build()


# -- the double ------------------------------------------------------------

@dataclass(frozen=True)
class DoubleResult:
    algebra: MockLieAlgebra
    r: object
    cobracket: Cobracket


def double(a: MockLieAlgebra, d: Cobracket) -> DoubleResult:
    """``D(A) = A ⋈ A*`` with canonical ``r = Σ e_i ⊗ f_i`` and its coboundary cobracket.

    Checked guarantees: ``Δ_D(e_i) = -Δ_A(e_i)`` and ``Δ_D(f_i) = γ(f_i)``.
    """
    from .ybe import RTensor, coboundary_cobracket

    if d.algebra != a:
        raise ShapeError("cobracket belongs to a different algebra")
    report = validate_bialgebra(d)
    if not report.ok:
        bad = ", ".join(k for k, v in report.flags.items() if not v)
        raise NotBialgebra(f"not a mock-Lie bialgebra ({bad} fails)", report)
    n = a.dim
    names = list(a.basis_names) + [f"f{i + 1}" for i in range(n)]
    total = bicrossed_product(matched_pair_of_cobracket(d), names)
    r = zeros(2 * n, 2 * n)
    r[:n, n:] = identity(n)
    r_tensor = RTensor(total, r)
    delta = coboundary_cobracket(r_tensor)

    expected = zeros(2 * n, 2 * n, 2 * n)
    expected[:n, :n, :n] = -d.images
    expected[n:, n:, n:] = a.structure.transpose(2, 0, 1)
    if not is_zero(delta.images - expected):
        raise PostconditionFailed("double cobracket does not restrict to -Δ_A and γ")
    return DoubleResult(total, r_tensor, delta)
