"""Exact rational matrices and tensors.

Everything is a numpy ``object`` array whose entries are
:class:`fractions.Fraction`.  Vectors are 1-d, matrices 2-d, and elements of
``A⊗A`` / ``A⊗A⊗A`` are 2-d / 3-d arrays of coefficients over fixed bases,
so ``t[i, j]`` is the coefficient of ``b_i ⊗ c_j``.

Matrices act on column vectors: ``(M @ v)[k] = Σ_j M[k, j] v[j]``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import ArityMismatch, DimMismatch, ShapeError, Singular

ZERO = Fraction(0)
ONE = Fraction(1)


def to_fraction(value) -> Fraction:
    """Coerce ints, ``Fraction``s and ``"p/q"`` strings to ``Fraction``.

    Floats are rejected: they would silently smuggle rounding into an exact
    computation.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (bool, float, np.floating)):
        raise TypeError(f"refusing inexact value {value!r}")
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as a rational")


def qarray(data, shape: Sequence[int] | None = None) -> np.ndarray:
    """Build an object array of Fractions from nested sequences or an array."""
    src = np.asarray(data, dtype=object)
    if shape is not None:
        src = src.reshape(shape)
    out = np.empty(src.shape, dtype=object)
    for idx in np.ndindex(src.shape):
        out[idx] = to_fraction(src[idx])
    return out


def zeros(*shape: int) -> np.ndarray:
    out = np.empty(shape, dtype=object)
    out.fill(ZERO)
    return out


def identity(n: int) -> np.ndarray:
    out = zeros(n, n)
    for i in range(n):
        out[i, i] = ONE
    return out


def basis_vector(n: int, i: int) -> np.ndarray:
    v = zeros(n)
    v[i] = ONE
    return v


def is_zero(a: np.ndarray) -> bool:
    return not any(a.flat)


def nonzero_indices(a: np.ndarray) -> list[tuple[int, ...]]:
    """Indices of nonzero entries in lexicographic order."""
    return [idx for idx in np.ndindex(a.shape) if a[idx] != 0]


def _clear_denominators(a: np.ndarray) -> tuple[np.ndarray, int]:
    # ints and Fractions already expose numerator/denominator
    flat = [x if type(x) in (int, Fraction) else Fraction(x) for x in a.flat]
    den = math.lcm(*{x.denominator for x in flat}) if flat else 1
    ints = np.empty(len(flat), dtype=object)
    ints[:] = [x.numerator * (den // x.denominator) for x in flat]
    return ints.reshape(a.shape), den


_INT64_SAFE = 2 ** 62


def _int_einsum(subscripts: str, operands: list[np.ndarray]) -> np.ndarray:
    """``np.einsum`` over Python ints, in int64 whenever overflow is impossible.

    Each output entry sums at most ``Π index sizes`` products, each bounded by
    ``Π max|operand|``; below 2**62 the machine result is exact.
    """
    if "..." not in subscripts:
        sizes: dict[str, int] = {}
        for letters, op in zip(subscripts.split("->")[0].split(","), operands):
            sizes.update(zip(letters, op.shape))
        bound = math.prod(sizes.values())
        for op in operands:
            bound *= max((abs(v) for v in op.flat), default=0)
        if bound < _INT64_SAFE:
            machine = [op.astype(np.int64) for op in operands]
            return np.asarray(np.einsum(subscripts, *machine, optimize=True)).astype(object)
    return np.asarray(np.einsum(subscripts, *operands, optimize=True), dtype=object)


def qcombine(*terms) -> np.ndarray:
    """Exact ``Σ sign · np.einsum(subscripts, *operands)`` over rationals.

    Each term is ``(sign, subscripts, *operands)``.  Operands are scaled to
    Python integers, contracted along an optimized path and summed over a
    common denominator, so no intermediate ``Fraction`` is ever normalized.
    """
    parts = []
    for sign, subscripts, *operands in terms:
        scaled, den = [], 1
        for op in operands:
            ints, d = _clear_denominators(np.asarray(op, dtype=object))
            scaled.append(ints)
            den *= d
        parts.append((int(sign), _int_einsum(subscripts, scaled), den))
    common = math.lcm(*(den for _, _, den in parts))
    total = sum(sign * (common // den) * raw for sign, raw, den in parts)
    total = np.asarray(total, dtype=object)
    out = np.empty(total.size, dtype=object)
    out[:] = [Fraction(v, common) if v else ZERO for v in total.flat]
    return out.reshape(total.shape)


def qeinsum(subscripts: str, *operands: np.ndarray) -> np.ndarray:
    """Exact ``np.einsum`` over rationals; see :func:`qcombine`."""
    return qcombine((1, subscripts, *operands))


def block_diag(*blocks: np.ndarray) -> np.ndarray:
    rows = sum(b.shape[0] for b in blocks)
    cols = sum(b.shape[1] for b in blocks)
    out = zeros(rows, cols)
    r = c = 0
    for b in blocks:
        out[r:r + b.shape[0], c:c + b.shape[1]] = b
        r += b.shape[0]
        c += b.shape[1]
    return out


def rref(m: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    if m.ndim != 2:
        raise ShapeError(f"expected a matrix, got shape {m.shape}")
    a = qarray(m)
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if a[i, c] != 0), None)
        if p is None:
            continue
        if p != r:
            a[[r, p]] = a[[p, r]]
        a[r] = a[r] / a[r, c]
        for i in range(rows):
            if i != r and a[i, c] != 0:
                a[i] = a[i] - a[i, c] * a[r]
        pivots.append(c)
        r += 1
    return a, pivots


def rank(m: np.ndarray) -> int:
    return len(rref(m)[1])


def nullspace(m: np.ndarray) -> list[np.ndarray]:
    """A basis of ``{v : m v = 0}`` with one free coordinate set to 1 per vector."""
    reduced, pivots = rref(m)
    cols = m.shape[1]
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = zeros(cols)
        v[f] = ONE
        for row, pc in enumerate(pivots):
            v[pc] = -reduced[row, f]
        basis.append(v)
    return basis


def invert_matrix(m: np.ndarray) -> np.ndarray:
    """Exact inverse by Gauss-Jordan elimination; raises :class:`Singular`."""
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ShapeError(f"only square matrices are invertible, got {m.shape}")
    n = m.shape[0]
    reduced, pivots = rref(np.concatenate([qarray(m), identity(n)], axis=1))
    left_rank = sum(1 for p in pivots if p < n)
    if left_rank < n:
        raise Singular(left_rank, n)
    return reduced[:, n:]


# -- tensors ---------------------------------------------------------------

def compose_permutations(outer: Sequence[int], inner: Sequence[int]) -> tuple[int, ...]:
    """Permutation equal to applying ``inner`` first and then ``outer``."""
    return tuple(inner[k] for k in outer)


def invert_permutation(perm: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(perm)
    for k, p in enumerate(perm):
        inv[p] = k
    return tuple(inv)


def permute_tensor(t: np.ndarray, perm: Sequence[int]) -> np.ndarray:
    """Reorder tensor factors: output factor ``k`` is input factor ``perm[k]``.

    ``perm=(1, 0)`` is the switch ``x⊗y ↦ y⊗x`` and ``perm=(1, 2, 0)`` is the
    cyclic map ``x⊗y⊗z ↦ y⊗z⊗x``.
    """
    if sorted(perm) != list(range(t.ndim)):
        raise ArityMismatch(f"{tuple(perm)} is not a permutation of {t.ndim} factors")
    return np.transpose(t, tuple(perm)).copy()


def switch(t: np.ndarray) -> np.ndarray:
    return permute_tensor(t, (1, 0))


def cyclic(t: np.ndarray) -> np.ndarray:
    return permute_tensor(t, (1, 2, 0))


def apply_factorwise(maps: Iterable[np.ndarray | None], t: np.ndarray) -> np.ndarray:
    """Apply ``F₁⊗…⊗F_k`` to ``t``; ``None`` stands for the identity map."""
    maps = list(maps)
    if len(maps) != t.ndim:
        raise ArityMismatch(f"{len(maps)} maps for a tensor with {t.ndim} factors")
    out = t
    for axis, f in enumerate(maps):
        if f is None:
            continue
        if f.ndim != 2 or f.shape[1] != out.shape[axis]:
            raise DimMismatch(
                f"map of shape {f.shape} cannot act on factor {axis} of dim {out.shape[axis]}")
        out = np.moveaxis(qeinsum("ab,b...->a...", f, np.moveaxis(out, axis, 0)), 0, axis)
    if out is t:
        out = t.copy()
    return out


def format_rational(q: Fraction) -> str:
    return str(q)


def tensor_terms(t: np.ndarray) -> list[tuple[tuple[int, ...], Fraction]]:
    return [(idx, t[idx]) for idx in nonzero_indices(t)]
