"""Transposition and partial transposition maps.

All maps here only move entries around; no arithmetic touches the values,
so involution, trace preservation and Hermiticity preservation hold
bit-for-bit. Inputs need not be Hermitian.

The bipartite and tripartite routines work on the tensor layout
(``reshape`` + axis swap). The general :func:`partial_transpose` is a single
mixed-radix permutation pass built from :func:`~ptentangle.core.multi_index_table`.
"""
from __future__ import annotations

from typing import Sequence

import numpy as np

from .core import DimensionSpec, StructuralError, as_mask, as_matrix, as_spec, multi_index_table


def transpose(rho) -> np.ndarray:
    """Full transposition (entries moved, not conjugated)."""
    return np.ascontiguousarray(as_matrix(rho).T)


def _check_dim(m: np.ndarray, *dims: int) -> None:
    total = int(np.prod(dims))
    if m.shape[0] != total:
        raise StructuralError(f"matrix dimension {m.shape[0]} != {' * '.join(map(str, dims))}")


def partial_transpose_a(d_a: int, d_b: int, rho) -> np.ndarray:
    """Transpose the first factor of a ``d_a x d_b`` bipartite operator."""
    m = as_matrix(rho)
    _check_dim(m, d_a, d_b)
    t = m.reshape(d_a, d_b, d_a, d_b).transpose(2, 1, 0, 3)
    return np.ascontiguousarray(t).reshape(d_a * d_b, d_a * d_b)


def partial_transpose_b(d_a: int, d_b: int, rho) -> np.ndarray:
    """Transpose the second factor of a ``d_a x d_b`` bipartite operator."""
    m = as_matrix(rho)
    _check_dim(m, d_a, d_b)
    t = m.reshape(d_a, d_b, d_a, d_b).transpose(0, 3, 2, 1)
    return np.ascontiguousarray(t).reshape(d_a * d_b, d_a * d_b)


def partial_transpose_3(d_a: int, d_b: int, d_c: int, rho) -> np.ndarray:
    """Transpose the middle factor of a ``d_a x d_b x d_c`` operator."""
    m = as_matrix(rho)
    _check_dim(m, d_a, d_b, d_c)
    d = d_a * d_b * d_c
    t = m.reshape(d_a, d_b, d_c, d_a, d_b, d_c).transpose(0, 4, 2, 3, 1, 5)
    return np.ascontiguousarray(t).reshape(d, d)


def pt_index_maps(dims: DimensionSpec | Sequence[int], mask: Sequence[bool]):
    """Split every flat index into its kept and transposed contributions.

    Returns ``(keep, swap)`` with ``keep[x] + swap[x] == x``: ``keep`` sums
    ``j_s * stride_s`` over untransposed subsystems and ``swap`` over the
    transposed ones. Entry ``(r, c)`` of the input lands at
    ``(keep[r] + swap[c], keep[c] + swap[r])``.
    """
    spec = as_spec(dims)
    flags = np.array(as_mask(mask, spec), dtype=bool)
    contrib = multi_index_table(spec) * np.array(spec.strides())
    return contrib[:, ~flags].sum(axis=1), contrib[:, flags].sum(axis=1)


def partial_transpose(rho, dims: DimensionSpec | Sequence[int], mask: Sequence[bool]) -> np.ndarray:
    """Partial transpose over every subsystem whose mask flag is ``True``.

    Parameters
    ----------
    rho : array_like
        Square matrix of dimension ``prod(dims)``.
    dims : sequence of int
        Subsystem dimensions, most significant first.
    mask : sequence of bool
        One flag per subsystem; ``True`` means transpose it. (This is the
        opposite of the 0/1 ``ssys`` convention accepted by the CLI.)

    Returns
    -------
    numpy.ndarray
        A fresh matrix; ``rho`` is left untouched.
    """
    m = as_matrix(rho)
    spec = as_spec(dims)
    if spec.total != m.shape[0]:
        raise StructuralError(f"matrix dimension {m.shape[0]} != product of dims {spec.dims}")
    keep, swap = pt_index_maps(spec, mask)
    out = np.empty_like(m)
    rows = keep[:, None] + swap[None, :]
    cols = keep[None, :] + swap[:, None]
    out[rows, cols] = m
    return out
