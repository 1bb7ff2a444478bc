"""Hermitian eigendecomposition and the norms built on it."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import EPS_HERM, ContractViolation, NumericalError, as_matrix


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenvalues sorted descending; ``eigenvectors[:, j]`` pairs with ``eigenvalues[j]``."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def __len__(self):
        return self.eigenvalues.size

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def check_hermitian(a: np.ndarray) -> float:
    """Largest entry of ``|A - A^dagger|``; raises past the tolerance."""
    defect = float(np.max(np.abs(a - a.conj().T)))
    scale = max(1.0, float(np.max(np.abs(a))))
    if defect > EPS_HERM * scale:
        raise ContractViolation(f"matrix is not Hermitian (defect {defect:.3g})")
    return defect


def _jacobi(a: np.ndarray, max_sweeps: int) -> tuple[np.ndarray, np.ndarray]:
    # Cyclic complex Jacobi. Each rotation is diag(1, e^{-i phi}) times a real
    # Givens rotation, which zeroes the (p, q) pair exactly.
    a = a.copy()
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)
    scale = float(np.linalg.norm(a)) or 1.0
    off = 0.0
    for _ in range(max_sweeps):
        off = math.sqrt(max(float(np.sum(np.abs(a) ** 2) - np.sum(np.abs(np.diag(a)) ** 2)), 0.0))
        if off <= 1e-15 * scale:
            return np.real(np.diag(a)).copy(), v
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                b = abs(apq)
                if b <= 1e-300:
                    continue
                phase = apq / b
                zeta = (a[q, q].real - a[p, p].real) / (2.0 * b)
                t = math.copysign(1.0, zeta) / (abs(zeta) + math.sqrt(1.0 + zeta * zeta))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                g = np.array([[c, s], [-s * phase.conjugate(), c * phase.conjugate()]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ g
                a[idx, :] = g.conj().T @ a[idx, :]
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                v[:, idx] = v[:, idx] @ g
    raise NumericalError(f"Jacobi did not converge in {max_sweeps} sweeps (off-norm {off:.3g})")


def _fix_phases(vecs: np.ndarray) -> np.ndarray:
    # Largest-magnitude component of each eigenvector made real positive.
    k = np.argmax(np.abs(vecs), axis=0)
    cols = np.arange(vecs.shape[1])
    pivot = vecs[k, cols]
    out = vecs * (pivot.conj() / np.abs(pivot))
    out[k, cols] = np.abs(pivot)
    return out


def eig_hermitian(a, method: str = "lapack", max_sweeps: int = 100) -> SpectralDecomposition:
    """Eigendecomposition of a Hermitian matrix.

    Parameters
    ----------
    a : array_like
        Hermitian matrix; the anti-Hermitian part (at most ``1e-10`` of the
        entry scale) is discarded.
    method : {"lapack", "jacobi"}
        ``"lapack"`` delegates to ``numpy.linalg.eigh``; ``"jacobi"`` runs a
        cyclic complex Jacobi iteration, mainly useful as a cross-check.
    max_sweeps : int
        Sweep budget for the Jacobi method.

    Returns
    -------
    SpectralDecomposition
        Eigenvalues in descending order (ties keep the solver's order) and
        eigenvectors whose largest-magnitude component is real and positive.
    """
    m = as_matrix(a)
    check_hermitian(m)
    h = (m + m.conj().T) / 2
    if method == "lapack":
        try:
            w, v = np.linalg.eigh(h)
        except np.linalg.LinAlgError as exc:
            raise NumericalError(f"eigh failed: {exc}") from exc
    elif method == "jacobi":
        w, v = _jacobi(h, max_sweeps)
    else:
        raise ValueError(f"unknown method {method!r}")
    order = np.argsort(-w, kind="stable")
    return SpectralDecomposition(w[order].copy(), _fix_phases(v[:, order]))


def eigvals_hermitian(a) -> np.ndarray:
    """Descending eigenvalues only."""
    m = as_matrix(a)
    check_hermitian(m)
    return np.linalg.eigvalsh((m + m.conj().T) / 2)[::-1].copy()


def trace_norm_hermitian(a) -> float:
    """Sum of absolute eigenvalues of a Hermitian matrix."""
    return float(np.sum(np.abs(eigvals_hermitian(a))))


def hs_norm(a) -> float:
    """Hilbert-Schmidt (Frobenius) norm.

    The squared moduli are summed with ``math.fsum`` so the result does not
    depend on entry order; permuting entries (e.g. a partial transpose)
    leaves it bit-identical.
    """
    m = np.asarray(a, dtype=np.complex128)
    sq = m.real * m.real + m.imag * m.imag
    return math.sqrt(math.fsum(sq.ravel().tolist()))
