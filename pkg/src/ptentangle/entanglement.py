"""Entanglement functions computed from a partial transpose.

* :func:`ppt_verdict` -- Peres test (NPT implies entangled).
* :func:`negativity`, :func:`log_negativity` -- from the PT spectrum.
* :func:`hse` -- closed-form Hilbert-Schmidt entanglement and the matrix
  whose partial transpose is the associated closest separable state.
* :func:`simplex_projection_distance` -- exact minimum of
  ``||D - zeta||`` over probability vectors ``zeta``; reported next to the
  closed form as an independent lower bound.

The ``*_of`` wrappers take a state, its dimensions and a transpose mask
instead of a ready-made partial transpose.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .core import (
    EPS_TRACE,
    ContractViolation,
    DensityMatrix,
    DimensionSpec,
    NumericalError,
    StructuralError,
    as_matrix,
    as_spec,
)
from .ptranspose import partial_transpose
from .spectra import eig_hermitian, eigvals_hermitian

# Spectrum sums within this of 1 count as "no cut needed".
SEPARABLE_SLACK = 1e-9
# Cumulative sums must exceed 1 by this much to count as "> 1".
CUT_SLACK = 1e-12
# Allowed disagreement between the two algebraic forms of E_hs.
FORM_AGREEMENT = 1e-9


class Verdict(str, enum.Enum):
    NPT = "NPT-entangled"
    PPT = "PPT"

    def __str__(self):
        return self.value


def zero_tolerance(eigs) -> float:
    """``d * 1e-12 * max|lambda|``, the band treated as exactly zero."""
    ev = np.asarray(eigs, dtype=float)
    return ev.size * 1e-12 * float(np.max(np.abs(ev))) if ev.size else 0.0


@dataclass(frozen=True)
class EigClassification:
    positives: np.ndarray  # descending
    negatives: np.ndarray  # descending, i.e. least negative first
    zero_count: int

    @property
    def d_plus(self) -> int:
        return self.positives.size

    @property
    def d_minus(self) -> int:
        return self.negatives.size

    @property
    def d(self) -> int:
        return self.d_plus + self.d_minus + self.zero_count


def classify_spectrum(eigs: Sequence[float], tau_zero: float | None = None) -> EigClassification:
    """Split a descending spectrum into positive, zero and negative parts."""
    ev = np.asarray(eigs, dtype=float)
    tau = zero_tolerance(ev) if tau_zero is None else tau_zero
    pos = ev[ev > tau]
    neg = ev[ev < -tau]
    return EigClassification(pos.copy(), neg.copy(), int(ev.size - pos.size - neg.size))


def _check_unit_trace(pt: np.ndarray) -> None:
    tr = complex(np.trace(pt))
    if abs(tr - 1.0) > EPS_TRACE:
        raise ContractViolation(f"partial transpose must have unit trace, got {tr:.12g}")


def ppt_verdict(rho, dims: DimensionSpec | Sequence[int], mask: Sequence[bool]) -> tuple[float, Verdict]:
    """Smallest eigenvalue of the partial transpose and the Peres verdict.

    ``PPT`` does not certify separability once ``prod(dims) > 6``.
    """
    m = rho.matrix if isinstance(rho, DensityMatrix) else as_matrix(rho)
    ev = eigvals_hermitian(partial_transpose(m, dims, mask))
    lo = float(ev[-1])
    return lo, (Verdict.NPT if lo < -zero_tolerance(ev) else Verdict.PPT)


def negativity(pt) -> float:
    """Sum of the moduli of the negative eigenvalues of a partial transpose.

    Equal to ``(||pt||_tr - 1) / 2`` for a unit-trace ``pt``. Eigenvalues
    inside the zero band are ignored, so PPT inputs give exactly 0.
    """
    m = as_matrix(pt)
    _check_unit_trace(m)
    cls = classify_spectrum(eigvals_hermitian(m))
    return float(-np.sum(cls.negatives))


def log_negativity(pt) -> float:
    """``log2(2 E_n + 1)``."""
    return math.log2(2.0 * negativity(pt) + 1.0)


def hse_cut_point(positives: Sequence[float]) -> tuple[int, float]:
    """Cut-point ``d_+'`` (one-based) and remainder weight ``xi``.

    ``d_+'`` is the first position where the running sum of the descending
    positive eigenvalues exceeds 1, and ``xi = 1 - (sum before it)``. When
    the positives sum to at most ``1 + 1e-9`` there is nothing to cut:
    ``(len(positives) + 1, 0.0)`` is returned.

    >>> hse_cut_point([0.375, 0.375, 0.375])
    (3, 0.25)
    """
    pos = np.asarray(positives, dtype=float)
    if np.any(pos <= 0):
        raise ContractViolation("hse_cut_point needs strictly positive eigenvalues")
    if np.any(np.diff(pos) > 0):
        raise ContractViolation("positive eigenvalues must be in descending order")
    if math.fsum(pos.tolist()) <= 1.0 + SEPARABLE_SLACK:
        return pos.size + 1, 0.0
    cum = np.cumsum(pos)
    k = int(np.argmax(cum > 1.0 + CUT_SLACK))
    before = float(cum[k - 1]) if k > 0 else 0.0
    xi = min(max(1.0 - before, 0.0), float(pos[k]))
    return k + 1, xi


@dataclass(frozen=True)
class HseReport:
    e_hs: float
    d_plus_prime: int
    xi: float
    classification: EigClassification
    oracle_lower_bound: float
    # E_hs from the negatives-only form; agrees with e_hs within 1e-9.
    e_hs_check: float
    min_eigenvalue: float
    css: DensityMatrix | None = None
    css_min_eigenvalue: float | None = None
    xi_matrix: np.ndarray | None = field(default=None, repr=False)
    # Set when negatives were found although the positives sum to ~1.
    trace_shift: bool = False

    @property
    def oracle_gap(self) -> float:
        return self.e_hs - self.oracle_lower_bound


def _hse_forms(pos: np.ndarray, neg: np.ndarray, cut: int, xi: float) -> tuple[float, float]:
    """E_hs from the (D - xi) form and from the negatives-only form."""
    tail = pos[cut:]
    neg2 = math.fsum((neg * neg).tolist())
    tail2 = math.fsum((tail * tail).tolist())
    first = (float(pos[cut - 1]) - xi) ** 2 + tail2 + neg2
    third = (math.fsum((-neg).tolist()) - math.fsum(tail.tolist())) ** 2 + tail2 + neg2
    return math.sqrt(first), math.sqrt(third)


def hse(
    pt,
    want_css: bool = False,
    dims: DimensionSpec | Sequence[int] | None = None,
    mask: Sequence[bool] | None = None,
) -> HseReport:
    """Hilbert-Schmidt entanglement from the partial transpose of a state.

    Parameters
    ----------
    pt : array_like
        Partial transpose (over one side of a bipartition) of a density
        matrix: Hermitian with unit trace.
    want_css : bool
        Also build the closest separable state. This needs ``dims`` and
        ``mask`` so the mixture of top eigenvectors can be transposed back.
    dims, mask
        The bipartition used to produce ``pt``.

    Returns
    -------
    HseReport

    Notes
    -----
    The positive eigenvalues are kept as they are up to the cut-point, the
    cut eigenvalue is replaced by ``xi`` and everything else by zero. This
    closed-form candidate is not always the Euclidean projection of the
    spectrum onto the probability simplex; ``oracle_lower_bound`` holds that
    projection's distance, which never exceeds ``e_hs``.
    """
    m = as_matrix(pt)
    _check_unit_trace(m)
    if want_css and (dims is None or mask is None):
        raise StructuralError("want_css needs the dims and mask that produced pt")
    sd = eig_hermitian(m)
    cls = classify_spectrum(sd.eigenvalues)
    pos, neg = cls.positives, cls.negatives
    if pos.size == 0:
        raise ContractViolation("partial transpose has no positive eigenvalues")
    min_ev = float(sd.eigenvalues[-1])

    trace_shift = False
    if math.fsum(pos.tolist()) <= 1.0 + SEPARABLE_SLACK:
        if neg.size == 0:
            css = css_min = None
            if want_css:
                rho = partial_transpose(m, dims, mask)
                css = DensityMatrix(rho, dims)
                css_min = float(eigvals_hermitian(rho)[-1])
            return HseReport(
                e_hs=0.0,
                d_plus_prime=pos.size + 1,
                xi=0.0,
                classification=cls,
                oracle_lower_bound=0.0,
                e_hs_check=0.0,
                min_eigenvalue=min_ev,
                css=css,
                css_min_eigenvalue=css_min,
            )
        # Negatives with positives summing to ~1 only happen through rounding:
        # absorb the excess into the last positive weight.
        trace_shift = True
        cut = pos.size
        xi = float(pos[-1]) + 1.0 - math.fsum(pos.tolist())
    else:
        cut, xi = hse_cut_point(pos)

    e1, e3 = _hse_forms(pos, neg, cut, xi)
    if abs(e1 - e3) > FORM_AGREEMENT:
        raise NumericalError(f"E_hs forms disagree: {e1!r} vs {e3!r}")

    css = css_min = xi_mat = None
    if want_css:
        weights = np.concatenate([pos[: cut - 1], [xi]])
        v = sd.eigenvectors[:, :cut]
        xi_mat = (v * weights) @ v.conj().T
        tr = complex(np.trace(xi_mat))
        if abs(tr - 1.0) > 1e-9:
            raise NumericalError(f"mixture of eigenvectors has trace {tr:.12g}")
        sigma = partial_transpose(xi_mat, dims, mask)
        css = DensityMatrix(sigma, dims)
        css_min = float(eigvals_hermitian(sigma)[-1])

    return HseReport(
        e_hs=e1,
        d_plus_prime=cut,
        xi=xi,
        classification=cls,
        oracle_lower_bound=simplex_projection_distance(sd.eigenvalues)[0],
        e_hs_check=e3,
        min_eigenvalue=min_ev,
        css=css,
        css_min_eigenvalue=css_min,
        xi_matrix=xi_mat,
        trace_shift=trace_shift,
    )


def simplex_projection_distance(eigs: Sequence[float]) -> tuple[float, np.ndarray]:
    """Euclidean distance from ``eigs`` to the probability simplex.

    Sort-and-threshold projection; returns ``(distance, projection)`` with
    the projection in the input order.
    """
    v = np.asarray(eigs, dtype=float)
    u = np.sort(v)[::-1]
    excess = np.cumsum(u) - 1.0
    k = np.arange(1, u.size + 1)
    r = int(np.nonzero(u - excess / k > 0)[0][-1])
    theta = excess[r] / (r + 1)
    proj = np.maximum(v - theta, 0.0)
    diff = v - proj
    return math.sqrt(math.fsum((diff * diff).tolist())), proj


def _pt_of(rho, dims, mask) -> np.ndarray:
    m = rho.matrix if isinstance(rho, DensityMatrix) else as_matrix(rho)
    return partial_transpose(m, dims, mask)


def negativity_of(rho, dims: DimensionSpec | Sequence[int], mask: Sequence[bool]) -> float:
    return negativity(_pt_of(rho, dims, mask))


def log_negativity_of(rho, dims: DimensionSpec | Sequence[int], mask: Sequence[bool]) -> float:
    return log_negativity(_pt_of(rho, dims, mask))


def hse_of(rho, dims: DimensionSpec | Sequence[int], mask: Sequence[bool], want_css: bool = False) -> HseReport:
    """:func:`hse` for a state given with its bipartition."""
    spec = as_spec(dims)
    return hse(_pt_of(rho, spec, mask), want_css=want_css, dims=spec, mask=mask)
