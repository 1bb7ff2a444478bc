"""Dense complex matrices, mixed-radix indexing and the density-matrix type.

Everything downstream addresses tensor-product bases through
:func:`flat_index` and :func:`multi_index`; those two functions are the only
place where a per-subsystem index tuple is turned into a row/column of the
global matrix (and back). Indices are zero-based throughout.

A "complex matrix" is simply a square ``numpy.ndarray`` of dtype
``complex128``; :func:`as_matrix` coerces and checks.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import prod
from typing import Iterable, Sequence

import numpy as np

# Hermiticity and unit-trace tolerances for unit-scale inputs.
EPS_HERM = 1e-10
EPS_TRACE = 1e-10


class StructuralError(ValueError):
    """Shapes, dimension lists or masks that do not fit together."""


class ContractViolation(ValueError):
    """An input that is well-formed but breaks a documented precondition."""


class NumericalError(ArithmeticError):
    """A numerical routine failed (e.g. an eigensolver did not converge)."""


def as_matrix(a) -> np.ndarray:
    """Return ``a`` as a square complex128 array (a copy only if needed)."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise StructuralError(f"expected a non-empty square matrix, got shape {m.shape}")
    return m


@dataclass(frozen=True)
class DimensionSpec:
    """Ordered list of subsystem dimensions ``(d_1, ..., d_nss)``."""

    dims: tuple[int, ...]

    def __init__(self, dims: Iterable[int]):
        dims = tuple(int(d) for d in dims)
        if not dims:
            raise StructuralError("a DimensionSpec needs at least one subsystem")
        if any(d < 1 for d in dims):
            raise StructuralError(f"subsystem dimensions must be positive, got {dims}")
        object.__setattr__(self, "dims", dims)

    @property
    def nss(self) -> int:
        return len(self.dims)

    @property
    def total(self) -> int:
        return prod(self.dims)

    def strides(self) -> tuple[int, ...]:
        """Row-major strides: product of the dimensions after each slot."""
        out = []
        acc = 1
        for d in reversed(self.dims):
            out.append(acc)
            acc *= d
        return tuple(reversed(out))

    def __iter__(self):
        return iter(self.dims)

    def __len__(self):
        return len(self.dims)


def as_spec(dims: DimensionSpec | Sequence[int]) -> DimensionSpec:
    return dims if isinstance(dims, DimensionSpec) else DimensionSpec(dims)


def as_mask(mask: Sequence[bool], spec: DimensionSpec) -> tuple[bool, ...]:
    """Validate a transpose mask (``True`` = transpose that subsystem)."""
    flags = tuple(bool(m) for m in mask)
    if len(flags) != spec.nss:
        raise StructuralError(
            f"mask has {len(flags)} entries but there are {spec.nss} subsystems"
        )
    return flags


def flat_index(multi: Sequence[int], dims: DimensionSpec | Sequence[int]) -> int:
    """Global basis index of the product state ``|j_1 j_2 ... j_n>``.

    >>> flat_index((0, 2, 1), (2, 3, 4))
    9
    """
    spec = as_spec(dims)
    if len(multi) != spec.nss:
        raise StructuralError(f"multi-index {tuple(multi)} does not match dims {spec.dims}")
    idx = 0
    for j, d in zip(multi, spec.dims):
        if not 0 <= j < d:
            raise IndexError(f"component {j} out of range for subsystem of dimension {d}")
        idx = idx * d + int(j)
    return idx


def multi_index(flat: int, dims: DimensionSpec | Sequence[int]) -> tuple[int, ...]:
    """Inverse of :func:`flat_index`."""
    spec = as_spec(dims)
    if not 0 <= flat < spec.total:
        raise IndexError(f"flat index {flat} out of range [0, {spec.total})")
    out = []
    for d in reversed(spec.dims):
        flat, r = divmod(flat, d)
        out.append(r)
    return tuple(reversed(out))


def multi_index_table(dims: DimensionSpec | Sequence[int]) -> np.ndarray:
    """All multi-indices in flat order, shape ``(total, nss)``.

    Row ``x`` equals ``multi_index(x, dims)``; built with the same mixed-radix
    rule, vectorised.
    """
    spec = as_spec(dims)
    flat = np.arange(spec.total)
    cols = [(flat // s) % d for s, d in zip(spec.strides(), spec.dims)]
    return np.stack(cols, axis=1)


@dataclass(frozen=True)
class DensityMatrix:
    """A matrix paired with the subsystem dimensions it lives on.

    Construction only checks shapes. Hermiticity, unit trace and positivity
    are checked by :func:`validate_density` since partial transposes of
    states deliberately break positivity.
    """

    matrix: np.ndarray
    spec: DimensionSpec = field(default=None)

    def __post_init__(self):
        m = as_matrix(self.matrix).copy()
        m.setflags(write=False)
        spec = as_spec(self.spec) if self.spec is not None else DimensionSpec((m.shape[0],))
        if spec.total != m.shape[0]:
            raise StructuralError(
                f"matrix dimension {m.shape[0]} != product of dims {spec.dims} = {spec.total}"
            )
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "spec", spec)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def dims(self) -> tuple[int, ...]:
        return self.spec.dims

    def trace(self) -> complex:
        return complex(np.trace(self.matrix))


@dataclass(frozen=True)
class Violation:
    invariant: str  # "hermitian" | "trace" | "psd"
    magnitude: float

    def __str__(self):
        return f"{self.invariant} violated by {self.magnitude:.3g}"


def psd_tolerance(eigenvalues: np.ndarray) -> float:
    """``d * 1e-12 * max|lambda|``."""
    ev = np.asarray(eigenvalues)
    return ev.size * 1e-12 * float(np.max(np.abs(ev))) if ev.size else 0.0


def validate_density(
    rho: DensityMatrix | np.ndarray,
    check_psd: bool = True,
    dims: DimensionSpec | Sequence[int] | None = None,
) -> list[Violation]:
    """List the density-matrix invariants ``rho`` breaks, with magnitudes.

    An empty list means ``rho`` is Hermitian and has unit trace (and, when
    ``check_psd`` is set, no eigenvalue below ``-d * 1e-12 * max|lambda|``).
    The reported magnitudes are the largest Hermiticity defect, ``|Tr - 1|``
    and ``-min(eigenvalue)`` respectively.
    """
    if isinstance(rho, DensityMatrix):
        if dims is not None and as_spec(dims) != rho.spec:
            raise StructuralError(f"dims {tuple(dims)} disagree with {rho.dims}")
        m = rho.matrix
    else:
        m = as_matrix(rho)
        if dims is not None and as_spec(dims).total != m.shape[0]:
            raise StructuralError(
                f"matrix dimension {m.shape[0]} != product of dims {tuple(dims)}"
            )

    out = []
    herm = float(np.max(np.abs(m - m.conj().T)))
    if herm > EPS_HERM:
        out.append(Violation("hermitian", herm))
    tr = abs(complex(np.trace(m)) - 1.0)
    if tr > EPS_TRACE:
        out.append(Violation("trace", tr))
    if check_psd:
        ev = np.linalg.eigvalsh((m + m.conj().T) / 2)
        if ev[0] < -psd_tolerance(ev):
            out.append(Violation("psd", float(-ev[0])))
    return out
