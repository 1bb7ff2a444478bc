"""Test states: Bell/GHZ projectors, Werner mixtures and random states."""
from __future__ import annotations

from typing import Sequence

import numpy as np

from .core import DensityMatrix, DimensionSpec, as_spec


def ghz(n: int) -> DensityMatrix:
    """Projector onto ``(|0...0> + |1...1>)/sqrt(2)`` on ``n`` qubits."""
    if n < 2:
        raise ValueError(f"GHZ state needs n >= 2 qubits, got {n}")
    d = 2**n
    rho = np.zeros((d, d), dtype=np.complex128)
    rho[0, 0] = rho[0, -1] = rho[-1, 0] = rho[-1, -1] = 0.5
    return DensityMatrix(rho, (2,) * n)


def bell_phi_plus() -> DensityMatrix:
    return ghz(2)


def werner(n: int, w: float) -> DensityMatrix:
    """``w |GHZ_n><GHZ_n| + (1 - w) I / 2^n``.

    Only ``n`` = 2 and 3 are the textbook Werner states; larger ``n`` just
    follow the same formula.
    """
    if not 0.0 <= w <= 1.0:
        raise ValueError(f"Werner weight must lie in [0, 1], got {w}")
    g = ghz(n)
    d = g.dim
    return DensityMatrix(w * g.matrix + (1.0 - w) / d * np.eye(d), g.spec)


def random_density(dims: DimensionSpec | Sequence[int], seed) -> DensityMatrix:
    """Full-rank random state ``G G^dagger / Tr(G G^dagger)``.

    ``G`` has independent standard complex Gaussian entries drawn from
    ``numpy.random.default_rng(seed)``; ``seed`` may be anything
    ``default_rng`` accepts, including a ``SeedSequence`` spawned for
    parallel use.
    """
    spec = as_spec(dims)
    rng = np.random.default_rng(seed)
    d = spec.total
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    rho = g @ g.conj().T
    rho = (rho + rho.conj().T) / 2
    return DensityMatrix(rho / np.trace(rho).real, spec)


def random_product_state(dims: DimensionSpec | Sequence[int], rng: np.random.Generator) -> np.ndarray:
    """Tensor product of independent random local states."""
    out = np.ones((1, 1), dtype=np.complex128)
    for d in as_spec(dims).dims:
        g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        local = g @ g.conj().T
        out = np.kron(out, local / np.trace(local).real)
    return out


def random_separable(dims: DimensionSpec | Sequence[int], seed, terms: int = 4) -> DensityMatrix:
    """Random convex mixture of ``terms`` random product states."""
    spec = as_spec(dims)
    rng = np.random.default_rng(seed)
    p = rng.dirichlet(np.ones(terms))
    rho = sum(pk * random_product_state(spec, rng) for pk in p)
    rho = (rho + rho.conj().T) / 2
    return DensityMatrix(rho / np.trace(rho).real, spec)
