from itertools import combinations
from pathlib import Path

import numpy as np
import pytest

DATA = Path(__file__).parent / "data"

# Lines collected by the acceptance module and echoed in the terminal summary.
ACCEPTANCE_LINES = []
ACCEPTANCE_NOTES = []


# --- naive loop oracles, written from the one-based element formulas --------

def loop_pt_a(da, db, rho):
    out = np.zeros_like(rho)
    for ja in range(1, da + 1):
        for ka in range(1, da + 1):
            for jb in range(1, db + 1):
                for kb in range(1, db + 1):
                    alpha = (ja - 1) * db + jb
                    beta = (ka - 1) * db + kb
                    out[(ka - 1) * db + jb - 1, (ja - 1) * db + kb - 1] = rho[alpha - 1, beta - 1]
    return out


def loop_pt_b(da, db, rho):
    out = np.zeros_like(rho)
    for ja in range(1, da + 1):
        for ka in range(1, da + 1):
            for jb in range(1, db + 1):
                for kb in range(1, db + 1):
                    alpha = (ja - 1) * db + jb
                    beta = (ka - 1) * db + kb
                    out[(ja - 1) * db + kb - 1, (ka - 1) * db + jb - 1] = rho[alpha - 1, beta - 1]
    return out


def loop_pt_inner(da, db, dc, rho):
    def g(x, y, z):
        return (x - 1) * db * dc + (y - 1) * dc + z - 1

    out = np.zeros_like(rho)
    for ja in range(1, da + 1):
        for ka in range(1, da + 1):
            for jb in range(1, db + 1):
                for kb in range(1, db + 1):
                    for jc in range(1, dc + 1):
                        for kc in range(1, dc + 1):
                            out[g(ja, kb, jc), g(ka, jb, kc)] = rho[g(ja, jb, jc), g(ka, kb, kc)]
    return out


def loop_partial_transpose(rho, dims, mask):
    """Compose single-subsystem loop transposes (T_ss' = T_s o T_s')."""
    dims = list(dims)
    out = rho
    for s, flag in enumerate(mask):
        if not flag:
            continue
        left = int(np.prod(dims[:s]))
        right = int(np.prod(dims[s + 1:]))
        if left == 1 and right == 1:
            out = out.T.copy()
        elif left == 1:
            out = loop_pt_a(dims[s], right, out)
        elif right == 1:
            out = loop_pt_b(left, dims[s], out)
        else:
            out = loop_pt_inner(left, dims[s], right, out)
    return out


def brute_force_simplex_distance(v):
    """Minimum distance to the probability simplex by enumerating supports."""
    v = np.asarray(v, dtype=float)
    n = v.size
    best = np.inf
    for k in range(1, n + 1):
        for support in combinations(range(n), k):
            idx = list(support)
            z = np.zeros(n)
            z[idx] = v[idx] - (v[idx].sum() - 1.0) / k
            if np.all(z >= -1e-15):
                best = min(best, float(np.linalg.norm(v - np.maximum(z, 0))))
    return best


def random_complex(d, rng):
    return rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))


def random_hermitian(d, rng):
    g = random_complex(d, rng)
    return (g + g.conj().T) / 2


@pytest.fixture
def rng():
    return np.random.default_rng(20240531)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
    if ACCEPTANCE_NOTES:
        terminalreporter.section("acceptance notes")
        for line in ACCEPTANCE_NOTES:
            terminalreporter.write_line(line)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when != "call":
        return
    number, title = marker.args
    status = "PASS" if report.passed else "FAIL"
    ACCEPTANCE_LINES.append(f"criterion {number:>2} {status}: {title}")
