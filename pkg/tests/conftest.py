import sys
import numpy as np
import pytest

from grasspack import Subspace


def canonical_planes(thetas, m=None):
    """P = [I 0 0], Q = [diag(cos) diag(sin) 0]."""
    th = np.asarray(thetas, dtype=float)
    n = len(th)
    m = m or 2 * n
    P = np.zeros((n, m))
    P[:, :n] = np.eye(n)
    Q = np.zeros((n, m))
    Q[:, :n] = np.diag(np.cos(th))
    Q[:, n : 2 * n] = np.diag(np.sin(th))
    return Subspace(P), Subspace(Q)


def random_orthogonal(m, rng):
    q, r = np.linalg.qr(rng.standard_normal((m, m)))
    return q * np.sign(np.diag(r))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.line(num))
