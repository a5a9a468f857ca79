import sys
from pathlib import Path

import mpmath
import numpy as np
import pytest

ROOT = Path(__file__).resolve().parent.parent
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))


def levy_density(x):
    """One-sided stable density for alpha = 1/2."""
    x = np.asarray(x, dtype=float)
    return x ** -1.5 * np.exp(-1.0 / (4.0 * x)) / (2.0 * np.sqrt(np.pi))


def mp_prabhakar(alpha, beta, gamma, x, dps=60):
    """E^gamma_{alpha,beta}(x) summed term by term at high precision."""
    ctx = mpmath.MPContext()
    ctx.dps = dps
    a, b, g, z = ctx.mpf(alpha), ctx.mpf(beta), ctx.mpf(gamma), ctx.mpf(x)
    total = ctx.mpf(0)
    k = 0
    while True:
        term = ctx.rf(g, k) / ctx.factorial(k) * z ** k * ctx.rgamma(a * k + b)
        total += term
        if k > 10 and abs(term) < ctx.mpf(10) ** (-dps + 5):
            break
        k += 1
    return float(total)


@pytest.fixture
def levy():
    return levy_density


@pytest.fixture
def prabhakar():
    return mp_prabhakar
