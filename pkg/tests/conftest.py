import numpy as np
import pytest

from nlshape.sphere import make_grid


@pytest.fixture(scope="session")
def circle_1024():
    return make_grid(2, 1024)


@pytest.fixture(scope="session")
def circle_4096():
    return make_grid(2, 4096)


@pytest.fixture(scope="session")
def sphere_32():
    return make_grid(3, 32)


@pytest.fixture(scope="session")
def sphere_16():
    return make_grid(3, 16)


def mc_ball_pairs(n, kernel_exponent, samples, seed, chunk=1_000_000):
    """Plain Monte Carlo of the double integral of |x-y|^(-q) over B x B."""
    from nlshape.ball import unit_ball_volume

    rng = np.random.default_rng(seed)
    total = 0.0
    total_sq = 0.0
    done = 0
    while done < samples:
        m = min(chunk, samples - done)
        pts = []
        for _ in range(2):
            u = rng.standard_normal((m, n))
            u /= np.linalg.norm(u, axis=1, keepdims=True)
            pts.append(rng.random(m) ** (1.0 / n) * u.T)
        f = np.sum((pts[0] - pts[1]) ** 2, axis=0) ** (-0.5 * kernel_exponent)
        total += f.sum()
        total_sq += (f * f).sum()
        done += m
    vol2 = unit_ball_volume(n) ** 2
    mean = total / samples
    var = max(total_sq / samples - mean * mean, 0.0)
    return vol2 * mean, vol2 * np.sqrt(var / samples)
