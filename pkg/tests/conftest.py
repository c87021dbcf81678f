import numpy as np
import pytest

from stratmodes.background import AtmosphereParams, build_profile

PAPER_ALPHAS = (-0.1, 0.0, 0.1)

_ACCEPTANCE_LINES = []


def record_criterion(line: str):
    _ACCEPTANCE_LINES.append(line)


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def profile_cache():
    cache = {}

    def get(alphaH0=0.0, n=4096, h=6.0, gamma=1.4):
        key = (alphaH0, n, h, gamma)
        if key not in cache:
            cache[key] = build_profile(AtmosphereParams(gamma=gamma, alphaH0=alphaH0, h=h), n)
        return cache[key]

    return get


def smooth_field(z, coeffs, h):
    """Random-looking smooth field built from a few Gaussians with given coefficients."""
    out = np.zeros_like(z)
    for j, c in enumerate(coeffs):
        center = h * (j + 1) / (len(coeffs) + 1)
        out += c * np.exp(-((z - center) ** 2) / 0.25)
    return out


def observed_order(errors, ratio=2.0):
    e = np.asarray(errors, dtype=float)
    return np.log(e[:-1] / e[1:]) / np.log(ratio)
