"""Finite-difference, quadrature and banded-solve helpers on uniform grids."""

import numpy as np
from scipy.integrate import cumulative_trapezoid, trapezoid
from scipy.linalg import LinAlgError, solve_banded

__all__ = [
    "ddz",
    "ddz_sbp",
    "sbp_weights",
    "second_difference",
    "cumtrapz0",
    "integrate",
    "solve_tridiagonal",
    "NumericalFailure",
]


class NumericalFailure(RuntimeError):
    """A linear solve produced a singular or non-finite result."""


# one-sided 5-point closures for the first two and last two samples
_LEFT0 = np.array([-25.0, 48.0, -36.0, 16.0, -3.0]) / 12.0
_LEFT1 = np.array([-3.0, -10.0, 18.0, -6.0, 1.0]) / 12.0


def ddz(f, dz):
    """Fourth-order first derivative of samples ``f`` with spacing ``dz``.

    Centered five-point stencil in the interior, one-sided five-point
    stencils on the two samples nearest each end.
    """
    f = np.asarray(f, dtype=float)
    if f.shape[-1] < 5:
        raise ValueError("need at least 5 samples for the 4th-order stencil")
    out = np.empty_like(f)
    out[..., 2:-2] = (f[..., :-4] - 8.0 * f[..., 1:-3] + 8.0 * f[..., 3:-1] - f[..., 4:]) / 12.0
    out[..., 0] = f[..., :5] @ _LEFT0
    out[..., 1] = f[..., :5] @ _LEFT1
    out[..., -1] = -(f[..., -1:-6:-1] @ _LEFT0)
    out[..., -2] = -(f[..., -1:-6:-1] @ _LEFT1)
    return out / dz


# diagonal-norm summation-by-parts closure, 4th order interior / 2nd order boundary
_SBP_BLOCK = np.array(
    [
        [-24.0 / 17.0, 59.0 / 34.0, -4.0 / 17.0, -3.0 / 34.0, 0.0, 0.0],
        [-1.0 / 2.0, 0.0, 1.0 / 2.0, 0.0, 0.0, 0.0],
        [4.0 / 43.0, -59.0 / 86.0, 0.0, 59.0 / 86.0, -4.0 / 43.0, 0.0],
        [3.0 / 98.0, 0.0, -59.0 / 98.0, 0.0, 32.0 / 49.0, -4.0 / 49.0],
    ]
)
SBP_NORM_EDGE = np.array([17.0 / 48.0, 59.0 / 48.0, 43.0 / 48.0, 49.0 / 48.0])


def ddz_sbp(f, dz):
    """First derivative with the diagonal-norm SBP operator.

    Same centered stencil as :func:`ddz` away from the ends; the four edge rows
    are chosen so that ``sbp_weights * ddz_sbp`` sums by parts exactly.
    """
    f = np.asarray(f, dtype=float)
    if f.shape[-1] < 12:
        raise ValueError("need at least 12 samples for the SBP operator")
    out = np.empty_like(f)
    out[..., 2:-2] = (f[..., :-4] - 8.0 * f[..., 1:-3] + 8.0 * f[..., 3:-1] - f[..., 4:]) / 12.0
    out[..., :4] = f[..., :6] @ _SBP_BLOCK.T
    out[..., -4:] = -(f[..., -1:-7:-1] @ _SBP_BLOCK.T)[..., ::-1]
    return out / dz


def sbp_weights(n, dz):
    """Quadrature weights of the SBP norm."""
    w = np.ones(n)
    w[:4] = SBP_NORM_EDGE
    w[-4:] = SBP_NORM_EDGE[::-1]
    return w * dz


def second_difference(f, dz):
    """Three-point second derivative; the two end samples are left as NaN."""
    f = np.asarray(f, dtype=float)
    out = np.full_like(f, np.nan)
    out[1:-1] = (f[:-2] - 2.0 * f[1:-1] + f[2:]) / dz**2
    return out


def cumtrapz0(f, dz, end_correction: bool = False):
    """Cumulative trapezoid integral from the first sample, starting at 0.

    With ``end_correction`` the leading Euler-Maclaurin term
    -dz^2/12 (f'(z) - f'(0)) is subtracted, raising the order from 2 to 4.
    """
    out = cumulative_trapezoid(f, dx=dz, initial=0.0)
    if end_correction:
        df = ddz(f, dz)
        out = out - dz**2 / 12.0 * (df - df[0])
    return out


def integrate(f, dz):
    """Composite trapezoid integral over the whole grid."""
    return float(trapezoid(f, dx=dz))


def solve_tridiagonal(lower, diag, upper, rhs):
    """Solve a tridiagonal system.

    ``lower[i]`` multiplies ``x[i-1]`` in row ``i`` (``lower[0]`` unused) and
    ``upper[i]`` multiplies ``x[i+1]`` (``upper[-1]`` unused).
    """
    n = len(diag)
    ab = np.zeros((3, n))
    ab[0, 1:] = upper[:-1]
    ab[1] = diag
    ab[2, :-1] = lower[1:]
    try:
        x = solve_banded((1, 1), ab, rhs, check_finite=True)
    except (LinAlgError, ValueError) as exc:
        raise NumericalFailure(f"tridiagonal solve failed: {exc}") from exc
    if not np.all(np.isfinite(x)):
        raise NumericalFailure("tridiagonal solve returned non-finite values")
    return x
