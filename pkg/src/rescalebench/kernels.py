"""Reconstruction kernels for the sampling-Kantorovich operator.

Two families are provided: central B-splines of order N (compact support
[-N/2, N/2], exact partition of unity) and Jackson-type kernels, which are
normalized even powers of sinc with unbounded support and polynomial
decay. Jackson kernels are truncated where their neglected tail mass drops
below a configurable tolerance; the normalization coefficient is obtained
by adaptive quadrature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np
from scipy.integrate import quad


class QuadratureError(ArithmeticError):
    """Adaptive quadrature failed to reach the requested tolerance."""


@dataclass(frozen=True, eq=False)
class Kernel1D:
    """A symmetric univariate kernel with unit integral.

    ``evaluate`` accepts scalars or arrays; the kernel is treated as zero
    for arguments beyond ``support_radius`` (exact for B-splines, a
    truncation for Jackson kernels).
    """

    name: str
    support_radius: float
    evaluate: Callable[[np.ndarray], np.ndarray]

    def __call__(self, x):
        return self.evaluate(x)


@dataclass(frozen=True, eq=False)
class Kernel2D:
    """Product kernel chi(x1, x2) = kx(x1) * ky(x2).

    ``kx`` applies to the first coordinate (image rows), ``ky`` to the
    second (columns).
    """

    kx: Kernel1D
    ky: Kernel1D

    def evaluate(self, x1, x2):
        return self.kx(x1) * self.ky(x2)

    @property
    def name(self) -> str:
        if self.kx.name == self.ky.name:
            return self.kx.name
        return f"{self.kx.name}x{self.ky.name}"


def bspline(N: int, x) -> np.ndarray:
    """Central B-spline of order N via the truncated-power form

        (1/(N-1)!) * sum_{i=0}^{N} (-1)^i C(N, i) (N/2 + x - i)_+^{N-1},

    compactly supported on [-N/2, N/2]. Vectorized over x.
    """
    if N < 1:
        raise ValueError(f"B-spline order must be >= 1, got {N}")
    x = np.asarray(x, dtype=np.float64)
    result = np.zeros_like(x)
    for i in range(N + 1):
        t = N / 2.0 + x - i
        pos = t > 0.0
        # 0^0 := 1 on the open support so N=1 gives the unit indicator
        term = np.where(pos, t, 0.0) ** (N - 1) if N > 1 else pos.astype(np.float64)
        result += ((-1) ** i * math.comb(N, i)) * term
    result /= math.factorial(N - 1)
    # the alternating sum telescopes to ~1e-13 crumbs outside the support
    return np.where(np.abs(x) < N / 2.0, result, 0.0)


def jackson_unnormalized(N: int, alpha: float, x) -> np.ndarray:
    """sinc^{2N}(x / (2*N*pi*alpha)) with sinc(t) = sin(pi t)/(pi t)."""
    if N < 1:
        raise ValueError(f"Jackson order must be >= 1, got {N}")
    if alpha < 1.0:
        raise ValueError(f"alpha must be >= 1, got {alpha}")
    x = np.asarray(x, dtype=np.float64)
    return np.sinc(x / (2.0 * N * math.pi * alpha)) ** (2 * N)


# Integrals below are evaluated in sinc units (t = x / (2 N pi alpha)), one
# panel per unit interval so every panel holds a single bump of sinc^{2N}.

def _sinc_power_panels(N: int, tail_bound: float = 1e-12):
    """Per-panel integrals of sinc^{2N} over [j, j+1] up to a cutoff whose
    analytic tail bound is below ``tail_bound``; returns (panels, errors)."""
    decay = 2 * N - 1
    cutoff = (math.pi ** (-2 * N) / (decay * tail_bound)) ** (1.0 / decay)
    cutoff = max(2.0, cutoff)
    f = lambda t: float(np.sinc(t)) ** (2 * N)
    panels, errors = [], []
    for j in range(int(math.ceil(cutoff))):
        v, e = quad(f, float(j), float(j + 1), epsabs=1e-13)
        panels.append(v)
        errors.append(e)
    return np.array(panels), np.array(errors)


@lru_cache(maxsize=None)
def _sinc_power_integral(N: int) -> float:
    """One-sided integral of sinc^{2N} over [0, inf), by panelwise adaptive
    quadrature with absolute tolerance 1e-9 on the doubled value."""
    if N == 1:
        # integral of sinc^2 over R is exactly 1; the x^-2 decay makes the
        # quadrature cutoff astronomically large, so use the exact value
        return 0.5
    panels, errors = _sinc_power_panels(N)
    if 2.0 * errors.sum() > 1e-9:
        raise QuadratureError(
            f"sinc^{2 * N} quadrature error {2 * errors.sum():.2e} exceeds 1e-9"
        )
    return float(panels.sum())


def normalization_coefficient(N: int, alpha: float) -> float:
    """The constant c_N that gives the Jackson kernel unit integral:
    1 / integral of sinc^{2N}(u / (2 N pi alpha)) over R."""
    if N < 1:
        raise ValueError(f"Jackson order must be >= 1, got {N}")
    if alpha < 1.0:
        raise ValueError(f"alpha must be >= 1, got {alpha}")
    scale = 2.0 * N * math.pi * alpha
    return 1.0 / (scale * 2.0 * _sinc_power_integral(N))


@lru_cache(maxsize=None)
def _jackson_tail_radius_sinc_units(N: int, tail_tol: float) -> float:
    """Smallest t on a 0.01 grid where the normalized two-sided tail mass of
    sinc^{2N} beyond t falls below ``tail_tol``."""
    total = 2.0 * _sinc_power_integral(N)
    step = 0.01
    f = lambda t: float(np.sinc(t)) ** (2 * N)
    acc = 0.0
    t = 0.0
    while True:
        remaining = max(total - 2.0 * acc, 0.0)
        if t > 0.0 and remaining / total <= tail_tol:
            return t
        if t > 1e6:
            raise QuadratureError(
                f"no truncation radius below t=1e6 for N={N}, tol={tail_tol}"
            )
        v, _ = quad(f, t, t + step, epsabs=1e-15)
        acc += v
        t += step


def jackson_support_radius(N: int, alpha: float, tail_tol: float = 1e-11) -> float:
    """Truncation radius T such that the normalized Jackson kernel mass
    outside [-T, T] is below ``tail_tol``."""
    t = _jackson_tail_radius_sinc_units(N, tail_tol)
    return t * 2.0 * N * math.pi * alpha


def bspline_kernel(N: int) -> Kernel1D:
    """Central B-spline kernel of order N (exact support N/2)."""
    if N < 1:
        raise ValueError(f"B-spline order must be >= 1, got {N}")
    return Kernel1D(
        name=f"bspline{N}",
        support_radius=N / 2.0,
        evaluate=lambda x, _n=N: bspline(_n, x),
    )


def jackson_kernel(N: int, alpha: float = 1.0, tail_tol: float = 1e-11) -> Kernel1D:
    """Normalized Jackson kernel of order N, truncated where its neglected
    tail mass is below ``tail_tol``.

    Small N means slow polynomial decay and a very wide truncation radius;
    N >= 6 keeps the radius practical.
    """
    if N < 2:
        raise ValueError(
            "Jackson kernels with N=1 decay like x^-2 and cannot be truncated "
            "at a practical radius; use N >= 2"
        )
    c = normalization_coefficient(N, alpha)
    radius = jackson_support_radius(N, alpha, tail_tol)
    return Kernel1D(
        name=f"jackson{N}" + (f"a{alpha:g}" if alpha != 1.0 else ""),
        support_radius=radius,
        evaluate=lambda x, _n=N, _a=alpha, _c=c: _c * jackson_unnormalized(_n, _a, x),
    )


def product_kernel(k: Kernel1D) -> Kernel2D:
    return Kernel2D(kx=k, ky=k)


def parse_kernel_spec(spec: str) -> Kernel2D:
    """Build a product kernel from a spec string.

    Accepted forms: ``jackson`` (N=12, alpha=1), ``jackson:N``,
    ``jackson:N,alpha``, ``bspline`` (N=3), ``bspline:N``.
    """
    spec = spec.strip().lower()
    family, _, args = spec.partition(":")
    fields = [a for a in args.split(",") if a] if args else []
    try:
        numbers = [float(a) for a in fields]
    except ValueError:
        raise ValueError(f"bad kernel spec {spec!r}: non-numeric parameter") from None
    if family == "jackson":
        if len(numbers) > 2:
            raise ValueError(f"bad kernel spec {spec!r}: expected jackson:N,alpha")
        n = int(numbers[0]) if numbers else 12
        alpha = numbers[1] if len(numbers) > 1 else 1.0
        return product_kernel(jackson_kernel(n, alpha))
    if family == "bspline":
        if len(numbers) > 1:
            raise ValueError(f"bad kernel spec {spec!r}: expected bspline:N")
        n = int(numbers[0]) if numbers else 3
        return product_kernel(bspline_kernel(n))
    raise ValueError(f"unknown kernel family {family!r} (use jackson or bspline)")
