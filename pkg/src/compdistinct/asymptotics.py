"""Analytic side: the smooth backbone f, the periodic fluctuation g and its harmonics.

    f(x) = sum_{m>=1} (1 - (1 - 2**-m)**(2**x))
    f(x + k) = x + k + c + g(x) + h(x) 2**(-x-k-1) + O(2**(-2x-2k)),  c = γ/ln2 - 1/2

with g of period 1 and mean zero,

    g(x) = -x - γ/ln2 + 1/2 - sum_{m<=0} exp(-2**(x-m)) + sum_{m>=1} (1 - exp(-2**(x-m)))
    h(x) = sum_m 4**(x-m) exp(-2**(x-m))

and E[D_n] = log2 n + γ/ln2 - 3/2 + g(log2 n) + o(1).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exact import distinct_geometric_series
from .gammafn import gamma
from .sampler import window_bounds

EULER_GAMMA = float(np.euler_gamma)
LN2 = math.log(2.0)
DEFAULT_TOLERANCE = 1e-13
EXP_CUTOFF = 745.0  # exp(-y) underflows to 0 beyond this


class SeriesTruncationError(RuntimeError):
    pass


@dataclass(frozen=True)
class SeriesConfig:
    tolerance: float = DEFAULT_TOLERANCE
    max_terms: int = 4096

    def __post_init__(self):
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")


@dataclass(frozen=True)
class AsymptoticConstants:
    euler_gamma: float = EULER_GAMMA
    ln2: float = LN2

    @property
    def c(self) -> float:
        return self.euler_gamma / self.ln2 - 0.5

    @property
    def theorem_constant(self) -> float:
        return self.c - 1.0


CONSTANTS = AsymptoticConstants()


@dataclass(frozen=True)
class PeriodicEval:
    x: float
    g_value: float
    h_value: float
    error_bound: float


@dataclass(frozen=True)
class FourierCoefficient:
    """``value`` is Γ(2πik/ln2)/ln2.

    With the convention g(x) = sum_k a_k exp(2πikx), the harmonic amplitude is
    ``a_k = -conj(value)``; both have the same modulus.
    """

    k: int
    value: complex

    @property
    def harmonic(self) -> complex:
        return -self.value.conjugate()


@dataclass(frozen=True)
class BoundTriple:
    a: float
    b: float
    lam: float

    def __post_init__(self):
        if not self.a > 0:
            raise ValueError(f"a must be positive, got {self.a}")
        if not self.b >= 0:
            raise ValueError(f"b must be non-negative, got {self.b}")
        if not self.lam * self.a > 0:
            raise ValueError("need lambda * a > 0")
        if not self.b / self.lam <= 0.5:
            raise ValueError("need b / lambda <= 1/2")


# -- f ---------------------------------------------------------------------

def eval_f(x: float, cfg: SeriesConfig = SeriesConfig()) -> float:
    """f(x); each term is at most 2**(x-m), so M >= x + log2(1/tol) terms suffice."""
    if x < 0:
        raise ValueError(f"x must be non-negative, got {x}")
    terms = math.ceil(x + math.log2(1.0 / cfg.tolerance)) + 1
    if terms > cfg.max_terms:
        raise SeriesTruncationError(f"f({x}) needs {terms} terms > {cfg.max_terms}")
    return distinct_geometric_series(2.0 ** x, cfg.tolerance)


# -- g and h ---------------------------------------------------------------

def _index_range(tolerance: float) -> tuple[int, int]:
    # on x in [0, 1): m <= -10 gives 2**(x-m) >= 1024 > EXP_CUTOFF
    hi = math.ceil(1.0 + math.log2(2.0 / tolerance))
    return -9, hi


def _g_reduced(x, tolerance: float):
    lo, hi = _index_range(tolerance)
    x = np.asarray(x, dtype=float)
    u = np.exp2(x[..., None] - np.arange(lo, hi + 1, dtype=float))
    left = np.where(np.arange(lo, hi + 1) <= 0, np.exp(-u), 0.0)
    right = np.where(np.arange(lo, hi + 1) >= 1, -np.expm1(-u), 0.0)
    # tail sum_{m>hi} (1 - exp(-u)) = 2**(x-hi) - r with 0 <= r <= 4**(x-hi)/6
    body = right.sum(axis=-1) - left.sum(axis=-1) + np.exp2(x - hi)
    return (0.5 - EULER_GAMMA / LN2) - x + body


def _h_reduced(x, tolerance: float):
    lo, _ = _index_range(tolerance)
    # tail sum_{m>M} 4**(x-m) = 4**(x-M)/3 <= tolerance
    hi = math.ceil(1.0 + 0.5 * math.log2(1.0 / (3.0 * tolerance)))
    x = np.asarray(x, dtype=float)
    e = x[..., None] - np.arange(lo, hi + 1, dtype=float)
    return (np.exp2(2 * e) * np.exp(-np.exp2(e))).sum(axis=-1)


def _frac(x):
    r = np.mod(np.asarray(x, dtype=float), 1.0)
    return np.where(r >= 1.0, 0.0, r)


def eval_g(x, tolerance: float = DEFAULT_TOLERANCE):
    """Periodic fluctuation g at ``x`` (scalar or array), from its own series."""
    out = _g_reduced(_frac(x), tolerance)
    return float(out) if np.ndim(out) == 0 else out


def eval_h(x, tolerance: float = DEFAULT_TOLERANCE):
    out = _h_reduced(_frac(x), tolerance)
    return float(out) if np.ndim(out) == 0 else out


def g_error_bound(x: float, tolerance: float = DEFAULT_TOLERANCE) -> float:
    """Certified truncation error of :func:`eval_g` at ``x``."""
    _, hi = _index_range(tolerance)
    xr = float(_frac(x))
    # remainder of the corrected right tail plus the flushed exp(-u), u > EXP_CUTOFF
    return 4.0 ** (xr - hi) / 6.0 + 2.0 * math.exp(-EXP_CUTOFF)


def periodic_eval(x: float, tolerance: float = DEFAULT_TOLERANCE) -> PeriodicEval:
    xr = float(_frac(x))
    return PeriodicEval(xr, eval_g(xr, tolerance), eval_h(xr, tolerance), g_error_bound(xr, tolerance))


# -- Fourier side ----------------------------------------------------------

def fourier_coefficient(k: int) -> FourierCoefficient:
    if k == 0:
        raise ValueError("k must be nonzero")
    return FourierCoefficient(k, gamma(2j * math.pi * k / LN2) / LN2)


def eval_g_fourier(x, K: int):
    """Truncated Fourier series of g using harmonics 1 <= |k| <= K."""
    if K < 1:
        raise ValueError("K must be positive")
    x = np.asarray(x, dtype=float)
    total = np.zeros(x.shape, dtype=complex)
    for k in range(1, K + 1):
        for kk in (k, -k):
            total = total + fourier_coefficient(kk).harmonic * np.exp(2j * math.pi * kk * x)
    scale = max(1e-300, float(np.max(np.abs(total))) if total.size else 0.0)
    if np.max(np.abs(total.imag), initial=0.0) > 1e-9 * scale + 1e-22:
        raise ArithmeticError("conjugate pairs failed to cancel")
    out = total.real
    return float(out) if out.ndim == 0 else out


# -- the Theorem and its pieces --------------------------------------------

def asymptotic_expectation(n: int) -> float:
    """log2 n + γ/ln2 - 3/2 + g(log2 n)."""
    if n < 2:
        raise ValueError(f"asymptote needs n >= 2, got {n}")
    x = math.log2(n)
    return x + CONSTANTS.theorem_constant + eval_g(x)


def _gauss_legendre(func, a: float, b: float, panels: int, order: int = 20) -> float:
    nodes, weights = np.polynomial.legendre.leggauss(order)
    edges = np.linspace(a, b, panels + 1)
    total = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        half = 0.5 * (hi - lo)
        u = lo + half * (nodes + 1.0)
        total += half * float(np.dot(weights, func(u)))
    return total


def euler_integral(panels: int = 16, upper: float = 60.0) -> float:
    """c0 * ln2 = -int_1^inf e^-u du/u + int_0^1 (1 - e^-u) du/u, by Gauss-Legendre.

    The first integral is cut at ``upper``; the dropped tail is below e^-upper.
    """
    outer = _gauss_legendre(lambda u: np.exp(-u) / u, 1.0, upper, panels)
    inner = _gauss_legendre(lambda u: -np.expm1(-u) / u, 0.0, 1.0, max(1, panels // 8))
    return inner - outer


def mean_constant_check(panels: int = 16) -> float:
    """|c0 - γ/ln2| with c0 from quadrature."""
    c0 = euler_integral(panels) / LN2
    return abs(c0 - EULER_GAMMA / LN2)


def check_sandwich_bounds(t: BoundTriple, rel_slack: float = 1e-12) -> dict[str, bool]:
    """exp(-2ab) <= (1 - b/λ)**(aλ) <= exp(-ab) and exp(-ab - ab²/λ) <= (1 - b/λ)**(aλ)."""
    a, b, lam = t.a, t.b, t.lam
    mid = math.exp(a * lam * math.log1p(-b / lam))
    lower = math.exp(-2.0 * a * b)
    upper = math.exp(-a * b)
    higher = math.exp(-a * b - a * b * b / lam)
    return {
        "lower_ok": lower <= mid * (1.0 + rel_slack),
        "upper_ok": mid <= upper * (1.0 + rel_slack),
        "higher_order_ok": higher <= mid * (1.0 + rel_slack),
    }


def bracket_sum(power: float, tolerance: float = DEFAULT_TOLERANCE) -> float:
    """sum_{m>=1} (1 - (1 - 2**-m)**power)."""
    return distinct_geometric_series(max(power, 0.0), tolerance)


def proposition1_profile(n: int) -> dict[str, float]:
    """f(log2(n/2)) with the lower and upper sums at the τ-window ends n0, n1."""
    w = window_bounds(n)
    return {
        "f_at_half_n": eval_f(math.log2(n / 2)),
        "bracket_low": bracket_sum(w.n0),
        "bracket_high": bracket_sum(w.n1),
    }


def refined_residual_ratio(x: float, k: int) -> float:
    """(f(x+k) - (x + k + c + g(x))) / (h(x) 2**(-x-k-1)); tends to 1."""
    residual = eval_f(x + k) - (x + k + CONSTANTS.c + eval_g(x))
    return residual / (eval_h(x) * 2.0 ** (-x - k - 1))
