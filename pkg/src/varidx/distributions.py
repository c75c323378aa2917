"""Continuous densities, finite pmfs and sampling used across the package.

Every continuous law is a :class:`Density` with a declared open-interval
support and a pdf-monotonicity flag.  Evaluation methods are vectorized
over numpy arrays and return scalars for scalar input.  Values are
immutable after construction; all operations here are pure functions.
"""

from __future__ import annotations

import math
from typing import Callable, Sequence

import numpy as np

from .errors import (
    InconsistentTransformError,
    InvalidParameterError,
    NotInvertibleError,
    OutOfRangeError,
    UnsupportedSamplerError,
)

__all__ = [
    "Density",
    "Exponential",
    "Power",
    "Uniform",
    "Weibull2",
    "Lognormal",
    "KernelDensity",
    "LogKernelDensity",
    "Pushforward",
    "FinitePMF",
    "SampleData",
    "make_distribution",
    "make_pmf",
    "inverse_pdf",
    "push_forward",
    "sample",
]

_LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)
_TWO_OVER_SQRT_PI = 2.0 / math.sqrt(math.pi)


# ----------------------------------------------------------------------
# Error function (vectorized, double precision, no external dependency)
# ----------------------------------------------------------------------

def _erf_series(x):
    """erf for 0 <= x < 2 via the positive-term power series."""
    x = np.asarray(x, dtype=float)
    acc = x.copy()
    term = x.copy()
    xx2 = 2.0 * x * x
    for n in range(1, 96):
        term = term * xx2 / (2.0 * n + 1.0)
        acc += term
        if float(term.max()) < 1e-18 * float(acc.max()):
            break
    return _TWO_OVER_SQRT_PI * np.exp(-x * x) * acc


def _erfc_cf(x):
    """erfc for x >= 2 via the classical continued fraction (Lentz form)."""
    x = np.asarray(x, dtype=float)
    # f = 1 / (x + 1/(2x + 2/(x + 3/(2x + ...)))), numerators 1,2,3,...
    f = x.copy()
    c = x.copy()
    d = np.zeros_like(x)
    for k in range(1, 128):
        b = 2.0 * x if k % 2 else x
        d = 1.0 / (b + k * d)
        c = b + k / c
        delta = c * d
        f = f * delta
        if float(np.abs(delta - 1.0).max()) < 1e-16:
            break
    with np.errstate(under="ignore"):
        return np.exp(-x * x) / math.sqrt(math.pi) / f


def _erfc(x):
    x = np.asarray(x, dtype=float)
    out = np.empty_like(x)
    neg = x < 0.0
    ax = np.abs(x)
    # Process in ranges so the early-exit loops run only as long as the
    # slowest element of each range requires.
    for sel, fn in (
        (ax < 1.0, lambda v: 1.0 - _erf_series(v)),
        ((ax >= 1.0) & (ax < 2.0), lambda v: 1.0 - _erf_series(v)),
        ((ax >= 2.0) & (ax < 4.0), _erfc_cf),
        (ax >= 4.0, _erfc_cf),
    ):
        if np.any(sel):
            out[sel] = fn(ax[sel])
    out[neg] = 2.0 - out[neg]
    return out


def _norm_cdf(z):
    return 0.5 * _erfc(-np.asarray(z, dtype=float) / math.sqrt(2.0))


def _norm_ppf(p):
    """Standard normal quantile by bisection (exact to float resolution)."""
    p = np.asarray(p, dtype=float)
    lo = np.full(p.shape, -40.0)
    hi = np.full(p.shape, 40.0)
    for _ in range(100):
        mid = 0.5 * (lo + hi)
        below = _norm_cdf(mid) < p
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    return 0.5 * (lo + hi)


def _scalarized(x, compute):
    """Run ``compute`` on a 1-D view of ``x``; mirror scalar inputs back."""
    arr = np.asarray(x, dtype=float)
    scalar = arr.ndim == 0
    out = compute(np.atleast_1d(arr))
    return float(out[0]) if scalar else out


# ----------------------------------------------------------------------
# Continuous densities
# ----------------------------------------------------------------------

class Density:
    """An evaluable continuous probability density.

    Attributes
    ----------
    family : str
        Family tag (``exponential``, ``power``, ``uniform``, ``weibull2``,
        ``lognormal``, ``kde``, ``pushforward``).
    params : tuple of float
        Family-specific parameters.
    support : (float, float)
        Open interval carrying all mass; endpoints may be infinite.
    monotonicity : str
        ``increasing`` / ``decreasing`` / ``neither`` / ``unknown`` flag
        for the pdf on its support.
    """

    family = "density"

    def __init__(self, params, support, monotonicity):
        self.params = tuple(float(p) for p in params)
        self.support = (float(support[0]), float(support[1]))
        self.monotonicity = monotonicity

    # Subclasses implement the underscored hooks on in-support points only.
    def _pdf(self, x):
        raise NotImplementedError

    def _log_pdf(self, x):
        with np.errstate(divide="ignore"):
            return np.log(self._pdf(x))

    def _cdf(self, x):
        raise NotImplementedError

    _quantile: Callable | None = None

    def pdf(self, x):
        def compute(xv):
            lo, hi = self.support
            out = np.zeros(xv.shape)
            m = (xv > lo) & (xv < hi)
            if m.any():
                out[m] = self._pdf(xv[m])
            return out

        return _scalarized(x, compute)

    def log_pdf(self, x):
        def compute(xv):
            lo, hi = self.support
            out = np.full(xv.shape, -math.inf)
            m = (xv > lo) & (xv < hi)
            if m.any():
                out[m] = self._log_pdf(xv[m])
            return out

        return _scalarized(x, compute)

    def cdf(self, x):
        def compute(xv):
            lo, hi = self.support
            out = np.zeros(xv.shape)
            out[xv >= hi] = 1.0
            m = (xv > lo) & (xv < hi)
            if m.any():
                out[m] = np.clip(self._cdf(xv[m]), 0.0, 1.0)
            return out

        return _scalarized(x, compute)

    def survival(self, x):
        return 1.0 - self.cdf(x)

    @property
    def has_quantile(self) -> bool:
        return self._quantile is not None

    def quantile(self, q):
        if self._quantile is None:
            raise UnsupportedSamplerError(
                f"family '{self.family}' has no quantile function"
            )

        def compute(qv):
            if np.any((qv <= 0.0) | (qv >= 1.0)):
                raise OutOfRangeError("quantile argument must lie in (0, 1)")
            return self._quantile(qv)

        return _scalarized(q, compute)

    def pdf_range(self):
        """(inf, sup) of the pdf over the support.

        Families with known extremes override this; the generic version
        probes a 1001-point reference grid and is therefore approximate.
        """
        vals = self.pdf(self._reference_grid(1001))
        return (float(vals.min()), float(vals.max()))

    def _reference_grid(self, n: int) -> np.ndarray:
        """Interior points spread over the support for probing/spot checks."""
        lo, hi = self.support
        if math.isfinite(lo) and math.isfinite(hi):
            frac = np.linspace(1.0 / (n + 1), n / (n + 1), n)
            return lo + (hi - lo) * frac
        if self.has_quantile:
            return self.quantile(np.linspace(0.005, 0.995, n))
        t = np.linspace(0.01, 0.99, n)
        if math.isfinite(lo):
            return lo + t / (1.0 - t)
        if math.isfinite(hi):
            return hi - t[::-1] / (1.0 - t[::-1])
        return t / (1.0 - t) - (1.0 - t) / t

    def same_law(self, other) -> bool:
        """True when both objects denote the identical distribution."""
        return (
            type(self) is type(other)
            and self.params == other.params
            and self.support == other.support
        )

    def __repr__(self):
        inner = ", ".join(f"{p:g}" for p in self.params)
        return f"{type(self).__name__}({inner})"


class Exponential(Density):
    """pdf lambda * exp(-lambda x) on (0, inf); strictly decreasing."""

    family = "exponential"

    def __init__(self, rate):
        rate = float(rate)
        if not (math.isfinite(rate) and rate > 0.0):
            raise InvalidParameterError(
                f"exponential rate must be finite and > 0, got {rate}"
            )
        super().__init__((rate,), (0.0, math.inf), "decreasing")
        self.rate = rate

    def _pdf(self, x):
        return self.rate * np.exp(-self.rate * x)

    def _log_pdf(self, x):
        return math.log(self.rate) - self.rate * x

    def _cdf(self, x):
        return -np.expm1(-self.rate * x)

    def _quantile(self, q):
        return -np.log1p(-q) / self.rate

    def pdf_range(self):
        return (0.0, self.rate)


class Power(Density):
    """pdf alpha * x**(alpha-1) on (0, 1); uniform exactly at alpha = 1."""

    family = "power"

    def __init__(self, alpha):
        alpha = float(alpha)
        if not (math.isfinite(alpha) and alpha > 0.0):
            raise InvalidParameterError(
                f"power exponent must be finite and > 0, got {alpha}"
            )
        if alpha > 1.0:
            mono = "increasing"
        elif alpha < 1.0:
            mono = "decreasing"
        else:
            mono = "neither"
        super().__init__((alpha,), (0.0, 1.0), mono)
        self.alpha = alpha

    def _pdf(self, x):
        return self.alpha * x ** (self.alpha - 1.0)

    def _log_pdf(self, x):
        return math.log(self.alpha) + (self.alpha - 1.0) * np.log(x)

    def _cdf(self, x):
        return x**self.alpha

    def _quantile(self, q):
        return q ** (1.0 / self.alpha)

    def pdf_range(self):
        if self.alpha > 1.0:
            return (0.0, self.alpha)
        if self.alpha < 1.0:
            return (self.alpha, math.inf)
        return (1.0, 1.0)


class Uniform(Density):
    """Constant density on a bounded interval (lo, hi)."""

    family = "uniform"

    def __init__(self, lo, hi):
        lo, hi = float(lo), float(hi)
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise InvalidParameterError("uniform endpoints must be finite")
        if not lo < hi:
            raise InvalidParameterError(
                f"uniform requires lo < hi, got ({lo}, {hi})"
            )
        super().__init__((lo, hi), (lo, hi), "neither")
        self._height = 1.0 / (hi - lo)

    def _pdf(self, x):
        return np.full(x.shape, self._height)

    def _log_pdf(self, x):
        return np.full(x.shape, math.log(self._height))

    def _cdf(self, x):
        lo, hi = self.support
        return (x - lo) / (hi - lo)

    def _quantile(self, q):
        lo, hi = self.support
        return lo + q * (hi - lo)

    def pdf_range(self):
        return (self._height, self._height)


class Weibull2(Density):
    """pdf lambda * alpha * x**(alpha-1) * exp(-lambda x**alpha) on (0, inf).

    Shape-rate parameterization: params are (shape, rate).
    """

    family = "weibull2"

    def __init__(self, shape, rate):
        shape, rate = float(shape), float(rate)
        if not (math.isfinite(shape) and shape > 0.0):
            raise InvalidParameterError(
                f"weibull2 shape must be finite and > 0, got {shape}"
            )
        if not (math.isfinite(rate) and rate > 0.0):
            raise InvalidParameterError(
                f"weibull2 rate must be finite and > 0, got {rate}"
            )
        mono = "decreasing" if shape <= 1.0 else "neither"
        super().__init__((shape, rate), (0.0, math.inf), mono)
        self.shape = shape
        self.rate = rate

    def _log_pdf(self, x):
        a, lam = self.shape, self.rate
        with np.errstate(over="ignore"):
            xa = x**a
        return math.log(lam) + math.log(a) + (a - 1.0) * np.log(x) - lam * xa

    def _pdf(self, x):
        with np.errstate(under="ignore"):
            return np.exp(self._log_pdf(x))

    def _cdf(self, x):
        with np.errstate(over="ignore"):
            return -np.expm1(-self.rate * x**self.shape)

    def _quantile(self, q):
        return (-np.log1p(-q) / self.rate) ** (1.0 / self.shape)

    def pdf_range(self):
        a, lam = self.shape, self.rate
        if a < 1.0:
            return (0.0, math.inf)
        if a == 1.0:
            return (0.0, lam)
        mode = ((a - 1.0) / (a * lam)) ** (1.0 / a)
        return (0.0, float(self.pdf(mode)))


class Lognormal(Density):
    """pdf of exp(N(mu, sigma^2)) on (0, inf); unimodal, not monotone."""

    family = "lognormal"

    def __init__(self, mu, sigma):
        mu, sigma = float(mu), float(sigma)
        if not math.isfinite(mu):
            raise InvalidParameterError(f"lognormal mu must be finite, got {mu}")
        if not (math.isfinite(sigma) and sigma > 0.0):
            raise InvalidParameterError(
                f"lognormal sigma must be finite and > 0, got {sigma}"
            )
        super().__init__((mu, sigma), (0.0, math.inf), "neither")
        self.mu = mu
        self.sigma = sigma

    def _log_pdf(self, x):
        logx = np.log(x)
        z = (logx - self.mu) / self.sigma
        return -0.5 * z * z - logx - math.log(self.sigma) - _LOG_SQRT_2PI

    def _pdf(self, x):
        with np.errstate(under="ignore"):
            return np.exp(self._log_pdf(x))

    def _cdf(self, x):
        return _norm_cdf((np.log(x) - self.mu) / self.sigma)

    def _quantile(self, q):
        return np.exp(self.mu + self.sigma * _norm_ppf(q))

    def pdf_range(self):
        mode = math.exp(self.mu - self.sigma**2)
        return (0.0, float(self.pdf(mode)))


class KernelDensity(Density):
    """Gaussian-kernel mixture renormalized to a finite reported interval."""

    family = "kde"

    def __init__(self, points, bandwidth, support):
        pts = np.sort(np.asarray(points, dtype=float).ravel())
        if pts.size < 2:
            raise InvalidParameterError("kde needs at least two data points")
        bandwidth = float(bandwidth)
        if not (math.isfinite(bandwidth) and bandwidth > 0.0):
            raise InvalidParameterError(
                f"kde bandwidth must be finite and > 0, got {bandwidth}"
            )
        lo, hi = float(support[0]), float(support[1])
        if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
            raise InvalidParameterError("kde support must be a finite interval")
        super().__init__((bandwidth,), (lo, hi), "neither")
        self.points = pts
        self.points.setflags(write=False)
        self.bandwidth = bandwidth
        self._cdf_lo = float(self._mix_cdf(np.array([lo]))[0])
        mass = float(self._mix_cdf(np.array([hi]))[0]) - self._cdf_lo
        if mass <= 0.0:
            raise InvalidParameterError("kde support interval carries no mass")
        self._mass = mass

    def _blocks(self, x):
        block = max(1, int(2e7) // max(1, self.points.size))
        for i in range(0, x.size, block):
            yield i, x[i : i + block]

    def _mix_pdf(self, x):
        out = np.empty(x.shape)
        h = self.bandwidth
        for i, seg in self._blocks(x):
            z = (seg[:, None] - self.points[None, :]) / h
            with np.errstate(under="ignore"):
                k = np.exp(-0.5 * z * z)
            out[i : i + seg.size] = k.mean(axis=1) / (h * math.sqrt(2.0 * math.pi))
        return out

    def _mix_cdf(self, x):
        # Kernels more than 9 bandwidths away saturate to 0/1 far below
        # double precision; the centers are sorted, so only the window
        # around each query point needs the normal cdf.
        pts = self.points
        h = self.bandwidth
        n = pts.size
        win = 9.0 * h
        flat = x.ravel()
        out = np.empty(flat.shape)
        for i, q in enumerate(flat):
            lo = int(np.searchsorted(pts, q - win))
            hi = int(np.searchsorted(pts, q + win))
            acc = float(lo)
            if hi > lo:
                acc += float(_norm_cdf((q - pts[lo:hi]) / h).sum())
            out[i] = acc / n
        return out.reshape(x.shape)

    def _pdf(self, x):
        return self._mix_pdf(x) / self._mass

    def _cdf(self, x):
        return (self._mix_cdf(x) - self._cdf_lo) / self._mass

    def same_law(self, other) -> bool:
        return (
            isinstance(other, KernelDensity)
            and self.bandwidth == other.bandwidth
            and self.support == other.support
            and np.array_equal(self.points, other.points)
        )


class LogKernelDensity(Density):
    """Positive-support kernel estimate: Gaussian KDE of the log data,
    mapped back through exp.

    This is the natural estimator for lifetime-style data: it cannot
    leak mass below zero and adapts its local width to the scale of the
    observations.  ``bandwidth`` is the kernel width on the log scale.
    """

    family = "kde"

    def __init__(self, points, bandwidth, log_support=None):
        pts = np.asarray(points, dtype=float).ravel()
        if np.any(pts <= 0.0):
            raise InvalidParameterError(
                "log-domain kde requires strictly positive data"
            )
        logs = np.log(pts)
        if log_support is None:
            h = float(bandwidth)
            log_support = (logs.min() - 4.0 * h, logs.max() + 4.0 * h)
        self._inner = KernelDensity(logs, bandwidth, log_support)
        lo, hi = math.exp(log_support[0]), math.exp(log_support[1])
        super().__init__((float(bandwidth),), (lo, hi), "neither")
        self.points = np.sort(pts)
        self.points.setflags(write=False)
        self.bandwidth = float(bandwidth)

    def _pdf(self, x):
        return self._inner.pdf(np.log(x)) / x

    def _log_pdf(self, x):
        logx = np.log(x)
        return self._inner.log_pdf(logx) - logx

    def _cdf(self, x):
        return self._inner.cdf(np.log(x))

    def same_law(self, other) -> bool:
        return (
            isinstance(other, LogKernelDensity)
            and self._inner.same_law(other._inner)
        )


class Pushforward(Density):
    """Law of phi(X) for a strictly monotone differentiable map phi."""

    family = "pushforward"

    _CHECK_POINTS = 100
    _CHECK_TOL = 1e-8

    def __init__(self, base: Density, phi, phi_inv, phi_deriv):
        grid = base._reference_grid(self._CHECK_POINTS)
        mapped = np.asarray(phi(grid), dtype=float)
        back = np.asarray(phi_inv(mapped), dtype=float)
        if not np.all(np.isfinite(mapped)):
            raise InvalidParameterError("phi produced non-finite values")
        worst = float(np.max(np.abs(back - grid)))
        if not worst <= self._CHECK_TOL:
            raise InconsistentTransformError(
                f"phi_inv(phi(x)) deviates from x by {worst:.3e} on the "
                f"check grid (tolerance {self._CHECK_TOL:g})"
            )
        steps = np.diff(mapped)
        if np.all(steps > 0.0):
            increasing = True
        elif np.all(steps < 0.0):
            increasing = False
        else:
            raise InvalidParameterError("phi must be strictly monotone")
        deriv = np.asarray(phi_deriv(grid), dtype=float)
        if np.any(deriv == 0.0) or not np.all(np.isfinite(deriv)):
            raise InvalidParameterError(
                "phi_deriv must be finite and nonzero on the support"
            )
        slopes = steps / np.diff(grid)
        mids = 0.5 * (deriv[1:] + deriv[:-1])
        rel = np.abs(slopes - mids) / np.maximum(np.abs(slopes), 1e-12)
        if float(np.median(rel)) > 0.05:
            raise InconsistentTransformError(
                "phi_deriv disagrees with finite differences of phi"
            )

        a = _map_endpoint(phi, base.support[0], grid[0], mapped[0])
        b = _map_endpoint(phi, base.support[1], grid[-1], mapped[-1])
        lo, hi = (a, b) if a < b else (b, a)
        super().__init__((), (lo, hi), "unknown")
        self.base = base
        self.phi = phi
        self.phi_inv = phi_inv
        self.phi_deriv = phi_deriv
        self.increasing = increasing

    def _pull_back(self, x):
        u = np.asarray(self.phi_inv(x), dtype=float)
        blo, bhi = self.base.support
        # Guard against roundoff pushing pre-images a hair outside.
        return np.clip(u, np.nextafter(blo, bhi), np.nextafter(bhi, blo))

    def _pdf(self, x):
        u = self._pull_back(x)
        return self.base.pdf(u) / np.abs(np.asarray(self.phi_deriv(u), float))

    def _log_pdf(self, x):
        u = self._pull_back(x)
        return self.base.log_pdf(u) - np.log(
            np.abs(np.asarray(self.phi_deriv(u), float))
        )

    def _cdf(self, x):
        u = self._pull_back(x)
        return self.base.cdf(u) if self.increasing else self.base.survival(u)

    def same_law(self, other) -> bool:
        return self is other


def _map_endpoint(phi, endpoint, near_x, near_y):
    """Image of a support endpoint under phi (inf endpoints included)."""
    try:
        val = float(phi(endpoint))
    except (OverflowError, ValueError, ZeroDivisionError):
        val = math.nan
    if not math.isnan(val):
        return val
    # phi chokes on the endpoint itself; probe a sequence approaching it.
    if math.isinf(endpoint):
        xs = near_x + math.copysign(1.0, endpoint) * np.geomspace(1.0, 1e12, 16)
    else:
        xs = endpoint + (near_x - endpoint) * np.geomspace(1e-12, 1.0, 16)
    ys = np.asarray([float(phi(v)) for v in xs], dtype=float)
    last, prev = ys[-1 if math.isinf(endpoint) else 0], near_y
    if abs(last) > 1e12 and abs(last) > 2.0 * abs(prev):
        return math.copysign(math.inf, last)
    return float(last)


# ----------------------------------------------------------------------
# Finite pmfs
# ----------------------------------------------------------------------

class FinitePMF:
    """Probability mass function on a finite ordered support."""

    def __init__(self, labels: Sequence, probs, family: str = "pmf", params=()):
        labels = tuple(labels)
        probs = np.asarray(probs, dtype=float).ravel()
        if len(labels) != probs.size:
            raise InvalidParameterError(
                f"{len(labels)} labels but {probs.size} probabilities"
            )
        if probs.size == 0:
            raise InvalidParameterError("pmf needs at least one outcome")
        if np.any(probs < 0.0):
            raise InvalidParameterError("probabilities must be nonnegative")
        total = float(probs.sum())
        if abs(total - 1.0) > 1e-12:
            raise InvalidParameterError(
                f"probabilities sum to {total!r}, expected 1 within 1e-12"
            )
        self.labels = labels
        self.probs = probs
        self.probs.setflags(write=False)
        self.family = family
        self.params = tuple(float(p) for p in params)

    def same_law(self, other) -> bool:
        return (
            isinstance(other, FinitePMF)
            and self.labels == other.labels
            and np.array_equal(self.probs, other.probs)
        )

    def __repr__(self):
        return f"FinitePMF({self.family}, n={len(self.labels)})"


def _check_integer(value, name):
    v = float(value)
    if not (math.isfinite(v) and v == int(v)):
        raise InvalidParameterError(f"{name} must be an integer, got {value}")
    return int(v)


def make_pmf(family: str, params) -> FinitePMF:
    """Construct a finite pmf: binomial, beta_binomial, discrete_uniform
    or empirical (counts are normalized by their total)."""
    params = list(params)
    if family == "binomial":
        if len(params) != 2:
            raise InvalidParameterError("binomial takes (n, p)")
        n = _check_integer(params[0], "binomial n")
        p = float(params[1])
        if n < 1:
            raise InvalidParameterError(f"binomial n must be >= 1, got {n}")
        if not 0.0 < p < 1.0:
            raise InvalidParameterError(f"binomial p must be in (0, 1), got {p}")
        k = np.arange(n + 1)
        logp = (
            np.array([math.lgamma(n + 1) - math.lgamma(i + 1) - math.lgamma(n - i + 1) for i in k])
            + k * math.log(p)
            + (n - k) * math.log1p(-p)
        )
        probs = np.exp(logp)
        return FinitePMF(tuple(k.tolist()), probs / probs.sum(), "binomial", (n, p))
    if family == "beta_binomial":
        if len(params) != 3:
            raise InvalidParameterError("beta_binomial takes (n, alpha, beta)")
        n = _check_integer(params[0], "beta_binomial n")
        a, b = float(params[1]), float(params[2])
        if n < 1:
            raise InvalidParameterError(f"beta_binomial n must be >= 1, got {n}")
        if not (a > 0.0 and b > 0.0):
            raise InvalidParameterError(
                f"beta_binomial alpha and beta must be > 0, got ({a}, {b})"
            )
        k = np.arange(n + 1)

        def lbeta(x, y):
            return math.lgamma(x) + math.lgamma(y) - math.lgamma(x + y)

        logp = np.array(
            [
                math.lgamma(n + 1)
                - math.lgamma(i + 1)
                - math.lgamma(n - i + 1)
                + lbeta(i + a, n - i + b)
                - lbeta(a, b)
                for i in k
            ]
        )
        probs = np.exp(logp)
        return FinitePMF(
            tuple(k.tolist()), probs / probs.sum(), "beta_binomial", (n, a, b)
        )
    if family == "discrete_uniform":
        if len(params) != 1:
            raise InvalidParameterError("discrete_uniform takes (k,)")
        k = _check_integer(params[0], "discrete_uniform k")
        if k < 2:
            raise InvalidParameterError(f"discrete_uniform k must be >= 2, got {k}")
        return FinitePMF(
            tuple(range(k)), np.full(k, 1.0 / k), "discrete_uniform", (k,)
        )
    if family == "empirical":
        counts = np.asarray(params, dtype=float).ravel()
        if counts.size == 0:
            raise InvalidParameterError("empirical counts must be non-empty")
        if np.any(counts < 0.0):
            raise InvalidParameterError("empirical counts must be nonnegative")
        total = counts.sum()
        if not total > 0.0:
            raise InvalidParameterError("empirical counts must have positive total")
        return FinitePMF(
            tuple(range(counts.size)), counts / total, "empirical", tuple(counts)
        )
    raise InvalidParameterError(f"unknown pmf family '{family}'")


# ----------------------------------------------------------------------
# Sample data
# ----------------------------------------------------------------------

class SampleData:
    """Ordered list of real observations with cached summary statistics.

    ``variance`` uses the n-1 divisor and is 0.0 for a single
    observation; ``log_mean`` is None unless all observations are
    strictly positive.
    """

    def __init__(self, values):
        arr = np.asarray(values, dtype=float).ravel().copy()
        if arr.size < 1:
            raise InvalidParameterError("need at least one observation")
        if not np.all(np.isfinite(arr)):
            raise InvalidParameterError("observations must be finite")
        arr.setflags(write=False)
        self.values = arr
        self.n = int(arr.size)
        self.mean = float(arr.mean())
        self.variance = float(arr.var(ddof=1)) if self.n >= 2 else 0.0
        self.log_mean = float(np.log(arr).mean()) if np.all(arr > 0.0) else None

    def __len__(self):
        return self.n

    def __repr__(self):
        return f"SampleData(n={self.n}, mean={self.mean:.6g})"


# ----------------------------------------------------------------------
# Operations
# ----------------------------------------------------------------------

_FAMILIES = {
    "exponential": (Exponential, 1),
    "exp": (Exponential, 1),
    "power": (Power, 1),
    "uniform": (Uniform, 2),
    "weibull2": (Weibull2, 2),
    "w2": (Weibull2, 2),
    "lognormal": (Lognormal, 2),
}


def make_distribution(family: str, params) -> Density:
    """Construct a parametric density by family tag and parameter list."""
    if family in ("kde", "pushforward"):
        raise InvalidParameterError(
            f"family '{family}' is built by its dedicated constructor, "
            "not from a bare parameter list"
        )
    try:
        cls, arity = _FAMILIES[family]
    except KeyError:
        raise InvalidParameterError(f"unknown family '{family}'") from None
    params = tuple(params)
    if len(params) != arity:
        raise InvalidParameterError(
            f"family '{family}' takes {arity} parameter(s), got {len(params)}"
        )
    return cls(*params)


def push_forward(d: Density, phi, phi_inv, phi_deriv) -> Density:
    """Density of phi(X) when X ~ d, for strictly monotone phi."""
    return Pushforward(d, phi, phi_inv, phi_deriv)


def inverse_pdf(d: Density, z) -> float:
    """Solve pdf(x) = z for densities with strictly monotone pdf.

    Exponential and power families use their closed-form inverses; any
    other monotone density falls back to bisection on the log-pdf.
    """
    if d.monotonicity not in ("increasing", "decreasing"):
        raise NotInvertibleError(
            f"pdf of family '{d.family}' is not strictly monotone "
            f"(flag: {d.monotonicity})"
        )
    z = float(z)
    if not z > 0.0:
        raise OutOfRangeError(f"pdf level must be positive, got {z}")
    lo_r, hi_r = d.pdf_range()
    if not lo_r <= z <= hi_r:
        raise OutOfRangeError(
            f"pdf level {z:g} outside attainable range ({lo_r:g}, {hi_r:g})"
        )

    if isinstance(d, Exponential):
        return -math.log(z / d.rate) / d.rate
    if isinstance(d, Power):
        return (z / d.alpha) ** (1.0 / (d.alpha - 1.0))

    return _bisect_pdf_level(d, z)


def _bisect_pdf_level(d: Density, z: float) -> float:
    lo, hi = d.support
    target = math.log(z)
    decreasing = d.monotonicity == "decreasing"

    if math.isinf(hi) or math.isinf(lo):
        # Bisect in t-space, x = lo + t/(1-t) (finite lo assumed: all
        # monotone families here live on a half line).
        def x_of(t):
            return lo + t / (1.0 - t)

        t_lo, t_hi = 1e-300, 1.0 - 1e-16
    else:

        def x_of(t):
            return t

        t_lo, t_hi = (
            np.nextafter(lo, hi),
            np.nextafter(hi, lo),
        )

    def g(t):
        return float(d.log_pdf(x_of(t))) - target

    g_lo = g(t_lo)
    # For a decreasing pdf, g goes from >=0 at the left to <0 at the right.
    sign = 1.0 if decreasing else -1.0
    if sign * g_lo < 0.0:
        return float(x_of(t_lo))
    a, b = t_lo, t_hi
    for _ in range(200):
        mid = 0.5 * (a + b)
        if not a < mid < b:
            break
        if sign * g(mid) >= 0.0:
            a = mid
        else:
            b = mid
    return float(x_of(0.5 * (a + b)))


def _cdf_level(d: Density, p: float) -> float:
    """Generic cdf inversion by bisection (used for envelope trimming)."""
    lo, hi = d.support
    if math.isinf(hi) or math.isinf(lo):

        def x_of(t):
            if math.isinf(hi) and math.isinf(lo):
                return t / (1.0 - t) - (1.0 - t) / t
            if math.isinf(hi):
                return lo + t / (1.0 - t)
            return hi - t / (1.0 - t)

        a, b = 1e-12, 1.0 - 1e-12
        increasing = not (math.isinf(lo) and not math.isinf(hi))
    else:

        def x_of(t):
            return t

        a, b = lo, hi
        increasing = True

    for _ in range(120):
        mid = 0.5 * (a + b)
        cm = float(d.cdf(x_of(mid)))
        go_right = cm < p if increasing else cm > p
        if go_right:
            a = mid
        else:
            b = mid
    return float(x_of(0.5 * (a + b)))


def sample(d: Density, n: int, seed: int) -> SampleData:
    """Draw n reproducible samples from d.

    Families with a quantile are sampled by inverse transform; kde and
    pushforward densities use accept-reject with a uniform envelope over
    a quantile-trimmed interval.
    """
    n = int(n)
    if n < 1:
        raise InvalidParameterError(f"sample size must be >= 1, got {n}")
    rng = np.random.default_rng(seed)
    if isinstance(d, Lognormal):
        # Inverse transform through the normal quantile would work but is
        # needlessly slow; exponentiate normal draws instead.
        return SampleData(np.exp(d.mu + d.sigma * rng.standard_normal(n)))
    if d.has_quantile:
        u = rng.random(n)
        # random() can return exactly 0.0; nudge into the open interval.
        u[u == 0.0] = np.nextafter(0.0, 1.0)
        return SampleData(d.quantile(u))
    return SampleData(_accept_reject(d, n, rng))


def _accept_reject(d: Density, n: int, rng) -> np.ndarray:
    lo, hi = d.support
    a = lo if math.isfinite(lo) else _cdf_level(d, 1e-9)
    b = hi if math.isfinite(hi) else _cdf_level(d, 1.0 - 1e-9)
    grid = np.linspace(a, b, 4097)[1:-1]
    peak = float(d.pdf(grid).max())
    if peak <= 0.0:
        raise UnsupportedSamplerError("pdf vanishes on the proposal interval")
    # Detect an unbounded spike at a finite support endpoint.
    for endpoint in (lo, hi):
        if math.isfinite(endpoint):
            probe = endpoint + (1e-12 if endpoint == lo else -1e-12) * max(
                1.0, abs(endpoint), b - a
            )
            if float(d.pdf(probe)) > 50.0 * peak:
                raise UnsupportedSamplerError(
                    "pdf appears unbounded near the support boundary; "
                    "accept-reject envelope is unavailable"
                )
    envelope = 1.2 * peak
    out = np.empty(n)
    filled = 0
    while filled < n:
        want = n - filled
        batch = max(64, int(1.5 * want * envelope * (b - a)))
        xs = rng.uniform(a, b, batch)
        us = rng.uniform(0.0, envelope, batch)
        keep = xs[us < d.pdf(xs)]
        take = min(want, keep.size)
        out[filled : filled + take] = keep[:take]
        filled += take
    return out
