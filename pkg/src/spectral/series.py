"""
Value types for spectral calculus on equispaced periodic grids.

Coefficients are stored in centered order: index 0 holds wavenumber
k = -m/2 and index m-1 holds k = m/2 - 1.  A series represents

    f(alpha) = sum_k c(k) exp(i k alpha),   k = -m/2 ... m/2 - 1.

All instances are immutable after construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple, Union

import numpy as np

from src.errors import DownsampleForbiddenError, InvalidGridError

TWO_PI = 2.0 * np.pi

Scalar = Union[int, float, complex]


def _check_even(n: int, minimum: int, what: str) -> None:
    if n < minimum or n % 2:
        raise InvalidGridError(f"{what} must be even and >= {minimum}, got {n}")


def _frozen(values: np.ndarray) -> np.ndarray:
    values = np.array(values, copy=True)
    values.setflags(write=False)
    return values


# ---------------------------------------------------------------------------
# Grid
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class UniformGrid:
    """Equispaced nodes alpha_j = j * 2pi / n on [0, 2pi)."""

    n: int

    def __post_init__(self) -> None:
        _check_even(int(self.n), 4, "grid size n")

    @property
    def spacing(self) -> float:
        return TWO_PI / self.n

    @property
    def nodes(self) -> np.ndarray:
        return np.arange(self.n) * (TWO_PI / self.n)


# ---------------------------------------------------------------------------
# Fourier series
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class FourierSeries:
    """Complex coefficients on wavenumbers -m/2 ... m/2 - 1 (centered order)."""

    coeffs: np.ndarray

    def __post_init__(self) -> None:
        c = np.asarray(self.coeffs, dtype=complex)
        if c.ndim != 1:
            raise InvalidGridError(f"coefficients must be one-dimensional, got shape {c.shape}")
        _check_even(c.size, 2, "mode count m")
        object.__setattr__(self, "coeffs", _frozen(c))

    # -- constructors -------------------------------------------------------

    @classmethod
    def zeros(cls, m: int) -> "FourierSeries":
        return cls(np.zeros(m, dtype=complex))

    @classmethod
    def constant(cls, value: Scalar, m: int = 2) -> "FourierSeries":
        c = np.zeros(m, dtype=complex)
        c[m // 2] = value
        return cls(c)

    # -- indexing -----------------------------------------------------------

    @property
    def m(self) -> int:
        return int(self.coeffs.size)

    @property
    def wavenumbers(self) -> np.ndarray:
        return np.arange(-(self.m // 2), self.m // 2)

    def coeff(self, k: int) -> complex:
        """Coefficient of wavenumber *k*; zero outside the band."""
        idx = k + self.m // 2
        if 0 <= idx < self.m:
            return complex(self.coeffs[idx])
        return 0j

    @property
    def mean(self) -> complex:
        return self.coeff(0)

    # -- band changes -------------------------------------------------------

    def padded(self, m_new: int) -> "FourierSeries":
        """Zero-pad to *m_new* >= m modes."""
        _check_even(m_new, 2, "mode count")
        if m_new < self.m:
            raise DownsampleForbiddenError(
                f"cannot pad {self.m} modes down to {m_new}; use truncated()"
            )
        if m_new == self.m:
            return self
        out = np.zeros(m_new, dtype=complex)
        offset = (m_new - self.m) // 2
        out[offset:offset + self.m] = self.coeffs
        return FourierSeries(out)

    def truncated(self, m_new: int) -> "FourierSeries":
        """Keep wavenumbers -m_new/2 ... m_new/2 - 1 (explicit low-pass)."""
        _check_even(m_new, 2, "mode count")
        if m_new >= self.m:
            return self.padded(m_new)
        offset = (self.m - m_new) // 2
        return FourierSeries(self.coeffs[offset:offset + m_new])

    def resized(self, m_new: int) -> "FourierSeries":
        return self.padded(m_new) if m_new >= self.m else self.truncated(m_new)

    # -- evaluation ---------------------------------------------------------

    def evaluate(self, points: np.ndarray) -> np.ndarray:
        """Direct O(len(points) * m) summation at arbitrary points (complex)."""
        pts = np.atleast_1d(np.asarray(points, dtype=float))
        out = np.empty(pts.size, dtype=complex)
        k = self.wavenumbers
        # chunked to bound the size of the phase matrix
        for start in range(0, pts.size, 2048):
            chunk = pts[start:start + 2048]
            out[start:start + chunk.size] = np.exp(1j * np.outer(chunk, k)) @ self.coeffs
        return out

    def conjugate_symmetry_defect(self) -> float:
        """max |c(-k) - conj(c(k))| over 0 < |k| < m/2, relative to max |c|."""
        half = self.m // 2
        if half < 2:
            return 0.0
        pos = self.coeffs[half + 1:]
        neg = self.coeffs[1:half][::-1]
        scale = max(float(np.max(np.abs(self.coeffs))), np.finfo(float).tiny)
        return float(np.max(np.abs(neg - np.conj(pos)))) / scale

    def l2_norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.coeffs) ** 2)))

    # -- arithmetic ---------------------------------------------------------

    def _aligned(self, other: "FourierSeries") -> Tuple[np.ndarray, np.ndarray]:
        m = max(self.m, other.m)
        return self.padded(m).coeffs, other.padded(m).coeffs

    def __add__(self, other: Union["FourierSeries", Scalar]) -> "FourierSeries":
        if isinstance(other, FourierSeries):
            a, b = self._aligned(other)
            return FourierSeries(a + b)
        if not isinstance(other, (int, float, complex, np.number)):
            return NotImplemented
        return self + FourierSeries.constant(other, self.m)

    __radd__ = __add__

    def __sub__(self, other: Union["FourierSeries", Scalar]) -> "FourierSeries":
        return self + (-other)

    def __rsub__(self, other: Scalar) -> "FourierSeries":
        return (-self) + other

    def __neg__(self) -> "FourierSeries":
        return FourierSeries(-self.coeffs)

    def __mul__(self, scalar: Scalar) -> "FourierSeries":
        if isinstance(scalar, FourierSeries):
            raise TypeError("series products are pseudo-spectral; use multiply_series()")
        return FourierSeries(self.coeffs * scalar)

    __rmul__ = __mul__

    def __truediv__(self, scalar: Scalar) -> "FourierSeries":
        return FourierSeries(self.coeffs / scalar)


# ---------------------------------------------------------------------------
# Grid <-> coefficient kernels (shared by calculus and the field algebra)
# ---------------------------------------------------------------------------

def _grid_to_series(samples: np.ndarray) -> FourierSeries:
    n = samples.shape[-1]
    return FourierSeries(np.fft.fftshift(np.fft.fft(samples)) / n)


def _series_to_grid(series: FourierSeries, n_out: int) -> np.ndarray:
    full = series.padded(n_out).coeffs
    return np.fft.ifft(np.fft.ifftshift(full)) * n_out


def _ik_times(series: FourierSeries) -> FourierSeries:
    d = 1j * series.wavenumbers * series.coeffs
    d[0] = 0.0  # Nyquist mode k = -m/2
    return FourierSeries(d)


def multiply_series(a: FourierSeries, b: FourierSeries, n: Optional[int] = None) -> FourierSeries:
    """Pseudo-spectral product: multiply grid values on n >= max(m) nodes."""
    n = n or max(a.m, b.m)
    values = _series_to_grid(a, n) * _series_to_grid(b, n)
    return _grid_to_series(values)


# ---------------------------------------------------------------------------
# Semi-periodic fields
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class SemiPeriodicField:
    """F(s) = q(s) + s * r(s) with q, r 2pi-periodic.

    Evaluation at s uses the unwrapped value of s, so the class represents
    functions on one period [0, 2pi) that are not periodic themselves.
    """

    periodic: FourierSeries
    slope: FourierSeries

    @classmethod
    def from_periodic(cls, series: FourierSeries) -> "SemiPeriodicField":
        return cls(series, FourierSeries.zeros(series.m))

    @classmethod
    def from_grid_samples(cls, q: np.ndarray, r: np.ndarray) -> "SemiPeriodicField":
        return cls(_grid_to_series(np.asarray(q)), _grid_to_series(np.asarray(r)))

    @property
    def m(self) -> int:
        return max(self.periodic.m, self.slope.m)

    def grid_samples(self, n: Optional[int] = None, real: bool = True) -> Tuple[np.ndarray, np.ndarray]:
        """Values of (q, r) on the n-point grid."""
        n = n or self.m
        q = _series_to_grid(self.periodic, n)
        r = _series_to_grid(self.slope, n)
        return (q.real, r.real) if real else (q, r)

    def samples(self, n: Optional[int] = None) -> np.ndarray:
        """Real values of F on the n-point grid."""
        n = n or self.m
        q, r = self.grid_samples(n)
        return q + UniformGrid(n).nodes * r

    def evaluate(self, points: np.ndarray) -> np.ndarray:
        """Direct summation at unwrapped points (real part)."""
        pts = np.asarray(points, dtype=float)
        return (self.periodic.evaluate(pts) + pts * self.slope.evaluate(pts)).real

    def derivative(self) -> "SemiPeriodicField":
        """F' = (q' + r) + s r'."""
        return SemiPeriodicField(_ik_times(self.periodic) + self.slope, _ik_times(self.slope))

    def times(self, factor: FourierSeries) -> "SemiPeriodicField":
        """Product with a periodic function, formed on the grid."""
        n = max(self.m, factor.m)
        p = _series_to_grid(factor, n).real
        q, r = self.grid_samples(n)
        return SemiPeriodicField.from_grid_samples(q * p, r * p)

    def times_samples(self, values: np.ndarray) -> "SemiPeriodicField":
        """Product with a periodic function given by its grid samples."""
        q, r = self.grid_samples(values.size)
        return SemiPeriodicField.from_grid_samples(q * values, r * values)

    def __add__(self, other: Union["SemiPeriodicField", FourierSeries]) -> "SemiPeriodicField":
        if isinstance(other, FourierSeries):
            return SemiPeriodicField(self.periodic + other, self.slope)
        return SemiPeriodicField(self.periodic + other.periodic, self.slope + other.slope)

    __radd__ = __add__

    def __neg__(self) -> "SemiPeriodicField":
        return SemiPeriodicField(-self.periodic, -self.slope)

    def __sub__(self, other: Union["SemiPeriodicField", FourierSeries]) -> "SemiPeriodicField":
        return self + (-other)

    def scaled(self, factor: float) -> "SemiPeriodicField":
        return SemiPeriodicField(self.periodic * factor, self.slope * factor)
