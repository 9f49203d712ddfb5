"""Exactly evaluatable frequency-response models.

A model is a tree whose leaves are rational transfer functions with an
optional pure time delay attached, and whose interior nodes combine
children by sum, product or division.  Delays are never rationalized
(no Pade approximation): a leaf evaluates to

    num(s) / den(s) * exp(-delay * s)

so on the imaginary axis the delay contributes phase only and its
magnitude stays 1 to within one ulp.  Polynomial coefficients are stored
in ascending order of power.
"""

from __future__ import annotations

import numpy as np
from numpy.polynomial import polynomial as P


def _aspoly(c) -> np.ndarray:
    a = np.atleast_1d(np.asarray(c, dtype=float))
    if a.ndim != 1 or a.size == 0:
        raise ValueError("polynomial coefficients must be a non-empty 1-D sequence")
    return a


def _trim(c: np.ndarray) -> np.ndarray:
    return P.polytrim(c, tol=0.0)


class DelayedRationalError(ValueError):
    """Raised when a delay-bearing model is asked for a single rational form."""


class FrequencyModel:
    """Complex frequency response H(s), evaluatable anywhere in the s-plane."""

    def at(self, s) -> np.ndarray:
        """Evaluate H at complex point(s) ``s``."""
        raise NotImplementedError

    def response(self, omega) -> np.ndarray:
        """Evaluate H(j*omega) for real angular frequencies."""
        return self.at(1j * np.asarray(omega, dtype=float))

    @property
    def rational_paths(self) -> list[tuple[np.ndarray, np.ndarray, float]]:
        """All (numerator, denominator, delay) leaves of the tree."""
        out: list[tuple[np.ndarray, np.ndarray, float]] = []
        self._collect(out)
        return out

    def _collect(self, out: list) -> None:
        raise NotImplementedError

    def as_rational(self) -> tuple[np.ndarray, np.ndarray]:
        """Collapse to a single (num, den) pair; requires all delays zero."""
        num, den = self._rational()
        return _trim(num), _trim(den)

    def _rational(self) -> tuple[np.ndarray, np.ndarray]:
        raise NotImplementedError

    # Composition operators.  Scalars are promoted to constant models.
    def __add__(self, other) -> "FrequencyModel":
        return _Sum(self, _promote(other))

    def __radd__(self, other) -> "FrequencyModel":
        return _Sum(_promote(other), self)

    def __mul__(self, other) -> "FrequencyModel":
        return _Product(self, _promote(other))

    def __rmul__(self, other) -> "FrequencyModel":
        return _Product(_promote(other), self)

    def __truediv__(self, other) -> "FrequencyModel":
        return _Quotient(self, _promote(other))

    def __rtruediv__(self, other) -> "FrequencyModel":
        return _Quotient(_promote(other), self)

    def __neg__(self) -> "FrequencyModel":
        return _Product(constant(-1.0), self)


def _promote(x) -> FrequencyModel:
    if isinstance(x, FrequencyModel):
        return x
    return constant(float(x))


class _Rational(FrequencyModel):
    def __init__(self, num, den, delay: float = 0.0):
        self.num = _aspoly(num)
        self.den = _aspoly(den)
        if not np.any(self.den):
            raise ValueError("denominator is identically zero")
        if delay < 0:
            raise ValueError("delay must be nonnegative")
        self.delay = float(delay)

    def at(self, s):
        s = np.asarray(s, dtype=complex)
        h = P.polyval(s, self.num) / P.polyval(s, self.den)
        if self.delay:
            h = h * np.exp(-self.delay * s)
        return h

    def _collect(self, out):
        out.append((self.num.copy(), self.den.copy(), self.delay))

    def _rational(self):
        if self.delay:
            raise DelayedRationalError(
                f"model carries a pure delay of {self.delay} s and has no rational form"
            )
        return self.num.copy(), self.den.copy()


class _Sum(FrequencyModel):
    def __init__(self, a: FrequencyModel, b: FrequencyModel):
        self.a, self.b = a, b

    def at(self, s):
        return self.a.at(s) + self.b.at(s)

    def _collect(self, out):
        self.a._collect(out)
        self.b._collect(out)

    def _rational(self):
        na, da = self.a._rational()
        nb, db = self.b._rational()
        return P.polyadd(P.polymul(na, db), P.polymul(nb, da)), P.polymul(da, db)


class _Product(FrequencyModel):
    def __init__(self, a: FrequencyModel, b: FrequencyModel):
        self.a, self.b = a, b

    def at(self, s):
        return self.a.at(s) * self.b.at(s)

    def _collect(self, out):
        self.a._collect(out)
        self.b._collect(out)

    def _rational(self):
        na, da = self.a._rational()
        nb, db = self.b._rational()
        return P.polymul(na, nb), P.polymul(da, db)


class _Quotient(FrequencyModel):
    def __init__(self, a: FrequencyModel, b: FrequencyModel):
        self.a, self.b = a, b

    def at(self, s):
        return self.a.at(s) / self.b.at(s)

    def _collect(self, out):
        self.a._collect(out)
        self.b._collect(out)

    def _rational(self):
        na, da = self.a._rational()
        nb, db = self.b._rational()
        return P.polymul(na, db), P.polymul(da, nb)


def rational(num, den, delay: float = 0.0) -> FrequencyModel:
    """Rational transfer function num(s)/den(s) times exp(-delay*s)."""
    return _Rational(num, den, delay)


def constant(value: float) -> FrequencyModel:
    return _Rational([float(value)], [1.0])


def differentiator() -> FrequencyModel:
    """The Laplace variable s."""
    return _Rational([0.0, 1.0], [1.0])


def delay(seconds: float) -> FrequencyModel:
    """Pure transport delay exp(-seconds*s)."""
    return _Rational([1.0], [1.0], delay=seconds)


def first_order_lowpass(cutoff_hz: float | None) -> FrequencyModel:
    """Unity-DC-gain first-order low-pass 2*pi*f / (s + 2*pi*f).

    ``None`` means the filter is switched off and is represented by an
    exact unity gain rather than a huge cutoff, so no overflow can occur.
    """
    if cutoff_hz is None:
        return constant(1.0)
    if cutoff_hz <= 0:
        raise ValueError("filter cutoff must be positive")
    a = 2.0 * np.pi * float(cutoff_hz)
    return _Rational([a], [a, 1.0])
