"""Truncated generating series with cycle-sum coefficients.

A series of order ``N`` stores one homogeneous cycle sum per degree
``0..N``.  The degree-``n`` coefficient may only contain basis cycles of
grade ``n``; mixing grades inside one coefficient is rejected outright.
Multiplication is the Cauchy product truncated at ``N``.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .cycle_algebra import CycleSum, unit
from .errors import ArgumentError

__all__ = ["CycleSeries", "series_one", "series_geometric_inverse"]


class CycleSeries:
    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Sequence[CycleSum]):
        sums = tuple(coeffs)
        if not sums:
            raise ArgumentError("a series needs at least the degree-zero coefficient")
        for n, s in enumerate(sums):
            if not isinstance(s, CycleSum):
                raise ArgumentError(f"coefficient {n} must be a CycleSum, got {type(s).__name__}")
            bad = [g for g in s.grades() if g != n]
            if bad:
                raise ArgumentError(
                    f"degree-{n} coefficient contains grade-{bad[0]} terms"
                )
        self._coeffs = sums

    @property
    def max_degree(self) -> int:
        return len(self._coeffs) - 1

    def coefficient(self, n: int) -> CycleSum:
        if not 0 <= n <= self.max_degree:
            raise ArgumentError(
                f"degree {n} outside the stored range 0..{self.max_degree}"
            )
        return self._coeffs[n]

    def coefficients(self) -> tuple[CycleSum, ...]:
        return self._coeffs

    def truncate(self, n: int) -> "CycleSeries":
        if not 0 <= n <= self.max_degree:
            raise ArgumentError(
                f"cannot truncate to degree {n}, stored range is 0..{self.max_degree}"
            )
        return CycleSeries(self._coeffs[: n + 1])

    def _check_same_order(self, other: "CycleSeries") -> None:
        if self.max_degree != other.max_degree:
            raise ArgumentError(
                f"series orders differ: {self.max_degree} vs {other.max_degree}"
            )

    def __add__(self, other: "CycleSeries") -> "CycleSeries":
        if not isinstance(other, CycleSeries):
            return NotImplemented
        self._check_same_order(other)
        return CycleSeries([a + b for a, b in zip(self._coeffs, other._coeffs)])

    def __sub__(self, other: "CycleSeries") -> "CycleSeries":
        if not isinstance(other, CycleSeries):
            return NotImplemented
        self._check_same_order(other)
        return CycleSeries([a - b for a, b in zip(self._coeffs, other._coeffs)])

    def __neg__(self) -> "CycleSeries":
        return CycleSeries([-a for a in self._coeffs])

    def __mul__(self, other: "CycleSeries") -> "CycleSeries":
        if not isinstance(other, CycleSeries):
            return NotImplemented
        self._check_same_order(other)
        n = self.max_degree
        out = []
        for k in range(n + 1):
            acc = CycleSum.zero()
            for i in range(k + 1):
                a = self._coeffs[i]
                b = other._coeffs[k - i]
                if a.is_zero() or b.is_zero():
                    continue
                acc = acc + a * b
            out.append(acc)
        return CycleSeries(out)

    def __pow__(self, k: int) -> "CycleSeries":
        if not isinstance(k, int) or isinstance(k, bool) or k < 0:
            raise ArgumentError(f"exponent must be a nonnegative integer, got {k!r}")
        out = series_one(self.max_degree)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def inverse(self) -> "CycleSeries":
        return series_geometric_inverse(self)

    def render(self) -> str:
        """One line per degree, bottom degree first."""
        return "\n".join(c.render() for c in self._coeffs)

    def latex(self) -> str:
        lines = [r"\begin{align*}"]
        for n, c in enumerate(self._coeffs):
            lines.append(f"S_{{{n}}} &= {c.latex()} \\\\")
        lines.append(r"\end{align*}")
        return "\n".join(lines)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, CycleSeries) and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __repr__(self) -> str:
        inner = "; ".join(c.render() for c in self._coeffs)
        return f"CycleSeries[{inner}]"


def series_one(max_degree: int) -> CycleSeries:
    """The multiplicative identity up to ``max_degree``."""
    if not isinstance(max_degree, int) or isinstance(max_degree, bool) or max_degree < 0:
        raise ArgumentError(f"max_degree must be a nonnegative integer, got {max_degree!r}")
    coeffs = [unit()] + [CycleSum.zero() for _ in range(max_degree)]
    return CycleSeries(coeffs)


def series_geometric_inverse(series: CycleSeries) -> CycleSeries:
    """Inverse of a series with constant coefficient one.

    Writes the series as 1 - T with T supported in positive degrees and
    sums the geometric series in T, truncated at the stored order.
    """
    if series.coefficient(0) != unit():
        raise ArgumentError("only series with constant coefficient 1 are invertible here")
    n = series.max_degree
    t = series_one(n) - series
    out = series_one(n)
    power = series_one(n)
    for _ in range(n):
        power = power * t
        out = out + power
    return out
