"""Truncated integer power series in one variable t.

Coefficients beyond the cutoff are *undefined*, never implicitly zero;
comparing series with different cutoffs raises unless the overlap form is
requested explicitly.
"""

from __future__ import annotations

__all__ = ["GradedSeries"]


class GradedSeries:
    """Integer coefficients c_0..c_D of a series truncated at degree D."""

    __slots__ = ("cutoff", "coeffs")

    def __init__(self, coeffs, cutoff: int | None = None):
        coeffs = tuple(int(c) for c in coeffs)
        if cutoff is None:
            cutoff = len(coeffs) - 1
        if cutoff < 0 or len(coeffs) != cutoff + 1:
            raise ValueError("need exactly cutoff+1 coefficients")
        self.cutoff = cutoff
        self.coeffs = coeffs

    @classmethod
    def zeros(cls, cutoff: int) -> "GradedSeries":
        return cls((0,) * (cutoff + 1), cutoff)

    @classmethod
    def one(cls, cutoff: int) -> "GradedSeries":
        return cls((1,) + (0,) * cutoff, cutoff)

    @classmethod
    def from_poly(cls, coeffs, cutoff: int) -> "GradedSeries":
        out = [0] * (cutoff + 1)
        for i, c in enumerate(coeffs):
            if i > cutoff:
                break
            out[i] = int(c)
        return cls(out, cutoff)

    @classmethod
    def geometric(cls, degrees, cutoff: int) -> "GradedSeries":
        """Expansion of prod_i 1/(1 - t^d_i)."""
        out = [1] + [0] * cutoff
        for d in degrees:
            if d <= 0:
                raise ValueError("factor degrees must be positive")
            for i in range(d, cutoff + 1):
                out[i] += out[i - d]
        return cls(out, cutoff)

    def _check(self, other: "GradedSeries"):
        if self.cutoff != other.cutoff:
            raise ValueError(
                f"cutoff mismatch ({self.cutoff} vs {other.cutoff}); "
                "truncate explicitly or use agrees_on_overlap"
            )

    def __add__(self, other):
        self._check(other)
        return GradedSeries([a + b for a, b in zip(self.coeffs, other.coeffs)], self.cutoff)

    def __sub__(self, other):
        self._check(other)
        return GradedSeries([a - b for a, b in zip(self.coeffs, other.coeffs)], self.cutoff)

    def __mul__(self, other):
        if isinstance(other, int):
            return GradedSeries([other * a for a in self.coeffs], self.cutoff)
        self._check(other)
        out = [0] * (self.cutoff + 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs[: self.cutoff + 1 - i]):
                if b:
                    out[i + j] += a * b
        return GradedSeries(out, self.cutoff)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def shift(self, s: int) -> "GradedSeries":
        """Multiply by t^s (s >= 0); the cutoff is kept, the tail is dropped."""
        if s < 0:
            raise ValueError("negative shifts lose low-degree information")
        out = [0] * min(s, self.cutoff + 1) + list(self.coeffs[: self.cutoff + 1 - s])
        return GradedSeries(out, self.cutoff)

    def times_one_minus(self, d: int) -> "GradedSeries":
        """Multiply by (1 - t^d)."""
        out = list(self.coeffs)
        for i in range(self.cutoff, d - 1, -1):
            out[i] -= self.coeffs[i - d]
        return GradedSeries(out, self.cutoff)

    def truncate(self, cutoff: int) -> "GradedSeries":
        if cutoff > self.cutoff:
            raise ValueError("cannot extend a truncated series")
        return GradedSeries(self.coeffs[: cutoff + 1], cutoff)

    def agrees_on_overlap(self, other: "GradedSeries") -> bool:
        d = min(self.cutoff, other.cutoff)
        return self.coeffs[: d + 1] == other.coeffs[: d + 1]

    def __eq__(self, other):
        if not isinstance(other, GradedSeries):
            return NotImplemented
        self._check(other)
        return self.coeffs == other.coeffs

    __hash__ = None

    def __getitem__(self, d: int) -> int:
        if not 0 <= d <= self.cutoff:
            raise IndexError(f"degree {d} beyond cutoff {self.cutoff}")
        return self.coeffs[d]

    def __iter__(self):
        return iter(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def total(self) -> int:
        return sum(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __str__(self):
        return "[" + ", ".join(str(c) for c in self.coeffs) + f"] (cutoff {self.cutoff})"

    def __repr__(self):
        return f"GradedSeries({list(self.coeffs)!r})"
