"""Piecewise-linear protection-level functions.

A valid protection level is continuous, non-increasing with slope >= -1,
takes values in [0, m], and is constant at and beyond max(m, x_bar) where
x_bar is the largest low-demand abscissa the advice admits.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass

SLOPE_TOL = 1e-9


@dataclass(frozen=True)
class PLFunction:
    """Continuous piecewise-linear curve; constant beyond its breakpoint span."""

    breakpoints: tuple[tuple[float, float], ...]

    def __post_init__(self) -> None:
        if not self.breakpoints:
            raise ValueError("need at least one breakpoint")
        xs = [x for x, _ in self.breakpoints]
        if any(b - a < -SLOPE_TOL for a, b in zip(xs, xs[1:])):
            raise ValueError("breakpoints must be sorted by x")

    def __call__(self, x: float) -> float:
        bps = self.breakpoints
        if len(bps) == 1 or x <= bps[0][0]:
            return bps[0][1]
        if x >= bps[-1][0]:
            return bps[-1][1]
        xs = [p[0] for p in bps]
        i = bisect_right(xs, x)
        (x1, p1), (x2, p2) = bps[i - 1], bps[i]
        if x2 == x1:
            return p2
        return p1 + (x - x1) * (p2 - p1) / (x2 - x1)

    def validate(self, m: float, x_bar: float | None = None) -> list[str]:
        """Return human-readable violations of the validity conditions.

        ``x_bar`` widens the region where a nonzero slope is allowed; when
        omitted only the capacity m bounds the sloped part.
        """
        cut = max(m, x_bar) if x_bar is not None else m
        out: list[str] = []
        for x, p in self.breakpoints:
            if p < -SLOPE_TOL or p > m + SLOPE_TOL:
                out.append(f"RangeViolation: p({x}) = {p} outside [0, {m}]")
        for (x1, p1), (x2, p2) in zip(self.breakpoints, self.breakpoints[1:]):
            if x2 - x1 <= SLOPE_TOL:
                if abs(p2 - p1) > SLOPE_TOL:
                    out.append(f"SlopeViolation: jump at x = {x1}")
                continue
            slope = (p2 - p1) / (x2 - x1)
            if slope > SLOPE_TOL:
                out.append(f"IncreaseViolation: slope {slope:.6g} on [{x1}, {x2}]")
            elif slope < -1.0 - SLOPE_TOL:
                out.append(f"SlopeViolation: slope {slope:.6g} < -1 on [{x1}, {x2}]")
            if x1 >= cut - SLOPE_TOL and abs(slope) > SLOPE_TOL:
                out.append(f"TailViolation: non-constant beyond x = {cut}")
        return out


def constant_pl(level: float, x_end: float) -> PLFunction:
    """Constant protection level on [0, x_end]."""
    return PLFunction(((0.0, level), (x_end, level)))
