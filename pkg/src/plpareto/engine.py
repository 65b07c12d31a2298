"""Online allocation engine driven by a protection-level policy.

Requests arrive as divisible chunks tagged low or high.  High chunks are
always served from remaining capacity; low chunks are served only with the
capacity left above the protection level evaluated at the low demand seen so
far including the current chunk.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .plfunction import PLFunction
from .ratios import Rewards


@dataclass(frozen=True)
class Arrival:
    """One divisible request chunk."""

    kind: str  # "low" or "high"
    size: float

    def __post_init__(self) -> None:
        if self.kind not in ("low", "high"):
            raise ValueError("kind must be 'low' or 'high'")
        if self.size < 0:
            raise ValueError("size must be nonnegative")


@dataclass
class EngineState:
    """Running totals of one simulated sequence."""

    remaining: float
    low_seen: float = 0.0
    low_accepted: float = 0.0
    high_seen: float = 0.0
    high_accepted: float = 0.0
    reward: float = 0.0
    log: list = field(default_factory=list)


def offer(state: EngineState, arrival: Arrival, pl: PLFunction, rw: Rewards) -> float:
    """Serve one chunk and return the amount accepted."""
    if arrival.kind == "high":
        a = min(arrival.size, state.remaining)
        state.high_seen += arrival.size
        state.high_accepted += a
        state.reward += a * rw.r_high
    else:
        state.low_seen += arrival.size
        cap = rw.m - pl(state.low_seen) - state.low_accepted
        a = min(state.remaining, min(max(cap, 0.0), arrival.size))
        state.low_accepted += a
        state.reward += a * rw.r_low
    state.remaining -= a
    state.log.append((arrival.kind, arrival.size, a))
    return a


def run_sequence(arrivals, pl: PLFunction, rw: Rewards) -> EngineState:
    """Simulate a whole arrival sequence from full capacity."""
    state = EngineState(remaining=rw.m)
    for arrival in arrivals:
        offer(state, arrival, pl, rw)
    return state


def hindsight_opt(x: float, y: float, rw: Rewards) -> float:
    """Best achievable reward knowing the totals (x low, y high) in advance."""
    m = rw.m
    return min(y, m) * rw.r_high + min(x, max(m - y, 0.0)) * rw.r_low


def performance_ratio(state: EngineState, rw: Rewards) -> float:
    """Realized reward over hindsight optimum; 1 on empty sequences."""
    opt = hindsight_opt(state.low_seen, state.high_seen, rw)
    if opt <= 0.0:
        return 1.0
    return state.reward / opt


def ordered_sequence(x: float, y: float) -> list[Arrival]:
    """Worst-case arrival order: all low demand, then all high demand."""
    out = []
    if x > 0:
        out.append(Arrival("low", x))
    if y > 0:
        out.append(Arrival("high", y))
    return out


def unit_chunks(x: float, y: float) -> list[Arrival]:
    """Split totals into unit chunks plus fractional remainders (unpermuted)."""
    out: list[Arrival] = []
    for kind, total in (("low", x), ("high", y)):
        n = int(total)
        out.extend(Arrival(kind, 1.0) for _ in range(n))
        frac = total - n
        if frac > 1e-12:
            out.append(Arrival(kind, frac))
    return out


def validate_pl(pl: PLFunction, rw: Rewards, x_bar: float | None = None) -> list[str]:
    """Violation report for a candidate policy (empty means valid)."""
    return pl.validate(rw.m, x_bar)
