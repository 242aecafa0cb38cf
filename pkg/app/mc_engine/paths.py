"""
Exact event-driven paths.

Jumps, inspection marks and the killing time are superposed exponential
clocks, so a path is a finite list of events and no horizon is discretized.
All paths of a block are stored flat, path i owning events
starts[i] .. starts[i] + counts[i] - 1, the last of which is the killing.
"""

from dataclasses import dataclass

import numpy as np

from app.levy_models import JumpLawService, LevyModel


@dataclass(frozen=True)
class PathBatch:
    """Flat event arrays of a block of killed paths."""

    starts: np.ndarray
    counts: np.ndarray
    times: np.ndarray
    y_pre: np.ndarray
    y_post: np.ndarray
    is_jump: np.ndarray
    is_mark: np.ndarray
    is_inspection: np.ndarray
    running_max: np.ndarray
    drift: float

    @property
    def size(self) -> int:
        return int(self.starts.size)

    @property
    def horizons(self) -> np.ndarray:
        """Killing epochs."""
        return self.times[self.starts + self.counts - 1]

    @property
    def inspection_counts(self) -> np.ndarray:
        return np.add.reduceat(self.is_inspection.astype(np.int64), self.starts)

    @property
    def inspected_max(self) -> np.ndarray:
        """max{0, Y(I_1), ..., Y(I_N)}."""
        observed = np.where(self.is_inspection, self.y_post, -np.inf)
        return np.maximum(np.maximum.reduceat(observed, self.starts), 0.0)

    @property
    def inspected_min(self) -> np.ndarray:
        """min{0, Y(I_1), ..., Y(I_N)}."""
        observed = np.where(self.is_inspection, self.y_post, np.inf)
        return np.minimum(np.minimum.reduceat(observed, self.starts), 0.0)

    @property
    def inspected_last(self) -> np.ndarray:
        """Y(I_N), or 0 without inspections."""
        index = np.where(self.is_inspection, np.arange(self.y_post.size), -1)
        last = np.maximum.reduceat(index, self.starts)
        return np.where(last >= 0, self.y_post[np.maximum(last, 0)], 0.0)

    def thinned_inspected_max(self, keep: np.ndarray) -> np.ndarray:
        """Inspected maximum over the inspections flagged in `keep`."""
        observed = np.where(self.is_inspection & keep, self.y_post, -np.inf)
        return np.maximum(np.maximum.reduceat(observed, self.starts), 0.0)

    def phase_maxima(self) -> np.ndarray:
        """
        Rise of Y above its starting level over each mark-to-mark phase.

        A phase ends at the next mark or at the killing, so each one lasts
        exp(β + kω) and its maxima are i.i.d. copies of Ȳ(T_{β+kω}). Compound-Poisson
        paths only: the supremum of a phase is attained at an event.
        """
        boundary = self.is_mark.copy()
        boundary[self.starts + self.counts - 1] = True
        ends = np.flatnonzero(boundary)
        phase_starts = np.concatenate(([0], ends[:-1] + 1))
        y_start = np.empty_like(self.y_post)
        y_start[1:] = self.y_post[:-1]
        y_start[self.starts] = 0.0
        highest = np.maximum(np.maximum(y_start, self.y_pre), self.y_post)
        return np.maximum.reduceat(highest, phase_starts) - y_start[phase_starts]

    def value_at(self, path: int, t: np.ndarray) -> np.ndarray:
        """Y(t) on path `path` for compound-Poisson paths, t within [0, horizon]."""
        lo = self.starts[path]
        hi = lo + self.counts[path]
        times = self.times[lo:hi]
        jumps = (self.y_post - self.y_pre)[lo:hi]
        passed = np.searchsorted(times, t, side="right")
        cumulative = np.concatenate(([0.0], np.cumsum(jumps)))
        return self.drift * t + cumulative[passed]


def _segment_offsets(values: np.ndarray, starts: np.ndarray, counts: np.ndarray) -> np.ndarray:
    """Cumulative sums of `values` restarted at every path start."""
    total = np.cumsum(values)
    before = total[starts] - values[starts]
    return total - np.repeat(before, counts)


def simulate_block(
    model: LevyModel,
    kill_rate: float,
    mark_rate: float,
    rng: np.random.Generator,
    size: int,
    k: int = 1,
) -> PathBatch:
    """
    Simulate `size` paths killed at rate `kill_rate` with marks at rate `mark_rate`.

    Every k-th mark of a path is an inspection epoch.
    """
    jump_rate = model.arrival_rate if model.is_compound_poisson else 0.0
    live_rate = jump_rate + mark_rate
    total_rate = live_rate + kill_rate

    counts = rng.geometric(kill_rate / total_rate, size).astype(np.int64)
    starts = np.concatenate(([0], np.cumsum(counts)[:-1])).astype(np.int64)
    n_events = int(counts.sum())

    is_kill = np.zeros(n_events, dtype=bool)
    is_kill[starts + counts - 1] = True
    dt = rng.exponential(1 / total_rate, n_events)
    jump_share = jump_rate / live_rate if live_rate > 0 else 0.0
    is_jump = ~is_kill & (rng.random(n_events) < jump_share)
    is_mark = ~is_kill & ~is_jump

    jumps = np.zeros(n_events)
    if model.is_compound_poisson:
        jumps[is_jump] = JumpLawService.sample_jumps(model.claims, rng, int(is_jump.sum()))
        sign = 1.0 if model.is_spectrally_positive else -1.0
        drift = -model.premium_rate * sign
        moves = drift * dt
    else:
        sign = 0.0
        drift = model.drift
        moves = drift * dt + np.sqrt(model.variance * dt) * rng.standard_normal(n_events)

    signed_jumps = sign * jumps
    y_post = _segment_offsets(moves + signed_jumps, starts, counts)
    y_pre = y_post - signed_jumps
    times = _segment_offsets(dt, starts, counts)
    y_start = np.empty(n_events)
    y_start[1:] = y_post[:-1]
    y_start[starts] = 0.0

    if model.is_compound_poisson:
        segment_max = np.maximum(np.maximum(y_start, y_pre), y_post)
    else:
        # Maximum of the Brownian bridge between consecutive events
        uniform = 1.0 - rng.random(n_events)
        spread = (y_pre - y_start) ** 2 - 2 * model.variance * dt * np.log(uniform)
        segment_max = 0.5 * (y_start + y_pre + np.sqrt(spread))
    running_max = np.maximum(np.maximum.reduceat(segment_max, starts), 0.0)

    if k == 1:
        is_inspection = is_mark
    else:
        mark_number = _segment_offsets(is_mark.astype(np.int64), starts, counts)
        is_inspection = is_mark & (mark_number % k == 0)

    return PathBatch(
        starts=starts,
        counts=counts,
        times=times,
        y_pre=y_pre,
        y_post=y_post,
        is_jump=is_jump,
        is_mark=is_mark,
        is_inspection=is_inspection,
        running_max=running_max,
        drift=drift,
    )


def sample_levels(model: LevyModel, t, rng: np.random.Generator, size: int) -> np.ndarray:
    """Exact draws of Y(t); t is a scalar or one horizon per draw."""
    horizon = np.broadcast_to(np.asarray(t, dtype=float), (size,))
    if not model.is_compound_poisson:
        return model.drift * horizon + np.sqrt(model.variance * horizon) * rng.standard_normal(size)
    counts = rng.poisson(model.arrival_rate * horizon)
    jumps = JumpLawService.sample_jumps(model.claims, rng, int(counts.sum()))
    totals = np.bincount(np.repeat(np.arange(size), counts), weights=jumps, minlength=size)
    if model.is_spectrally_positive:
        return totals - model.premium_rate * horizon
    return model.premium_rate * horizon - totals
