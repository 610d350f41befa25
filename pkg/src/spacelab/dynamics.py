"""Orbit-level probes: cylinder metric, agreement statistics, periodicity.

Points are finite truncations of elements of the shift space, carried as
configurations with a label naming the generator that produced them.
The metric is fixed as d(x, y) = 2^-min{i : x_i != y_i}, so closeness
below 2^-l is exactly agreement on a length-(l+1) block; every statistic
here reduces to window agreement counts, computed exactly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import ValidationError
from .language import (Configuration, greedy_point, is_admissible, max_ones,
                       DEFAULT_BUDGET)
from .psets import PSetView


@dataclass(frozen=True)
class OrbitPoint:
    """A truncated point of the shift space, tagged with how it was built."""

    config: Configuration
    label: str
    admissible: bool
    spec_digest: str


def _wrap(view: PSetView, config: Configuration, label: str) -> OrbitPoint:
    return OrbitPoint(config=config, label=label,
                      admissible=is_admissible(config, view),
                      spec_digest=view.spec_digest)


def zero_point(view: PSetView, horizon: int) -> OrbitPoint:
    return _wrap(view, Configuration(horizon, ()), "zero")


def random_point(view: PSetView, horizon: int, seed: int) -> OrbitPoint:
    """Seeded admissible point: greedy scan that keeps each legal
    position with probability 1/2.  Off by default everywhere; exists for
    exploratory runs only."""
    rng = random.Random(seed)
    ones: list = []
    for pos in range(horizon):
        legal = all((view.bits >> (pos - prev - 1)) & 1 for prev in ones)
        if legal and rng.random() < 0.5:
            ones.append(pos)
    return _wrap(view, Configuration(horizon, tuple(ones)),
                 f"random:{seed}")


def make_point(view: PSetView, name: str, horizon: int,
               seed: Optional[int] = None,
               budget: int = DEFAULT_BUDGET) -> OrbitPoint:
    """Build a named generator point.

    Names: ``zero``, ``greedy``, ``maxones:N`` (max-ones witness on a
    length-N window, zero-padded), ``periodic:K`` (the period-K point,
    which must be admissible), ``random`` (requires `seed`).
    """
    if horizon > view.horizon:
        raise ValidationError(
            f"point horizon {horizon} exceeds view horizon {view.horizon}")
    if name == "zero":
        return zero_point(view, horizon)
    if name == "greedy":
        return _wrap(view, greedy_point(view, horizon), "greedy")
    if name.startswith("maxones:"):
        n = _parse_int(name.split(":", 1)[1], "maxones window")
        if n > horizon:
            raise ValidationError("maxones window exceeds point horizon")
        _, witness = max_ones(view, n, budget=budget)
        return _wrap(view, witness.padded(horizon), name)
    if name.startswith("periodic:"):
        k = _parse_int(name.split(":", 1)[1], "period")
        result = periodic_point_check(view, k, horizon)
        if result.point is None:
            raise ValidationError(
                f"no period-{k} point: multiple {result.failing_multiple} missing")
        return result.point
    if name.startswith("random:"):
        return random_point(view, horizon,
                            _parse_int(name.split(":", 1)[1], "seed"))
    if name == "random":
        if seed is None:
            raise ValidationError("random point generator needs a seed")
        return random_point(view, horizon, seed)
    raise ValidationError(f"unknown point generator {name!r}")


def _parse_int(text: str, what: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise ValidationError(f"bad {what}: {text!r}") from None


def named_points(view: PSetView, horizon: int, maxones_n: int = 8,
                 budget: int = DEFAULT_BUDGET) -> list:
    """The deterministic generator triple used by the experiments."""
    return [zero_point(view, horizon),
            make_point(view, "greedy", horizon),
            make_point(view, f"maxones:{maxones_n}", horizon, budget=budget)]


def cylinder_distance_exponent(x: Configuration,
                               y: Configuration) -> Optional[int]:
    """min{i : x_i != y_i}, or None when equal on the whole window.

    The metric value is 2^-exponent; None is the infinity marker (the
    words are indistinguishable at this truncation).
    """
    if x.length != y.length:
        raise ValidationError("words must have equal lengths")
    diff = x.ones_mask() ^ y.ones_mask()
    if not diff:
        return None
    return (diff & -diff).bit_length() - 1


@dataclass(frozen=True)
class FStatReport:
    """Agreement frequencies F_n at closeness threshold t = 2^-l.

    ``values`` holds exact fractions with denominator n; ``tail_min`` is
    the minimum over the last quarter of the grid and stands in for the
    liminf, which a finite window cannot certify.
    """

    l: int
    x_label: str
    y_label: str
    values: tuple
    tail_min: Fraction


def f_statistic(x: OrbitPoint, y: OrbitPoint, l: int,
                n_grid: Sequence[int]) -> FStatReport:
    """F_n = |{m < n : x, y agree on coordinates m..m+l}| / n, exactly."""
    if x.config.length != y.config.length:
        raise ValidationError("points must have equal lengths")
    if l < 0:
        raise ValidationError("l must be >= 0")
    grid = sorted(set(n_grid))
    if not grid or grid[0] < 1:
        raise ValidationError("n_grid must be positive integers")
    horizon = x.config.length
    if grid[-1] + l > horizon:
        raise ValidationError("n_grid plus block length exceeds the horizon")
    diff = x.config.ones_mask() ^ y.config.ones_mask()
    window = (1 << (l + 1)) - 1
    values = []
    agree = 0
    pos = 0
    for n in grid:
        while pos < n:
            if not (diff >> pos) & window:
                agree += 1
            pos += 1
        values.append((n, Fraction(agree, n)))
    tail = values[-max(1, len(values) // 4):]
    return FStatReport(l=l, x_label=x.label, y_label=y.label,
                       values=tuple(values),
                       tail_min=min(v for _, v in tail))


def proximal_probe(x: OrbitPoint, y: OrbitPoint, block: int) -> Optional[int]:
    """Least m with x, y agreeing on [m, m+block), or None in horizon.

    Repeated hits at growing block lengths are the finite evidence that
    the pair is proximal; a None only says the window was too short.
    """
    if x.config.length != y.config.length:
        raise ValidationError("points must have equal lengths")
    horizon = x.config.length
    if not 1 <= block <= horizon:
        raise ValidationError(f"block must lie in [1..{horizon}]")
    diff = x.config.ones_mask() ^ y.config.ones_mask()
    # disagreement positions split [0..H) into clean stretches
    positions = []
    rest = diff
    while rest:
        low = rest & -rest
        positions.append(low.bit_length() - 1)
        rest ^= low
    start = 0
    for p in positions:
        if p - start >= block:
            return start
        start = p + 1
    if horizon - start >= block:
        return start
    return None


@dataclass(frozen=True)
class PeriodicCheckResult:
    """Outcome of the period-k membership test.

    Exactly one of ``point`` and ``failing_multiple`` is set: the
    verified truncation of (1 0^{k-1})^inf, or the least multiple of k
    within the horizon that is missing from P.
    """

    point: Optional[OrbitPoint]
    failing_multiple: Optional[int]


def periodic_point_check(view: PSetView, k: int,
                         horizon: int) -> PeriodicCheckResult:
    """Period-k point exists iff every multiple of k up to horizon is in P."""
    if not isinstance(k, int) or isinstance(k, bool) or k < 1:
        raise ValidationError("period must be a positive integer")
    if not 1 <= horizon <= view.horizon:
        raise ValidationError(
            f"horizon must lie in [1..{view.horizon}]")
    for mult in range(k, horizon + 1, k):
        if not (view.bits >> (mult - 1)) & 1:
            return PeriodicCheckResult(point=None, failing_multiple=mult)
    config = Configuration(horizon, tuple(range(0, horizon, k)))
    point = _wrap(view, config, f"periodic:{k}")
    return PeriodicCheckResult(point=point, failing_multiple=None)
