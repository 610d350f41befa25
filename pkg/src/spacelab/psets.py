"""Composable descriptions of subsets of N and their finite materializations.

A description is a small immutable tree: arithmetic progressions,
squares, explicit lists, finite subset sums, difference sets, Bohr sets,
and boolean combinations of those.  Trees parse from and serialize to
tagged JSON, validate with a path to the offending node, and materialize
over a horizon [1..H] as an integer bitmask (bit n-1 set iff n is a
member).  Densities are always exact rationals.

Conventions: N starts at 1.  Word positions elsewhere in the package are
0-based; the difference of two positions is the 1-based number looked up
here.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import SpecError, ValidationError

# Bohr membership uses open intervals; shrinking both endpoints by this
# margin keeps double-precision rounding from flipping membership.
BOHR_MARGIN = 1e-9


def _child(path: str, key: object) -> str:
    return f"{path}/{key}" if path else str(key)


def _check_int(value: object, path: str, minimum: int = 1) -> None:
    if not isinstance(value, int) or isinstance(value, bool):
        raise SpecError("expected an integer", path)
    if value < minimum:
        raise SpecError(f"expected an integer >= {minimum}", path)


def _check_increasing(values: object, path: str, min_len: int) -> None:
    if not isinstance(values, (list, tuple)):
        raise SpecError("expected a list of integers", path)
    if len(values) < min_len:
        raise SpecError(f"need at least {min_len} element(s)", path)
    prev = 0
    for i, v in enumerate(values):
        if not isinstance(v, int) or isinstance(v, bool):
            raise SpecError("elements must be integers", _child(path, i))
        if v <= prev:
            raise SpecError("elements must be >= 1 and strictly increasing",
                            _child(path, i))
        prev = v


def _mask_from(values, horizon: int) -> int:
    mask = 0
    for v in values:
        if 1 <= v <= horizon:
            mask |= 1 << (v - 1)
    return mask


class PSetSpec:
    """Abstract base of all set descriptions.

    Concrete subclasses are frozen dataclasses; two descriptions compare
    equal iff their JSON forms do, and :meth:`digest` is a stable content
    hash of that JSON.
    """

    kind = "abstract"

    def validate(self, path: str = "") -> None:
        raise NotImplementedError

    def to_json(self) -> dict:
        raise NotImplementedError

    def _bits(self, horizon: int) -> int:
        raise NotImplementedError

    def digest(self) -> str:
        blob = json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode("ascii")).hexdigest()


@dataclass(frozen=True)
class Explicit(PSetSpec):
    """A finite set given by its sorted element list (may be empty)."""

    elems: tuple

    kind = "explicit"

    def __post_init__(self):
        object.__setattr__(self, "elems", tuple(self.elems))

    def validate(self, path: str = "") -> None:
        _check_increasing(self.elems, _child(path, "elems"), min_len=0)

    def to_json(self) -> dict:
        return {"type": "explicit", "elems": list(self.elems)}

    def _bits(self, horizon: int) -> int:
        return _mask_from(self.elems, horizon)


@dataclass(frozen=True)
class Multiples(PSetSpec):
    """kN = {k, 2k, 3k, ...}; Multiples(1) is all of N."""

    k: int

    kind = "multiples"

    def validate(self, path: str = "") -> None:
        _check_int(self.k, _child(path, "k"))

    def to_json(self) -> dict:
        return {"type": "multiples", "k": self.k}

    def _bits(self, horizon: int) -> int:
        return _mask_from(range(self.k, horizon + 1, self.k), horizon)


@dataclass(frozen=True)
class Squares(PSetSpec):
    """The perfect squares {1, 4, 9, ...}."""

    kind = "squares"

    def validate(self, path: str = "") -> None:
        pass

    def to_json(self) -> dict:
        return {"type": "squares"}

    def _bits(self, horizon: int) -> int:
        mask = 0
        r = 1
        while r * r <= horizon:
            mask |= 1 << (r * r - 1)
            r += 1
        return mask


@dataclass(frozen=True)
class FiniteSums(PSetSpec):
    """All nonempty subset sums of a finite generator list.

    Only finite generator lists are materialized; infinite IP sets are
    searched for elsewhere, never constructed.
    """

    gens: tuple

    kind = "fs"

    def __post_init__(self):
        object.__setattr__(self, "gens", tuple(self.gens))

    def validate(self, path: str = "") -> None:
        _check_increasing(self.gens, _child(path, "gens"), min_len=1)

    def to_json(self) -> dict:
        return {"type": "fs", "gens": list(self.gens)}

    def _bits(self, horizon: int) -> int:
        sums = {0}
        for g in self.gens:
            sums |= {s + g for s in sums}
        sums.discard(0)
        return _mask_from(sums, horizon)


def _pair_differences(values) -> set:
    out = set()
    for i, small in enumerate(values):
        for big in values[i + 1:]:
            out.add(big - small)
    return out


@dataclass(frozen=True)
class DeltaOf(PSetSpec):
    """All pairwise differences of a strictly increasing sequence."""

    seq: tuple

    kind = "delta"

    def __post_init__(self):
        object.__setattr__(self, "seq", tuple(self.seq))

    def validate(self, path: str = "") -> None:
        _check_increasing(self.seq, _child(path, "seq"), min_len=1)

    def to_json(self) -> dict:
        return {"type": "delta", "seq": list(self.seq)}

    def _bits(self, horizon: int) -> int:
        return _mask_from(_pair_differences(self.seq), horizon)


@dataclass(frozen=True)
class DiffSet(PSetSpec):
    """{a - a' : a, a' in base, a > a'} for a finite base set."""

    base: tuple

    kind = "diffset"

    def __post_init__(self):
        object.__setattr__(self, "base", tuple(self.base))

    def validate(self, path: str = "") -> None:
        _check_increasing(self.base, _child(path, "set"), min_len=1)

    def to_json(self) -> dict:
        return {"type": "diffset", "set": list(self.base)}

    def _bits(self, horizon: int) -> int:
        return _mask_from(_pair_differences(self.base), horizon)


@dataclass(frozen=True)
class Bohr(PSetSpec):
    """{n : frac(n * alpha) in (lo, hi)} with a rounding guard.

    Membership is decided in double precision with both endpoints pulled
    in by ``BOHR_MARGIN``; the underlying interval is open, so the
    conservative shrink only ever drops near-boundary points and keeps
    the materialized set stable across platforms.
    """

    alpha: float
    interval: tuple

    kind = "bohr"

    def __post_init__(self):
        object.__setattr__(self, "interval", tuple(self.interval))

    def validate(self, path: str = "") -> None:
        if not isinstance(self.alpha, (int, float)) or isinstance(self.alpha, bool):
            raise SpecError("alpha must be a number", _child(path, "alpha"))
        if not 0.0 < float(self.alpha) < 1.0:
            raise SpecError("alpha must lie strictly between 0 and 1",
                            _child(path, "alpha"))
        iv = self.interval
        if len(iv) != 2 or not all(
                isinstance(x, (int, float)) and not isinstance(x, bool) for x in iv):
            raise SpecError("interval must be a pair of numbers",
                            _child(path, "interval"))
        lo, hi = float(iv[0]), float(iv[1])
        if not (0.0 <= lo < hi <= 1.0):
            raise SpecError("interval must satisfy 0 <= lo < hi <= 1",
                            _child(path, "interval"))

    def to_json(self) -> dict:
        return {"type": "bohr", "alpha": float(self.alpha),
                "interval": [float(self.interval[0]), float(self.interval[1])]}

    def _bits(self, horizon: int) -> int:
        alpha = float(self.alpha)
        lo = float(self.interval[0]) + BOHR_MARGIN
        hi = float(self.interval[1]) - BOHR_MARGIN
        mask = 0
        for n in range(1, horizon + 1):
            if lo < (n * alpha) % 1.0 < hi:
                mask |= 1 << (n - 1)
        return mask


@dataclass(frozen=True)
class Complement(PSetSpec):
    """N minus another described set, truncated to the horizon."""

    of: PSetSpec

    kind = "complement"

    def validate(self, path: str = "") -> None:
        self.of.validate(_child(path, "of"))

    def to_json(self) -> dict:
        return {"type": "complement", "of": self.of.to_json()}

    def _bits(self, horizon: int) -> int:
        full = (1 << horizon) - 1
        return full ^ self.of._bits(horizon)


@dataclass(frozen=True)
class Union(PSetSpec):
    parts: tuple

    kind = "union"

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))

    def validate(self, path: str = "") -> None:
        if not self.parts:
            raise SpecError("need at least 1 part", _child(path, "of"))
        for i, part in enumerate(self.parts):
            part.validate(_child(_child(path, "of"), i))

    def to_json(self) -> dict:
        return {"type": "union", "of": [p.to_json() for p in self.parts]}

    def _bits(self, horizon: int) -> int:
        mask = 0
        for part in self.parts:
            mask |= part._bits(horizon)
        return mask


@dataclass(frozen=True)
class Intersect(PSetSpec):
    parts: tuple

    kind = "intersect"

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))

    def validate(self, path: str = "") -> None:
        if not self.parts:
            raise SpecError("need at least 1 part", _child(path, "of"))
        for i, part in enumerate(self.parts):
            part.validate(_child(_child(path, "of"), i))

    def to_json(self) -> dict:
        return {"type": "intersect", "of": [p.to_json() for p in self.parts]}

    def _bits(self, horizon: int) -> int:
        mask = self.parts[0]._bits(horizon)
        for part in self.parts[1:]:
            mask &= part._bits(horizon)
        return mask


def _expect_keys(obj: dict, path: str, keys: set) -> None:
    extra = sorted(set(obj) - keys - {"type"})
    if extra:
        raise SpecError(f"unexpected keys {extra}", path)
    missing = sorted(keys - set(obj))
    if missing:
        raise SpecError(f"missing keys {missing}", path)


def parse_spec(obj: object, path: str = "") -> PSetSpec:
    """Parse the tagged JSON wire format into a description tree.

    Parameters
    ----------
    obj : object
        Decoded JSON value; must be an object with a ``"type"`` tag.
    path : str
        Position of `obj` inside an enclosing tree, for error messages.

    Returns
    -------
    PSetSpec
        The parsed tree.  Structural problems raise :class:`SpecError`
        naming the offending node; an unknown tag is a hard error.
    """
    if not isinstance(obj, dict):
        raise SpecError("spec node must be a JSON object", path)
    if "type" not in obj:
        raise SpecError("missing 'type' tag", path)
    tag = obj["type"]

    if tag == "explicit":
        _expect_keys(obj, path, {"elems"})
        _check_increasing(obj["elems"], _child(path, "elems"), min_len=0)
        return Explicit(tuple(obj["elems"]))
    if tag == "multiples":
        _expect_keys(obj, path, {"k"})
        _check_int(obj["k"], _child(path, "k"))
        return Multiples(obj["k"])
    if tag == "squares":
        _expect_keys(obj, path, set())
        return Squares()
    if tag == "fs":
        _expect_keys(obj, path, {"gens"})
        _check_increasing(obj["gens"], _child(path, "gens"), min_len=1)
        return FiniteSums(tuple(obj["gens"]))
    if tag == "delta":
        _expect_keys(obj, path, {"seq"})
        _check_increasing(obj["seq"], _child(path, "seq"), min_len=1)
        return DeltaOf(tuple(obj["seq"]))
    if tag == "diffset":
        _expect_keys(obj, path, {"set"})
        _check_increasing(obj["set"], _child(path, "set"), min_len=1)
        return DiffSet(tuple(obj["set"]))
    if tag == "bohr":
        _expect_keys(obj, path, {"alpha", "interval"})
        spec = Bohr(obj["alpha"], tuple(obj["interval"])
                    if isinstance(obj["interval"], (list, tuple)) else (obj["interval"],))
        spec.validate(path)
        return spec
    if tag == "complement":
        _expect_keys(obj, path, {"of"})
        return Complement(parse_spec(obj["of"], _child(path, "of")))
    if tag in ("union", "intersect"):
        _expect_keys(obj, path, {"of"})
        parts_obj = obj["of"]
        if not isinstance(parts_obj, list) or not parts_obj:
            raise SpecError("'of' must be a nonempty list", _child(path, "of"))
        parts = tuple(parse_spec(p, _child(_child(path, "of"), i))
                      for i, p in enumerate(parts_obj))
        return Union(parts) if tag == "union" else Intersect(parts)
    raise SpecError(f"unknown spec type {tag!r}", path)


@dataclass(frozen=True)
class PSetView:
    """Materialized membership of a described set over [1..horizon].

    ``bits`` has bit n-1 set iff n is a member.  Views are immutable and
    a pure function of (spec, horizon); sharing them across workers is
    safe.
    """

    horizon: int
    bits: int
    spec_digest: str


def build_pset(spec: PSetSpec, horizon: int) -> PSetView:
    """Validate `spec` and materialize it over [1..horizon].

    Raises
    ------
    SpecError
        If the description is invalid; the message names the node.
    ValidationError
        If the horizon is not a positive integer.
    """
    if not isinstance(horizon, int) or isinstance(horizon, bool) or horizon < 1:
        raise ValidationError("horizon must be a positive integer")
    spec.validate()
    bits = spec._bits(horizon) & ((1 << horizon) - 1)
    return PSetView(horizon=horizon, bits=bits, spec_digest=spec.digest())


def member(view: PSetView, n: int) -> bool:
    """Exact membership of n, valid only inside the horizon.

    Out-of-horizon queries raise instead of returning False: the view
    carries no information beyond [1..H].
    """
    if not isinstance(n, int) or isinstance(n, bool) or not 1 <= n <= view.horizon:
        raise ValidationError(
            f"membership query {n!r} outside horizon [1..{view.horizon}]")
    return bool((view.bits >> (n - 1)) & 1)


def elements(view: PSetView) -> list:
    """All members in increasing order."""
    out = []
    bits = view.bits
    while bits:
        low = bits & -bits
        out.append(low.bit_length())
        bits ^= low
    return out


@dataclass(frozen=True)
class DensityReport:
    """Exact finite-horizon density profile of a set.

    ``prefix_densities`` holds |A intersect [1..n]| / n for every n up to
    the horizon; ``lower_est``/``upper_est`` are the min/max of those over
    n >= n0 (the cutoff damps initial transients and is reported, not
    hidden); ``banach_profile`` maps each window length W to the best
    window density max over m of |A intersect (m, m+W]| / W.
    """

    horizon: int
    n0: int
    prefix_densities: tuple
    lower_est: Fraction
    upper_est: Fraction
    banach_profile: tuple


def _max_window_count(bits: int, horizon: int, width: int) -> int:
    cur = ((bits & ((1 << width) - 1))).bit_count()
    best = cur
    for m in range(1, horizon - width + 1):
        cur -= (bits >> (m - 1)) & 1
        cur += (bits >> (m + width - 1)) & 1
        if cur > best:
            best = cur
    return best


def density_report(view: PSetView, window_grid: Sequence[int],
                   n0: Optional[int] = None) -> DensityReport:
    """Compute the four density notions of the profile exactly.

    Parameters
    ----------
    view : PSetView
        Materialized set.
    window_grid : sequence of int
        Window lengths for the Banach-density profile; each must lie in
        [1..horizon] and the grid must be nonempty.
    n0 : int, optional
        Tail cutoff for the lower/upper estimates; defaults to H // 2
        (at least 1).
    """
    H = view.horizon
    if n0 is None:
        n0 = max(1, H // 2)
    if not 1 <= n0 <= H:
        raise ValidationError(f"n0 must lie in [1..{H}]")
    grid = list(window_grid)
    if not grid:
        raise ValidationError("window_grid must be nonempty")
    for w in grid:
        if not isinstance(w, int) or isinstance(w, bool) or not 1 <= w <= H:
            raise ValidationError(f"window length {w!r} outside [1..{H}]")

    prefix = []
    count = 0
    for n in range(1, H + 1):
        count += (view.bits >> (n - 1)) & 1
        prefix.append((n, Fraction(count, n)))
    tail = [d for n, d in prefix if n >= n0]
    banach = tuple((w, Fraction(_max_window_count(view.bits, H, w), w))
                   for w in grid)
    return DensityReport(horizon=H, n0=n0, prefix_densities=tuple(prefix),
                         lower_est=min(tail), upper_est=max(tail),
                         banach_profile=banach)
