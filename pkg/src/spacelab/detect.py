"""Searches for the finite combinatorial certificates behind the theory.

Every search returns the lexicographically least witness inside its
bound, re-verified by direct arithmetic before being handed back, or
None when no witness exists within the bound.  A None is always a
bounded-search outcome, never a proof of non-existence: the objects
certified here (difference chains, IP generators, IP-IP generators) are
finite stand-ins for infinite structures.

Searches carry an explicit node budget; running out raises
:class:`BudgetError`, which is distinct from "no witness in bound".
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Sequence, Tuple

from .errors import BudgetError, ValidationError
from .language import DEFAULT_BUDGET
from .psets import Bohr, PSetView, member

_PAYLOAD_KEYS = {
    "delta_chain": "S",
    "ip_generator": "A",
    "ip_ip_generator": "A",
    "intersective_hit": "value",
}


@dataclass(frozen=True)
class StructureWitness:
    """A concrete finite certificate, checkable by direct arithmetic.

    ``payload`` is a strictly increasing tuple for chain/generator kinds
    and a single integer for hits.  ``verified`` is set only after the
    certificate has been re-checked against the view, independently of
    the search that produced it.
    """

    kind: str
    payload: object
    verified: bool
    depth: Optional[int] = None
    bound: Optional[int] = None
    pair: Optional[tuple] = None

    def to_json(self) -> dict:
        key = _PAYLOAD_KEYS[self.kind]
        payload = (list(self.payload) if isinstance(self.payload, tuple)
                   else self.payload)
        out = {"kind": self.kind, key: payload, "verified": self.verified}
        if self.depth is not None:
            out["depth"] = self.depth
        if self.bound is not None:
            out["bound"] = self.bound
        if self.pair is not None:
            out["pair"] = list(self.pair)
        return out


def witness_from_json(obj: dict) -> StructureWitness:
    """Rebuild a witness from its JSON form (inverse of ``to_json``)."""
    kind = obj.get("kind")
    if kind not in _PAYLOAD_KEYS:
        raise ValidationError(f"unknown witness kind {kind!r}")
    payload = obj[_PAYLOAD_KEYS[kind]]
    if isinstance(payload, list):
        payload = tuple(payload)
    pair = obj.get("pair")
    return StructureWitness(kind=kind, payload=payload,
                            verified=bool(obj.get("verified")),
                            depth=obj.get("depth"), bound=obj.get("bound"),
                            pair=tuple(pair) if pair is not None else None)


def finite_sums(values: Sequence[int]) -> list:
    """All nonempty subset sums, sorted."""
    out = set()
    for r in range(1, len(values) + 1):
        for combo in combinations(values, r):
            out.add(sum(combo))
    return sorted(out)


def verify_witness(witness: StructureWitness, view: PSetView) -> bool:
    """Re-check a certificate by direct membership arithmetic."""
    kind = witness.kind
    if kind == "delta_chain":
        chain = witness.payload
        return all(member(view, big - small)
                   for small, big in combinations(chain, 2))
    if kind == "ip_generator":
        return all(member(view, s) for s in finite_sums(witness.payload))
    if kind == "ip_ip_generator":
        sums = finite_sums(witness.payload)
        return all(member(view, big - small)
                   for small, big in combinations(sums, 2))
    if kind == "intersective_hit":
        if witness.pair is None:
            return False
        a, b = witness.pair
        return member(view, witness.payload) and b - a == witness.payload
    raise ValidationError(f"unknown witness kind {kind!r}")


def find_delta_chain(view: PSetView, depth: int, search_bound: int,
                     budget: int = DEFAULT_BUDGET) -> Optional[StructureWitness]:
    """Lexicographically least s_1 < ... < s_depth with all differences in P.

    Returns None when no chain of this depth fits inside the bound; that
    is not evidence that no longer chain exists beyond it.  Candidates
    are explored depth-first in increasing order and pruned on the first
    failing difference, so the first complete chain is the lexicographic
    minimum.
    """
    if depth < 2:
        raise ValidationError("delta chains need depth >= 2")
    _check_bound(view, search_bound)
    bits = view.bits
    nodes = 0
    chain: list = []

    def rec() -> bool:
        nonlocal nodes
        lo = chain[-1] + 1 if chain else 1
        for s in range(lo, search_bound + 1):
            nodes += 1
            if nodes > budget:
                raise BudgetError("delta-chain budget exhausted", nodes)
            if all((bits >> (s - c - 1)) & 1 for c in chain):
                chain.append(s)
                if len(chain) == depth or rec():
                    return True
                chain.pop()
        return False

    if not rec():
        return None
    witness = StructureWitness(kind="delta_chain", payload=tuple(chain),
                               verified=False, depth=depth, bound=search_bound)
    ok = verify_witness(witness, view)
    return StructureWitness(kind="delta_chain", payload=tuple(chain),
                            verified=ok, depth=depth, bound=search_bound)


def _check_bound(view: PSetView, search_bound: int) -> None:
    if not isinstance(search_bound, int) or isinstance(search_bound, bool) \
            or search_bound < 1:
        raise ValidationError("search bound must be a positive integer")
    if search_bound > view.horizon:
        raise ValidationError(
            f"search bound {search_bound} exceeds horizon {view.horizon}")


def _find_generator(view: PSetView, depth: int, search_bound: int,
                    budget: int, check_extension) -> Optional[tuple]:
    # lexicographic DFS over increasing tuples with sum(A) <= bound;
    # check_extension(sums, a) judges one more element against P
    bits = view.bits
    nodes = 0
    chosen: list = []

    def rec(sums: tuple) -> bool:
        nonlocal nodes
        remaining = depth - len(chosen) - 1
        lo = chosen[-1] + 1 if chosen else 1
        # smallest possible completion uses a, a+1, ..., a+remaining
        hi = (search_bound - sum(chosen) - remaining * (remaining + 1) // 2)
        hi = hi // (remaining + 1)
        for a in range(lo, hi + 1):
            nodes += 1
            if nodes > budget:
                raise BudgetError("generator budget exhausted", nodes)
            new_sums = check_extension(bits, sums, a)
            if new_sums is None:
                continue
            chosen.append(a)
            if len(chosen) == depth or rec(new_sums):
                return True
            chosen.pop()
        return False

    if rec(()):
        return tuple(chosen)
    return None


def _extend_ip(bits: int, sums: tuple, a: int):
    new = (a,) + tuple(s + a for s in sums)
    for s in new:
        if not (bits >> (s - 1)) & 1:
            return None
    return sums + new


def _extend_ip_ip(bits: int, sums: tuple, a: int):
    new = (a,) + tuple(s + a for s in sums)
    merged = sums + new
    for x in new:
        for y in merged:
            d = x - y if x > y else y - x
            if d and not (bits >> (d - 1)) & 1:
                return None
    return merged


def find_ip_generator(view: PSetView, depth: int, search_bound: int,
                      budget: int = DEFAULT_BUDGET) -> Optional[StructureWitness]:
    """Least a_1 < ... < a_depth with every nonempty subset sum in P.

    The bound caps max(FS(A)) = sum(A); every intermediate sum is then
    inside the horizon automatically.
    """
    if depth < 1:
        raise ValidationError("IP generators need depth >= 1")
    _check_bound(view, search_bound)
    found = _find_generator(view, depth, search_bound, budget, _extend_ip)
    if found is None:
        return None
    witness = StructureWitness(kind="ip_generator", payload=found,
                               verified=False, depth=depth, bound=search_bound)
    ok = verify_witness(witness, view)
    return StructureWitness(kind="ip_generator", payload=found, verified=ok,
                            depth=depth, bound=search_bound)


def find_ip_ip_generator(view: PSetView, depth: int, search_bound: int,
                         budget: int = DEFAULT_BUDGET) -> Optional[StructureWitness]:
    """Least A with every difference of finite sums u - v > 0 in P.

    The sums themselves need not be members, only their differences; a
    depth-1 generator is vacuous (FS has a single element) and returns
    (1,) whenever the bound admits it.
    """
    if depth < 1:
        raise ValidationError("IP-IP generators need depth >= 1")
    _check_bound(view, search_bound)
    found = _find_generator(view, depth, search_bound, budget, _extend_ip_ip)
    if found is None:
        return None
    witness = StructureWitness(kind="ip_ip_generator", payload=found,
                               verified=False, depth=depth, bound=search_bound)
    ok = verify_witness(witness, view)
    return StructureWitness(kind="ip_ip_generator", payload=found, verified=ok,
                            depth=depth, bound=search_bound)


@dataclass(frozen=True)
class SyndeticGapReport:
    """Lengths of the gaps of A inside [1..H].

    ``interior_gap`` is the largest maximal run of consecutive
    non-members that is bounded by members (or by the left edge of N,
    which censors nothing); the run touching the right edge is reported
    separately as ``censored_tail`` because the horizon truncates it.
    """

    interior_gap: int
    censored_tail: int


def syndetic_gap(view: PSetView) -> Optional[SyndeticGapReport]:
    """Gap profile of the members, or None when A is empty on [1..H]."""
    if not view.bits:
        return None
    first = (view.bits & -view.bits).bit_length()
    last = view.bits.bit_length()
    interior = first - 1
    run = 0
    for n in range(first, last + 1):
        if (view.bits >> (n - 1)) & 1:
            if run > interior:
                interior = run
            run = 0
        else:
            run += 1
    return SyndeticGapReport(interior_gap=interior,
                             censored_tail=view.horizon - last)


def thick_run(view: PSetView) -> int:
    """Length of the longest run of consecutive members in [1..H]."""
    best = 0
    run = 0
    for n in range(1, view.horizon + 1):
        if (view.bits >> (n - 1)) & 1:
            run += 1
            if run > best:
                best = run
        else:
            run = 0
    return best


def intersective_refute(e_view: PSetView,
                        a_view: PSetView) -> Optional[StructureWitness]:
    """Least e in E intersect (A - A) within the horizon, or None.

    A None is refutation evidence that A - A avoids E up to H.  Hits are
    returned with one witnessing pair (a, b), b - a = e, and re-verified.
    """
    if e_view.horizon != a_view.horizon:
        raise ValidationError("E and A must share a horizon")
    horizon = e_view.horizon
    diffs = 0
    rest = a_view.bits
    while rest:
        low = rest & -rest
        diffs |= a_view.bits >> low.bit_length()
        rest ^= low
    hits = diffs & e_view.bits
    if not hits:
        return None
    e = (hits & -hits).bit_length()
    pair = None
    rest = a_view.bits
    while rest:
        low = rest & -rest
        a = low.bit_length()
        rest ^= low
        if a + e <= horizon and (a_view.bits >> (a + e - 1)) & 1:
            pair = (a, a + e)
            break
    witness = StructureWitness(kind="intersective_hit", payload=e,
                               verified=False, bound=horizon, pair=pair)
    ok = verify_witness(witness, e_view) and pair is not None \
        and member(a_view, pair[0]) and member(a_view, pair[1])
    return StructureWitness(kind="intersective_hit", payload=e, verified=ok,
                            bound=horizon, pair=pair)


@dataclass(frozen=True)
class BohrAvoidanceReport:
    """Finite-horizon comparison of P against one candidate Bohr set.

    ``contained`` says whether every Bohr member up to the horizon lies
    in P; ``least_missing`` is the first one that does not.  Neither
    certifies anything beyond the horizon.
    """

    alpha: float
    interval: tuple
    bohr_size: int
    in_p: int
    least_missing: Optional[int]
    contained: bool


def check_bohr_avoidance(view: PSetView, alpha: float,
                         interval: tuple) -> BohrAvoidanceReport:
    """Check whether P contains the candidate Bohr set up to the horizon."""
    spec = Bohr(alpha, tuple(interval))
    spec.validate()
    bohr_bits = spec._bits(view.horizon)
    missing = bohr_bits & ~view.bits
    least = (missing & -missing).bit_length() if missing else None
    return BohrAvoidanceReport(
        alpha=float(alpha), interval=tuple(float(x) for x in interval),
        bohr_size=bohr_bits.bit_count(),
        in_p=(bohr_bits & view.bits).bit_count(),
        least_missing=least, contained=not missing)
