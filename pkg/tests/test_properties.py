import itertools

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from spacelab import (
    Configuration,
    build_pset,
    count_words,
    elements,
    find_ip_generator,
    finite_sums,
    is_admissible,
    max_ones,
    member,
    verify_witness,
)
from spacelab.detect import StructureWitness
from spacelab.psets import Complement, Explicit, Intersect, Multiples, Union
from conftest import brute_count

SETTINGS = settings(max_examples=60, deadline=None, derandomize=True,
                    suppress_health_check=[HealthCheck.too_slow])

subsets = st.sets(st.integers(min_value=1, max_value=12), max_size=8)


def view_of(elems, horizon=12):
    if elems:
        return build_pset(Explicit(elems=tuple(sorted(elems))), horizon)
    return build_pset(Complement(of=Multiples(k=1)), horizon)


@given(elems=subsets, n=st.integers(min_value=0, max_value=10))
@SETTINGS
def test_count_agrees_with_set_semantics(elems, n):
    view = view_of(elems)
    assert count_words(view, n) == brute_count(elems, n)


@given(elems=subsets, n=st.integers(min_value=0, max_value=10))
@SETTINGS
def test_naive_equals_optimized(elems, n):
    view = view_of(elems)
    assert (count_words(view, n, mode="naive")
            == count_words(view, n, mode="optimized"))


@given(elems=subsets, n=st.integers(min_value=1, max_value=10))
@SETTINGS
def test_heredity_of_max_witness(elems, n):
    view = view_of(elems)
    _, config = max_ones(view, n)
    for i in range(config.length + 1):
        for j in range(i, config.length + 1):
            sub = Configuration(
                length=j - i,
                ones=tuple(p - i for p in config.ones if i <= p < j))
            assert is_admissible(sub, view)


@given(elems=subsets, n=st.integers(min_value=0, max_value=9))
@SETTINGS
def test_count_monotone_in_p(elems, n):
    small = view_of(elems)
    grown = view_of(set(elems) | {1})
    assert count_words(small, n) <= count_words(grown, n)


@given(elems=subsets, m=st.integers(min_value=0, max_value=8),
       n=st.integers(min_value=0, max_value=8))
@SETTINGS
def test_submultiplicative(elems, m, n):
    view = view_of(elems, horizon=16)
    assert (count_words(view, m + n)
            <= count_words(view, m) * count_words(view, n))


@given(elems=subsets)
@SETTINGS
def test_count_monotone_in_n(elems):
    view = view_of(elems)
    counts = [count_words(view, n) for n in range(11)]
    assert all(a <= b for a, b in zip(counts, counts[1:]))


@given(a=subsets, b=subsets)
@SETTINGS
def test_boolean_algebra(a, b):
    if not a or not b:
        return
    sa = Explicit(elems=tuple(sorted(a)))
    sb = Explicit(elems=tuple(sorted(b)))
    union = build_pset(Union(parts=(sa, sb)), 12)
    inter = build_pset(Intersect(parts=(sa, sb)), 12)
    comp = build_pset(Complement(of=sa), 12)
    assert set(elements(union)) == (a | b) & set(range(1, 13))
    assert set(elements(inter)) == a & b & set(range(1, 13))
    assert set(elements(comp)) == set(range(1, 13)) - a


@given(elems=subsets, shift=st.integers(min_value=0, max_value=4))
@SETTINGS
def test_shift_invariance(elems, shift):
    view = view_of(elems)
    word = max_ones(view, 8)[1]
    shifted = Configuration(length=word.length + shift,
                            ones=tuple(p + shift for p in word.ones))
    assert is_admissible(shifted, view_of(elems, horizon=16))


@given(gens=st.sets(st.integers(min_value=1, max_value=6),
                    min_size=1, max_size=3))
@SETTINGS
def test_ip_witness_gives_delta_chain(gens):
    gens = tuple(sorted(gens))
    fs = finite_sums(gens)
    if max(fs) > 30:
        return
    view = build_pset(Explicit(elems=tuple(sorted(fs))), 30)
    witness = find_ip_generator(view, len(gens), max(fs))
    assert witness is not None
    assert verify_witness(witness, view)
    # prefix sums of the generators form a chain whose differences are
    # exactly the subset sums of consecutive stretches, all in FS
    prefix = [0]
    for g in witness.payload:
        prefix.append(prefix[-1] + g)
    chain = tuple(p + 1 for p in prefix)
    diffs = {b - a for i, a in enumerate(chain) for b in chain[i + 1:]}
    assert all(member(view, d) for d in diffs)
    delta = StructureWitness(kind="delta_chain", payload=chain,
                             verified=False, depth=len(chain),
                             bound=max(chain))
    assert verify_witness(delta, view)


@given(elems=subsets, n=st.integers(min_value=1, max_value=10))
@SETTINGS
def test_omega_bounds(elems, n):
    view = view_of(elems)
    omega, config = max_ones(view, n)
    assert 1 <= omega <= n
    assert len(config.ones) == omega
    assert is_admissible(config, view)
    assert (1 << omega) <= count_words(view, n)
