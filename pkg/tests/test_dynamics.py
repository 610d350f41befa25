from fractions import Fraction

import pytest

from spacelab import (
    Configuration,
    ValidationError,
    build_pset,
    cylinder_distance_exponent,
    f_statistic,
    make_point,
    named_points,
    periodic_point_check,
    proximal_probe,
    zero_point,
)
from spacelab.dynamics import OrbitPoint, random_point
from spacelab.psets import Complement, Multiples


def _point(view, word):
    return OrbitPoint(config=Configuration.from_word(word), label="test",
                      admissible=True, spec_digest=view.spec_digest)


def brute_f(x_word, y_word, l, n):
    """Direct-count oracle for the agreement statistic."""
    hits = 0
    for m in range(n):
        if all(x_word[m + i] == y_word[m + i] for i in range(l + 1)):
            hits += 1
    return Fraction(hits, n)


def test_cylinder_distance():
    a = Configuration.from_word("10110")
    b = Configuration.from_word("10100")
    assert cylinder_distance_exponent(a, b) == 3
    assert cylinder_distance_exponent(a, a) is None
    c = Configuration.from_word("00110")
    assert cylinder_distance_exponent(a, c) == 0


def test_zero_point(co3_view):
    p = zero_point(co3_view, 12)
    assert p.config.word() == "0" * 12
    assert p.admissible


def test_make_point_names(co3_view, m2_view):
    assert make_point(co3_view, "zero", 16).config.ones == ()
    assert make_point(co3_view, "greedy", 16).config.ones == (0, 1, 2)
    assert make_point(co3_view, "maxones:8", 16).config.ones == (0, 1, 2)
    peri = make_point(m2_view, "periodic:4", 16)
    assert peri.config.ones == (0, 4, 8, 12)
    assert peri.admissible
    with pytest.raises(ValidationError):
        make_point(co3_view, "periodic:4", 16)
    with pytest.raises(ValidationError):
        make_point(co3_view, "mystery", 16)
    with pytest.raises(ValidationError):
        make_point(co3_view, "random", 16)


def test_random_point_deterministic(co3_view):
    a = random_point(co3_view, 64, seed=7)
    b = random_point(co3_view, 64, seed=7)
    c = random_point(co3_view, 64, seed=8)
    assert a.config == b.config
    assert a.label == "random:7"
    assert a.config != c.config
    assert a.admissible


def test_named_points(co3_view):
    pts = named_points(co3_view, 32, maxones_n=8)
    assert [p.label for p in pts] == ["zero", "greedy", "maxones:8"]
    assert all(p.admissible for p in pts)
    assert all(p.config.length == 32 for p in pts)


def test_f_statistic_matches_brute(co3_view):
    x = make_point(co3_view, "greedy", 64)
    y = make_point(co3_view, "zero", 64)
    for l in (0, 1, 3):
        report = f_statistic(x, y, l, [4, 16, 32])
        for n, value in report.values:
            assert value == brute_f(x.config.word(), y.config.word(), l, n)


def test_f_statistic_frozen(co3_view):
    x = make_point(co3_view, "greedy", 64)
    y = make_point(co3_view, "zero", 64)
    report = f_statistic(x, y, 0, [16, 32, 64])
    assert report.values == ((16, Fraction(13, 16)),
                             (32, Fraction(29, 32)),
                             (64, Fraction(61, 64)))
    assert report.tail_min == Fraction(61, 64)


def test_f_statistic_floor_parity(full_view):
    x = _point(full_view, "10" * 16)
    y = _point(full_view, "0" * 32)
    report = f_statistic(x, y, 0, [7, 8, 9])
    for n, value in report.values:
        assert value == brute_f(x.config.word(), y.config.word(), 0, n)
        assert value == Fraction(n // 2, n)


def test_f_statistic_self_is_one(co3_view):
    x = make_point(co3_view, "greedy", 64)
    report = f_statistic(x, x, 2, [8, 32])
    assert all(value == 1 for _, value in report.values)


def test_f_statistic_horizon_guard(co3_view):
    x = make_point(co3_view, "zero", 16)
    y = make_point(co3_view, "greedy", 16)
    with pytest.raises(ValidationError):
        f_statistic(x, y, 4, [16])
    with pytest.raises(ValidationError):
        f_statistic(x, y, 0, [])


def test_proximal_probe():
    view = build_pset(Complement(of=Multiples(k=3)), 256)
    x = make_point(view, "zero", 256)
    y = make_point(view, "greedy", 256)
    for block in (1, 8, 32):
        assert proximal_probe(x, y, block) == 3
    assert proximal_probe(x, x, 16) == 0


def test_proximal_probe_failure():
    full = build_pset(Multiples(k=1), 64)
    x = _point(full, "10" * 32)
    y = _point(full, "0" * 64)
    assert proximal_probe(x, y, 2) is None
    assert proximal_probe(x, y, 1) == 1


def test_periodic_point_check():
    m3 = build_pset(Multiples(k=3), 30)
    result = periodic_point_check(m3, 3, 30)
    assert result.point is not None
    assert result.point.config.ones == tuple(range(0, 30, 3))
    assert result.point.admissible
    assert result.failing_multiple is None

    co3 = build_pset(Complement(of=Multiples(k=3)), 30)
    result = periodic_point_check(co3, 3, 30)
    assert result.point is None
    assert result.failing_multiple == 3

    m2 = build_pset(Multiples(k=2), 30)
    result = periodic_point_check(m2, 4, 30)
    assert result.point is not None
    result = periodic_point_check(m2, 3, 30)
    assert result.point is None
    assert result.failing_multiple == 3


def test_periodic_validation(m3_view):
    with pytest.raises(ValidationError):
        periodic_point_check(m3_view, 0, 30)
    with pytest.raises(ValidationError):
        periodic_point_check(m3_view, 3, 100)
