from fractions import Fraction

import pytest

from tverberg_kit.core.errors import InputError
from tverberg_kit.core.rational import (
    PointConfig,
    affine_dim,
    as_rat,
    canonical_order,
    is_general_position,
    null_vector,
    rank,
    solve_exact,
    sqrt_lower,
    sqrt_upper,
)
from tverberg_kit.utils.generate import SplitMix64


def test_rank_examples():
    assert rank([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 3
    assert rank([[0, 0, 0, 0], [0, 0, 0, 0]]) == 0
    assert rank([[1, 2], [2, 4]]) == 1


def test_rank_rejects_empty_and_ragged():
    with pytest.raises(InputError):
        rank([])
    with pytest.raises(InputError):
        rank([[1, 2], [3]])


def test_rank_invariant_under_row_operations():
    rng = SplitMix64(11)
    for _ in range(20):
        rows = [[rng.rational(7) for _ in range(4)] for _ in range(3)]
        rows.append([a + 2 * b for a, b in zip(rows[0], rows[1])])
        r = rank(rows)
        assert r == rank(list(reversed(rows)))
        assert r == rank([[Fraction(-3, 5) * x for x in row] for row in rows])
        assert r <= 3


def test_exact_arithmetic_round_trip():
    a, b = as_rat("-3/7"), as_rat("22/9")
    assert (a + b) - b == a
    assert as_rat("4/6") == Fraction(2, 3)


def test_as_rat_rejects_floats_and_bad_strings():
    for bad in (0.5, "1/0", "abc", True):
        with pytest.raises(InputError):
            as_rat(bad)


def test_affine_dim_examples():
    assert affine_dim([]) == -1
    assert affine_dim([(Fraction(3), Fraction(4))]) == 0
    assert affine_dim(PointConfig.from_rows([[0, 0], [1, 0], [2, 0]]).points) == 1
    assert affine_dim(PointConfig.from_rows([[0, 0], [1, 0], [0, 1]]).points) == 2


def test_affine_dim_monotone_and_bounded():
    pts = PointConfig.from_rows([[0, 0, 0], [1, 0, 0], [2, 0, 0], [0, 1, 0], [0, 0, 1]]).points
    dims = [affine_dim(pts[:m]) for m in range(len(pts) + 1)]
    assert dims == sorted(dims)
    assert all(d <= min(m - 1, 3) for m, d in enumerate(dims))


def test_null_vector_and_solve_exact():
    v = null_vector([[1, 2, 3], [0, 1, 1]])
    assert v is not None
    assert 1 * v[0] + 2 * v[1] + 3 * v[2] == 0 and v[1] + v[2] == 0
    assert null_vector([[1, 0], [0, 1]]) is None
    assert solve_exact([[2, 0], [0, 4]], [1, 1]) == (Fraction(1, 2), Fraction(1, 4))
    assert solve_exact([[1, 1], [2, 2]], [1, 2]) is None


def test_general_position_examples():
    assert is_general_position(PointConfig.from_rows([[0, 0], [1, 0], [0, 1]]))
    report = is_general_position(PointConfig.from_rows([[0, 0], [1, 0], [2, 0]]))
    assert not report
    assert report.violator == (0, 1, 2)
    coplanar = PointConfig.from_rows([[0, 0, 0], [1, 0, 0], [0, 1, 0], [1, 1, 0]])
    assert not is_general_position(coplanar)


def test_general_position_fails_on_repeated_point():
    report = is_general_position(PointConfig.from_rows([[0, 0], [5, 1], [1, 7], [5, 1]]))
    assert report.violator == (1, 3)


def test_point_config_validation():
    with pytest.raises(InputError):
        PointConfig.from_rows([[0, 0], [1]])
    with pytest.raises(InputError):
        PointConfig.from_rows([[0, 0], [1, 1]], labels=["a", "a"])
    config = PointConfig.from_rows([["1/2", 0], [1, 1]])
    assert config.labels == ("P0", "P1")
    assert config.points[0][0] == Fraction(1, 2)


def test_canonical_order_sorts_lexicographically():
    config = PointConfig.from_rows([[2, 0], [0, 5], [0, 1]], labels=["a", "b", "c"])
    ordered, order = canonical_order(config)
    assert order == (2, 1, 0)
    assert ordered.labels == ("c", "b", "a")


def test_sqrt_bounds_bracket_the_root():
    for q in (Fraction(2), Fraction(1, 2), Fraction(9, 4), Fraction(0)):
        lo, hi = sqrt_lower(q, 20), sqrt_upper(q, 20)
        assert lo * lo <= q <= hi * hi
        assert hi - lo <= Fraction(1, 1 << 20)
    assert sqrt_lower(Fraction(1, 4)) == sqrt_upper(Fraction(1, 4)) == Fraction(1, 2)
