from dataclasses import replace

import pytest

from tverberg_kit.core.convexity import CandidateTriple, IntersectionCertificate, triple_intersection
from tverberg_kit.core.errors import ExhaustionError, InputError, PreconditionError
from tverberg_kit.core.rational import PointConfig
from tverberg_kit.finders.scan import first_success, ordered_map
from tverberg_kit.finders.tverberg import (
    brute_force_all,
    canonical_partitions,
    complete_partition,
    find_tverberg3,
    verify_witness,
)
from tverberg_kit.utils.generate import generate_instance

SQUARE_AND_AXIS = PointConfig.from_rows([[1, 1], [-1, -1], [-1, 1], [1, -1], [0, 0], [2, 0], [-2, 0]])


def _first_even(x):
    return x * 10 if x % 2 == 0 else None


def test_canonical_partitions_counts_and_order():
    parts = list(canonical_partitions(7))
    assert len(parts) == 301
    assert parts[0] == ((0,), (1,), (2, 3, 4, 5, 6))
    assert list(parts) == sorted(parts)
    for p in parts:
        assert sorted(i for block in p for i in block) == list(range(7))
        assert [block[0] for block in p] == sorted(block[0] for block in p)
    assert len(list(canonical_partitions(3))) == 1
    assert list(canonical_partitions(2)) == []


def test_canonical_partitions_are_generated_lazily():
    stream = canonical_partitions(17)
    assert next(stream) == ((0,), (1,), tuple(range(2, 17)))
    assert next(stream) == ((0,), (1, 2), tuple(range(3, 17)))


def test_square_and_axis_witness_in_oracle():
    w = find_tverberg3(SQUARE_AND_AXIS)
    assert verify_witness(SQUARE_AND_AXIS, w)
    oracle = [parts for parts, _ in brute_force_all(SQUARE_AND_AXIS)]
    assert w.parts in oracle
    assert ((0, 1), (2, 3), (4, 5, 6)) in oracle
    assert w.parts == oracle[0]


def test_triangle_has_no_partition():
    triangle = PointConfig.from_rows([[0, 0], [1, 0], [0, 1]])
    assert brute_force_all(triangle) == []
    with pytest.raises(ExhaustionError) as info:
        find_tverberg3(triangle)
    assert info.value.scanned == 1


def test_degenerate_input_still_searched():
    collinear = PointConfig.from_rows([[i, 0] for i in range(7)])
    found = brute_force_all(collinear)
    assert found
    assert all(verify_witness(collinear, _witness(collinear, parts, cert)) for parts, cert in found)


def _witness(config, parts, cert):
    return complete_partition(config, CandidateTriple(parts), cert)


def test_input_guards():
    with pytest.raises(InputError):
        find_tverberg3(PointConfig.from_rows([[0, 0], [1, 1]]))
    with pytest.raises(InputError):
        brute_force_all(generate_instance(1, 13, 2, 10))


def test_seven_points_in_the_plane():
    for seed in range(5):
        config = generate_instance(seed, 7, 2, 100)
        w = find_tverberg3(config)
        assert verify_witness(config, w)
        assert w.parts in [parts for parts, _ in brute_force_all(config)]


@pytest.mark.slow
def test_seven_points_in_the_plane_sweep():
    for seed in range(200):
        config = generate_instance(seed, 7, 2, 100)
        assert verify_witness(config, find_tverberg3(config))


@pytest.mark.slow
def test_nine_points_in_space_oracle_containment():
    for seed in range(3):
        config = generate_instance(seed, 9, 3, 100)
        w = find_tverberg3(config)
        assert verify_witness(config, w)
        assert w.parts == brute_force_all(config)[0][0]


@pytest.mark.slow
def test_parallel_scan_matches_serial():
    config = generate_instance(3, 7, 2, 100)
    assert find_tverberg3(config, jobs=2).parts == find_tverberg3(config).parts


def test_complete_partition_absorbs_leftovers():
    t = CandidateTriple.of((0, 1), (2, 3), (4,))
    cert = triple_intersection(SQUARE_AND_AXIS, t)
    w = complete_partition(SQUARE_AND_AXIS, t, cert)
    assert w.parts == ((0, 1, 5, 6), (2, 3), (4,))
    assert w.cert == cert
    assert verify_witness(SQUARE_AND_AXIS, w)

    full = CandidateTriple.of((0, 1), (2, 3), (4, 5, 6))
    full_cert = triple_intersection(SQUARE_AND_AXIS, full)
    assert complete_partition(SQUARE_AND_AXIS, full, full_cert).parts == full.parts


def test_complete_partition_rejects_bad_certificate():
    t = CandidateTriple.of((0, 1), (2, 3), (4,))
    bogus = IntersectionCertificate((1, 1), (((0, 1),), ((2, 1),), ((4, 1),)))
    with pytest.raises(PreconditionError):
        complete_partition(SQUARE_AND_AXIS, t, bogus)


def test_verify_witness_negatives():
    w = find_tverberg3(SQUARE_AND_AXIS)
    coeffs = w.cert.coefficients
    pos = next(j for j, (_, weight) in enumerate(coeffs[0]) if weight)
    first = tuple((i, -weight if j == pos else weight) for j, (i, weight) in enumerate(coeffs[0]))
    negated = IntersectionCertificate(w.cert.common_point, (first,) + coeffs[1:])
    assert not verify_witness(SQUARE_AND_AXIS, replace(w, cert=negated))
    short = tuple(p for p in w.parts[:2]) + (w.parts[2][:-1],)
    assert not verify_witness(SQUARE_AND_AXIS, replace(w, parts=short))


def test_first_success_serial_and_ordered_map():
    hit, scanned = first_success(_first_even, [1, 3, 4, 6])
    assert hit == (4, 40)
    assert scanned == 3
    assert first_success(_first_even, [1, 3]) == (None, 2)
    assert list(ordered_map(_first_even, [2, 1])) == [20, None]


@pytest.mark.slow
def test_first_success_with_workers_is_canonical():
    items = list(range(1, 1000, 2)) + [2000, 4]
    hit, _ = first_success(_first_even, items, jobs=2, ordered=True)
    assert hit == (2000, 20000)
    fast, _ = first_success(_first_even, items, jobs=2, ordered=False)
    assert fast in ((2000, 20000), (4, 40))
    assert list(ordered_map(_first_even, range(300), jobs=2)) == [_first_even(x) for x in range(300)]
