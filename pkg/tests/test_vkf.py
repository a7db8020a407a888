import pytest

from tverberg_kit.core.convexity import CandidateTriple, hull_membership, triple_intersection
from tverberg_kit.core.errors import InputError
from tverberg_kit.core.rational import PointConfig, canonical_order
from tverberg_kit.finders.vkf import VkfWitness, canonical_triples, find_vkf3, verify_vkf
from tverberg_kit.utils.generate import generate_instance

TRIANGLES = PointConfig.from_rows([
    [2, 0, 0], [-2, 2, 0], [-2, -2, 0],
    [-2, 0, 0], [2, 2, 0], [2, -2, 0],
    [0, 3, 0], [3, -3, 0], [-3, -3, 0],
    [0, 0, 5], [0, 0, 7],
])


def test_canonical_triples_count_and_order():
    triples = list(canonical_triples(11, 3))
    assert len(triples) == 15400
    assert triples[0] == ((0, 1, 2), (3, 4, 5), (6, 7, 8))
    assert triples == sorted(triples)
    for P, Q, R in triples[:500]:
        assert P[0] < Q[0] < R[0]
        assert not set(P) & set(Q) and not set(Q) & set(R) and not set(P) & set(R)


def test_origin_triangles():
    cert = triple_intersection(TRIANGLES, CandidateTriple.of((0, 1, 2), (3, 4, 5), (6, 7, 8)))
    assert cert is not None
    w = find_vkf3(TRIANGLES, 1)
    assert w.parts == ((0, 1, 2), (3, 4, 5), (6, 7, 8))
    assert verify_vkf(TRIANGLES, w)


def test_shape_checks():
    with pytest.raises(InputError):
        find_vkf3(TRIANGLES, 2)
    with pytest.raises(InputError):
        find_vkf3(PointConfig(3, TRIANGLES.points[:10]), 1)
    with pytest.raises(InputError):
        find_vkf3(TRIANGLES, 0)


def test_verify_vkf_negatives():
    w = find_vkf3(TRIANGLES, 1)
    assert not verify_vkf(TRIANGLES, VkfWitness(((0, 1), (3, 4, 5), (6, 7, 8)), w.cert, 1))
    assert not verify_vkf(TRIANGLES, VkfWitness(((0, 1, 2), (2, 4, 5), (6, 7, 8)), w.cert, 1))
    assert not verify_vkf(TRIANGLES, VkfWitness(w.parts, w.cert, 2))


def test_random_instance_matches_full_scan():
    config = generate_instance(7, 11, 3, 100)
    w = find_vkf3(config, 1)
    assert verify_vkf(config, w)
    first = next(t for t in canonical_triples(11, 3) if triple_intersection(config, CandidateTriple(t)) is not None)
    assert w.parts == first


@pytest.mark.slow
def test_eleven_points_in_space_sweep():
    for seed in range(50):
        config = generate_instance(seed, 11, 3, 100)
        assert verify_vkf(config, find_vkf3(config, 1))


def _geometry(config, w):
    return sorted(sorted(config.points[i] for i in p) for p in w.parts)


@pytest.mark.slow
def test_relabeling_then_canonical_order_gives_same_triple():
    config = generate_instance(12, 11, 3, 100)
    shuffled = config.permuted((10, 3, 7, 0, 5, 9, 1, 8, 2, 6, 4))
    a, _ = canonical_order(config)
    b, _ = canonical_order(shuffled)
    wa, wb = find_vkf3(a, 1), find_vkf3(b, 1)
    assert _geometry(a, wa) == _geometry(b, wb)


@pytest.mark.slow
def test_fast_mode_returns_a_valid_witness():
    config = generate_instance(3, 11, 3, 100)
    w = find_vkf3(config, 1, jobs=2, fast=True)
    assert verify_vkf(config, w)


def test_avoided_point_skips_triples_containing_it():
    config = generate_instance(7, 11, 3, 100)
    w = find_vkf3(config, 1)
    q = w.cert.common_point
    w2 = find_vkf3(config, 1, avoid=q)
    assert w2.parts > w.parts
    assert verify_vkf(config, w2)
    assert not all(hull_membership(q, config.subset(p)) is not None for p in w2.parts)
    first = next(t for t in canonical_triples(11, 3)
                 if not all(hull_membership(q, config.subset(p)) is not None for p in t)
                 and triple_intersection(config, CandidateTriple(t)) is not None)
    assert w2.parts == first


def test_avoided_point_above_a_flat_part_is_outside():
    w = find_vkf3(TRIANGLES, 1, avoid=(0, 0, 1))
    assert w.parts == ((0, 1, 2), (3, 4, 5), (6, 7, 8))
    assert verify_vkf(TRIANGLES, w)
