"""Partition lattice construction, meets/joins, and Mobius values."""

from __future__ import annotations

import random

import pytest

from configtop.partitions import join, meet
from configtop import (
    OrderError,
    Partition,
    SizeLimitError,
    bell_number,
    build_partition_lattice,
    iter_partitions,
    mobius,
)

BELL = [1, 1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975, 678570, 4213597]


def test_bell_numbers():
    for n, b in enumerate(BELL):
        assert bell_number(n) == b


def test_iter_partitions_counts():
    for n in range(1, 8):
        seen = list(iter_partitions(n))
        assert len(seen) == bell_number(n)
        assert len(set(seen)) == len(seen)


def test_partition_canonical_form():
    p = Partition.from_blocks(4, [(3, 1), (4, 2)])
    assert p.blocks == ((1, 3), (2, 4))
    assert str(p) == "13|24"
    assert Partition.from_string("13|24", 4) == p


def test_partition_string_round_trip_large_ground_set():
    # Two-digit points force the comma spelling.
    p = Partition.from_blocks(11, [tuple(range(1, 11)), (11,)])
    s = str(p)
    assert "," in s
    assert Partition.from_string(s, 11) == p


def test_from_blocks_rejects_bad_cover():
    with pytest.raises(ValueError):
        Partition.from_blocks(3, [(1, 2)])
    with pytest.raises(ValueError):
        Partition.from_blocks(3, [(1, 2), (2, 3)])
    with pytest.raises(ValueError):
        Partition.from_blocks(3, [(1, 2), (3, 4)])


def test_refinement_basics():
    bot = Partition.singletons(4)
    top = Partition.one_block(4)
    mid = Partition.from_string("12|34", 4)
    assert bot.refines(mid)
    assert mid.refines(top)
    assert bot.refines(top)
    assert not top.refines(mid)
    assert mid.refines(mid)
    other = Partition.from_string("13|24", 4)
    assert not mid.refines(other)
    assert not other.refines(mid)


def test_meet_join_small():
    a = Partition.from_string("12|34", 4)
    b = Partition.from_string("13|24", 4)
    assert meet(a, b) == Partition.singletons(4)
    assert join(a, b) == Partition.one_block(4)
    c = Partition.from_string("12|3|4", 4)
    assert meet(a, c) == c
    assert join(a, c) == a


def test_meet_join_lattice_axioms_random():
    rng = random.Random(71)
    parts = list(iter_partitions(5))
    for _ in range(300):
        a, b = rng.choice(parts), rng.choice(parts)
        m = meet(a, b)
        j = join(a, b)
        assert m.refines(a) and m.refines(b)
        assert a.refines(j) and b.refines(j)
        # Meet is the greatest lower bound, join the least upper bound.
        for c in rng.sample(parts, 12):
            if c.refines(a) and c.refines(b):
                assert c.refines(m)
            if a.refines(c) and b.refines(c):
                assert j.refines(c)


def test_lattice_structure():
    lat = build_partition_lattice(4)
    assert len(lat.elements) == 15
    assert lat.bottom == Partition.singletons(4)
    assert lat.top == Partition.one_block(4)
    assert len(lat.elements_of_size(2)) == 7  # S(4, 2)
    assert len(lat.elements_of_size(3)) == 6  # S(4, 3)
    assert len(lat.proper_part()) == 13


def test_lattice_interval_endpoints():
    lat = build_partition_lattice(4)
    mid = Partition.from_string("12|3|4", 4)
    below = lat.interval(lat.bottom, mid)
    assert set(below) == {lat.bottom, mid}
    with pytest.raises(OrderError):
        lat.interval(mid, lat.bottom)


def test_lattice_cap():
    with pytest.raises(SizeLimitError):
        build_partition_lattice(13)
    # A loosened cap admits what the default would reject.
    lat = build_partition_lattice(6, max_bell=203)
    assert len(lat.elements) == 203


def test_mobius_full_interval():
    # mu(bottom, top) = (-1)^(n-1) (n-1)!
    expected = {2: -1, 3: 2, 4: -6, 5: 24, 6: -120}
    for n, value in expected.items():
        lat = build_partition_lattice(n)
        assert mobius(lat, lat.bottom, lat.top) == value


def test_mobius_sum_rule():
    # Summing mu(x, z) over an interval [x, y] gives zero unless x == y.
    lat = build_partition_lattice(4)
    rng = random.Random(9)
    pairs = [
        (x, y)
        for x in lat.elements
        for y in lat.elements
        if x.refines(y) and x != y
    ]
    for x, y in rng.sample(pairs, 30):
        total = sum(mobius(lat, x, z) for z in lat.interval(x, y))
        assert total == 0


def test_mobius_incomparable():
    lat = build_partition_lattice(4)
    a = Partition.from_string("12|34", 4)
    b = Partition.from_string("13|24", 4)
    with pytest.raises(OrderError):
        mobius(lat, a, b)


def test_lattice_doc_round_trip():
    lat = build_partition_lattice(4)
    doc = lat.to_doc()
    assert doc["n"] == 4
    back = type(lat).from_doc(doc)
    assert back.elements == lat.elements
    assert back.leq(back.bottom, back.top)
