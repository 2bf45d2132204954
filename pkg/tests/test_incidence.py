"""The energy-to-incidence bridge and the synthetic probe instances."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import F5, F7, group_sets, small_sets
from matgrowth.cosets import heis_profile, t2_profile
from matgrowth.errors import ParameterError
from matgrowth.groups import GroupSet, ginv, gmul
from matgrowth.growth import energy
from matgrowth.incidence import (
    WeightedInstance,
    bridge_report,
    build_instance,
    class_key,
    collinear_stats,
    dot4,
    heis_plane,
    heis_point,
    incidence_count,
    line_groups,
    oriented_bound,
    pair_classes,
    probe_instance,
    quadruple_count,
    random_instance,
    t2_plane,
    t2_point,
)
from oracles import max_collinear


# -- classes and the corner identity -------------------------------------------


@given(small_sets(max_size=8))
def test_pair_classes_cover_all_pairs(a):
    classes = pair_classes(a)
    assert sum(len(pairs) for pairs in classes.values()) == len(a) ** 2
    assert list(classes) == sorted(classes)
    for key, pairs in classes.items():
        for g, v in pairs:
            assert class_key(a.spec, a.group, g, v) == key


@settings(max_examples=30)
@given(small_sets(max_size=5))
def test_corner_identity_inside_classes(a):
    # with the class key fixed, the remaining corner equation is exactly
    # the vanishing of a four-coordinate dot product
    spec, group = a.spec, a.group
    for key, pairs in pair_classes(a).items():
        for g, v in pairs:
            if group == "T2":
                pt = t2_point(spec, g, v)
            else:
                pt = heis_point(spec, g, v, key[1])
            gi = ginv(spec, group, g)
            for h, u in pairs:
                if group == "T2":
                    pl = t2_plane(spec, h, u)
                else:
                    pl = heis_plane(spec, h, u, key[1])
                same = gmul(spec, group, gi, h) == gmul(
                    spec, group, ginv(spec, group, u), v
                )
                assert same == (dot4(spec, pt, pl) == 0)


def test_tuple_normalizations():
    g, v = (2, 1, 3), (4, 2, 2)
    assert t2_point(F5, g, v)[0] == 1
    assert t2_plane(F5, g, v)[2] == 1
    gh, vh = (1, 2, 3), (2, 0, 4)
    assert heis_point(F5, gh, vh, 2)[3] == 1
    assert heis_plane(F5, gh, vh, 2)[0] == 1


@settings(max_examples=20)
@given(small_sets(max_size=6))
def test_bridge_reproduces_the_energy(a):
    report = bridge_report(a)
    assert report.matches_energy
    assert report.total_quadruples == report.total_incidences == energy(a)
    assert report.total_pairs == len(a) ** 2
    assert report.class_count == len(report.classes)
    for cls in report.classes:
        assert cls.match
        assert cls.quadruples == cls.incidences


@given(small_sets(max_size=6))
def test_class_weights_count_pairs(a):
    report = bridge_report(a)
    assert sum(cls.pair_count for cls in report.classes) == len(a) ** 2
    for cls, (key, pairs) in zip(report.classes, pair_classes(a).items()):
        assert cls.key == key
        inst = build_instance(a.spec, a.group, key, pairs)
        assert inst.point_weight == inst.plane_weight == len(pairs)


@settings(max_examples=20)
@given(group_sets(F5, "T2", 2, 8))
def test_t2_line_weight_within_profile_sum(a):
    # the heaviest line on the point side never outweighs m1 + m2
    prof = t2_profile(a)
    cap = prof.m1.value + prof.m2.value
    for cls in bridge_report(a).classes:
        assert cls.point_stats.max_weight <= cap
        assert cls.plane_stats.max_weight <= cap


@settings(max_examples=20)
@given(group_sets(F5, "H", 2, 8))
def test_heis_line_weight_within_profile(a):
    # vertical lines can stack a full base fiber against itself
    prof = heis_profile(a)
    cap = max(prof.line_max.value, prof.base_max.value ** 2)
    for cls in bridge_report(a).classes:
        assert cls.point_stats.max_weight <= cap
        assert cls.plane_stats.max_weight <= cap


def test_bridge_rejects_empty():
    with pytest.raises(ParameterError):
        bridge_report(GroupSet("T2", F5, []))


def test_bridge_on_a_subgroup():
    a = GroupSet("T2", F5, [(1, b, 1) for b in range(5)])
    report = bridge_report(a)
    assert report.energy == 125
    assert report.matches_energy
    # all pairs share the single class key (1, 1)
    assert report.class_count == 1
    assert report.classes[0].key == (1, 1)


# -- collinearity -------------------------------------------------------------


def test_three_collinear_points_form_one_line():
    pts = [(1, 0, 0, 0), (0, 1, 0, 0), (1, 1, 0, 0)]
    lines = line_groups(F5, pts)
    assert len(lines) == 1
    (members,) = lines.values()
    assert len(members) == 3


def test_collinear_stats_edges():
    empty = collinear_stats(F5, {})
    assert (empty.count, empty.max_distinct, empty.max_weight) == (0, 0, 0)
    single = collinear_stats(F5, {(1, 2, 3, 4): 7})
    assert (single.count, single.max_distinct, single.max_weight) == (1, 1, 7)
    pair = collinear_stats(F5, {(1, 0, 0, 0): 2, (0, 1, 0, 0) : 3})
    assert pair.max_distinct == 2
    assert pair.max_weight == 5
    assert pair.witness is not None


@given(st.integers(0, 2**32), st.integers(4, 25), st.integers(4, 25))
def test_collinear_stats_match_minor_oracle(seed, n_points, n_planes):
    inst = random_instance(F7, n_points, n_planes, seed)
    stats = collinear_stats(F7, inst.points)
    assert stats.max_distinct == max_collinear(7, list(inst.points))
    plstats = collinear_stats(F7, inst.planes)
    assert plstats.max_distinct == max_collinear(7, list(inst.planes))


def test_weighted_incidence_count():
    inst = WeightedInstance(
        spec=F5,
        points={(1, 0, 0, 0): 2, (1, 1, 0, 0): 1},
        planes={(0, 1, 0, 0): 3, (1, 0, 0, 0): 1},
    )
    # only (1,0,0,0).(0,1,0,0) vanishes, with weights 2 and 3
    assert incidence_count(inst) == 6


def test_oriented_bound_uses_the_smaller_side():
    small = collinear_stats(F5, {(1, 0, 0, 0): 1, (1, 1, 0, 0): 1})
    large = collinear_stats(
        F5, {(0, 1, 0, 0): 1, (0, 1, 1, 0): 1, (0, 1, 2, 0): 1}
    )
    got = oriented_bound(4, small, large)
    assert got.lhs == 4
    # swapping roles leaves the oriented bound unchanged
    assert oriented_bound(4, large, small) == got


# -- synthetic probes -----------------------------------------------------------


def test_random_instance_is_deterministic():
    a = random_instance(F7, 12, 15, seed=5)
    b = random_instance(F7, 12, 15, seed=5)
    assert a.points == b.points and a.planes == b.planes
    c = random_instance(F7, 12, 15, seed=6)
    assert c.points != a.points


def test_random_instance_shapes():
    inst = random_instance(F5, 10, 11, seed=1)
    assert len(inst.points) == 10 and len(inst.planes) == 11
    assert all(t[0] == 1 for t in inst.points)
    assert all(t[2] == 1 for t in inst.planes)
    assert all(w == 1 for w in inst.points.values())


def test_random_instance_rejections():
    with pytest.raises(ParameterError):
        random_instance(F5, 0, 5, seed=1)
    with pytest.raises(ParameterError):
        random_instance(F5, 126, 5, seed=1)


def test_probe_anchor():
    inst = random_instance(F7, 40, 55, seed=42)
    probe = probe_instance(inst)
    assert probe.point_count == 40
    assert probe.plane_count == 55
    assert probe.incidences == 275
    assert probe.max_collinear == 4
    assert probe.bound.holds
    assert probe.points_within_field_square
    assert not probe.planes_within_field_square
