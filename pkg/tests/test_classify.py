import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zpaction.enumeration import (
    ActionParams,
    SubgroupKey,
    enumerate_actions,
    key_from_named,
    name_of_key,
)
from zpaction.classify import (
    ActionOutsideSetError,
    act,
    burnside_count_full,
    classify_triples,
    count_orbits_burnside,
    invariant_keys_full,
    invariant_set,
    orbit_partition,
)
from zpaction.hgroup import Permutation, close_group, parse_cycles, symmetric_group

P5 = ActionParams(5, 3, 2)
S4 = symmetric_group(4)


def named(name, params=P5):
    return key_from_named(params, name)


def test_act_swap_first_two():
    assert act(parse_cycles("(1 2)", 4), named("K(0,1)")) == named("K(1,0)")


def test_act_four_cycle_on_type2():
    assert act(parse_cycles("(1 2 3 4)", 4), named("K(2)")) == named("K(0,2)")


def test_act_four_cycle_on_type1():
    # u(1+s) = -1 mod 5 with s=1 gives u=2
    assert act(parse_cycles("(1 2 3 4)", 4), named("K(0,1)")) == named("K(2,2)")


def test_act_identity():
    key = named("K(1,2)")
    assert act(Permutation.identity(4), key) == key


def test_act_swap_relation_everywhere():
    # Phi_1(K(r,s)) = K(s,r) across the whole space
    swap = parse_cycles("(1 2)", 4)
    for key in enumerate_actions(P5):
        name = name_of_key(key)
        if name.count(",") == 1:
            r, s = name[2:-1].split(",")
            assert name_of_key(act(swap, key)) == f"K({s},{r})"


@settings(max_examples=200, deadline=None)
@given(
    st.sampled_from(enumerate_actions(P5)),
    st.permutations(list(range(1, 5))),
    st.permutations(list(range(1, 5))),
)
def test_action_axioms(key, im1, im2):
    sigma, tau = Permutation(tuple(im1)), Permutation(tuple(im2))
    assert act(sigma * tau, key) == act(sigma, act(tau, key))
    assert act(Permutation.identity(4), key) == key


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(enumerate_actions(ActionParams(3, 4, 2))), st.permutations(list(range(1, 6))))
def test_act_preserves_admissibility(key, images):
    moved = act(Permutation(tuple(images)), key)
    assert isinstance(moved, SubgroupKey)  # constructor re-validates admissibility
    assert moved.params == key.params


def test_orbit_partition_p5():
    report = orbit_partition(enumerate_actions(P5), S4)
    assert report.count == 4
    names = {name_of_key(rep) for rep in report.representatives}
    assert names == {"K(0,1)", "K(0,2)", "K(0,4)", "K(1,2)"}
    # orbits partition the space
    sizes = [len(members) for _, members in report.orbits]
    assert sum(sizes) == 27
    # representatives are the least members
    for rep, members in report.orbits:
        assert rep == min(members)


def test_orbit_partition_p3():
    report = orbit_partition(enumerate_actions(ActionParams(3, 3, 2)), S4)
    assert report.count == 2


def test_orbit_partition_trivial_group():
    keys = enumerate_actions(ActionParams(3, 3, 2))
    trivial = close_group([], degree=4)
    report = orbit_partition(keys, trivial)
    assert report.count == len(keys)


def test_orbit_partition_action_leaves_set():
    keys = enumerate_actions(P5)[:5]
    with pytest.raises(ActionOutsideSetError):
        orbit_partition(keys, S4)


def test_burnside_matches_partition():
    keys = enumerate_actions(P5)
    assert count_orbits_burnside(keys, S4) == 4
    assert burnside_count_full(P5, S4) == 4


def test_burnside_p113():
    assert burnside_count_full(ActionParams(113, 3, 2), S4) == 580


def test_burnside_singleton():
    key = named("K(4,0)")
    q7 = close_group([parse_cycles("(1 2 3 4)", 4), parse_cycles("(2 4)", 4)])
    assert count_orbits_burnside([key], q7) == 1


def test_invariant_set_q1():
    inv = invariant_set(enumerate_actions(P5), close_group([parse_cycles("(3 4)", 4)]))
    assert sorted(name_of_key(k) for k in inv) == ["K(1)", "K(2)", "K(2,2)", "K(3)", "K(4)"]


def test_invariant_set_q8_empty():
    q8 = close_group([parse_cycles("(1 2)(3 4)", 4), parse_cycles("(2 3 4)", 4)])
    assert invariant_set(enumerate_actions(P5), q8) == []


def test_invariant_set_three_cycle_p7():
    keys = enumerate_actions(ActionParams(7, 3, 2))
    inv = invariant_set(keys, close_group([parse_cycles("(2 3 4)", 4)]))
    assert sorted(name_of_key(k) for k in inv) == ["K(1,4)", "K(5,2)"]


def test_invariant_set_q5_p3():
    keys = enumerate_actions(ActionParams(3, 3, 2))
    q5 = close_group([parse_cycles("(1 2)(3 4)", 4), parse_cycles("(1 4)(2 3)", 4)])
    inv = invariant_set(keys, q5)
    assert sorted(name_of_key(k) for k in inv) == ["K(0,2)", "K(2)", "K(2,0)"]


def test_invariant_set_fixed_by_full_closure():
    # generator-only filtering suffices: the whole closure fixes the set pointwise
    keys = enumerate_actions(P5)
    q = close_group([parse_cycles("(1 2)(3 4)", 4), parse_cycles("(1 4)(2 3)", 4)])
    inv = invariant_set(keys, q)
    for key in inv:
        for sigma in q:
            assert act(sigma, key) == key


def test_invariant_set_is_normalizer_stable():
    from zpaction.hgroup import normalizer_in_symmetric

    keys = enumerate_actions(P5)
    q1 = close_group([parse_cycles("(3 4)", 4)])
    inv = set(invariant_set(keys, q1))
    for tau in normalizer_in_symmetric(q1):
        assert {act(tau, k) for k in inv} == inv


def test_vectorized_invariants_match_object_path():
    params = ActionParams(3, 5, 2)
    q = close_group([parse_cycles("(1 2 3)(4 5 6)", 6), parse_cycles("(1 4)(2 6)(3 5)", 6)])
    fast = invariant_keys_full(params, q)
    slow = invariant_set(enumerate_actions(params), q)
    assert sorted(fast) == slow


def test_triples_d3_p5_exhaustive():
    d3 = close_group([parse_cycles("(1 2 3)(4 5 6)", 6), parse_cycles("(1 4)(2 6)(3 5)", 6)])
    res = classify_triples(ActionParams(5, 5, 2), d3, mode="exhaustive")
    assert res.count == 2
    assert res.normalizer.order == 36


def test_triples_d3_p3():
    d3 = close_group([parse_cycles("(1 2 3)(4 5 6)", 6), parse_cycles("(1 4)(2 6)(3 5)", 6)])
    res = classify_triples(ActionParams(3, 5, 2), d3, mode="exhaustive")
    assert len(res.invariant) == 7 and res.count == 3


def test_triples_d3_p31_predicted():
    d3 = close_group([parse_cycles("(1 2 3)(4 5 6)", 6), parse_cycles("(1 4)(2 6)(3 5)", 6)])
    res = classify_triples(ActionParams(31, 5, 2), d3, mode="predicted")
    assert res.count == 7


def test_triples_k4_p2():
    k4 = close_group([parse_cycles("(3 5)(4 6)", 6), parse_cycles("(1 2)(3 4)(5 6)", 6)])
    res = classify_triples(ActionParams(2, 5, 2), k4, mode="exhaustive")
    assert len(res.invariant) == 4 and res.count == 3
    assert res.normalizer.order == 16


def test_triples_n3_q7():
    q7 = close_group([parse_cycles("(1 2 3 4)", 4), parse_cycles("(2 4)", 4)])
    res = classify_triples(P5, q7, mode="exhaustive")
    assert [name_of_key(k) for k in res.invariant] == ["K(4,0)"]
    assert res.count == 1


def test_triples_predicted_rejects_unknown_group():
    mystery = close_group([parse_cycles("(1 2)", 6)])
    with pytest.raises(ValueError, match="no predicted family"):
        classify_triples(ActionParams(5, 5, 2), mystery, mode="predicted")


def test_triples_exhaustive_agrees_with_predicted_small():
    d3 = close_group([parse_cycles("(1 2 3)(4 5 6)", 6), parse_cycles("(1 4)(2 6)(3 5)", 6)])
    for p in (2, 3, 5):
        a = classify_triples(ActionParams(p, 5, 2), d3, mode="exhaustive")
        b = classify_triples(ActionParams(p, 5, 2), d3, mode="predicted")
        assert a.invariant == b.invariant
        assert a.count == b.count
