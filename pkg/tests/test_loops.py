import random

import pytest

from afeq.figures import ALL, cycle, fig1b, fig2, fig5, fig7, fig_a_to_i, nine_cycle
from afeq.framework import Framework, SizeBoundExceeded, restrict
from afeq.loops import (
    BusterKind,
    cyclic_arguments,
    enumerate_busters,
    induced_zero_set,
    is_complete_loop,
    is_loop_buster,
    scc_decompose,
    top_classes,
)

from oracles import brute_busters, brute_is_buster, brute_sccs, random_framework


def members(bs):
    return [b.members for b in bs]


def test_scc_fig_a_to_i():
    d = scc_decompose(fig_a_to_i())
    assert d.classes == (("a", "b", "c"), ("d",), ("e", "f", "g", "h", "i"))
    assert d.quotient_attacks == {(0, 1), (0, 2), (1, 2)}
    assert top_classes(d) == [("a", "b", "c")]


def test_scc_chain():
    f = Framework(("a", "b", "c"), frozenset({("a", "b"), ("b", "c")}))
    d = scc_decompose(f)
    assert d.classes == (("a",), ("b",), ("c",))
    assert all(d.is_trivial(i, f) for i in range(3))
    assert top_classes(scc_decompose(restrict(f, {"a", "b"}))) == [("a",)]


def test_scc_fig5_single_class():
    assert scc_decompose(fig5()).classes == (("a", "b", "c", "x", "y"),)
    assert brute_sccs(fig5()) == {frozenset("abcxy")}


def test_top_classes_fig2():
    assert top_classes(scc_decompose(fig2())) == [("alpha", "beta", "phi")]


def test_self_attacker_is_nontrivial():
    f = Framework(("d",), frozenset({("d", "d")}))
    assert not scc_decompose(f).is_trivial(0, f)
    assert cyclic_arguments(f) == {"d"}


def test_fig5_classification():
    f = fig5()
    assert is_loop_buster(f, {"b"})
    assert members(enumerate_busters(f, "absolute")) == [("b",)]
    relative = members(enumerate_busters(f, "relative"))
    assert ("c", "y") in relative
    assert is_loop_buster(f, {"y", "b"})
    assert ("b", "y") not in members(enumerate_busters(f, "absolute"))
    assert ("b", "y") not in relative


def test_fig7_classification():
    f = fig7()
    assert is_loop_buster(f, {"a2", "a5", "a8"})
    absolute = members(enumerate_busters(f, "absolute"))
    assert ("a2", "a5", "a8") not in absolute
    for drop in ("a2", "a5", "a8"):
        assert tuple(sorted({"a2", "a5", "a8"} - {drop})) in absolute
    assert not any(is_loop_buster(f, {x}) for x in f.arguments)
    assert {len(b) for b in absolute} == {2}


def test_nine_cycle_busters():
    f = nine_cycle()
    assert is_loop_buster(f, {"a2"})
    assert not is_loop_buster(f, set())
    assert members(enumerate_busters(f, "absolute")) == [(x,) for x in f.arguments]


def test_fig2_absolute():
    top = restrict(fig2(), {"alpha", "beta", "phi"})
    assert members(enumerate_busters(top, "absolute")) == [("alpha",), ("beta",), ("phi",)]
    assert members(enumerate_busters(fig2(), "absolute")) == [("alpha",), ("beta",), ("phi",)]


def test_fig1b_busters():
    f = fig1b()
    assert members(enumerate_busters(f, "absolute")) == [("gamma",)]
    comp = enumerate_busters(f, "comp-relative")
    assert ("delta",) in members(comp)
    delta = next(b for b in comp if b.members == ("delta",))
    assert delta.induced_zero == ("delta", "gamma")
    assert delta.kind is BusterKind.COMPUTATIONAL_RELATIVE


@pytest.mark.parametrize("name", sorted(ALL))
def test_fixture_busters_match_brute_force(name):
    f = ALL[name]()
    if len(f) > 10:
        pytest.skip("brute force limited to 10 nodes")
    minimum, minimal = brute_busters(f)
    assert {frozenset(b) for b in members(enumerate_busters(f, "absolute"))} == minimum
    assert {frozenset(b) for b in members(enumerate_busters(f, "relative"))} == minimal


def test_random_busters_match_brute_force():
    rng = random.Random(7)
    for _ in range(60):
        f = random_framework(rng, rng.randint(1, 7), rng.choice([0.15, 0.3, 0.5]))
        minimum, minimal = brute_busters(f)
        assert {frozenset(b.members) for b in enumerate_busters(f, "absolute")} == minimum
        assert {frozenset(b.members) for b in enumerate_busters(f, "relative")} == minimal


def test_random_computational_busters_bust():
    rng = random.Random(11)
    for _ in range(60):
        f = random_framework(rng, rng.randint(1, 7), 0.3)
        comp_abs = enumerate_busters(f, "comp-absolute")
        comp_rel = enumerate_busters(f, "comp-relative")
        assert comp_abs, f
        for b in comp_abs + comp_rel:
            assert set(b.members) <= set(b.induced_zero)
            assert b.induced_zero == tuple(sorted(induced_zero_set(f, b.members)))
            assert brute_is_buster(f, frozenset(b.induced_zero))
        k = len(comp_abs[0].members)
        assert all(len(b.members) == k for b in comp_abs)
        assert all(len(b.members) >= k for b in comp_rel)
        rel = [frozenset(b.members) for b in comp_rel]
        assert not any(a < b for a in rel for b in rel)


def test_buster_bound():
    with pytest.raises(SizeBoundExceeded):
        enumerate_busters(cycle(6), "absolute", bound=5)


def test_complete_loop():
    assert is_complete_loop(fig5())
    assert not is_complete_loop(fig2())


def test_buster_json():
    b = enumerate_busters(fig1b(), "comp-absolute")[0]
    assert b.to_dict() == {"members": list(b.members), "kind": "comp-absolute", "induced_zero": list(b.induced_zero)}
