from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from catprob.errors import NegativeWeight, NotNormalized, SpaceMismatch
from catprob.finspace import compose_maps, discrete_space, make_map, make_space
from catprob.giry import (
    check_monad_laws,
    check_mult_naturality,
    check_unit_naturality,
    dirac_decomposition,
    flatten_mix2,
    giry_map,
    giry_mult,
    giry_unit,
    make_mix,
    make_mix2,
    map_mult,
    merge_mixes,
    mix_unit,
    unit_preimage_case,
    xi,
)
from catprob.measure import dirac, indicator, integrate, make_measure, pushforward
from oracles import integrate_oracle, mass
from strategies import maps, measures, mix2s, mixes, observables, spaces

X = make_space("X", "abc", [["a"], ["b", "c"]])
P = make_measure(X, [F(1, 3), F(2, 3)])
Q = make_measure(X, [1, 0])


def test_mix_merges_duplicates_and_orders():
    m = make_mix(X, [(P, F(1, 4)), (Q, F(1, 2)), (P, F(1, 4))])
    assert m.support == (P, Q) or m.support == (Q, P)
    assert dict(m.items()) == {P: F(1, 2), Q: F(1, 2)}
    assert m == make_mix(X, [(Q, F(1, 2)), (P, F(1, 2))])


def test_mix_weights_validated():
    with pytest.raises(NotNormalized):
        make_mix(X, [(P, F(1, 2))])
    with pytest.raises(NegativeWeight):
        make_mix(X, [(P, F(3, 2)), (Q, F(-1, 2))])


def test_mix_support_must_share_the_space():
    y = discrete_space("Y", "u")
    with pytest.raises(SpaceMismatch):
        make_mix(X, [(make_measure(y, [1]), 1)])


def test_barycenter_example():
    assert giry_mult(make_mix(X, [(P, F(1, 2)), (Q, F(1, 2))])).weights == (F(2, 3), F(1, 3))


def test_unit_preimage_cases():
    fset = X.event({"a"})
    assert unit_preimage_case(X, fset, False, True) == fset
    assert unit_preimage_case(X, fset, True, False).members == frozenset("bc")
    assert unit_preimage_case(X, fset, True, True).members == frozenset("abc")
    assert unit_preimage_case(X, fset, False, False).members == frozenset()


@given(st.data())
def test_unit_preimage_matches_direct_evaluation(data):
    x = data.draw(spaces())
    s = data.draw(st.sampled_from(list(x.measurable_sets())))
    b0, b1 = data.draw(st.booleans()), data.draw(st.booleans())
    hit = {0: b0, 1: b1}
    direct = frozenset(p for p in x.points if hit[mass(giry_unit(x, p), s.members)])
    assert unit_preimage_case(x, s, b0, b1).members == direct


def test_dirac_decomposition_drops_null_atoms():
    d = dirac_decomposition(Q)
    assert d.support == (dirac(X, "a"),)
    assert giry_mult(dirac_decomposition(P)) == P


@given(st.data())
def test_monad_laws_hold(data):
    x = data.draw(spaces(max_points=4))
    report = check_monad_laws(x, [data.draw(mix2s(x))], measures=[data.draw(measures(x))])
    assert report.passed, report.summary_lines()
    assert report.laws() == ["left-unit", "right-unit", "assoc"]


@given(st.data())
def test_associativity_integral_form(data):
    # E(E_P(π'')) and E(P(E)(π'')) expanded as explicit double sums
    x = data.draw(spaces(max_points=4))
    mm = data.draw(mix2s(x))
    want = [
        sum(w * v * p.weights[i] for m, w in mm.items() for p, v in m.items())
        for i in range(len(x.atoms))
    ]
    assert list(giry_mult(flatten_mix2(mm)).weights) == want
    assert list(giry_mult(map_mult(mm)).weights) == want


@given(st.data())
def test_giry_map_is_functorial(data):
    x = data.draw(spaces(name="X", prefix="x"))
    y = data.draw(spaces(name="Y", prefix="y"))
    z = data.draw(spaces(name="Z", prefix="z"))
    f, g = data.draw(maps(x, y, "f")), data.draw(maps(y, z, "g"))
    mix = data.draw(mixes(x))
    assert giry_map(compose_maps(g, f), mix) == giry_map(g, giry_map(f, mix))
    mm = data.draw(mix2s(x, max_support=2))
    assert giry_map(compose_maps(g, f), mm) == giry_map(g, giry_map(f, mm))


@given(st.data())
def test_naturality(data):
    x = data.draw(spaces(name="X", prefix="x"))
    y = data.draw(spaces(name="Y", prefix="y"))
    f = data.draw(maps(x, y))
    assert check_unit_naturality(f).passed
    assert check_mult_naturality(f, [data.draw(mixes(x))]).passed


def test_unit_naturality_summary():
    y = discrete_space("Y", "uv")
    f = make_map("f", X, y, {"a": "u", "b": "v", "c": "v"})
    report = check_unit_naturality(f)
    assert report.summary_lines() == ["unit-naturality PASS 3/3"]


@given(st.data())
def test_xi_properties(data):
    x = data.draw(spaces())
    theta, mix = data.draw(observables(x)), data.draw(mixes(x))
    for p in x.points:
        assert integrate(theta, dirac(x, p)) == theta(p)
    p0 = data.draw(measures(x))
    for s in x.measurable_sets():
        assert xi(indicator(x, s.members))(p0) == mass(p0, s.members)
    lhs = integrate(theta, giry_mult(mix))
    assert lhs == sum(w * integrate_oracle(theta, p) for p, w in mix.items())


def test_merge_mixes():
    m1 = make_mix(X, [(P, 1)])
    m2 = make_mix(X, [(Q, 1)])
    assert merge_mixes([(F(1, 4), m1), (F(3, 4), m2)]) == make_mix(X, [(P, F(1, 4)), (Q, F(3, 4))])


def test_left_unit_on_example():
    assert giry_mult(mix_unit(P)) == P


def test_monad_report_flags_space_mismatch():
    y = discrete_space("Y", "u")
    with pytest.raises(SpaceMismatch):
        check_monad_laws(X, [make_mix2(y, [(make_mix(y, [(make_measure(y, [1]), 1)]), 1)])])


def test_pushforward_of_barycenter():
    y = discrete_space("Y", "uv")
    f = make_map("f", X, y, {"a": "u", "b": "v", "c": "v"})
    mix = make_mix(X, [(P, F(1, 2)), (Q, F(1, 2))])
    assert giry_mult(giry_map(f, mix)) == pushforward(giry_mult(mix), f)
