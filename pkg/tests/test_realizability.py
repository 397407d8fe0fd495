import itertools

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from bellnogo.errors import InvalidProblem, TooLarge
from bellnogo.realizability import (
    RealizabilityProblem,
    brute_force_oracle,
    certificate_values,
    decide,
    pairwise_triple,
    sign_assignments,
    triple_closed_form,
    witness_residual,
)


def check_outcome(problem, outcome):
    if outcome.feasible:
        w = np.array(outcome.witness)
        assert (w >= 0).all()
        assert abs(w.sum() - 1) <= 1e-12
        assert witness_residual(problem, w) <= 1e-9
    else:
        assert outcome.certificate is not None
        assert max(abs(g) for g in outcome.certificate) == pytest.approx(1.0)
        on_vertices, on_target = certificate_values(problem, outcome.certificate)
        assert (on_vertices >= 0).all()
        assert on_target < -1e-9


def test_problem_validation():
    with pytest.raises(InvalidProblem):
        RealizabilityProblem(1)
    with pytest.raises(InvalidProblem):
        RealizabilityProblem(5)
    with pytest.raises(InvalidProblem):
        RealizabilityProblem(3, ((0, 0, 0.1),))
    with pytest.raises(InvalidProblem):
        RealizabilityProblem(3, ((0, 3, 0.1),))
    with pytest.raises(InvalidProblem):
        RealizabilityProblem(3, ((0, 1, 1.2),))
    with pytest.raises(InvalidProblem):
        RealizabilityProblem(3, ((0, 1, 0.1), (1, 0, 0.2)))
    with pytest.raises(InvalidProblem):
        RealizabilityProblem(3, (), ((0, 0.1), (0, 0.2)))
    with pytest.raises(InvalidProblem):
        RealizabilityProblem(3, (), ((0, -1.5),))
    with pytest.raises(InvalidProblem):
        RealizabilityProblem(3, ((0, 1, float("nan")),))


def test_from_dict_round_trip():
    data = {"n": 3, "pairs": [[0, 1, 0.5], [1, 2, -0.5], [0, 2, -0.5]], "means": [[0, 0.25]]}
    p = RealizabilityProblem.from_dict(data)
    assert RealizabilityProblem.from_dict(p.to_dict()) == p
    with pytest.raises(InvalidProblem):
        RealizabilityProblem.from_dict({"n": 3, "bogus": 1})
    with pytest.raises(InvalidProblem):
        RealizabilityProblem.from_dict({"n": "3"})


def test_sign_assignment_order():
    s = sign_assignments(3)
    assert s[0].tolist() == [1, 1, 1] and s[-1].tolist() == [-1, -1, -1] and s[1].tolist() == [1, 1, -1]


def test_perfect_correlation_feasible():
    p = pairwise_triple(1, 1, 1)
    for out in (decide(p), brute_force_oracle(p)):
        assert out.feasible
        check_outcome(p, out)
    w = np.array(decide(p).witness)
    # only the two constant assignments can carry mass
    assert w[0] + w[-1] == pytest.approx(1.0)


def test_perfect_anticorrelation_infeasible():
    p = pairwise_triple(-1, -1, -1)
    for out in (decide(p), brute_force_oracle(p)):
        assert not out.feasible
        check_outcome(p, out)
    assert not triple_closed_form(-1, -1, -1)
    assert triple_closed_form(1, 1, 1)


def test_singlet_targets_after_sign_flip_infeasible():
    # c12 = -E(0, 2pi/3), c23 = -E(pi/3, 2pi/3), c13 = -E(0, pi/3)
    p = RealizabilityProblem(3, ((0, 1, -0.5), (1, 2, 0.5), (0, 2, 0.5)))
    for out in (decide(p), brute_force_oracle(p)):
        assert not out.feasible
        check_outcome(p, out)
    assert not triple_closed_form(-0.5, 0.5, 0.5)


def test_unflipped_singlet_values_are_feasible():
    # (c12, c13, c23) = (0.5, -0.5, -0.5): barycentric weights on the four
    # cut-polytope vertices (1,1,1), (1,-1,-1), (-1,1,-1), (-1,-1,1) are
    # (1 + c12 + c13 + c23)/4 etc. = (1/8, 5/8, 1/8, 1/8), all nonnegative
    assert triple_closed_form(0.5, -0.5, -0.5)
    p = pairwise_triple(0.5, -0.5, -0.5)
    for out in (decide(p), brute_force_oracle(p)):
        assert out.feasible
        check_outcome(p, out)


def test_brute_force_examples():
    n3 = RealizabilityProblem(3)
    out = brute_force_oracle(n3)
    assert out.feasible and out.witness == tuple([1 / 8] * 8)
    p = RealizabilityProblem(2, ((0, 1, 1.0),), ((0, 1.0), (1, -1.0)))
    assert not brute_force_oracle(p).feasible
    assert not decide(p).feasible
    check_outcome(p, brute_force_oracle(p))
    check_outcome(p, decide(p))
    with pytest.raises(TooLarge):
        brute_force_oracle(RealizabilityProblem(4, ((0, 1, 0.0),)))


def test_brute_force_witness_is_exact_vertex():
    p = pairwise_triple(0.5, -0.5, -0.5)
    w = brute_force_oracle(p).witness
    assert witness_residual(p, w) <= 1e-15


def test_closed_form_matches_facet_enumeration():
    # the exact oracle enumerates facets itself; for pure pairwise n=3 they are the four closed-form ones
    from bellnogo.realizability import _exact_structure

    facets = set(_exact_structure(pairwise_triple(0, 0, 0).structure).facets)
    assert facets == {(1, 1, 1, 1), (1, 1, -1, -1), (1, -1, 1, -1), (1, -1, -1, 1)}


def test_chsh_shaped_problem_n4():
    # Tsirelson-point correlations for (A0, A1, B0, B1): no joint distribution
    r = 1 / np.sqrt(2)
    p = RealizabilityProblem(4, ((0, 2, r), (0, 3, r), (1, 2, r), (1, 3, -r)))
    out = decide(p)
    assert not out.feasible
    check_outcome(p, out)
    # halving the correlations brings the point inside the local polytope
    q = RealizabilityProblem(4, ((0, 2, 0.5), (0, 3, 0.5), (1, 2, 0.5), (1, 3, -0.5)))
    out = decide(q)
    assert out.feasible
    check_outcome(q, out)


correlation = st.floats(-1, 1, allow_nan=False)


@settings(max_examples=200, deadline=None)
@given(correlation, correlation, correlation)
def test_three_routes_agree(c12, c13, c23):
    p = pairwise_triple(c12, c13, c23)
    exact = brute_force_oracle(p)
    # the exact route has no tolerance; skip points infeasible by less than the float routes resolve
    assume(exact.feasible or exact.slack > 1e-8)
    lp = decide(p)
    closed = triple_closed_form(c12, c13, c23)
    assert exact.feasible == lp.feasible == closed
    check_outcome(p, lp)
    check_outcome(p, exact)


@settings(max_examples=200, deadline=None)
@given(
    st.lists(correlation, min_size=3, max_size=3),
    st.lists(correlation, min_size=3, max_size=3),
    st.lists(st.booleans(), min_size=6, max_size=6),
)
def test_routes_agree_with_means(cs, ms, keep):
    pairs = [(i, j, c) for (i, j), c, k in zip(itertools.combinations(range(3), 2), cs, keep[:3]) if k]
    means = [(i, m) for i, (m, k) in enumerate(zip(ms, keep[3:])) if k]
    p = RealizabilityProblem(3, tuple(pairs), tuple(means))
    exact, lp = brute_force_oracle(p), decide(p)
    assume(exact.feasible or exact.slack > 1e-8)
    assert exact.feasible == lp.feasible
    check_outcome(p, lp)
    check_outcome(p, exact)


def crossing_by_closed_form(c):
    """Largest t with t*c feasible, from the four facets 1 + t*(sigma . c) >= 0."""
    c12, c13, c23 = c
    ts = [1.0]
    for s in ((1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)):
        v = s[0] * c12 + s[1] * c13 + s[2] * c23
        if v < 0:
            ts.append(-1 / v)
    return min(ts)


@pytest.mark.parametrize("seed", range(10))
def test_monotone_boundary(seed):
    rng = np.random.default_rng(seed)
    while True:
        c = rng.uniform(-1, 1, 3)
        if not triple_closed_form(*c):
            break
    ts = np.linspace(0, 1, 101)
    verdicts = [decide(pairwise_triple(*(t * c))).feasible for t in ts]
    flips = sum(a != b for a, b in zip(verdicts, verdicts[1:]))
    assert verdicts[0] and not verdicts[-1] and flips == 1
    lo, hi = 0.0, 1.0
    while hi - lo > 1e-8:
        mid = (lo + hi) / 2
        if decide(pairwise_triple(*(mid * c))).feasible:
            lo = mid
        else:
            hi = mid
    assert lo == pytest.approx(crossing_by_closed_form(c), abs=1e-6)


def test_certificate_shift_survives_rounding():
    # the dual here leaves a vertex at -5.6e-17, less than half an ulp of the constant term
    p = RealizabilityProblem(3, ((0, 1, 1.0), (0, 2, 0.0), (1, 2, 1.0)), ((0, 0.0), (1, 1.0), (2, 0.0)))
    check_outcome(p, decide(p))
    check_outcome(p, brute_force_oracle(p))
