import numpy as np
import pytest

from cvml.order import InvalidInputError, EvaluationError
from cvml.sequences import (
    SequenceSpec,
    alternating,
    check_cauchy,
    check_convergence,
    completely_separate,
    constant,
    converges_by_balls,
    find_limits,
    quasi_equal_pairs,
    reciprocal_i,
)
from cvml.spaces import (
    exp_itheta_sum,
    i_max_mod,
    max_shift,
    one_plus_i_sum,
    scaled_euclidean,
    user_matrix,
)
from generators import random_cvml_space, random_label_sequence

CATALOG = [exp_itheta_sum(0.3), i_max_mod(), max_shift(5), one_plus_i_sum(),
           scaled_euclidean(1 + 1j)]


def test_reciprocal_terms():
    pts = reciprocal_i(16).points()
    assert len(pts) == 16 and pts[0] == 1j and pts[3] == 0.25j


def test_alternating_terms():
    assert alternating(0, 1, 8).points() == [0, 1] * 4


def test_spec_validation():
    with pytest.raises(InvalidInputError):
        SequenceSpec("reciprocal_i", n_max=4)
    with pytest.raises(InvalidInputError):
        SequenceSpec(terms=[])
    with pytest.raises(InvalidInputError):
        SequenceSpec("spiral")
    with pytest.raises(InvalidInputError):
        SequenceSpec("alternating", x=0)


def test_window_validation():
    with pytest.raises(InvalidInputError):
        check_convergence(i_max_mod(), reciprocal_i(64), 1j, tail=4)
    with pytest.raises(InvalidInputError):
        check_convergence(i_max_mod(), reciprocal_i(64), 1j, tail=40)


def test_non_finite_distance_is_an_evaluation_error():
    class Broken(type(i_max_mod())):
        def evaluate(self, xs, ys):
            return np.full(np.broadcast(np.asarray(xs), np.asarray(ys)).shape, np.nan + 0j)

    with pytest.raises(EvaluationError):
        check_convergence(Broken("i_max_mod"), reciprocal_i(), 1j)


# --- convergence -----------------------------------------------------------------

@pytest.mark.parametrize("x0", [1j, 2j, 3])
def test_reciprocal_converges_under_i_max_mod(x0):
    v = check_convergence(i_max_mod(), reciprocal_i(), x0)
    assert v.converges
    # d(i/n, x0) = i max(1/n, |x0|) = d(x0, x0) once 1/n <= |x0|
    assert v.residual_tail == [0.0] * 1024
    assert v.decision_index == 0


@pytest.mark.parametrize("d", CATALOG)
@pytest.mark.parametrize("x", [0, 1 + 1j, -2.5 + 0.5j])
def test_constant_sequence_converges(d, x):
    assert check_convergence(d, constant(x), x).converges
    v = check_cauchy(d, constant(x))
    assert v.is_cauchy and v.limit_estimate == pytest.approx(d(x, x))


def test_reciprocal_to_zero_needs_loose_threshold():
    # residual is 1/n, about 1.1e-3 on the default tail
    d, seq = i_max_mod(), reciprocal_i()
    assert not check_convergence(d, seq, 0).converges
    v = check_convergence(d, seq, 0, threshold=1e-2)
    assert v.converges
    assert v.residual_tail[99] == pytest.approx(1 / 100)
    assert v.decision_index == 100  # r_n = 1/n < 1e-2 exactly from n = 101


def test_trend_guard_rejects_flat_residuals():
    # residual 1e-7 everywhere: below threshold but not decreasing
    d = max_shift(0)  # residual to 0 is |x_n|
    seq = SequenceSpec(terms=[1e-7] * 256)
    assert not check_convergence(d, seq, 0, tail=64).converges
    assert check_convergence(d, SequenceSpec(terms=[1.0] * 64 + [1e-7] * 192), 0,
                             tail=64).converges


def test_find_limits_examples():
    d = i_max_mod()
    assert find_limits(d, reciprocal_i(), [1j, 2j, 0], threshold=1e-2) == [1j, 2j, 0]
    assert find_limits(d, reciprocal_i(), [1j, 2j, 0]) == [1j, 2j]
    assert find_limits(d, constant(3 + 1j), [3 + 1j]) == [3 + 1j]
    se = scaled_euclidean(1 + 1j)
    assert find_limits(se, alternating(0, 1), [0, 1]) == []
    with pytest.raises(InvalidInputError):
        find_limits(d, reciprocal_i(), [])


def test_quasi_equal_pairs():
    assert quasi_equal_pairs([1j, 2j, 0]) == [(1j, 2j), (1j, 0), (2j, 0)]
    assert quasi_equal_pairs([1j]) == []


# --- Cauchy ----------------------------------------------------------------------

def test_reciprocal_is_cauchy_with_small_limit():
    d, seq = i_max_mod(), reciprocal_i()
    v = check_cauchy(d, seq, threshold=1e-2)
    assert v.is_cauchy
    # oracle: plain double loop over the tail window n, m in [896, 1024]
    ns = range(896, 1025)
    mean = sum(1j * max(1 / n, 1 / m) for n in ns for m in ns) / len(ns) ** 2
    assert v.limit_estimate == pytest.approx(mean, abs=1e-12)
    assert abs(v.limit_estimate) < 2e-3
    assert not check_cauchy(d, seq).is_cauchy  # spread ~1.4e-4 > 1e-6


def test_alternating_not_cauchy():
    v = check_cauchy(scaled_euclidean(1 + 1j), alternating(0, 1))
    assert not v.is_cauchy and v.limit_estimate is None
    assert v.max_deviation == pytest.approx(abs((1 + 1j) / 2), rel=0.02)


# --- completely separate points ----------------------------------------------------

def test_completely_separate_examples():
    assert completely_separate(scaled_euclidean(1 + 1j), 0, 1)
    assert not completely_separate(i_max_mod(), 1j, 2j)
    for d in CATALOG:
        assert not completely_separate(d, 1 + 2j, 1 + 2j)


def test_no_sequence_converges_to_completely_separate_points():
    rng = np.random.default_rng(21)
    checked = hits = 0
    for _ in range(150):
        space = random_cvml_space(rng)
        d = user_matrix(space)
        pairs = [(x, y) for x in space.labels for y in space.labels
                 if x < y and completely_separate(d, x, y)]
        if not pairs:
            continue
        seq = SequenceSpec(terms=random_label_sequence(rng, space.labels))
        for x, y in pairs:
            lim = find_limits(d, seq, [x, y])
            assert lim != [x, y]
            checked += 1
            hits += bool(lim)
    assert checked > 100 and hits > 10


# --- ball definition vs scalar residual ------------------------------------------

@pytest.mark.parametrize("d, seq, x0", [
    (i_max_mod(), reciprocal_i(), 1j),
    (i_max_mod(), reciprocal_i(), 2j),
    (i_max_mod(), reciprocal_i(), 0),
    (i_max_mod(), reciprocal_i(), 5 - 1j),
    (scaled_euclidean(1 + 1j), alternating(0, 1), 0),
    (scaled_euclidean(1 + 1j), alternating(0, 1), 1),
    (one_plus_i_sum(), constant(2j), 2j),
    (max_shift(5), SequenceSpec(terms=[5 + 0.5**n for n in range(1, 300)]), 5),
    (max_shift(5), SequenceSpec(terms=[5 + 1 / n for n in range(1, 300)]), 5),
    (exp_itheta_sum(1.0), SequenceSpec(terms=[0.8**n * 1j for n in range(1, 300)]), 0),
])
def test_ball_and_residual_criteria_agree_on_catalog(d, seq, x0):
    assert converges_by_balls(d, seq, x0) == check_convergence(d, seq, x0).converges


def test_ball_criterion_rejects_bad_radius():
    with pytest.raises(InvalidInputError):
        converges_by_balls(i_max_mod(), reciprocal_i(), 1j, radii=[1j])


def test_convergence_then_cauchy_on_catalog():
    # i/n under i max{|x|,|y|} and geometric sequences: both tests pass together
    cases = [
        (i_max_mod(), reciprocal_i(), 1j),
        (scaled_euclidean(1 + 1j), SequenceSpec(terms=[0.5**n for n in range(300)]), 0),
        (exp_itheta_sum(0.7), SequenceSpec(terms=[0.7**n for n in range(300)]), 0),
    ]
    for d, seq, x0 in cases:
        assert check_convergence(d, seq, x0, threshold=1e-2, tail=64).converges
        assert check_cauchy(d, seq, threshold=1e-2, tail=64).is_cauchy


def test_convergence_without_cauchy_is_possible_in_finite_cvml_spaces():
    # a and b both sit at zero residual from x but d(a, b) != d(a, a):
    # the alternating sequence a, b, a, b converges to x and is not Cauchy
    from cvml.spaces import FiniteSpace, check_axioms, AxiomClass
    s = FiniteSpace("abx", [[1, 2, 2], [2, 1, 2], [2, 2, 2]])
    assert check_axioms(s, AxiomClass.CVML).passed
    d = user_matrix(s)
    seq = SequenceSpec(terms=["a", "b"] * 64)
    assert check_convergence(d, seq, "x", tail=32).converges
    assert not check_cauchy(d, seq, tail=32).is_cauchy


def test_json_round_trip():
    for seq in [reciprocal_i(32), constant(1 + 1j), alternating(0, 2j),
                SequenceSpec(terms=["a", "b"])]:
        assert SequenceSpec.from_json(seq.to_json()).points() == seq.points()
