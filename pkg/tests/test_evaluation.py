import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from peaking.classifiers import LinearClassifier, fit_ls_supervised
from peaking.data import GaussianProblem, LabeledDataset, rng_stream, sample_labeled
from peaking.evaluation import ErrorEstimate, analytic_error, empirical_error, summarize
from peaking.exceptions import DomainError


def monte_carlo_error(clf, problem, n, rng, chunk=100_000):
    """Error on ``n`` sampled test objects, half from each class."""
    wrong = 0
    for label, mu in ((1, problem.mu1), (2, problem.mu2)):
        left = n // 2
        while left:
            k = min(chunk, left)
            X = mu + rng.standard_normal((k, problem.p))
            wrong += int(np.sum(clf.predict(X) != label))
            left -= k
    return wrong / n


def test_bayes_error():
    problem = GaussianProblem(7, 4.0)
    w = problem.mu1 - problem.mu2
    clf = LinearClassifier(w, -0.5 * float((problem.mu1 + problem.mu2) @ w))
    assert abs(analytic_error(clf, problem) - 0.022750131948179195) <= 1e-14


def test_zero_weights_is_chance():
    assert analytic_error(LinearClassifier(np.zeros(3), 1.0), GaussianProblem(3, 2.0)) == 0.5


def test_random_classifier_matches_monte_carlo():
    rng = np.random.default_rng(7)
    problem = GaussianProblem(10, 3.0)
    clf = LinearClassifier(rng.standard_normal(10), rng.normal())
    e = analytic_error(clf, problem)
    mc = monte_carlo_error(clf, problem, 10**6, rng)
    assert abs(mc - e) <= 3 * math.sqrt(e * (1 - e) / 10**6)


def test_empirical_matches_analytic_for_fitted_classifier():
    problem = GaussianProblem(5, 2.0)
    clf = fit_ls_supervised(sample_labeled(problem, 10, rng_stream(3)))
    e = analytic_error(clf, problem)
    test = sample_labeled(problem, 500_000, rng_stream(4))
    assert abs(empirical_error(clf, test) - e) <= 3 * math.sqrt(e * (1 - e) / 10**6)


def test_scale_invariance_and_label_flip(rng):
    for _ in range(50):
        p = int(rng.integers(1, 20))
        problem = GaussianProblem(p, float(rng.uniform(0.1, 6)))
        clf = LinearClassifier(rng.standard_normal(p), rng.normal())
        e = analytic_error(clf, problem)
        c = rng.uniform(0.01, 100)
        assert_allclose(analytic_error(LinearClassifier(c * clf.w, c * clf.b), problem), e, rtol=1e-12)
        # Equal to 1 up to the rounding of the two CDF evaluations.
        assert abs(e + analytic_error(clf.negated(), problem) - 1.0) <= 4e-16


def test_dimension_mismatch():
    with pytest.raises(DomainError):
        analytic_error(LinearClassifier(np.ones(2), 0.0), GaussianProblem(3, 1.0))


class TestEmpirical:
    def test_interpolating_classifier_on_its_training_points(self):
        train = LabeledDataset([[-1.0], [1.0]], [2, 1])
        assert empirical_error(fit_ls_supervised(train), train) == 0.0

    def test_constant_classifier_on_balanced_set(self, rng):
        test = LabeledDataset(rng.standard_normal((40, 3)), np.tile([1, 2], 20))
        assert empirical_error(LinearClassifier(np.zeros(3), 1.0), test) == 0.5

    def test_values_on_lattice(self, rng):
        test = LabeledDataset(rng.standard_normal((37, 2)), rng.integers(1, 3, 37))
        e = empirical_error(LinearClassifier(rng.standard_normal(2), 0.1), test)
        assert abs(e * 37 - round(e * 37)) < 1e-12

    def test_empty(self):
        with pytest.raises(DomainError):
            empirical_error(LinearClassifier([1.0], 0.0), LabeledDataset(np.zeros((0, 1)), []))


def test_summarize():
    est = summarize([0.1, 0.2, 0.3, 0.4])
    assert est == ErrorEstimate(0.25, float(np.std([0.1, 0.2, 0.3, 0.4], ddof=1) / 2), 4)
    assert summarize([0.3]).std_error == 0.0
    with pytest.raises(DomainError):
        summarize([])
