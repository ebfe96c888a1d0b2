import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.pipeline import make_pipeline

from peaking import (
    FisherDiscriminant,
    InfiniteUnlabeledClassifier,
    LeastSquaresClassifier,
    SemiSupervisedLeastSquaresClassifier,
    VariancePCA,
)
from peaking.classifiers import fit_fixed_rank, fit_ls_supervised
from peaking.data import LabeledDataset


def two_blobs(rng, n=40, p=5, shift=2.0):
    y = np.tile([0, 1], n // 2)
    X = rng.standard_normal((n, p)) + np.where(y == 0, shift, -shift)[:, None] / np.sqrt(p)
    return X, y


ESTIMATORS = [
    LeastSquaresClassifier(),
    LeastSquaresClassifier(rank=3),
    SemiSupervisedLeastSquaresClassifier(),
    FisherDiscriminant(),
    FisherDiscriminant(scatter="total"),
    InfiniteUnlabeledClassifier(delta=2.0),
]


@pytest.mark.parametrize("est", ESTIMATORS, ids=repr)
def test_params_round_trip_through_clone(est):
    twin = clone(est)
    assert twin.get_params() == est.get_params()
    assert twin is not est


@pytest.mark.parametrize("est", ESTIMATORS, ids=repr)
def test_fits_and_beats_chance(rng, est):
    X, y = two_blobs(rng, n=200)
    est.fit(X, y)
    assert est.coef_.shape == (5,)
    assert_array_equal(est.classes_, [0, 1])
    Xt, yt = two_blobs(rng, n=2000)
    assert est.score(Xt, yt) > 0.75


def test_matches_functional_fit(rng):
    X, y = two_blobs(rng)
    est = LeastSquaresClassifier().fit(X, y)
    ref = fit_ls_supervised(LabeledDataset(X, y + 1))
    assert_array_equal(est.coef_, ref.w)
    assert est.intercept_ == ref.b
    ranked = LeastSquaresClassifier(rank=2).fit(X, y)
    assert_array_equal(ranked.coef_, fit_fixed_rank(LabeledDataset(X, y + 1), 2).w)


def test_string_labels(rng):
    X, y = two_blobs(rng)
    names = np.array(["spam", "ham"])[y]
    est = LeastSquaresClassifier().fit(X, names)
    assert_array_equal(est.classes_, ["ham", "spam"])
    assert set(est.predict(X)) <= {"ham", "spam"}
    numeric = LeastSquaresClassifier().fit(X, 1 - y)
    assert_array_equal(est.predict(X) == "ham", numeric.predict(X) == 0)


def test_three_classes_rejected(rng):
    X = rng.standard_normal((9, 2))
    with pytest.raises(ValueError):
        LeastSquaresClassifier().fit(X, [0, 1, 2] * 3)


def test_not_fitted_and_wrong_width(rng):
    with pytest.raises(NotFittedError):
        LeastSquaresClassifier().predict(np.zeros((1, 3)))
    X, y = two_blobs(rng)
    est = LeastSquaresClassifier().fit(X, y)
    with pytest.raises(ValueError):
        est.predict(np.zeros((1, 4)))


def test_nan_rejected():
    with pytest.raises(ValueError):
        LeastSquaresClassifier().fit([[np.nan, 1.0], [0.0, 1.0]], [0, 1])


class TestSemiSupervised:
    def test_without_unlabeled_rows_equals_supervised(self, rng):
        X, y = two_blobs(rng)
        semi = SemiSupervisedLeastSquaresClassifier().fit(X, y)
        sup = LeastSquaresClassifier().fit(X, y)
        assert_array_equal(semi.coef_, sup.coef_)
        assert semi.intercept_ == sup.intercept_
        assert semi.n_unlabeled_ == 0

    def test_unlabeled_marker(self, rng):
        X, y = two_blobs(rng)
        y = y.copy()
        y[10:] = -1
        est = SemiSupervisedLeastSquaresClassifier().fit(X, y)
        assert est.n_unlabeled_ == 30
        assert_array_equal(est.classes_, [0, 1])
        labeled_only = LeastSquaresClassifier().fit(X[:10], y[:10])
        assert not np.allclose(est.coef_, labeled_only.coef_)

    def test_custom_marker(self, rng):
        X, y = two_blobs(rng)
        labels = np.array(["a", "b"])[y].astype(object)
        labels[20:] = "?"
        est = SemiSupervisedLeastSquaresClassifier(unlabeled="?").fit(X, labels)
        assert est.n_unlabeled_ == 20
        assert_array_equal(est.classes_, ["a", "b"])


def test_fisher_scatter_validated(rng):
    X, y = two_blobs(rng)
    with pytest.raises(ValueError):
        FisherDiscriminant(scatter="between").fit(X, y)


class TestVariancePCA:
    def test_attributes(self, rng):
        X = rng.standard_normal((100, 6)) * [10, 5, 1, 0.01, 0.01, 0.01]
        pca = VariancePCA(0.999).fit(X)
        assert pca.n_components_ == 3
        assert pca.components_.shape == (3, 6)
        assert_allclose(pca.mean_, X.mean(axis=0))
        Z = pca.transform(X)
        assert Z.shape == (100, 3)
        assert_allclose(Z.var(axis=0, ddof=1), pca.explained_variance_, rtol=1e-10)

    def test_round_trip_at_full_fraction(self, rng):
        X = rng.standard_normal((20, 4))
        pca = VariancePCA(1.0).fit(X)
        assert_allclose(pca.inverse_transform(pca.transform(X)), X, atol=1e-10)

    def test_wrong_width(self, rng):
        pca = VariancePCA().fit(rng.standard_normal((20, 4)))
        with pytest.raises(ValueError):
            pca.transform(np.zeros((1, 3)))

    def test_pipeline(self, rng):
        X, y = two_blobs(rng, n=200, p=8)
        model = make_pipeline(VariancePCA(0.95), LeastSquaresClassifier()).fit(X, y)
        Xt, yt = two_blobs(rng, n=1000, p=8)
        assert model.score(Xt, yt) > 0.7
        assert clone(model).get_params()["variancepca__variance_fraction"] == 0.95
