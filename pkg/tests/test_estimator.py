import numpy as np
import pytest
from sklearn.base import clone

from disclosure_game.estimator import OUTPUT_COLUMNS, DisclosureEquilibrium
from disclosure_game.params import RangeError


def test_predict_figure_points():
    est = DisclosureEquilibrium().fit([[1.0], [2.5]])
    assert est.predict([[1.0], [2.5], [0.5]]).tolist() == ["D", "N", "N"]


def test_transform_columns():
    est = DisclosureEquilibrium()
    out = est.fit_transform([[1.0], [1.5]])
    assert out.shape == (2, len(OUTPUT_COLUMNS))
    assert out[0, 0] == pytest.approx(0.109524, abs=1e-6)
    assert out[1, 0] == pytest.approx(0.309524, abs=1e-6)
    assert list(est.get_feature_names_out()) == list(OUTPUT_COLUMNS)


def test_multi_feature_rows():
    est = DisclosureEquilibrium(features=("delta", "v")).fit()
    X = np.array([[0.5, 1.0], [0.5, 2.5]])
    assert est.predict(X).tolist() == ["D", "N"]


def test_get_params_and_clone():
    est = DisclosureEquilibrium(beta=0.7)
    assert est.get_params()["beta"] == 0.7
    copy = clone(est).set_params(k=0.5)
    assert copy.k == 0.5 and est.k == 0.8


def test_validation():
    with pytest.raises(RangeError):
        DisclosureEquilibrium(beta=0.4).fit()
    with pytest.raises(ValueError):
        DisclosureEquilibrium(features=("gamma",)).fit()
    est = DisclosureEquilibrium().fit()
    with pytest.raises(ValueError):
        est.predict([[1.0, 2.0]])
    with pytest.raises(RangeError):
        est.predict([[5.0]])


def test_unfitted():
    from sklearn.exceptions import NotFittedError
    with pytest.raises(NotFittedError):
        DisclosureEquilibrium().predict([[1.0]])
