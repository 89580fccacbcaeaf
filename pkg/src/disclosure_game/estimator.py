"""scikit-learn style front end over the closed-form solver.

Rows of ``X`` are points in parameter space. The columns are named by
``features`` (default: just ``v``); every parameter not listed there is taken
from the estimator's own hyper-parameters. ``transform`` returns the
equilibrium quantities per row and ``predict`` the platform's regime.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .closedform import p_star, profit_D_star, profit_N
from .params import DEFAULT_V_BAR, PARAM_KEYS, ModelParams, validate
from .policy import regime_choice
from .welfare import welfare_comparison

OUTPUT_COLUMNS = ("p_star", "profit_N", "profit_D_star", "cs_N", "cs_D", "t_N", "t_D", "q_N", "q_D")


class DisclosureEquilibrium(TransformerMixin, BaseEstimator):
    """Equilibrium of the disclosure game evaluated row by row.

    >>> est = DisclosureEquilibrium(c=0.5, delta=0.5, beta=0.6, r=0.3, k=0.8)
    >>> est.fit([[1.0], [2.5]]).predict([[1.0], [2.5]]).tolist()
    ['D', 'N']
    """

    def __init__(self, v=1.0, c=0.5, delta=0.5, beta=0.6, r=0.3, k=0.8,
                 v_bar=DEFAULT_V_BAR, features=("v",)):
        self.v = v
        self.c = c
        self.delta = delta
        self.beta = beta
        self.r = r
        self.k = k
        self.v_bar = v_bar
        self.features = features

    def _base(self) -> ModelParams:
        return ModelParams(v=self.v, c=self.c, delta=self.delta, beta=self.beta,
                           r=self.r, k=self.k, v_bar=self.v_bar)

    def _rows(self, X):
        check_is_fitted(self, "n_features_in_")
        X = check_array(X, dtype=np.float64)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(f"X has {X.shape[1]} columns, expected {self.n_features_in_}")
        for row in X:
            params = self.base_params_.with_(**dict(zip(self.features_, map(float, row))))
            yield validate(params).params

    def fit(self, X=None, y=None):
        """Check the hyper-parameters and the column layout. Nothing is learned."""
        features = tuple(self.features)
        unknown = [f for f in features if f not in PARAM_KEYS]
        if unknown or len(set(features)) != len(features) or not features:
            raise ValueError(f"features must be distinct names from {PARAM_KEYS}, got {features}")
        self.base_params_ = validate(self._base()).params
        self.features_ = features
        self.n_features_in_ = len(features)
        if X is not None:
            list(self._rows(X))
        return self

    def transform(self, X):
        """Array with one row per input and columns OUTPUT_COLUMNS."""
        out = []
        for params in self._rows(X):
            w = welfare_comparison(params)
            out.append([p_star(params)[0], profit_N(params), profit_D_star(params),
                        w.cs_N, w.cs_D, w.t_N, w.t_D, w.q_N, w.q_D])
        return np.asarray(out, dtype=np.float64).reshape(-1, len(OUTPUT_COLUMNS))

    def predict(self, X):
        """Chosen regime per row, "N" or "D"."""
        return np.array([regime_choice(params).chosen.value for params in self._rows(X)], dtype=object)

    def get_feature_names_out(self, input_features=None):
        return np.array(OUTPUT_COLUMNS, dtype=object)
