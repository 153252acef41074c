"""scikit-learn style transformer wrapping the batch kernels.

Stateless: fit only validates, transform maps (n, 4) quaternion rows to
(n, 9) row-major rotation-matrix rows, so the conversion drops into sklearn
pipelines and composes with the rest of the ecosystem.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array

from .batch import FLOAT_KERNELS


class QuaternionToRotationMatrix(BaseEstimator, TransformerMixin):
    """Expand quaternion rows into flattened 3x3 rotation matrices.

    Parameters
    ----------
    method : "logan" or "direct"
        "logan" uses the squaring-only kernel, "direct" the product form.
        The two agree to ~1e-15 in binary64.
    normalize : bool
        Scale each row to unit norm before converting. Zero rows raise.
    """

    def __init__(self, method: str = "logan", normalize: bool = False):
        self.method = method
        self.normalize = normalize

    def fit(self, X, y=None):
        X = check_array(X, dtype=np.float64)
        if X.shape[1] != 4:
            raise ValueError(f"expected 4 quaternion columns, got {X.shape[1]}")
        if self.method not in FLOAT_KERNELS:
            raise ValueError(f"method must be one of {sorted(FLOAT_KERNELS)}")
        self.n_features_in_ = 4
        return self

    def transform(self, X):
        if not hasattr(self, "n_features_in_"):
            # stateless, so fitting on the spot is safe
            self.fit(X)
        X = check_array(X, dtype=np.float64)
        if X.shape[1] != 4:
            raise ValueError(f"expected 4 quaternion columns, got {X.shape[1]}")
        if self.normalize:
            norms = np.linalg.norm(X, axis=1)
            if np.any(norms == 0.0):
                raise ValueError("cannot normalize zero quaternion rows")
            X = X / norms[:, None]
        return FLOAT_KERNELS[self.method](X).reshape(len(X), 9)

    def get_feature_names_out(self, input_features=None):
        return np.asarray([f"c{i}{j}" for i in range(3) for j in range(3)])
