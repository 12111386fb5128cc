"""Estimator-style facade over :func:`facemax.api.solve`.

``fit`` takes a graph and a cycle set and stores the chosen embedding;
``predict`` reports which cycles of another cycle set are facial in it.
Parameters follow scikit-learn conventions so ``get_params``/``set_params``
and ``clone`` work unchanged.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .api import solve
from .approx import DEFAULT_EPSILON
from .graph import face_walks
from .validation import check_cycles, check_epsilon, check_graph, check_mode


class FacialCycleEmbedder(BaseEstimator):
    """Find an embedding that maximizes the number of facial input cycles.

    Attributes set by ``fit``: ``graph_``, ``embedding_``, ``solution_``,
    ``n_facial_``, ``facial_mask_`` (bool array over the fitted cycles),
    ``factor_`` and ``theorem_``.
    """

    def __init__(self, mode: str = "auto", epsilon: float = DEFAULT_EPSILON, budget: int | None = None, r: int | None = None):
        self.mode = mode
        self.epsilon = epsilon
        self.budget = budget
        self.r = r

    def fit(self, graph, cycles=None):
        check_mode(self.mode)
        check_epsilon(self.epsilon)
        g = check_graph(graph)
        cs = check_cycles(g, cycles)
        sol = solve(g, cs, self.mode, epsilon=self.epsilon, budget=self.budget, r=self.r)
        self.graph_ = g
        self.cycles_ = cs
        self.solution_ = sol
        self.embedding_ = sol.embedding
        self.n_facial_ = sol.value
        mask = np.zeros(len(cs), dtype=bool)
        mask[list(sol.realized)] = True
        self.facial_mask_ = mask
        self.factor_ = sol.factor
        self.theorem_ = sol.theorem
        return self

    def _face_masks(self) -> set[int]:
        out = set()
        for w in face_walks(self.embedding_.rotation):
            m = 0
            for d in w:
                m |= 1 << (d >> 1)
            out.add(m)
        return out

    def predict(self, cycles=None) -> np.ndarray:
        """Boolean array: which cycles bound a face of the fitted embedding."""
        check_is_fitted(self, "embedding_")
        cs = self.cycles_ if cycles is None else check_cycles(self.graph_, cycles)
        faces = self._face_masks()
        return np.array([m in faces for m in cs.masks], dtype=bool)

    def score(self, cycles=None) -> float:
        """Fraction of the given cycles that are facial."""
        pred = self.predict(cycles)
        return float(pred.mean()) if len(pred) else 1.0
