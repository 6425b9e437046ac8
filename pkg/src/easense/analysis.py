"""Statistics over per-function effect samples: pairwise t-tests and clustering."""
import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np
from scipy import stats
from sklearn.cluster import KMeans
from sklearn.decomposition import PCA
from sklearn.metrics import silhouette_score

from easense.errors import ShapeError
from easense.indices import SensitivityReport

logger = logging.getLogger(__name__)

EFFECT_KINDS = ("direct", "interaction")
DEFAULT_K_CANDIDATES = tuple(range(2, 11))


@dataclass(frozen=True)
class EffectSample:
    """One hyperparameter's direct or interaction index across test functions."""

    param: str
    kind: str
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if not np.all(np.isfinite(values)):
            raise ValueError(f"effect sample {self.label} holds non-finite values")
        object.__setattr__(self, "values", values)

    @property
    def label(self) -> str:
        return f"{self.param}:{self.kind}"

    @property
    def size(self) -> int:
        return int(self.values.size)


class TTestResult(NamedTuple):
    t: float
    p: float

    @property
    def infinite(self) -> bool:
        return bool(np.isinf(self.t))


def pairwise_ttest(a: EffectSample, b: EffectSample) -> TTestResult:
    """Pooled-variance two-sample t-test with a two-sided p-value.

    Negative t means b's mean exceeds a's. With zero pooled variance the
    statistic is 0 (p=1) for equal means and infinite (p=0) otherwise.
    """
    if a.size < 2 or b.size < 2:
        raise ValueError("t-tests need at least two values per sample")
    x, y = a.values, b.values
    pooled = ((x.size - 1) * x.var(ddof=1) + (y.size - 1) * y.var(ddof=1)) / (x.size + y.size - 2)
    if pooled <= 0.0:
        diff = x.mean() - y.mean()
        if diff == 0.0:
            return TTestResult(0.0, 1.0)
        logger.warning(f"zero pooled variance between {a.label} and {b.label}; t is infinite")
        return TTestResult(float(np.copysign(np.inf, diff)), 0.0)
    result = stats.ttest_ind(x, y, equal_var=True)
    return TTestResult(float(result.statistic), float(result.pvalue))


def ttest_matrix(samples: Sequence[EffectSample]) -> List[Tuple[str, str, TTestResult]]:
    """Lower-triangular pairs (row i, column j < i) with their test results."""
    rows = []
    for i in range(len(samples)):
        for j in range(i):
            rows.append((samples[i].label, samples[j].label, pairwise_ttest(samples[i], samples[j])))
    return rows


def effect_samples(reports: Iterable[SensitivityReport]) -> List[EffectSample]:
    """Collect normalized direct/interaction indices per parameter across per-function reports."""
    reports = list(reports)
    if not reports:
        return []
    params = reports[0].params
    samples = []
    for kind in EFFECT_KINDS:
        attr = f"{kind}_norm"
        if any(getattr(r, attr) is None for r in reports):
            continue
        for i, name in enumerate(params):
            samples.append(EffectSample(name, kind, np.array([getattr(r, attr)[i] for r in reports])))
    return samples


def effect_matrix(reports: Sequence[SensitivityReport]) -> Tuple[List[str], np.ndarray]:
    """Items (functions) by features (direct then interaction normalized indices)."""
    items, rows = [], []
    for report in reports:
        row = list(report.direct_norm)
        if report.interaction_norm is not None:
            row += report.interaction_norm
        items.append(report.problem or f"item{len(items)}")
        rows.append(row)
    return items, np.array(rows, dtype=float)


@dataclass
class ClusterResult:
    assignments: np.ndarray
    k: int
    silhouette_curve: Dict[int, float]
    projection: np.ndarray
    degenerate: bool = False
    items: List[str] = field(default_factory=list)


def project(matrix: np.ndarray, components: int = 2) -> np.ndarray:
    """Top principal-component coordinates; each axis is signed so its largest-magnitude loading is positive."""
    n, f = matrix.shape
    usable = min(components, n, f)
    coords = np.zeros((n, components))
    if usable == 0 or np.allclose(matrix, matrix[0]):
        return coords
    pca = PCA(n_components=usable)
    scores = pca.fit_transform(matrix)
    for c in range(usable):
        loading = pca.components_[c]
        if loading[np.argmax(np.abs(loading))] < 0:
            scores[:, c] = -scores[:, c]
    coords[:, :usable] = scores
    return coords


def kmeans_silhouette(matrix, k_candidates: Sequence[int] = DEFAULT_K_CANDIDATES, seed: int = 0,
                      items: Optional[Sequence[str]] = None) -> ClusterResult:
    """Pick K = max(2, argmax silhouette) over the candidates and cluster with 10 restarts."""
    X = np.asarray(matrix, dtype=float)
    if X.ndim != 2 or X.shape[0] < 3:
        raise ShapeError(f"clustering needs an items x features matrix with at least 3 items, got {X.shape}")
    if not np.all(np.isfinite(X)):
        raise ValueError("clustering features must be finite")
    n = X.shape[0]
    curve: Dict[int, float] = {}
    labels: Dict[int, np.ndarray] = {}
    for k in sorted(set(k_candidates)):
        if k < 2 or k >= n:
            logger.debug(f"skipping K={k} for {n} items")
            continue
        fitted = KMeans(n_clusters=k, n_init=10, random_state=seed).fit_predict(X)
        labels[k] = fitted
        if len(np.unique(fitted)) > 1:
            curve[k] = float(silhouette_score(X, fitted, metric="euclidean"))

    degenerate = not curve
    if degenerate:
        logger.warning("silhouette is undefined for every candidate K; forcing K=2")
        k_best = 2
        assignments = labels.get(2, np.zeros(n, dtype=int))
    else:
        best = max(curve, key=lambda k: (curve[k], -k))
        k_best = max(2, best)
        assignments = labels[k_best]
    return ClusterResult(assignments=np.asarray(assignments, dtype=int), k=k_best, silhouette_curve=curve,
                         projection=project(X), degenerate=degenerate,
                         items=list(items) if items is not None else [str(i) for i in range(n)])
