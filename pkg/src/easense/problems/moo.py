"""DTLZ, inverted DTLZ, convex DTLZ2 and WFG3/6/7 with analytic front samplers.

Objective functions take an (N, n) batch and return (N, m). WFG instances use
K = m - 1 position parameters.
"""
from functools import partial
from typing import Callable, Dict, Optional

import numpy as np

from easense.errors import ConfigError, UnknownProblemError
from easense.problems.base import Problem
from easense.simplex import simplex_points

MOO_M = 3
MOO_N = 10
DTLZ4_ALPHA = 100.0


def _g_multimodal(xm):
    k = xm.shape[1]
    return 100.0 * (k + np.sum((xm - 0.5) ** 2 - np.cos(20.0 * np.pi * (xm - 0.5)), axis=1))


def _g_sphere(xm):
    return np.sum((xm - 0.5) ** 2, axis=1)


def _linear(xp, m):
    f = np.ones((xp.shape[0], m))
    for i in range(m):
        f[:, i] = np.prod(xp[:, :m - 1 - i], axis=1)
        if i > 0:
            f[:, i] *= 1.0 - xp[:, m - 1 - i]
    return f


def _spherical(xp, m):
    angles = 0.5 * np.pi * xp
    f = np.ones((xp.shape[0], m))
    for i in range(m):
        f[:, i] = np.prod(np.cos(angles[:, :m - 1 - i]), axis=1)
        if i > 0:
            f[:, i] *= np.sin(angles[:, m - 1 - i])
    return f


def dtlz1(X, m):
    g = _g_multimodal(X[:, m - 1:])
    return 0.5 * (1.0 + g)[:, None] * _linear(X[:, :m - 1], m)


def dtlz2(X, m):
    g = _g_sphere(X[:, m - 1:])
    return (1.0 + g)[:, None] * _spherical(X[:, :m - 1], m)


def dtlz3(X, m):
    g = _g_multimodal(X[:, m - 1:])
    return (1.0 + g)[:, None] * _spherical(X[:, :m - 1], m)


def dtlz4(X, m):
    g = _g_sphere(X[:, m - 1:])
    return (1.0 + g)[:, None] * _spherical(X[:, :m - 1] ** DTLZ4_ALPHA, m)


def idtlz1(X, m):
    g = _g_multimodal(X[:, m - 1:])
    return 0.5 * (1.0 + g)[:, None] * (1.0 - _linear(X[:, :m - 1], m))


def idtlz2(X, m):
    g = _g_sphere(X[:, m - 1:])
    return (1.0 + g)[:, None] * (1.0 - _spherical(X[:, :m - 1], m))


def cdtlz2(X, m):
    f = dtlz2(X, m)
    f[:, :m - 1] **= 4
    f[:, m - 1] **= 2
    return f


def _shift_linear(y, a=0.35):
    return np.abs(y - a) / np.abs(np.floor(a - y) + a)


def _param_dependent(y, y_ref, a=0.98 / 49.98, b=0.02, c=50.0):
    aux = a - (1.0 - 2.0 * y_ref) * np.abs(np.floor(0.5 - y_ref) + a)
    return y ** (b + (c - b) * aux)


def _reduction_non_sep(y, a):
    """Non-separable reduction of the columns of y with degree a."""
    width = y.shape[1]
    half = np.ceil(a / 2.0)
    total = np.zeros(y.shape[0])
    for j in range(width):
        total += y[:, j]
        for k in range(a - 1):
            total += np.abs(y[:, j] - y[:, (1 + j + k) % width])
    return total / (width * half * (1.0 + 2.0 * a - 2.0 * half) / a)


def _mean_groups(t, m, k):
    """Weighted-sum reduction with unit weights: m-1 position groups then the distance block."""
    gap = k // (m - 1)
    out = np.empty((t.shape[0], m))
    for i in range(m - 1):
        out[:, i] = t[:, i * gap:(i + 1) * gap].mean(axis=1)
    out[:, m - 1] = t[:, k:].mean(axis=1)
    return out


def _post(t, degenerate):
    """Underlying position values x_1..x_{m-1} and the distance value x_m."""
    x = t.copy()
    last = t[:, -1:]
    x[:, :-1] = np.maximum(last, degenerate[None, :]) * (t[:, :-1] - 0.5) + 0.5
    return x


def _concave_shape(x, m):
    h = np.ones((x.shape[0], m))
    angles = 0.5 * np.pi * x[:, :m - 1]
    for i in range(m):
        h[:, i] = np.prod(np.sin(angles[:, :m - 1 - i]), axis=1)
        if i > 0:
            h[:, i] *= np.cos(angles[:, m - 1 - i])
    return h


def _linear_shape(x, m):
    h = np.ones((x.shape[0], m))
    for i in range(m):
        h[:, i] = np.prod(x[:, :m - 1 - i], axis=1)
        if i > 0:
            h[:, i] *= 1.0 - x[:, m - 1 - i]
    return h


def _wfg_scales(m):
    return 2.0 * np.arange(1, m + 1)


def _wfg_normalize(X):
    return X / (2.0 * np.arange(1, X.shape[1] + 1))


def wfg3(X, m):
    k = m - 1
    y = _wfg_normalize(X)
    y[:, k:] = _shift_linear(y[:, k:])
    l = y.shape[1] - k
    t = np.empty((y.shape[0], k + l // 2))
    t[:, :k] = y[:, :k]
    for i in range(l // 2):
        t[:, k + i] = _reduction_non_sep(y[:, k + 2 * i:k + 2 * i + 2], 2)
    t = _mean_groups(t, m, k)
    degenerate = np.zeros(m - 1)
    degenerate[0] = 1.0
    x = _post(t, degenerate)
    return x[:, -1:] + _wfg_scales(m) * _linear_shape(x, m)


def wfg6(X, m):
    k = m - 1
    y = _wfg_normalize(X)
    y[:, k:] = _shift_linear(y[:, k:])
    gap = k // (m - 1)
    t = np.empty((y.shape[0], m))
    for i in range(m - 1):
        t[:, i] = _reduction_non_sep(y[:, i * gap:(i + 1) * gap], gap)
    t[:, m - 1] = _reduction_non_sep(y[:, k:], y.shape[1] - k)
    x = _post(t, np.ones(m - 1))
    return x[:, -1:] + _wfg_scales(m) * _concave_shape(x, m)


def wfg7(X, m):
    k = m - 1
    y = _wfg_normalize(X)
    for i in range(k):
        y[:, i] = _param_dependent(y[:, i], y[:, i + 1:].mean(axis=1))
    y[:, k:] = _shift_linear(y[:, k:])
    t = _mean_groups(y, m, k)
    x = _post(t, np.ones(m - 1))
    return x[:, -1:] + _wfg_scales(m) * _concave_shape(x, m)


def _front_linear(count, m):
    return simplex_points(m, count) / 2.0


def _front_sphere(count, m):
    w = simplex_points(m, count)
    return w / np.linalg.norm(w, axis=1, keepdims=True)


def _front_inverted_linear(count, m):
    return (1.0 - simplex_points(m, count)) / 2.0


def _front_inverted_sphere(count, m):
    return 1.0 - _front_sphere(count, m)


def _front_convex(count, m):
    s = _front_sphere(count, m)
    return np.column_stack([s[:, :m - 1] ** 4, s[:, m - 1] ** 2])


def _front_wfg3(count, m):
    u = np.linspace(0.0, 1.0, count) if count > 1 else np.array([0.5])
    x = np.column_stack([u] + [np.full(count, 0.5)] * (m - 2) + [np.zeros(count)])
    return _wfg_scales(m) * _linear_shape(x, m)


def _front_wfg_concave(count, m):
    return _wfg_scales(m) * _front_sphere(count, m)


class Family:
    """Objective function plus front sampler and bounds rule for one problem family."""

    def __init__(self, function: Callable, front: Callable, wfg: bool = False):
        self.function = function
        self.front = front
        self.wfg = wfg

    def bounds(self, n: int):
        if self.wfg:
            return np.zeros(n), 2.0 * np.arange(1, n + 1)
        return np.zeros(n), np.ones(n)


FAMILIES: Dict[str, Family] = {
    "dtlz1": Family(dtlz1, _front_linear),
    "dtlz2": Family(dtlz2, _front_sphere),
    "dtlz3": Family(dtlz3, _front_sphere),
    "dtlz4": Family(dtlz4, _front_sphere),
    "idtlz1": Family(idtlz1, _front_inverted_linear),
    "idtlz2": Family(idtlz2, _front_inverted_sphere),
    "cdtlz2": Family(cdtlz2, _front_convex),
    "wfg3": Family(wfg3, _front_wfg3, wfg=True),
    "wfg6": Family(wfg6, _front_wfg_concave, wfg=True),
    "wfg7": Family(wfg7, _front_wfg_concave, wfg=True),
}


def make_moo(family: str, m: Optional[int] = None, n: Optional[int] = None) -> Problem:
    try:
        spec = FAMILIES[family]
    except KeyError:
        raise UnknownProblemError(f"unknown multi-objective problem {family!r}") from None
    m = m or MOO_M
    n = n or MOO_N
    if m < 2:
        raise ConfigError(f"{family} needs at least 2 objectives, got {m}")
    if n < m:
        raise ConfigError(f"{family} needs n >= m decision variables, got n={n}, m={m}")
    if family == "wfg3" and (n - (m - 1)) % 2:
        raise ConfigError(f"wfg3 needs an even number of distance variables, got {n - (m - 1)}")
    lower, upper = spec.bounds(n)
    problem_id = family if (m, n) == (MOO_M, MOO_N) else f"{family}_m{m}_n{n}"
    return Problem(name=problem_id, n=n, lower=lower, upper=upper,
                   function=partial(spec.function, m=m), objectives=m, group="moo",
                   front_sampler=partial(spec.front, m=m),
                   extra={"family": family, "position_parameters": m - 1} if spec.wfg else {"family": family})
