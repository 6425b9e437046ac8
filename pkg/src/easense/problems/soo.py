"""Single-objective suite: 23 classic functions and 10 shifted or rotated ones.

Every function takes an (N, n) batch and returns N values. All are minimized.
"""
from typing import Callable, Dict, NamedTuple, Optional, Union

import numpy as np

from easense.errors import UnknownProblemError
from easense.problems.base import Problem, box
from easense.problems.transforms import make_shift_rotate

SCALABLE_N = 30
CEC_N = 30
CEC_SEED = 7


def sphere(X):
    return np.sum(X ** 2, axis=1)


def schwefel_2_22(X):
    a = np.abs(X)
    return np.sum(a, axis=1) + np.prod(a, axis=1)


def schwefel_1_2(X):
    return np.sum(np.cumsum(X, axis=1) ** 2, axis=1)


def schwefel_2_21(X):
    return np.max(np.abs(X), axis=1)


def rosenbrock(X):
    head, tail = X[:, :-1], X[:, 1:]
    return np.sum(100.0 * (tail - head ** 2) ** 2 + (head - 1.0) ** 2, axis=1)


def step(X):
    return np.sum(np.floor(X + 0.5) ** 2, axis=1)


def quartic(X):
    i = np.arange(1, X.shape[1] + 1)
    return np.sum(i * X ** 4, axis=1)


def schwefel_2_26(X):
    return -np.sum(X * np.sin(np.sqrt(np.abs(X))), axis=1)


def rastrigin(X):
    return np.sum(X ** 2 - 10.0 * np.cos(2.0 * np.pi * X) + 10.0, axis=1)


def ackley(X):
    n = X.shape[1]
    return (-20.0 * np.exp(-0.2 * np.sqrt(np.sum(X ** 2, axis=1) / n))
            - np.exp(np.sum(np.cos(2.0 * np.pi * X), axis=1) / n) + 20.0 + np.e)


def griewank(X):
    i = np.arange(1, X.shape[1] + 1)
    return np.sum(X ** 2, axis=1) / 4000.0 - np.prod(np.cos(X / np.sqrt(i)), axis=1) + 1.0


def _penalty(X, a, k, m):
    return np.sum(k * (X - a) ** m * (X > a) + k * (-X - a) ** m * (X < -a), axis=1)


def penalized_1(X):
    n = X.shape[1]
    y = 1.0 + (X + 1.0) / 4.0
    inner = np.sum((y[:, :-1] - 1.0) ** 2 * (1.0 + 10.0 * np.sin(np.pi * y[:, 1:]) ** 2), axis=1)
    core = 10.0 * np.sin(np.pi * y[:, 0]) ** 2 + inner + (y[:, -1] - 1.0) ** 2
    return np.pi / n * core + _penalty(X, 10.0, 100.0, 4)


def penalized_2(X):
    inner = np.sum((X[:, :-1] - 1.0) ** 2 * (1.0 + np.sin(3.0 * np.pi * X[:, 1:]) ** 2), axis=1)
    last = (X[:, -1] - 1.0) ** 2 * (1.0 + np.sin(2.0 * np.pi * X[:, -1]) ** 2)
    core = np.sin(3.0 * np.pi * X[:, 0]) ** 2 + inner + last
    return 0.1 * core + _penalty(X, 5.0, 100.0, 4)


_FOXHOLES = np.array([
    np.tile([-32.0, -16.0, 0.0, 16.0, 32.0], 5),
    np.repeat([-32.0, -16.0, 0.0, 16.0, 32.0], 5),
])


def shekel_foxholes(X):
    diff = X[:, :, None] - _FOXHOLES[None, :, :]
    inner = np.arange(1, 26) + np.sum(diff ** 6, axis=1)
    return 1.0 / (1.0 / 500.0 + np.sum(1.0 / inner, axis=1))


_KOWALIK_A = np.array([0.1957, 0.1947, 0.1735, 0.1600, 0.0844, 0.0627, 0.0456, 0.0342, 0.0323, 0.0235, 0.0246])
_KOWALIK_B = 1.0 / np.array([0.25, 0.5, 1.0, 2.0, 4.0, 6.0, 8.0, 10.0, 12.0, 14.0, 16.0])


def kowalik(X):
    b = _KOWALIK_B[None, :]
    x1, x2, x3, x4 = (X[:, i:i + 1] for i in range(4))
    model = x1 * (b ** 2 + b * x2) / (b ** 2 + b * x3 + x4)
    return np.sum((_KOWALIK_A[None, :] - model) ** 2, axis=1)


def six_hump_camel(X):
    x1, x2 = X[:, 0], X[:, 1]
    return 4 * x1 ** 2 - 2.1 * x1 ** 4 + x1 ** 6 / 3 + x1 * x2 - 4 * x2 ** 2 + 4 * x2 ** 4


def branin(X):
    x1, x2 = X[:, 0], X[:, 1]
    return ((x2 - 5.1 / (4 * np.pi ** 2) * x1 ** 2 + 5 / np.pi * x1 - 6) ** 2
            + 10 * (1 - 1 / (8 * np.pi)) * np.cos(x1) + 10)


def goldstein_price(X):
    x1, x2 = X[:, 0], X[:, 1]
    a = 1 + (x1 + x2 + 1) ** 2 * (19 - 14 * x1 + 3 * x1 ** 2 - 14 * x2 + 6 * x1 * x2 + 3 * x2 ** 2)
    b = 30 + (2 * x1 - 3 * x2) ** 2 * (18 - 32 * x1 + 12 * x1 ** 2 + 48 * x2 - 36 * x1 * x2 + 27 * x2 ** 2)
    return a * b


_HARTMAN_C = np.array([1.0, 1.2, 3.0, 3.2])
_HARTMAN3_A = np.array([[3.0, 10, 30], [0.1, 10, 35], [3.0, 10, 30], [0.1, 10, 35]])
_HARTMAN3_P = np.array([
    [0.3689, 0.1170, 0.2673],
    [0.4699, 0.4387, 0.7470],
    [0.1091, 0.8732, 0.5547],
    [0.03815, 0.5743, 0.8828],
])
_HARTMAN6_A = np.array([
    [10.0, 3, 17, 3.5, 1.7, 8],
    [0.05, 10, 17, 0.1, 8, 14],
    [3.0, 3.5, 1.7, 10, 17, 8],
    [17.0, 8, 0.05, 10, 0.1, 14],
])
_HARTMAN6_P = np.array([
    [0.1312, 0.1696, 0.5569, 0.0124, 0.8283, 0.5886],
    [0.2329, 0.4135, 0.8307, 0.3736, 0.1004, 0.9991],
    [0.2348, 0.1451, 0.3522, 0.2883, 0.3047, 0.6650],
    [0.4047, 0.8828, 0.8732, 0.5743, 0.1091, 0.0381],
])


def _hartman(X, A, P):
    inner = np.sum(A[None, :, :] * (X[:, None, :] - P[None, :, :]) ** 2, axis=2)
    return -np.sum(_HARTMAN_C[None, :] * np.exp(-inner), axis=1)


def hartman_3(X):
    return _hartman(X, _HARTMAN3_A, _HARTMAN3_P)


def hartman_6(X):
    return _hartman(X, _HARTMAN6_A, _HARTMAN6_P)


_SHEKEL_A = np.array([
    [4.0, 4, 4, 4], [1, 1, 1, 1], [8, 8, 8, 8], [6, 6, 6, 6], [3, 7, 3, 7],
    [2, 9, 2, 9], [5, 5, 3, 3], [8, 1, 8, 1], [6, 2, 6, 2], [7, 3.6, 7, 3.6],
])
_SHEKEL_C = np.array([0.1, 0.2, 0.2, 0.4, 0.4, 0.6, 0.3, 0.7, 0.5, 0.5])


def _shekel(X, m):
    dist = np.sum((X[:, None, :] - _SHEKEL_A[None, :m, :]) ** 2, axis=2)
    return -np.sum(1.0 / (dist + _SHEKEL_C[None, :m]), axis=1)


def shekel_5(X):
    return _shekel(X, 5)


def shekel_7(X):
    return _shekel(X, 7)


def shekel_10(X):
    return _shekel(X, 10)


def high_conditioned_elliptic(X):
    n = X.shape[1]
    if n == 1:
        return X[:, 0] ** 2
    weights = 1e6 ** (np.arange(n) / (n - 1))
    return np.sum(weights * X ** 2, axis=1)


_WEIERSTRASS_K = np.arange(21)
_WEIERSTRASS_A = 0.5 ** _WEIERSTRASS_K
_WEIERSTRASS_B = 3.0 ** _WEIERSTRASS_K


def weierstrass(X):
    n = X.shape[1]
    terms = _WEIERSTRASS_A * np.cos(2 * np.pi * _WEIERSTRASS_B * (X[:, :, None] + 0.5))
    base = n * np.sum(_WEIERSTRASS_A * np.cos(np.pi * _WEIERSTRASS_B))
    return np.sum(terms, axis=(1, 2)) - base


def modified_schwefel(X):
    """Schwefel with the out-of-range penalty; optimum near z = 420.9687 per coordinate."""
    n = X.shape[1]
    inside = X * np.sin(np.sqrt(np.abs(X)))
    folded_hi = 500.0 - np.mod(X, 500.0)
    above = folded_hi * np.sin(np.sqrt(np.abs(folded_hi))) - (X - 500.0) ** 2 / (10000.0 * n)
    folded_lo = np.mod(np.abs(X), 500.0) - 500.0
    below = folded_lo * np.sin(np.sqrt(np.abs(folded_lo))) - (X + 500.0) ** 2 / (10000.0 * n)
    g = np.where(X > 500.0, above, np.where(X < -500.0, below, inside))
    return 418.9829 * n - np.sum(g, axis=1)


_KATSUURA_POW = 2.0 ** np.arange(1, 33)


def katsuura(X):
    n = X.shape[1]
    scaled = X[:, :, None] * _KATSUURA_POW
    inner = np.sum(np.abs(scaled - np.round(scaled)) / _KATSUURA_POW, axis=2)
    i = np.arange(1, n + 1)
    product = np.prod((1.0 + i * inner) ** (10.0 / n ** 1.2), axis=1)
    return 10.0 / n ** 2 * product - 10.0 / n ** 2


def happycat(X):
    """Optimum at -1 in every coordinate."""
    n = X.shape[1]
    sq = np.sum(X ** 2, axis=1)
    return np.abs(sq - n) ** 0.25 + (0.5 * sq + np.sum(X, axis=1)) / n + 0.5


class Definition(NamedTuple):
    function: Callable[[np.ndarray], np.ndarray]
    lower: Union[float, tuple]
    upper: Union[float, tuple]
    n: Optional[int]
    optimum: Optional[float]
    per_dimension_optimum: bool = False
    noise: float = 0.0


CLASSIC: Dict[str, Definition] = {
    "sphere": Definition(sphere, -100, 100, None, 0.0),
    "schwefel_2_22": Definition(schwefel_2_22, -10, 10, None, 0.0),
    "schwefel_1_2": Definition(schwefel_1_2, -100, 100, None, 0.0),
    "schwefel_2_21": Definition(schwefel_2_21, -100, 100, None, 0.0),
    "rosenbrock": Definition(rosenbrock, -30, 30, None, 0.0),
    "step": Definition(step, -100, 100, None, 0.0),
    "quartic": Definition(quartic, -1.28, 1.28, None, 0.0, noise=1.0),
    "schwefel_2_26": Definition(schwefel_2_26, -500, 500, None, -418.98288727243374, per_dimension_optimum=True),
    "rastrigin": Definition(rastrigin, -5.12, 5.12, None, 0.0),
    "ackley": Definition(ackley, -32, 32, None, 0.0),
    "griewank": Definition(griewank, -600, 600, None, 0.0),
    "penalized_1": Definition(penalized_1, -50, 50, None, 0.0),
    "penalized_2": Definition(penalized_2, -50, 50, None, 0.0),
    "shekel_foxholes": Definition(shekel_foxholes, -65.536, 65.536, 2, 0.998004),
    "kowalik": Definition(kowalik, -5, 5, 4, 0.0003075),
    "six_hump_camel": Definition(six_hump_camel, -5, 5, 2, -1.0316285),
    "branin": Definition(branin, (-5.0, 0.0), (10.0, 15.0), 2, 0.397887),
    "goldstein_price": Definition(goldstein_price, -2, 2, 2, 3.0),
    "hartman_3": Definition(hartman_3, 0, 1, 3, -3.86278),
    "hartman_6": Definition(hartman_6, 0, 1, 6, -3.32237),
    "shekel_5": Definition(shekel_5, 0, 10, 4, -10.1532),
    "shekel_7": Definition(shekel_7, 0, 10, 4, -10.4029),
    "shekel_10": Definition(shekel_10, 0, 10, 4, -10.5364),
}


class CecDefinition(NamedTuple):
    function: Callable[[np.ndarray], np.ndarray]
    rotate: bool
    scale: float = 1.0
    offset: float = 0.0


CEC: Dict[str, CecDefinition] = {
    "shifted_sphere": CecDefinition(sphere, rotate=False),
    "shifted_ellipsoid": CecDefinition(high_conditioned_elliptic, rotate=False),
    "shifted_ackley": CecDefinition(ackley, rotate=False),
    "shifted_griewank": CecDefinition(griewank, rotate=False, scale=6.0),
    "rotated_rosenbrock": CecDefinition(rosenbrock, rotate=True, scale=2.048 / 100, offset=1.0),
    "rotated_rastrigin": CecDefinition(rastrigin, rotate=True, scale=5.12 / 100),
    "rotated_weierstrass": CecDefinition(weierstrass, rotate=True, scale=0.5 / 100),
    "rotated_schwefel": CecDefinition(modified_schwefel, rotate=True, scale=1000.0 / 100, offset=420.9687462275036),
    "rotated_katsuura": CecDefinition(katsuura, rotate=True, scale=5.0 / 100),
    "rotated_happycat": CecDefinition(happycat, rotate=True, scale=5.0 / 100, offset=-1.0),
}


def make_classic(name: str, n: Optional[int] = None) -> Problem:
    try:
        spec = CLASSIC[name]
    except KeyError:
        raise UnknownProblemError(f"unknown classic problem {name!r}") from None
    if spec.n is not None:
        if n is not None and n != spec.n:
            raise UnknownProblemError(f"{name} has fixed dimension {spec.n}, not {n}")
        n = spec.n
    n = n or SCALABLE_N
    if isinstance(spec.lower, tuple):
        lower, upper = np.array(spec.lower), np.array(spec.upper)
    else:
        lower, upper = box(n, spec.lower, spec.upper)
    optimum = spec.optimum * n if spec.per_dimension_optimum else spec.optimum
    problem_id = name if spec.n is not None or n == SCALABLE_N else f"{name}_n{n}"
    return Problem(name=problem_id, n=n, lower=lower, upper=upper, function=spec.function,
                   group="classic", optimum=optimum, noise=spec.noise)


def make_cec(name: str, n: Optional[int] = None, seed: int = CEC_SEED) -> Problem:
    try:
        spec = CEC[name]
    except KeyError:
        raise UnknownProblemError(f"unknown CEC-style problem {name!r}") from None
    n = n or CEC_N
    transform = make_shift_rotate(name, n, seed, -100.0, 100.0, rotate=spec.rotate,
                                  scale=spec.scale, offset=spec.offset)
    base = spec.function

    def function(X):
        return base(transform(X))

    lower, upper = box(n, -100.0, 100.0)
    optimum = float(base(np.full((1, n), spec.offset))[0])
    problem_id = name if n == CEC_N else f"{name}_n{n}"
    return Problem(name=problem_id, n=n, lower=lower, upper=upper, function=function,
                   group="cec", optimum=optimum, seed=seed,
                   transform=transform, extra={"rotated": spec.rotate,
                          "scale": spec.scale, "offset": spec.offset})
