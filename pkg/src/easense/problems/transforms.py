"""Seeded shift and rotation data for the CEC-style problems."""
import zlib
from dataclasses import dataclass

import numpy as np
from scipy.stats import ortho_group


@dataclass(frozen=True, eq=False)
class ShiftRotate:
    """z = R (x - shift) * scale + offset.

    ``scale`` maps the common [-100, 100] box onto the base function's
    natural range and ``offset`` moves its optimum (e.g. 1 for Rosenbrock).
    """

    shift: np.ndarray
    rotation: np.ndarray
    seed: int
    scale: float = 1.0
    offset: float = 0.0

    def __call__(self, X: np.ndarray) -> np.ndarray:
        return (X - self.shift) @ self.rotation.T * self.scale + self.offset

    @property
    def n(self) -> int:
        return self.shift.shape[0]

    def is_orthogonal(self, tol: float = 1e-9) -> bool:
        return np.allclose(self.rotation.T @ self.rotation, np.eye(self.n), atol=tol, rtol=0.0)


def make_shift_rotate(name: str, n: int, seed: int, lower: float, upper: float,
                      rotate: bool = True, scale: float = 1.0, offset: float = 0.0) -> ShiftRotate:
    """Deterministic transform data for (name, n, seed).

    The shift is uniform in the inner 80% of the box; the rotation is a Haar
    random orthogonal matrix.
    """
    rng = np.random.default_rng(np.random.SeedSequence([seed, zlib.crc32(name.encode()), n]))
    shift = lower + (0.1 + 0.8 * rng.random(n)) * (upper - lower)
    if rotate and n > 1:
        rotation = ortho_group.rvs(dim=n, random_state=rng)
    else:
        rotation = np.eye(n)
    return ShiftRotate(shift=shift, rotation=rotation, seed=seed, scale=scale, offset=offset)
