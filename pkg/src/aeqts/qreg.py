"""Real-amplitude qubit register, measurement and rotation-gate updates."""

from __future__ import annotations

import csv
import enum
import math
from typing import NamedTuple

import numpy as np

from . import _backend

INV_SQRT2 = 1.0 / math.sqrt(2.0)


class Qubit(NamedTuple):
    alpha: float
    beta: float


class Quadrant(enum.Enum):
    FIRST_THIRD = "first_third"
    SECOND_FOURTH = "second_fourth"


class QubitRegister:
    """K qubits stored as two float64 vectors.

    ``beta[j] ** 2`` is the probability that measuring qubit ``j`` gives 1.
    """

    def __init__(self, alpha, beta):
        alpha = np.array(alpha, dtype=np.float64)
        beta = np.array(beta, dtype=np.float64)
        if alpha.ndim != 1 or alpha.shape != beta.shape or alpha.shape[0] == 0:
            raise ValueError("alpha and beta must be equal-length nonempty vectors")
        self.alpha = alpha
        self.beta = beta

    def __len__(self):
        return self.alpha.shape[0]

    def __getitem__(self, j) -> Qubit:
        return Qubit(float(self.alpha[j]), float(self.beta[j]))

    def __iter__(self):
        return (Qubit(a, b) for a, b in zip(self.alpha.tolist(), self.beta.tolist()))

    def __eq__(self, other):
        if not isinstance(other, QubitRegister):
            return NotImplemented
        return np.array_equal(self.alpha, other.alpha) and np.array_equal(self.beta, other.beta)

    __hash__ = None

    def __repr__(self):
        return f"QubitRegister(k={len(self)})"

    def copy(self) -> "QubitRegister":
        return QubitRegister(self.alpha, self.beta)

    @property
    def prob_one(self) -> np.ndarray:
        return self.beta * self.beta

    def norm_error(self) -> float:
        return float(np.max(np.abs(self.alpha**2 + self.beta**2 - 1.0)))

    def rotate(self, deltas) -> None:
        """Rotate every qubit ``j`` by ``deltas[j]`` radians, in place."""
        deltas = np.broadcast_to(np.asarray(deltas, dtype=np.float64), self.alpha.shape)
        c = np.cos(deltas)
        s = np.sin(deltas)
        a, b = self.alpha, self.beta
        self.alpha, self.beta = c * a - s * b, s * a + c * b

    def write_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            out = csv.writer(fh)
            out.writerow(["qubit_index", "alpha", "beta"])
            for j, (a, b) in enumerate(zip(self.alpha.tolist(), self.beta.tolist())):
                out.writerow([j, repr(a), repr(b)])


def init_register(k: int) -> QubitRegister:
    """Uniform superposition: every amplitude is 1/sqrt(2)."""
    if int(k) != k or k < 1:
        raise ValueError(f"k must be a positive integer, got {k}")
    return QubitRegister(np.full(int(k), INV_SQRT2), np.full(int(k), INV_SQRT2))


def measure(reg: QubitRegister, rng, n: int = 1) -> np.ndarray:
    """Collapse the register ``n`` times.

    Returns an ``(n, K)`` uint8 matrix (a length-K vector when ``n`` is 1 and
    called with the default).  Row-major order: all K draws of row 0, then
    row 1, ...; bit ``j`` is 1 when its draw is below ``beta[j]**2``.
    """
    bits = _backend.kernels().measure(reg.beta, int(n), rng.state)
    return bits[0] if n == 1 else bits


def rotate(q: Qubit, delta: float) -> Qubit:
    """Apply the 2x2 rotation gate by ``delta`` radians."""
    c = math.cos(delta)
    s = math.sin(delta)
    return Qubit(c * q.alpha - s * q.beta, s * q.alpha + c * q.beta)


def quadrant(q: Qubit) -> Quadrant:
    # axis-aligned amplitudes count as first/third
    return Quadrant.FIRST_THIRD if q.alpha * q.beta >= 0.0 else Quadrant.SECOND_FOURTH


def lookup_delta(best_bit: int, worst_bit: int, quad: Quadrant, theta: float) -> float:
    """Signed rotation angle for one qubit from the best/worst bit pair.

    Equal bits mean the qubit is tabooed for this pair and gets 0.  Otherwise
    the rotation moves the amplitude toward the best solution's bit.
    """
    if theta <= 0:
        raise ValueError(f"theta must be positive, got {theta}")
    if best_bit == worst_bit:
        return 0.0
    toward_one = best_bit == 1
    if quad is Quadrant.FIRST_THIRD:
        return theta if toward_one else -theta
    return -theta if toward_one else theta
