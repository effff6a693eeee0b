"""Seeded random stream shared by every backend.

The stream is SplitMix64: the state advances by a fixed odd increment and
each output is an avalanche mix of the new state.  Because output ``i`` is a
pure function of ``seed + i * GAMMA`` the numpy backend can draw a block of
values in one vectorized pass while the numba backend draws them one at a
time, and both see exactly the same numbers.

Doubles are the top 53 bits of the mixed word scaled by 2**-53, so every
draw lies in [0, 1).
"""

from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15
MIX1 = 0xBF58476D1CE4E5B9
MIX2 = 0x94D049BB133111EB
INV_2_53 = 1.0 / 9007199254740992.0

_GAMMA_U = np.uint64(GAMMA)
_MIX1_U = np.uint64(MIX1)
_MIX2_U = np.uint64(MIX2)


def mix64(z: int) -> int:
    """SplitMix64 finalizer on a Python int (result masked to 64 bits)."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * MIX1) & MASK64
    z = ((z ^ (z >> 27)) * MIX2) & MASK64
    return z ^ (z >> 31)


def split_seed(master: int, index: int) -> int:
    """Derive the seed of trial ``index`` from a master seed.

    ``mix64(master XOR (GAMMA * index))``.  Fixed for the lifetime of the
    package; changing it would invalidate every published rerun.
    """
    if index < 0:
        raise ValueError(f"index must be >= 0, got {index}")
    return mix64((master & MASK64) ^ ((GAMMA * index) & MASK64))


def _mix_array(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> np.uint64(30))) * _MIX1_U
    z = (z ^ (z >> np.uint64(27))) * _MIX2_U
    return z ^ (z >> np.uint64(31))


def next_double(state: np.ndarray) -> float:
    """Advance ``state`` (uint64[1]) by one draw and return it."""
    s = (int(state[0]) + GAMMA) & MASK64
    state[0] = s
    return (mix64(s) >> 11) * INV_2_53


def next_block(state: np.ndarray, n: int) -> np.ndarray:
    """Advance ``state`` by ``n`` draws, returned as a float64 vector."""
    if n <= 0:
        return np.empty(0, dtype=np.float64)
    steps = np.arange(1, n + 1, dtype=np.uint64)
    z = state[0] + steps * _GAMMA_U
    state[0] = z[-1]
    return (_mix_array(z) >> np.uint64(11)).astype(np.float64) * INV_2_53


class SplitMix64:
    """Stateful SplitMix64 stream.

    ``state`` is a one-element ``uint64`` array so compiled kernels can
    advance it in place.
    """

    def __init__(self, seed: int):
        self.state = np.array([seed & MASK64], dtype=np.uint64)

    @property
    def position(self) -> int:
        return int(self.state[0])

    def random(self) -> float:
        return next_double(self.state)

    def random_block(self, n: int) -> np.ndarray:
        """Next ``n`` draws, identical to ``n`` successive :meth:`random` calls."""
        return next_block(self.state, n)

    def below(self, n: int) -> int:
        """Uniform index in ``range(n)`` from a single draw."""
        return int(self.random() * n)

    def copy(self) -> "SplitMix64":
        other = SplitMix64(0)
        other.state[0] = self.state[0]
        return other
