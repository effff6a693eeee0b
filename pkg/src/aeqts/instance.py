"""0/1 knapsack instances, case generators, evaluation and the exact optimum.

Capacity is always half the total weight for generated instances, so it is
stored doubled (``capacity_x2``) to stay an exact integer.  For integer
weights ``sum(w) <= C`` is equivalent to ``sum(w) <= capacity_x2 // 2``, which
is the budget used by the repair kernels and the dynamic program.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

CASES = ("I", "II", "III")
CASE_TAGS = CASES + ("custom",)


class UnsupportedInstanceError(ValueError):
    """Raised when an operation needs integer weights and gets something else."""


@dataclass(frozen=True)
class Item:
    weight: int
    profit: int


def _as_number_array(values, name):
    arr = np.asarray(values)
    if arr.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional")
    if arr.dtype == bool or not np.issubdtype(arr.dtype, np.number):
        raise ValueError(f"{name} must be numeric")
    if np.any(arr < 0):
        raise ValueError(f"{name} must be nonnegative")
    if np.issubdtype(arr.dtype, np.integer) or np.all(arr == np.floor(arr)):
        arr = arr.astype(np.int64)
    else:
        arr = arr.astype(np.float64)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class KnapsackInstance:
    """Immutable knapsack problem: item weights, profits and capacity ``C``.

    ``capacity_x2`` holds ``2 * C`` as an int.  Weights and profits are
    read-only numpy arrays, int64 whenever the values are integral.
    """

    weights: np.ndarray
    profits: np.ndarray
    capacity_x2: int
    case: str = "custom"
    seed: Optional[int] = None
    _items: tuple = field(default=(), repr=False)

    def __post_init__(self):
        w = _as_number_array(self.weights, "weights")
        p = _as_number_array(self.profits, "profits")
        if w.shape[0] < 1:
            raise ValueError("an instance needs at least one item")
        if w.shape != p.shape:
            raise ValueError("weights and profits differ in length")
        if int(self.capacity_x2) != self.capacity_x2 or self.capacity_x2 < 0:
            raise ValueError(f"capacity_x2 must be a nonnegative integer, got {self.capacity_x2}")
        if self.case not in CASE_TAGS:
            raise ValueError(f"case must be one of {CASE_TAGS}, got {self.case!r}")
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "profits", p)
        object.__setattr__(self, "capacity_x2", int(self.capacity_x2))

    @classmethod
    def from_items(cls, items: Sequence[Item], capacity, case="custom", seed=None):
        """Build from items and an exact capacity (int, float or Fraction)."""
        cap2 = Fraction(capacity) * 2
        if cap2.denominator != 1:
            raise ValueError(f"2 * capacity must be an integer, got {capacity}")
        return cls(
            weights=[it.weight for it in items],
            profits=[it.profit for it in items],
            capacity_x2=int(cap2),
            case=case,
            seed=seed,
        )

    @property
    def k(self) -> int:
        return int(self.weights.shape[0])

    @property
    def capacity(self) -> Fraction:
        return Fraction(self.capacity_x2, 2)

    @property
    def budget(self) -> int:
        """Largest integer weight that fits: ``floor(C)``."""
        return self.capacity_x2 // 2

    @property
    def integral(self) -> bool:
        return np.issubdtype(self.weights.dtype, np.integer)

    @property
    def items(self) -> list[Item]:
        return [Item(int(w), int(p)) for w, p in zip(self.weights, self.profits)]

    def fits(self, weight) -> bool:
        """Exact ``weight <= C``."""
        return 2 * Fraction(weight) <= self.capacity_x2

    def __eq__(self, other):
        if not isinstance(other, KnapsackInstance):
            return NotImplemented
        return (
            self.capacity_x2 == other.capacity_x2
            and self.case == other.case
            and self.seed == other.seed
            and self.weights.dtype == other.weights.dtype
            and np.array_equal(self.weights, other.weights)
            and np.array_equal(self.profits, other.profits)
        )

    __hash__ = None


@dataclass(eq=False)
class Solution:
    """Selection vector with cached total weight and profit."""

    bits: np.ndarray
    weight: int
    profit: int

    @classmethod
    def from_bits(cls, bits, inst: KnapsackInstance) -> "Solution":
        bits = np.asarray(bits, dtype=np.uint8)
        return cls(bits, total_weight(bits, inst), total_profit(bits, inst))

    def feasible(self, inst: KnapsackInstance) -> bool:
        return inst.fits(self.weight)

    def __eq__(self, other):
        if not isinstance(other, Solution):
            return NotImplemented
        return (
            np.array_equal(self.bits, other.bits)
            and self.weight == other.weight
            and self.profit == other.profit
        )


def _bits_of(s, inst):
    bits = s.bits if isinstance(s, Solution) else np.asarray(s)
    if bits.shape != (inst.k,):
        raise ValueError(f"selection has shape {bits.shape}, instance has {inst.k} items")
    return bits


def _exact_dot(values, bits):
    if np.issubdtype(values.dtype, np.integer):
        return int(values @ bits.astype(np.int64))
    return sum(Fraction(float(v)) for v, b in zip(values, bits) if b)


def total_weight(s, inst: KnapsackInstance):
    return _exact_dot(inst.weights, _bits_of(s, inst))


def total_profit(s, inst: KnapsackInstance):
    return _exact_dot(inst.profits, _bits_of(s, inst))


def generate_instance(case: str, k: int, seed: int = 0) -> KnapsackInstance:
    """Generate a Case I, II or III instance with ``k`` items.

    Case I: ``w ~ U{1..10}``, ``p = w + 5``.
    Case II: ``w ~ U{1..10}``, ``p = w + l`` with ``l ~ U{0..5}`` (all weights
    drawn first, then all increments).
    Case III: ``w = 1, 2, ..., 10, 1, 2, ...``, ``p = w + 5``; seed unused.

    Draws come from ``numpy.random.default_rng(seed mod 2**64)``.
    """
    if case not in CASES:
        raise ValueError(f"case must be one of {CASES}, got {case!r}")
    if int(k) != k or k < 1:
        raise ValueError(f"k must be a positive integer, got {k}")
    k = int(k)
    rng = np.random.default_rng(int(seed) & ((1 << 64) - 1))
    if case == "III":
        weights = np.arange(k, dtype=np.int64) % 10 + 1
        profits = weights + 5
    else:
        weights = rng.integers(1, 11, size=k, dtype=np.int64)
        if case == "I":
            profits = weights + 5
        else:
            profits = weights + rng.integers(0, 6, size=k, dtype=np.int64)
    return KnapsackInstance(
        weights=weights,
        profits=profits,
        capacity_x2=int(weights.sum()),
        case=case,
        seed=int(seed),
    )


def dp_solve(inst: KnapsackInstance) -> tuple[int, np.ndarray]:
    """Exact optimum by dynamic programming over the integer budget.

    Returns ``(best_profit, bits)`` where ``bits`` is one optimal selection.
    """
    if not inst.integral:
        raise UnsupportedInstanceError("dynamic program needs integer weights")
    budget = inst.budget
    profits = inst.profits
    best = np.zeros(budget + 1, dtype=profits.dtype)
    take = np.zeros((inst.k, budget + 1), dtype=bool)
    for i, (w, p) in enumerate(zip(inst.weights.tolist(), profits.tolist())):
        if w > budget:
            continue
        cand = best[: budget + 1 - w] + p
        better = cand > best[w:]
        take[i, w:] = better
        best[w:] = np.where(better, cand, best[w:])
    bits = np.zeros(inst.k, dtype=np.uint8)
    cap = budget
    for i in range(inst.k - 1, -1, -1):
        if take[i, cap]:
            bits[i] = 1
            cap -= int(inst.weights[i])
    return best[budget].item(), bits


def dp_optimum(inst: KnapsackInstance):
    return dp_solve(inst)[0]


# -- instance file ---------------------------------------------------------

def instance_to_dict(inst: KnapsackInstance) -> dict:
    if not inst.integral or not np.issubdtype(inst.profits.dtype, np.integer):
        raise UnsupportedInstanceError("instance files hold integer weights and profits only")
    return {
        "case": inst.case,
        "k": inst.k,
        "seed": inst.seed,
        "capacity_x2": inst.capacity_x2,
        "items": [{"w": int(w), "p": int(p)} for w, p in zip(inst.weights, inst.profits)],
    }


def instance_from_dict(data: dict) -> KnapsackInstance:
    try:
        items = data["items"]
        for it in items:
            for key in ("w", "p"):
                if not isinstance(it[key], int) or isinstance(it[key], bool):
                    raise ValueError(f"item field {key!r} must be an int")
        inst = KnapsackInstance(
            weights=[it["w"] for it in items],
            profits=[it["p"] for it in items],
            capacity_x2=data["capacity_x2"],
            case=data.get("case", "custom"),
            seed=data.get("seed"),
        )
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed instance: {exc!r}") from exc
    if "k" in data and data["k"] != inst.k:
        raise ValueError(f"k={data['k']} but {inst.k} items listed")
    return inst


def save_instance(inst: KnapsackInstance, path) -> None:
    Path(path).write_text(json.dumps(instance_to_dict(inst), indent=1) + "\n")


def load_instance(path) -> KnapsackInstance:
    return instance_from_dict(json.loads(Path(path).read_text()))
