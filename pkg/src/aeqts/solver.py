"""Amplitude-ensemble QTS for the 0/1 knapsack problem.

One iteration measures the register N times, repairs every measurement into
a feasible and maximal selection, then rotates the register using the
best/worst pairs of the ranked population.  With ``pair_count=1`` only the
single best and worst solutions steer the register, which is plain QTS.

Random draws come from one :class:`~aeqts.rng.SplitMix64` stream per run, in
this order: the initial population (all measurements, then the repair of
each row in turn), then the same for every iteration.  Rotations consume no
draws.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Optional

import numpy as np

from . import _backend
from .instance import KnapsackInstance, Solution, UnsupportedInstanceError
from .qreg import QubitRegister, init_register
from .rng import SplitMix64

DEFAULT_N = 10
DEFAULT_MAX_ITER = 1000
DEFAULT_THETA = 0.01 * math.pi


@dataclass(frozen=True)
class SolverConfig:
    """Solver tunables.  ``pair_count=None`` means ``n // 2`` (AE-QTS)."""

    n: int = DEFAULT_N
    max_iter: int = DEFAULT_MAX_ITER
    theta: float = DEFAULT_THETA
    pair_count: Optional[int] = None
    seed: int = 0

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)) or self.n < 2:
            raise ValueError(f"population size n must be an integer >= 2, got {self.n}")
        if not isinstance(self.max_iter, (int, np.integer)) or self.max_iter < 0:
            raise ValueError(f"max_iter must be a nonnegative integer, got {self.max_iter}")
        if not (0.0 < self.theta < math.pi / 2):
            raise ValueError(f"theta must lie in (0, pi/2), got {self.theta}")
        if self.pair_count is None:
            object.__setattr__(self, "pair_count", self.n // 2)
        if not isinstance(self.pair_count, (int, np.integer)) or not (
            1 <= self.pair_count <= self.n // 2
        ):
            raise ValueError(f"pair_count must be in [1, {self.n // 2}], got {self.pair_count}")

    @classmethod
    def qts(cls, **kw) -> "SolverConfig":
        return cls(pair_count=1, **kw)

    @classmethod
    def ae_qts(cls, **kw) -> "SolverConfig":
        return cls(pair_count=None, **kw)

    @property
    def algorithm(self) -> str:
        return "qts" if self.pair_count == 1 else "ae-qts"

    def with_seed(self, seed: int) -> "SolverConfig":
        return replace(self, seed=seed)


@dataclass
class Population:
    """N repaired solutions as a bit matrix with cached totals."""

    bits: np.ndarray
    weights: np.ndarray
    profits: np.ndarray

    def __len__(self):
        return self.bits.shape[0]

    @property
    def solutions(self) -> list[Solution]:
        return [
            Solution(self.bits[r], int(self.weights[r]), int(self.profits[r]))
            for r in range(len(self))
        ]

    def ranking(self) -> np.ndarray:
        """Row indices by descending profit; ties keep population order."""
        return np.argsort(-self.profits, kind="stable")

    def best(self) -> Solution:
        r = int(self.ranking()[0])
        return Solution(self.bits[r].copy(), int(self.weights[r]), int(self.profits[r]))


@dataclass
class SolverState:
    register: QubitRegister
    best: Solution
    t: int = 0
    last_update_iter: int = 0
    curve: list = field(default_factory=list)
    population: Optional[Population] = None


@dataclass
class TrialResult:
    best_profit: int
    best_bits: np.ndarray
    last_update_iter: int
    curve: np.ndarray
    trial_seed: int


def _check_instance(inst: KnapsackInstance) -> None:
    if not inst.integral or not np.issubdtype(inst.profits.dtype, np.integer):
        raise UnsupportedInstanceError("the solver needs integer weights and profits")


def _repair_rows(bits, inst, rng):
    return _backend.kernels().repair(bits, inst.weights, inst.profits, inst.budget, rng.state)


def repair(s, inst: KnapsackInstance, rng: SplitMix64) -> Solution:
    """Make a selection feasible, then maximal.

    Removal: while overweight, drop a uniformly chosen selected item.
    Addition: while some unselected item fits the remaining room, add one
    chosen uniformly among those that fit.  Candidates are ranked by item
    index and one draw picks ``floor(u * count)``.
    """
    _check_instance(inst)
    bits = s.bits if isinstance(s, Solution) else s
    bits = np.array(bits, dtype=np.uint8).reshape(1, inst.k)
    wsum, psum = _repair_rows(bits, inst, rng)
    return Solution(bits[0], int(wsum[0]), int(psum[0]))


def make_population(reg: QubitRegister, inst: KnapsackInstance, n: int, rng: SplitMix64) -> Population:
    if n < 2:
        raise ValueError(f"population size must be >= 2, got {n}")
    k = _backend.kernels()
    bits = k.measure(reg.beta, int(n), rng.state)
    wsum, psum = k.repair(bits, inst.weights, inst.profits, inst.budget, rng.state)
    if __debug__:
        recomputed = bits.astype(np.int64) @ inst.weights
        assert np.array_equal(recomputed, wsum), "cached weights drifted from bits"
        assert np.all(wsum <= inst.budget)
    return Population(bits, wsum, psum)


def _rotation_tables(theta, pair_count):
    angles = [theta / (i + 1) for i in range(pair_count)]
    return (
        np.array([math.cos(a) for a in angles]),
        np.array([math.sin(a) for a in angles]),
    )


def update_register(reg: QubitRegister, pop: Population, theta: float, pair_count: int) -> None:
    """Rotate ``reg`` in place using the ranked population.

    Pair ``i`` couples rank ``i`` with rank ``N-1-i`` and rotates by
    ``delta / (i + 1)``.  Pairs are applied in order; each rotation sees the
    quadrant left by the previous pair.
    """
    n = len(pop)
    if n < 2:
        raise ValueError(f"population size must be >= 2, got {n}")
    if not 1 <= pair_count <= n // 2:
        raise ValueError(f"pair_count must be in [1, {n // 2}], got {pair_count}")
    order = pop.ranking()
    best_rows = pop.bits[order[:pair_count]]
    worst_rows = pop.bits[order[::-1][:pair_count]]
    cos_tab, sin_tab = _rotation_tables(theta, pair_count)
    _backend.kernels().update(reg.alpha, reg.beta, best_rows, worst_rows, cos_tab, sin_tab)


def init_state(config: SolverConfig, inst: KnapsackInstance, rng: SplitMix64) -> SolverState:
    _check_instance(inst)
    reg = init_register(inst.k)
    pop = make_population(reg, inst, config.n, rng)
    return SolverState(register=reg, best=pop.best(), population=pop)


def step(state: SolverState, inst: KnapsackInstance, config: SolverConfig, rng: SplitMix64) -> None:
    """Advance ``state`` by one iteration."""
    state.t += 1
    pop = make_population(state.register, inst, config.n, rng)
    update_register(state.register, pop, config.theta, config.pair_count)
    b = pop.best()
    if b.profit > state.best.profit:
        state.best = b
        state.last_update_iter = state.t
    state.curve.append(state.best.profit)
    state.population = pop


def run(
    config: SolverConfig,
    inst: KnapsackInstance,
    on_step: Optional[Callable[[SolverState], None]] = None,
) -> TrialResult:
    """One full trial, deterministic in ``(config.seed, inst)``."""
    rng = SplitMix64(config.seed)
    state = init_state(config, inst, rng)
    for _ in range(config.max_iter):
        step(state, inst, config, rng)
        if on_step is not None:
            on_step(state)
    return TrialResult(
        best_profit=state.best.profit,
        best_bits=state.best.bits,
        last_update_iter=state.last_update_iter,
        curve=np.asarray(state.curve, dtype=np.int64),
        trial_seed=config.seed,
    )
