"""Amplitude-ensemble quantum-inspired tabu search for 0/1 knapsack."""

__version__ = "0.1.0"

from .instance import (
    Item,
    KnapsackInstance,
    Solution,
    UnsupportedInstanceError,
    dp_optimum,
    dp_solve,
    generate_instance,
    load_instance,
    save_instance,
    total_profit,
    total_weight,
)
from .qreg import Quadrant, Qubit, QubitRegister, init_register, lookup_delta, measure, quadrant, rotate
from .rng import SplitMix64, split_seed
from .solver import (
    Population,
    SolverConfig,
    SolverState,
    TrialResult,
    init_state,
    make_population,
    repair,
    run,
    step,
    update_register,
)
from .bench import AggregateStats, ComparisonReport, export_stats, import_stats, poi, poi_percent, run_trials
