from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aeqts.instance import (
    Item,
    KnapsackInstance,
    Solution,
    UnsupportedInstanceError,
    dp_optimum,
    dp_solve,
    generate_instance,
    instance_from_dict,
    instance_to_dict,
    load_instance,
    save_instance,
    total_profit,
    total_weight,
)

from conftest import brute_force_optimum


def test_case_iii_k10():
    inst = generate_instance("III", 10, seed=123)
    assert inst.weights.tolist() == list(range(1, 11))
    assert inst.profits.tolist() == list(range(6, 16))
    assert inst.capacity == Fraction(55, 2)
    assert inst.capacity_x2 == 55


def test_case_iii_cycles():
    inst = generate_instance("III", 25, seed=0)
    assert inst.weights.tolist() == [*range(1, 11), *range(1, 11), 1, 2, 3, 4, 5]


@pytest.mark.parametrize("seed", [0, 1, 7, 2**63 + 5])
def test_case_i(seed):
    inst = generate_instance("I", 100, seed)
    assert np.all(inst.profits - inst.weights == 5)
    assert inst.weights.min() >= 1 and inst.weights.max() <= 10


def test_case_ii_ranges():
    inst = generate_instance("II", 2000, 3)
    inc = inst.profits - inst.weights
    assert set(inst.weights.tolist()) == set(range(1, 11))
    assert set(inc.tolist()) == set(range(0, 6))


@pytest.mark.parametrize("case", ["I", "II", "III"])
def test_k_zero_rejected(case):
    with pytest.raises(ValueError):
        generate_instance(case, 0, 1)


def test_bad_case_rejected():
    with pytest.raises(ValueError):
        generate_instance("IV", 5, 1)


@given(st.sampled_from(["I", "II", "III"]), st.integers(1, 300), st.integers(0, 2**64 - 1))
@settings(max_examples=60, deadline=None)
def test_generator_properties(case, k, seed):
    a = generate_instance(case, k, seed)
    b = generate_instance(case, k, seed)
    assert a == b
    assert np.array_equal(a.weights, b.weights) and np.array_equal(a.profits, b.profits)
    assert a.capacity * 2 == int(a.weights.sum())
    assert np.all(a.profits >= a.weights) and np.all(a.weights >= 1)


def test_case_iii_seed_independent():
    a = generate_instance("III", 37, 1)
    b = generate_instance("III", 37, 999)
    assert np.array_equal(a.weights, b.weights) and np.array_equal(a.profits, b.profits)


def test_totals():
    inst = KnapsackInstance.from_items([Item(6, 6), Item(6, 7)], capacity=6)
    assert total_weight(np.zeros(2, dtype=np.uint8), inst) == 0
    assert total_weight(np.array([1, 0]), inst) == 6
    assert total_profit(np.zeros(2, dtype=np.uint8), inst) == 0
    assert total_profit(np.array([1, 0]), inst) == 6
    c3 = generate_instance("III", 10)
    assert total_weight(np.ones(10, dtype=np.uint8), c3) == 55
    assert total_profit(np.ones(10, dtype=np.uint8), c3) == 105


def test_total_length_mismatch():
    inst = generate_instance("III", 10)
    with pytest.raises(ValueError):
        total_weight(np.ones(9), inst)
    with pytest.raises(ValueError):
        total_profit(np.ones(11), inst)


def test_solution_cache_matches_recomputation():
    inst = generate_instance("II", 40, 8)
    bits = np.random.default_rng(0).integers(0, 2, 40).astype(np.uint8)
    s = Solution.from_bits(bits, inst)
    assert s.weight == int(inst.weights @ bits)
    assert s.profit == int(inst.profits @ bits)
    assert s.feasible(inst) == (2 * s.weight <= inst.capacity_x2)


def test_exact_capacity_comparison():
    inst = KnapsackInstance.from_items([Item(2, 3), Item(3, 4), Item(4, 5)], capacity=Fraction(9, 2))
    assert inst.fits(4) and not inst.fits(5)
    assert inst.budget == 4


def test_dp_small_examples():
    # brute force over the 8 subsets first, then the dynamic program
    assert brute_force_optimum([2, 3, 4], [3, 4, 5], 9) == 5
    inst = KnapsackInstance.from_items([Item(2, 3), Item(3, 4), Item(4, 5)], capacity=4.5)
    assert dp_optimum(inst) == 5

    c3 = generate_instance("III", 10)
    assert brute_force_optimum(c3.weights, c3.profits, c3.capacity_x2) == 57
    assert dp_optimum(c3) == 57

    assert dp_optimum(KnapsackInstance.from_items([Item(1, 6)], capacity=0.5)) == 0


def test_dp_selection_is_optimal_and_feasible():
    for seed in range(20):
        inst = generate_instance("II", 60, seed)
        value, bits = dp_solve(inst)
        assert total_profit(bits, inst) == value
        assert inst.fits(total_weight(bits, inst))


def test_dp_zero_weight_items():
    inst = KnapsackInstance(weights=[0, 3, 0], profits=[4, 5, 0], capacity_x2=4)
    assert dp_optimum(inst) == brute_force_optimum([0, 3, 0], [4, 5, 0], 4) == 4


def test_dp_rejects_fractional_weights():
    inst = KnapsackInstance(weights=[1.5, 2.0], profits=[1, 2], capacity_x2=6)
    with pytest.raises(UnsupportedInstanceError):
        dp_optimum(inst)
    assert total_weight(np.array([1, 1]), inst) == Fraction(7, 2)


@pytest.mark.parametrize("case", ["I", "II", "III"])
def test_dp_matches_brute_force(case):
    rng = np.random.default_rng(["I", "II", "III"].index(case))
    for _ in range(34):
        k = int(rng.integers(1, 16))
        inst = generate_instance(case, k, int(rng.integers(0, 2**63)))
        assert dp_optimum(inst) == brute_force_optimum(inst.weights, inst.profits, inst.capacity_x2)


def test_instance_validation():
    with pytest.raises(ValueError):
        KnapsackInstance(weights=[], profits=[], capacity_x2=0)
    with pytest.raises(ValueError):
        KnapsackInstance(weights=[1, 2], profits=[1], capacity_x2=3)
    with pytest.raises(ValueError):
        KnapsackInstance(weights=[-1], profits=[1], capacity_x2=3)
    with pytest.raises(ValueError):
        KnapsackInstance.from_items([Item(1, 1)], capacity=Fraction(1, 3))


def test_instance_is_immutable():
    inst = generate_instance("I", 5, 1)
    with pytest.raises(ValueError):
        inst.weights[0] = 3
    with pytest.raises(AttributeError):
        inst.capacity_x2 = 1


def test_file_round_trip(tmp_path):
    inst = generate_instance("II", 30, 42)
    path = tmp_path / "inst.json"
    save_instance(inst, path)
    assert load_instance(path) == inst
    data = instance_to_dict(inst)
    assert set(data) == {"case", "k", "seed", "capacity_x2", "items"}
    assert data["capacity_x2"] == int(inst.weights.sum())
    assert data["items"][0] == {"w": int(inst.weights[0]), "p": int(inst.profits[0])}


def test_file_rejects_malformed():
    with pytest.raises(ValueError):
        instance_from_dict({"case": "custom", "k": 2, "seed": None, "capacity_x2": 4, "items": [{"w": 1, "p": 1}]})
    with pytest.raises(ValueError):
        instance_from_dict({"capacity_x2": 4, "items": [{"w": 1.5, "p": 1}]})
    with pytest.raises(ValueError):
        instance_from_dict({"items": [{"w": 1, "p": 1}]})
