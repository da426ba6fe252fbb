"""Phase algorithm, greedy, schedules, and bounds."""

import decimal
import math
import random
from fractions import Fraction

import pytest

from incmax import (
    PHASE_BOUND,
    TableInstanceData,
    brute_force_optimum,
    bridge_flow_objective,
    competitive_ratio,
    evaluate,
    floor_phi_times,
    greedy,
    greedy_bound,
    knapsack_objective,
    next_phase_cardinality,
    optimum_table,
    phase_algorithm,
    phase_algorithm_with_oracle,
    phase_schedule,
    region_optimum,
    region_optimum_table,
    table_objective,
)
from incmax.adversarial import (
    bridge_flow_family_greedy_value,
    gen_bridge_flow_family,
    gen_knapsack_trap,
    gen_region_choosing,
)


def high_precision_phi_step(k: int) -> int:
    """Independent oracle: ceil((3 + sqrt 5)/2 * k) with 60-digit decimals."""
    decimal.getcontext().prec = 60
    x = (3 + decimal.Decimal(5).sqrt()) / 2 * k
    return int(x.to_integral_value(rounding=decimal.ROUND_CEILING))


class TestSchedule:
    def test_prefix_matches_statement(self):
        sched = phase_schedule(5)
        assert sched.cardinalities == (1, 3, 8, 21, 55)
        assert sched.cumulative_steps == (1, 4, 12, 33, 88)
        assert floor_phi_times(8) == 12
        assert sched.cumulative_steps[2] <= floor_phi_times(8)

    def test_even_fibonacci_oracle(self):
        # the budget recurrence lands exactly on every other Fibonacci number
        fib = [1, 1]
        while len(fib) < 130:
            fib.append(fib[-1] + fib[-2])
        sched = phase_schedule(60)
        for i, k in enumerate(sched.cardinalities):
            assert k == fib[2 * i + 1]  # F_2, F_4, F_6, ... with F_1 = F_2 = 1

    def test_step_bound_for_60_phases(self):
        sched = phase_schedule(60)
        assert sched.cardinalities[-1] > 10**12
        for k, t in zip(sched.cardinalities, sched.cumulative_steps):
            assert t <= floor_phi_times(k)
            assert t == floor_phi_times(k)  # tight along this schedule

    def test_ceiling_against_high_precision(self):
        rng = random.Random(1)
        ks = [1, 2, 3, 10, 89, 10**6, 10**12, 10**18]
        ks += [rng.randrange(1, 10**15) for _ in range(50)]
        for k in ks:
            assert next_phase_cardinality(k) == high_precision_phi_step(k)


class TestPhaseAlgorithm:
    def test_region_bound(self):
        spec, inst = gen_region_choosing(8, 0.86)
        table = region_optimum_table(spec, 8)
        order, sched = phase_algorithm(
            inst, 8, oracle=lambda k: region_optimum(spec, k)
        )
        report = competitive_ratio(inst, order, table)
        assert report.worst_ratio <= PHASE_BOUND + 1e-9
        assert sched.cardinalities == (1, 3, 8)

    def test_single_element_instance(self):
        inst = table_objective(TableInstanceData(n=1, values=(0, 2)), accountable=True)
        order, _ = phase_algorithm(inst, 1)
        report = competitive_ratio(inst, order, optimum_table(inst, 1))
        assert order.sequence == (0,)
        assert report.worst_ratio == 1

    def test_no_duplicates_and_phase_prefixes_reach_optimum(self):
        spec, inst = gen_region_choosing(6, 0.86)
        order, sched = phase_algorithm(
            inst, 6, oracle=lambda k: region_optimum(spec, k)
        )
        assert len(set(order.sequence)) == len(order.sequence)
        for k, pos in zip(sched.cardinalities, sched.completed_at):
            if k <= inst.n:
                value = evaluate(inst, order.prefix_mask(pos))
                _, opt = region_optimum(spec, k)
                assert value >= opt - 1e-9 * abs(opt)

    def test_kmax_out_of_range(self):
        _, inst = gen_region_choosing(3, 0.86)
        with pytest.raises(ValueError):
            phase_algorithm(inst, inst.n + 1)

    def test_exact_oracle_equals_default(self):
        inst = knapsack_objective(gen_knapsack_trap(2, Fraction(1, 8)))
        a, _ = phase_algorithm(inst, 4)
        b, _ = phase_algorithm_with_oracle(
            inst, 4, lambda k: brute_force_optimum(inst, k), alpha=1
        )
        assert a.sequence == b.sequence

    def test_density_oracle_respects_measured_bound(self):
        trap = gen_knapsack_trap(4, Fraction(1, 16))
        inst = knapsack_objective(trap)
        items = trap.items
        by_density = sorted(
            range(len(items)), key=lambda i: (-Fraction(items[i][1]) / items[i][0], i)
        )

        def oracle(k):
            subset = frozenset(by_density[:k])
            return subset, evaluate(inst, subset)

        k_max = 6
        order, sched = phase_algorithm_with_oracle(inst, k_max, oracle, alpha=1)
        table = optimum_table(inst, k_max)
        measured_alpha = max(
            Fraction(table.value(k)) / oracle(k)[1] for k in range(1, k_max + 1)
        )
        report = competitive_ratio(inst, order, table)
        assert report.worst_ratio <= float(measured_alpha) * PHASE_BOUND + 1e-9
        assert sched.claimed_bound == pytest.approx(PHASE_BOUND)

    def test_single_region_oracle_bound(self):
        spec, inst = gen_region_choosing(6, 0.86)

        def oracle(k):
            # best whole region of size at most k, padded up to size k
            best_i = max(range(1, min(k, 6) + 1), key=lambda i: i**0.86)
            start, stop = spec.block(best_i)
            subset = set(range(start, stop))
            for e in range(inst.n):
                if len(subset) == k:
                    break
                subset.add(e)
            return frozenset(subset), evaluate(inst, subset)

        order, _ = phase_algorithm_with_oracle(inst, 6, oracle, alpha=1)
        table = region_optimum_table(spec, 6)
        measured_alpha = max(
            table.value(k) / oracle(k)[1] for k in range(1, 7)
        )
        report = competitive_ratio(inst, order, table)
        assert report.worst_ratio <= measured_alpha * PHASE_BOUND + 1e-9


class TestGreedy:
    def test_bridge_family_trace(self):
        inst = bridge_flow_objective(gen_bridge_flow_family(2))
        order, trace = greedy(inst, 4)
        assert trace.chosen == (0, 1, 2, 3)
        assert evaluate(inst, order.prefix_mask(4)) == 30
        running = Fraction(0)
        for j, gain in enumerate(trace.gains, start=1):
            running += gain
            assert running == bridge_flow_family_greedy_value(2, j)

    def test_knapsack_trap_stays_below_one(self):
        inst = knapsack_objective(gen_knapsack_trap(4, Fraction(1, 16)))
        order, trace = greedy(inst, 5)
        assert trace.chosen[0] == 0  # the big item
        assert set(trace.chosen[1:]) == {5, 6, 7, 8}  # then only tiny items
        for k in range(1, 6):
            assert evaluate(inst, order.prefix_mask(k)) < 1

    def test_gains_sum_to_value(self, suite):
        for fx in suite[:6]:
            order, trace = greedy(fx.instance, min(4, fx.instance.n))
            total = sum(trace.gains)
            value = evaluate(fx.instance, order.prefix_mask(len(trace.gains)))
            if fx.instance.exact:
                assert total == value
            else:
                assert total == pytest.approx(value, rel=1e-12)

    def test_tie_counts(self):
        inst = table_objective(
            TableInstanceData(n=3, values=(0, 1, 1, 2, 1, 2, 2, 3)), accountable=True
        )
        _, trace = greedy(inst, 3)
        assert trace.tie_counts[0] == 3  # all three singletons tie at 1
        assert trace.chosen[0] == 0


class TestGreedyBound:
    def test_submodular_value(self):
        assert greedy_bound(1) == pytest.approx(math.e / (math.e - 1), rel=1e-12)

    def test_two_augmentable_value(self):
        e2 = math.e**2
        assert greedy_bound(2) == pytest.approx(2 * e2 / (e2 - 1), rel=1e-12)
        assert greedy_bound(2) == pytest.approx(2.3130352854, abs=1e-9)

    def test_limit_toward_one(self):
        assert greedy_bound(1e-6) == pytest.approx(1.0, abs=1e-5)

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            greedy_bound(0)
