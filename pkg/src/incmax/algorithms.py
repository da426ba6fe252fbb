"""The two incremental algorithms and their execution traces.

The phase algorithm repeatedly fetches an optimal (or approximately optimal)
solution for a geometrically growing cardinality budget and emits it in
greedy order; with an exact oracle its worst per-cardinality ratio is at most
1 + golden ratio. The greedy algorithm extends the solution by the element of
largest marginal gain; its guarantee holds under alpha-augmentability.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

from .core import (
    DEFAULT_ENUMERATION_BUDGET,
    IncrementalInstance,
    IncrementalOrder,
    brute_force_optimum,
    greedy_order,
)
from .numeric import Value

GOLDEN_RATIO = (1 + math.sqrt(5)) / 2
PHASE_BOUND = 1 + GOLDEN_RATIO


def next_phase_cardinality(k: int) -> int:
    """Exact ceil((1 + golden ratio) * k) in integer arithmetic.

    (1+phi)k = (3k + sqrt(5 k^2)) / 2 is irrational for every positive k, so
    its ceiling is the floor plus one, and the floor falls out of isqrt. This
    stays exact for arbitrarily large k, where float rounding would not.
    """
    if k < 1:
        raise ValueError(f"cardinality must be positive, got {k}")
    root = math.isqrt(5 * k * k)
    return (3 * k + root) // 2 + 1


def floor_phi_times(k: int) -> int:
    """Exact floor(golden ratio * k)."""
    return (k + math.isqrt(5 * k * k)) // 2


@dataclass(frozen=True)
class PhaseSchedule:
    """Cardinality budget per phase and cumulative step counts.

    ``cumulative_steps`` counts duplicates the way the guarantee's bookkeeping
    does (t_i = t_{i-1} + k_i), even though the emitted order skips them;
    ``completed_at`` records the emitted-order length when each phase ended.
    """

    cardinalities: Tuple[int, ...]
    cumulative_steps: Tuple[int, ...]
    completed_at: Tuple[int, ...] = ()
    claimed_bound: float = PHASE_BOUND

    def __post_init__(self):
        for k, t in zip(self.cardinalities, self.cumulative_steps):
            if t > floor_phi_times(k):
                raise ValueError(
                    f"schedule invariant violated: t={t} > floor(phi*{k})"
                )

    @property
    def num_phases(self) -> int:
        return len(self.cardinalities)


def phase_schedule(num_phases: int) -> PhaseSchedule:
    """The pure budget recurrence k_0 = 1, k_i = ceil((1+phi) k_{i-1})."""
    if num_phases < 1:
        raise ValueError("need at least one phase")
    ks = [1]
    ts = [1]
    for _ in range(num_phases - 1):
        ks.append(next_phase_cardinality(ks[-1]))
        ts.append(ts[-1] + ks[-1])
    return PhaseSchedule(cardinalities=tuple(ks), cumulative_steps=tuple(ts))


@dataclass(frozen=True)
class GreedyTrace:
    """Per-step choices, marginal gains, and how many candidates tied."""

    chosen: Tuple[int, ...]
    gains: Tuple[Value, ...]
    tie_counts: Tuple[int, ...]


Oracle = Callable[[int], Tuple[frozenset, Value]]


def phase_algorithm(
    inst: IncrementalInstance,
    k_max: int,
    oracle: Optional[Oracle] = None,
    budget: int = DEFAULT_ENUMERATION_BUDGET,
) -> Tuple[IncrementalOrder, PhaseSchedule]:
    """Emit optimal solutions for geometrically growing budgets, each in
    greedy order, skipping duplicates, until k_max distinct elements are out.

    The oracle maps a cardinality to a (subset, value) pair; the default is
    exhaustive enumeration, which is what the 1+phi guarantee assumes. Budget
    cardinalities beyond the ground-set size are clamped for the fetch while
    the schedule keeps the pure recurrence values.
    """
    n = inst.n
    if not 1 <= k_max <= n:
        raise ValueError(f"k_max={k_max} outside 1..{n}")
    if oracle is None:
        oracle = lambda k: brute_force_optimum(inst, k, budget=budget)
    order: list = []
    seen = 0
    ks: list = []
    ts: list = []
    completed: list = []
    k = 1
    t = 0
    while True:
        subset, _ = oracle(min(k, n))
        for e in greedy_order(inst, subset):
            if not seen >> e & 1:
                seen |= 1 << e
                order.append(e)
        t += k
        ks.append(k)
        ts.append(t)
        completed.append(len(order))
        if len(order) >= k_max:
            break
        k = next_phase_cardinality(k)
    schedule = PhaseSchedule(
        cardinalities=tuple(ks),
        cumulative_steps=tuple(ts),
        completed_at=tuple(completed),
    )
    return IncrementalOrder(tuple(order)), schedule


def phase_algorithm_with_oracle(
    inst: IncrementalInstance,
    k_max: int,
    approx_oracle: Oracle,
    alpha: float,
) -> Tuple[IncrementalOrder, PhaseSchedule]:
    """Phase algorithm driven by an alpha-approximate optimum oracle; the
    schedule annotates the claimed alpha * (1 + phi) bound."""
    if alpha < 1:
        raise ValueError(f"approximation factor must be >= 1, got {alpha}")
    order, schedule = phase_algorithm(inst, k_max, oracle=approx_oracle)
    annotated = PhaseSchedule(
        cardinalities=schedule.cardinalities,
        cumulative_steps=schedule.cumulative_steps,
        completed_at=schedule.completed_at,
        claimed_bound=alpha * PHASE_BOUND,
    )
    return order, annotated


def greedy(inst: IncrementalInstance, k_max: int) -> Tuple[IncrementalOrder, GreedyTrace]:
    """At each step add the element maximizing the objective, the smallest
    index winning ties; records gains and tie counts per step."""
    n = inst.n
    if not 1 <= k_max <= n:
        raise ValueError(f"k_max={k_max} outside 1..{n}")
    f = inst.objective
    mask = 0
    current: Value = 0
    chosen: list = []
    gains: list = []
    ties: list = []
    for _ in range(k_max):
        best_e = -1
        best_v: Value = 0
        tie_count = 0
        for e in range(n):
            if mask >> e & 1:
                continue
            v = f(mask | (1 << e))
            if best_e < 0 or v > best_v:
                best_e, best_v, tie_count = e, v, 1
            elif v == best_v:
                tie_count += 1
        mask |= 1 << best_e
        chosen.append(best_e)
        gains.append(best_v - current)
        ties.append(tie_count)
        current = best_v
    return (
        IncrementalOrder(tuple(chosen)),
        GreedyTrace(chosen=tuple(chosen), gains=tuple(gains), tie_counts=tuple(ties)),
    )


def greedy_bound(alpha: float) -> float:
    """The greedy guarantee alpha * e^alpha / (e^alpha - 1) under
    alpha-augmentability; e/(e-1) at alpha=1, about 2.313 at alpha=2."""
    if alpha <= 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    ea = math.exp(alpha)
    return alpha * ea / (ea - 1)
