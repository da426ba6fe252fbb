"""Shared fixture suite: a few dozen small instances from every objective
family, with session-scoped optimum tables so the acceptance criteria can
reuse them."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

import pytest

from incmax import (
    IncrementalInstance,
    KnapsackInstance,
    PathDemand,
    PathSystem,
    SetSystem,
    WeightedGraph,
    bridge_flow_objective,
    coverage_objective,
    disjoint_paths_objective,
    knapsack_objective,
    matching_objective,
    optimum_table,
    region_optimum_table,
    set_packing_objective,
)
from incmax.adversarial import (
    gen_bridge_flow_family,
    gen_disjoint_paths_trap,
    gen_region_choosing,
    gen_witnesses,
)

SUITE_SEED = 20240811


@dataclass
class SuiteFixture:
    name: str
    family: str
    instance: IncrementalInstance
    k_max: int
    table_source: str  # "brute" or "region"
    spec: object = None


def _random_knapsack(rng: random.Random, n: int) -> KnapsackInstance:
    items = tuple(
        (Fraction(rng.randint(5, 90), 64), Fraction(rng.randint(1, 100), 16))
        for _ in range(n)
    )
    return KnapsackInstance(items=items)


def _random_matching(rng: random.Random, m: int, b_capacity: bool = False) -> WeightedGraph:
    num_vertices = rng.randint(5, 7)
    all_pairs = [
        (u, v) for u in range(num_vertices) for v in range(u + 1, num_vertices)
    ]
    chosen = rng.sample(all_pairs, min(m, len(all_pairs)))
    edges = tuple((u, v, rng.randint(1, 12)) for u, v in chosen)
    caps = None
    if b_capacity:
        caps = tuple(rng.choice((1, 1, 2)) for _ in range(num_vertices))
    return WeightedGraph(num_vertices=num_vertices, edges=edges, vertex_capacities=caps)


def _random_set_system(rng: random.Random, m: int, with_costs: bool = False) -> SetSystem:
    universe = rng.randint(5, 8)
    sets = []
    for _ in range(m):
        size = rng.randint(1, max(2, universe // 2))
        sets.append(frozenset(rng.sample(range(universe), size)))
    weights = tuple(rng.randint(1, 10) for _ in range(m))
    element_weights = tuple(rng.randint(1, 5) for _ in range(universe))
    costs = tuple(rng.randint(0, 3) for _ in range(m)) if with_costs else None
    return SetSystem(
        universe=universe,
        sets=tuple(sets),
        set_weights=weights,
        element_weights=element_weights,
        opening_costs=costs,
    )


def _handmade_paths() -> PathSystem:
    # one long pair conflicting with the inner edges, one far-away pair
    edges = ((0, 1), (1, 2), (2, 3), (4, 5))
    pairs = (
        PathDemand(endpoints=(0, 3), weight=3, candidates=((0, 1, 2, 3),)),
        PathDemand(endpoints=(0, 1), weight=2, candidates=((0, 1),)),
        PathDemand(endpoints=(2, 3), weight=2, candidates=((2, 3),)),
        PathDemand(endpoints=(1, 2), weight=1, candidates=((1, 2),)),
        PathDemand(endpoints=(4, 5), weight=1, candidates=((4, 5),)),
    )
    return PathSystem(num_vertices=6, edges=edges, pairs=pairs)


def build_suite() -> list:
    rng = random.Random(SUITE_SEED)
    fixtures = []
    for i, n in enumerate([6, 7, 8, 9, 10, 11, 12, 12]):
        inst = knapsack_objective(_random_knapsack(rng, n))
        fixtures.append(SuiteFixture(f"knapsack-{i}", "knapsack", inst, n, "brute"))
    for i, m in enumerate([6, 7, 8, 8, 9, 10, 12, 12]):
        graph = _random_matching(rng, m, b_capacity=(i == 3))
        inst = matching_objective(graph)
        fixtures.append(
            SuiteFixture(f"matching-{i}", "matching", inst, inst.n, "brute")
        )
    for i, m in enumerate([6, 7, 8, 9, 9]):
        inst = set_packing_objective(_random_set_system(rng, m))
        fixtures.append(SuiteFixture(f"packing-{i}", "packing", inst, m, "brute"))
    for i, m in enumerate([5, 6, 7, 8]):
        sys = _random_set_system(rng, m)
        inst = coverage_objective(
            SetSystem(
                universe=sys.universe,
                sets=sys.sets,
                set_weights=sys.set_weights,
                element_weights=sys.element_weights,
            )
        )
        fixtures.append(SuiteFixture(f"coverage-{i}", "coverage", inst, m, "brute"))
    for i, m in enumerate([6, 7]):
        inst = coverage_objective(_random_set_system(rng, m, with_costs=True))
        fixtures.append(
            SuiteFixture(f"coverage-costs-{i}", "coverage-costs", inst, m, "brute")
        )
    for i, (n_regions, beta) in enumerate([(3, 0.86), (5, 0.5), (6, 0.86), (8, 0.86)]):
        spec, inst = gen_region_choosing(n_regions, beta)
        fixtures.append(
            SuiteFixture(
                f"region-{i}", "region", inst, n_regions, "region", spec=spec
            )
        )
    paths = _handmade_paths()
    fixtures.append(
        SuiteFixture("paths-0", "paths", disjoint_paths_objective(paths), 5, "brute")
    )
    trap = gen_disjoint_paths_trap(2)
    fixtures.append(
        SuiteFixture("paths-1", "paths", disjoint_paths_objective(trap), 6, "brute")
    )
    gk2 = bridge_flow_objective(gen_bridge_flow_family(2))
    fixtures.append(SuiteFixture("bridge-gk2", "bridge", gk2, 8, "brute"))
    for fx in gen_witnesses():
        if fx.name == "bridge_flow_witness":
            fixtures.append(
                SuiteFixture("bridge-witness", "bridge", fx.instance, 3, "brute")
            )
    return fixtures


@pytest.fixture(scope="session")
def suite() -> list:
    return build_suite()


@pytest.fixture(scope="session")
def suite_tables(suite) -> dict:
    tables: dict = {}
    for fx in suite:
        if fx.table_source == "region":
            tables[fx.name] = region_optimum_table(fx.spec, fx.k_max)
        else:
            tables[fx.name] = optimum_table(fx.instance, fx.k_max)
    return tables


@pytest.fixture(scope="session")
def witnesses() -> tuple:
    return gen_witnesses()
