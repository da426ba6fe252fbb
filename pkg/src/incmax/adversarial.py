"""Adversarial instance families and lower-bound verifiers.

Generators for every hard-instance family used in the competitive analysis:
region-choosing instances with polynomially decreasing densities, the
bridge-flow family on which greedy's ratio approaches 2e^2/(e^2-1), the
greedy traps (knapsack, independent set, disjoint paths), and the three
small counterexample fixtures. Verifiers cover the schedule condition, the
problematic-pair certification (rigorous grid plus derivative bound), and an
exact search for the best structured region schedule at finite size.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .core import IncrementalInstance, ResourceError
from .numeric import Value, iter_bits
from .objectives import (
    BridgeFlowInstance,
    KnapsackInstance,
    PathDemand,
    PathSystem,
    RegionSpec,
    SetSystem,
    TableInstanceData,
    WeightedGraph,
    bridge_flow_objective,
    matching_objective,
    max_flow,
    region_choosing_objective,
    table_objective,
)

MAX_REGION_SEARCH_N = 40


# ---------------------------------------------------------------------------
# region choosing
# ---------------------------------------------------------------------------


def gen_region_choosing(num_regions: int, beta: float) -> Tuple[RegionSpec, IncrementalInstance]:
    """A region-choosing instance with densities i**(beta-1): densities
    strictly decrease while full-region values strictly increase."""
    spec = RegionSpec(num_regions=num_regions, beta=beta)
    return spec, region_choosing_objective(spec)


@dataclass(frozen=True)
class ScheduleSequence:
    """Increasing region indices describing a structured incremental solution."""

    ks: Tuple[int, ...]

    def __post_init__(self):
        if not self.ks:
            raise ValueError("schedule sequence cannot be empty")
        if self.ks[0] < 1 or any(a >= b for a, b in zip(self.ks, self.ks[1:])):
            raise ValueError("schedule indices must be strictly increasing and positive")

    @property
    def alphas(self) -> Tuple[Fraction, ...]:
        """Normalized cumulative cardinalities (1/k_i) * sum_{j<=i} k_j."""
        out = []
        total = 0
        for k in self.ks:
            total += k
            out.append(Fraction(total, k))
        return tuple(out)

    @property
    def qs(self) -> Tuple[Fraction, ...]:
        """Consecutive growth factors k_i / k_{i-1}."""
        return tuple(Fraction(b, a) for a, b in zip(self.ks, self.ks[1:]))


def check_schedule_condition(
    seq: ScheduleSequence, rho: float, beta: float
) -> Tuple[bool, Optional[int]]:
    """A rho-competitive structured solution needs every normalized cumulative
    cardinality to stay at most rho**(1/beta); returns the first violating
    phase index, if any. The alphas are exact rationals."""
    threshold = rho ** (1 / beta)
    for i, alpha in enumerate(seq.alphas):
        if alpha > threshold:
            return False, i
    return True, None


def problematic_margin(rho: float, beta: float, eps: float, x: float) -> float:
    """The margin whose strict negativity on (1, rho**(1/beta)] certifies rho
    as a lower bound: (rho**(1/beta) + eps - x)**(1/(1-beta)) - x/(x-1+eps)."""
    if rho < 1:
        raise ValueError(f"rho must be at least 1, got {rho}")
    if not 0 < beta < 1:
        raise ValueError(f"beta must lie in (0,1), got {beta}")
    if eps <= 0:
        raise ValueError(f"eps must be positive, got {eps}")
    xmax = rho ** (1 / beta)
    if not 1 < x <= xmax:
        raise ValueError(f"x={x} outside (1, {xmax}]")
    head = xmax + eps - x
    if head < 0:
        raise ValueError("rho**(1/beta) + eps - x must be nonnegative")
    return head ** (1 / (1 - beta)) - x / (x - 1 + eps)


@dataclass(frozen=True)
class ProblematicPairCertificate:
    """Outcome of the rigorous negativity scan for one (rho, beta) pair.

    ``max_margin`` is the sampled maximum of the margin over the scanned grid
    and ``worst_x`` the grid point attaining it; certification additionally
    bounds the inter-sample variation through the derivative, so a certified
    pair has a provably negative supremum.
    """

    rho: float
    beta: float
    eps: float
    grid_points: int
    max_margin: Optional[float]
    worst_x: Optional[float]
    certified: bool


EPS_LADDER = (1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6)
LEFT_MARGIN = 1e-9


def certify_problematic(
    rho: float,
    beta: float,
    grid_points: int = 100_000,
    eps_values: Tuple[float, ...] = EPS_LADDER,
) -> ProblematicPairCertificate:
    """Certify a (rho, beta) pair by proving the margin negative on the whole
    interval (1, rho**(1/beta)].

    For each eps on a decreasing ladder: the sliver (1, 1+1e-9] is bounded
    analytically, the rest is sampled on a uniform grid, and each cell's
    supremum is bounded by the sampled endpoints plus a derivative bound, so
    a sampled-negative scan alone never certifies. Degenerate intervals
    (rho = 1) are never certified.
    """
    if rho < 1:
        raise ValueError(f"rho must be at least 1, got {rho}")
    if not 0 < beta < 1:
        raise ValueError(f"beta must lie in (0,1), got {beta}")
    if grid_points < 2:
        raise ValueError("need at least two grid points")
    xmax = rho ** (1 / beta)
    lo = 1 + LEFT_MARGIN
    exponent = 1 / (1 - beta)
    last_eps = eps_values[0]
    last_max: Optional[float] = None
    last_worst: Optional[float] = None
    if xmax <= lo:
        return ProblematicPairCertificate(
            rho, beta, eps_values[-1], grid_points, None, None, False
        )
    step = (xmax - lo) / (grid_points - 1)
    for eps in eps_values:
        last_eps = eps
        last_max = None
        last_worst = None
        shifted_max = xmax + eps
        sliver_bound = (shifted_max - 1) ** exponent - 1 / (LEFT_MARGIN + eps)
        if sliver_bound >= 0:
            continue

        def margin(x: float) -> float:
            return (shifted_max - x) ** exponent - x / (x - 1 + eps)

        def slope_bound(x: float) -> float:
            # |margin'| on [x, x+step]: both terms peak at the left endpoint
            return exponent * (shifted_max - x) ** (exponent - 1) + max(
                0.0, 1 - eps
            ) / ((x - 1 + eps) ** 2)

        ok = True
        prev_x = lo
        prev_h = margin(lo)
        last_max, last_worst = prev_h, prev_x
        for j in range(1, grid_points):
            x = xmax if j == grid_points - 1 else lo + j * step
            h = margin(x)
            if h > last_max:
                last_max, last_worst = h, x
            cell_sup = max(prev_h, h) + slope_bound(prev_x) * (x - prev_x) / 2
            if cell_sup >= 0:
                ok = False
                break
            prev_x, prev_h = x, h
        if ok:
            return ProblematicPairCertificate(
                rho, beta, eps, grid_points, last_max, last_worst, True
            )
    return ProblematicPairCertificate(
        rho, beta, last_eps, grid_points, last_max, last_worst, False
    )


def best_region_schedule(
    num_regions: int, beta: float
) -> Tuple[ScheduleSequence, float]:
    """Exact minimum worst-case ratio over all structured solutions of a
    region-choosing instance, with an optimal schedule.

    Searches increasing region-index sequences through a memoized recursion
    on (last region, cardinality so far): the past only contributes its fixed
    worst ratio, so this explores the full branch-and-bound tree without
    revisiting equivalent states. Ratios are evaluated at every cardinality,
    including the tail after the schedule stops.
    """
    if num_regions < 1:
        raise ValueError("need at least one region")
    if num_regions > MAX_REGION_SEARCH_N:
        raise ResourceError(
            f"region schedule search capped at N={MAX_REGION_SEARCH_N}",
            required=num_regions,
        )
    n = num_regions
    delta = [0.0] + [i ** (beta - 1) for i in range(1, n + 1)]
    value = [0.0] + [i ** beta for i in range(1, n + 1)]
    ground = n * (n + 1) // 2
    opt = [0.0] + [min(c, n) ** beta for c in range(1, ground + 1)]

    def segment_worst(prev_value: float, total: int, region: int) -> float:
        worst = 0.0
        d = delta[region]
        for r in range(1, region + 1):
            alg = r * d
            if prev_value > alg:
                alg = prev_value
            ratio = opt[total + r] / alg
            if ratio > worst:
                worst = ratio
        return worst

    memo: Dict[Tuple[int, int], Tuple[float, int]] = {}

    def future(region: int, total: int) -> Tuple[float, int]:
        key = (region, total)
        cached = memo.get(key)
        if cached is not None:
            return cached
        # stopping: the optimum keeps growing to N**beta while we plateau
        best_ratio = opt[ground] / value[region]
        best_next = 0
        for nxt in range(region + 1, n + 1):
            ratio = segment_worst(value[region], total, nxt)
            tail = future(nxt, total + nxt)[0]
            if tail > ratio:
                ratio = tail
            if ratio < best_ratio:
                best_ratio, best_next = ratio, nxt
        memo[key] = (best_ratio, best_next)
        return best_ratio, best_next

    best_ratio = math.inf
    best_start = 1
    for k0 in range(1, n + 1):
        ratio = segment_worst(0.0, 0, k0)
        tail = future(k0, k0)[0]
        if tail > ratio:
            ratio = tail
        if ratio < best_ratio:
            best_ratio, best_start = ratio, k0
    ks = [best_start]
    region, total = best_start, best_start
    while True:
        nxt = memo[(region, total)][1]
        if nxt == 0:
            break
        ks.append(nxt)
        total += nxt
        region = nxt
    return ScheduleSequence(tuple(ks)), best_ratio


# ---------------------------------------------------------------------------
# the hard bridge-flow family
# ---------------------------------------------------------------------------


def gen_bridge_flow_family(k: int) -> BridgeFlowInstance:
    """The k-th member of the bridge-flow family with cut size 4k on which
    greedy's ratio at cardinality 2k equals 2q^(2k)/(q^(2k)-1), q = k/(k-1).

    Ground-set order places the 2k middle cut edges first so that
    smallest-index tie-breaking makes greedy pick them in capacity order.
    """
    if k < 2:
        raise ValueError(f"family requires k >= 2, got {k}")
    q = Fraction(k, k - 1)
    s, t = 0, 1

    def v1(i: int) -> int:
        return 2 + (i - 1)

    def v2(i: int) -> int:
        return 2 + 2 * k + (i - 1)

    def v3(i: int) -> int:
        return 2 + 6 * k + (i - 1)

    def v4(i: int) -> int:
        return 2 + 10 * k + (i - 1)

    edges: List[Tuple[int, int]] = []
    caps: List[Value] = []

    def add(u: int, v: int, c: Value) -> None:
        edges.append((u, v))
        caps.append(c)

    for i in range(1, k + 1):
        add(s, v2(i), Fraction(1))
        add(v3(3 * k + i), t, Fraction(1))
    for i in range(1, k + 1):
        add(s, v2(3 * k + i), math.inf)
        add(v2(i), v3(i), math.inf)
        add(v2(3 * k + i), v3(3 * k + i), math.inf)
        add(v3(i), t, math.inf)
    for i in range(1, 2 * k + 1):
        c = q ** (2 * k + 1 - i)
        add(s, v1(i), c)
        add(v1(i), v2(k + i), c)
        add(v2(k + i), v3(k + i), c)
        add(v3(k + i), v4(i), c)
        add(v4(i), t, c)
    for i in range(1, 2 * k + 1):
        c = q ** (2 * k + 1 - i) / k
        for j in range(1, k + 1):
            add(v1(i), v2(j), c)
            add(v3(3 * k + j), v4(i), c)

    crossing_index = {edges[idx]: idx for idx in range(len(edges))}
    cut_order = (
        list(range(k + 1, 3 * k + 1))
        + list(range(1, k + 1))
        + list(range(3 * k + 1, 4 * k + 1))
    )
    cut = tuple(crossing_index[(v2(i), v3(i))] for i in cut_order)
    source_side = frozenset(
        [s]
        + [v1(i) for i in range(1, 2 * k + 1)]
        + [v2(i) for i in range(1, 4 * k + 1)]
    )
    return BridgeFlowInstance(
        num_vertices=2 + 12 * k,
        edges=tuple(edges),
        capacities=tuple(caps),
        source=s,
        sink=t,
        source_side=source_side,
        cut=cut,
    )


def bridge_flow_family_step_gain(k: int, j: int) -> Fraction:
    """Greedy's exact flow gain at step j on the k-th family member."""
    q = Fraction(k, k - 1)
    return q ** (2 * k + 1 - j)


def bridge_flow_family_greedy_value(k: int, j: int) -> Fraction:
    """Greedy's exact flow value after j steps: sum of q^i, i from 2k+1-j to 2k."""
    q = Fraction(k, k - 1)
    return sum((q ** i for i in range(2 * k + 1 - j, 2 * k + 1)), Fraction(0))


def bridge_flow_family_optimum(k: int) -> Fraction:
    """Exact optimal flow at cardinality 2k: 2(k-1) q^(2k+1)."""
    q = Fraction(k, k - 1)
    return 2 * (k - 1) * q ** (2 * k + 1)


def bridge_flow_family_optimum_witness(k: int) -> frozenset:
    """The size-2k cut subset achieving the optimum: the unbounded cut edges,
    which sit after the 2k preferred ones in ground-set order."""
    return frozenset(range(2 * k, 4 * k))


def bridge_flow_family_ratio(k: int) -> Fraction:
    """Greedy's exact ratio at cardinality 2k: 2 q^(2k) / (q^(2k) - 1)."""
    q = Fraction(k, k - 1)
    p = q ** (2 * k)
    return 2 * p / (p - 1)


# ---------------------------------------------------------------------------
# greedy traps
# ---------------------------------------------------------------------------


def _default_trap_eps(k: int, eps: Optional[Value]) -> Value:
    if eps is None:
        return Fraction(1, 4 * k)
    if not 0 < eps <= Fraction(1, 4 * k):
        raise ValueError(f"eps must lie in (0, 1/(4k)] = (0, {Fraction(1, 4 * k)}]")
    return eps


def gen_knapsack_trap(k: int, eps: Optional[Value] = None) -> KnapsackInstance:
    """One big item, k medium items, k tiny items: greedy takes the big item
    and then only tiny ones, staying below value 1 while the optimum at
    cardinality k is k(1-2 eps)."""
    if k < 1:
        raise ValueError("k must be positive")
    eps = _default_trap_eps(k, eps)
    items = [(1 - eps, 1 - eps)]
    items += [(2 * eps, 1 - 2 * eps)] * k
    items += [(eps * eps, eps * eps)] * k
    return KnapsackInstance(items=tuple(items))


def gen_independent_set_trap(k: int, eps: Optional[Value] = None) -> SetSystem:
    """A star of degree k plus k isolated vertices, encoded for set packing:
    each vertex's set is its incident star edges, so adjacent vertices clash."""
    if k < 1:
        raise ValueError("k must be positive")
    eps = _default_trap_eps(k, eps)
    sets = [frozenset(range(k))]  # the star center conflicts with every leaf
    sets += [frozenset([i]) for i in range(k)]
    sets += [frozenset()] * k  # isolated vertices conflict with nothing
    weights = [1 - eps] + [1 - 2 * eps] * k + [eps * eps] * k
    return SetSystem(universe=k, sets=tuple(sets), set_weights=tuple(weights))


def gen_disjoint_paths_trap(k: int, eps: Optional[Value] = None) -> PathSystem:
    """A path of 2k-1 edges plus k isolated edges. The path endpoints form a
    heavy pair whose only candidate is the whole path, so it blocks every
    inner pair; greedy falls for it and then collects tiny isolated pairs."""
    if k < 1:
        raise ValueError("k must be positive")
    eps = _default_trap_eps(k, eps)
    path_len = 2 * k - 1
    edges = [(i, i + 1) for i in range(path_len)]
    iso_base = path_len + 1
    edges += [(iso_base + 2 * j, iso_base + 2 * j + 1) for j in range(k)]
    pairs = [
        PathDemand(
            endpoints=(0, path_len),
            weight=1 - eps,
            candidates=(tuple(range(path_len + 1)),),
        )
    ]
    for i in range(path_len):
        pairs.append(
            PathDemand(endpoints=(i, i + 1), weight=1 - 2 * eps, candidates=((i, i + 1),))
        )
    for j in range(k):
        a, b = iso_base + 2 * j, iso_base + 2 * j + 1
        pairs.append(PathDemand(endpoints=(a, b), weight=eps * eps, candidates=((a, b),)))
    return PathSystem(
        num_vertices=iso_base + 2 * k, edges=tuple(edges), pairs=tuple(pairs)
    )


# ---------------------------------------------------------------------------
# counterexample witnesses
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WitnessFixture:
    """A named counterexample instance plus its expected checker verdicts."""

    name: str
    kind: str
    data: object
    instance: IncrementalInstance
    expected: Dict[str, bool]


def _flow_trap_fixture(eps: Fraction = Fraction(1, 1000)) -> WitnessFixture:
    # an s-t path of two unit edges plus a direct eps edge; buying the path
    # one edge at a time pays nothing until it completes
    edges = ((0, 1), (1, 2), (0, 2))
    caps = (Fraction(1), Fraction(1), eps)
    values = []
    for mask in range(8):
        sub = list(iter_bits(mask))
        values.append(
            max_flow(3, [edges[i] for i in sub], [caps[i] for i in sub], 0, 2)
        )
    data = TableInstanceData(n=3, values=tuple(values))
    inst = table_objective(data, label="flow-trap", accountable=False)
    return WitnessFixture(
        name="flow_trap",
        kind="table",
        data=data,
        instance=inst,
        expected={"monotone": True, "subadditive": False, "accountable": False},
    )


def _path_matching_fixture() -> WitnessFixture:
    # three-edge path with unit weights: 2-augmentable but not submodular
    graph = WeightedGraph(num_vertices=4, edges=((0, 1, 1), (1, 2, 1), (2, 3, 1)))
    inst = matching_objective(graph)
    return WitnessFixture(
        name="path_matching",
        kind="matching",
        data=graph,
        instance=inst,
        expected={
            "monotone": True,
            "subadditive": True,
            "accountable": True,
            "submodular": False,
            "alpha-augmentable(2)": True,
        },
    )


def _bridge_flow_witness_fixture() -> WitnessFixture:
    # unit capacities, three cut edges; the overlapping middle edge breaks
    # submodularity while 2-augmentability survives
    s, v1, v2, t = 0, 1, 2, 3
    edges = ((s, v1), (v2, t), (s, v2), (v1, v2), (v1, t))
    caps = tuple(Fraction(1) for _ in edges)
    data = BridgeFlowInstance(
        num_vertices=4,
        edges=edges,
        capacities=caps,
        source=s,
        sink=t,
        source_side=frozenset([s, v1]),
        cut=(2, 3, 4),
    )
    inst = bridge_flow_objective(data)
    return WitnessFixture(
        name="bridge_flow_witness",
        kind="bridge_flow",
        data=data,
        instance=inst,
        expected={
            "monotone": True,
            "subadditive": True,
            "accountable": True,
            "submodular": False,
            "alpha-augmentable(2)": True,
        },
    )


def gen_witnesses() -> Tuple[WitnessFixture, ...]:
    """The three counterexample fixtures with their expected verdicts."""
    return (
        _flow_trap_fixture(),
        _path_matching_fixture(),
        _bridge_flow_witness_fixture(),
    )
