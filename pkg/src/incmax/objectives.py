"""Concrete incremental objective functions, packaged as instance factories.

Each factory turns a plain data description (knapsack items, a weighted
graph, ...) into an IncrementalInstance whose objective is an exact bounded
exhaustive search. The caps keep a single evaluation cheap at desk scale;
exceeding one raises ResourceError rather than silently approximating,
because every competitive ratio downstream depends on f being exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence, Tuple

from .core import GroundSet, IncrementalInstance, ResourceError
from .numeric import Value, is_exact, iter_bits

# Exhaustive inner solvers are pure, so each objective memoizes per bitmask;
# the bound keeps memory flat when enumeration sweeps huge ground sets.
_CACHE_SIZE = 1 << 18

MAX_KNAPSACK_ITEMS = 34
MAX_MATCHING_EDGES = 24
MAX_PACKING_SETS = 34
MAX_COVERAGE_COST_SETS = 20
MAX_PATH_PAIRS = 16
MAX_PATHS_PER_PAIR = 8


# ---------------------------------------------------------------------------
# instance data
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class KnapsackInstance:
    """Items as (size, value) pairs; the knapsack capacity is fixed at 1."""

    items: Tuple[Tuple[Value, Value], ...]

    def __post_init__(self):
        for size, value in self.items:
            if size < 0 or value < 0:
                raise ValueError("item sizes and values must be nonnegative")


@dataclass(frozen=True)
class WeightedGraph:
    """Undirected graph with weighted edges and optional vertex capacities."""

    num_vertices: int
    edges: Tuple[Tuple[int, int, Value], ...]
    vertex_capacities: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        for u, v, w in self.edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < self.num_vertices and 0 <= v < self.num_vertices):
                raise ValueError(f"edge ({u},{v}) has an endpoint out of range")
            if w < 0:
                raise ValueError("edge weights must be nonnegative")
        if self.vertex_capacities is not None:
            if len(self.vertex_capacities) != self.num_vertices:
                raise ValueError("one capacity per vertex required")
            if any(b < 1 for b in self.vertex_capacities):
                raise ValueError("vertex capacities must be at least 1")


@dataclass(frozen=True)
class SetSystem:
    """A weighted set family over a small universe.

    ``set_weights`` drive set packing; ``element_weights`` (default all 1)
    and optional ``opening_costs`` drive coverage.
    """

    universe: int
    sets: Tuple[frozenset, ...]
    set_weights: Tuple[Value, ...]
    element_weights: Optional[Tuple[Value, ...]] = None
    opening_costs: Optional[Tuple[Value, ...]] = None

    def __post_init__(self):
        if len(self.set_weights) != len(self.sets):
            raise ValueError("one weight per set required")
        for s in self.sets:
            if any(not 0 <= e < self.universe for e in s):
                raise ValueError("set member outside the universe")
        if self.element_weights is not None and len(self.element_weights) != self.universe:
            raise ValueError("one weight per universe element required")
        if self.opening_costs is not None and len(self.opening_costs) != len(self.sets):
            raise ValueError("one opening cost per set required")


@dataclass(frozen=True)
class PathDemand:
    """A weighted terminal pair with an explicit list of candidate paths."""

    endpoints: Tuple[int, int]
    weight: Value
    candidates: Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True)
class PathSystem:
    """A graph plus demand pairs; feasibility means a pairwise vertex-disjoint
    assignment of one candidate path to every selected pair."""

    num_vertices: int
    edges: Tuple[Tuple[int, int], ...]
    pairs: Tuple[PathDemand, ...]

    def __post_init__(self):
        edge_set = {frozenset(e) for e in self.edges}
        for pair in self.pairs:
            a, b = pair.endpoints
            for path in pair.candidates:
                if path[0] != a or path[-1] != b:
                    raise ValueError(
                        f"candidate path {path} does not connect {a} and {b}"
                    )
                for x, y in zip(path, path[1:]):
                    if frozenset((x, y)) not in edge_set:
                        raise ValueError(f"candidate path {path} uses a missing edge")


@dataclass(frozen=True)
class RegionSpec:
    """N regions, region i holding i elements of density delta(i).

    Either ``beta`` in (0,1) (density i**(beta-1)) or an explicit density
    list. Region i occupies the contiguous index block of length i starting
    at i*(i-1)/2.
    """

    num_regions: int
    beta: Optional[float] = None
    densities: Optional[Tuple[Value, ...]] = None

    def __post_init__(self):
        if self.num_regions < 1:
            raise ValueError("need at least one region")
        if (self.beta is None) == (self.densities is None):
            raise ValueError("specify exactly one of beta or densities")
        if self.beta is not None and not 0 < self.beta < 1:
            raise ValueError(f"beta must lie in (0,1), got {self.beta}")
        if self.densities is not None and len(self.densities) != self.num_regions:
            raise ValueError("one density per region required")

    @property
    def ground_size(self) -> int:
        return self.num_regions * (self.num_regions + 1) // 2

    def density(self, i: int) -> Value:
        if self.densities is not None:
            return self.densities[i - 1]
        return i ** (self.beta - 1)

    def region_value(self, i: int) -> Value:
        return i * self.density(i)

    def block(self, i: int) -> Tuple[int, int]:
        start = i * (i - 1) // 2
        return start, start + i


@dataclass(frozen=True)
class BridgeFlowInstance:
    """A directed flow network whose purchasable elements are exactly the
    edges of a one-directional s-t cut.

    ``source_side`` is the cut-inducing vertex partition; ``cut`` lists the
    crossing edge indices in ground-set order (order matters for greedy
    tie-breaking). Capacities are exact rationals, with math.inf as an
    unbounded sentinel.
    """

    num_vertices: int
    edges: Tuple[Tuple[int, int], ...]
    capacities: Tuple[Value, ...]
    source: int
    sink: int
    source_side: frozenset
    cut: Tuple[int, ...]

    def __post_init__(self):
        if len(self.capacities) != len(self.edges):
            raise ValueError("one capacity per edge required")
        if self.source == self.sink:
            raise ValueError("source and sink must differ")
        if self.source not in self.source_side or self.sink in self.source_side:
            raise ValueError("source must be on the source side and sink must not")
        crossing = set()
        for idx, (u, v) in enumerate(self.edges):
            u_in = u in self.source_side
            v_in = v in self.source_side
            if not u_in and v_in:
                raise ValueError(
                    f"edge {idx} runs backward across the cut ({u} -> {v})"
                )
            if u_in and not v_in:
                crossing.add(idx)
        if set(self.cut) != crossing or len(set(self.cut)) != len(self.cut):
            raise ValueError("cut must list each crossing edge exactly once")


# ---------------------------------------------------------------------------
# max flow (exact, deterministic)
# ---------------------------------------------------------------------------


def _scaled_int_capacities(capacities: Sequence[Value]) -> Tuple[list, int]:
    """Rescale rational capacities to integers; replace inf by a surrogate
    exceeding the total finite capacity so no min cut changes."""
    finite = []
    for c in capacities:
        if isinstance(c, float) and math.isinf(c):
            continue
        if isinstance(c, float):
            c = Fraction(c)
        if c < 0:
            raise ValueError("capacities must be nonnegative")
        finite.append(Fraction(c))
    scale = 1
    for c in finite:
        scale = scale * c.denominator // math.gcd(scale, c.denominator)
    surrogate = (sum(c * scale for c in finite) if finite else 0) + scale
    scaled = []
    for c in capacities:
        if isinstance(c, float) and math.isinf(c):
            scaled.append(int(surrogate))
        else:
            f = Fraction(c)
            scaled.append(int(f * scale))
    return scaled, scale


class _FlowNetwork:
    """Residual network with integer capacities; shortest augmenting paths."""

    def __init__(self, num_vertices: int, edges: Sequence[Tuple[int, int]], caps: Sequence[int]):
        self.n = num_vertices
        self.heads = []
        self.caps = []
        self.adjacency = [[] for _ in range(num_vertices)]
        for (u, v), c in zip(edges, caps):
            if not (0 <= u < num_vertices and 0 <= v < num_vertices):
                raise ValueError(f"edge ({u},{v}) has an endpoint out of range")
            self.adjacency[u].append(len(self.heads))
            self.heads.append(v)
            self.caps.append(c)
            self.adjacency[v].append(len(self.heads))
            self.heads.append(u)
            self.caps.append(0)

    def max_flow(self, s: int, t: int, caps: Optional[list] = None) -> int:
        caps = self.caps.copy() if caps is None else caps
        total = 0
        n = self.n
        while True:
            parent_arc = [-1] * n
            parent_arc[s] = -2
            queue = [s]
            head = 0
            while head < len(queue) and parent_arc[t] == -1:
                u = queue[head]
                head += 1
                for arc in self.adjacency[u]:
                    v = self.heads[arc]
                    if parent_arc[v] == -1 and caps[arc] > 0:
                        parent_arc[v] = arc
                        queue.append(v)
            if parent_arc[t] == -1:
                return total
            bottleneck = None
            v = t
            while v != s:
                arc = parent_arc[v]
                if bottleneck is None or caps[arc] < bottleneck:
                    bottleneck = caps[arc]
                v = self.heads[arc ^ 1]
            v = t
            while v != s:
                arc = parent_arc[v]
                caps[arc] -= bottleneck
                caps[arc ^ 1] += bottleneck
                v = self.heads[arc ^ 1]
            total += bottleneck


def max_flow(
    num_vertices: int,
    edges: Sequence[Tuple[int, int]],
    capacities: Sequence[Value],
    source: int,
    sink: int,
) -> Fraction:
    """Exact maximum s-t flow value over rational capacities."""
    if source == sink:
        raise ValueError("source and sink must differ")
    scaled, scale = _scaled_int_capacities(capacities)
    network = _FlowNetwork(num_vertices, edges, scaled)
    return Fraction(network.max_flow(source, sink), scale)


# ---------------------------------------------------------------------------
# objective factories
# ---------------------------------------------------------------------------


def _all_exact(values) -> bool:
    return all(is_exact(v) for v in values)


def knapsack_objective(inst: KnapsackInstance) -> IncrementalInstance:
    """f(S) = best total value of a sub-subset of S fitting in capacity 1."""
    n = len(inst.items)
    if n > MAX_KNAPSACK_ITEMS:
        raise ResourceError(
            f"knapsack objective capped at {MAX_KNAPSACK_ITEMS} items, got {n}",
            required=n,
        )
    items = inst.items
    exact = _all_exact(s for s, _ in items) and _all_exact(v for _, v in items)
    capacity = Fraction(1) if exact else 1.0

    def f(mask: int) -> Value:
        chosen = [items[i] for i in iter_bits(mask)]
        # zero-size items always fit; order the rest by density for pruning
        base = sum((v for s, v in chosen if s == 0), 0 if exact else 0.0)
        rest = sorted(
            ((s, v) for s, v in chosen if s > 0),
            key=lambda it: (-(it[1] / it[0]), it[0]),
        )
        suffix_value = [0] * (len(rest) + 1)
        for i in range(len(rest) - 1, -1, -1):
            suffix_value[i] = suffix_value[i + 1] + rest[i][1]
        best = base

        def fractional_bound(i: int, room, acc):
            bound = acc
            while i < len(rest) and room > 0:
                s, v = rest[i]
                if s <= room:
                    bound += v
                    room -= s
                else:
                    bound += v * room / s
                    break
                i += 1
            return bound

        def search(i: int, room, acc):
            nonlocal best
            if acc > best:
                best = acc
            if i == len(rest) or acc + suffix_value[i] <= best:
                return
            if fractional_bound(i, room, acc) <= best:
                return
            s, v = rest[i]
            if s <= room:
                search(i + 1, room - s, acc + v)
            search(i + 1, room, acc)

        search(0, capacity, base)
        return best

    return IncrementalInstance(
        ground=GroundSet(n),
        objective=lru_cache(maxsize=_CACHE_SIZE)(f),
        label=f"knapsack[{n}]",
        exact=exact,
    )


def matching_objective(g: WeightedGraph) -> IncrementalInstance:
    """f(S) = maximum weight of a b-matching using only edges of S."""
    m = len(g.edges)
    if m > MAX_MATCHING_EDGES:
        raise ResourceError(
            f"matching objective capped at {MAX_MATCHING_EDGES} edges, got {m}",
            required=m,
        )
    caps = g.vertex_capacities or tuple([1] * g.num_vertices)
    exact = _all_exact(w for _, _, w in g.edges)

    def f(mask: int) -> Value:
        chosen = sorted(
            (g.edges[i] for i in iter_bits(mask)), key=lambda e: (-e[2], e[0], e[1])
        )
        suffix = [0] * (len(chosen) + 1)
        for i in range(len(chosen) - 1, -1, -1):
            suffix[i] = suffix[i + 1] + chosen[i][2]
        used = [0] * g.num_vertices
        best = 0

        def search(i: int, acc):
            nonlocal best
            if acc > best:
                best = acc
            if i == len(chosen) or acc + suffix[i] <= best:
                return
            u, v, w = chosen[i]
            if used[u] < caps[u] and used[v] < caps[v]:
                used[u] += 1
                used[v] += 1
                search(i + 1, acc + w)
                used[u] -= 1
                used[v] -= 1
            search(i + 1, acc)

        search(0, 0)
        return best

    return IncrementalInstance(
        ground=GroundSet(m),
        objective=lru_cache(maxsize=_CACHE_SIZE)(f),
        label=f"matching[{m}]",
        exact=exact,
    )


def set_packing_objective(sys: SetSystem) -> IncrementalInstance:
    """f(S) = maximum total weight of a pairwise-disjoint subfamily of S."""
    m = len(sys.sets)
    if m > MAX_PACKING_SETS:
        raise ResourceError(
            f"set packing objective capped at {MAX_PACKING_SETS} sets, got {m}",
            required=m,
        )
    exact = _all_exact(sys.set_weights)
    element_masks = []
    for s in sys.sets:
        em = 0
        for e in s:
            em |= 1 << e
        element_masks.append(em)

    def f(mask: int) -> Value:
        chosen = sorted(
            ((element_masks[i], sys.set_weights[i]) for i in iter_bits(mask)),
            key=lambda sw: (-sw[1], sw[0]),
        )
        suffix = [0] * (len(chosen) + 1)
        for i in range(len(chosen) - 1, -1, -1):
            suffix[i] = suffix[i + 1] + chosen[i][1]
        best = 0

        def search(i: int, used: int, acc):
            nonlocal best
            if acc > best:
                best = acc
            if i == len(chosen) or acc + suffix[i] <= best:
                return
            em, w = chosen[i]
            if em & used == 0:
                search(i + 1, used | em, acc + w)
            search(i + 1, used, acc)

        search(0, 0, 0)
        return best

    return IncrementalInstance(
        ground=GroundSet(m),
        objective=lru_cache(maxsize=_CACHE_SIZE)(f),
        label=f"set-packing[{m}]",
        exact=exact,
    )


def coverage_objective(sys: SetSystem) -> IncrementalInstance:
    """f(S) = covered element weight; with opening costs, the best sub-family
    trades covered weight against cost (the empty sub-family floors f at 0)."""
    m = len(sys.sets)
    weights = sys.element_weights or tuple([1] * sys.universe)
    costs = sys.opening_costs
    if costs is not None and m > MAX_COVERAGE_COST_SETS:
        raise ResourceError(
            f"coverage with opening costs capped at {MAX_COVERAGE_COST_SETS} sets, got {m}",
            required=m,
        )
    exact = _all_exact(weights) and (costs is None or _all_exact(costs))
    element_masks = []
    set_weight_bound = []
    for s in sys.sets:
        em = 0
        for e in s:
            em |= 1 << e
        element_masks.append(em)
        set_weight_bound.append(sum(weights[e] for e in s))

    def covered_weight(covered: int) -> Value:
        return sum(weights[e] for e in iter_bits(covered))

    if costs is None:

        def f(mask: int) -> Value:
            covered = 0
            for i in iter_bits(mask):
                covered |= element_masks[i]
            return covered_weight(covered)

    else:

        def f(mask: int) -> Value:
            chosen = list(iter_bits(mask))
            gain_bound = [0] * (len(chosen) + 1)
            for i in range(len(chosen) - 1, -1, -1):
                margin = set_weight_bound[chosen[i]] - costs[chosen[i]]
                gain_bound[i] = gain_bound[i + 1] + max(0, margin)
            best = 0

            def search(i: int, covered: int, acc):
                nonlocal best
                if acc > best:
                    best = acc
                if i == len(chosen) or acc + gain_bound[i] <= best:
                    return
                j = chosen[i]
                new = element_masks[j] & ~covered
                gain = covered_weight(new) - costs[j]
                search(i + 1, covered | element_masks[j], acc + gain)
                search(i + 1, covered, acc)

            search(0, 0, 0)
            return best

    label = f"coverage[{m}]" + ("+costs" if costs is not None else "")
    return IncrementalInstance(
        ground=GroundSet(m),
        objective=lru_cache(maxsize=_CACHE_SIZE)(f),
        label=label,
        exact=exact,
    )


def disjoint_paths_objective(ps: PathSystem) -> IncrementalInstance:
    """f(S) = best total weight of pairs in S admitting a mutually
    vertex-disjoint assignment of one candidate path each."""
    m = len(ps.pairs)
    if m > MAX_PATH_PAIRS:
        raise ResourceError(
            f"disjoint paths objective capped at {MAX_PATH_PAIRS} pairs, got {m}",
            required=m,
        )
    for pair in ps.pairs:
        if len(pair.candidates) > MAX_PATHS_PER_PAIR:
            raise ResourceError(
                f"at most {MAX_PATHS_PER_PAIR} candidate paths per pair",
                required=len(pair.candidates),
            )
    exact = _all_exact(p.weight for p in ps.pairs)
    candidate_masks = []
    for pair in ps.pairs:
        masks = []
        for path in pair.candidates:
            vm = 0
            for v in path:
                vm |= 1 << v
            masks.append(vm)
        candidate_masks.append(tuple(masks))

    def f(mask: int) -> Value:
        chosen = sorted(iter_bits(mask), key=lambda i: (-ps.pairs[i].weight, i))
        suffix = [0] * (len(chosen) + 1)
        for i in range(len(chosen) - 1, -1, -1):
            suffix[i] = suffix[i + 1] + ps.pairs[chosen[i]].weight
        best = 0

        def search(i: int, used: int, acc):
            nonlocal best
            if acc > best:
                best = acc
            if i == len(chosen) or acc + suffix[i] <= best:
                return
            j = chosen[i]
            for vm in candidate_masks[j]:
                if vm & used == 0:
                    search(i + 1, used | vm, acc + ps.pairs[j].weight)
            search(i + 1, used, acc)

        search(0, 0, 0)
        return best

    return IncrementalInstance(
        ground=GroundSet(m),
        objective=lru_cache(maxsize=_CACHE_SIZE)(f),
        label=f"disjoint-paths[{m}]",
        exact=exact,
    )


def region_choosing_objective(spec: RegionSpec) -> IncrementalInstance:
    """f(S) = best single-region haul: max over i of |R_i & S| * delta(i)."""
    n = spec.ground_size
    blocks = []
    deltas = []
    for i in range(1, spec.num_regions + 1):
        start, stop = spec.block(i)
        blocks.append(((1 << stop) - (1 << start)))
        deltas.append(spec.density(i))
    exact = _all_exact(deltas)

    def f(mask: int) -> Value:
        best: Value = 0
        for block, delta in zip(blocks, deltas):
            v = (mask & block).bit_count() * delta
            if v > best:
                best = v
        return best

    label = (
        f"region-choosing[N={spec.num_regions},beta={spec.beta}]"
        if spec.beta is not None
        else f"region-choosing[N={spec.num_regions}]"
    )
    return IncrementalInstance(ground=GroundSet(n), objective=f, label=label, exact=exact)


def region_optimum(spec: RegionSpec, k: int) -> Tuple[frozenset, Value]:
    """Closed-form optimum of cardinality k for a region-choosing instance.

    For strictly decreasing densities and strictly increasing region values
    (the generated family) this reproduces the brute-force result including
    its lexicographic tie-break; for arbitrary density lists it returns some
    witness achieving the optimal value.
    """
    n = spec.ground_size
    if not 1 <= k <= n:
        raise ValueError(f"cardinality k={k} outside 1..{n}")
    best_i, best_value = 0, -1
    for i in range(1, spec.num_regions + 1):
        v = min(k, i) * spec.density(i)
        if v > best_value:
            best_i, best_value = i, v
    start, _ = spec.block(best_i)
    take = min(k, best_i)
    witness = set(range(start, start + take))
    for e in range(n):
        if len(witness) == k:
            break
        witness.add(e)
    return frozenset(witness), best_value


def region_optimum_table(spec: RegionSpec, k_max: int):
    """Closed-form optimum table; cross-checked against enumeration in tests."""
    from .core import OptimumTable, check_table_invariants

    values = []
    witnesses = []
    inst = region_choosing_objective(spec)
    for k in range(1, k_max + 1):
        witness, value = region_optimum(spec, k)
        values.append(value)
        witnesses.append(witness)
    table = OptimumTable(k_max=k_max, values=tuple(values), witnesses=tuple(witnesses))
    check_table_invariants(inst, table)
    return table


@dataclass(frozen=True)
class TableInstanceData:
    """An explicit set function given by its full value table."""

    n: int
    values: Tuple[Value, ...]

    def __post_init__(self):
        if len(self.values) != 1 << self.n:
            raise ValueError(
                f"table needs {1 << self.n} entries for n={self.n}, got {len(self.values)}"
            )
        if any(v < 0 for v in self.values):
            raise ValueError("table values must be nonnegative")


def table_objective(
    data: TableInstanceData, label: str = "table", accountable: bool = False
) -> IncrementalInstance:
    """Wrap an explicit value table; used by adversarial checker fixtures."""
    values = data.values

    def f(mask: int) -> Value:
        return values[mask]

    return IncrementalInstance(
        ground=GroundSet(data.n),
        objective=f,
        label=label,
        exact=_all_exact(values),
        accountable=accountable,
    )


def bridge_flow_objective(inst: BridgeFlowInstance) -> IncrementalInstance:
    """f(S) = exact max-flow value once the cut edges outside S are removed."""
    scaled, scale = _scaled_int_capacities(inst.capacities)
    network = _FlowNetwork(inst.num_vertices, inst.edges, scaled)
    # residual arc 2*i carries edge i's capacity
    cut_arcs = [2 * idx for idx in inst.cut]

    def f(mask: int) -> Fraction:
        caps = network.caps.copy()
        closed = ~mask
        for pos, arc in enumerate(cut_arcs):
            if closed >> pos & 1:
                caps[arc] = 0
        return Fraction(network.max_flow(inst.source, inst.sink, caps), scale)

    return IncrementalInstance(
        ground=GroundSet(len(inst.cut)),
        objective=lru_cache(maxsize=_CACHE_SIZE)(f),
        label=f"bridge-flow[{len(inst.cut)}]",
        exact=True,
    )
