"""Ground-set abstraction, brute-force oracles, order utilities, and checkers.

An incremental problem is a ground set of n indexed elements together with a
pure set function f mapping subsets (bitmasks) to nonnegative values. This
module provides:

* exhaustive optimum oracles with an explicit enumeration budget,
* the density / greedy-order machinery used by the phase algorithm,
* the per-cardinality competitive-ratio evaluator,
* property checkers for monotonicity, sub-additivity, accountability,
  alpha-augmentability and submodularity, each exhaustive up to a size cap
  and seeded-sampling beyond it.

Every function here is pure; reports are frozen dataclasses.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional, Tuple, Union

from .numeric import (
    INFINITE,
    Value,
    bits_of,
    is_exact,
    iter_bits,
    mask_of,
    value_ge,
)

DEFAULT_ENUMERATION_BUDGET = 50_000_000

# Exhaustive-mode size caps. Beyond these the checkers refuse (explicit
# resource error) or fall back to seeded sampling in "auto" mode.
MONOTONE_EXHAUSTIVE_MAX_N = 14
PAIRWISE_EXHAUSTIVE_MAX_N = 10
SUBSET_EXHAUSTIVE_MAX_N = 20


class ResourceError(RuntimeError):
    """An enumeration or size budget was exceeded."""

    def __init__(self, message: str, required: Optional[int] = None):
        super().__init__(message)
        self.required = required


class AccountabilityError(RuntimeError):
    """Peeling found a set whose every single-element removal loses more than
    an average share of its value."""

    def __init__(self, message: str, subset: frozenset):
        super().__init__(message)
        self.subset = subset


@dataclass(frozen=True)
class GroundSet:
    """Dense index space 0..n-1 of candidate solution elements."""

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"ground set needs at least one element, got n={self.n}")

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1


@dataclass(frozen=True)
class IncrementalInstance:
    """A ground set plus a pure objective evaluated on bitmask subsets.

    ``exact`` selects zero-tolerance comparisons (int / Fraction values);
    ``accountable`` records whether the objective is expected to satisfy the
    accountability property, which gates the optimum-table density assertion.
    """

    ground: GroundSet
    objective: Callable[[int], Value]
    label: str
    exact: bool = False
    accountable: bool = True

    @property
    def n(self) -> int:
        return self.ground.n


@dataclass(frozen=True)
class IncrementalOrder:
    """A duplicate-free permutation prefix of element indices."""

    sequence: Tuple[int, ...]

    def __post_init__(self):
        if len(set(self.sequence)) != len(self.sequence):
            raise ValueError("incremental order contains duplicate elements")
        if any(e < 0 for e in self.sequence):
            raise ValueError("incremental order contains negative indices")

    def __len__(self) -> int:
        return len(self.sequence)

    def prefix_mask(self, k: int) -> int:
        mask = 0
        for e in self.sequence[:k]:
            mask |= 1 << e
        return mask


@dataclass(frozen=True)
class OptimumTable:
    """Optimal values and one witness set for each cardinality 1..k_max."""

    k_max: int
    values: Tuple[Value, ...]
    witnesses: Tuple[frozenset, ...]

    def value(self, k: int) -> Value:
        return self.values[k - 1]

    def witness(self, k: int) -> frozenset:
        return self.witnesses[k - 1]


@dataclass(frozen=True)
class CompetitivenessReport:
    """Per-cardinality algorithm/optimum values and ratios; 1-indexed by k."""

    k_max: int
    alg_values: Tuple[Value, ...]
    opt_values: Tuple[Value, ...]
    ratios: Tuple[Value, ...]
    worst_ratio: Value
    argmax_k: int

    def ratio(self, k: int) -> Value:
        return self.ratios[k - 1]


@dataclass(frozen=True)
class PropertyReport:
    """Outcome of a property check; the witness reproduces any violation."""

    name: str
    holds: bool
    witness: Optional[Tuple[frozenset, ...]]
    pairs_checked: int
    mode: str


def evaluate(inst: IncrementalInstance, subset: Union[Iterable[int], int]) -> Value:
    """Evaluate the objective on a subset given as indices or a bitmask."""
    mask = mask_of(subset, inst.n)
    v = inst.objective(mask)
    if v < 0:
        raise ValueError(f"objective {inst.label!r} returned a negative value {v!r}")
    return v


def brute_force_optimum(
    inst: IncrementalInstance,
    k: int,
    budget: int = DEFAULT_ENUMERATION_BUDGET,
) -> Tuple[frozenset, Value]:
    """Exhaustively find a best subset of size exactly k.

    Ties break to the lexicographically smallest subset (the first maximum in
    the combinations scan), which keeps every downstream output deterministic.
    """
    n = inst.n
    if not 1 <= k <= n:
        raise ValueError(f"cardinality k={k} outside 1..{n}")
    count = math.comb(n, k)
    if count > budget:
        raise ResourceError(
            f"enumerating {count} subsets of size {k} exceeds budget {budget}",
            required=count,
        )
    f = inst.objective
    best_mask = -1
    best_value: Value = 0
    for combo in itertools.combinations(range(n), k):
        mask = 0
        for e in combo:
            mask |= 1 << e
        v = f(mask)
        if best_mask < 0 or v > best_value:
            best_mask = mask
            best_value = v
    return bits_of(best_mask), best_value


def optimum_table(
    inst: IncrementalInstance,
    k_max: int,
    budget: int = DEFAULT_ENUMERATION_BUDGET,
) -> OptimumTable:
    """Tabulate brute-force optima for k = 1..k_max and sanity-check them."""
    if k_max > inst.n:
        raise ValueError(f"k_max={k_max} exceeds ground-set size {inst.n}")
    values = []
    witnesses = []
    for k in range(1, k_max + 1):
        witness, v = brute_force_optimum(inst, k, budget=budget)
        values.append(v)
        witnesses.append(witness)
    table = OptimumTable(k_max=k_max, values=tuple(values), witnesses=tuple(witnesses))
    check_table_invariants(inst, table)
    return table


def check_table_invariants(inst: IncrementalInstance, table: OptimumTable) -> None:
    """Optimal values never decrease; optimal density never increases when the
    objective is flagged accountable."""
    for k in range(2, table.k_max + 1):
        prev, cur = table.value(k - 1), table.value(k)
        if not value_ge(cur, prev, inst.exact):
            raise RuntimeError(
                f"{inst.label}: optimum value decreased from k={k - 1} to k={k}"
            )
        if inst.accountable and not value_ge(prev * k, cur * (k - 1), inst.exact):
            raise RuntimeError(
                f"{inst.label}: optimum density increased from k={k - 1} to k={k}"
            )


def density(inst: IncrementalInstance, subset: Union[Iterable[int], int]) -> Value:
    """Value of a set divided by its size."""
    mask = mask_of(subset, inst.n)
    size = mask.bit_count()
    if size == 0:
        raise ValueError("density of the empty set is undefined")
    v = inst.objective(mask)
    if isinstance(v, float):
        return v / size
    return Fraction(v) / size


def greedy_order(inst: IncrementalInstance, subset: Union[Iterable[int], int]) -> list:
    """Order a set so that prefix densities are nonincreasing.

    Works by repeated peeling: from the current set X remove an element whose
    loss is at most the average share f(X)/|X|, then emit removals in reverse.
    When several elements qualify the largest index is removed, so the emitted
    order prefers small indices early. Fails with AccountabilityError if no
    element qualifies, which certifies an accountability violation on X.
    """
    mask = mask_of(subset, inst.n)
    if mask == 0:
        raise ValueError("cannot order the empty set")
    f = inst.objective
    removed = []
    while mask:
        size = mask.bit_count()
        if size == 1:
            removed.append(mask.bit_length() - 1)
            break
        fx = f(mask)
        threshold = fx - (fx / size if isinstance(fx, float) else Fraction(fx) / size)
        pick = -1
        rest = mask
        while rest:
            i = rest.bit_length() - 1
            rest ^= 1 << i
            if value_ge(f(mask ^ (1 << i)), threshold, inst.exact):
                pick = i
                break
        if pick < 0:
            raise AccountabilityError(
                f"{inst.label}: no element of {sorted(bits_of(mask))} can be "
                "removed within an average share of the value",
                subset=bits_of(mask),
            )
        removed.append(pick)
        mask ^= 1 << pick
    removed.reverse()
    return removed


def competitive_ratio(
    inst: IncrementalInstance,
    order: IncrementalOrder,
    table: OptimumTable,
) -> CompetitivenessReport:
    """Compare an incremental order against tabulated optima, cardinality by
    cardinality. Ratio conventions: opt/alg when alg > 0, INFINITE when
    alg = 0 < opt, and 1 when both vanish."""
    if len(order) < table.k_max:
        raise ValueError(
            f"order has {len(order)} elements but the table covers k up to {table.k_max}"
        )
    alg_values = []
    ratios = []
    mask = 0
    for k in range(1, table.k_max + 1):
        mask |= 1 << order.sequence[k - 1]
        a = inst.objective(mask)
        o = table.value(k)
        alg_values.append(a)
        if a > 0:
            if is_exact(a) and is_exact(o):
                ratios.append(Fraction(o) / Fraction(a))
            else:
                ratios.append(float(o) / float(a))
        elif o > 0:
            ratios.append(INFINITE)
        else:
            ratios.append(1)
    worst = ratios[0]
    argmax_k = 1
    for k in range(2, table.k_max + 1):
        if ratios[k - 1] > worst:
            worst = ratios[k - 1]
            argmax_k = k
    return CompetitivenessReport(
        k_max=table.k_max,
        alg_values=tuple(alg_values),
        opt_values=tuple(table.values),
        ratios=tuple(ratios),
        worst_ratio=worst,
        argmax_k=argmax_k,
    )


def _value_table(inst: IncrementalInstance) -> list:
    f = inst.objective
    return [f(mask) for mask in range(1 << inst.n)]


def _resolve_mode(mode: str, n: int, cap: int, what: str) -> bool:
    """Return True for exhaustive scanning, False for sampling."""
    if mode == "exhaustive":
        if n > cap:
            raise ResourceError(
                f"exhaustive {what} check needs n <= {cap}, got n={n}", required=n
            )
        return True
    if mode == "sampled":
        return False
    if mode == "auto":
        return n <= cap
    raise ValueError(f"unknown checker mode {mode!r}")


def check_monotone(
    inst: IncrementalInstance,
    mode: str = "auto",
    seed: int = 0,
    trials: int = 4_000,
) -> PropertyReport:
    """f(S) <= f(S + x) for every S and x outside S.

    Single-element extensions suffice by transitivity, so the exhaustive scan
    costs n * 2^(n-1) comparisons instead of 3^n ordered pairs.
    """
    n = inst.n
    name = "monotone"
    if _resolve_mode(mode, n, MONOTONE_EXHAUSTIVE_MAX_N, name):
        table = _value_table(inst)
        full = (1 << n) - 1
        checked = 0
        for m in range(1 << n):
            fm = table[m]
            outside = full & ~m
            for x in iter_bits(outside):
                checked += 1
                if not value_ge(table[m | (1 << x)], fm, inst.exact):
                    return PropertyReport(
                        name, False, (bits_of(m), bits_of(m | (1 << x))), checked, "exhaustive"
                    )
        return PropertyReport(name, True, None, checked, "exhaustive")
    rng = random.Random(seed)
    f = inst.objective
    full = (1 << n) - 1
    checked = 0
    for _ in range(trials):
        m = rng.getrandbits(n) & ~(1 << rng.randrange(n))
        outside = list(iter_bits(full & ~m))
        x = rng.choice(outside)
        checked += 1
        if not value_ge(f(m | (1 << x)), f(m), inst.exact):
            return PropertyReport(
                name, False, (bits_of(m), bits_of(m | (1 << x))), checked, "sampled"
            )
    return PropertyReport(name, True, None, checked, "sampled")


def check_subadditive(
    inst: IncrementalInstance,
    mode: str = "auto",
    seed: int = 0,
    trials: int = 4_000,
) -> PropertyReport:
    """f(S) + f(T) >= f(S | T) over all pairs (symmetric, so T scans from S)."""
    n = inst.n
    name = "subadditive"
    if _resolve_mode(mode, n, PAIRWISE_EXHAUSTIVE_MAX_N, name):
        table = _value_table(inst)
        size = 1 << n
        checked = 0
        for s in range(size):
            fs = table[s]
            for t in range(s, size):
                checked += 1
                if not value_ge(fs + table[t], table[s | t], inst.exact):
                    return PropertyReport(
                        name, False, (bits_of(s), bits_of(t)), checked, "exhaustive"
                    )
        return PropertyReport(name, True, None, checked, "exhaustive")
    rng = random.Random(seed)
    f = inst.objective
    checked = 0
    for _ in range(trials):
        s = rng.getrandbits(n)
        t = rng.getrandbits(n)
        checked += 1
        if not value_ge(f(s) + f(t), f(s | t), inst.exact):
            return PropertyReport(name, False, (bits_of(s), bits_of(t)), checked, "sampled")
    return PropertyReport(name, True, None, checked, "sampled")


def check_accountable(
    inst: IncrementalInstance,
    mode: str = "auto",
    seed: int = 0,
    trials: int = 4_000,
) -> PropertyReport:
    """Every nonempty S has an element whose removal keeps f(S) - f(S)/|S|."""
    n = inst.n
    name = "accountable"

    def holds_on(mask: int, lookup) -> bool:
        size = mask.bit_count()
        fx = lookup(mask)
        threshold = fx - (fx / size if isinstance(fx, float) else Fraction(fx) / size)
        return any(
            value_ge(lookup(mask ^ (1 << i)), threshold, inst.exact)
            for i in iter_bits(mask)
        )

    if _resolve_mode(mode, n, SUBSET_EXHAUSTIVE_MAX_N, name):
        table = _value_table(inst)
        checked = 0
        for m in range(1, 1 << n):
            checked += 1
            if not holds_on(m, table.__getitem__):
                return PropertyReport(name, False, (bits_of(m),), checked, "exhaustive")
        return PropertyReport(name, True, None, checked, "exhaustive")
    rng = random.Random(seed)
    checked = 0
    for _ in range(trials):
        m = rng.getrandbits(n)
        if m == 0:
            continue
        checked += 1
        if not holds_on(m, inst.objective):
            return PropertyReport(name, False, (bits_of(m),), checked, "sampled")
    return PropertyReport(name, True, None, checked, "sampled")


def check_alpha_augmentable(
    inst: IncrementalInstance,
    alpha: Value,
    mode: str = "auto",
    seed: int = 0,
    trials: int = 4_000,
    denominator: str = "T",
) -> PropertyReport:
    """For every (S, T) with T - S nonempty, some t in T - S gains at least
    (f(S | T) - alpha * f(S)) / |T|.

    ``denominator="T-minus-S"`` switches the divisor to |T - S| for
    experimentation; the default follows the defining inequality verbatim.
    """
    if alpha <= 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    if denominator not in ("T", "T-minus-S"):
        raise ValueError(f"unknown denominator choice {denominator!r}")
    n = inst.n
    name = f"alpha-augmentable({alpha})"
    exact = inst.exact and is_exact(alpha)

    def witnesses_pair(s: int, t: int, lookup) -> bool:
        """True when the pair (S, T) violates the condition."""
        d = t & ~s
        if d == 0:
            return False
        denom = t.bit_count() if denominator == "T" else d.bit_count()
        fs = lookup(s)
        rhs = (lookup(s | t) - alpha * fs) / denom
        for i in iter_bits(d):
            if value_ge(lookup(s | (1 << i)) - fs, rhs, exact):
                return False
        return True

    if _resolve_mode(mode, n, PAIRWISE_EXHAUSTIVE_MAX_N, name):
        table = _value_table(inst)
        size = 1 << n
        checked = 0
        for s in range(size):
            for t in range(size):
                if t & ~s == 0:
                    continue
                checked += 1
                if witnesses_pair(s, t, table.__getitem__):
                    return PropertyReport(
                        name, False, (bits_of(s), bits_of(t)), checked, "exhaustive"
                    )
        return PropertyReport(name, True, None, checked, "exhaustive")
    rng = random.Random(seed)
    checked = 0
    for _ in range(trials):
        s = rng.getrandbits(n)
        t = rng.getrandbits(n)
        if t & ~s == 0:
            continue
        checked += 1
        if witnesses_pair(s, t, inst.objective):
            return PropertyReport(name, False, (bits_of(s), bits_of(t)), checked, "sampled")
    return PropertyReport(name, True, None, checked, "sampled")


def check_submodular(
    inst: IncrementalInstance,
    mode: str = "auto",
    seed: int = 0,
    trials: int = 4_000,
) -> PropertyReport:
    """f(S) + f(T) >= f(S | T) + f(S & T) over all pairs."""
    n = inst.n
    name = "submodular"
    if _resolve_mode(mode, n, PAIRWISE_EXHAUSTIVE_MAX_N, name):
        table = _value_table(inst)
        size = 1 << n
        checked = 0
        for s in range(size):
            fs = table[s]
            for t in range(s, size):
                checked += 1
                if not value_ge(fs + table[t], table[s | t] + table[s & t], inst.exact):
                    return PropertyReport(
                        name, False, (bits_of(s), bits_of(t)), checked, "exhaustive"
                    )
        return PropertyReport(name, True, None, checked, "exhaustive")
    rng = random.Random(seed)
    f = inst.objective
    checked = 0
    for _ in range(trials):
        s = rng.getrandbits(n)
        t = rng.getrandbits(n)
        checked += 1
        if not value_ge(f(s) + f(t), f(s | t) + f(s & t), inst.exact):
            return PropertyReport(name, False, (bits_of(s), bits_of(t)), checked, "sampled")
    return PropertyReport(name, True, None, checked, "sampled")
