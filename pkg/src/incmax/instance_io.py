"""The JSON instance file format consumed by the CLI.

A document is an object with a top-level "kind" discriminator in
{knapsack, matching, set_packing, coverage, disjoint_paths, region_choosing,
bridge_flow, table}. Rationals are encoded as "p/q" strings, infinity as
"inf", floats as JSON numbers; decoding is bit-exact. The "table" kind
supplies f explicitly as a map from bitmask (decimal string) to value, which
is how adversarial checker fixtures travel.

Schemas per kind:

  knapsack        {"items": [[size, value], ...]}
  matching        {"vertices": n, "edges": [[u, v, w], ...],
                   "vertex_capacities": [b0, ...] | null}
  set_packing     {"universe": n, "sets": [[e, ...], ...],
                   "set_weights": [...], "element_weights": [...] | null,
                   "opening_costs": [...] | null}
  coverage        same fields as set_packing
  disjoint_paths  {"vertices": n, "edges": [[u, v], ...],
                   "pairs": [{"endpoints": [a, b], "weight": w,
                              "candidates": [[v0, v1, ...], ...]}, ...]}
  region_choosing {"regions": N, "beta": b | null, "densities": [...] | null}
  bridge_flow     {"vertices": n, "source": s, "sink": t,
                   "edges": [[u, v], ...], "capacities": [...],
                   "source_side": [...], "cut": [edge index, ...]}
  table           {"n": n, "values": {"0": v, "1": v, ... all 2^n masks}}
"""

from __future__ import annotations

import json
from typing import Tuple

from .core import IncrementalInstance
from .numeric import encode_value, parse_value
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
    coverage_objective,
    disjoint_paths_objective,
    knapsack_objective,
    matching_objective,
    region_choosing_objective,
    set_packing_objective,
    table_objective,
)

KINDS = (
    "knapsack",
    "matching",
    "set_packing",
    "coverage",
    "disjoint_paths",
    "region_choosing",
    "bridge_flow",
    "table",
)


def instance_to_dict(data, kind: str = None) -> dict:
    """Encode an instance data object; SetSystem needs an explicit kind."""
    if isinstance(data, KnapsackInstance):
        return {
            "kind": "knapsack",
            "items": [[encode_value(s), encode_value(v)] for s, v in data.items],
        }
    if isinstance(data, WeightedGraph):
        return {
            "kind": "matching",
            "vertices": data.num_vertices,
            "edges": [[u, v, encode_value(w)] for u, v, w in data.edges],
            "vertex_capacities": (
                list(data.vertex_capacities) if data.vertex_capacities else None
            ),
        }
    if isinstance(data, SetSystem):
        if kind not in ("set_packing", "coverage"):
            raise ValueError("a SetSystem serializes as 'set_packing' or 'coverage'")
        return {
            "kind": kind,
            "universe": data.universe,
            "sets": [sorted(s) for s in data.sets],
            "set_weights": [encode_value(w) for w in data.set_weights],
            "element_weights": (
                [encode_value(w) for w in data.element_weights]
                if data.element_weights
                else None
            ),
            "opening_costs": (
                [encode_value(c) for c in data.opening_costs]
                if data.opening_costs
                else None
            ),
        }
    if isinstance(data, PathSystem):
        return {
            "kind": "disjoint_paths",
            "vertices": data.num_vertices,
            "edges": [list(e) for e in data.edges],
            "pairs": [
                {
                    "endpoints": list(p.endpoints),
                    "weight": encode_value(p.weight),
                    "candidates": [list(c) for c in p.candidates],
                }
                for p in data.pairs
            ],
        }
    if isinstance(data, RegionSpec):
        return {
            "kind": "region_choosing",
            "regions": data.num_regions,
            "beta": data.beta,
            "densities": (
                [encode_value(d) for d in data.densities] if data.densities else None
            ),
        }
    if isinstance(data, BridgeFlowInstance):
        return {
            "kind": "bridge_flow",
            "vertices": data.num_vertices,
            "source": data.source,
            "sink": data.sink,
            "edges": [list(e) for e in data.edges],
            "capacities": [encode_value(c) for c in data.capacities],
            "source_side": sorted(data.source_side),
            "cut": list(data.cut),
        }
    if isinstance(data, TableInstanceData):
        return {
            "kind": "table",
            "n": data.n,
            "values": {str(m): encode_value(v) for m, v in enumerate(data.values)},
        }
    raise ValueError(f"cannot serialize {type(data).__name__}")


def instance_from_dict(doc: dict) -> Tuple[str, object]:
    """Decode a document into its (kind, data object) pair."""
    if not isinstance(doc, dict) or "kind" not in doc:
        raise ValueError("instance document needs a top-level 'kind'")
    kind = doc["kind"]
    if kind == "knapsack":
        items = tuple((parse_value(s), parse_value(v)) for s, v in doc["items"])
        return kind, KnapsackInstance(items=items)
    if kind == "matching":
        caps = doc.get("vertex_capacities")
        return kind, WeightedGraph(
            num_vertices=doc["vertices"],
            edges=tuple((u, v, parse_value(w)) for u, v, w in doc["edges"]),
            vertex_capacities=tuple(caps) if caps else None,
        )
    if kind in ("set_packing", "coverage"):
        ew = doc.get("element_weights")
        oc = doc.get("opening_costs")
        return kind, SetSystem(
            universe=doc["universe"],
            sets=tuple(frozenset(s) for s in doc["sets"]),
            set_weights=tuple(parse_value(w) for w in doc["set_weights"]),
            element_weights=tuple(parse_value(w) for w in ew) if ew else None,
            opening_costs=tuple(parse_value(c) for c in oc) if oc else None,
        )
    if kind == "disjoint_paths":
        return kind, PathSystem(
            num_vertices=doc["vertices"],
            edges=tuple((u, v) for u, v in doc["edges"]),
            pairs=tuple(
                PathDemand(
                    endpoints=tuple(p["endpoints"]),
                    weight=parse_value(p["weight"]),
                    candidates=tuple(tuple(c) for c in p["candidates"]),
                )
                for p in doc["pairs"]
            ),
        )
    if kind == "region_choosing":
        densities = doc.get("densities")
        return kind, RegionSpec(
            num_regions=doc["regions"],
            beta=doc.get("beta"),
            densities=tuple(parse_value(d) for d in densities) if densities else None,
        )
    if kind == "bridge_flow":
        return kind, BridgeFlowInstance(
            num_vertices=doc["vertices"],
            edges=tuple((u, v) for u, v in doc["edges"]),
            capacities=tuple(parse_value(c) for c in doc["capacities"]),
            source=doc["source"],
            sink=doc["sink"],
            source_side=frozenset(doc["source_side"]),
            cut=tuple(doc["cut"]),
        )
    if kind == "table":
        raw = doc["values"]
        n = doc["n"]
        if len(raw) != 1 << n:
            raise ValueError(f"table needs all {1 << n} masks, got {len(raw)}")
        values = tuple(parse_value(raw[str(m)]) for m in range(1 << n))
        return kind, TableInstanceData(n=n, values=values)
    raise ValueError(f"unknown instance kind {kind!r}")


_BUILDERS = {
    "knapsack": knapsack_objective,
    "matching": matching_objective,
    "set_packing": set_packing_objective,
    "coverage": coverage_objective,
    "disjoint_paths": disjoint_paths_objective,
    "region_choosing": region_choosing_objective,
    "bridge_flow": bridge_flow_objective,
    "table": table_objective,
}


def build_instance(kind: str, data) -> IncrementalInstance:
    """Instantiate the objective matching a decoded (kind, data) pair."""
    try:
        builder = _BUILDERS[kind]
    except KeyError:
        raise ValueError(f"unknown instance kind {kind!r}") from None
    return builder(data)


def dumps(data, kind: str = None) -> str:
    return json.dumps(instance_to_dict(data, kind=kind), sort_keys=True, indent=2) + "\n"


def loads(text: str) -> Tuple[str, object]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"instance file is not valid JSON: {exc}") from exc
    return instance_from_dict(doc)


def save_instance(path, data, kind: str = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(data, kind=kind))


def load_instance(path) -> Tuple[str, object]:
    with open(path, "r", encoding="utf-8") as fh:
        return loads(fh.read())
