"""JSON and DOT serialization of lattice graphs.

The JSON layout is a fixed contract: top level carries d, f, splitting, tau
and m (null outside the split case), then nodes and edges.  Node ids are the
indexes of the deterministic node ordering, and generators are rendered as
"x+y*w" with the basis element spelled w.
"""

from __future__ import annotations

import json

from .core import OrderContext, QuadInt
from .lattice import LatticeGraph
from .splitting import SplitData

__all__ = [
    "render_generator",
    "lattice_document",
    "to_json",
    "from_json",
    "to_dot",
]


def render_generator(z: QuadInt) -> str:
    return f"{z.x}{z.y:+d}*w"


def lattice_document(ctx: OrderContext, sd: SplitData, graph: LatticeGraph) -> dict:
    nodes = []
    for i, node in enumerate(graph.nodes):
        nodes.append(
            {
                "id": i,
                "hnf": [node.ideal.q, node.ideal.r, node.ideal.s],
                "label": node.primary_label(),
                "layer": node.layer,
                "normExp": node.norm_exp,
                "dModule": node.is_D_module,
                "invertible": node.is_invertible,
                "principal": (
                    render_generator(node.principal_generator)
                    if node.principal_generator is not None
                    else None
                ),
            }
        )
    return {
        "d": ctx.d,
        "f": ctx.f,
        "splitting": sd.stype.value,
        "tau": sd.tau,
        "m": sd.m,
        "nodes": nodes,
        "edges": [[p, c] for p, c in graph.edges],
    }


def to_json(doc: dict) -> str:
    return json.dumps(doc, indent=2)


def from_json(text: str) -> dict:
    doc = json.loads(text)
    for key in ("d", "f", "splitting", "tau", "m", "nodes", "edges"):
        if key not in doc:
            raise ValueError(f"missing key {key!r} in lattice document")
    return doc


def to_dot(doc: dict) -> str:
    """Graphviz rendering with one rank per (layer, norm exponent) pair."""
    lines = [
        "digraph lattice {",
        "  rankdir=TB;",
        '  node [shape=box, fontname="Helvetica"];',
    ]
    for node in doc["nodes"]:
        q, r, s = node["hnf"]
        label = node["label"]
        lines.append(
            f'  n{node["id"]} [label="{label}\\n({q},{r},{s})"];'
        )
    ranks: dict[tuple[int, int], list[int]] = {}
    for node in doc["nodes"]:
        ranks.setdefault((node["layer"], node["normExp"]), []).append(node["id"])
    for key in sorted(ranks):
        members = "; ".join(f"n{i}" for i in ranks[key])
        lines.append(f"  {{ rank=same; {members}; }}")
    for parent, child in doc["edges"]:
        lines.append(f"  n{parent} -> n{child};")
    lines.append("}")
    return "\n".join(lines) + "\n"
