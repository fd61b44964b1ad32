"""JSON form of a solved graph."""

import json

from ..simplefn import CONST


def _vertex_label(g, v):
    s = g.states[v]
    return {"location": s.location, "val_region": str(s.val_region), "target_region": str(s.region)}


def solution_to_dict(sol):
    g = sol.graph
    vertices = []
    for v in range(len(g)):
        b = sol.bias[v]
        vertices.append({
            **_vertex_label(g, v),
            "gain": str(sol.gain[v]),
            "bias": {"kind": "const" if b.kind == CONST else "offset", "d": str(b.d)},
        })
    strategies = {}
    for name, strat in (("min", sol.min_strategy), ("max", sol.max_strategy)):
        strategies[name] = [
            {**_vertex_label(g, v), "action": str(g.moves[v][i].action)}
            for v, i in sorted(strat.items())
        ]
    cert = sol.certificate.to_dict() if sol.certificate is not None else None
    return {"scale": sol.scale, "vertices": vertices, "strategies": strategies, "certificate": cert}


def solution_to_json(sol):
    return json.dumps(solution_to_dict(sol), indent=2) + "\n"
