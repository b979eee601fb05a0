"""JSON reports, DOT graphs, and plain-text Satake drawings."""

from __future__ import annotations

import json

from .diagram import DynkinDiagram, classify_component, components
from .families import Family, HasseDiagram, hasse
from .index import Level, TwoLevelIndex, galois_closure
from .rationality import Report
from .satake import BoundaryPoset

REPORT_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": [
        "name", "valid", "diagnostics", "q_rank", "components", "delta",
        "r_delta", "q_delta", "kappa0", "omega0", "zeta0", "casselman",
        "routes", "equal_rank", "exceptional", "boundary",
    ],
    "properties": {
        "name": {"type": "string"},
        "valid": {"type": "boolean"},
        "diagnostics": {
            "type": "array",
            "items": {
                "type": "object",
                "additionalProperties": False,
                "required": ["severity", "code", "message"],
                "properties": {
                    "severity": {"enum": ["error", "warning", "info"]},
                    "code": {"type": "string"},
                    "message": {"type": "string"},
                },
            },
        },
        "q_rank": {"type": "integer", "minimum": 0},
        "components": {
            "type": "array",
            "items": {
                "type": "object",
                "additionalProperties": False,
                "required": ["nodes", "type", "rrank"],
                "properties": {
                    "nodes": {"type": "array", "items": {"type": "string"}},
                    "type": {"type": "string"},
                    "rrank": {"type": "integer", "minimum": 0},
                },
            },
        },
        "delta": {"type": "array", "items": {"type": "string"}},
        "r_delta": {"type": "array",
                    "items": {"type": "array", "items": {"type": "string"}}},
        "q_delta": {"type": "array",
                    "items": {"type": "array", "items": {"type": "string"}}},
        "kappa0": {"type": "array", "items": {"type": "string"}},
        "omega0": {"type": "array", "items": {"type": "string"}},
        "zeta0": {"type": "array", "items": {"type": "string"}},
        "casselman": {
            "type": "object",
            "additionalProperties": False,
            "required": ["rational", "cond1", "cond2"],
            "properties": {
                "rational": {"type": "boolean"},
                "cond1": {"type": "boolean"},
                "cond2": {"type": "boolean"},
                "witness": {
                    "type": "object",
                    "additionalProperties": False,
                    "required": ["condition", "element", "image"],
                    "properties": {
                        "condition": {"enum": [1, 2]},
                        "element": {"type": "string"},
                        "image": {"type": "array", "items": {"type": "string"}},
                    },
                },
            },
        },
        "routes": {
            "type": "array",
            "items": {
                "type": "object",
                "additionalProperties": False,
                "required": ["route", "applicable", "rational", "cross_check"],
                "properties": {
                    "route": {"type": "string"},
                    "applicable": {"type": "boolean"},
                    "rational": {"type": ["boolean", "null"]},
                    "cross_check": {"type": ["boolean", "null"]},
                },
            },
        },
        "equal_rank": {
            "type": "object",
            "additionalProperties": False,
            "required": ["group", "compactification"],
            "properties": {
                "group": {"type": "boolean"},
                "compactification": {"type": "boolean"},
            },
        },
        "exceptional": {"type": "array",
                        "items": {"type": "array", "items": {"type": "string"}}},
        "boundary": {
            "type": "array",
            "items": {
                "type": "object",
                "additionalProperties": False,
                "required": ["theta", "hermitian", "centralizer", "normalizer"],
                "properties": {
                    "theta": {"type": "array",
                              "items": {"type": "array", "items": {"type": "string"}}},
                    "hermitian": {"type": "array", "items": {"type": "string"}},
                    "centralizer": {"type": "array", "items": {"type": "string"}},
                    "normalizer": {"type": "array", "items": {"type": "string"}},
                },
            },
        },
        "families": {
            "type": "array",
            "items": {
                "type": "object",
                "additionalProperties": False,
                "required": ["kind", "component", "members"],
                "properties": {
                    "kind": {"type": "string"},
                    "component": {"type": "array", "items": {"type": "string"}},
                    "members": {
                        "type": "array",
                        "items": {"type": "array", "items": {"type": "string"}},
                    },
                },
            },
        },
    },
}


def _nodes(diagram, subset) -> list[str]:
    return list(diagram.ordered(subset))


def _fibers(diagram, krs) -> list[list[str]]:
    lists = [sorted(kr.fiber, key=diagram.position) for kr in krs]
    return sorted(lists, key=lambda f: [diagram.position(n) for n in f])


def cycles_text(nm, diagram) -> str:
    cyc = nm.cycles(order_key=diagram.position)
    if not cyc:
        return "()"
    return "".join("(" + " ".join(c) + ")" for c in cyc)


def report_to_dict(report: Report, index: TwoLevelIndex) -> dict:
    diagram = index.diagram
    cass = {
        "rational": report.casselman.rational,
        "cond1": report.casselman.cond1,
        "cond2": report.casselman.cond2,
    }
    if report.casselman.witness is not None:
        w = report.casselman.witness
        cass["witness"] = {
            "condition": w.condition,
            "element": cycles_text(w.element, diagram),
            "image": _nodes(diagram, w.image),
        }
    out = {
        "name": report.name,
        "valid": report.valid,
        "diagnostics": [
            {"severity": d.severity, "code": d.code, "message": d.message}
            for d in report.diagnostics],
        "q_rank": report.q_rank,
        "components": [
            {"nodes": list(s.nodes), "type": str(s.ctype), "rrank": s.rrank}
            for s in report.component_summaries],
        "delta": _nodes(diagram, report.delta),
        "r_delta": _fibers(diagram, report.r_delta),
        "q_delta": _fibers(diagram, report.q_delta),
        "kappa0": _nodes(diagram, report.casselman.kappa0),
        "omega0": _nodes(diagram, report.casselman.omega0),
        "zeta0": _nodes(diagram, report.casselman.zeta0),
        "casselman": cass,
        "routes": [
            {"route": r.route, "applicable": r.applicable,
             "rational": r.rational, "cross_check": r.cross_check}
            for r in report.routes],
        "equal_rank": {
            "group": report.equal_rank_group,
            "compactification": report.equal_rank_compactification,
        },
        "exceptional": [_nodes(diagram, pair) for pair in report.exceptional],
        "boundary": [
            {"theta": _fibers(diagram, bc.theta),
             "hermitian": _nodes(diagram, bc.hermitian_c),
             "centralizer": _nodes(diagram, bc.centralizer_c),
             "normalizer": _nodes(diagram, bc.normalizer_type)}
            for bc in report.boundary.components],
    }
    if report.families is not None:
        out["families"] = [
            {"kind": fam.kind,
             "component": _nodes(diagram, fam.component),
             "members": [_nodes(diagram, m) for m in fam.sorted_members(diagram)]}
            for fam in report.families]
    return out


def emit_report(report: Report, index: TwoLevelIndex) -> str:
    return json.dumps(report_to_dict(report, index), indent=2) + "\n"


def type_label(diagram: DynkinDiagram, subset) -> str:
    """Node label '<Type>:<members>' used in DOT output."""
    subset = frozenset(subset)
    if not subset:
        return "0:"
    sub = diagram.subdiagram(subset)
    types = [str(classify_component(sub, comp)) for comp in components(sub)]
    return "+".join(types) + ":" + ",".join(diagram.ordered(subset))


def emit_dot(obj, diagram: DynkinDiagram, solid=None, name: str = "poset") -> str:
    """DOT text for a Hasse diagram or a boundary poset.

    For family Hasse diagrams, `solid` marks the distinguished submembers
    (e.g. the F part of Ftilde); the rest render dashed.
    """
    lines = [f'digraph "{name}" {{']
    if isinstance(obj, HasseDiagram):
        if obj.nodes:
            lines.append("  rankdir=LR;")
        for node in obj.nodes:
            label = type_label(diagram, node)
            if solid is not None and node not in solid:
                lines.append(f'  "{label}" [style=dashed];')
            else:
                lines.append(f'  "{label}";')
        for lo, hi in obj.covers:
            lines.append(f'  "{type_label(diagram, lo)}" -> "{type_label(diagram, hi)}";')
    elif isinstance(obj, BoundaryPoset):
        if obj.components:
            lines.append("  rankdir=LR;")
        labels = []
        for bc in obj.components:
            label = type_label(diagram, bc.hermitian_c)
            theta = ",".join(
                "{" + ",".join(sorted(kr.fiber, key=diagram.position)) + "}"
                for kr in sorted(bc.theta, key=lambda kr: sorted(
                    diagram.position(n) for n in kr.fiber)))
            full = f"{label}|theta={theta}"
            labels.append(full)
            lines.append(f'  "{full}";')
        for i, j in obj.covers():
            lines.append(f'  "{labels[i]}" -> "{labels[j]}";')
    else:
        raise TypeError(f"cannot emit DOT for {type(obj).__name__}")
    lines.append("}")
    return "\n".join(lines) + "\n"


def hasse_dot(family: Family, diagram: DynkinDiagram, solid=None) -> str:
    return emit_dot(hasse(family, diagram), diagram, solid=solid, name=family.kind)


def _edge_text(edge, right: str) -> str:
    """Edge drawing between two cells, arrow toward the short root."""
    if edge.label == 3:
        return "---"
    if edge.label == 4:
        return "==>" if edge.short == right else "<=="
    return "=6>" if edge.short == right else "<6="


def render_satake(index: TwoLevelIndex, delta) -> str:
    """ASCII drawing: one row per component, rows grouped by Galois orbit,
    '*' on real-anisotropic nodes, brackets on rationally-anisotropic nodes,
    a delta mark on each delta node."""
    delta = frozenset(delta)
    diagram = index.diagram
    closure = galois_closure(index)
    comps = [frozenset(c) for c in components(diagram)]
    orbits: list[list[frozenset]] = []
    used: set[frozenset] = set()
    for comp in comps:
        if comp in used:
            continue
        orbit = sorted({frozenset(g.image(comp)) for g in closure},
                       key=lambda c: min(diagram.position(n) for n in c))
        orbit = [c for c in orbit if c in comps]
        used.update(orbit)
        orbits.append(orbit)

    def cell(node: str) -> str:
        text = node
        if node in index.aniso_r:
            text += "*"
        if node in delta:
            text += "(δ)"
        if node in index.aniso_q:
            text = f"[{text}]"
        return text

    def row(comp: frozenset) -> list[str]:
        ctype, pos = _component_layout(diagram, comp)
        if ctype.family == "D":
            chain, extras = pos[:-2], pos[-2:]
        elif ctype.family in ("E6", "E7", "E8"):
            chain, extras = (pos[0],) + pos[2:], (pos[1],)
        else:
            chain, extras = pos, ()
        parts = []
        for i, node in enumerate(chain):
            if i:
                edge = diagram.edge_between(chain[i - 1], node)
                parts.append(f" {_edge_text(edge, node)} ")
            parts.append(cell(node))
        if extras:
            stem = next(n for n in chain
                        if all(diagram.edge_between(n, x) for x in extras))
            parts.append(f" -< {','.join(cell(x) for x in extras)} @{stem}")
        return parts

    blocks = []
    for orbit in orbits:
        rows = [row(c) for c in orbit]
        width = max(len(r) for r in rows)
        for r in rows:
            r.extend([""] * (width - len(r)))
        cols = [max(len(r[i]) for r in rows) for i in range(width)]
        lines = ["".join(part.ljust(cols[i]) for i, part in enumerate(r)).rstrip()
                 for r in rows]
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + "\n"


def _component_layout(diagram, comp):
    from .diagram import _layout
    return _layout(diagram, frozenset(comp))
