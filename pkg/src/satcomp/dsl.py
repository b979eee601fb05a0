"""Line-oriented text format for index documents (.sidx files).

Grammar (one directive per line, '#' starts a comment, tokens split on
whitespace):

    index "<name>"
    node <id> ...                      # repeatable; declaration order is canonical
    edge <u> <v> [4|6 short=<u|v>]     # label defaults to 3
    aniso r: <ids ...>
    aniso q: <ids ...>
    cstar: <cycles>                    # cycle notation, e.g. (a1 b1)(a2 b2)
    galois: <cycles>                   # repeatable, one generator per line
    delta: <ids ...>
    delta_mu: <ids ...>                # optional
    expect: rational=<true|false> [route=<name>]
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .diagram import DynkinDiagram, Edge, NodeMap, NotADynkinDiagram
from .index import TwoLevelIndex


class ParseError(Exception):
    def __init__(self, message, line=0, column=1):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


class UnknownNode(ParseError):
    pass


class DuplicateNode(ParseError):
    pass


class BadCycleNotation(ParseError):
    pass


@dataclass(frozen=True)
class Expectation:
    rational: bool
    route: str | None = None


@dataclass(frozen=True)
class IndexDocument:
    name: str
    nodes: tuple[str, ...]
    edges: tuple[Edge, ...]
    aniso_r: frozenset[str]
    aniso_q: frozenset[str]
    cstar: NodeMap
    galois_gens: tuple[NodeMap, ...]
    delta: frozenset[str]
    delta_mu: frozenset[str] | None = None
    expected: Expectation | None = None

    def diagram(self) -> DynkinDiagram:
        return DynkinDiagram(self.nodes, self.edges)

    def to_index(self) -> TwoLevelIndex:
        return TwoLevelIndex(self.diagram(), self.aniso_r, self.aniso_q,
                             self.cstar, self.galois_gens)


_CYCLE_RE = re.compile(r"\(([^()]*)\)")
_INDEX_RE = re.compile(r'^index\s+"([^"]*)"\s*$')


def _parse_cycles(rest: str, nodes, lineno, column) -> NodeMap:
    stripped = _CYCLE_RE.sub("", rest).strip()
    if stripped:
        raise BadCycleNotation(
            f"stray text {stripped!r} outside cycle parentheses", lineno, column)
    cycles = []
    seen: set[str] = set()
    for body in _CYCLE_RE.findall(rest):
        members = body.split()
        for x in members:
            if x not in nodes:
                raise UnknownNode(f"unknown node {x!r} in cycle", lineno, column)
            if x in seen:
                raise BadCycleNotation(
                    f"node {x!r} appears in two cycles", lineno, column)
            seen.add(x)
        if len(members) > 1:
            cycles.append(tuple(members))
    return NodeMap.from_cycles(nodes, cycles)


def _ids(tokens, nodes, lineno, raw) -> list[str]:
    out = []
    for tok in tokens:
        if tok not in nodes:
            raise UnknownNode(f"unknown node {tok!r}", lineno, raw.find(tok) + 1)
        out.append(tok)
    return out


def parse(text: str) -> IndexDocument:
    name = None
    nodes: list[str] = []
    node_set: set[str] = set()
    edges: list[Edge] = []
    aniso = {"r": None, "q": None}
    cstar_src = None
    gens: list[tuple[str, int, int]] = []
    delta = None
    delta_mu = None
    expected = None

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        col = len(line) - len(line.lstrip()) + 1
        stripped = line.strip()

        m = _INDEX_RE.match(stripped)
        if m:
            if name is not None:
                raise ParseError("duplicate index declaration", lineno, col)
            name = m.group(1)
            continue

        tokens = stripped.split()
        head = tokens[0]

        if head == "index":
            raise ParseError('expected: index "<name>"', lineno, col)

        if head == "node":
            for tok in tokens[1:]:
                if tok in node_set:
                    raise DuplicateNode(f"duplicate node {tok!r}", lineno,
                                        raw.find(tok) + 1)
                node_set.add(tok)
                nodes.append(tok)
            if len(tokens) == 1:
                raise ParseError("node directive needs at least one id", lineno, col)
            continue

        if head == "edge":
            body = tokens[1:]
            if len(body) < 2:
                raise ParseError("edge needs two endpoints", lineno, col)
            u, v = _ids(body[:2], node_set, lineno, raw)
            label = 3
            short = None
            rest = body[2:]
            if rest and rest[0] in ("4", "6"):
                label = int(rest[0])
                rest = rest[1:]
            if rest and rest[0].startswith("short="):
                short = rest[0][len("short="):]
                rest = rest[1:]
            if rest:
                raise ParseError(f"unexpected edge tokens {rest}", lineno, col)
            if label > 3 and short is None:
                raise ParseError(
                    f"edge labeled {label} requires short=<endpoint>", lineno, col)
            if label == 3 and short is not None:
                raise ParseError("short= is only valid with labels 4 and 6",
                                 lineno, col)
            if short is not None and short not in (u, v):
                raise ParseError(f"short={short} is not an endpoint", lineno, col)
            try:
                edges.append(Edge(u, v, label, short))
            except NotADynkinDiagram as exc:
                raise ParseError(str(exc), lineno, col) from None
            continue

        if head == "aniso":
            if len(tokens) < 2 or tokens[1] not in ("r:", "q:"):
                raise ParseError("expected: aniso r: ... | aniso q: ...", lineno, col)
            key = tokens[1][0]
            if aniso[key] is not None:
                raise ParseError(f"duplicate aniso {key}: line", lineno, col)
            aniso[key] = frozenset(_ids(tokens[2:], node_set, lineno, raw))
            continue

        if head.rstrip(":") in ("cstar", "galois", "delta", "delta_mu", "expect") \
                and not head.endswith(":"):
            raise ParseError(f"directive {head!r} needs a trailing colon", lineno, col)

        if head == "cstar:":
            if cstar_src is not None:
                raise ParseError("duplicate cstar line", lineno, col)
            cstar_src = (stripped[len("cstar:"):], lineno, col)
            continue

        if head == "galois:":
            gens.append((stripped[len("galois:"):], lineno, col))
            continue

        if head == "delta:":
            if delta is not None:
                raise ParseError("duplicate delta line", lineno, col)
            delta = frozenset(_ids(tokens[1:], node_set, lineno, raw))
            continue

        if head == "delta_mu:":
            if delta_mu is not None:
                raise ParseError("duplicate delta_mu line", lineno, col)
            delta_mu = frozenset(_ids(tokens[1:], node_set, lineno, raw))
            continue

        if head == "expect:":
            if expected is not None:
                raise ParseError("duplicate expect line", lineno, col)
            rational = None
            route = None
            for tok in tokens[1:]:
                if tok.startswith("rational="):
                    val = tok[len("rational="):]
                    if val not in ("true", "false"):
                        raise ParseError("rational= must be true or false",
                                         lineno, col)
                    rational = val == "true"
                elif tok.startswith("route="):
                    route = tok[len("route="):]
                else:
                    raise ParseError(f"unexpected expect token {tok!r}", lineno, col)
            if rational is None:
                raise ParseError("expect: requires rational=<true|false>",
                                 lineno, col)
            expected = Expectation(rational, route)
            continue

        raise ParseError(f"unknown directive {head!r}", lineno, col)

    if name is None:
        raise ParseError('missing index "<name>" declaration', 0, 1)

    node_tuple = tuple(nodes)
    cstar = NodeMap.identity(node_tuple)
    if cstar_src is not None:
        cstar = _parse_cycles(cstar_src[0], node_set, cstar_src[1], cstar_src[2])
    galois_gens = tuple(
        _parse_cycles(src, node_set, ln, c) for src, ln, c in gens)

    try:
        canonical_edges = DynkinDiagram(node_tuple, tuple(edges)).edges
    except NotADynkinDiagram as exc:
        raise ParseError(str(exc), 0, 1) from None

    return IndexDocument(
        name=name,
        nodes=node_tuple,
        edges=canonical_edges,
        aniso_r=aniso["r"] or frozenset(),
        aniso_q=aniso["q"] or frozenset(),
        cstar=cstar,
        galois_gens=galois_gens,
        delta=delta or frozenset(),
        delta_mu=delta_mu,
        expected=expected)


def _format_cycles(nm: NodeMap, diagram: DynkinDiagram) -> str:
    cycles = nm.cycles(order_key=diagram.position)
    return "".join("(" + " ".join(c) + ")" for c in cycles)


def serialize(doc: IndexDocument) -> str:
    """Canonical text form; parse(serialize(doc)) == doc."""
    diagram = doc.diagram()
    lines = [f'index "{doc.name}"']
    if doc.nodes:
        lines.append("node " + " ".join(doc.nodes))
    for e in diagram.edges:
        if e.label == 3:
            lines.append(f"edge {e.u} {e.v}")
        else:
            lines.append(f"edge {e.u} {e.v} {e.label} short={e.short}")
    lines.append(("aniso r: " + " ".join(diagram.ordered(doc.aniso_r))).rstrip())
    lines.append(("aniso q: " + " ".join(diagram.ordered(doc.aniso_q))).rstrip())
    if not doc.cstar.is_identity():
        lines.append("cstar: " + _format_cycles(doc.cstar, diagram))
    for g in doc.galois_gens:
        lines.append(("galois: " + _format_cycles(g, diagram)).rstrip())
    lines.append(("delta: " + " ".join(diagram.ordered(doc.delta))).rstrip())
    if doc.delta_mu is not None:
        lines.append(("delta_mu: " + " ".join(diagram.ordered(doc.delta_mu))).rstrip())
    if doc.expected is not None:
        line = f"expect: rational={'true' if doc.expected.rational else 'false'}"
        if doc.expected.route:
            line += f" route={doc.expected.route}"
        lines.append(line)
    return "\n".join(lines) + "\n"
