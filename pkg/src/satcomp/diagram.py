"""Abstract Dynkin diagrams.

A diagram is a labeled multigraph-free graph on named simple roots: edges
carry a bond label in {3, 4, 6} and, for labels above 3, the name of the
shorter endpoint.  Everything downstream (indices, boundary components,
rationality verdicts) works with plain node-id sets against a fixed
declaration order, so all set-valued results here come back sorted by that
order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache


class NotADynkinDiagram(Exception):
    """The graph does not decompose into valid Dynkin components."""


class UnknownNodeId(Exception):
    """A node id that is not declared in the diagram."""


FAMILIES = ("A", "B", "C", "D", "E6", "E7", "E8", "F4", "G2")


@dataclass(frozen=True)
class Edge:
    u: str
    v: str
    label: int = 3
    short: str | None = None

    def __post_init__(self):
        if self.u == self.v:
            raise NotADynkinDiagram(f"loop edge at {self.u!r}")
        if self.label not in (3, 4, 6):
            raise NotADynkinDiagram(f"edge label {self.label} not in {{3,4,6}}")
        if self.label > 3:
            if self.short not in (self.u, self.v):
                raise NotADynkinDiagram(
                    f"edge {self.u}-{self.v} labeled {self.label} must name a "
                    f"short endpoint")
        elif self.short is not None:
            raise NotADynkinDiagram(
                f"single edge {self.u}-{self.v} cannot carry a short endpoint")

    def ends(self) -> frozenset[str]:
        return frozenset((self.u, self.v))


@dataclass(frozen=True)
class ComponentType:
    """A Dynkin family tag plus rank, e.g. ('B', 3) or ('E6', 6)."""

    family: str
    rank: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise NotADynkinDiagram(f"unknown family {self.family!r}")

    def __str__(self):
        if self.family in ("A", "B", "C", "D"):
            return f"{self.family}{self.rank}"
        return self.family


@dataclass(frozen=True)
class DynkinDiagram:
    """Immutable diagram; node order is the canonical order everywhere."""

    nodes: tuple[str, ...]
    edges: tuple[Edge, ...] = ()

    def __post_init__(self):
        nodes = tuple(self.nodes)
        if len(set(nodes)) != len(nodes):
            raise ValueError("duplicate node id in diagram")
        pos = {n: i for i, n in enumerate(nodes)}
        seen_pairs = set()
        norm = []
        for e in self.edges:
            if e.u not in pos or e.v not in pos:
                raise UnknownNodeId(f"edge endpoint not declared: {e.u}-{e.v}")
            if pos[e.u] > pos[e.v]:
                e = Edge(e.v, e.u, e.label, e.short)
            pair = (e.u, e.v)
            if pair in seen_pairs:
                raise NotADynkinDiagram(f"multiple edges between {e.u} and {e.v}")
            seen_pairs.add(pair)
            norm.append(e)
        norm.sort(key=lambda e: (pos[e.u], pos[e.v]))
        adj: dict[str, list[str]] = {n: [] for n in nodes}
        by_pair = {}
        for e in norm:
            adj[e.u].append(e.v)
            adj[e.v].append(e.u)
            by_pair[frozenset((e.u, e.v))] = e
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "edges", tuple(norm))
        object.__setattr__(self, "_pos", pos)
        object.__setattr__(self, "_adj",
                           {n: tuple(sorted(vs, key=pos.__getitem__))
                            for n, vs in adj.items()})
        object.__setattr__(self, "_by_pair", by_pair)

    @classmethod
    def build(cls, nodes, edge_specs=()) -> DynkinDiagram:
        """Construct from compact edge specs ``(u, v[, label[, short]])``."""
        if isinstance(nodes, str):
            nodes = nodes.split()
        edges = []
        for spec in edge_specs:
            if isinstance(spec, Edge):
                edges.append(spec)
            else:
                edges.append(Edge(*spec))
        return cls(tuple(nodes), tuple(edges))

    @property
    def rank(self) -> int:
        return len(self.nodes)

    def __contains__(self, node) -> bool:
        return node in self._pos

    def position(self, node: str) -> int:
        try:
            return self._pos[node]
        except KeyError:
            raise UnknownNodeId(node) from None

    def neighbors(self, node: str) -> tuple[str, ...]:
        try:
            return self._adj[node]
        except KeyError:
            raise UnknownNodeId(node) from None

    def edge_between(self, u: str, v: str) -> Edge | None:
        return self._by_pair.get(frozenset((u, v)))

    def ordered(self, subset) -> tuple[str, ...]:
        """Sort a node collection into canonical (declaration) order."""
        return tuple(sorted(subset, key=self.position))

    def subdiagram(self, subset) -> DynkinDiagram:
        keep = frozenset(subset)
        for n in keep:
            if n not in self._pos:
                raise UnknownNodeId(n)
        return DynkinDiagram(
            self.ordered(keep),
            tuple(e for e in self.edges if e.u in keep and e.v in keep))


@dataclass(frozen=True)
class NodeMap:
    """A bijection on a diagram's node set, hashable for group closures."""

    pairs: tuple[tuple[str, str], ...]

    def __post_init__(self):
        pairs = tuple(sorted(self.pairs))
        mapping = dict(pairs)
        if len(mapping) != len(pairs):
            raise ValueError("node map has a repeated source")
        if set(mapping.values()) != set(mapping):
            raise ValueError("node map is not a bijection on its domain")
        object.__setattr__(self, "pairs", pairs)
        object.__setattr__(self, "_map", mapping)

    @classmethod
    def from_dict(cls, mapping) -> NodeMap:
        return cls(tuple(mapping.items()))

    @classmethod
    def identity(cls, nodes) -> NodeMap:
        return cls(tuple((n, n) for n in nodes))

    @classmethod
    def from_cycles(cls, nodes, cycles) -> NodeMap:
        """Build from disjoint cycles; nodes absent from every cycle are fixed."""
        mapping = {n: n for n in nodes}
        seen = set()
        for cycle in cycles:
            cycle = tuple(cycle)
            for x in cycle:
                if x not in mapping:
                    raise UnknownNodeId(x)
                if x in seen:
                    raise ValueError(f"node {x!r} appears in two cycles")
                seen.add(x)
            for i, x in enumerate(cycle):
                mapping[x] = cycle[(i + 1) % len(cycle)]
        return cls.from_dict(mapping)

    def __call__(self, node: str) -> str:
        try:
            return self._map[node]
        except KeyError:
            raise UnknownNodeId(node) from None

    def sources(self) -> frozenset[str]:
        return frozenset(self._map)

    def image(self, subset) -> frozenset[str]:
        return frozenset(self(x) for x in subset)

    def compose(self, other: NodeMap) -> NodeMap:
        """Map applying ``other`` first: (self.compose(other))(x) = self(other(x))."""
        return NodeMap(tuple((x, self._map[y]) for x, y in other.pairs))

    def inverse(self) -> NodeMap:
        return NodeMap(tuple((y, x) for x, y in self.pairs))

    def is_identity(self) -> bool:
        return all(x == y for x, y in self.pairs)

    def restrict_equals(self, subset, other: NodeMap) -> bool:
        return all(self._map[x] == other._map[x] for x in subset)

    def cycles(self, order_key=None) -> tuple[tuple[str, ...], ...]:
        """Nontrivial cycles, each rotated and listed canonically."""
        key = order_key or (lambda x: x)
        out = []
        seen = set()
        for start in sorted(self._map, key=key):
            if start in seen or self._map[start] == start:
                continue
            cyc = [start]
            seen.add(start)
            x = self._map[start]
            while x != start:
                cyc.append(x)
                seen.add(x)
                x = self._map[x]
            out.append(tuple(cyc))
        return tuple(out)


def is_diagram_automorphism(diagram: DynkinDiagram, nm: NodeMap) -> bool:
    """True when nm permutes the nodes preserving edges, labels and arrows."""
    if nm.sources() != frozenset(diagram.nodes):
        return False
    for e in diagram.edges:
        f = diagram.edge_between(nm(e.u), nm(e.v))
        if f is None or f.label != e.label:
            return False
        if e.label > 3 and nm(e.short) != f.short:
            return False
    return True


@lru_cache(maxsize=4096)
def components(diagram: DynkinDiagram) -> tuple[tuple[str, ...], ...]:
    """Connected components as node tuples, in canonical order."""
    seen: set[str] = set()
    out = []
    for start in diagram.nodes:
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        while stack:
            u = stack.pop()
            for v in diagram.neighbors(u):
                if v not in comp:
                    comp.add(v)
                    stack.append(v)
        seen |= comp
        out.append(diagram.ordered(comp))
    return tuple(out)


def _path_order(diagram, nodes, adj):
    ends = [n for n in nodes if len(adj[n]) <= 1]
    if len(nodes) == 1:
        return list(nodes)
    if len(ends) != 2:
        raise NotADynkinDiagram("chain expected")
    start = min(ends, key=diagram.position)
    path = [start]
    prev = None
    cur = start
    while len(path) < len(nodes):
        nxt = [w for w in adj[cur] if w != prev]
        if len(nxt) != 1:
            raise NotADynkinDiagram("chain expected")
        prev, cur = cur, nxt[0]
        path.append(cur)
    return path


def _walk_arm(adj, center, first):
    arm = [first]
    prev, cur = center, first
    while True:
        nxt = [w for w in adj[cur] if w != prev]
        if not nxt:
            return arm
        if len(nxt) > 1:
            raise NotADynkinDiagram("two branch nodes in one component")
        prev, cur = cur, nxt[0]
        arm.append(cur)


@lru_cache(maxsize=8192)
def _layout(diagram: DynkinDiagram, comp: frozenset) -> tuple[ComponentType, tuple[str, ...]]:
    """Classify a connected node set and lay it out in canonical positions.

    Positions follow the usual conventions: chains run left to right, B ends
    with its short root, C ends with its long root, D puts the two fork tips
    last, E puts the off-chain node second.
    """
    nodes = diagram.ordered(comp)
    m = len(nodes)
    for n in nodes:
        diagram.position(n)
    adj = {n: [v for v in diagram.neighbors(n) if v in comp] for n in nodes}
    in_edges = [e for e in diagram.edges if e.u in comp and e.v in comp]
    reach = {nodes[0]}
    stack = [nodes[0]]
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if v not in reach:
                reach.add(v)
                stack.append(v)
    if len(reach) != m:
        raise ValueError("component argument is not connected")
    if len(in_edges) != m - 1:
        raise NotADynkinDiagram("component contains a cycle")
    if any(len(adj[n]) > 3 for n in nodes):
        raise NotADynkinDiagram("node of degree > 3")

    if m == 1:
        return ComponentType("A", 1), (nodes[0],)

    label4 = [e for e in in_edges if e.label == 4]
    label6 = [e for e in in_edges if e.label == 6]
    if label6:
        if m == 2 and len(label6) == 1 and not label4:
            e = label6[0]
            long_root = e.v if e.short == e.u else e.u
            return ComponentType("G2", 2), (long_root, e.short)
        raise NotADynkinDiagram("misplaced triple edge")
    if label4:
        if len(label4) > 1:
            raise NotADynkinDiagram("more than one double edge in a component")
        if any(len(adj[n]) == 3 for n in nodes):
            raise NotADynkinDiagram("double edge in a branched component")
        e = label4[0]
        path = _path_order(diagram, nodes, adj)
        if m == 2:
            long_root = e.v if e.short == e.u else e.u
            return ComponentType("B", 2), (long_root, e.short)
        for p in (path, path[::-1]):
            idx = {n: k for k, n in enumerate(p)}
            if {idx[e.u], idx[e.v]} == {m - 2, m - 1}:
                if e.short == p[m - 1]:
                    return ComponentType("B", m), tuple(p)
                return ComponentType("C", m), tuple(p)
        if m == 4:
            for p in (path, path[::-1]):
                idx = {n: k for k, n in enumerate(p)}
                if {idx[e.u], idx[e.v]} == {1, 2} and idx[e.short] == 2:
                    return ComponentType("F4", 4), tuple(p)
        raise NotADynkinDiagram("double edge must sit at a chain end (or F4 middle)")

    branch = [n for n in nodes if len(adj[n]) == 3]
    if not branch:
        return ComponentType("A", m), tuple(_path_order(diagram, nodes, adj))
    if len(branch) > 1:
        raise NotADynkinDiagram("two branch nodes in one component")
    c = branch[0]
    arms = sorted((_walk_arm(adj, c, w) for w in adj[c]),
                  key=lambda a: (len(a), diagram.position(a[-1])))
    lens = tuple(len(a) for a in arms)
    if lens[0] == 1 and lens[1] == 1:
        tips = sorted((arms[0][0], arms[1][0]), key=diagram.position)
        chain = list(reversed(arms[2])) + [c]
        return ComponentType("D", m), tuple(chain) + tuple(tips)
    if lens == (1, 2, 2):
        first, second = sorted(arms[1:], key=lambda a: diagram.position(a[-1]))
        pos = (first[1], arms[0][0], first[0], c, second[0], second[1])
        return ComponentType("E6", 6), pos
    if lens in ((1, 2, 3), (1, 2, 4)):
        tail = arms[2]
        pos = (arms[1][1], arms[0][0], arms[1][0], c) + tuple(tail)
        return ComponentType(f"E{m}", m), pos
    raise NotADynkinDiagram(f"invalid branching shape {lens}")


def classify_component(diagram: DynkinDiagram, component) -> ComponentType:
    """Dynkin type of a connected node set (induced subgraph)."""
    return _layout(diagram, frozenset(component))[0]


def classify_all(diagram: DynkinDiagram) -> tuple[tuple[tuple[str, ...], ComponentType], ...]:
    return tuple((comp, classify_component(diagram, comp))
                 for comp in components(diagram))


@lru_cache(maxsize=4096)
def opposition_involution(diagram: DynkinDiagram) -> NodeMap:
    """The canonical involution: chain reversal on A (rank > 1), tip swap on
    odd D (rank >= 5), the flip on E6, identity on every other component."""
    mapping: dict[str, str] = {}
    for comp in components(diagram):
        ctype, pos = _layout(diagram, frozenset(comp))
        mapping.update({n: n for n in comp})
        if ctype.family == "A" and ctype.rank >= 2:
            for i, n in enumerate(pos):
                mapping[n] = pos[len(pos) - 1 - i]
        elif ctype.family == "D" and ctype.rank % 2 == 1 and ctype.rank >= 5:
            mapping[pos[-2]], mapping[pos[-1]] = pos[-1], pos[-2]
        elif ctype.family == "E6":
            mapping[pos[0]], mapping[pos[5]] = pos[5], pos[0]
            mapping[pos[2]], mapping[pos[4]] = pos[4], pos[2]
    return NodeMap.from_dict(mapping)


def theta_plus(diagram: DynkinDiagram, subset) -> frozenset[str]:
    """The subset together with all its edge-neighbors."""
    out = set()
    for n in subset:
        diagram.position(n)
        out.add(n)
        out.update(diagram.neighbors(n))
    return frozenset(out)


@lru_cache(maxsize=1024)
def cartan_matrix(diagram: DynkinDiagram) -> tuple[tuple[int, ...], ...]:
    """Cartan matrix in node order, C[i][j] = <alpha_j, alpha_i-check>."""
    classify_all(diagram)
    n = diagram.rank
    mat = [[0] * n for _ in range(n)]
    for i in range(n):
        mat[i][i] = 2
    for e in diagram.edges:
        i, j = diagram.position(e.u), diagram.position(e.v)
        if e.label == 3:
            mat[i][j] = mat[j][i] = -1
        else:
            s = diagram.position(e.short)
            l = j if s == i else i
            mat[l][s] = -1
            mat[s][l] = -2 if e.label == 4 else -3
    return tuple(tuple(row) for row in mat)


def solve_in_root_basis(diagram: DynkinDiagram, weight_coords) -> dict[str, Fraction]:
    """Express a weight (fundamental-weight coordinates) in the simple-root
    basis, exactly.  Solves C d = c by rational Gaussian elimination."""
    n = diagram.rank
    cm = cartan_matrix(diagram)
    aug = [[Fraction(cm[i][j]) for j in range(n)]
           + [Fraction(weight_coords.get(diagram.nodes[i], 0))]
           for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return {diagram.nodes[i]: aug[i][n] for i in range(n)}


def standard_diagram(family: str, rank: int, prefix: str = "a") -> DynkinDiagram:
    """A fresh diagram of the requested type with nodes prefix1..prefixN."""
    names = [f"{prefix}{i}" for i in range(1, rank + 1)]
    chain = [(names[i], names[i + 1]) for i in range(rank - 1)]
    if family == "A" and rank >= 1:
        return DynkinDiagram.build(names, chain)
    if family == "B" and rank >= 2:
        chain[-1] = (names[-2], names[-1], 4, names[-1])
        return DynkinDiagram.build(names, chain)
    if family == "C" and rank >= 2:
        chain[-1] = (names[-2], names[-1], 4, names[-2])
        return DynkinDiagram.build(names, chain)
    if family == "D" and rank >= 4:
        edges = [(names[i], names[i + 1]) for i in range(rank - 3)]
        edges += [(names[rank - 3], names[rank - 2]), (names[rank - 3], names[rank - 1])]
        return DynkinDiagram.build(names, edges)
    if family in ("E6", "E7", "E8") and rank == int(family[1]):
        edges = [(names[0], names[2]), (names[1], names[3])]
        edges += [(names[i], names[i + 1]) for i in range(2, rank - 1)]
        return DynkinDiagram.build(names, edges)
    if family == "F4" and rank == 4:
        return DynkinDiagram.build(
            names, [(names[0], names[1]), (names[1], names[2], 4, names[2]),
                    (names[2], names[3])])
    if family == "G2" and rank == 2:
        return DynkinDiagram.build(names, [(names[0], names[1], 6, names[1])])
    raise ValueError(f"unsupported standard diagram {family}{rank}")


def disjoint_union(*diagrams: DynkinDiagram) -> DynkinDiagram:
    nodes = tuple(itertools.chain.from_iterable(d.nodes for d in diagrams))
    edges = tuple(itertools.chain.from_iterable(d.edges for d in diagrams))
    return DynkinDiagram(nodes, edges)


SUPPORTED_TYPES = tuple(
    [("A", n) for n in range(1, 9)]
    + [("B", n) for n in range(2, 9)]
    + [("C", n) for n in range(3, 9)]
    + [("D", n) for n in range(4, 9)]
    + [("E6", 6), ("E7", 7), ("E8", 8), ("F4", 4), ("G2", 2)])
