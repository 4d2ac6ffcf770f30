"""Labeled graphs, edge paths and graph maps.

A graph is the combinatorial spine of a handle decomposition: vertices are
0-handles, edges are 1-handles.  Each edge has a positive orientation; the
reversed edge is written with a ``~`` prefix (``"~a"``).  An edge path is a
tuple of :class:`Token` values.

A :class:`GraphMap` sends every edge to an edge path in the target graph.
Composition follows the usual convention: ``compose_maps(f, g)`` is ``f∘g``
(apply ``g`` first).
"""
from collections import deque
from dataclasses import dataclass, field
from typing import NamedTuple

from .errors import GraphError, PathError

__all__ = [
    "Token",
    "Graph",
    "GraphMap",
    "ValidationReport",
    "parse_path",
    "format_path",
    "inverse_path",
    "check_path",
    "validate_graph",
    "free_reduce_path",
    "is_reduced",
    "compose_maps",
    "identity_map",
    "incidence_matrix",
    "carrier_incidence",
    "valence",
]


class Token(NamedTuple):
    """One oriented edge in a path."""

    edge: str
    inverted: bool = False

    def inverse(self):
        return Token(self.edge, not self.inverted)

    def __str__(self):
        return ("~" if self.inverted else "") + self.edge

    @classmethod
    def parse(cls, text):
        text = text.strip()
        if text.startswith("~"):
            return cls(text[1:], True)
        return cls(text, False)


def parse_path(text):
    """Parse ``"a ~b c"`` (or a list of token strings) into a path tuple."""
    if isinstance(text, str):
        items = text.split()
    else:
        items = list(text)
    return tuple(t if isinstance(t, Token) else Token.parse(t) for t in items)


def format_path(path):
    return " ".join(str(t) for t in path)


def inverse_path(path):
    return tuple(t.inverse() for t in reversed(path))


@dataclass
class ValidationReport:
    """Outcome of a report-style validation: no exception, just findings."""

    violations: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    def __bool__(self):
        return self.ok


class Graph:
    """A finite graph with oriented edges.

    Parameters
    ----------
    vertices : iterable of hashable
        Vertex ids.  Order is kept.
    edges : mapping or iterable of ``(id, initial, terminal)``
        Edge endpoints.  The insertion order is the canonical edge order used
        for incidence matrices.
    inverse : mapping, optional
        Pairing of oriented edge names (``"a"`` and ``"~a"``).  Only needed to
        describe raw, possibly broken, data; the default is the standard
        pairing and :func:`validate_graph` checks whatever is given.
    """

    def __init__(self, vertices, edges, inverse=None):
        self.vertices = tuple(vertices)
        if hasattr(edges, "items"):
            items = [(e, ends[0], ends[1]) for e, ends in edges.items()]
        else:
            items = [tuple(x) for x in edges]
        self.edges = tuple(e for e, _, _ in items)
        if len(set(self.edges)) != len(self.edges):
            raise GraphError("duplicate edge id")
        if any(e.startswith("~") or not e or any(c.isspace() for c in e) for e in self.edges):
            raise GraphError("edge ids must be non-empty, without whitespace or '~' prefix")
        self._ends = {e: (u, v) for e, u, v in items}
        if inverse is None:
            inverse = {}
            for e in self.edges:
                inverse[e] = "~" + e
                inverse["~" + e] = e
        self.inverse = dict(inverse)
        self._edge_index = {e: i for i, e in enumerate(self.edges)}

    @classmethod
    def rose(cls, n_or_names, vertex="v"):
        """Single vertex with one loop per edge name (``a, b, c...`` by default)."""
        if isinstance(n_or_names, int):
            names = [chr(ord("a") + i) for i in range(n_or_names)]
        else:
            names = list(n_or_names)
        return cls([vertex], [(e, vertex, vertex) for e in names])

    def __repr__(self):
        return f"Graph(vertices={list(self.vertices)}, edges={list(self.edges)})"

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            set(self.vertices) == set(other.vertices)
            and self.edges == other.edges
            and self._ends == other._ends
        )

    def __hash__(self):
        return hash((frozenset(self.vertices), self.edges))

    @property
    def rank(self):
        """Rank of the fundamental group of a connected graph."""
        return len(self.edges) - len(self.vertices) + 1

    def has_edge(self, e):
        return e in self._ends

    def edge_index(self, e):
        return self._edge_index[e]

    def endpoints(self, e):
        return self._ends[e]

    def initial(self, token):
        u, v = self._ends[token.edge]
        return v if token.inverted else u

    def terminal(self, token):
        u, v = self._ends[token.edge]
        return u if token.inverted else v

    def tokens_at(self, vertex):
        """Oriented edges starting at ``vertex`` (a loop contributes twice)."""
        out = []
        for e in self.edges:
            u, v = self._ends[e]
            if u == vertex:
                out.append(Token(e, False))
            if v == vertex:
                out.append(Token(e, True))
        return out

    def components(self):
        adj = {v: set() for v in self.vertices}
        for e in self.edges:
            u, v = self._ends[e]
            if u in adj and v in adj:
                adj[u].add(v)
                adj[v].add(u)
        seen, comps = set(), []
        for start in self.vertices:
            if start in seen:
                continue
            comp, queue = [], deque([start])
            seen.add(start)
            while queue:
                x = queue.popleft()
                comp.append(x)
                for y in adj[x]:
                    if y not in seen:
                        seen.add(y)
                        queue.append(y)
            comps.append(comp)
        return comps

    def is_connected(self):
        return len(self.components()) == 1

    def with_edge_order(self, order):
        """Same graph, edges listed in ``order``."""
        if sorted(order) != sorted(self.edges):
            raise GraphError("edge order must be a permutation of the edges")
        return Graph(self.vertices, [(e, *self._ends[e]) for e in order])


def validate_graph(g):
    """Check the graph invariants and report every violation found."""
    report = ValidationReport()
    vset = set(g.vertices)
    if len(vset) != len(g.vertices):
        report.violations.append("duplicate vertex id")
    for e in g.edges:
        for end in g.endpoints(e):
            if end not in vset:
                report.violations.append(f"dangling endpoint: edge {e} references unknown vertex {end!r}")
    names = set(g.edges) | {"~" + e for e in g.edges}
    inv = g.inverse
    for name in sorted(names):
        if name not in inv:
            report.violations.append(f"inverse pairing undefined on {name}")
            continue
        partner = inv[name]
        if partner == name:
            report.violations.append(f"involution has fixed point: {name}")
        elif partner not in names:
            report.violations.append(f"inverse of {name} is unknown edge {partner}")
        elif inv.get(partner) != name:
            report.violations.append(f"inverse pairing is not an involution at {name}")
        else:
            # initial(inverse(e)) must equal terminal(e)
            t, p = Token.parse(name), Token.parse(partner)
            if all(x in vset for x in g.endpoints(t.edge) + g.endpoints(p.edge)):
                if g.initial(p) != g.terminal(t):
                    report.violations.append(f"initial({partner}) != terminal({name})")
    if not g.vertices:
        report.violations.append("graph has no vertices")
    elif not report.violations and not g.is_connected():
        report.violations.append("disconnected")
    for v in g.vertices:
        if valence(g, v) == 0 and len(g.vertices) > 1:
            report.notes.append(f"isolated vertex {v!r}")
    return report


def _require_valid(g):
    report = validate_graph(g)
    if not report.ok:
        raise GraphError("invalid graph: " + "; ".join(report.violations))


def check_path(graph, path):
    """Raise :class:`PathError` unless ``path`` is a walk in ``graph``."""
    for t in path:
        if not graph.has_edge(t.edge):
            raise PathError(f"unknown edge {t.edge!r}")
    for a, b in zip(path, path[1:]):
        if graph.terminal(a) != graph.initial(b):
            raise PathError(f"tokens {a} and {b} are not endpoint-compatible")


def free_reduce_path(path, graph=None):
    """Cancel adjacent ``e ~e`` pairs until none remain.

    When ``graph`` is given the input is first checked for endpoint
    compatibility.
    """
    path = parse_path(path) if isinstance(path, str) else tuple(path)
    if graph is not None:
        check_path(graph, path)
    out = []
    for t in path:
        if out and out[-1] == t.inverse():
            out.pop()
        else:
            out.append(t)
    return tuple(out)


def is_reduced(path):
    return all(b != a.inverse() for a, b in zip(path, path[1:]))


class GraphMap:
    """A map between graphs given by vertex images and edge-path images.

    ``edge_map`` needs only the positively oriented edges; the image of
    ``~e`` is the reversed image of ``e``.
    """

    def __init__(self, source, target, vertex_map, edge_map):
        self.source = source
        self.target = target
        self.vertex_map = dict(vertex_map)
        self.edge_map = {e: parse_path(p) for e, p in edge_map.items()}
        self._check()

    def _check(self):
        src, tgt = self.source, self.target
        tv = set(tgt.vertices)
        for v in src.vertices:
            if v not in self.vertex_map:
                raise GraphError(f"vertex {v!r} has no image")
            if self.vertex_map[v] not in tv:
                raise GraphError(f"vertex image {self.vertex_map[v]!r} not in target")
        for e in src.edges:
            if e not in self.edge_map:
                raise GraphError(f"edge {e!r} has no image")
            path = self.edge_map[e]
            if not path:
                raise GraphError(f"degenerate map: edge {e!r} maps to the empty path")
            check_path(tgt, path)
            u, v = src.endpoints(e)
            if tgt.initial(path[0]) != self.vertex_map[u] or tgt.terminal(path[-1]) != self.vertex_map[v]:
                raise GraphError(f"image of edge {e!r} does not respect endpoints")
        extra = set(self.edge_map) - set(src.edges)
        if extra:
            raise GraphError(f"images given for unknown edges {sorted(extra)}")

    @classmethod
    def on_rose(cls, images, vertex="v"):
        """Endomorphism of a rose from ``{"a": "a b", ...}``."""
        g = Graph.rose(list(images), vertex=vertex)
        return cls(g, g, {vertex: vertex}, images)

    def image(self, token):
        p = self.edge_map[token.edge]
        return inverse_path(p) if token.inverted else p

    def apply(self, path):
        out = []
        for t in path:
            out.extend(self.image(t))
        return tuple(out)

    @property
    def is_endomorphism(self):
        return self.source == self.target

    def __repr__(self):
        body = ", ".join(f"{e}->{format_path(p)}" for e, p in self.edge_map.items())
        return f"GraphMap({body})"

    def __eq__(self, other):
        if not isinstance(other, GraphMap):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and self.vertex_map == other.vertex_map
            and self.edge_map == other.edge_map
        )


def identity_map(g):
    return GraphMap(g, g, {v: v for v in g.vertices}, {e: (Token(e),) for e in g.edges})


def compose_maps(f, g, reduce=True):
    """Return ``f∘g``: apply ``g`` then ``f`` tokenwise.

    With ``reduce`` each composite edge image is freely reduced.  An edge
    whose image reduces to nothing makes the composite degenerate, which is
    reported as a :class:`GraphError`.
    """
    if g.target != f.source:
        raise GraphError("cannot compose: target of g is not the source of f")
    vmap = {v: f.vertex_map[g.vertex_map[v]] for v in g.source.vertices}
    emap = {}
    for e, p in g.edge_map.items():
        q = f.apply(p)
        emap[e] = free_reduce_path(q) if reduce else q
    return GraphMap(g.source, f.target, vmap, emap)


def _count_matrix(graph_rows, graph_cols, images):
    from .spectral import NonNegMatrix

    col = {e: j for j, e in enumerate(graph_cols.edges)}
    m = [[0] * len(graph_cols.edges) for _ in graph_rows.edges]
    for i, e in enumerate(graph_rows.edges):
        for t in images[e]:
            m[i][col[t.edge]] += 1
    return NonNegMatrix(m)


def incidence_matrix(f):
    """Edge incidence matrix of an endomorphism.

    Entry ``(i, j)`` counts occurrences of edge ``j`` (either orientation) in
    the image path of edge ``i``.  Rows and columns follow the graph's
    canonical edge order.
    """
    if not f.is_endomorphism:
        raise GraphError("incidence_matrix needs an endomorphism (source == target)")
    _require_valid(f.source)
    for v in f.source.vertices:
        if valence(f.source, v) == 0 and len(f.source.vertices) > 1:
            raise GraphError(f"isolated vertex {v!r}")
    return _count_matrix(f.source, f.source, f.edge_map)


def carrier_incidence(g, carrier_decl):
    """Incidence of ``g`` measured on a carrier graph.

    ``carrier_decl`` restates each image ``g(e_i)`` as a path in the carrier
    graph G (whose fibered neighbourhood the image is asserted to follow).
    Entry ``(i, j)`` counts crossings of the declared path for edge ``i``
    with the carrier edge ``j``.  The carrier must be the graph ``g`` acts
    on, so the result is square.
    """
    if carrier_decl.source != g.source:
        raise GraphError("carrier declaration must have the same source graph as g")
    carrier = carrier_decl.target
    if carrier != g.source:
        raise GraphError("carrier graph must be the graph g acts on")
    for e, p in carrier_decl.edge_map.items():
        try:
            check_path(carrier, p)
        except PathError as exc:
            raise PathError(f"declared image of {e!r} is not a path in the carrier graph: {exc}") from None
    return _count_matrix(g.source, carrier, carrier_decl.edge_map)


def valence(g, v):
    """Number of edge ends at ``v``; a loop counts twice."""
    if v not in g.vertices:
        raise GraphError(f"unknown vertex {v!r}")
    n = 0
    for e in g.edges:
        a, b = g.endpoints(e)
        n += (a == v) + (b == v)
    return n
