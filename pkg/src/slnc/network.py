"""Single-source multicast DAG model: cuts, primary minimum cuts, wiretap sets.

A network is an acyclic multigraph with one source, one or more sinks, and
unit-capacity edges carrying symbolic ids.  The declaration order of edge
lines in the input file is the canonical tie-breaking order everywhere:
ancestral edge order, edge-set sorting, and enumeration order all derive
from it.
"""

from collections import deque
from dataclasses import dataclass

from slnc.errors import InputError
from slnc.gf import Field


@dataclass(frozen=True)
class Edge:
    id: str
    tail: str
    head: str
    index: int  # declaration position, the canonical sort key
    line: int   # source line in the file, for error reporting


@dataclass(frozen=True)
class CutProfile:
    capacities: dict  # sink -> C_t
    c_min: int


class Network:
    def __init__(self, field: Field, source: str, sinks, edges, declared_nodes=()):
        self.field = field
        self.source = source
        self.sinks = list(sinks)
        self.edges = list(edges)
        self.edge_by_id = {e.id: e for e in self.edges}
        nodes = set(declared_nodes) | {source} | set(self.sinks)
        for e in self.edges:
            nodes.add(e.tail)
            nodes.add(e.head)
        self.nodes = nodes
        self.out_edges = {v: [] for v in nodes}
        self.in_edges = {v: [] for v in nodes}
        for e in self.edges:
            self.out_edges[e.tail].append(e)
            self.in_edges[e.head].append(e)
        self._validate_structure()
        self.topo_nodes = self._toposort()
        self._node_rank = {v: i for i, v in enumerate(self.topo_nodes)}
        # ancestral edge order: topological position of the tail, then declaration order
        self.ancestral_edges = sorted(self.edges, key=lambda e: (self._node_rank[e.tail], e.index))
        self._pmc_cache = {}
        self._profile = None

    def _validate_structure(self):
        if not self.sinks:
            raise InputError("network declares no sink")
        if self.source in self.sinks:
            raise InputError(f"source {self.source} is also a sink")
        if len(set(self.sinks)) != len(self.sinks):
            raise InputError("duplicate sink declaration")
        for e in self.in_edges[self.source]:
            raise InputError(f"line {e.line}: source {self.source} has incoming edge {e.id}")
        for t in self.sinks:
            for e in self.out_edges[t]:
                raise InputError(f"line {e.line}: sink {t} has outgoing edge {e.id}")

    def _toposort(self):
        indeg = {v: len(self.in_edges[v]) for v in self.nodes}
        ready = deque(sorted(v for v in self.nodes if indeg[v] == 0))
        order = []
        while ready:
            v = ready.popleft()
            order.append(v)
            seen = set()
            for e in self.out_edges[v]:
                indeg[e.head] -= 1
                if indeg[e.head] == 0 and e.head not in seen:
                    seen.add(e.head)
                    ready.append(e.head)
        if len(order) != len(self.nodes):
            remaining = {v for v in self.nodes if v not in set(order)}
            culprit = min(
                (e for e in self.edges if e.tail in remaining and e.head in remaining),
                key=lambda e: e.index,
            )
            raise InputError(f"line {culprit.line}: edge {culprit.id} lies on a cycle")
        return order

    def edge_set_key(self, edge_ids):
        """Canonical sorted tuple of edge ids (declaration order)."""
        return tuple(sorted(edge_ids, key=lambda i: self.edge_by_id[i].index))

    def validate(self) -> CutProfile:
        """Cut capacities per sink; structure itself is checked at construction."""
        if self._profile is None:
            caps = {t: self._max_flow_to_node(t) for t in self.sinks}
            self._profile = CutProfile(caps, min(caps.values()))
        return self._profile

    @property
    def c_min(self) -> int:
        return self.validate().c_min

    # --- unit-capacity max-flow machinery ---------------------------------

    def _flow_arcs(self, subdivide=()):
        """Arc list for max-flow: [u, v, cap, edge_id]; subdivided members of A
        get a midpoint node so that cutting the tail half means cutting the
        edge itself, and an uncapacitated arc feeds the super sink."""
        INF = len(self.edges) + 1
        subdivide = set(subdivide)
        arcs = []
        for e in self.edges:
            if e.id in subdivide:
                mid = ("mid", e.id)
                arcs.append([e.tail, mid, 1, e.id])
                arcs.append([mid, e.head, 1, e.id])
                arcs.append([mid, ("sink", None), INF, None])
            else:
                arcs.append([e.tail, e.head, 1, e.id])
        return arcs

    @staticmethod
    def _max_flow(arcs, s, t):
        """Edmonds-Karp on an explicit arc list; returns (value, flows)."""
        adj = {}
        flows = [0] * len(arcs)
        for i, (u, v, _cap, _eid) in enumerate(arcs):
            adj.setdefault(u, []).append((i, v, +1))
            adj.setdefault(v, []).append((i, u, -1))
        value = 0
        while True:
            prev = {s: None}
            queue = deque([s])
            while queue and t not in prev:
                u = queue.popleft()
                for i, v, sign in adj.get(u, ()):
                    residual = arcs[i][2] - flows[i] if sign > 0 else flows[i]
                    if residual > 0 and v not in prev:
                        prev[v] = (i, sign)
                        queue.append(v)
            if t not in prev:
                return value, flows
            v = t
            while v != s:
                i, sign = prev[v]
                flows[i] += sign
                v = arcs[i][0] if sign > 0 else arcs[i][1]
            value += 1

    @staticmethod
    def _residual_reachable(arcs, flows, s):
        seen = {s}
        adj = {}
        for i, (u, v, _cap, _eid) in enumerate(arcs):
            adj.setdefault(u, []).append((i, v, +1))
            adj.setdefault(v, []).append((i, u, -1))
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for i, v, sign in adj.get(u, ()):
                residual = arcs[i][2] - flows[i] if sign > 0 else flows[i]
                if residual > 0 and v not in seen:
                    seen.add(v)
                    queue.append(v)
        return seen

    def _max_flow_to_node(self, t) -> int:
        value, _ = self._max_flow(self._flow_arcs(), self.source, t)
        return value

    def mincut_to_edges(self, edge_ids) -> int:
        """Capacity of a minimum cut between the source and the edge set."""
        cap, _ = self._cut_to_edges(edge_ids)
        return cap

    def primary_min_cut(self, edge_ids):
        """The unique minimum cut between s and the edge set closest to the source.

        Source-side cut extraction: after max-flow, the edges leaving the
        residual-reachable node set form the cut nearest s, which is exactly
        the cut separating s from every other minimum cut.
        """
        key = self.edge_set_key(edge_ids)
        if key not in self._pmc_cache:
            self._pmc_cache[key] = self._cut_to_edges(key)
        return self._pmc_cache[key][1]

    def _cut_to_edges(self, edge_ids):
        edge_ids = list(edge_ids)
        if not edge_ids:
            raise ValueError("edge set is empty")
        for i in edge_ids:
            if i not in self.edge_by_id:
                raise InputError(f"unknown edge id {i}")
        arcs = self._flow_arcs(subdivide=edge_ids)
        super_sink = ("sink", None)
        value, flows = self._max_flow(arcs, self.source, super_sink)
        reach = self._residual_reachable(arcs, flows, self.source)
        cut = []
        for i, (u, v, _cap, eid) in enumerate(arcs):
            if eid is not None and u in reach and v not in reach:
                cut.append(eid)
        cut = self.edge_set_key(cut)
        assert len(cut) == value, "cut extraction disagrees with flow value"
        return value, cut

    def is_primary(self, edge_ids) -> bool:
        key = self.edge_set_key(edge_ids)
        return self.primary_min_cut(key) == key

    def is_regular(self, edge_ids) -> bool:
        edge_ids = list(edge_ids)
        return self.mincut_to_edges(edge_ids) == len(edge_ids)

    def enumerate_primary_sets(self, r: int):
        """All primary edge subsets of size r, sorted by declaration order."""
        from itertools import combinations

        if r < 0 or r > self.c_min:
            raise InputError(f"r={r} outside 0..C_min={self.c_min}")
        if r == 0:
            return []
        ids = [e.id for e in self.edges]
        out = []
        for combo in combinations(ids, r):
            if self.is_primary(combo):
                out.append(self.edge_set_key(combo))
        out.sort(key=lambda key: tuple(self.edge_by_id[i].index for i in key))
        return out

    def all_edge_subsets_upto(self, r: int):
        """Every nonempty edge subset of size at most r, in declaration order."""
        from itertools import combinations

        ids = [e.id for e in self.edges]
        out = []
        for k in range(1, r + 1):
            out.extend(tuple(c) for c in combinations(ids, k))
        return out


def parse_network(text: str) -> Network:
    """Parse the line-oriented network format.

    field <q>              -- first declaration, q prime
    node <id>              -- optional, nodes may be implicit from edges
    source <id>            -- exactly one
    sink <id>              -- one or more
    edge <id> <tail> <head> -- declaration order fixes all tie-breaking
    '#' starts a comment.
    """
    field = None
    source = None
    sinks = []
    declared_nodes = []
    edges = []
    seen_edge_ids = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kind = parts[0]
        if field is None and kind != "field":
            raise InputError(f"line {lineno}: expected 'field <q>' before {kind!r}")
        if kind == "field":
            if field is not None:
                raise InputError(f"line {lineno}: duplicate field declaration")
            if len(parts) != 2:
                raise InputError(f"line {lineno}: field takes one argument")
            try:
                field = Field(int(parts[1]))
            except ValueError as exc:
                raise InputError(f"line {lineno}: {exc}") from None
        elif kind == "node":
            if len(parts) != 2:
                raise InputError(f"line {lineno}: node takes one argument")
            declared_nodes.append(parts[1])
        elif kind == "source":
            if len(parts) != 2:
                raise InputError(f"line {lineno}: source takes one argument")
            if source is not None:
                raise InputError(f"line {lineno}: second source declaration")
            source = parts[1]
        elif kind == "sink":
            if len(parts) != 2:
                raise InputError(f"line {lineno}: sink takes one argument")
            sinks.append(parts[1])
        elif kind == "edge":
            if len(parts) != 4:
                raise InputError(f"line {lineno}: edge takes id, tail, head")
            eid, tail, head = parts[1:]
            if eid in seen_edge_ids:
                raise InputError(f"line {lineno}: duplicate edge id {eid}")
            seen_edge_ids.add(eid)
            edges.append(Edge(eid, tail, head, index=len(edges), line=lineno))
        else:
            raise InputError(f"line {lineno}: unknown declaration {kind!r}")
    if field is None:
        raise InputError("missing field declaration")
    if source is None:
        raise InputError("missing source declaration")
    return Network(field, source, sinks, edges, declared_nodes)


def load_network(path) -> Network:
    with open(path, encoding="utf-8") as fh:
        return parse_network(fh.read())
