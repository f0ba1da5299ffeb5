"""Switching networks: acceptance, soundness, and reachability functions.

A switching network is an undirected multigraph with distinguished nodes
s' and t' whose edges carry labels of the form v1 -> v2 (possible edges
of the input graph) or, representably but unused by the builders here,
negated labels.  Soundness of a monotone network is decided by sweeping
the 2**n maximal NO instances G(C): acceptance is monotone in the input
edge set and every disconnected input is a subgraph of some G(C).

The per-cut sweep is run as one dataflow pass using bitmasks over the
cut space, which also yields the reachability function of every node.
"""

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .cuts import CutFunction, crossing_mask, full_cut_mask
from .graphs import InputGraph


@dataclass(frozen=True)
class NetEdge:
    u: object
    v: object
    label: tuple
    negated: bool = False

    def endpoints(self):
        return (self.u, self.v)


class SwitchingNetwork:
    """Undirected labeled multigraph with distinguished s' and t' nodes."""

    def __init__(self, n: int, vertices, s_node, t_node, edges):
        self.n = n
        self.vertices = list(vertices)
        vertex_set = set(self.vertices)
        if s_node not in vertex_set or t_node not in vertex_set:
            raise ValueError("s' and t' must be network vertices")
        self.s_node = s_node
        self.t_node = t_node
        self.edges = []
        for e in edges:
            if not isinstance(e, NetEdge):
                e = NetEdge(*e)
            if e.u not in vertex_set or e.v not in vertex_set:
                raise ValueError(f"edge {e} has an endpoint outside the vertex set")
            tail, head = e.label
            for x in (tail, head):
                if x not in ("s", "t") and not (isinstance(x, int) and 1 <= x <= n):
                    raise ValueError(f"label vertex {x!r} outside s,t,1..{n}")
            if tail == head:
                raise ValueError("labels must be ordered pairs of distinct vertices")
            self.edges.append(e)

    @property
    def size(self):
        """|V'| minus the two distinguished nodes."""
        return len(self.vertices) - 2

    def is_monotone(self):
        return all(not e.negated for e in self.edges)

    def _require_monotone(self):
        if not self.is_monotone():
            raise ValueError("operation defined only for monotone networks")

    def accepts(self, graph: InputGraph) -> bool:
        """True iff some s'-t' path uses only labels consistent with the graph."""
        if graph.n != self.n:
            raise ValueError("input graph vertex count does not match network labels")
        adj = {}
        for e in self.edges:
            present = (e.label in graph.edges)
            if e.negated:
                present = not present
            if present:
                adj.setdefault(e.u, []).append(e.v)
                adj.setdefault(e.v, []).append(e.u)
        seen = {self.s_node}
        queue = deque([self.s_node])
        while queue:
            x = queue.popleft()
            if x == self.t_node:
                return True
            for y in adj.get(x, ()):
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return False

    def cut_reachability(self):
        """For each node, the bitmask over cuts C where the node is reachable
        from s' using only labels that do not cross C (labels in E(G(C)))."""
        self._require_monotone()
        full = full_cut_mask(self.n)
        usable = {}
        adj = {v: [] for v in self.vertices}
        for e in self.edges:
            if e.label not in usable:
                usable[e.label] = full ^ crossing_mask(self.n, e.label)
            m = usable[e.label]
            adj[e.u].append((e.v, m))
            adj[e.v].append((e.u, m))
        reach = {v: 0 for v in self.vertices}
        reach[self.s_node] = full
        queue = deque([self.s_node])
        queued = {self.s_node}
        while queue:
            x = queue.popleft()
            queued.discard(x)
            rx = reach[x]
            for y, m in adj[x]:
                new = reach[y] | (rx & m)
                if new != reach[y]:
                    reach[y] = new
                    if y not in queued:
                        queued.add(y)
                        queue.append(y)
        return reach

    def is_sound(self) -> bool:
        """No cut C has an s'-t' path labeled within E(G(C))."""
        return self.cut_reachability()[self.t_node] == 0

    def soundness_counterexample(self):
        """A cut accepted as a NO instance, or None when sound."""
        reach_t = self.cut_reachability()[self.t_node]
        if reach_t == 0:
            return None
        cut = (reach_t & -reach_t).bit_length() - 1
        return cut

    def is_complete_for(self, family) -> bool:
        return all(self.accepts(g) for g in family)

    def completeness_counterexample(self, family):
        for g in family:
            if not self.accepts(g):
                return g
        return None

    def reachability_functions(self):
        """node -> CutFunction with value -1 where the node is reachable, +1 otherwise."""
        reach = self.cut_reachability()
        out = {}
        for v in self.vertices:
            bits = reach[v]
            out[v] = CutFunction.from_values(
                self.n, [Fraction(-1) if (bits >> c) & 1 else Fraction(1) for c in range(1 << self.n)]
            )
        return out

    def accepting_path(self, graph: InputGraph):
        """A list of NetEdges forming an s'-t' walk consistent with the graph, or None."""
        adj = {}
        for e in self.edges:
            present = (e.label in graph.edges)
            if e.negated:
                present = not present
            if present:
                adj.setdefault(e.u, []).append((e.v, e))
                adj.setdefault(e.v, []).append((e.u, e))
        prev = {self.s_node: None}
        queue = deque([self.s_node])
        while queue:
            x = queue.popleft()
            if x == self.t_node:
                path = []
                while prev[x] is not None:
                    y, e = prev[x]
                    path.append(e)
                    x = y
                return path[::-1]
            for y, e in adj.get(x, ()):
                if y not in prev:
                    prev[y] = (x, e)
                    queue.append(y)
        return None

    def reduce_by_lollipop(self, w):
        """Contract edges labeled s->w and drop every edge mentioning w.

        Yields a network over the input vertex set without w (ids above w
        shift down by one); used to check that accepting a family with an
        extra s-lollipop is at least as hard as accepting the family itself.
        """
        self._require_monotone()

        def relabel_vertex(x):
            if x in ("s", "t"):
                return x
            return x - 1 if x > w else x

        # union-find over network nodes for the contracted s->w edges
        parent = {v: v for v in self.vertices}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in self.edges:
            if e.label == ("s", w):
                ru, rv = find(e.u), find(e.v)
                if ru != rv:
                    parent[ru] = rv
        new_edges = []
        for e in self.edges:
            if w in e.label:
                continue
            label = (relabel_vertex(e.label[0]), relabel_vertex(e.label[1]))
            new_edges.append(NetEdge(find(e.u), find(e.v), label))
        nodes = {find(v) for v in self.vertices}
        return SwitchingNetwork(self.n - 1, nodes, find(self.s_node), find(self.t_node), new_edges)

    def to_json(self):
        return {
            "n": self.n,
            "vertices": list(self.vertices),
            "s": self.s_node,
            "t": self.t_node,
            "edges": [
                {"u": e.u, "v": e.v, "label": list(e.label), **({"negated": True} if e.negated else {})}
                for e in self.edges
            ],
        }

    @classmethod
    def from_json(cls, obj):
        edges = [
            NetEdge(d["u"], d["v"], tuple(d["label"]), d.get("negated", False))
            for d in obj["edges"]
        ]
        return cls(obj["n"], obj["vertices"], obj["s"], obj["t"], edges)


def accepts(network, graph):
    return network.accepts(graph)


def is_sound(network):
    return network.is_sound()


def is_complete_for(network, family):
    return network.is_complete_for(family)


def reachability_functions(network):
    return network.reachability_functions()
