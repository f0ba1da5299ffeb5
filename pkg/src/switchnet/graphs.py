"""Input graphs on {s, t, 1..n} with bounded-depth reachability queries."""

from collections import deque


def _valid_vertex(v, n):
    return v in ("s", "t") or (isinstance(v, int) and 1 <= v <= n)


class InputGraph:
    """A directed graph on {s, t, 1..n}.  Immutable after construction.

    Loops are rejected; edges into s, out of t, and s->t are storable
    (they simply never cross any cut / cross every cut respectively).
    """

    def __init__(self, n: int, edges):
        self.n = n
        clean = set()
        for u, v in edges:
            if not _valid_vertex(u, n) or not _valid_vertex(v, n):
                raise ValueError(f"edge ({u!r},{v!r}) has a vertex outside s,t,1..{n}")
            if u == v:
                raise ValueError(f"loop edge at {u!r}")
            clean.add((u, v))
        self.edges = frozenset(clean)
        self._succ = {}
        self._pred = {}
        for u, v in self.edges:
            self._succ.setdefault(u, set()).add(v)
            self._pred.setdefault(v, set()).add(u)

    @property
    def vertices(self):
        return ["s", "t"] + list(range(1, self.n + 1))

    def successors(self, v):
        return self._succ.get(v, set())

    def predecessors(self, v):
        return self._pred.get(v, set())

    def has_edge(self, u, v):
        return (u, v) in self.edges

    def middle_vertices(self):
        return range(1, self.n + 1)

    def bounded_reach(self, v, depth: int):
        """Vertices reachable from v by a directed path of length <= depth (v excluded)."""
        if v not in ("s", "t") and not _valid_vertex(v, self.n):
            raise ValueError(f"unknown vertex {v!r}")
        if depth < 0:
            raise ValueError("depth must be >= 0")
        seen = {v: 0}
        queue = deque([v])
        while queue:
            u = queue.popleft()
            if seen[u] == depth:
                continue
            for w in self._succ.get(u, ()):
                if w not in seen:
                    seen[w] = seen[u] + 1
                    queue.append(w)
        del seen[v]
        return set(seen)

    def bounded_coreach(self, v, depth: int):
        """Vertices w with a directed path of length <= depth from w to v."""
        seen = {v: 0}
        queue = deque([v])
        while queue:
            u = queue.popleft()
            if seen[u] == depth:
                continue
            for w in self._pred.get(u, ()):
                if w not in seen:
                    seen[w] = seen[u] + 1
                    queue.append(w)
        del seen[v]
        return set(seen)

    def distance(self, u, v):
        """BFS edge-count distance from u to v, or None when unreachable."""
        if u == v:
            return 0
        seen = {u: 0}
        queue = deque([u])
        while queue:
            x = queue.popleft()
            for w in self._succ.get(x, ()):
                if w not in seen:
                    seen[w] = seen[x] + 1
                    if w == v:
                        return seen[w]
                    queue.append(w)
        return None

    def linkage_degree(self, depth: int) -> int:
        """max over vertices v of |{w != v : v reaches w or w reaches v within depth}|."""
        best = 0
        for v in self.vertices:
            linked = self.bounded_reach(v, depth) | self.bounded_coreach(v, depth)
            best = max(best, len(linked))
        return best

    def shortest_st_path_length(self):
        """BFS distance from s to t, or None when there is no path."""
        return self.distance("s", "t")

    def shortest_st_path(self):
        """One shortest s->t path as a vertex list, or None."""
        seen = {"s": None}
        queue = deque(["s"])
        while queue:
            x = queue.popleft()
            if x == "t":
                path = []
                while x is not None:
                    path.append(x)
                    x = seen[x]
                return path[::-1]
            for w in sorted(self._succ.get(x, ()), key=str):
                if w not in seen:
                    seen[w] = x
                    queue.append(w)
        return None

    def has_st_path(self):
        return self.shortest_st_path_length() is not None

    def is_acyclic(self):
        indeg = {v: 0 for v in self.vertices}
        for u, v in self.edges:
            indeg[v] += 1
        queue = deque(v for v, d in indeg.items() if d == 0)
        seen = 0
        while queue:
            u = queue.popleft()
            seen += 1
            for w in self._succ.get(u, ()):
                indeg[w] -= 1
                if indeg[w] == 0:
                    queue.append(w)
        return seen == len(self.vertices)

    def permuted(self, sigma):
        return InputGraph(self.n, {(sigma(u), sigma(v)) for u, v in self.edges})

    def is_lollipop(self, v) -> bool:
        """Middle vertex with an edge from s or an edge to t."""
        return self.has_edge("s", v) or self.has_edge(v, "t")

    def sorted_edges(self):
        return sorted(self.edges, key=lambda e: (str(e[0]), str(e[1])))

    def __eq__(self, other):
        return isinstance(other, InputGraph) and self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"InputGraph(n={self.n}, edges={self.sorted_edges()})"

    def to_json(self):
        return {"n": self.n, "edges": [[u, v] for u, v in self.sorted_edges()]}

    @classmethod
    def from_json(cls, obj):
        return cls(obj["n"], {(u, v) for u, v in obj["edges"]})


def permute_graph(sigma, graph: InputGraph) -> InputGraph:
    return graph.permuted(sigma)


def all_distinct_permuted_copies(graph: InputGraph):
    """The family {sigma(G)} over all permutations, deduplicated."""
    from .cuts import Permutation

    seen = {}
    for sigma in Permutation.all(graph.n):
        g = graph.permuted(sigma)
        seen[g.edges] = g
    return list(seen.values())


def chain_with_lollipops(n: int, k: int) -> InputGraph:
    """Chain s->1->...->k->t plus s-lollipops on the remaining vertices."""
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n")
    edges = {("s", 1), (k, "t")}
    edges |= {(i, i + 1) for i in range(1, k)}
    edges |= {("s", v) for v in range(k + 1, n + 1)}
    return InputGraph(n, edges)
