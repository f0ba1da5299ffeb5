"""Functions on s-t cuts: characters, dot products, transforms, invariance.

A cut of the input vertex set {s, t, 1..n} is encoded as the bitmask of
middle vertices lying on the s-side: bit v-1 is set iff vertex v is in
L(C).  s is always in L(C) and t in R(C), so the cut space has exactly
2**n elements.  Functions on cuts are held dually as a dense value array
indexed by cut bitmask and as a sparse Fourier coefficient map keyed by
vertex subsets; the character e_V takes the value (-1)**|V & L(C)|.

Arithmetic is exact (ints / fractions.Fraction) unless a caller builds a
function from floats; every identity checked elsewhere in the package
relies on that exactness.
"""

from fractions import Fraction
from functools import lru_cache

DENSE_CAP = 16  # dense value arrays are 2**n long; refuse beyond this


def _check_vertex(v, n):
    if not isinstance(v, int) or not 1 <= v <= n:
        raise ValueError(f"vertex id {v!r} outside 1..{n}")


def _mask_of(vertices, n) -> int:
    m = 0
    for v in vertices:
        _check_vertex(v, n)
        m |= 1 << (v - 1)
    return m


def eval_character(V, cut: int, n: int):
    """e_V(C) = (-1)**|V intersect L(C)| for the cut bitmask C."""
    m = _mask_of(V, n)
    return -1 if bin(m & cut).count("1") % 2 else 1


def iter_cuts(n: int):
    return range(1 << n)


def edge_crosses(edge, cut: int) -> bool:
    """True iff the edge goes from L(C) to R(C); s is always in L, t in R."""
    tail, head = edge
    if tail == head:
        raise ValueError("loop edges are not allowed")
    tail_left = True if tail == "s" else (False if tail == "t" else (cut >> (tail - 1)) & 1)
    head_right = True if head == "t" else (False if head == "s" else not ((cut >> (head - 1)) & 1))
    return bool(tail_left and head_right)


def _pack_bool_vector(bits) -> int:
    import numpy as np

    return int.from_bytes(np.packbits(bits, bitorder="little").tobytes(), "little")


@lru_cache(maxsize=None)
def crossing_mask(n: int, edge) -> int:
    """Bitmask over all 2**n cuts with bit C set iff the edge crosses C."""
    import numpy as np

    tail, head = edge
    cuts = np.arange(1 << n, dtype=np.uint32)
    if tail == "t":
        return 0
    tail_left = np.ones(1 << n, bool) if tail == "s" else ((cuts >> (tail - 1)) & 1).astype(bool)
    if head == "s":
        return 0
    head_right = np.ones(1 << n, bool) if head == "t" else ~((cuts >> (head - 1)) & 1).astype(bool)
    return _pack_bool_vector(tail_left & head_right)


@lru_cache(maxsize=None)
def parity_mask(n: int, vmask: int) -> int:
    """Bitmask over cuts with bit C set iff |V & L(C)| is odd (V as bitmask)."""
    import numpy as np

    cuts = np.arange(1 << n, dtype=np.uint32)
    parity = np.zeros(1 << n, bool)
    for b in range(n):
        if (vmask >> b) & 1:
            parity ^= ((cuts >> b) & 1).astype(bool)
    return _pack_bool_vector(parity)


def full_cut_mask(n: int) -> int:
    return (1 << (1 << n)) - 1


def _fwht(vals):
    """In-place Walsh-Hadamard butterfly; self-inverse up to a 2**n factor."""
    size = len(vals)
    h = 1
    while h < size:
        for i in range(0, size, h * 2):
            for j in range(i, i + h):
                a, b = vals[j], vals[j + h]
                vals[j], vals[j + h] = a + b, a - b
        h *= 2
    return vals


class Permutation:
    """A bijection on the middle vertices {1..n}; s and t are fixed."""

    def __init__(self, mapping: dict):
        self.mapping = dict(mapping)
        n = len(self.mapping)
        if set(self.mapping) != set(range(1, n + 1)) or set(self.mapping.values()) != set(range(1, n + 1)):
            raise ValueError("mapping must be a bijection on {1..n}")
        self.n = n

    @classmethod
    def identity(cls, n):
        return cls({v: v for v in range(1, n + 1)})

    @classmethod
    def random(cls, n, rng):
        vals = list(range(1, n + 1))
        rng.shuffle(vals)
        return cls(dict(zip(range(1, n + 1), vals)))

    @classmethod
    def all(cls, n):
        from itertools import permutations
        for vals in permutations(range(1, n + 1)):
            yield cls(dict(zip(range(1, n + 1), vals)))

    def __call__(self, v):
        return v if v in ("s", "t") else self.mapping[v]

    def apply_set(self, vertices):
        return frozenset(self.mapping[v] for v in vertices)

    def apply_cut(self, cut: int) -> int:
        out = 0
        for v in range(1, self.n + 1):
            if (cut >> (v - 1)) & 1:
                out |= 1 << (self.mapping[v] - 1)
        return out

    def apply_edge(self, edge):
        return (self(edge[0]), self(edge[1]))

    def compose(self, other):
        """self after other: (self.compose(other))(v) = self(other(v))."""
        return Permutation({v: self.mapping[other.mapping[v]] for v in self.mapping})

    def inverse(self):
        return Permutation({w: v for v, w in self.mapping.items()})

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.mapping == other.mapping

    def __repr__(self):
        return f"Permutation({self.mapping})"


class CutFunction:
    """A function 2**n cuts -> scalars, held as values and/or coefficients.

    Either representation may be supplied; the other is derived on demand
    (dense values only for n <= 16).  When both are present they agree:
    f(C) = sum_V coeff(V) * (-1)**|V & L(C)|.
    """

    def __init__(self, n: int, coeffs=None, values=None):
        if coeffs is None and values is None:
            raise ValueError("need at least one representation")
        self.n = n
        self._coeffs = None
        self._values = None
        if coeffs is not None:
            clean = {}
            for V, c in dict(coeffs).items():
                key = frozenset(V)
                for v in key:
                    _check_vertex(v, n)
                if c != 0:
                    clean[key] = c
            self._coeffs = clean
        if values is not None:
            values = list(values)
            if len(values) != 1 << n:
                raise ValueError(f"need {1 << n} values, got {len(values)}")
            self._values = values

    @classmethod
    def from_coeffs(cls, n, coeffs):
        return cls(n, coeffs=coeffs)

    @classmethod
    def from_values(cls, n, values):
        return cls(n, values=values)

    @classmethod
    def character(cls, n, V):
        """The basis function e_V."""
        return cls(n, coeffs={frozenset(V): Fraction(1)})

    @classmethod
    def constant(cls, n, c):
        return cls(n, coeffs={frozenset(): c})

    @property
    def values(self):
        if self._values is None:
            if self.n > DENSE_CAP:
                raise ValueError(f"dense representation refused for n={self.n} > {DENSE_CAP}")
            dense = [0] * (1 << self.n)
            for V, c in self._coeffs.items():
                dense[_mask_of(V, self.n)] = c
            self._values = _fwht(dense)
        return self._values

    @property
    def coeffs(self):
        if self._coeffs is None:
            scale = Fraction(1, 1 << self.n)
            spectrum = _fwht(list(self._values))
            self._coeffs = {
                frozenset(v + 1 for v in range(self.n) if (mask >> v) & 1): c * scale
                for mask, c in enumerate(spectrum)
                if c != 0
            }
        return self._coeffs

    def value_at(self, cut: int):
        if self._values is not None:
            return self._values[cut]
        total = 0
        for V, c in self._coeffs.items():
            total += c if bin(_mask_of(V, self.n) & cut).count("1") % 2 == 0 else -c
        return total

    def coeff(self, V):
        return self.coeffs.get(frozenset(V), 0)

    @property
    def support(self):
        return set(self.coeffs)

    def degree(self):
        return max((len(V) for V in self.coeffs), default=0)

    def dot(self, other):
        """2**-n * sum_C f(C) g(C); via Parseval when coefficients exist."""
        if not isinstance(other, CutFunction) or other.n != self.n:
            raise ValueError("dot requires two cut functions on the same n")
        if self._coeffs is not None and other._coeffs is not None:
            small, big = (self._coeffs, other._coeffs)
            if len(big) < len(small):
                small, big = big, small
            return sum((c * big[V] for V, c in small.items() if V in big), start=Fraction(0))
        sv, ov = self.values, other.values
        return sum((a * b for a, b in zip(sv, ov)), start=Fraction(0)) * Fraction(1, 1 << self.n)

    def norm_squared(self):
        return self.dot(self)

    def permuted(self, sigma: Permutation):
        """sigma(f), defined by sigma(f)(C) = f(sigma^{-1}(C))."""
        if self._coeffs is not None:
            return CutFunction(self.n, coeffs={sigma.apply_set(V): c for V, c in self._coeffs.items()})
        inv = sigma.inverse()
        return CutFunction(self.n, values=[self._values[inv.apply_cut(c)] for c in iter_cuts(self.n)])

    def __add__(self, other):
        out = dict(self.coeffs)
        for V, c in other.coeffs.items():
            out[V] = out.get(V, 0) + c
        return CutFunction(self.n, coeffs=out)

    def __sub__(self, other):
        out = dict(self.coeffs)
        for V, c in other.coeffs.items():
            out[V] = out.get(V, 0) - c
        return CutFunction(self.n, coeffs=out)

    def __neg__(self):
        return CutFunction(self.n, coeffs={V: -c for V, c in self.coeffs.items()})

    def scaled(self, a):
        return CutFunction(self.n, coeffs={V: a * c for V, c in self.coeffs.items()})

    def __eq__(self, other):
        return isinstance(other, CutFunction) and self.n == other.n and self.coeffs == other.coeffs

    def __repr__(self):
        terms = sorted(self.coeffs.items(), key=lambda kv: (len(kv[0]), sorted(kv[0])))
        return f"CutFunction(n={self.n}, {dict((tuple(sorted(V)), c) for V, c in terms)})"

    def to_json(self):
        return {
            "n": self.n,
            "coeffs": [
                {"V": sorted(V), "c": _scalar_to_json(c)}
                for V, c in sorted(self.coeffs.items(), key=lambda kv: (len(kv[0]), sorted(kv[0])))
            ],
        }

    @classmethod
    def from_json(cls, obj):
        coeffs = {frozenset(item["V"]): _scalar_from_json(item["c"]) for item in obj["coeffs"]}
        return cls(obj["n"], coeffs=coeffs)


def _scalar_to_json(c):
    if isinstance(c, Fraction):
        return f"{c.numerator}/{c.denominator}"
    if isinstance(c, int):
        return f"{c}/1"
    return c  # floats serialize as plain numbers


def _scalar_from_json(c):
    if isinstance(c, str):
        num, den = c.split("/")
        return Fraction(int(num), int(den))
    return c


def transform(f: CutFunction) -> CutFunction:
    """Fill in whichever representation of f is missing; returns f."""
    f.values  # noqa: B018 - force both representations
    f.coeffs
    return f


def dot(f, g):
    return f.dot(g)


def permute(sigma, f):
    return f.permuted(sigma)


def maximal_no_instance(cut: int, n: int):
    """The input graph G(C) holding every non-loop ordered pair not crossing C."""
    from .graphs import InputGraph

    vertices = ["s", "t"] + list(range(1, n + 1))
    edges = set()
    for u in vertices:
        for v in vertices:
            if u == v:
                continue
            if not edge_crosses((u, v), cut):
                edges.add((u, v))
    return InputGraph(n, edges)


def _nondegenerate(edge, n):
    tail, head = edge
    if tail == head or tail == "t" or head == "s" or (tail == "s" and head == "t"):
        return False
    for v in (tail, head):
        if v not in ("s", "t") and not (isinstance(v, int) and 1 <= v <= n):
            return False
    return True


def invariant_by_values(g: CutFunction, edge) -> bool:
    """g(C) = 0 on every cut crossed by the edge (all-cuts sweep)."""
    vals = g.values
    for c in iter_cuts(g.n):
        if edge_crosses(edge, c) and vals[c] != 0:
            return False
    return True


def invariant_by_coeffs(g: CutFunction, edge) -> bool:
    """Coefficient-domain invariance test, case-split on the edge shape.

    s->w:   coeff(V + w) = -coeff(V)  whenever w not in V
    v->t:   coeff(V + v) =  coeff(V)  whenever v not in V
    v->w:   coeff(V+v+w) = -coeff(V+v) + coeff(V+w) + coeff(V)  for v,w not in V
    """
    tail, head = edge
    co = g.coeffs

    def c(V):
        return co.get(V, 0)

    if tail == "s":
        w = head
        bases = {V - {w} for V in co} | set(co)
        return all(c(V | {w}) == -c(V) for V in bases if w not in V)
    if head == "t":
        v = tail
        bases = {V - {v} for V in co} | set(co)
        return all(c(V | {v}) == c(V) for V in bases if v not in V)
    v, w = tail, head
    bases = {V - {v, w} for V in co}
    return all(
        c(V | {v, w}) == -c(V | {v}) + c(V | {w}) + c(V)
        for V in bases
        if v not in V and w not in V
    )


def is_edge_invariant(g: CutFunction, edge) -> bool:
    """Invariance of g under the given non-degenerate edge.

    Runs both the value-domain and coefficient-domain tests and insists
    they agree; a disagreement would be an internal bug.
    """
    if not _nondegenerate(edge, g.n):
        raise ValueError(f"degenerate edge {edge!r}")
    by_coeff = invariant_by_coeffs(g, edge)
    if g.n <= DENSE_CAP:
        by_value = invariant_by_values(g, edge)
        if by_value != by_coeff:
            raise AssertionError(f"invariance tests disagree for edge {edge!r}")
    return by_coeff
