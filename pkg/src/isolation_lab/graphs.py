"""Bitset-backed simple graphs and the small-graph primitives built on them.

Vertices are integers 0..n-1 and every vertex set is a Python int used as a
bitmask, so set algebra is single machine-word arithmetic for the sizes this
package cares about (n <= 64).  A graph is immutable: operations that "delete"
vertices return a fresh graph together with a relabelling map, which keeps
recursive decompositions auditable.

Conventions used throughout the package:

* N[X] is the closed neighbourhood of X: X together with every neighbour of a
  vertex of X.
* G - X is the subgraph induced on V(G) \\ X; deleting a closed neighbourhood
  is the basic move of isolation arguments (pick D, look at G - N[D]).
* A leaf is a vertex of degree exactly 1.

The isomorphism test here is deliberately small-scale (n <= 9, backtracking
with degree pruning): it exists to recognise a fixed list of exceptional
graphs on at most 7 vertices, not to compete with real canonical-form tools.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Optional

MAX_VERTICES = 64

# Cap for the exact isomorphism test; everything it is used for has <= 7
# vertices, 9 leaves headroom for enumeration cross-checks.
ISO_MAX_VERTICES = 9


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bit_count(mask: int) -> int:
    return mask.bit_count()


def mask_of(vertices: Iterable[int]) -> int:
    """Build a bitmask from an iterable of vertex indices."""
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


class Graph:
    """An immutable simple graph on vertices ``0..n-1``.

    ``adj[v]`` is the bitmask of neighbours of ``v``.  Invariants: adjacency
    is symmetric, irreflexive, and no bit at index >= n is ever set.
    """

    __slots__ = ("n", "adj")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if not 0 <= n <= MAX_VERTICES:
            raise ValueError(f"vertex count {n} outside 0..{MAX_VERTICES}")
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) outside vertex range 0..{n - 1}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self.n = n
        self.adj = tuple(adj)

    @staticmethod
    def from_adj(n: int, adj: tuple[int, ...]) -> "Graph":
        """Trusted fast path: wrap a prevalidated adjacency tuple."""
        g = Graph.__new__(Graph)
        g.n = n
        g.adj = adj
        return g

    # --- basic queries ---------------------------------------------------

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            rest = self.adj[u] >> (u + 1)
            for d in bits(rest):
                yield (u, u + 1 + d)

    def edge_count(self) -> int:
        return sum(m.bit_count() for m in self.adj) // 2

    def degree_sequence(self) -> tuple[int, ...]:
        """Degrees sorted descending (an isomorphism invariant)."""
        return tuple(sorted((m.bit_count() for m in self.adj), reverse=True))

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Graph)
            and self.n == other.n
            and self.adj == other.adj
        )

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __reduce__(self):
        # Graphs cross process boundaries during parallel sweeps.
        return (Graph.from_adj, (self.n, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={sorted(self.edges())})"


# ===== Neighbourhoods and induced subgraphs ==================================


def closed_neighborhood(g: Graph, xs: int) -> int:
    """N[xs]: the vertices of ``xs`` plus all their neighbours."""
    m = xs
    for v in bits(xs):
        m |= g.adj[v]
    return m


def induced_subgraph(g: Graph, keep: int) -> tuple[Graph, tuple[int, ...]]:
    """Induced subgraph on the bitmask ``keep``.

    Returns ``(h, old_labels)`` where ``old_labels[i]`` is the vertex of ``g``
    that became vertex ``i`` of ``h``.  The map is order-preserving.
    """
    old = tuple(bits(keep))
    index = {v: i for i, v in enumerate(old)}
    adj = [0] * len(old)
    for i, v in enumerate(old):
        for w in bits(g.adj[v] & keep):
            adj[i] |= 1 << index[w]
    return Graph.from_adj(len(old), tuple(adj)), old


def delete_vertices(g: Graph, xs: int) -> tuple[Graph, tuple[int, ...]]:
    """G - xs: induced subgraph on V(G) minus the bitmask ``xs``."""
    return induced_subgraph(g, g.vertex_mask & ~xs)


def delete_closed_neighborhood(g: Graph, xs: int) -> tuple[Graph, tuple[int, ...]]:
    """G - N[xs], with the order-preserving relabelling map."""
    return induced_subgraph(g, g.vertex_mask & ~closed_neighborhood(g, xs))


def component_masks(g: Graph, within: Optional[int] = None) -> list[int]:
    """Vertex masks of the components of ``g`` (or of g induced on ``within``).

    Sorted by smallest member, which is the natural scan order.
    """
    todo = g.vertex_mask if within is None else within
    comps = []
    while todo:
        start = todo & -todo
        comp = start
        frontier = start
        while frontier:
            grow = 0
            for v in bits(frontier):
                grow |= g.adj[v]
            grow &= todo & ~comp
            comp |= grow
            frontier = grow
        comps.append(comp)
        todo &= ~comp
    return comps


def components(g: Graph) -> list[int]:
    """Partition of V(g) into maximal connected pieces (as bitmasks)."""
    return component_masks(g)


def is_connected(g: Graph) -> bool:
    return len(component_masks(g)) <= 1


def leaves(g: Graph) -> int:
    """Bitmask of the degree-1 vertices."""
    m = 0
    for v in range(g.n):
        if g.adj[v].bit_count() == 1:
            m |= 1 << v
    return m


def leaf_count(g: Graph) -> int:
    return leaves(g).bit_count()


def max_degree_vertex(g: Graph) -> int:
    """A vertex of maximum degree; ties broken by smallest index."""
    best, best_deg = 0, -1
    for v in range(g.n):
        d = g.adj[v].bit_count()
        if d > best_deg:
            best, best_deg = v, d
    return best


def max_degree(g: Graph) -> int:
    return max((m.bit_count() for m in g.adj), default=0)


# ===== Small-graph isomorphism ===============================================


def _vertex_profile(g: Graph, v: int) -> tuple[int, tuple[int, ...]]:
    """(degree, sorted neighbour degrees): a cheap per-vertex invariant."""
    return (
        g.adj[v].bit_count(),
        tuple(sorted(g.adj[w].bit_count() for w in bits(g.adj[v]))),
    )


def is_isomorphic_small(a: Graph, b: Graph) -> bool:
    """Exact isomorphism test for graphs with at most 9 vertices.

    Degree/neighbour-degree prefilters followed by a backtracking search for
    a consistent vertex bijection.  Raises if either graph is over the cap;
    the intended use is recognising fixed exceptional graphs, all of which
    have at most 7 vertices.
    """
    if a.n > ISO_MAX_VERTICES or b.n > ISO_MAX_VERTICES:
        raise ValueError(f"isomorphism test capped at {ISO_MAX_VERTICES} vertices")
    if a.n != b.n:
        return False
    if a.edge_count() != b.edge_count():
        return False
    if a.degree_sequence() != b.degree_sequence():
        return False
    prof_a = [_vertex_profile(a, v) for v in range(a.n)]
    prof_b = [_vertex_profile(b, v) for v in range(b.n)]
    if sorted(prof_a) != sorted(prof_b):
        return False

    n = a.n
    # Map the most constrained vertices first: rarest profile, then highest
    # degree.  candidates[v] = b-vertices sharing v's profile.
    from collections import Counter

    rarity = Counter(prof_a)
    order = sorted(range(n), key=lambda v: (rarity[prof_a[v]], -a.degree(v), v))
    candidates = [
        [w for w in range(n) if prof_b[w] == prof_a[v]] for v in range(n)
    ]

    image = [-1] * n  # image[a-vertex] = b-vertex

    def place(i: int, used: int) -> bool:
        if i == n:
            return True
        v = order[i]
        av = a.adj[v]
        for w in candidates[v]:
            if used >> w & 1:
                continue
            ok = True
            for j in range(i):
                u = order[j]
                if bool(av >> u & 1) != bool(b.adj[w] >> image[u] & 1):
                    ok = False
                    break
            if ok:
                image[v] = w
                if place(i + 1, used | (1 << w)):
                    return True
                image[v] = -1
        return False

    return place(0, 0)


# ===== graph6 encoding =======================================================

# The de-facto interchange format for small graphs: one printable line per
# graph.  Header encodes n (one byte for n <= 62, '~' + 3 bytes otherwise up
# to 258047); body packs the upper triangle of the adjacency matrix,
# column-major (bit (i, j) for i < j ordered by j then i), 6 bits per byte,
# each byte offset by 63.


class Graph6Error(ValueError):
    """Malformed graph6 input."""


def graph6_encode(g: Graph) -> str:
    n = g.n
    if n <= 62:
        head = chr(63 + n)
    else:
        # 18-bit vertex count: '~' then three 6-bit digits, big-endian.
        head = "~" + chr(63 + (n >> 12 & 63)) + chr(63 + (n >> 6 & 63)) + chr(63 + (n & 63))
    word = 0
    nbits = 0
    for j in range(1, n):
        col = g.adj[j]  # bits i<j of column j
        for i in range(j):
            word = word << 1 | (col >> i & 1)
            nbits += 1
    pad = (-nbits) % 6
    word <<= pad
    nbits += pad
    body = "".join(
        chr(63 + (word >> shift & 63)) for shift in range(nbits - 6, -1, -6)
    )
    return head + body


def graph6_decode(line: str) -> Graph:
    s = line.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise Graph6Error("empty graph6 line")
    for pos, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(f"byte {ord(ch)} at position {pos} outside graph6 range")
    if s[0] != "~":
        n = ord(s[0]) - 63
        body = s[1:]
    else:
        if len(s) >= 2 and s[1] == "~":
            raise Graph6Error("vertex count uses the 36-bit form; far over the 64-vertex cap")
        if len(s) < 4:
            raise Graph6Error("truncated extended vertex-count header")
        n = (ord(s[1]) - 63) << 12 | (ord(s[2]) - 63) << 6 | (ord(s[3]) - 63)
        body = s[4:]
    if n > MAX_VERTICES:
        raise Graph6Error(f"vertex count {n} over the {MAX_VERTICES}-vertex cap")
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(body) != need:
        raise Graph6Error(
            f"body length {len(body)} does not match {need} bytes for n={n}"
        )
    word = 0
    for ch in body:
        word = word << 6 | (ord(ch) - 63)
    total = 6 * need
    if total > nbits and word & ((1 << (total - nbits)) - 1):
        raise Graph6Error("nonzero padding bits")
    adj = [0] * n
    shift = total
    for j in range(1, n):
        for i in range(j):
            shift -= 1
            if word >> shift & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return Graph.from_adj(n, tuple(adj))


# ===== Named small graphs ====================================================


def path_graph(n: int) -> Graph:
    """P_n: vertices 0..n-1 in a path."""
    return Graph(n, ((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    """C_n (n >= 3): vertices 0..n-1 in a cycle."""
    if n < 3:
        raise ValueError("cycles need at least 3 vertices")
    edges = [(i, i + 1) for i in range(n - 1)]
    edges.append((n - 1, 0))
    return Graph(n, edges)


def complete_graph(n: int) -> Graph:
    return Graph(n, ((i, j) for i in range(n) for j in range(i + 1, n)))


def star_graph(nleaves: int) -> Graph:
    """K_{1,nleaves}: centre 0, leaves 1..nleaves."""
    return Graph(nleaves + 1, ((0, i) for i in range(1, nleaves + 1)))


def _c6_pendant() -> Graph:
    # 6-cycle 0..5 plus a pendant vertex 6 attached at 0.
    edges = list(cycle_graph(6).edges()) + [(0, 6)]
    return Graph(7, edges)


def _c6_pendant_chord() -> Graph:
    # The pendant 6-cycle plus the chord joining the two vertices at
    # distance 2 on either side of the attachment point.
    edges = list(_c6_pendant().edges()) + [(2, 4)]
    return Graph(7, edges)


_NAMED_BUILDERS = {
    "K1": lambda: complete_graph(1),
    "K2": lambda: complete_graph(2),
    "P3": lambda: path_graph(3),
    "K3": lambda: complete_graph(3),
    "K13": lambda: star_graph(3),
    "C5": lambda: cycle_graph(5),
    "C6": lambda: cycle_graph(6),
    "C6P": _c6_pendant,
    "C6PP": _c6_pendant_chord,
    "C7": lambda: cycle_graph(7),
}


def named_graph(tag: str) -> Graph:
    """Build a graph from a tag: the fixed names above or P<n>/C<n>/K<n>."""
    if tag in _NAMED_BUILDERS:
        return _NAMED_BUILDERS[tag]()
    if len(tag) >= 2 and tag[0] in "PCK" and tag[1:].isdigit():
        n = int(tag[1:])
        if tag[0] == "P":
            return path_graph(n)
        if tag[0] == "C":
            return cycle_graph(n)
        return complete_graph(n)
    raise ValueError(f"unknown graph tag {tag!r}")
