"""Abstract simplicial complexes represented by their facets: order
complexes of subspace posets, links, closed stars, joins, purity.

A complex stores a vertex tuple in a fixed canonical order and its
inclusion-maximal simplices as tuples of vertex labels sorted by vertex
index.  Downward closure is implicit in the facet representation.  Complexes
are immutable; operations return new complexes.
"""

from __future__ import annotations

from itertools import combinations

from .linalg import Subspace

__all__ = [
    "SimplicialComplex",
    "order_complex",
    "link",
    "star_closure",
    "join",
    "purity_and_dimension",
    "intersect_complexes",
    "export_facets",
]


def _maximalize(simps):
    """Inclusion-maximal members of a collection of frozensets."""
    by_size = sorted(set(simps), key=len, reverse=True)
    out = []
    for s in by_size:
        if not any(s < t or s == t for t in out):
            out.append(s)
    return out


class SimplicialComplex:
    """Finite abstract simplicial complex given by vertices and facets."""

    def __init__(self, vertices, facets):
        self.vertices = tuple(vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertices")
        self._index = {v: i for i, v in enumerate(self.vertices)}
        fs = []
        covered = set()
        for f in facets:
            fv = frozenset(f)
            if not fv <= set(self.vertices):
                raise ValueError("facet uses unknown vertices")
            fs.append(fv)
            covered |= fv
        # every vertex is a simplex; uncovered ones stand alone as facets
        fs.extend(frozenset((v,)) for v in self.vertices if v not in covered)
        maximal = _maximalize(fs)
        self.facets = tuple(
            sorted(
                (tuple(sorted(f, key=self._index.__getitem__)) for f in maximal),
                key=lambda t: tuple(self._index[v] for v in t),
            )
        )

    # -- basic queries -------------------------------------------------------

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    def is_empty(self) -> bool:
        return not self.vertices

    @property
    def dim(self) -> int:
        return max((len(f) for f in self.facets), default=0) - 1

    def index_of(self, v) -> int:
        return self._index[v]

    def has_simplex(self, s) -> bool:
        sv = frozenset(s)
        if not sv:
            return True
        return any(sv <= frozenset(f) for f in self.facets)

    def simplices(self, k: int) -> list[tuple]:
        """All k-simplices, sorted by vertex-index tuples."""
        seen = set()
        for f in self.facets:
            if len(f) >= k + 1:
                for c in combinations(f, k + 1):
                    seen.add(c)
        return sorted(seen, key=lambda t: tuple(self._index[v] for v in t))

    def face_counts(self) -> list[int]:
        """Number of k-simplices for k = 0..dim."""
        return [len(self.simplices(k)) for k in range(self.dim + 1)]

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * c for k, c in enumerate(self.face_counts()))

    def facet_sets(self) -> frozenset:
        return frozenset(frozenset(f) for f in self.facets)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SimplicialComplex)
            and set(self.vertices) == set(other.vertices)
            and self.facet_sets() == other.facet_sets()
        )

    def __hash__(self) -> int:
        return hash((frozenset(self.vertices), self.facet_sets()))

    def __repr__(self) -> str:
        return (
            f"SimplicialComplex({self.num_vertices} vertices, "
            f"{len(self.facets)} facets, dim {self.dim})"
        )


def order_complex(subspaces) -> SimplicialComplex:
    """The complex whose simplices are the inclusion-chains of the given
    subspaces; facets are the maximal chains."""
    verts = sorted(set(subspaces), key=Subspace.sort_key)
    n = len(verts)
    succ = [[] for _ in range(n)]  # strict containments, ordered by dim
    for i, a in enumerate(verts):
        for j, b in enumerate(verts):
            if a.dim < b.dim and b.contains_subspace(a):
                succ[i].append(j)
    has_pred = [False] * n
    for i in range(n):
        for j in succ[i]:
            has_pred[j] = True
    covers = [[] for _ in range(n)]
    for i in range(n):
        si = succ[i]
        for j in si:
            if not any(
                verts[k].dim < verts[j].dim and verts[j].contains_subspace(verts[k])
                for k in si
            ):
                covers[i].append(j)
    facets = []

    def extend(chain):
        last = chain[-1]
        if not covers[last]:
            facets.append(tuple(verts[i] for i in chain))
            return
        for j in covers[last]:
            extend(chain + [j])

    for i in range(n):
        if not has_pred[i]:
            extend([i])
    return SimplicialComplex(verts, facets)


def link(k: SimplicialComplex, s) -> SimplicialComplex:
    """{t : t ∩ s = ∅ and t ∪ s ∈ K}."""
    sv = frozenset(s)
    if not k.has_simplex(sv):
        raise ValueError("link of a non-simplex")
    new_facets = [frozenset(f) - sv for f in k.facets if sv <= frozenset(f)]
    verts = [v for v in k.vertices if any(v in f for f in new_facets)]
    return SimplicialComplex(verts, [f for f in new_facets if f])


def star_closure(k: SimplicialComplex, v) -> SimplicialComplex:
    """All simplices contained in a simplex through v (the closed star)."""
    if v not in k._index:
        raise ValueError("star of a non-vertex")
    facets = [f for f in k.facets if v in f]
    verts = [w for w in k.vertices if any(w in f for f in facets)]
    return SimplicialComplex(verts, facets)


def join(k1: SimplicialComplex, k2: SimplicialComplex) -> SimplicialComplex:
    """Join with disjointness enforced by tagging vertices with a side label."""
    v1 = [(0, v) for v in k1.vertices]
    v2 = [(1, v) for v in k2.vertices]
    f1 = [tuple((0, v) for v in f) for f in k1.facets]
    f2 = [tuple((1, v) for v in f) for f in k2.facets]
    if not f1:
        facets = f2
    elif not f2:
        facets = f1
    else:
        facets = [a + b for a in f1 for b in f2]
    return SimplicialComplex(v1 + v2, facets)


def purity_and_dimension(k: SimplicialComplex) -> tuple[bool, int]:
    """(all maximal simplices share one cardinality, top dimension)."""
    if k.is_empty():
        return True, -1
    sizes = {len(f) for f in k.facets}
    return len(sizes) == 1, max(sizes) - 1


def intersect_complexes(k1: SimplicialComplex, k2: SimplicialComplex) -> SimplicialComplex:
    """The subcomplex of simplices common to both (shared vertex labels)."""
    common = set(k1.vertices) & set(k2.vertices)
    inters = []
    for f in k1.facets:
        fv = frozenset(f) & common
        for g in k2.facets:
            cut = fv & frozenset(g)
            if cut:
                inters.append(cut)
    verts = [v for v in k1.vertices if v in common and any(v in f for f in inters)]
    return SimplicialComplex(verts, inters)


def export_facets(k: SimplicialComplex) -> str:
    """One facet per line as space-separated vertex indices, after a header
    line carrying the vertex count."""
    lines = [str(k.num_vertices)]
    for f in k.facets:
        lines.append(" ".join(str(k.index_of(v)) for v in f))
    return "\n".join(lines) + "\n"
