import pytest

from phangeo.field import make_field
from phangeo.linalg import Subspace
from phangeo.simplicial import (
    SimplicialComplex,
    export_facets,
    intersect_complexes,
    join,
    link,
    order_complex,
    purity_and_dimension,
    star_closure,
)
from phangeo.suites import standard_spec
from phangeo.phan import PhanFamily, vertices

F3 = make_field(3, 1)
F5 = make_field(5, 1)


def test_constructor_maximalizes_and_covers_vertices():
    k = SimplicialComplex([0, 1, 2, 3], [(0, 1), (0,), (1,)])
    assert k.facet_sets() == frozenset(
        {frozenset({0, 1}), frozenset({2}), frozenset({3})}
    )
    assert k.dim == 1
    with pytest.raises(ValueError):
        SimplicialComplex([0, 1], [(0, 2)])


def test_facet_representation_roundtrip():
    facets = [(0, 1, 2), (1, 2, 3), (3, 4)]
    k = SimplicialComplex(range(5), facets)
    all_simplices = [s for d in range(k.dim + 1) for s in k.simplices(d)]
    again = SimplicialComplex(range(5), all_simplices)
    assert again.facet_sets() == k.facet_sets()


def test_order_complex_antichain_and_chain():
    points = [s for s in _subs(F3, 3, 1)][:4]
    k = order_complex(points)
    assert purity_and_dimension(k) == (True, 0) and len(k.facets) == 4
    chain = [
        Subspace.span(F3, 3, [(1, 0, 0)]),
        Subspace.span(F3, 3, [(1, 0, 0), (0, 1, 0)]),
        Subspace.full(F3, 3),
    ]
    k2 = order_complex(chain)
    assert len(k2.facets) == 1 and k2.dim == 2


def _subs(field, dim, k):
    from phangeo.linalg import enumerate_subspaces
    return list(enumerate_subspaces(field, dim, k))


def test_order_complex_of_phan_geometry_is_pure():
    vs = vertices(PhanFamily((standard_spec(F5, 3),)))
    k = order_complex(vs.members)
    assert purity_and_dimension(k) == (True, 1)
    # incidence = inclusion: every facet is a point inside a plane
    for a, b in k.facets:
        assert a.dim == 1 and b.dim == 2 and b.contains_subspace(a)


def test_link_examples():
    k = SimplicialComplex([0, 1, 2], [(0, 1, 2)])
    assert link(k, (0, 1, 2)).is_empty()
    tri = SimplicialComplex([0, 1, 2], [(0, 1), (0, 2), (1, 2)])
    lk = link(tri, (0,))
    assert set(lk.vertices) == {1, 2} and lk.dim == 0
    with pytest.raises(ValueError):
        link(tri, (0, 1, 2))


def test_link_of_vertex_is_below_join_above():
    vs = vertices(PhanFamily((standard_spec(F3, 3),)))
    k = order_complex(vs.members)
    for u in vs.members:
        lk = link(k, (u,))
        below_above = {
            x for x in vs.members
            if (x.dim < u.dim and u.contains_subspace(x))
            or (x.dim > u.dim and x.contains_subspace(u))
        }
        assert set(lk.vertices) == below_above


def test_star_closure_is_cone_over_link():
    vs = vertices(PhanFamily((standard_spec(F3, 3),)))
    k = order_complex(vs.members)
    for u in vs.members[:10]:
        st = star_closure(k, u)
        lk = link(k, (u,))
        rebuilt = frozenset(frozenset(f) | {u} for f in lk.facets) if not lk.is_empty() \
            else frozenset({frozenset({u})})
        assert st.facet_sets() == rebuilt
        assert len(st.facets) == sum(1 for f in k.facets if u in f)


def test_star_of_isolated_vertex():
    k = SimplicialComplex([0, 1, 2], [(1, 2)])
    st = star_closure(k, 0)
    assert st.facet_sets() == frozenset({frozenset({0})})


def test_join_identities():
    pt = SimplicialComplex(["apex"], [])
    tri = SimplicialComplex([0, 1, 2], [(0, 1), (0, 2), (1, 2)])
    cone = join(pt, tri)
    assert cone.dim == tri.dim + 1
    assert all((0, "apex") in f for f in cone.facets)
    empty = SimplicialComplex([], [])
    assert join(empty, tri).facet_sets() == frozenset(
        frozenset((1, v) for v in f) for f in tri.facets
    )


def test_intersect_complexes():
    a = SimplicialComplex([0, 1, 2], [(0, 1, 2)])
    b = SimplicialComplex([1, 2, 3], [(1, 2, 3)])
    inter = intersect_complexes(a, b)
    assert inter.facet_sets() == frozenset({frozenset({1, 2})})


def test_export_format():
    k = SimplicialComplex(["a", "b", "c"], [("a", "b"), ("c",)])
    text = export_facets(k)
    lines = text.strip().split("\n")
    assert lines[0] == "3"
    assert set(lines[1:]) == {"0 1", "2"}
