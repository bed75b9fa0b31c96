import pytest

from phangeo.field import make_field
from phangeo.filtration import (
    FiltrationState,
    PivotNotFoundError,
    build_filtration,
    choose_pivot,
    find_degenerate_pivot,
    run_verification,
    verify_stage,
    verify_y0_contractible,
)
from phangeo.linalg import Subspace
from phangeo.phan import PhanFamily, vertices
from phangeo.suites import chamber_spec, diagonal_spec, standard_spec

F3 = make_field(3, 1)
F5 = make_field(5, 1)
F9 = make_field(3, 2, 2)


def test_choose_pivot_first_hit():
    fam = PhanFamily((diagonal_spec(F5, (1, 1)),))
    assert choose_pivot(fam) == Subspace.span(F5, 2, [(1, 0)])
    fam3 = PhanFamily((standard_spec(F5, 3),))
    assert choose_pivot(fam3) == Subspace.span(F5, 3, [(1, 0, 0)])


def test_pivot_exists_in_bound():
    # 2^2 = 4 < 5 and 2*(3+1) = 8 < 9
    assert choose_pivot(PhanFamily((standard_spec(F5, 3),))) is not None
    assert choose_pivot(PhanFamily((standard_spec(F9, 3),))) is not None


def test_degenerate_pivot_search():
    fam = PhanFamily((standard_spec(F5, 3),))
    p = find_degenerate_pivot(fam)
    w = fam.specs[0].forms[-1]
    assert w.evaluate(p.basis[0], p.basis[0]) == 0
    # anisotropic plane over F_7: no isotropic point exists
    f7 = make_field(7, 1)
    with pytest.raises(PivotNotFoundError):
        find_degenerate_pivot(PhanFamily((diagonal_spec(f7, (1, 1)),)))


def test_filtration_level_structure():
    fam = PhanFamily((standard_spec(F5, 3),))
    p = choose_pivot(fam)
    state = build_filtration(fam, p)
    gamma = set(vertices(fam).members)
    levels = [set(l) for l in state.levels]
    # Y_0 subseteq Y_1 subseteq Y_2 = Gamma
    assert levels[0] <= levels[1] <= levels[2] == gamma
    # Y_0 contains every member through p
    for u in gamma:
        if u.contains_subspace(p):
            assert u in levels[0]
    # new vertices at stage i all have dimension n+1-i
    for i in (1, 2):
        assert {u.dim for u in levels[i] - levels[i - 1]} <= {3 - i}
    # Y_1 = Y_0 plus all member planes
    assert levels[1] == levels[0] | {u for u in gamma if u.dim == 2}
    # Y_0 is exactly {W : <p, W> in Gamma}
    expected_y0 = {w for w in gamma if w.sum(p).dim < 3 and fam.is_member(w.sum(p))}
    assert levels[0] == expected_y0


def test_y0_contractible_checks():
    fam = PhanFamily((standard_spec(F5, 3),))
    state = build_filtration(fam, choose_pivot(fam))
    checks = verify_y0_contractible(state)
    assert all(c.passed for c in checks)
    names = {c.name for c in checks}
    assert {"y0_acyclic", "pivot_in_y0", "join_map_into_y0"} <= names


def test_vacuous_stage_passes():
    fam = PhanFamily((standard_spec(F5, 3),))
    state = build_filtration(fam, choose_pivot(fam))
    frozen = FiltrationState(fam, state.pivot, state.geometry,
                             (state.levels[2], state.levels[2], state.levels[2]))
    rep = verify_stage(frozen, 1)
    assert rep.passed and rep.new_vertex_count == 0
    assert rep.checks[0].name == "vacuous_stage"


def test_stage_reports_all_checks_present():
    fam = PhanFamily((standard_spec(F5, 3),))
    state = build_filtration(fam, choose_pivot(fam))
    rep = verify_stage(state, 1)
    names = [c.name for c in rep.checks]
    assert names == [
        "pairwise_star_intersections_in_B",
        "stars_are_cones",
        "star_boundary_join_decomposition",
        "star_boundary_sphericity",
        "above_sets_equal_gamma_above",
        "below_sets_equal_y0_below",
        "below_sets_match_restricted_family",
        "mayer_vietoris_rank_balance",
    ]
    assert rep.passed


def test_full_verification_small_instance():
    rep = run_verification(PhanFamily((diagonal_spec(F5, (1, 1)),)))
    assert rep.passed
    # dimension-2 case: wedge of 0-spheres, count = vertices - 1 = 3
    assert rep.predicted_spheres == rep.direct_spheres == 3


def test_negative_control_fails_with_witness():
    rep = run_verification(PhanFamily((standard_spec(F5, 3),)), negative_control=True)
    assert not rep.passed
    witnesses = [c.witness for s in rep.stages for c in s.checks if not c.passed]
    witnesses += [c.witness for c in rep.y0 if not c.passed]
    assert witnesses and any(w for w in witnesses)


def test_verification_matches_direct_homology_chamber():
    rep = run_verification(PhanFamily((chamber_spec(F3, 3),)))
    assert rep.passed
    assert rep.predicted_spheres == rep.direct_spheres == 10


def test_stage_index_validation():
    fam = PhanFamily((standard_spec(F5, 3),))
    state = build_filtration(fam, choose_pivot(fam))
    with pytest.raises(ValueError):
        verify_stage(state, 0)
    with pytest.raises(ValueError):
        verify_stage(state, 5)
