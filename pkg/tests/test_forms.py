import itertools
import random

import pytest

from phangeo.field import make_field
from phangeo.forms import (
    DegeneratePivotError,
    HermitianForm,
    HermitianSymmetryError,
    count_isotropic_points,
    extend_forms,
    find_nonisotropic_pair,
    project_form,
    unit_form,
)
from phangeo.linalg import Decomposition, Flag, Subspace, project
from phangeo.suites import random_phan_spec, shuffled_complement_policy

from conftest import random_hermitian_gram

F3 = make_field(3, 1)
F4 = make_field(2, 2, 2)
F5 = make_field(5, 1)
F9 = make_field(3, 2, 2)


def test_symmetry_validation():
    v2 = Subspace.full(F5, 2)
    with pytest.raises(HermitianSymmetryError):
        HermitianForm(F5, v2, ((1, 2), (3, 1)))
    v2h = Subspace.full(F9, 2)
    x = F9.from_coeffs((0, 1))  # not fixed by sigma
    assert F9.sigma(x) != x
    HermitianForm(F9, v2h, ((1, x), (F9.sigma(x), 1)))  # fine
    with pytest.raises(HermitianSymmetryError):
        HermitianForm(F9, v2h, ((1, x), (x, 1)))


def test_evaluate_examples():
    v3 = Subspace.full(F5, 3)
    w = unit_form(v3)
    assert w.evaluate((0, 0, 0), (1, 2, 3)) == 0
    x = (1, 1, 0)
    y = (1, F5.neg(1), 0)
    assert w.evaluate(x, y) == 0  # 1 - 1
    with pytest.raises(ValueError):
        w.evaluate((1, 0), (0, 1))


def test_hermitian_norm_matches_direct_polynomial_evaluation():
    """w(x, x) for the standard hermitian plane equals x1^(q'+1) + x2^(q'+1)
    computed through independent field exponentiation."""
    v2 = Subspace.full(F4, 2)
    w = unit_form(v2)
    for x1 in F4.elements():
        for x2 in F4.elements():
            direct = F4.add(F4.pow(x1, 3), F4.pow(x2, 3))
            assert w.evaluate((x1, x2), (x1, x2)) == direct


def test_hermitian_symmetry_of_evaluation(rng):
    v3 = Subspace.full(F9, 3)
    for _ in range(25):
        w = HermitianForm(F9, v3, random_hermitian_gram(rng, F9, 3))
        x = tuple(rng.randrange(9) for _ in range(3))
        y = tuple(rng.randrange(9) for _ in range(3))
        assert w.evaluate(y, x) == F9.sigma(w.evaluate(x, y))


def test_radical_examples():
    v2 = Subspace.full(F3, 2)
    assert unit_form(v2).radical().is_zero()
    zero = HermitianForm(F3, v2, ((0, 0), (0, 0)))
    assert zero.radical() == v2
    rank1 = HermitianForm(F3, v2, ((1, 0), (0, 0)))
    assert rank1.radical().basis == ((0, 1),)


def test_nondegeneracy_examples():
    v2 = Subspace.full(F4, 2)
    w = unit_form(v2)
    assert w.is_nondegenerate(Subspace.zero(F4, 2))
    omega = F4.from_coeffs((0, 1))
    iso = Subspace.span(F4, 2, [(1, omega)])  # norm 1 + w^3 = 0
    assert not w.is_nondegenerate(iso)
    assert w.is_nondegenerate(Subspace.span(F4, 2, [(1, 0)]))


def test_perp(rng):
    v3 = Subspace.full(F5, 3)
    w = unit_form(v3)
    assert w.perp(Subspace.zero(F5, 3)) == v3
    zero = HermitianForm(F5, v3, tuple(tuple(0 for _ in range(3)) for _ in range(3)))
    s = Subspace.span(F5, 3, [(1, 2, 0)])
    assert zero.perp(s) == v3
    for _ in range(20):
        k = rng.randrange(0, 4)
        rows = [tuple(rng.randrange(5) for _ in range(3)) for _ in range(k)]
        s = Subspace.span(F5, 3, rows)
        assert w.perp(s).dim == 3 - s.dim  # rank-nullity for nondegenerate w


def test_isotropic_point_counts():
    v2_4 = Subspace.full(F4, 2)
    assert count_isotropic_points(unit_form(v2_4), v2_4) == 3  # = sqrt(q)+1
    v2_5 = Subspace.full(F5, 2)
    assert count_isotropic_points(unit_form(v2_5), v2_5) == 2
    zero = HermitianForm(F5, v2_5, ((0, 0), (0, 0)))
    assert count_isotropic_points(zero, v2_5) == 6  # q+1


def test_isotropic_count_bounds_exhaustive():
    # sigma = id: a rank-2 symmetric form vanishes on at most 2 points of the line pencil
    for field in (F3, F5):
        v2 = Subspace.full(field, 2)
        for g01 in field.elements():
            for g00 in field.elements():
                for g11 in field.elements():
                    w = HermitianForm(field, v2, ((g00, g01), (g01, g11)))
                    if w.radical().dim == 0:
                        assert count_isotropic_points(w, v2) <= 2
    # hermitian: at most sqrt(q)+1
    for field in (F4, F9):
        v2 = Subspace.full(field, 2)
        fixed = field.fixed_elements()
        for g00 in fixed:
            for g11 in fixed:
                for g01 in field.elements():
                    w = HermitianForm(field, v2, ((g00, g01), (field.sigma(g01), g11)))
                    if w.radical().dim == 0:
                        assert count_isotropic_points(w, v2) <= field.sqrt_q + 1


def test_pair_search_examples():
    v2 = Subspace.full(F5, 2)
    assert find_nonisotropic_pair([unit_form(v2)]) == ((1, 0), (0, 1))


def test_pair_search_bound_sigma_id_exhaustive():
    """m = 2 bilinear forms over F_5 in dimension 2: since 2m = 4 < 5, the
    search must succeed for every pair of forms admitting non-isotropic
    vectors."""
    v2 = Subspace.full(F5, 2)
    forms = []
    for g00, g01, g11 in itertools.product(range(5), repeat=3):
        w = HermitianForm(F5, v2, ((g00, g01), (g01, g11)))
        if w.admits_nonisotropic_vector():
            forms.append(w)
    for w1 in forms:
        for w2 in forms:
            assert find_nonisotropic_pair([w1, w2]) is not None


def test_pair_search_bound_hermitian_exhaustive():
    """One hermitian form over F_9 in dimension 2: (sqrt(q)+1)m = 4 < 9."""
    v2 = Subspace.full(F9, 2)
    fixed = F9.fixed_elements()
    for g00 in fixed:
        for g11 in fixed:
            for g01 in F9.elements():
                w = HermitianForm(F9, v2, ((g00, g01), (F9.sigma(g01), g11)))
                if w.admits_nonisotropic_vector():
                    assert find_nonisotropic_pair([w]) is not None


def test_extend_forms_t0_is_identity():
    v3 = Subspace.full(F5, 3)
    w = unit_form(v3)
    flag = Flag((Subspace.zero(F5, 3), v3))
    p = Subspace.span(F5, 3, [(1, 0, 0)])
    (ext,) = extend_forms(flag, [w], p)
    assert ext.gram == w.gram


def test_extend_forms_postconditions_random(rng):
    """Restriction, radical and common-perp postconditions under both
    complement policies on random flags (also exercised at scale by the
    extension suite)."""
    for _ in range(12):
        field, dim = rng.choice([(F3, 3), (F5, 3), (F4, 3), (F3, 4)])
        t = rng.randrange(0, dim - 1)
        spec = random_phan_spec(rng, field, dim, t)
        flag, forms = spec.flag, spec.forms
        pivot = None
        for v in flag.top.vectors():
            if any(v) and forms[-1].evaluate(v, v) != 0:
                pivot = Subspace.span(field, dim, [v])
                break
        for policy in (None, shuffled_complement_policy(rng)):
            ext = extend_forms(flag, forms, pivot, complement_policy=policy)
            for i, w in enumerate(forms):
                assert ext[i].restrict(flag[i + 1]).gram == w.gram
                assert ext[i].radical() == flag[i]
            pv = pivot.basis[0]
            perps = [e.perp(pivot) for e in ext]
            assert all(e.evaluate(pv, pv) != 0 for e in ext)
            assert all(pp == perps[0] for pp in perps)


def test_extend_forms_rejects_degenerate_pivot():
    v3 = Subspace.full(F5, 3)
    w = unit_form(v3)
    flag = Flag((Subspace.zero(F5, 3), v3))
    p = Subspace.span(F5, 3, [(1, 2, 0)])  # 1 + 4 = 0 mod 5
    assert w.evaluate((1, 2, 0), (1, 2, 0)) == 0
    with pytest.raises(DegeneratePivotError):
        extend_forms(flag, [w], p)


def test_project_form_basics():
    v3 = Subspace.full(F5, 3)
    w = unit_form(v3)
    p = Subspace.span(F5, 3, [(1, 0, 0)])
    wp = project_form(w, p)
    # w^p kills p
    assert wp.evaluate((1, 0, 0), (0, 1, 2)) == 0
    assert wp.evaluate((1, 0, 0), (1, 0, 0)) == 0
    # and agrees with w on the perp of p
    for v in ((0, 1, 0), (0, 0, 1), (0, 2, 3)):
        for u in ((0, 1, 0), (0, 1, 4)):
            assert wp.evaluate(v, u) == w.evaluate(v, u)
    with pytest.raises(DegeneratePivotError):
        project_form(w, Subspace.span(F5, 3, [(1, 2, 0)]))


def test_projection_radical_identity_random(rng):
    """pr_W(Rad(w| <W,p>)) = Rad(w^p|_W) as exact subspace equality."""
    for field in (F3, F4):
        v4 = Subspace.full(field, 4)
        done = 0
        while done < 25:
            w = HermitianForm(field, v4, random_hermitian_gram(rng, field, 4))
            pv = tuple(rng.randrange(field.q) for _ in range(4))
            if not any(pv) or w.evaluate(pv, pv) == 0:
                continue
            p = Subspace.span(field, 4, [pv])
            rows = [tuple(rng.randrange(field.q) for _ in range(4))
                    for _ in range(rng.randrange(1, 4))]
            cand = Subspace.span(field, 4, rows)
            if cand.dim == 0 or cand.intersect(p).dim != 0:
                continue
            wp_space = cand.sum(p)
            lhs_rad = w.restrict(wp_space).radical()
            dec = Decomposition((p, cand), wp_space)
            lhs = Subspace.span(field, 4, [project(r, dec, 1) for r in lhs_rad.basis])
            rhs = project_form(w, p).restrict(cand).radical()
            assert lhs == rhs
            done += 1
