"""Sigma-hermitian forms: evaluation, radicals, perpendicular spaces,
restriction, extension of a flag's forms to the whole space, the projection
form onto the perp of a non-degenerate point, and non-isotropic searches.

A form is stored as the Gram matrix over the canonical (reduced-echelon)
basis of its domain subspace, so restriction is Gram compression and a
radical is a matrix kernel.  Hermitian symmetry G[j][i] == sigma(G[i][j]) is
enforced at construction; evaluation is sigma-sesquilinear in the second
argument: w(a*x, b*y) = a * sigma(b) * w(x, y).
"""

from __future__ import annotations

from dataclasses import dataclass

from .field import Field
from .linalg import (
    Decomposition,
    Flag,
    Subspace,
    complement,
    nullspace,
    project,
    rref,
)

__all__ = [
    "HermitianForm",
    "HermitianSymmetryError",
    "DegeneratePivotError",
    "RadicalConditionError",
    "NoNonisotropicVectorError",
    "extend_forms",
    "project_form",
    "find_nonisotropic_pair",
    "count_isotropic_points",
    "unit_form",
]


class HermitianSymmetryError(ValueError):
    """Gram matrix is not sigma-hermitian."""


class DegeneratePivotError(ValueError):
    """A pivot point required to be non-degenerate is isotropic."""


class RadicalConditionError(ValueError):
    """Rad(omega_i) differs from the required flag member."""


class NoNonisotropicVectorError(ValueError):
    """A form required to admit a non-isotropic vector admits none."""


@dataclass(frozen=True)
class HermitianForm:
    """A sigma-hermitian form on a subspace, as a Gram matrix over its basis."""

    field: Field
    domain: Subspace
    gram: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        k = self.domain.dim
        if len(self.gram) != k or any(len(r) != k for r in self.gram):
            raise ValueError(f"Gram matrix must be {k}x{k} for a {k}-dimensional domain")
        f = self.field
        for i in range(k):
            for j in range(k):
                if self.gram[j][i] != f.sigma(self.gram[i][j]):
                    raise HermitianSymmetryError(
                        f"gram[{j}][{i}] = {self.gram[j][i]} != "
                        f"sigma(gram[{i}][{j}]) = {f.sigma(self.gram[i][j])}"
                    )

    # -- evaluation ----------------------------------------------------------

    def _eval_coords(self, cx, cy) -> int:
        f = self.field
        total = 0
        for i, a in enumerate(cx):
            if a == 0:
                continue
            row = self.gram[i]
            for j, b in enumerate(cy):
                if b == 0 or row[j] == 0:
                    continue
                total = f.add(total, f.mul(f.mul(a, f.sigma(b)), row[j]))
        return total

    def evaluate(self, x, y) -> int:
        cx = self.domain.coordinates(x)
        cy = self.domain.coordinates(y)
        if cx is None or cy is None:
            raise ValueError("vector outside the domain of the form")
        return self._eval_coords(cx, cy)

    def is_isotropic(self, x) -> bool:
        return self.evaluate(x, x) == 0

    # -- restriction, radical, perp -------------------------------------------

    def restrict(self, s: Subspace) -> "HermitianForm":
        if not self.domain.contains_subspace(s):
            raise ValueError("restriction target is not contained in the domain")
        coords = [self.domain.coordinates(r) for r in s.basis]
        gram = tuple(
            tuple(self._eval_coords(ca, cb) for cb in coords) for ca in coords
        )
        return HermitianForm(self.field, s, gram)

    def radical(self, restricted_to: Subspace | None = None) -> Subspace:
        """{x in S : w(x, y) = 0 for all y in S}, computed as a kernel."""
        s = self.domain if restricted_to is None else restricted_to
        form = self if restricted_to is None else self.restrict(s)
        k = s.dim
        # x = sum c_a s_a is radical iff sum_a c_a G[a][b] = 0 for all b
        rows = [[form.gram[a][b] for a in range(k)] for b in range(k)]
        kernel = nullspace(self.field, rows, k)
        f = self.field
        vecs = []
        for c in kernel:
            v = [0] * s.ambient
            for ci, row in zip(c, s.basis):
                if ci != 0:
                    v = [f.add(x, f.mul(ci, y)) for x, y in zip(v, row)]
            vecs.append(v)
        return Subspace.span(f, s.ambient, vecs)

    def is_nondegenerate(self, s: Subspace | None = None) -> bool:
        return self.radical(s).dim == 0

    def perp(self, s: Subspace) -> Subspace:
        """{x in domain : w(x, y) = 0 for all y in S}."""
        if not self.domain.contains_subspace(s):
            raise ValueError("perp target is not contained in the domain")
        f = self.field
        k = self.domain.dim
        rows = []
        for r in s.basis:
            cb = self.domain.coordinates(r)
            rows.append(
                [self._eval_coords(tuple(1 if t == i else 0 for t in range(k)), cb)
                 for i in range(k)]
            )
        kernel = nullspace(f, rows, k) if rows else [
            tuple(1 if t == i else 0 for t in range(k)) for i in range(k)
        ]
        vecs = []
        for c in kernel:
            v = [0] * self.domain.ambient
            for ci, row in zip(c, self.domain.basis):
                if ci != 0:
                    v = [f.add(x, f.mul(ci, y)) for x, y in zip(v, row)]
            vecs.append(v)
        return Subspace.span(f, self.domain.ambient, vecs)

    def admits_nonisotropic_vector(self) -> bool:
        k = self.domain.dim
        q = self.field.q
        for idx in range(1, q**k):
            c = tuple((idx // q**i) % q for i in range(k))
            if self._eval_coords(c, c) != 0:
                return True
        return False


def unit_form(s: Subspace) -> HermitianForm:
    """The form with identity Gram matrix on the given subspace."""
    k = s.dim
    gram = tuple(tuple(1 if i == j else 0 for j in range(k)) for i in range(k))
    return HermitianForm(s.field, s, gram)


def extend_forms(flag: Flag, forms, p: Subspace, complement_policy=None):
    """Extend the flag's forms to the whole space around a pivot point p.

    Requires Rad(omega_i) = V_i for every i and p non-degenerate for the top
    form.  Returns forms on all of V = flag.top such that each restricts to
    the original on V_(i+1), keeps radical V_i, and makes p non-degenerate
    with one common perp; the construction sums the original forms over the
    projections onto a direct decomposition V = C_1 ⊕ ... ⊕ C_(t+1) ⊕ p.
    """
    forms = tuple(forms)
    t = len(flag.members) - 2
    if len(forms) != t + 1:
        raise ValueError(f"expected {t + 1} forms for a flag of length {t + 2}")
    for i, w in enumerate(forms):
        if w.domain != flag[i + 1]:
            raise ValueError(f"form {i} is not defined on flag member {i + 1}")
        if w.radical() != flag[i]:
            raise RadicalConditionError(f"Rad(omega_{i}) != V_{i} on input")
    if p.dim != 1:
        raise ValueError("pivot must be one-dimensional")
    pv = p.basis[0]
    top = forms[t]
    if top.evaluate(pv, pv) == 0:
        raise DegeneratePivotError("pivot point is degenerate for the top form")

    comp = complement_policy if complement_policy is not None else complement
    parts = []
    for i in range(1, t + 1):
        parts.append(comp(flag[i - 1], flag[i]))
    perp_p = top.perp(p)
    parts.append(comp(flag[t], perp_p))
    parts.append(p)
    decomp = Decomposition(tuple(parts), flag.top)

    f = flag.field
    basis = flag.top.basis
    # projections of the top-space basis onto each summand
    proj = [[project(d, decomp, idx) for d in basis] for idx in range(len(parts))]

    out = []
    for i in range(t + 1):
        gram = []
        for r in range(len(basis)):
            row = []
            for s in range(len(basis)):
                total = 0
                for j in range(i, t + 1):
                    xr = proj[j][r]
                    xs = proj[j][s]
                    if any(xr) and any(xs):
                        total = f.add(total, forms[j].evaluate(xr, xs))
                xr = proj[t + 1][r]
                xs = proj[t + 1][s]
                if any(xr) and any(xs):
                    total = f.add(total, forms[t].evaluate(xr, xs))
                row.append(total)
            gram.append(tuple(row))
        out.append(HermitianForm(f, flag.top, tuple(gram)))
    return tuple(out)


def project_form(form: HermitianForm, p: Subspace) -> HermitianForm:
    """The form w^p(v, w) = w(pr(v), pr(w)) for the projection pr onto the
    perp of a non-degenerate point p in the decomposition D = p ⊕ p^perp."""
    if p.dim != 1 or not form.domain.contains_subspace(p):
        raise ValueError("p must be a one-dimensional subspace of the domain")
    pv = p.basis[0]
    if form.evaluate(pv, pv) == 0:
        raise DegeneratePivotError("projection pivot is degenerate for the form")
    perp = form.perp(p)
    decomp = Decomposition((p, perp), form.domain)
    basis = form.domain.basis
    projected = [project(d, decomp, 1) for d in basis]
    f = form.field
    gram = tuple(
        tuple(form.evaluate(projected[r], projected[s]) for s in range(len(basis)))
        for r in range(len(basis))
    )
    return HermitianForm(f, form.domain, gram)


def find_nonisotropic_pair(forms):
    """Two linearly independent vectors non-isotropic for every listed form,
    by exhaustive search in the canonical vector order; None if no pair
    exists."""
    forms = list(forms)
    if not forms:
        raise ValueError("need at least one form")
    dom = forms[0].domain
    if any(w.domain != dom for w in forms):
        raise ValueError("forms must share a common domain")
    first = None
    for v in dom.vectors():
        if not any(v):
            continue
        if all(w.evaluate(v, v) != 0 for w in forms):
            first = v
            break
    if first is None:
        return None
    span_first = Subspace.span(dom.field, dom.ambient, [first])
    for v in dom.vectors():
        if not any(v) or span_first.contains(v):
            continue
        if all(w.evaluate(v, v) != 0 for w in forms):
            return (first, v)
    return None


def count_isotropic_points(form: HermitianForm, s: Subspace) -> int:
    """Number of isotropic one-dimensional subspaces of a two-dimensional s."""
    if s.dim != 2:
        raise ValueError("isotropic point count is defined on planes (dim 2)")
    restricted = form.restrict(s)
    count = 0
    q = form.field.q
    # the q+1 points of s: <s_0 + c*s_1> for each c, and <s_1>
    for c in range(q):
        coords = (1, c)
        if restricted._eval_coords(coords, coords) == 0:
            count += 1
    if restricted._eval_coords((0, 1), (0, 1)) == 0:
        count += 1
    return count
