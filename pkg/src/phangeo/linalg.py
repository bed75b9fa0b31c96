"""Subspaces of F_q^(n+1): canonical forms, lattice operations, flags,
transversality, complements, quotients, projections and exhaustive
enumeration.

Vectors are tuples of field elements (ints, see :mod:`phangeo.field`).
A subspace is stored as its reduced row-echelon basis, which is the unique
canonical basis, so two subspaces are equal iff their stored bases are
identical.  All values are immutable and all operations pure.

Canonical vector enumeration counts coordinate 0 as the least significant
base-q digit, so (1,0,...,0) is the first nonzero vector.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import prod

from .field import Field

__all__ = [
    "Subspace", "Flag", "Decomposition", "Quotient",
    "rref", "nullspace", "solve_coordinates",
    "is_transversal", "complement", "project", "quotient",
    "enumerate_vectors", "enumerate_subspaces", "enumerate_subspaces_of",
    "gaussian_binomial",
]


def rref(field: Field, rows) -> tuple[tuple[int, ...], ...]:
    """Reduced row-echelon form; returns the nonzero rows (canonical basis)."""
    mat = [list(r) for r in rows]
    if not mat:
        return ()
    ncols = len(mat[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = field.inv(mat[r][c])
        if inv != 1:
            mat[r] = [field.mul(inv, x) for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(mat[i], mat[r])]
        r += 1
        if r == len(mat):
            break
    return tuple(tuple(row) for row in mat[:r] if any(row))


def nullspace(field: Field, rows, ncols: int) -> list[tuple[int, ...]]:
    """Basis of {x : M x = 0} for the matrix M with the given rows."""
    basis = rref(field, rows)
    pivots = [next(j for j, v in enumerate(row) if v != 0) for row in basis]
    free = [j for j in range(ncols) if j not in pivots]
    out = []
    for f in free:
        vec = [0] * ncols
        vec[f] = 1
        for row, pc in zip(basis, pivots):
            vec[pc] = field.neg(row[f])
        out.append(tuple(vec))
    return out


def solve_coordinates(field: Field, rows, vec) -> tuple[int, ...] | None:
    """Coefficients c with sum(c_i * rows[i]) == vec, or None if unsolvable.

    The rows must be linearly independent for the answer to be unique.
    """
    k = len(rows)
    if k == 0:
        return () if not any(vec) else None
    aug = [[rows[i][j] for i in range(k)] + [vec[j]] for j in range(len(vec))]
    red = rref(field, aug)
    sol = [0] * k
    for row in red:
        pc = next(j for j, v in enumerate(row) if v != 0)
        if pc == k:
            return None  # inconsistent
        sol[pc] = row[k]
        # independence of rows guarantees no free variables among c
    return tuple(sol)


@dataclass(frozen=True)
class Subspace:
    """A subspace of F_q^ambient in canonical reduced-echelon basis form."""

    field: Field
    ambient: int
    basis: tuple[tuple[int, ...], ...]

    # -- constructors ------------------------------------------------------

    @classmethod
    def span(cls, field: Field, ambient: int, vectors) -> "Subspace":
        vectors = list(vectors)
        for v in vectors:
            if len(v) != ambient:
                raise ValueError(f"vector length {len(v)} != ambient dimension {ambient}")
        return cls(field, ambient, rref(field, vectors))

    @classmethod
    def zero(cls, field: Field, ambient: int) -> "Subspace":
        return cls(field, ambient, ())

    @classmethod
    def full(cls, field: Field, ambient: int) -> "Subspace":
        eye = tuple(tuple(1 if i == j else 0 for j in range(ambient)) for i in range(ambient))
        return cls(field, ambient, eye)

    # -- basic queries -----------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def is_full(self) -> bool:
        return len(self.basis) == self.ambient

    def sort_key(self):
        return (len(self.basis), self.basis)

    def _reduce(self, vec):
        """Residue of vec after reduction against the echelon basis."""
        v = list(vec)
        for row in self.basis:
            pc = next(j for j, x in enumerate(row) if x != 0)
            c = v[pc]
            if c != 0:
                f = self.field
                v = [f.sub(x, f.mul(c, y)) for x, y in zip(v, row)]
        return v

    def contains(self, vec) -> bool:
        if len(vec) != self.ambient:
            raise ValueError("ambient dimension mismatch")
        return not any(self._reduce(vec))

    def coordinates(self, vec) -> tuple[int, ...] | None:
        """Coefficients of vec over the canonical basis, or None if outside."""
        if len(vec) != self.ambient:
            raise ValueError("ambient dimension mismatch")
        v = list(vec)
        coords = []
        f = self.field
        for row in self.basis:
            pc = next(j for j, x in enumerate(row) if x != 0)
            c = v[pc]
            coords.append(c)
            if c != 0:
                v = [f.sub(x, f.mul(c, y)) for x, y in zip(v, row)]
        return tuple(coords) if not any(v) else None

    def contains_subspace(self, other: "Subspace") -> bool:
        self._check_compatible(other)
        return all(self.contains(r) for r in other.basis)

    def _check_compatible(self, other: "Subspace") -> None:
        if self.ambient != other.ambient or self.field != other.field:
            raise ValueError("subspaces live in different ambient spaces")

    # -- lattice operations --------------------------------------------------

    def sum(self, other: "Subspace") -> "Subspace":
        self._check_compatible(other)
        return Subspace(self.field, self.ambient, rref(self.field, self.basis + other.basis))

    def intersect(self, other: "Subspace") -> "Subspace":
        """Zassenhaus: rows [a|a] for a in A, [b|0] for b in B; the right
        halves of the reduced rows whose left half vanished span A∩B."""
        self._check_compatible(other)
        n = self.ambient
        rows = [tuple(r) + tuple(r) for r in self.basis]
        rows += [tuple(r) + (0,) * n for r in other.basis]
        red = rref(self.field, rows)
        inter = [r[n:] for r in red if not any(r[:n])]
        return Subspace(self.field, n, rref(self.field, inter))

    def is_opposite(self, other: "Subspace") -> bool:
        """True iff self ∩ other = 0 and self + other is the whole space."""
        self._check_compatible(other)
        s = len(rref(self.field, self.basis + other.basis))
        return s == self.ambient and s == self.dim + other.dim

    # -- enumeration ----------------------------------------------------------

    def vectors(self):
        """All q**dim vectors, coefficients over the basis counted base q
        (first basis row least significant); the zero vector comes first."""
        f = self.field
        q = f.q
        k = self.dim
        for idx in range(q**k):
            v = [0] * self.ambient
            rem = idx
            for row in self.basis:
                c = rem % q
                rem //= q
                if c != 0:
                    v = [f.add(x, f.mul(c, y)) for x, y in zip(v, row)]
            yield tuple(v)

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient}, basis={self.basis})"


@dataclass(frozen=True)
class Flag:
    """A chain {0} = V_0 < V_1 < ... < V_(t+1) = top of subspaces."""

    members: tuple[Subspace, ...]

    def __post_init__(self):
        ms = self.members
        if len(ms) < 2:
            raise ValueError("a flag needs at least the zero space and the top space")
        if not ms[0].is_zero():
            raise ValueError("flag must start with the zero subspace")
        for a, b in zip(ms, ms[1:]):
            if not (b.contains_subspace(a) and a.dim < b.dim):
                raise ValueError(
                    f"flag members must strictly increase: dim {a.dim} !< dim {b.dim}"
                )

    @property
    def top(self) -> Subspace:
        return self.members[-1]

    @property
    def field(self) -> Field:
        return self.top.field

    def __len__(self) -> int:
        return len(self.members)

    def __getitem__(self, i: int) -> Subspace:
        return self.members[i]


def is_transversal(a: Subspace, flag: Flag) -> bool:
    """True iff for every member B of the flag, a∩B = 0 or a+B = top."""
    top_dim = flag.top.dim
    f = a.field
    for b in flag.members:
        s = len(rref(f, a.basis + b.basis))
        inter_dim = a.dim + b.dim - s
        if inter_dim != 0 and s != top_dim:
            return False
    return True


def complement(a: Subspace, within: Subspace, vector_order=None) -> Subspace:
    """A complement C with a ⊕ C = within.

    Deterministic greedy extension over the canonical vector enumeration of
    ``within``; a different policy may be supplied as an iterable of
    candidate vectors.
    """
    if not within.contains_subspace(a):
        raise ValueError("complement: first subspace is not contained in the second")
    f = a.field
    working = list(a.basis)
    picked = []
    target = within.dim - a.dim
    candidates = within.vectors() if vector_order is None else vector_order
    for v in candidates:
        if len(picked) == target:
            break
        red = rref(f, working + [list(v)])
        if len(red) > len(working):
            working = list(red)
            picked.append(v)
    if len(picked) != target:
        raise ValueError("complement: candidate vectors did not span a complement")
    return Subspace.span(f, a.ambient, picked)


@dataclass(frozen=True)
class Decomposition:
    """An ordered direct-sum decomposition of an ambient subspace."""

    parts: tuple[Subspace, ...]
    ambient: Subspace

    def __post_init__(self):
        f = self.ambient.field
        total = sum(p.dim for p in self.parts)
        stacked = [row for p in self.parts for row in p.basis]
        if total != self.ambient.dim or len(rref(f, stacked)) != total:
            raise ValueError("parts do not form a direct-sum decomposition of the ambient")
        for p in self.parts:
            if not self.ambient.contains_subspace(p):
                raise ValueError("decomposition part not contained in ambient")

    def stacked_basis(self) -> list[tuple[int, ...]]:
        return [row for p in self.parts for row in p.basis]


def project(vec, decomp: Decomposition, index: int):
    """Component of vec in decomp.parts[index]; the components sum to vec."""
    if not 0 <= index < len(decomp.parts):
        raise IndexError(f"decomposition has no part {index}")
    f = decomp.ambient.field
    rows = decomp.stacked_basis()
    coords = solve_coordinates(f, rows, vec)
    if coords is None:
        raise ValueError("vector does not lie in the decomposed ambient space")
    out = [0] * len(vec)
    offset = sum(p.dim for p in decomp.parts[:index])
    part = decomp.parts[index]
    for c, row in zip(coords[offset : offset + part.dim], part.basis):
        if c != 0:
            out = [f.add(x, f.mul(c, y)) for x, y in zip(out, row)]
    return tuple(out)


class Quotient:
    """The quotient total/sub realized through a complement section.

    ``push`` maps ambient vectors of ``total`` to coordinate vectors of
    F_q^dim; ``lift`` is the linear section with image the chosen complement,
    so push(lift(x)) == x and push is linear with kernel ``sub``.
    """

    def __init__(self, total: Subspace, sub: Subspace, section: Subspace):
        self.total = total
        self.sub = sub
        self.section = section
        self.field = total.field
        self._rows = list(sub.basis) + list(section.basis)

    @property
    def dim(self) -> int:
        return self.section.dim

    def push(self, vec) -> tuple[int, ...]:
        coords = solve_coordinates(self.field, self._rows, vec)
        if coords is None:
            raise ValueError("vector does not lie in the total space of the quotient")
        return tuple(coords[self.sub.dim :])

    def lift(self, qvec) -> tuple[int, ...]:
        f = self.field
        out = [0] * self.total.ambient
        for c, row in zip(qvec, self.section.basis):
            if c != 0:
                out = [f.add(x, f.mul(c, y)) for x, y in zip(out, row)]
        return tuple(out)

    def push_subspace(self, s: Subspace) -> Subspace:
        return Subspace.span(self.field, self.dim, [self.push(r) for r in s.basis])

    def lift_subspace(self, t: Subspace) -> Subspace:
        """Full preimage in the total space (contains ``sub``)."""
        rows = list(self.sub.basis) + [self.lift(r) for r in t.basis]
        return Subspace.span(self.field, self.total.ambient, rows)


def quotient(total: Subspace, sub: Subspace, section: Subspace | None = None) -> Quotient:
    """Quotient-space handle for total/sub with push/lift maps."""
    if not total.contains_subspace(sub):
        raise ValueError("quotient: subspace is not contained in the total space")
    if section is None:
        section = complement(sub, total)
    else:
        if not total.contains_subspace(section):
            raise ValueError("quotient: section not contained in the total space")
        if section.dim != total.dim - sub.dim or section.intersect(sub).dim != 0:
            raise ValueError("quotient: section is not a complement of the subspace")
    return Quotient(total, sub, section)


def enumerate_vectors(field: Field, dim: int):
    """All q**dim vectors; coordinate 0 is the least significant digit."""
    q = field.q
    for idx in range(q**dim):
        yield tuple((idx // q**i) % q for i in range(dim))


def enumerate_subspaces(field: Field, ambient_dim: int, k: int):
    """All k-dimensional subspaces of F_q^ambient_dim, each exactly once.

    Iterates reduced-echelon matrices directly: pivot columns run through
    combinations in lexicographic order, free entries count base q.
    """
    if not 0 <= k <= ambient_dim:
        raise ValueError(f"subspace dimension {k} outside [0, {ambient_dim}]")
    if k == 0:
        yield Subspace.zero(field, ambient_dim)
        return
    q = field.q
    for pivots in combinations(range(ambient_dim), k):
        pivot_set = set(pivots)
        free_cells = [
            (i, j)
            for i in range(k)
            for j in range(pivots[i] + 1, ambient_dim)
            if j not in pivot_set
        ]
        for counter in range(q ** len(free_cells)):
            rows = [[0] * ambient_dim for _ in range(k)]
            for i, pc in enumerate(pivots):
                rows[i][pc] = 1
            rem = counter
            for (i, j) in free_cells:
                rows[i][j] = rem % q
                rem //= q
            yield Subspace(field, ambient_dim, tuple(tuple(r) for r in rows))


def enumerate_subspaces_of(space: Subspace, k: int):
    """All k-dimensional subspaces of an arbitrary subspace, deterministically."""
    f = space.field
    if space.is_full():
        yield from enumerate_subspaces(f, space.ambient, k)
        return
    for inner in enumerate_subspaces(f, space.dim, k):
        rows = []
        for r in inner.basis:
            v = [0] * space.ambient
            for c, b in zip(r, space.basis):
                if c != 0:
                    v = [f.add(x, f.mul(c, y)) for x, y in zip(v, b)]
            rows.append(tuple(v))
        yield Subspace.span(f, space.ambient, rows)


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of F_q^n."""
    if k < 0 or k > n:
        return 0
    num = prod(q**n - q**i for i in range(k))
    den = prod(q**k - q**i for i in range(k))
    return num // den
