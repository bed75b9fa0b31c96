import random

import pytest

from phangeo.field import Field


def naive_smith(rows: list[list[int]]) -> list[int]:
    """Textbook dense Smith normal form, written independently of the
    package engines: repeatedly move a minimal-magnitude entry to the pivot,
    shrink remainders until the pivot divides its row and column, clear
    them, and finally redistribute the diagonal into invariant factors."""
    a = [list(r) for r in rows]
    m = len(a)
    n = len(a[0]) if a else 0
    t = 0
    diag = []
    while t < min(m, n):
        piv = None
        for i in range(t, m):
            for j in range(t, n):
                if a[i][j] != 0 and (piv is None or abs(a[i][j]) < abs(a[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        i, j = piv
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        while True:
            changed = False
            for i in range(t + 1, m):
                if a[i][t] % a[t][t] != 0:
                    q = a[i][t] // a[t][t]
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                    a[t], a[i] = a[i], a[t]
                    changed = True
                    break
            if changed:
                continue
            for j in range(t + 1, n):
                if a[t][j] % a[t][t] != 0:
                    q = a[t][j] // a[t][t]
                    for row in a:
                        row[j] -= q * row[t]
                    for row in a:
                        row[t], row[j] = row[j], row[t]
                    changed = True
                    break
            if not changed:
                break
        for i in range(t + 1, m):
            q = a[i][t] // a[t][t]
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[t])]
        for j in range(t + 1, n):
            q = a[t][j] // a[t][t]
            if q:
                for row in a:
                    row[j] -= q * row[t]
        diag.append(abs(a[t][t]))
        t += 1
    from math import gcd

    ds = sorted(d for d in diag if d)
    changed = True
    while changed:
        changed = False
        for i in range(len(ds)):
            for j in range(i + 1, len(ds)):
                if ds[j] % ds[i]:
                    g = gcd(ds[i], ds[j])
                    ds[i], ds[j] = g, ds[i] * ds[j] // g
                    changed = True
        ds.sort()
    return ds


def random_hermitian_gram(rng: random.Random, field: Field, k: int):
    g = [[0] * k for _ in range(k)]
    for i in range(k):
        g[i][i] = rng.choice(field.fixed_elements())
        for j in range(i + 1, k):
            v = rng.randrange(field.q)
            g[i][j] = v
            g[j][i] = field.sigma(v)
    return tuple(tuple(r) for r in g)


@pytest.fixture
def rng():
    return random.Random(12345)
