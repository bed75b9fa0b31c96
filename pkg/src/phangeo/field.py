"""Arithmetic in finite fields F_q, q = p**e, with an automorphism of order 1 or 2.

Elements are plain ints in ``range(q)``: the int ``a`` encodes the polynomial
``sum(c_i * x**i)`` whose coefficients are the base-p digits of ``a``
(constant term first, ``c_i = (a // p**i) % p``).  The packing is bijective
and fully reduced, so int equality is coefficient-wise equality of the
canonical representatives; 0 and 1 are the additive and multiplicative
identities in every field.

The defining modulus of F_{p**e} is fixed deterministically: among the monic
degree-e polynomials over F_p, ordered by the integer encoding of their
non-leading coefficients, the first irreducible one is chosen.  This yields
x^2+x+1 for F_4, x^2+1 for F_9, x^4+x+1 for F_16, x^2+2 for F_25,
x^3+2x+1 for F_27.

The automorphism sigma is the identity (``sigma_order == 1``) or the power
map x -> x**sqrt(q) (``sigma_order == 2``, requires even e); no other
automorphisms are offered.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import zip_longest

__all__ = ["Field", "make_field"]

# Full q x q addition tables are built below this order; larger fields fall
# back to digit-wise addition.
_ADD_TABLE_LIMIT = 256


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


# -- polynomial helpers over F_p (coefficient lists, constant term first) --


def _ptrim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _ptrim(out)


def _pmod(a: list[int], m: list[int], p: int) -> list[int]:
    a = list(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm and a:
        shift = len(a) - 1 - dm
        c = (a[-1] * inv_lead) % p
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        _ptrim(a)
    return a


def _ppowmod(a: list[int], k: int, m: list[int], p: int) -> list[int]:
    out = [1]
    base = _pmod(a, m, p)
    while k:
        if k & 1:
            out = _pmod(_pmul(out, base, p), m, p)
        base = _pmod(_pmul(base, base, p), m, p)
        k >>= 1
    return out


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = list(a), list(b)
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _is_irreducible(poly: list[int], p: int) -> bool:
    e = len(poly) - 1
    x = [0, 1]
    # x^(p^e) == x mod poly, and gcd(x^(p^(e/r)) - x, poly) = 1 for primes r | e
    xq = _ppowmod(x, p**e, poly, p)
    if _ptrim([(xi - yi) % p for xi, yi in zip_longest(xq, x, fillvalue=0)]):
        return False
    r = 2
    ee = e
    primes = set()
    while ee > 1:
        while ee % r == 0:
            primes.add(r)
            ee //= r
        r += 1
    for r in primes:
        xr = _ppowmod(x, p ** (e // r), poly, p)
        diff = [(a - b) % p for a, b in zip_longest(xr, x, fillvalue=0)]
        if len(_pgcd(poly, _ptrim(diff), p)) > 1:
            return False
    return True


def _modulus(p: int, e: int) -> tuple[int, ...]:
    """Deterministic monic irreducible of degree e over F_p (see module doc)."""
    if e == 1:
        return (0, 1)
    for enc in range(p**e):
        coeffs = [(enc // p**i) % p for i in range(e)] + [1]
        if coeffs[0] == 0:
            continue  # divisible by x
        if _is_irreducible(coeffs, p):
            return tuple(coeffs)
    raise RuntimeError(f"no irreducible polynomial found for p={p}, e={e}")


class Field:
    """The finite field F_q with q = p**e and an automorphism of order 1 or 2.

    Instances are immutable; every operation is pure, so a Field may be used
    from any number of concurrent callers.
    """

    __slots__ = (
        "p", "e", "q", "sigma_order", "modulus",
        "_exp", "_log", "_neg", "_inv", "_sig", "_add", "_ppow", "_fixed",
    )

    zero = 0
    one = 1

    def __init__(self, p: int, e: int, sigma_order: int = 1):
        if not _is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if e < 1:
            raise ValueError(f"extension degree must be >= 1, got {e}")
        if sigma_order not in (1, 2):
            raise ValueError(f"sigma_order must be 1 or 2, got {sigma_order}")
        if sigma_order == 2 and e % 2 != 0:
            raise ValueError(
                f"F_{p}^{e} has no automorphism of order two: degree {e} is odd"
            )
        self.p = p
        self.e = e
        self.q = p**e
        self.sigma_order = sigma_order
        self.modulus = _modulus(p, e)
        self._ppow = tuple(p**i for i in range(e))
        self._build_tables()

    # -- construction of lookup tables ------------------------------------

    def _encode(self, coeffs: list[int]) -> int:
        return sum(c * self._ppow[i] for i, c in enumerate(coeffs[: self.e]))

    def _decode(self, a: int) -> list[int]:
        p = self.p
        return [(a // pw) % p for pw in self._ppow]

    def _raw_mul(self, a: int, b: int) -> int:
        prod = _pmul(self._decode(a), self._decode(b), self.p)
        return self._encode(_pmod(prod, list(self.modulus), self.p) + [0] * self.e)

    def _build_tables(self) -> None:
        q = self.q
        # discrete log tables over the smallest primitive element
        exp = None
        for g in range(1, q):
            seen = [0]
            x = 1
            for _ in range(q - 1):
                seen.append(x)
                x = self._raw_mul(x, g)
            if len(set(seen)) == q:
                exp = seen[1:]  # exp[k] = g**k
                break
        assert exp is not None
        log = [0] * q
        for k, v in enumerate(exp):
            log[v] = k
        self._exp = exp
        self._log = log
        self._inv = [0] * q
        for a in range(1, q):
            self._inv[a] = exp[(q - 1 - log[a]) % (q - 1)]
        self._neg = [self._encode([(-c) % self.p for c in self._decode(a)]) for a in range(q)]
        if self.sigma_order == 2:
            s = self.p ** (self.e // 2)
            self._sig = [0] + [exp[(log[a] * s) % (q - 1)] for a in range(1, q)]
        else:
            self._sig = list(range(q))
        if q <= _ADD_TABLE_LIMIT:
            self._add = [
                [self._encode([(x + y) % self.p for x, y in zip(self._decode(a), self._decode(b))])
                 for b in range(q)]
                for a in range(q)
            ]
        else:
            self._add = None
        self._fixed = tuple(a for a in range(q) if self._sig[a] == a)

    # -- arithmetic --------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self._add is not None:
            return self._add[a][b]
        return self._encode([(x + y) % self.p for x, y in zip(self._decode(a), self._decode(b))])

    def neg(self, a: int) -> int:
        return self._neg[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self._neg[b])

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError(f"inversion of zero in F_{self.q}")
        return self._inv[a]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        if a == 0:
            return 0 if k > 0 else 1
        return self._exp[(self._log[a] * k) % (self.q - 1)]

    def sigma(self, a: int) -> int:
        """The designated automorphism: identity, or x -> x**sqrt(q)."""
        return self._sig[a]

    # -- enumeration and encoding ------------------------------------------

    def elements(self) -> range:
        """All q elements, deterministic order, zero first."""
        return range(self.q)

    def coeffs(self, a: int) -> tuple[int, ...]:
        """Coefficient vector of length e over F_p, constant term first."""
        return tuple(self._decode(a))

    def from_coeffs(self, coeffs) -> int:
        cs = list(coeffs)
        if len(cs) != self.e:
            raise ValueError(f"expected {self.e} coefficients, got {len(cs)}")
        if any(c < 0 or c >= self.p for c in cs):
            raise ValueError(f"coefficients must lie in range(0, {self.p}): {cs}")
        return self._encode(cs)

    def fixed_elements(self) -> tuple[int, ...]:
        """Elements fixed by sigma (the subfield of order sqrt(q) when order 2)."""
        return self._fixed

    @property
    def sqrt_q(self) -> int:
        if self.sigma_order != 2:
            raise ValueError("sqrt_q is only meaningful when sigma has order two")
        return self.p ** (self.e // 2)

    # -- identity ------------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Field)
            and (self.p, self.e, self.sigma_order) == (other.p, other.e, other.sigma_order)
        )

    def __hash__(self) -> int:
        return hash((self.p, self.e, self.sigma_order))

    def __repr__(self) -> str:
        sig = "id" if self.sigma_order == 1 else f"x^{self.p ** (self.e // 2)}"
        return f"Field(q={self.q}, sigma={sig})"


@lru_cache(maxsize=None)
def make_field(p: int, e: int, sigma_order: int = 1) -> Field:
    """Construct (and cache) the field F_{p**e} with the requested sigma."""
    return Field(p, e, sigma_order)
