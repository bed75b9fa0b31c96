import pytest

from phangeo.field import make_field


def test_make_field_errors():
    with pytest.raises(ValueError):
        make_field(4, 1)  # non-prime characteristic
    with pytest.raises(ValueError):
        make_field(3, 1, 2)  # no order-2 automorphism of a prime field
    with pytest.raises(ValueError):
        make_field(2, 3, 2)  # odd degree
    with pytest.raises(ValueError):
        make_field(5, 0)


def test_prime_field_basics():
    f2 = make_field(2, 1)
    assert list(f2.elements()) == [0, 1]
    assert f2.sigma_order == 1 and f2.sigma(1) == 1
    f5 = make_field(5, 1)
    assert f5.mul(2, 3) == 1  # 6 mod 5
    assert f5.inv(3) == 2 and f5.mul(3, f5.inv(3)) == 1
    f7 = make_field(7, 1)
    assert f7.inv(3) == 5  # 3*5 = 15 = 1 mod 7
    with pytest.raises(ZeroDivisionError):
        f5.inv(0)


def test_deterministic_moduli():
    # first irreducible monic polynomial in the documented enumeration order
    assert make_field(2, 2, 2).modulus == (1, 1, 1)       # x^2+x+1
    assert make_field(3, 2, 2).modulus == (1, 0, 1)       # x^2+1
    assert make_field(2, 4, 2).modulus == (1, 1, 0, 0, 1)  # x^4+x+1
    assert make_field(5, 2, 2).modulus == (2, 0, 1)       # x^2+2
    assert make_field(3, 3).modulus == (1, 2, 0, 1)       # x^3+2x+1


def test_f4_structure():
    f4 = make_field(2, 2, 2)
    w = f4.from_coeffs((0, 1))  # the generator x
    assert f4.mul(w, w) == f4.add(w, 1)  # x^2 = x+1 mod x^2+x+1
    assert f4.sigma(w) == f4.mul(w, w)   # Frobenius x -> x^2
    assert len(set(f4.elements())) == 4


def test_field_axioms_exhaustive():
    for (p, e, so) in [(2, 1, 1), (3, 1, 1), (2, 2, 2), (5, 1, 1), (3, 2, 2), (7, 1, 1)]:
        f = make_field(p, e, so)
        els = list(f.elements())
        for a in els:
            assert f.add(a, 0) == a and f.mul(a, 1) == a
            assert f.add(a, f.neg(a)) == 0
            if a != 0:
                assert f.mul(a, f.inv(a)) == 1
        for a in els:
            for b in els:
                assert f.add(a, b) == f.add(b, a)
                assert f.mul(a, b) == f.mul(b, a)
        if f.q <= 9:
            for a in els:
                for b in els:
                    for c in els:
                        assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
                        assert f.mul(a, f.mul(b, c)) == f.mul(f.mul(a, b), c)


def test_sigma_is_an_involutive_automorphism():
    for (p, e) in [(2, 2), (3, 2), (2, 4), (5, 2), (3, 4)]:
        f = make_field(p, e, 2)
        els = list(f.elements())
        for a in els:
            assert f.sigma(f.sigma(a)) == a
        for a in els:
            for b in els:
                assert f.sigma(f.add(a, b)) == f.add(f.sigma(a), f.sigma(b))
                assert f.sigma(f.mul(a, b)) == f.mul(f.sigma(a), f.sigma(b))
        # fixed field has exactly sqrt(q) elements
        assert len(f.fixed_elements()) == f.sqrt_q


def test_identity_sigma_fixes_everything():
    f9 = make_field(3, 2, 1)
    assert all(f9.sigma(a) == a for a in f9.elements())
    assert f9 != make_field(3, 2, 2)  # sigma is part of the field identity


def test_coeff_roundtrip():
    f27 = make_field(3, 3)
    for a in f27.elements():
        cs = f27.coeffs(a)
        assert len(cs) == 3
        assert f27.from_coeffs(cs) == a
    with pytest.raises(ValueError):
        f27.from_coeffs((1, 2))
    with pytest.raises(ValueError):
        f27.from_coeffs((3, 0, 0))


def test_enumeration_is_deterministic_zero_first():
    f9 = make_field(3, 2, 2)
    els = list(f9.elements())
    assert els[0] == 0 and len(els) == 9 and len(set(els)) == 9


def test_pow_matches_repeated_multiplication():
    f8 = make_field(2, 3)
    for a in f8.elements():
        acc = 1
        for k in range(7):
            assert f8.pow(a, k) == acc
            acc = f8.mul(acc, a)
