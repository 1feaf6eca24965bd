import numpy as np
import pytest

from isogeny2.core.errors import DegreeOverflowError, SquareInFieldError
from isogeny2.field import PrimeField, adjoin_sqrt, embed, sqrt


def test_prime_field_rejects_composite_modulus() -> None:
    with pytest.raises(ValueError, match="not an odd prime"):
        PrimeField(56313)


def test_inverse_and_division(k) -> None:
    a = k(12345)
    assert a * a.inverse() == 1
    assert (a / k(7)) * 7 == a


def test_sqrt_is_canonical(k) -> None:
    root = sqrt(k(52419) ** 2)
    assert root is not None
    assert root * root == k(52419) ** 2
    assert root.coeffs <= (-root).coeffs


def test_five_is_a_square_mod_56311(k) -> None:
    root = k(5).sqrt()
    assert root is not None
    assert {int(root), int(-root)} == {52419, 56311 - 52419}


def test_alpha_presentation(alpha_field) -> None:
    alpha = alpha_field.element(np.array([0, 1]))
    assert alpha * alpha + alpha + 2 == 0
    assert alpha_field.degree == 2
    assert str(alpha_field) == "F_56311[alpha]"


def test_extension_arithmetic(alpha_field) -> None:
    x = alpha_field([53481, 50651])
    y = alpha_field([5538, 11076])
    assert (x * y) / y == x
    assert x * x.inverse() == 1
    assert x.frobenius().frobenius() == x


def test_every_prime_field_element_is_a_square_in_the_extension(k, alpha_field) -> None:
    nonsquare = k.element(k.find_nonsquare())
    assert nonsquare.sqrt() is None
    root = embed(nonsquare, alpha_field).sqrt()
    assert root is not None
    assert root * root == nonsquare


def test_adjoin_sqrt_of_a_square_raises(k101) -> None:
    with pytest.raises(SquareInFieldError):
        adjoin_sqrt(k101, 4)


def test_reducible_minimal_poly_raises(k101) -> None:
    # x^2 - 1 = (x - 1)(x + 1)
    with pytest.raises(SquareInFieldError):
        adjoin_sqrt(k101, minimal_poly=(-1, 0))


def test_tower_stops_at_degree_eight(k101) -> None:
    field = k101
    for _ in range(3):
        field, _ = adjoin_sqrt(field, field.find_nonsquare())
    assert field.degree == 8
    assert len(field.tower()) == 4
    with pytest.raises(DegreeOverflowError):
        adjoin_sqrt(field, field.find_nonsquare())


def test_embed_is_a_ring_homomorphism(k101) -> None:
    K, _ = adjoin_sqrt(k101, k101.find_nonsquare())
    a, b = k101(17), k101(55)
    assert embed(a * b + a, K) == embed(a, K) * embed(b, K) + embed(a, K)


def test_int_of_extension_element_outside_prime_field_raises(alpha_field) -> None:
    with pytest.raises(ValueError, match="not in the prime field"):
        int(alpha_field([1, 1]))
