import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from phi3forms.eisenstein import (EisensteinInt, RecognitionResult, conj, mul, norm, recognize,
                                  table_entry, unit)

E = EisensteinInt
ints = st.integers(min_value=-10**30, max_value=10**30)
elements = st.builds(EisensteinInt, ints, ints)


def test_mul_examples():
    assert mul(E(1, 1), E(2, 1)) == E(1, 4)
    assert mul(E(0, 1), E(0, 1)) == E(-1, 1)
    assert mul(E(1, 0), E(17, -4)) == E(17, -4)


def test_mul_matches_printed_two_factor_form():
    for a in range(1, 30):
        for b in range(1, 30):
            assert mul(E(a, 1), E(b, 1)) == E(a * b - 1, a + b + 1)
            assert mul(E(a, 1), E(1, b)) == E(a - b, a * b + b + 1)


def test_mul_agrees_with_complex_numbers():
    z6 = complex(0.5, 3 ** 0.5 / 2)
    rng = random.Random(1)
    for _ in range(500):
        u = E(rng.randint(-50, 50), rng.randint(-50, 50))
        v = E(rng.randint(-50, 50), rng.randint(-50, 50))
        w = mul(u, v)
        expected = (u.m + u.n * z6) * (v.m + v.n * z6)
        assert abs((w.m + w.n * z6) - expected) < 1e-6
        assert abs(abs(u.m + u.n * z6) ** 2 - norm(u)) < 1e-6


def test_conj_examples():
    for x in range(10):
        assert conj(E(x, 1)) == E(x + 1, -1)
    assert conj(E(0, 0)) == E(0, 0)
    assert conj(E(5, 7)) == E(12, -7)
    assert conj(conj(E(5, 7))) == E(5, 7)


def test_norm_examples():
    assert norm(E(2, 1)) == 7
    assert norm(E(1, 4)) == 21 == 3 * 7
    assert all(norm(unit(k)) == 1 for k in range(6))


def test_units():
    expected = [E(1, 0), E(0, 1), E(-1, 1), E(-1, 0), E(0, -1), E(1, -1)]
    assert [unit(k) for k in range(6)] == expected
    assert mul(unit(3), unit(3)) == E(1, 0)
    power = E(1, 0)
    for k in range(6):
        assert power == unit(k)
        power = mul(power, unit(1))
    assert power == E(1, 0)
    for bad in (-1, 6):
        with pytest.raises(ValueError):
            unit(bad)


def test_norm_is_multiplicative_on_many_pairs():
    rng = random.Random(2024)
    for _ in range(10_000):
        u = E(rng.randint(-10**12, 10**12), rng.randint(-10**12, 10**12))
        v = E(rng.randint(-10**12, 10**12), rng.randint(-10**12, 10**12))
        assert norm(mul(u, v)) == norm(u) * norm(v)


@given(elements, elements)
def test_ring_laws(u, v):
    assert mul(u, v) == mul(v, u)
    assert norm(mul(u, v)) == norm(u) * norm(v)
    assert conj(mul(u, v)) == mul(conj(u), conj(v))
    assert norm(conj(u)) == norm(u)
    assert norm(u) >= 0 and (norm(u) == 0) == (u == E(0, 0))


@given(elements, elements, elements)
def test_associative(u, v, w):
    assert mul(mul(u, v), w) == mul(u, mul(v, w))


def test_str():
    assert str(E(3, -4)) == "3 + -4*z6"


# --- recognizer -------------------------------------------------------------

def test_recognize_examples():
    assert recognize(E(1, 4)).x == 4
    assert recognize(E(5, 7)) is None
    assert recognize(E(0, 0)) is None
    assert recognize(E(-1, 5)) == RecognitionResult(4, 1)


def test_table_matches_direct_products():
    for x in range(0, 50):
        for k in range(6):
            assert table_entry(x, k) == mul(unit(k), E(x, 1))
            assert table_entry(x, 6 + k) == mul(unit(k), conj(E(x, 1)))


def test_recognize_table_roundtrip():
    for x in range(0, 2001):
        for idx in range(12):
            hit = recognize(table_entry(x, idx))
            assert hit is not None and hit.x == x
            if x >= 2:
                # no repetitions among the twelve entries
                assert hit.form_index == idx


def test_form_index_for_repeating_rows():
    # x = 0: the right column repeats the left shifted by two
    assert [recognize(table_entry(0, i)).form_index for i in range(12)] == \
        [0, 1, 2, 3, 4, 5, 4, 5, 0, 1, 2, 3]
    # x = 1: shifted by one
    assert [recognize(table_entry(1, i)).form_index for i in range(12)] == \
        [0, 1, 2, 3, 4, 5, 5, 0, 1, 2, 3, 4]


def _condition(u):
    return 1 in (abs(u.m), abs(u.n), abs(u.m + u.n))


@given(elements)
def test_recognize_soundness_and_symmetry(u):
    hit = recognize(u)
    assert (hit is not None) == _condition(u)
    other = recognize(conj(u))
    assert (other is None) == (hit is None)
    if hit is not None:
        assert hit.x >= 0
        assert table_entry(hit.x, hit.form_index) == u
        assert norm(u) == hit.x ** 2 + hit.x + 1
        assert other.x == hit.x


@given(st.integers(min_value=0, max_value=10**40), st.integers(0, 5), st.booleans())
def test_recognize_big_coordinates(x, k, conjugate):
    base = E(x, 1)
    u = mul(unit(k), conj(base) if conjugate else base)
    assert recognize(u).x == x


def test_recognize_uniqueness_on_small_box():
    # every element satisfying the condition maps to the x fixed by its norm
    for m in range(-40, 41):
        for n in range(-40, 41):
            u = E(m, n)
            hit = recognize(u)
            if hit is None:
                assert not _condition(u)
                continue
            roots = [x for x in range(0, 100) if x * x + x + 1 == norm(u)]
            assert roots == [hit.x]
