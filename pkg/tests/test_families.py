import itertools
import math
import random

import pytest

from phi3forms.eisenstein import EisensteinInt, mul
from phi3forms.families import (DIRECT, TWISTED, Match, Solution, catalog, classify, compute_x,
                                expand_product, factor_element, four_factor_family, ones_tuples,
                                sporadics, three_factor_family, two_factor_family, x_from_product)
from phi3forms.polynomial import IntPolynomial
from phi3forms.primality import phi3

a, b, c, d = (IntPolynomial.var(v) for v in "abcd")


def all_selections():
    for n in (2, 3, 4):
        yield from itertools.product((DIRECT, TWISTED), repeat=n)


# --- expansions -------------------------------------------------------------

def test_expand_golden_forms():
    assert expand_product([DIRECT, DIRECT]) == (a * b - 1, a + b + 1)
    assert expand_product([DIRECT, TWISTED]) == (a - b, a * b + b + 1)
    assert expand_product([DIRECT] * 3) == (a * b * c - a - b - c - 1,
                                            a * b + a * c + b * c + a + b + c)
    assert expand_product([DIRECT, DIRECT, TWISTED]) == (a * b - a * c - b * c - c - 1,
                                                         a * b * c + a * c + b * c + a + b + 1)


def test_expand_at_ones_matches_mul_chain():
    pm, pn = expand_product([DIRECT] * 3)
    w = mul(mul(EisensteinInt(1, 1), EisensteinInt(1, 1)), EisensteinInt(1, 1))
    # (1 + z6)^2 = 3 z6, so (1 + z6)^3 = -3 + 6 z6
    assert (pm(1, 1, 1), pn(1, 1, 1)) == (w.m, w.n) == (-3, 6)


@pytest.mark.parametrize("sel", list(all_selections()), ids="/".join)
def test_expansion_matches_eisenstein_products(sel):
    pm, pn = expand_product(sel)
    rng = random.Random(hash(sel) & 0xFFFF)
    for _ in range(100):
        point = [rng.randint(-10**6, 10**6) for _ in sel]
        w = EisensteinInt(1, 0)
        for value, kind in zip(point, sel):
            w = mul(w, factor_element(value, kind))
        assert (pm(*point), pn(*point)) == (w.m, w.n)


@pytest.mark.parametrize("sel", [[DIRECT], [DIRECT] * 5, ["sideways", DIRECT]])
def test_expand_rejects_bad_selection(sel):
    with pytest.raises(ValueError):
        expand_product(sel)


# --- families ---------------------------------------------------------------

def test_two_factor_examples():
    assert two_factor_family(1) == Solution(4, (1, 2))
    sol = two_factor_family(2)
    assert sol == Solution(9, (2, 3)) and phi3(9) == 91 == 7 * 13
    assert two_factor_family(37).x == 1444
    assert phi3(1444) == phi3(37) * phi3(38)


def test_two_factor_identity_range():
    for k in range(1, 1001):
        sol = two_factor_family(k)
        assert phi3(sol.x) == phi3(k) * phi3(k + 1)


def test_three_factor_examples():
    sol = three_factor_family(2, 3)
    assert sol == Solution(16, (1, 2, 3)) and phi3(16) == 273 == 3 * 7 * 13
    assert three_factor_family(1, 2) is None
    assert three_factor_family(3, 5) is None
    with pytest.raises(ValueError):
        three_factor_family(5, 3)


def test_three_factor_identity_range():
    count = 0
    for p in range(1, 1001):
        for q in range(p, 1001):
            sol = three_factor_family(p, q)
            if sol is None:
                assert (p * q) % (p + q + 1) != 0
                continue
            count += 1
            r = p * q // (p + q + 1)
            assert sorted((p, q, r)) == list(sol.args)
            assert phi3(sol.x) == phi3(p) * phi3(q) * phi3(r)
    assert count > 100


def test_four_factor_examples():
    assert four_factor_family(3, 3, 3, 5) == 2
    assert four_factor_family(1, 2, 2, 2) is None
    assert four_factor_family(1, 39640924811, 431466989439524477,
                              135601684951723299939542158557248883821) == 39640921169
    with pytest.raises(ValueError):
        four_factor_family(1, 3, 2, 5)
    with pytest.raises(ValueError):
        four_factor_family(3, 4, 3, 5)
    with pytest.raises(ValueError):
        four_factor_family(5, 1, 2, 3)


def _family_members(k, bound):
    for p in range(1, bound + 1):
        for q in range(p, bound + 1):
            for r in range(p if k > 2 else q, bound + 1):
                dd = four_factor_family(k, p, q, r)
                if dd is not None:
                    yield p, q, r, dd


@pytest.mark.slow
@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_four_factor_identity_range(k):
    members = list(_family_members(k, 200))
    assert members
    for quad in members:
        x = compute_x(quad)
        assert x is not None
        assert phi3(x) == math.prod(phi3(v) for v in quad)


@pytest.mark.parametrize("k", [3, 4])
def test_odd_parameters_force_even_d(k):
    odd = range(1, 100, 2)
    seen = 0
    for p in odd:
        for q in odd:
            for r in odd:
                if p <= q and p <= r:
                    dd = four_factor_family(k, p, q, r)
                    if dd is not None:
                        seen += 1
                        assert dd % 2 == 0
    assert seen > 0


def test_family_2_excludes_two_mod_three():
    entries = [v for v in range(1, 100) if v % 3 == 2]
    for p, q, r in itertools.combinations_with_replacement(entries, 3):
        num = p * q * r - p - q - r
        den = p * q + p * r + q * r + p + q + r
        # 3 divides the denominator more often than the numerator
        assert num % den != 0
        assert four_factor_family(2, p, q, r) is None


# --- x from a multiset --------------------------------------------------------

def test_compute_x_examples():
    assert mul(EisensteinInt(1, 1), EisensteinInt(1, 2)) == EisensteinInt(-1, 5)
    assert compute_x([1, 2], [DIRECT, TWISTED]) == 4
    assert compute_x([2, 2, 2], [DIRECT] * 3) == 18
    assert compute_x([5, 7]) is None
    assert x_from_product([5, 7]) is None
    assert 4 * 36 * 57 - 3 == 8205


def test_compute_x_rejects_bad_sizes():
    with pytest.raises(ValueError):
        compute_x([3])
    with pytest.raises(ValueError):
        compute_x([1, 2], [DIRECT])


def test_two_paths_agree():
    rng = random.Random(7)
    agree = 0
    for _ in range(3000):
        args = [rng.randint(1, 60) for _ in range(rng.choice((2, 3, 4)))]
        for sel in itertools.product((DIRECT, TWISTED), repeat=len(args)):
            x = compute_x(args, sel)
            root = x_from_product(args)
            if x is not None and root is not None:
                assert x == root
                agree += 1
    assert agree > 50


# --- tables -----------------------------------------------------------------

def test_sporadics():
    three = sporadics(3)
    assert [(s.args, s.x) for s in three] == [((2, 2, 2), 18), ((1, 2, 5), 25), ((1, 3, 3), 22)]
    four = {s.args: s.x for s in sporadics(4)}
    assert four == {(2, 2, 2, 17): 324, (2, 2, 3, 6): 165}
    assert phi3(324) == 343 * 307 and phi3(165) == 27391
    for sol in three + sporadics(4):
        assert sol.factors_prime()
    with pytest.raises(ValueError):
        sporadics(2)


def test_ones_tuples():
    rows = ones_tuples()
    assert len(rows) == 8
    table = {s.args: s.x for s in rows}
    assert table[(1, 3, 3, 21)] == 484
    assert table[(1, 2, 2, 5)] == 67 and phi3(67) == 4557 == 3 * 7 * 7 * 31
    assert all(s.factors_prime() for s in rows)


def test_solution_invariants():
    sol = Solution(25, (5, 1, 2))
    assert sol.args == (1, 2, 5)
    with pytest.raises(ValueError):
        Solution(26, (1, 2, 5))
    with pytest.raises(ValueError):
        Solution.verified(1444, (37, 38))
    assert Solution.verified(9, (3, 2)).n == 2


# --- classification -----------------------------------------------------------

def test_classify_examples():
    cls = classify(Solution(16, (1, 2, 3)))
    assert cls.matches == (Match("family-3", (1, 2, 0)),)
    cls = classify(Solution(18, (2, 2, 2)))
    assert cls.labels == ("sporadic:2,2,2",)
    cls = classify(Solution(191, (2, 3, 3, 5)))
    assert Match("family-4.3", (1, 2, 3, 0)) in cls.matches


def test_classify_witnesses_revalidate():
    for sol in sporadics(3) + sporadics(4) + ones_tuples() + [two_factor_family(5)]:
        cls = classify(sol)
        assert cls
        for m in cls.matches:
            params = [sol.args[i] for i in m.witness]
            if m.label == "family-2":
                assert two_factor_family(params[0]) == sol
            elif m.label == "family-3":
                assert three_factor_family(params[0], params[1]) == sol
                assert params[2] == params[0] * params[1] // (params[0] + params[1] + 1)
            elif m.label.startswith("family-4."):
                k = int(m.label[-1])
                assert four_factor_family(k, *params[:3]) == params[3]
            else:
                assert m.label == "sporadic:" + ",".join(map(str, sol.args))


def test_classify_output_is_sorted():
    for sol in ones_tuples():
        matches = classify(sol).matches
        assert list(matches) == sorted(matches)


def test_classify_rejects_other_sizes():
    with pytest.raises(ValueError):
        classify(Solution(2, (2,)))


def test_catalog():
    rows = catalog()
    ids = [r["id"] for r in rows]
    assert ids[:6] == ["family-2", "family-3", "family-4.1", "family-4.2", "family-4.3",
                       "family-4.4"]
    assert rows[2]["formula"] == "d=(abc-a-b-c-2)/(ab+ac+bc+a+b+c)"
    assert sum(r["kind"] == "sporadic" for r in rows) == 5
