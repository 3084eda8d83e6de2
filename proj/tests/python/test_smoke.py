from fractions import Fraction
from itertools import permutations, product

import pytest

import easyqg


def s_n_average(n, i, j):
    # Brute-force average over permutation matrices.
    total = 0
    perms = list(permutations(range(1, n + 1)))
    for g in perms:
        total += all(g[a - 1] == b for a, b in zip(i, j))
    return Fraction(total, len(perms))


def test_partitions():
    assert easyqg.enumerate_all(3) == ["1|2|3", "1,2|3", "1,3|2", "1|2,3", "1,2,3"]
    assert easyqg.enumerate_family("O+", 4) == ["1,2|3,4", "1,4|2,3"]
    assert easyqg.enumerate_family("O", 3) == []
    assert easyqg.join("1,2|3,4", "1|2,3|4") == "1,2,3,4"
    assert easyqg.meet("1,2|3", "1|2,3") == "1|2|3"
    assert easyqg.kernel([1, 2, 1]) == "1,3|2"
    assert not easyqg.is_noncrossing("1,3|2,4")
    assert easyqg.is_balanced("1,4|2,3")
    assert easyqg.mobius(None, 3, "1|2|3", "1,2,3") == 2


def test_weingarten():
    assert easyqg.gram("S", 2, 3) == [[9, 3], [3, 3]]
    table = easyqg.weingarten_table("S", 2, 3)
    assert table["weingarten"] == [[Fraction(1, 6), Fraction(-1, 6)], [Fraction(-1, 6), Fraction(1, 2)]]
    assert table["mobius"] == [[1, -1], [0, 1]]
    assert easyqg.haar_integral("S", 3, [1], [1]) == Fraction(1, 3)
    assert easyqg.asymptotic_residual("O+", 4, 5) == Fraction(1, 24)
    assert easyqg.ck_constant("S", 2, 64)["ck"] == 8


@pytest.mark.parametrize("i,j", [(i, j) for i in product([1, 2], repeat=3) for j in product([1, 2, 3], repeat=3)])
def test_haar_matches_brute_force(i, j):
    assert easyqg.haar_integral("S", 4, list(i), list(j)) == s_n_average(4, i, j)
    assert easyqg.group_integral_exact("S", 4, list(i), list(j)) == s_n_average(4, i, j)


def test_errors_carry_codes():
    with pytest.raises(easyqg.EasyqgError) as info:
        easyqg.haar_integral("S", 1, [1, 1], [1, 1])
    assert info.value.code == "singular"
    with pytest.raises(easyqg.EasyqgError) as info:
        easyqg.enumerate_all(0)
    assert info.value.code == "size_limit"
    with pytest.raises(ValueError):
        easyqg.join("1,2", "1|2|3")


def test_cumulants():
    assert easyqg.moments_to_cumulants("free", [0, 1, 0, 2]) == [0, 1, 0, 0]
    assert easyqg.moments_to_cumulants("half", ["0", "1", "0", "2"]) == [0, 1, 0, 0]
    assert easyqg.cumulants_to_moments("classical", [0, 1, 0, 0, 0, 0])[-1] == 15
    assert [easyqg.law_moments(k, 0, 1, 6)[-1] for k in ("gaussian", "semicircle", "rayleigh_sym")] == [15, 5, 6]
    mixed = {(1,): 0, (2,): 0, (1, 1): 1, (1, 2): Fraction(1, 2), (2, 1): Fraction(1, 2), (2, 2): 2}
    assert easyqg.cumulants_to_moments("classical", easyqg.moments_to_cumulants("classical", mixed)) == mixed


def test_models():
    assert easyqg.urn_gap([1, -1, 1, -1], [1, 2]) == {"lhs": Fraction(-1, 3), "rhs": 0, "gap": Fraction(1, 3)}
    assert easyqg.sphere_gap(10, [1, 1, 1, 1])["gap"] == Fraction(1, 2)
    assert easyqg.parity_normal_form([1, 2, 2, 1]) == [1, 1, 2, 2]
    assert easyqg.parity_normal_form([1, 2, 3]) is None
    assert easyqg.half_model_moment({1: [1, 2], 2: [1, 2]}, [1, 2, 2, 1]) == 1
    est, se = easyqg.group_integral_mc("O", 4, [1, 1], [1, 1], samples=20000, seed=3)
    assert abs(est - 0.25) <= 4 * se
    assert easyqg.group_integral_mc("O", 4, [1, 1], [1, 1], samples=20000, seed=3) == (est, se)


def test_suites():
    assert easyqg.verify_west("O+", 4)["ok"]
    assert easyqg.verify_moebius("H*", 4)["ok"]
    assert easyqg.verify_half_model(4)["ok"]
