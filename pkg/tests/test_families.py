import math
from fractions import Fraction

import pytest

from approxstruct import (SetSpecError, gen_factorial_blocks, gen_mth_power_blocks, gen_periodic,
                          gen_pow2_blocks, gen_remark26_blocks, gen_sparse_blocks, gen_squared_seq,
                          gen_squarefree, generate)
from approxstruct.families import squared_seq_terms


def test_factorial_blocks():
    assert gen_factorial_blocks(10).intervals == ((1, 4), (6, 10))
    assert gen_factorial_blocks(1).intervals == ((1, 1),)
    A = gen_factorial_blocks(300)
    assert A.intersect_window(24, 48).count == 25 and A.intersect_window(120, 240).count == 121
    big = gen_factorial_blocks(math.factorial(60))
    assert big.member(math.factorial(59) * 2) and not big.member(math.factorial(59) * 2 + 1)


def test_squared_seq():
    A = gen_squared_seq(2, Fraction(1, 2), 1, 10 ** 5)
    assert A.intervals == ((4, 9), (16, 25), (256, 289), (65536, 66049))
    assert not gen_squared_seq(2, Fraction(1, 2), 1, 3)
    assert gen_squared_seq(3, Fraction(1, 2), 1, 100).intervals[0] == (9, 16)
    assert squared_seq_terms(2, 4) == [2, 4, 16, 256]
    with pytest.raises(ValueError):
        gen_squared_seq(2, 1, Fraction(1, 2), 100)


def test_squared_seq_general_exponents():
    # r=1/3, s=1/2: blocks [a**6, floor((a**2 + 1)**3)]
    A = gen_squared_seq(2, Fraction(1, 3), Fraction(1, 2), 10 ** 9)
    assert A.intervals[:2] == ((64, 125), (4096, 4913))


def test_pow2_blocks():
    assert not gen_pow2_blocks(Fraction(2, 5), 4)
    A = gen_pow2_blocks(Fraction(2, 5), 2 ** 200)
    for n in (3, 50, 199):
        lo = 2 ** n + 1
        hi = A.predecessor(2 ** (n + 1))
        # hi is the floor of 2**(n + 2/5)
        assert hi ** 5 <= 2 ** (5 * n + 2) < (hi + 1) ** 5 and A.member(lo) and not A.member(lo - 1)


def test_sparse_blocks():
    assert gen_sparse_blocks(2, 10 ** 7).intervals == ((2, 4), (65, 130), (2197001, 4394002))
    assert gen_sparse_blocks(2, 3).intervals == ((2, 3),)
    assert not gen_sparse_blocks(2, 1)


def test_mth_power_blocks():
    A = gen_mth_power_blocks(2, Fraction(1, 5), 200)
    assert (101, 104) in A.intervals
    assert not A.member(2)  # block for n=1 is empty
    assert not gen_mth_power_blocks(2, Fraction(1, 5), 1)
    for lo, hi in gen_mth_power_blocks(3, Fraction(1, 2), 10 ** 6).intervals:
        n = round((lo - 1) ** (1 / 3))
        assert lo == n ** 3 + 1 and 8 * hi < (2 * n + 1) ** 3 <= 8 * (hi + 1)


def test_squarefree():
    assert gen_squarefree(10).intervals == ((1, 3), (5, 7), (10, 10))
    assert gen_squarefree(1).intervals == ((1, 1),)
    assert gen_squarefree(10 ** 6).count == 607926
    small = gen_squarefree(2000)
    brute = {x for x in range(1, 2001) if all(x % (p * p) for p in range(2, 45))}
    assert set(small) == brute


def test_remark26_and_periodic():
    assert gen_remark26_blocks(10 ** 5).intervals == ((4, 4), (16, 32), (256, 768), (65536, 10 ** 5))
    assert not gen_remark26_blocks(3)
    P = gen_periodic(3, [0, 1], 30)
    assert set(P) == {x for x in range(1, 31) if x % 3 in (0, 1)}


def test_generate_by_name():
    assert generate("pow2-blocks", {"delta": "2/5"}, 100) == gen_pow2_blocks(Fraction(2, 5), 100)
    assert generate("squared-seq", {"a1": 2, "r": "1/2", "s": 1}, 10 ** 5).count > 0
    with pytest.raises(SetSpecError):
        generate("no-such-family", {}, 10)
    with pytest.raises(SetSpecError):
        generate("pow2-blocks", {}, 10)
    with pytest.raises(SetSpecError):
        generate("sparse-blocks", {"j": "1/2"}, 10)
