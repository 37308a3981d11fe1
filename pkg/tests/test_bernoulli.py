from fractions import Fraction

import pytest

from csfree.bernoulli import bernoulli, modified_bernoulli


def akiyama_tanigawa(n):
    """Independent oracle for B_0..B_n (B_1 = +1/2 convention; flip B_1)."""
    a = [Fraction(0)] * (n + 1)
    out = []
    for m in range(n + 1):
        a[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
        out.append(a[0])
    out[1] = -out[1]
    return out


def test_against_independent_oracle():
    oracle = akiyama_tanigawa(40)
    for n in range(41):
        assert bernoulli(n) == oracle[n], n


def test_known_values():
    assert bernoulli(0) == 1
    assert bernoulli(1) == Fraction(-1, 2)
    assert bernoulli(2) == Fraction(1, 6)
    assert bernoulli(12) == Fraction(-691, 2730)


def test_odd_vanish():
    assert all(bernoulli(n) == 0 for n in range(3, 40, 2))


def test_modified_values():
    assert modified_bernoulli(2) == Fraction(1, 24)
    assert modified_bernoulli(4) == Fraction(-1, 2880)
    assert modified_bernoulli(6) == Fraction(1, 181440)


def test_argument_errors():
    with pytest.raises(ValueError):
        bernoulli(-1)
    for bad in (0, -2, 3):
        with pytest.raises(ValueError):
            modified_bernoulli(bad)
