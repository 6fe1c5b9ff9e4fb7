import pytest
from hypothesis import given, settings, strategies as st

from approxstruct import IntegerSet, ceil_log2, ceil_root, log_image, normalize, power_image


@pytest.mark.parametrize("x, expected", [(1, 0), (16, 4), (17, 5), (2 ** 200 + 1, 201)])
def test_ceil_log2(x, expected):
    assert ceil_log2(x) == expected


@pytest.mark.parametrize("x, p, q, expected", [(10, 1, 2, 4), (16, 1, 2, 4), (2 ** 10, 3, 2, 32768)])
def test_ceil_root_examples(x, p, q, expected):
    if p > q:
        # exponents above one are outside the transform domain
        with pytest.raises(ValueError):
            ceil_root(x, p, q)
        assert expected ** 2 == x ** 3
    else:
        assert ceil_root(x, p, q) == expected


def test_image_examples():
    assert log_image(normalize([(5, 16)])).intervals == ((3, 4),)
    assert log_image(normalize([(1, 1)])).intervals == ((0, 0),)
    for n in range(1, 40):
        assert log_image(normalize([(2 ** n + 1, 2 ** (n + 1))])).intervals == ((n + 1, n + 1),)
    assert power_image(normalize([(101, 104)]), 1, 2).intervals == ((11, 11),)
    assert power_image(normalize([(77, 77)]), 1, 1).intervals == ((77, 77),)
    assert power_image(normalize([(4, 9)]), 1, 2).intervals == ((2, 3),)


@settings(max_examples=150, deadline=None)
@given(st.lists(st.tuples(st.integers(1, 3000), st.integers(0, 60)), max_size=8),
       st.sampled_from([(1, 2), (1, 3), (2, 3), (3, 4)]))
def test_images_match_elementwise(raw, pq):
    A = normalize([(lo, lo + w) for lo, w in raw])
    p, q = pq
    xs = A.elements()
    assert log_image(A) == IntegerSet.from_elements({ceil_log2(x) for x in xs}, min_value=0)
    assert power_image(A, p, q) == IntegerSet.from_elements({ceil_root(x, p, q) for x in xs})


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 2 ** 600), st.integers(1, 8), st.integers(1, 8))
def test_ceil_root_certificate(x, p, q):
    if p > q:
        p, q = q, p
    y = ceil_root(x, p, q)
    assert y ** q >= x ** p > (y - 1) ** q
