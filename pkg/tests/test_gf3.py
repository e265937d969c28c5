import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pqcolor.gf3 import AffineLine, Plane, PrimeField, vector_compare

F5 = PrimeField(5)


def det3(m, q):
    (a, b, c), (d, e, f), (g, h, i) = m
    return (a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)) % q


def span_size(vectors, q):
    """Brute-force span: every linear combination."""
    pts = set()
    for coeffs in itertools.product(range(q), repeat=len(vectors)):
        pts.add(tuple(sum(c * v[k] for c, v in zip(coeffs, vectors)) % q for k in range(3)))
    return len(pts)


def test_field_validation():
    for bad in (1, 2, 4, 9, 15, 0, -3):
        with pytest.raises(ValueError):
            PrimeField(bad)
    assert PrimeField(13).q == 13


def test_inverse():
    for q in (3, 5, 7, 11, 13):
        f = PrimeField(q)
        for a in range(1, q):
            assert (a * f.inv(a)) % q == 1
        with pytest.raises(ZeroDivisionError):
            f.inv(0)


@pytest.mark.parametrize(
    "x, y, expected",
    [((1, 0, 0), (0, 1, 0), 0), ((1, 1, 1), (1, 1, 1), 3), ((1, 2, 3), (1, 3, 1), (1 * 1 + 2 * 3 + 3 * 1) % 5)],
)
def test_inner_product_examples(x, y, expected):
    assert F5.inner_product(x, y) == expected
    assert F5.inner_product(y, x) == expected


def test_inner_product_derived_value_is_zero():
    assert (1 * 1 + 2 * 3 + 3 * 1) % 5 == 0


@pytest.mark.parametrize("x, expected", [((0, 1, 2), True), ((1, 1, 1), False), ((0, 0, 0), True)])
def test_is_isotropic(x, expected):
    assert F5.is_isotropic(x) is expected
    assert ((x[0] ** 2 + x[1] ** 2 + x[2] ** 2) % 5 == 0) is expected


def test_rank_examples():
    assert F5.rank([(1, 0, 0), (0, 1, 0)]) == 2
    assert F5.rank([(1, 1, 1), (2, 2, 2)]) == 1
    m = [(1, 2, 3), (1, 3, 1), (1, 0, 0)]
    assert det3(m, 5) != 0
    assert F5.rank(m) == 3
    assert F5.rank([]) == 0
    assert F5.rank([(0, 0, 0)]) == 0


def test_rank_matches_span_size_q3():
    f = PrimeField(3)
    vecs = list(f.vectors())
    for a, b in itertools.product(vecs, repeat=2):
        assert 3 ** f.rank([a, b]) == span_size([a, b], 3)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.tuples(*[st.integers(0, 6)] * 3), min_size=1, max_size=3))
def test_rank_matches_span_size_q7(vectors):
    f = PrimeField(7)
    assert 7 ** f.rank(vectors) == span_size(vectors, 7)


def brute_solutions(f, a, alpha, b, beta):
    return {x for x in f.vectors() if f.inner_product(a, x) == alpha and f.inner_product(b, x) == beta}


def test_solve_two_equations_examples():
    line = F5.solve_two_equations((1, 0, 0), 0, (0, 1, 0), 0)
    assert isinstance(line, AffineLine)
    assert set(line.points()) == {(0, 0, t) for t in range(5)}

    assert F5.solve_two_equations((1, 0, 0), 1, (2, 0, 0), 3) is None
    assert brute_solutions(F5, (1, 0, 0), 1, (2, 0, 0), 3) == set()

    plane = F5.solve_two_equations((1, 1, 1), 0, (2, 2, 2), 0)
    assert isinstance(plane, Plane)


def test_solve_two_equations_zero_row():
    assert F5.solve_two_equations((0, 0, 0), 1, (1, 0, 0), 0) is None
    assert isinstance(F5.solve_two_equations((0, 0, 0), 0, (1, 0, 0), 2), Plane)
    with pytest.raises(ValueError):
        F5.solve_two_equations((0, 0, 0), 0, (0, 0, 0), 0)


def test_solve_two_equations_agrees_with_enumeration():
    vecs = list(F5.vectors())
    pairs = [(a, b) for a, b in itertools.product(vecs[1::7], vecs[2::11])]
    for a, b in pairs:
        for alpha, beta in ((0, 0), (1, 3), (4, 2)):
            got = F5.solve_two_equations(a, alpha, b, beta)
            want = brute_solutions(F5, a, alpha, b, beta)
            if isinstance(got, AffineLine):
                assert F5.rank([a, b]) == 2
                assert len(got.points()) == 5
                assert set(got.points()) == want
            elif isinstance(got, Plane):
                assert len(want) == 25
            else:
                assert want == set()


def test_affine_dependent_examples():
    assert F5.affine_dependent((1, 1, 1), (2, 2, 2), (3, 3, 3))
    assert not F5.affine_dependent((1, 0, 0), (0, 1, 0), (0, 0, 1))
    assert F5.affine_dependent((1, 1, 1), (1, 1, 2), (1, 1, 4))
    assert F5.rank([F5.sub((1, 1, 2), (1, 1, 1)), F5.sub((1, 1, 4), (1, 1, 1))]) == 1


def test_vector_compare_examples():
    assert vector_compare((1, 1, 1), (2, 3, 3)) == -1
    assert vector_compare((1, 3, 1), (1, 2, 3)) == 1
    assert vector_compare((4, 2, 1), (4, 2, 1)) == 0


def test_vector_compare_total_order_q3():
    vecs = list(PrimeField(3).vectors())
    for x, y in itertools.product(vecs, repeat=2):
        c = vector_compare(x, y)
        assert c == -vector_compare(y, x)
        assert (c == 0) == (x == y)
    for x, y, z in itertools.product(vecs, repeat=3):
        if vector_compare(x, y) < 0 and vector_compare(y, z) < 0:
            assert vector_compare(x, z) < 0


def test_bilinearity_exhaustive_q3():
    f = PrimeField(3)
    vecs = list(f.vectors())
    for x, y, z in itertools.product(vecs, repeat=3):
        for lam in range(3):
            lhs = f.inner_product(x, f.add(y, f.scale(lam, z)))
            assert lhs == (f.inner_product(x, y) + lam * f.inner_product(x, z)) % 3


@settings(max_examples=300, deadline=None)
@given(
    st.sampled_from([5, 7, 11, 13]),
    st.tuples(*[st.integers(0, 100)] * 3),
    st.tuples(*[st.integers(0, 100)] * 3),
    st.tuples(*[st.integers(0, 100)] * 3),
    st.integers(0, 100),
)
def test_bilinearity_random(q, x, y, z, lam):
    f = PrimeField(q)
    x, y, z = (tuple(a % q for a in v) for v in (x, y, z))
    assert f.inner_product(x, y) == f.inner_product(y, x)
    lhs = f.inner_product(x, f.add(y, f.scale(lam, z)))
    assert lhs == (f.inner_product(x, y) + lam * f.inner_product(x, z)) % q


@pytest.mark.parametrize("q", [3, 5])
def test_hyperplane_sizes(q):
    f = PrimeField(q)
    vecs = list(f.vectors())
    for a in vecs:
        if not any(a):
            continue
        counts = [0] * q
        for x in vecs:
            counts[f.inner_product(a, x)] += 1
        assert counts == [q * q] * q


def test_totally_isotropic_subspaces_have_dimension_at_most_one_q5():
    f = F5
    vecs = [v for v in f.vectors() if any(v)]
    iso = [v for v in vecs if f.is_isotropic(v)]
    assert iso  # e.g. (0, 1, 2)
    for a, b in itertools.combinations(iso, 2):
        if f.rank([a, b]) == 2:
            # span{a, b} is totally isotropic iff a.b = 0 as well
            assert f.inner_product(a, b) != 0


def test_affine_lines_cover_each_line_once():
    lines = list(PrimeField(3).affine_lines())
    # q^2 (q^2 + q + 1) lines in AG(3, q)
    assert len(lines) == 9 * 13
    assert all(len(set(l.points())) == 3 for l in lines)
