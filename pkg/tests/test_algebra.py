import pytest
from hypothesis import given, settings, strategies as st

from braidcat.algebra import (
    InvalidSize,
    ModuleMorphism,
    build_nakayama,
    build_zigzag,
    hom_space,
    inverse_in_local_ring,
    module_dimension,
    morphism_matrix_realize,
    named_morphism,
)
from braidcat.scalars import PrimeField


@pytest.mark.parametrize("n", range(2, 7))
def test_dimensions(n):
    assert build_nakayama(n).dimension == n * (n + 1)
    assert build_zigzag(n).dimension == 4 * n - 2


def test_rank_below_two_rejected():
    with pytest.raises(InvalidSize):
        build_nakayama(1)
    with pytest.raises(InvalidSize):
        build_zigzag(1)


def test_path_concatenation_and_truncation():
    A = build_nakayama(3)
    assert A.path("(1 2)") * A.path("(2 3)") == A.path("(1 2 3)")
    assert (A.path("(2 3)") * A.path("(1 2)")).is_zero()
    # the full cycle times an arrow exceeds the length bound
    assert (A.path("(1 2 3 1)") * A.path("(1 2)")).is_zero()


def test_zigzag_relations():
    B = build_zigzag(3)
    assert B.path("(1 2)") * B.path("(2 1)") == B.path("w1")
    assert B.path("(2 1)") * B.path("(1 2)") == B.path("w2")
    assert B.path("(2 3)") * B.path("(3 2)") == B.path("w2")
    assert (B.path("(1 2)") * B.path("(2 3)")).is_zero()


def test_socle_is_the_longest_path():
    A = build_nakayama(4)
    for v in A.vertices:
        socle = A.basis[A.socle[v]]
        assert (socle.start, socle.end, socle.length) == (v, v, 4)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_hom_space_dimensions(n):
    A, B = build_nakayama(n), build_zigzag(n)
    for i in A.vertices:
        for j in A.vertices:
            assert len(hom_space(A, i, j)) == (2 if i == j else 1)
            assert len(hom_space(B, i, j)) == (2 if i == j else 1 if abs(i - j) == 1 else 0)


def test_local_inverse():
    A = build_nakayama(3)
    x = 3 * A.idempotent(2) + A.path("(2 3 1 2)")
    assert x * inverse_in_local_ring(x) == A.idempotent(2)


def test_named_maps_compose():
    A = build_nakayama(4)
    for i in A.vertices:
        d = named_morphism(A, "delta_socle", i)
        assert d.then(d).is_zero()
        for j in A.vertices:
            if i != j:
                assert named_morphism(A, "mu", i, j).then(named_morphism(A, "mu", j, i)) == d


def test_realization_ranks():
    A = build_nakayama(4)
    assert morphism_matrix_realize(named_morphism(A, "identity", 1)).rank() == module_dimension(A, (1,)) == 5
    assert morphism_matrix_realize(named_morphism(A, "delta_socle", 2)).rank() == 1
    assert morphism_matrix_realize(named_morphism(A, "mu", 1, 3)).rank() == 3


def _random_map(A, rng_values, u, v):
    return ModuleMorphism(A, (u,), (v,), {(0, 0): A.element(dict(zip(A.paths(u, v), rng_values)))})


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 3), st.integers(1, 3), st.integers(1, 3),
       st.lists(st.integers(-3, 3), min_size=2, max_size=2), st.lists(st.integers(-3, 3), min_size=2, max_size=2))
def test_realization_is_functorial(u, v, w, c1, c2):
    A = build_nakayama(3)
    f, g = _random_map(A, c1, u, v), _random_map(A, c2, v, w)
    assert morphism_matrix_realize(f.then(g)) == morphism_matrix_realize(f) @ morphism_matrix_realize(g)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["nakayama", "zigzag"]), st.data())
def test_associativity(kind, data):
    a = build_nakayama(3) if kind == "nakayama" else build_zigzag(3)
    x, y, z = (a.basis_element(data.draw(st.integers(0, a.dimension - 1))) for _ in range(3))
    assert (x * y) * z == x * (y * z)


def test_prime_field_algebra():
    gf = PrimeField(5)
    A = build_nakayama(2, gf)
    x = 2 * A.idempotent(1) + A.path("(1 2 1)")
    assert x * inverse_in_local_ring(x) == A.idempotent(1)
