import pytest
from hypothesis import given, settings, strategies as st

from braidcat.algebra import build_nakayama, build_zigzag
from braidcat.complexes import cone, homotopy_equivalent, shift, stalk
from braidcat.fixtures import r_table, refolded_table, single_twist
from braidcat.twists import (
    FunctorWord,
    IndexOutOfRange,
    SummandCapExceeded,
    TwistLetter,
    WordParseError,
    h_generator_word,
    image_table,
    parse_functor_word,
    staircase,
    staircase_complex,
    staircase_maps,
    twist_apply,
    word_apply,
    word_of,
)


def eq(X, Y):
    return homotopy_equivalent(X, Y).status == "Equivalent"


def test_parse_words():
    w = parse_functor_word("F1 F2^-1", 3)
    assert [str(l) for l in w.letters] == ["F1", "F2^-1"]
    assert parse_functor_word("", 3) == FunctorWord()
    assert parse_functor_word("H3", 3) == h_generator_word(3, 3)
    assert parse_functor_word("H1^-1", 3) == h_generator_word(1, 3).inverse()


def test_parse_errors_report_position():
    with pytest.raises(WordParseError) as err:
        parse_functor_word("F1 G2", 3)
    assert err.value.position == 3
    with pytest.raises(WordParseError):
        parse_functor_word("F4", 3)


def test_words_apply_right_to_left():
    A = build_nakayama(3)
    # F2 first sends P1 to P2 -> P1, then F1 acts on that
    w = word_of(("F", 1), ("F", 2))
    step = twist_apply(TwistLetter("F", 2), stalk(A, 1))
    assert eq(word_apply(w, stalk(A, 1)), twist_apply(TwistLetter("F", 1), step))


@pytest.mark.parametrize("n", [2, 3])
def test_single_twist_tables(n):
    A = build_nakayama(n)
    for sign in (1, -1):
        for i in A.vertices:
            for j in A.vertices:
                assert eq(twist_apply(TwistLetter("F", i, sign), stalk(A, j)), single_twist(i, j, n, sign))


def test_examples():
    A, B = build_nakayama(5), build_zigzag(4)
    assert twist_apply(TwistLetter("F", 1), stalk(A, 1)) == stalk(A, 1, 1)
    assert eq(twist_apply(TwistLetter("R", 2), stalk(B, 3)), r_table(2, 3, 4))
    assert word_apply(FunctorWord(), stalk(A, 2)) == stalk(A, 2)


@pytest.mark.parametrize("n", [3, 4])
def test_braid_relation(n):
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            t1 = image_table(word_of(("F", i), ("F", j), ("F", i)), n)
            t2 = image_table(word_of(("F", j), ("F", i), ("F", j)), n)
            assert all(eq(t1[k], t2[k]) for k in range(1, n + 1))


def test_distinct_letters_act_differently():
    t1, t2 = image_table(word_of(("F", 1)), 3), image_table(word_of(("F", 2)), 3)
    assert homotopy_equivalent(t1[1], t2[1]).status == "Distinct"


def test_refolded_generators():
    n = 4
    for i in range(1, n + 1):
        t = image_table(h_generator_word(i, n), n)
        assert all(eq(t[j], refolded_table(i, j, n)) for j in range(1, n + 1))


def test_h_generator_shifts_its_spherical_object():
    n = 3
    A = build_nakayama(n)
    E = twist_apply(TwistLetter("F", n), stalk(A, 1))
    assert eq(word_apply(h_generator_word(n, n), E), shift(E, 1))


def test_summand_cap():
    with pytest.raises(SummandCapExceeded):
        image_table(word_of(*[("F", 1), ("F", 2)] * 6), 3, max_summands=3)


def test_staircase_shapes():
    B = build_zigzag(4)
    assert staircase_complex(4, 4) == shift(stalk(B, 4), 3)
    T1 = staircase_complex(1, 4)
    assert T1.total_summands() == 4 and sorted(T1.degrees()) == [0, 1, 2, 3]
    T, f, g = staircase(4, 4)
    assert f is None and g is None
    with pytest.raises(IndexOutOfRange):
        staircase_maps(4, 4)


def test_staircase_triangle():
    n = 4
    B = build_zigzag(n)
    for j in range(1, n):
        f, g = staircase_maps(j, n)
        assert eq(cone(f), stalk(B, j, j))
        assert eq(cone(g), shift(staircase_complex(j, n), 1))


@settings(max_examples=30, deadline=None)
@given(st.lists(st.tuples(st.integers(1, 3), st.sampled_from([1, -1])), max_size=5), st.integers(1, 3))
def test_word_then_inverse_is_identity(letters, v):
    A = build_nakayama(3)
    w = FunctorWord(tuple(TwistLetter("F", i, s) for i, s in letters))
    assert word_apply(w.inverse() * w, stalk(A, v)) == stalk(A, v)
