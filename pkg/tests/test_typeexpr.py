import pytest
from hypothesis import given, strategies as st

from dpbrauer.typeexpr import MAX_TERM_RANK, TypeParseError, parse_type


@pytest.mark.parametrize("text, canonical", [
    ("2A1+A3", "2A1+A3"),
    ("A1 + 2A3", "A1+2A3"),
    ("A3+A1+A1", "2A1+A3"),
    ("E8", "E8"),
    ("D4+4A1", "4A1+D4"),
    ("A1+A2+A5", "A1+A2+A5"),
    ("D3", "A3"),
    ("D2", "2A1"),
])
def test_canonical(text, canonical):
    assert parse_type(text).render() == canonical


def test_terms():
    assert parse_type("2A1+A3").terms == [(2, "A", 1), (1, "A", 3)]


@pytest.mark.parametrize("text, position, fragment", [
    ("", 0, "empty type"),
    ("A1++A2", 3, "empty term"),
    ("A1+", 3, "empty term"),
    ("B3", 0, "unknown family"),
    ("2A0", 2, "rank must be at least 1"),
    ("0A1", 0, "multiplicity"),
    ("A9", 0, "rank overflow"),
    ("9A1", 0, "multiplicity overflow"),
    ("E5", 0, "E5"),
    ("D1", 0, "D1"),
    ("A", 1, "missing rank"),
    ("12", 0, "missing family"),
    ("A1*A2", 2, "unexpected character"),
])
def test_errors(text, position, fragment):
    with pytest.raises(TypeParseError) as info:
        parse_type(text)
    assert info.value.position == position
    assert fragment in str(info.value)
    assert "grammar" in str(info.value)


_term = st.one_of(
    st.tuples(st.just("A"), st.integers(1, MAX_TERM_RANK)),
    st.tuples(st.just("D"), st.integers(4, MAX_TERM_RANK)),
    st.tuples(st.just("E"), st.integers(6, 8)),
)


@given(st.lists(_term, min_size=1, max_size=6), st.randoms())
def test_round_trip(terms, rnd):
    rnd.shuffle(terms)
    text = " + ".join(f"{f}{r}" for f, r in terms)
    canonical = parse_type(text).render()
    assert parse_type(canonical).render() == canonical
    assert parse_type(canonical).dynkin_type == parse_type(text).dynkin_type
