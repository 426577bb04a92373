from hypothesis import strategies as st

from hyperxor import AlgebraSignature


@st.composite
def signatures(draw, max_n=5, min_n=0):
    n = draw(st.integers(min_n, max_n))
    squares = draw(st.lists(st.sampled_from([-1, 0, 1]), min_size=n, max_size=n))
    lam = draw(st.sampled_from([-1, 1]))
    field = draw(st.sampled_from(["real", "complex"]))
    return AlgebraSignature(tuple(squares), lam, field)


@st.composite
def diagonalizable(draw, max_n=5, min_n=0):
    """Commutative signatures whose unit squares have roots in the field."""
    n = draw(st.integers(min_n, max_n))
    field = draw(st.sampled_from(["real", "complex"]))
    pool = [1, -1] if field == "complex" else [1]
    squares = draw(st.lists(st.sampled_from(pool), min_size=n, max_size=n))
    return AlgebraSignature(tuple(squares), 1, field)
