"""Hypothesis strategies shared by the test modules."""

from fractions import Fraction

from hypothesis import strategies as st

from adecas.polyring import Polynomial, VarTable, qi

small_int = st.integers(min_value=-5, max_value=5)
rationals = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 5))
gaussian = st.builds(lambda a, b: qi(a, b), rationals, rationals)


def polynomials(ring: VarTable, max_terms: int = 5, max_exp: int = 3, min_exp: int = 0):
    n = len(ring)
    lows = [min_exp if inv else 0 for inv in ring.invertible]
    mono = st.tuples(*[st.integers(lo, max_exp) for lo in lows]) if n else st.just(())
    return st.dictionaries(mono, gaussian, max_size=max_terms).map(lambda t: Polynomial(ring, t))
