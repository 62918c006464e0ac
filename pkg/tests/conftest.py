"""Shared hypothesis strategies: random words and Lie elements."""
from fractions import Fraction

from hypothesis import strategies as st

from foxcalc.lie_core import LieElt, lyndon_words
from foxcalc.words import Alphabet, FactorLetter, FreeLetter, reduce

FREE2 = Alphabet(2)
FREE3 = Alphabet(3)
MIXED = Alphabet(2, (5,))  # two free generators, one cyclic factor of order 5


def letter_pool(alphabet):
    pool = []
    for i, m in enumerate(alphabet.factor_orders, start=1):
        pool.extend(FactorLetter(i, e) for e in range(1, m))
    for j in range(1, alphabet.free_rank + 1):
        pool.append(FreeLetter(j, 1))
        pool.append(FreeLetter(j, -1))
    return pool


def words(alphabet, max_len=8):
    return st.lists(
        st.sampled_from(letter_pool(alphabet)), max_size=max_len
    ).map(lambda ls: reduce(ls, alphabet))


def coeffs():
    return st.fractions(
        min_value=-3, max_value=3, max_denominator=2
    ).filter(lambda c: c != 0)


def lie_elts(rank, max_deg=5, max_terms=4):
    pool = [w for d in range(1, max_deg + 1) for w in lyndon_words(rank, d)]
    pair = st.tuples(st.sampled_from(pool), coeffs())
    return st.lists(pair, max_size=max_terms).map(
        lambda ps: sum(
            (LieElt(rank, {w: Fraction(c)}) for w, c in ps), LieElt.zero(rank)
        )
    )


def homogeneous_lie(rank, degree, max_terms=4):
    pool = list(lyndon_words(rank, degree))
    pair = st.tuples(st.sampled_from(pool), coeffs())
    return st.lists(pair, max_size=max_terms).map(
        lambda ps: sum(
            (LieElt(rank, {w: Fraction(c)}) for w, c in ps), LieElt.zero(rank)
        )
    )
