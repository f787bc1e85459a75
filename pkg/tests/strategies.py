"""Hypothesis strategies and a seeded generator for random polynomial forms."""

import random
from fractions import Fraction

from hypothesis import strategies as st

from trimser.exact import enumerate_index_sets, enumerate_multi_indices
from trimser.forms import PolyForm

coefficients = st.fractions(min_value=-20, max_value=20, max_denominator=7)


@st.composite
def homogeneous_forms(draw, max_n=4, max_degree=5, n=None, k=None, r=None):
    n = draw(st.integers(1, max_n)) if n is None else n
    k = draw(st.integers(0, n)) if k is None else k
    r = draw(st.integers(0, max_degree)) if r is None else r
    keys = [(a, s) for a in enumerate_multi_indices(n, r) for s in enumerate_index_sets(n, k)]
    chosen = draw(st.lists(st.sampled_from(keys), min_size=1, max_size=6, unique=True))
    return PolyForm(n, k, {key: draw(coefficients) for key in chosen}), r


@st.composite
def forms(draw, n, k, max_degree=4):
    keys = [
        (a, s)
        for r in range(max_degree + 1)
        for a in enumerate_multi_indices(n, r)
        for s in enumerate_index_sets(n, k)
    ]
    chosen = draw(st.lists(st.sampled_from(keys), max_size=6, unique=True))
    return PolyForm(n, k, {key: draw(coefficients) for key in chosen})


def random_homogeneous(rng: random.Random, max_n=4, max_degree=5):
    """Deterministic counterpart of ``homogeneous_forms`` for fixed-count sweeps."""
    n = rng.randint(1, max_n)
    k = rng.randint(0, n)
    r = rng.randint(0, max_degree)
    keys = [(a, s) for a in enumerate_multi_indices(n, r) for s in enumerate_index_sets(n, k)]
    chosen = rng.sample(keys, rng.randint(1, min(6, len(keys))))
    terms = {key: Fraction(rng.randint(-9, 9) or 1, rng.randint(1, 5)) for key in chosen}
    return PolyForm(n, k, terms), n, k, r
