import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from skein_f.catalog import bundled
from skein_f.ratfun import RatFun
from skein_f.skein import Evaluator

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

monomials = st.tuples(st.integers(-2, 2), st.integers(-3, 3), st.integers(-3, 3))
polys = st.dictionaries(monomials, st.integers(-4, 4), max_size=5)
ratfuns = st.builds(RatFun, polys, st.integers(0, 3))
units = st.builds(
    lambda m, sign, j: RatFun({m: sign}) * RatFun({(0, 0, 0): 1, (0, 0, 1): -1}) ** j,
    monomials,
    st.sampled_from([1, -1]),
    st.integers(0, 2),
)


@st.composite
def braid_words(draw, strands=(2, 3, 4), max_len=7):
    n = draw(st.sampled_from(strands))
    gens = [g for i in range(1, n) for g in (i, -i)]
    word = draw(st.lists(st.sampled_from(gens), min_size=1, max_size=max_len))
    return word, n


@pytest.fixture(scope="session")
def catalog():
    return bundled()


@pytest.fixture(scope="session")
def ev():
    return Evaluator()
