import hypothesis.strategies as st
from hypothesis import HealthCheck, settings

from isogeny2.core.example_data import example_data
from isogeny2.field import PrimeField

max_examples = 15
slow_max_examples = 5
deadline = None

# sizes of the randomized acceptance suites
covariance_examples = 50
pade_examples = 200
dac_examples = 100

exhaustive = settings(deadline=deadline, suppress_health_check=list(HealthCheck), database=None)

K101 = PrimeField(101)
K10007 = PrimeField(10007)
ALPHA_FIELD = example_data.alpha_field

residues = st.integers(min_value=0, max_value=ALPHA_FIELD.p - 1)
seeds = st.integers(min_value=0, max_value=2**16)
small_coefficients = st.lists(st.integers(min_value=0, max_value=100), min_size=1, max_size=8)


@st.composite
def alpha_elements(draw, *, nonzero: bool = False):
    a, b = draw(residues), draw(residues)
    if nonzero and a == b == 0:
        a = 1
    return ALPHA_FIELD([a, b])


@st.composite
def invertible_matrices(draw, field=K10007):
    while True:
        a, b, c, d = (draw(st.integers(min_value=0, max_value=field.p - 1)) for _ in range(4))
        if (a * d - b * c) % field.p:
            return [[a, b], [c, d]]
