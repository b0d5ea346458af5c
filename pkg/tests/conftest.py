import os
import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from gjts.models import build_akn_ank, build_ann_ann, build_dnk, build_structurable_matrix
from gjts.peirce import make_context, peirce_decompose
from gjts.scalar import Scalar

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

small_fractions = st.fractions(min_value=-6, max_value=6, max_denominator=5)
scalars = st.builds(Scalar, small_fractions, small_fractions, small_fractions, small_fractions)
rationals = st.builds(Scalar, small_fractions)


def scalar_float(x: Scalar) -> float:
    a, b, c, d = (float(t) for t in x.coefficients)
    return a + b * 2 ** 0.5 + c * 3 ** 0.5 + d * 6 ** 0.5


def random_vector(rng: random.Random, n: int, height: int = 3):
    return tuple(Scalar(rng.randint(-height, height)) for _ in range(n))


# (builder, args) for every model the suite exercises
MODEL_CASES = {
    "A11": (build_akn_ank, (1, 1)),
    "A23": (build_akn_ank, (2, 3)),
    "A33": (build_ann_ann, (1,)),
    "A66": (build_ann_ann, (2,)),
    "D32": (build_dnk, (3, 2, 1)),
    "D43": (build_dnk, (4, 3, 2)),
    "D33": (build_dnk, (3, 3, 3)),
    "M2": (build_structurable_matrix, (2,)),
}


def model(name):
    builder, args = MODEL_CASES[name]
    return builder(*args)


_CTX = {}


def context(name):
    if name not in _CTX:
        s, e, desc = model(name)
        ctx = make_context(s, e)
        _CTX[name] = (ctx, peirce_decompose(ctx), desc)
    return _CTX[name]


@pytest.fixture
def rng():
    return random.Random(20240)
