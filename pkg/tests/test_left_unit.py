import itertools
import json
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import context, model, random_vector
from gjts.labels import U11M, U11P, U13M, U13P
from gjts.left_unit import (
    ADMISSIBILITY_IDS,
    EQUATION_IDS,
    PROPERTY_IDS,
    CircleAlgebra,
    GradedSpace,
    GradingMismatch,
    NotALeftUnit,
    UnexpectedComponent,
    check_against_system,
    check_bilinear_equations,
    check_circle_properties,
    derived_products,
    extract_circle,
    find_left_unit,
    involutions,
    is_left_unit,
    mutate,
    random_admissible_circle,
    reconstruct_triple,
    split_circle,
    synthesize_from_circle,
)
from gjts.linalg import inverse
from gjts.scalar import ONE, ZERO, Scalar

LEFT_UNIT_MODELS = ["A11", "A23", "D33", "M2"]
_CIRCLES = {}


def circle(name):
    if name not in _CIRCLES:
        ctx, d, _ = context(name)
        _CIRCLES[name] = extract_circle(ctx, d)
    return _CIRCLES[name]


def failures(results):
    return [k for k, r in results.items() if not r.holds]


def frac_matrix(v, shape):
    return np.array([x.to_fraction() for x in v], dtype=object).reshape(shape)


def scalars_of(a):
    return tuple(Scalar(x) for x in np.asarray(a).ravel())


# -- graded space ----------------------------------------------------------------


def test_graded_space_diagonals():
    sp = GradedSpace(1, 1, 1, 1)
    assert sp.r_diag() == (1, 1, 3, 3)
    assert sp.q_diag() == (1, -1, 3, -3)
    assert sp.q_inverse_diag() == (1, -1, Fraction(1, 3), Fraction(-1, 3))
    assert sp.bar_signs() == (1, -1, 1, -1)
    assert sp.tilde_signs() == (1, -1, -1, 1)
    assert sp.p() == (0, 0, 1, 1)


def test_graded_space_json_and_errors():
    sp = GradedSpace.from_dims({"u11p": 2, "u11m": 0, "u13p": 1, "u13m": 0})
    assert sp.dims == (2, 0, 1, 0) and sp.dim == 3
    assert GradedSpace.from_dims(sp.to_json()) == sp
    with pytest.raises(ValueError):
        GradedSpace(-1, 0, 0, 0)


# -- left units -----------------------------------------------------------------


@pytest.mark.parametrize("name, expected", [("A23", True), ("D33", True), ("M2", True), ("D43", False), ("A66", False)])
def test_is_left_unit(name, expected):
    assert is_left_unit(context(name)[0]) is expected


def test_extract_rejects_non_left_units():
    ctx, d, _ = context("D43")
    with pytest.raises(NotALeftUnit):
        extract_circle(ctx, d)


def test_extract_rejects_extra_components():
    ctx, d, _ = context("A23")
    # pretend a U00 component is present
    from dataclasses import replace

    from gjts.labels import U00

    fake = replace(d, components={**d.components, U00: d.components[U11P]})
    with pytest.raises(UnexpectedComponent):
        extract_circle(ctx, fake)


@pytest.mark.parametrize("name", LEFT_UNIT_MODELS)
def test_unit_behaviour(name):
    c = circle(name)
    e = c.unit
    assert c.circle(e, e) == e
    for i in range(c.dim):
        x = tuple(ONE if k == i else ZERO for k in range(c.dim))
        assert c.circle(e, x) == x
        assert c.circle(x, e) == tuple(r * v for r, v in zip(c.space.r_diag(), x))
    assert derived_products(c, e, e) == (e, e)


def test_a11_circle():
    c = circle("A11")
    assert c.space.dims == (1, 0, 1, 0)
    u, v = (ONE, ZERO), (ZERO, ONE)
    assert c.circle(u, u) == u
    # product (A1 e C1 ...) on the pair of scalars: with e=(1,1), x o y has first
    # slot x1 y1 + y1 x1 - y1 x2 and second slot x2 y2 + y2 x2 - x1 y2
    def direct(x, y):
        return (2 * x[0] * y[0] - y[0] * x[1], 2 * x[1] * y[1] - x[0] * y[1])

    B = c.basis
    Binv = inverse(B)
    for x, y in itertools.product([u, v], repeat=2):
        ax, ay = B.apply(x), B.apply(y)
        assert B.apply(c.circle(x, y)) == direct(ax, ay)
    assert split_circle(c, u, u)[1] == (ZERO, ZERO)
    assert Binv.apply(B.apply(v)) == v


def test_d33_circle_is_xy_plus_yx_minus_xty(rng):
    c = circle("D33")
    B, Binv = c.basis, inverse(c.basis)
    for _ in range(6):
        X, Y = random_vector(rng, 9), random_vector(rng, 9)
        x, y = frac_matrix(X, (3, 3)), frac_matrix(Y, (3, 3))
        want = scalars_of(x @ y + y @ x - x.T @ y)
        assert B.apply(c.circle(Binv.apply(X), Binv.apply(Y))) == want


def test_d33_split_of_symmetric_arguments(rng):
    c = circle("D33")
    B, Binv = c.basis, inverse(c.basis)
    for _ in range(4):
        a = frac_matrix(random_vector(rng, 9), (3, 3))
        b = frac_matrix(random_vector(rng, 9), (3, 3))
        x, y = a + a.T, b + b.T
        A1, A3 = split_circle(c, Binv.apply(scalars_of(x)), Binv.apply(scalars_of(y)))
        half = Fraction(1, 2)
        assert B.apply(A1) == scalars_of((x @ y + y @ x) * half)
        assert B.apply(A3) == scalars_of((y @ x - x @ y) * half)


# -- involutions -----------------------------------------------------------------


def test_involution_examples():
    sp = GradedSpace(1, 1, 1, 1)
    x = (Scalar(2), ZERO, ZERO, ZERO)
    assert involutions(sp, x) == (x, x, {U11P: 0})
    y = (ZERO, ZERO, Scalar(5), ZERO)
    assert involutions(sp, y) == (y, (ZERO, ZERO, Scalar(-5), ZERO), {U13P: 1})
    with pytest.raises(GradingMismatch):
        involutions(sp, (ONE,))


@given(st.lists(st.integers(-5, 5), min_size=6, max_size=6))
def test_bar_is_an_involution_and_relates_to_tilde(coords):
    sp = GradedSpace(2, 1, 2, 1)
    x = tuple(Scalar(v) for v in coords)
    bar, tilde, _ = involutions(sp, x)
    assert involutions(sp, bar)[0] == x
    assert involutions(sp, tilde)[1] == x
    # on each homogeneous block bar = (-1)^p tilde
    for lab in (U11P, U11M, U13P, U13M):
        for i in sp.block(lab):
            sign = 1 if lab.mu == 1 else -1
            assert bar[i] == sign * tilde[i]


# -- properties and equations on the models ----------------------------------------


@pytest.mark.parametrize("name", LEFT_UNIT_MODELS)
def test_properties_pass(name):
    props = check_circle_properties(circle(name))
    assert set(props) == set(PROPERTY_IDS)
    assert not failures(props)


@pytest.mark.parametrize("name", LEFT_UNIT_MODELS)
def test_equations_pass(name):
    eqs = check_bilinear_equations(circle(name))
    assert set(eqs) == set(EQUATION_IDS)
    assert not failures(eqs)


@pytest.mark.parametrize("name", ["D33", "M2"])
def test_weak_equations_pass_for_weakly_commutative_models(name):
    eqs = check_bilinear_equations(circle(name), weakly_commutative=True)
    assert eqs["3.53"].holds and eqs["3.54"].holds


def test_weak_equations_fail_for_the_pair_model():
    eqs = check_bilinear_equations(circle("A23"), weakly_commutative=True)
    assert not eqs["3.53"].holds
    assert eqs["3.53"].witness is not None and any(eqs["3.53"].residual)
    assert not failures({k: v for k, v in eqs.items() if k not in ("3.53", "3.54")})


@pytest.mark.parametrize("name", LEFT_UNIT_MODELS)
def test_derived_products_match_the_system(name):
    ctx, _, _ = context(name)
    assert not failures(check_against_system(circle(name), ctx))


@pytest.mark.parametrize("name", LEFT_UNIT_MODELS)
def test_round_trip_is_exact(name):
    s = model(name)[0]
    c = circle(name)
    assert reconstruct_triple(c) == s
    assert reconstruct_triple(c, "graded") == s.transform(c.basis)


def test_reconstruct_needs_a_basis_for_ambient():
    c = CircleAlgebra(GradedSpace(1, 0, 0, 0), {(0, 0): (ONE,)})
    with pytest.raises(ValueError):
        reconstruct_triple(c, "ambient")
    assert reconstruct_triple(c).product((ONE,), (ONE,), (ONE,)) == (ONE,)


def test_reconstruct_with_unit_in_the_middle():
    c = circle("A23")
    s = reconstruct_triple(c, "graded")
    e = c.unit
    rng = random.Random(3)
    for _ in range(4):
        x, z = random_vector(rng, c.dim), random_vector(rng, c.dim)
        assert s.product(x, e, z) == c.circle(x, z)


# -- mutations ------------------------------------------------------------------------


@pytest.mark.parametrize("kind", ADMISSIBILITY_IDS)
@pytest.mark.parametrize("name", ["A23", "D33"])
def test_mutations_are_detected(name, kind):
    m = mutate(circle(name), kind, random.Random(7))
    if name == "D33" and kind == "3.42":
        # every D33 direction is tilde-even, so no product can leave its tilde sector
        assert m is None
        return
    assert m is not None
    props = check_circle_properties(m)
    assert not props[kind].holds
    assert props[kind].witness is not None
    assert failures(check_bilinear_equations(m))


def test_single_entry_perturbation_is_detected():
    c = circle("D33")
    bumped = c.constant(0, 1)
    bumped = (bumped[0] + 1,) + bumped[1:]
    m = c.with_entry(0, 1, bumped)
    assert failures(check_circle_properties(m))


def test_mutate_rejects_unknown_kind():
    with pytest.raises(ValueError):
        mutate(circle("A11"), "3.99", 0)


def test_mutate_without_room():
    # a single U11+ direction admits no one-sided asymmetric change
    c = CircleAlgebra(GradedSpace(1, 0, 0, 0), {(0, 0): (ONE,)})
    assert mutate(c, "3.39", 0) is None


# -- synthesis ------------------------------------------------------------------------


def test_synthesis_from_d33_circle():
    c = circle("D33")
    s, rep = synthesize_from_circle(c.space, c)
    assert rep.a_passed and rep.b_passed and rep.c_passed
    assert rep.left_unit["found"]
    assert s == reconstruct_triple(c, "graded")


def test_synthesis_with_asymmetric_a1():
    c = circle("D33")
    m = mutate(c, "3.39", random.Random(1))
    _, rep = synthesize_from_circle(c.space, m)
    assert not rep.a_passed
    assert not rep.admissible["3.39"].holds
    assert not rep.b_passed


def test_synthesis_zero_product():
    sp = GradedSpace(2, 0, 0, 0)
    s, rep = synthesize_from_circle(sp, {})
    assert rep.a_passed and rep.b_passed and rep.c_passed
    assert s.nnz() == 0
    assert not rep.left_unit["found"]


def test_synthesis_grading_mismatch():
    with pytest.raises(GradingMismatch):
        synthesize_from_circle(GradedSpace(1, 0, 0, 0), {(0, 3): (ONE,)})
    with pytest.raises(GradingMismatch):
        synthesize_from_circle(GradedSpace(1, 0, 0, 0), {(0, 0): (ONE, ONE)})


def test_find_left_unit_in_a_round_trip():
    c = circle("A23")
    s = reconstruct_triple(c, "graded")
    found = find_left_unit(s, c)
    assert found["found"]
    assert [Scalar.from_json(x) for x in found["element"]] == list(c.unit)


# -- JSON ------------------------------------------------------------------------------


def test_circle_json_round_trip():
    c = circle("D33")
    data = json.loads(c.dumps())
    assert data["schema"] == "1"
    back = CircleAlgebra.from_json(data)
    assert back.space == c.space and back.table == c.table


@pytest.mark.parametrize("bad, msg", [
    ([], "object"),
    ({"dims": {}}, "circle"),
    ({"dims": {"u11p": 1}, "circle": [{"i": 0}]}, "malformed"),
    ({"dims": {"u11p": 1}, "circle": [{"i": 0, "j": 0, "value": [1]}, {"i": 0, "j": 0, "value": [1]}]}, "duplicate"),
    ({"dims": {"u11p": 1}, "circle": [{"i": 0.5, "j": 0, "value": [1]}]}, "integers"),
])
def test_circle_json_errors(bad, msg):
    with pytest.raises(ValueError, match=msg):
        CircleAlgebra.from_json(bad)


# -- the converse direction --------------------------------------------------------------

SPACES = [d for d in itertools.product(range(4), repeat=4) if 1 <= sum(d) <= 6]


@given(st.sampled_from(SPACES), st.integers(0, 2**32 - 1))
def test_admissible_tables_solve_the_equations(dims, seed):
    sp = GradedSpace(*dims)
    c = random_admissible_circle(sp, seed)
    assert not failures(check_circle_properties(c, ADMISSIBILITY_IDS))
    assert not failures(check_bilinear_equations(c))
    if sp.u13p == 0:
        assert not failures(check_bilinear_equations(c, weakly_commutative=True))
