import pytest
from hypothesis import given, strategies as st

from hodgecycles.artinian import GradedIdeal, colon_slice, slice_meet
from hodgecycles.errors import DegreeError, ValidationError
from hodgecycles.exactalg import CycloField
from hodgecycles.fermat import (
    LinearCycleSpec, associated_poly_closed, codim_formula, fermat_context,
)
from hodgecycles.hodge import colon_equality, tangent, tangent_meet
from hodgecycles.mpoly import PolyRing, monomials_of_degree
from hodgecycles.periods import associated_polynomial

from conftest import cubic_line


def test_tangent_cubic_line(cubic):
    t = tangent(cubic, associated_polynomial(cubic, cubic_line(cubic)))
    assert (t.ambient_dim, t.tangent_dim, t.codim) == (20, 20, 0)


def test_tangent_quartic_line(quartic):
    P = associated_poly_closed(LinearCycleSpec.ones(2, 4), quartic.ring)
    t = tangent(quartic, P)
    assert (t.ambient_dim, t.tangent_dim, t.codim) == (35, 34, 1)


def test_tangent_of_ideal_element(quartic):
    t = tangent(quartic, quartic.ring.parse("x0^3*x1"))
    assert t.codim == 0


def test_tangent_degree_check(cubic):
    with pytest.raises(DegreeError):
        tangent(cubic, cubic.ring.parse("x0"))


def test_tangent_meet_examples():
    ctx = fermat_context(6, 4)
    P1 = associated_poly_closed(LinearCycleSpec.ones(6, 4), ctx.ring)
    P2 = associated_poly_closed(LinearCycleSpec(6, 4, (3, 3, 3, 1)), ctx.ring)
    same = tangent_meet(ctx, P1, P1)
    assert same.tangent_dim == tangent(ctx, P1).tangent_dim
    meet = tangent_meet(ctx, P1, P2)
    assert meet.ambient_dim == 330 and meet.codim == 38

    cub = fermat_context(2, 3)
    A = associated_poly_closed(LinearCycleSpec(2, 3, (1, 1)), cub.ring)
    B = associated_poly_closed(LinearCycleSpec(2, 3, (3, 1)), cub.ring)
    assert tangent_meet(cub, A, B).codim == 0


def test_colon_equality_examples():
    R = PolyRing(2, CycloField(1))
    I = GradedIdeal(R, [R.parse("x0^2"), R.parse("x1^2")])
    R1, R2 = R.parse("x0 + x1"), R.parse("x0 - x1")
    res = colon_equality(I, R1, R2, 1)
    assert not res.holds and res.witness == R.parse("x0")
    assert (res.lhs_dim, res.rhs_dim) == (0, 1)
    res0 = colon_equality(I, R1, R2, 0)
    assert res0.holds and res0.lhs_dim == res0.rhs_dim == 0
    res2 = colon_equality(I, R1, R2, 2)
    assert res2.holds and res2.lhs_dim == 3


def test_colon_equality_preconditions():
    R = PolyRing(2, CycloField(1))
    I = GradedIdeal(R, [R.parse("x0^2"), R.parse("x1^2")])
    with pytest.raises(ValidationError):
        colon_equality(I, R.parse("x0^2"), R.parse("x1"), 1)
    with pytest.raises(ValidationError):
        colon_equality(I, R.parse("x0"), R.parse("-x0"), 1)
    with pytest.raises(DegreeError):
        colon_equality(I, R.parse("x0"), R.parse("x0*x1"), 1)
    with pytest.raises(ValidationError):
        colon_equality(I, R.parse("x0 + x1^2"), R.parse("x0"), 1)


@pytest.mark.parametrize("n,d", [(2, 3), (2, 4), (2, 5), (4, 3), (4, 4), (6, 3)])
def test_single_cycle_codim(n, d):
    ctx = fermat_context(n, d)
    P = associated_poly_closed(LinearCycleSpec.ones(n, d), ctx.ring)
    assert tangent(ctx, P).codim == codim_formula(n, d, n // 2)


# -- properties ----------------------------------------------------------------

K = CycloField(6)
R3 = PolyRing(3, K)


@st.composite
def poly_deg(draw, e):
    p = R3.zero
    for m in draw(st.lists(st.sampled_from(monomials_of_degree(3, e)), min_size=1, max_size=4)):
        p = p + R3.monomial(m, K.zeta_power(draw(st.integers(0, 5))) * draw(st.integers(1, 3)))
    return p


@given(st.integers(1, 2), st.integers(0, 3), st.data())
def test_meet_inside_sum_colon(mu, e, data):
    I = GradedIdeal(R3, [R3.parse("x0^2"), R3.parse("x1^3"), R3.parse("x1*x2^2"), R3.parse("x2^3")])
    P1, P2 = data.draw(poly_deg(mu)), data.draw(poly_deg(mu))
    a, b = colon_slice(I, P1, e), colon_slice(I, P2, e)
    assert slice_meet(a, b).rows == slice_meet(b, a).rows
    assert colon_slice(I, P1 + P2, e).contains_space(slice_meet(a, b))


def beta_ring(r, d):
    return PolyRing(2 * r, CycloField(2 * d))


def r_poly(ring, r, d, beta, c):
    """c * prod_j (x^{d-1} - (beta y)^{d-1}) / (x - beta y)."""
    out = ring.const(c)
    for j in range(r):
        x, y = ring.var(2 * j), ring.var(2 * j + 1)
        s = ring.zero
        for l in range(d - 1):
            s = s + x ** (d - 2 - l) * (y ** l).scale(beta ** l)
        out = out * s
    return out


@given(st.sampled_from([(1, 3), (1, 4), (1, 5), (2, 3), (2, 4)]), st.data())
def test_colon_law_sampled(rd, data):
    r, d = rd
    ring = beta_ring(r, d)
    K = ring.field
    values = [K.one, -K.one, K.from_rational(2), K.zeta, K.zeta + 1]
    b1, b2 = data.draw(st.lists(st.sampled_from(range(len(values))), min_size=2, max_size=2,
                                unique=True))
    c1, c2 = data.draw(st.sampled_from([1, -1, 2])), data.draw(st.sampled_from([1, 3]))
    I = GradedIdeal(ring, [ring.var(i) ** (d - 1) for i in range(2 * r)])
    R1 = r_poly(ring, r, d, values[b1], c1)
    R2 = r_poly(ring, r, d, values[b2], c2)
    e = data.draw(st.integers(0, 2 * (d - 2) * r))
    try:
        res = colon_equality(I, R1, R2, e)
    except ValidationError:
        return  # R1 + R2 fell into I
    assert res.holds == (e != (d - 2) * r)
