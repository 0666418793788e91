import random
from fractions import Fraction
from math import comb, factorial

import pytest
from hypothesis import given, strategies as st

from hodgecycles.artinian import normal_form
from hodgecycles.errors import DegreeError, ValidationError
from hodgecycles.exactalg import CycloField
from hodgecycles.fermat import LinearCycleSpec, associated_poly_closed, fermat_context, linear_cycle
from hodgecycles.mpoly import PolyRing, det_poly, jacobian, monomials_of_degree
from hodgecycles.periods import (
    CITCycle, HypersurfaceContext, associated_polynomial, cup_primitive, cycle_class,
    intersection_number, intersection_report, is_theta_multiple, period, period_constant,
    top_form_period, validate_cycle,
)

from conftest import cubic_line


def q(x):
    return CycloField(6).from_rational(Fraction(x))


def test_validate_line(cubic, line):
    rep = validate_cycle(cubic, line, ci_check=True)
    assert rep.degree == 1
    assert rep.ci_profiles == ((1, 2, 2, 2, 2),) or rep.ci_profiles[0][:2] == (1, 2)


def test_validate_swapped(cubic, line):
    s = line.summands[0]
    bad = CITCycle.single(s.fs, tuple(reversed(s.gs)))
    with pytest.raises(ValidationError) as exc:
        validate_cycle(cubic, bad)
    assert exc.value.residual is not None and not exc.value.residual.is_zero()


def test_validate_ci_failure(cubic):
    R = cubic.ring
    bad = CITCycle.single([R.parse("x0"), R.parse("x0^2")], [R.parse("x0^2"), R.parse("x1")])
    with pytest.raises(ValidationError, match="complete-intersection"):
        validate_cycle(cubic, bad, ci_check=True)


def test_validate_degree_mismatch(cubic):
    R = cubic.ring
    bad = CITCycle.single([R.parse("x0 + x1"), R.parse("x2 + x3")],
                          [R.parse("x0"), R.parse("x2^2")])
    with pytest.raises((ValidationError, DegreeError)):
        validate_cycle(cubic, bad)


def test_associated_polynomial(cubic, line):
    R = cubic.ring
    P = R.parse("9*(x0 - x1)*(x2 - x3)")
    assert associated_polynomial(cubic, line) == P
    assert associated_polynomial(cubic, -2 * line) == P.scale(-2)


def test_period_examples(cubic, line):
    R = cubic.ring
    assert period_constant(cubic, line, R.parse("x0*x2")) == q(Fraction(1, 144))
    pv = period(cubic, line, R.parse("x0*x2"))
    assert pv.render() == "(2*pi*i)^1/1! * (1/9)"
    assert period(cubic, line, R.parse("x0*x1")).is_zero()
    with pytest.raises(DegreeError):
        period(cubic, line, R.parse("x0"))


def test_cycle_class_line(cubic, line):
    cc = cycle_class(cubic, line)
    assert cc.theta_coeff == Fraction(1, 3)
    assert cc.primitive_scale == Fraction(-1, 3)
    assert cc.primitive_poly == cubic.ring.parse("9*(x0 - x1)*(x2 - x3)")
    assert not cc.is_theta_multiple
    cc2 = cycle_class(cubic, 2 * line)
    assert cc2.theta_coeff == 2 * cc.theta_coeff
    assert cc2.primitive_poly == cc.primitive_poly.scale(2)


def test_plane_section_is_theta_multiple(cubic):
    R = cubic.ring
    section = CITCycle.single([R.parse("x3"), R.parse("x0^3 + x1^3 + x2^3")],
                              [R.parse("x3^2"), R.one])
    cc = cycle_class(cubic, section)
    assert cc.theta_coeff == 1
    assert cc.is_theta_multiple and is_theta_multiple(cubic, section)
    # a plane section meets a line once and itself three times
    assert intersection_number(cubic, section, section) == 3
    assert intersection_number(cubic, section, cubic_line(cubic)) == 1


def test_cup_examples(cubic):
    R = cubic.ring
    assert cup_primitive(cubic, R.parse("x0*x2"), R.parse("x0*x2")).is_zero()
    v = cup_primitive(cubic, R.parse("x0*x2"), R.parse("x1*x3"))
    assert v.tpi_power == 2
    assert v.coefficient == q(Fraction(-1, 27))


def test_intersection_examples(cubic, line):
    rep = intersection_report(cubic, line, line)
    assert rep.value == -1 and rep.c == Fraction(1, 4) and rep.c_scaled == 4
    R = cubic.ring
    # the line is alpha = (3, 3); (3, 1) meets it in a point, the others miss it
    meets = linear_cycle(LinearCycleSpec(2, 3, (3, 1)), R)
    assert intersection_number(cubic, line, meets) == 1
    for alphas in ((1, 5), (1, 1), (5, 5)):
        other = linear_cycle(LinearCycleSpec(2, 3, alphas), R)
        assert intersection_number(cubic, line, other) == 0


def test_top_form_examples():
    for n in (0, 2, 4):
        R = PolyRing(n + 2, CycloField(1))
        v = top_form_period([R.var(i) for i in range(n + 2)], R.one)
        assert v.tpi_power == n + 1
        assert v.algebraic.to_rational() == (-1) ** comb(n + 2, 2)
    R = PolyRing(4, CycloField(1))
    f = [R.var(i) ** 2 for i in range(4)]
    v = top_form_period(f, R.parse("x0*x1*x2*x3"))
    assert v.algebraic.to_rational() == 1 and v.tpi_power == 3
    with pytest.raises(ValidationError):
        top_form_period([R.var(0), R.var(0), R.var(2), R.var(3)], R.one)


# -- properties on the Fermat cubic and quartic -------------------------------

def cubic_lines(ctx):
    return [linear_cycle(LinearCycleSpec(2, 3, (a, b)), ctx.ring) for a in (1, 3, 5) for b in (1, 3, 5)]


@given(st.data())
def test_bilinearity(data):
    ctx = fermat_context(2, 3)
    Ls = cubic_lines(ctx)
    pick = st.sampled_from(range(len(Ls)))
    a, b = data.draw(st.integers(-3, 3)), data.draw(st.integers(-3, 3))
    x, y, z = (Ls[data.draw(pick)] for _ in range(3))
    combo = a * x + b * y
    assert intersection_number(ctx, combo, z) == (
        a * intersection_number(ctx, x, z) + b * intersection_number(ctx, y, z))
    assert intersection_number(ctx, x, z) == intersection_number(ctx, z, x)


@given(st.sampled_from([(2, 3), (2, 4), (4, 3)]), st.data())
def test_duality_consistency(nd, data):
    n, d = nd
    ctx = fermat_context(n, d)
    alphas = tuple(data.draw(st.sampled_from(range(1, 2 * d, 2))) for _ in range(n // 2 + 1))
    cyc = linear_cycle(LinearCycleSpec(n, d, alphas), ctx.ring)
    P = ctx.ring.zero
    for m in data.draw(st.lists(st.sampled_from(monomials_of_degree(n + 2, ctx.sigma)),
                                min_size=1, max_size=3)):
        P = P + ctx.ring.monomial(m, data.draw(st.integers(1, 3)))
    pv = period(ctx, cyc, P)
    cup = cup_primitive(ctx, associated_polynomial(ctx, cyc), P)
    # period = -(n/2)!/d * cup / (2 pi i)^{n/2}
    half = factorial(n // 2)
    assert pv.tpi_power + n // 2 == cup.tpi_power
    assert pv.coefficient == cup.coefficient * Fraction(-half, d)


@given(st.sampled_from([(2, 3), (2, 4), (4, 3)]), st.data())
def test_closed_form_associated_poly(nd, data):
    n, d = nd
    ctx = fermat_context(n, d)
    alphas = tuple(data.draw(st.sampled_from(range(1, 2 * d, 2))) for _ in range(n // 2 + 1))
    spec = LinearCycleSpec(n, d, alphas)
    assert associated_polynomial(ctx, linear_cycle(spec, ctx.ring)) == associated_poly_closed(spec, ctx.ring)


def test_theta_detection_matches_normal_form(cubic):
    for L in cubic_lines(cubic):
        cc = cycle_class(cubic, L)
        assert cc.is_theta_multiple == normal_form(cc.primitive_poly, cubic.J).is_zero()


# -- a non-Fermat cubic surface containing the line, dense path ----------------

def surface_with_line(ring, d, rng):
    """F = (x0 + x1) g1 + (x2 + x3) g2 with random g's."""
    monos = monomials_of_degree(4, d - 1)
    base = [ring.parse(s) for s in ("x0 + x1", "x2 + x3")]
    gs = []
    for _ in range(2):
        g = ring.zero
        for m in monos:
            g = g + ring.monomial(m, rng.randint(-3, 3))
        gs.append(g)
    F = base[0] * gs[0] + base[1] * gs[1]
    return F, CITCycle.single(base, gs)


@pytest.mark.parametrize("seed", range(4))
def test_line_on_general_cubic(seed):
    rng = random.Random(seed)
    R = PolyRing(4, CycloField(6))
    while True:
        F, L = surface_with_line(R, 3, rng)
        if F.is_zero() or not F.is_homogeneous() or any(F.partial(i).is_zero() for i in range(4)):
            continue
        try:
            ctx = HypersurfaceContext(F)
        except ValidationError:
            continue
        break
    assert not ctx.J.is_monomial
    assert intersection_number(ctx, L, L) == -1
    assert cycle_class(ctx, L).theta_coeff == Fraction(1, 3)


@pytest.mark.slow
def test_line_on_general_quartic():
    rng = random.Random(7)
    R = PolyRing(4, CycloField(8))
    while True:
        F, L = surface_with_line(R, 4, rng)
        if any(F.partial(i).is_zero() for i in range(4)):
            continue
        try:
            ctx = HypersurfaceContext(F)
        except ValidationError:
            continue
        break
    assert intersection_number(ctx, L, L) == -2


def test_singular_surface_rejected():
    R = PolyRing(4, CycloField(6))
    with pytest.raises(ValidationError):
        HypersurfaceContext(R.parse("x0^3 + x1^3 + x2^3 + x0*x1*x3"))


def test_context_preconditions():
    R = PolyRing(5, CycloField(6))
    with pytest.raises(ValidationError):
        HypersurfaceContext(R.parse("x0^3 + x1^3 + x2^3 + x3^3 + x4^3"))
    R = PolyRing(4, CycloField(6))
    with pytest.raises(ValidationError):
        HypersurfaceContext(R.parse("x0^3 + x1^3 + x2^3"))
    assert det_poly(jacobian([R.var(i) for i in range(4)])) == R.one
