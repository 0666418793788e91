from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from hodgecycles.errors import ValidationError
from hodgecycles.exactalg import CycloField
from hodgecycles.fermat import (
    LinearCycleSpec, associated_poly_closed, codim_formula, fermat_context, intersection_dim,
    linear_cycle, linear_intersection_closed, linear_intersection_from_m, linear_period_closed,
    period_exponents, locus_verdict,
)
from hodgecycles.periods import validate_cycle


def test_context_shapes():
    ctx = fermat_context(2, 3)
    assert ctx.socle == 4 and ctx.J.is_monomial
    ctx = fermat_context(6, 4)
    assert (ctx.sigma, ctx.socle) == (8, 16)
    with pytest.raises(ValidationError):
        fermat_context(3, 3)


@pytest.mark.parametrize("alphas", [(0, 1), (2, 1), (1, 7), (1,), (1, 1, 1)])
def test_spec_validation(alphas):
    with pytest.raises(ValidationError):
        LinearCycleSpec(2, 3, alphas)


def test_linear_cycle_unit_case(cubic):
    cyc = linear_cycle(LinearCycleSpec(2, 3, (3, 3)), cubic.ring)
    s = cyc.summands[0]
    assert s.fs == (cubic.ring.parse("x0 + x1"), cubic.ring.parse("x2 + x3"))
    validate_cycle(cubic, cyc)


@pytest.mark.parametrize("n,d", [(2, 3), (2, 4), (2, 5), (4, 3), (4, 4), (6, 3)])
def test_every_linear_cycle_validates(n, d):
    ctx = fermat_context(n, d)
    odd = range(1, 2 * d, 2)
    for a in odd:
        spec = LinearCycleSpec(n, d, (a,) + (odd[-1],) * (n // 2))
        validate_cycle(ctx, linear_cycle(spec, ctx.ring))


def test_associated_closed_unit_case(cubic):
    P = associated_poly_closed(LinearCycleSpec(2, 3, (3, 3)), cubic.ring)
    assert P == cubic.ring.parse("9*(x0 - x1)*(x2 - x3)")
    P1 = associated_poly_closed(LinearCycleSpec.ones(2, 3), cubic.ring)
    assert P1.degree() == 2


def test_intersection_closed_values():
    assert linear_intersection_from_m(3, 1) == -1
    assert linear_intersection_from_m(3, 0) == 1
    for d in range(2, 8):
        assert linear_intersection_from_m(d, -1) == 0
    a, b = LinearCycleSpec(4, 3, (1, 1, 1)), LinearCycleSpec(4, 3, (1, 3, 1))
    assert intersection_dim(a, b) == 1
    assert linear_intersection_closed(a, b) == -1


def test_period_closed_examples():
    K = CycloField(6)
    v = linear_period_closed(2, 3, (1, 0, 1, 0))
    assert (v.tpi_power, v.inv_factorial) == (1, 1)
    assert v.algebraic == K.zeta_power(4) / 9
    with pytest.raises(ValidationError):
        linear_period_closed(2, 3, (2, 0, 0, 0))
    assert linear_period_closed(2, 3, (1, 1, 0, 0)).is_zero()


def test_period_exponents_count():
    # {0..d-2}^{n+2} vectors of sum sigma
    assert len(period_exponents(2, 3)) == comb(4, 2)
    assert all(sum(i) == 6 for i in period_exponents(2, 5))


def test_codim_formula_examples():
    assert codim_formula(6, 4, 0) == 38
    assert codim_formula(2, 3, 0) == 0
    for n in (2, 4, 6, 8):
        for d in (3, 4, 5, 6):
            assert codim_formula(n, d, n // 2) == comb(n // 2 + d, d) - (n // 2 + 1) ** 2
    with pytest.raises(ValidationError):
        codim_formula(4, 3, 3)


def test_verdict_examples():
    v = locus_verdict(6, 4, 0)
    assert v.equal and v.expected_equal and v.consistent
    assert v.dim_meet == 330 - 38 and v.codim_matches
    v = locus_verdict(6, 3, 0)
    assert not v.equal and not v.expected_equal
    assert v.dim_delta_tangent > v.dim_meet
    v = locus_verdict(2, 3, 0)
    assert not v.expected_equal


@pytest.mark.parametrize("args", [(6, 4, -1), (6, 4, 3), (6, 2, 0), (4, 4, 0, (1, 1, 1))])
def test_verdict_rejects(args):
    with pytest.raises(ValidationError):
        locus_verdict(*args)


def test_verdict_zero_scale():
    with pytest.raises(ValidationError):
        locus_verdict(4, 4, 0, a=0)


@settings(max_examples=12)
@given(st.sampled_from([(4, 3, 0), (4, 4, 0), (4, 4, 1), (4, 5, 0), (6, 3, 1)]),
       st.sampled_from([1, -1, 2, 3, -5]), st.sampled_from([1, -1, 2, 3, 7]))
def test_verdict_scale_invariance(nm, a, b):
    n, d, m = nm
    base = locus_verdict(n, d, m)
    v = locus_verdict(n, d, m, a=a, b=b)
    assert (v.equal, v.dim_meet, v.dim_delta_tangent) == (base.equal, base.dim_meet, base.dim_delta_tangent)
    assert v.codim_matches


@pytest.mark.parametrize("alphas", [(5, 1, 1), (3, 1, 1)])
def test_verdict_other_second_cycle(alphas):
    v = locus_verdict(4, 4, 1, alphas_b=alphas)
    assert v.codim_matches and v.consistent
