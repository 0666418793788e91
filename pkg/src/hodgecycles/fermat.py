"""Fermat varieties, their linear cycles, and closed forms for both."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .errors import ValidationError
from .exactalg import CycloField
from .hodge import tangent, tangent_meet
from .mpoly import PolyRing
from .periods import CITCycle, HypersurfaceContext, PeriodValue


def fermat_ring(n, d):
    return PolyRing(n + 2, CycloField(2 * d))


def fermat_context(n, d, check=False, max_dim=None):
    """Context for x_0^d + ... + x_{n+1}^d over Q(zeta_{2d}).

    The Gorenstein check is skipped by default: the Fermat Jacobian ideal
    <x_i^{d-1}> is a monomial complete intersection.
    """
    if n < 2 or n % 2:
        raise ValidationError(f"n = {n} must be even and at least 2")
    if d < 2:
        raise ValidationError(f"d = {d} must be at least 2")
    ring = fermat_ring(n, d)
    F = ring.zero
    for i in range(n + 2):
        F = F + ring.var(i) ** d
    kwargs = {} if max_dim is None else {"max_dim": max_dim}
    return HypersurfaceContext(F, check=check, **kwargs)


@dataclass(frozen=True)
class LinearCycleSpec:
    """P^{n/2}_alpha = {x_{2j} - zeta_{2d}^{alpha_j} x_{2j+1} = 0 for all j}."""

    n: int
    d: int
    alphas: tuple

    def __post_init__(self):
        object.__setattr__(self, "alphas", tuple(int(a) for a in self.alphas))
        if self.n < 2 or self.n % 2:
            raise ValidationError(f"n = {self.n} must be even and at least 2")
        if self.d < 2:
            raise ValidationError(f"d = {self.d} must be at least 2")
        if len(self.alphas) != self.n // 2 + 1:
            raise ValidationError(f"need {self.n // 2 + 1} exponents, got {len(self.alphas)}")
        for a in self.alphas:
            if a % 2 == 0 or not 1 <= a <= 2 * self.d - 1:
                raise ValidationError(f"exponent {a} must be odd in [1, {2 * self.d - 1}]")

    @classmethod
    def ones(cls, n, d):
        return cls(n, d, (1,) * (n // 2 + 1))


def _pair_factor(ring, j, power, terms, zeta_exp):
    """sum_{l=0}^{terms-1} zeta^(zeta_exp*l) x_{2j}^{power-l} x_{2j+1}^l."""
    field = ring.field
    x, y = ring.var(2 * j), ring.var(2 * j + 1)
    out = ring.zero
    for l in range(terms):
        out = out + (x ** (power - l) * y ** l).scale(field.zeta_power(zeta_exp * l))
    return out


def linear_cycle(spec, ring=None):
    """The linear cycle with f_j = x_{2j} - zeta^a x_{2j+1} and the matching g_j."""
    ring = ring or fermat_ring(spec.n, spec.d)
    field = ring.field
    fs, gs = [], []
    for j, a in enumerate(spec.alphas):
        fs.append(ring.var(2 * j) - ring.var(2 * j + 1).scale(field.zeta_power(a)))
        gs.append(_pair_factor(ring, j, spec.d - 1, spec.d, a))
    return CITCycle.single(fs, gs)


def associated_poly_closed(spec, ring=None):
    """d^{n/2+1} zeta^{sum alpha} prod_j sum_l x_{2j}^{d-2-l} zeta^{alpha_j l} x_{2j+1}^l."""
    ring = ring or fermat_ring(spec.n, spec.d)
    field = ring.field
    d = spec.d
    P = ring.one.scale(field.zeta_power(sum(spec.alphas)) * d ** (spec.n // 2 + 1))
    for j, a in enumerate(spec.alphas):
        P = P * _pair_factor(ring, j, d - 2, d - 1, a)
    return P


def intersection_dim(spec_a, spec_b):
    """m = dim of the intersection; -1 when empty."""
    if (spec_a.n, spec_a.d) != (spec_b.n, spec_b.d):
        raise ValidationError("linear cycles live in different Fermat varieties")
    return sum(a == b for a, b in zip(spec_a.alphas, spec_b.alphas)) - 1


def linear_intersection_from_m(d, m):
    value = Fraction(1 - (1 - d) ** (m + 1), d)
    assert value.denominator == 1
    return int(value)


def linear_intersection_closed(spec_a, spec_b):
    return linear_intersection_from_m(spec_a.d, intersection_dim(spec_a, spec_b))


def period_exponents(n, d):
    """I_sigma: exponent vectors in {0..d-2}^{n+2} summing to (d-2)(n/2+1)."""
    sigma = (d - 2) * (n // 2 + 1)
    out = []

    def rec(prefix, left, slots):
        if slots == 0:
            if left == 0:
                out.append(prefix)
            return
        for a in range(min(d - 2, left), -1, -1):
            rec(prefix + (a,), left - a, slots - 1)

    rec((), sigma, n + 2)
    return out


def linear_period_closed(n, d, i):
    """Period of x^i over the alpha = (1, ..., 1) linear cycle, in closed form."""
    i = tuple(i)
    sigma = (d - 2) * (n // 2 + 1)
    if len(i) != n + 2 or any(not 0 <= a <= d - 2 for a in i) or sum(i) != sigma:
        raise ValidationError(f"exponent {i} is not in I_sigma for n={n}, d={d}")
    field = CycloField(2 * d)
    half = n // 2
    if all(i[2 * l] + i[2 * l + 1] == d - 2 for l in range(half + 1)):
        alg = field.zeta_power(half + 1 + sum(i[0::2])) / d ** (half + 1)
    else:
        alg = field.zero
    return PeriodValue(half, half, alg)


def codim_formula(n, d, m):
    """Codimension of the meet of two linear-cycle tangent spaces meeting in P^m."""
    half = n // 2
    if not 0 <= m <= half:
        raise ValidationError(f"m = {m} outside [0, {half}]")
    return 2 * comb(half + d, d) - 2 * (half + 1) ** 2 - comb(m + d, d) + (m + 1) ** 2


@dataclass(frozen=True)
class LocusVerdict:
    n: int
    d: int
    m: int
    a: int
    b: int
    alphas_b: tuple
    ambient_dim: int
    dim_meet: int
    dim_delta_tangent: int
    equal: bool
    expected_equal: bool
    codim_formula_value: int

    @property
    def consistent(self):
        return self.equal == self.expected_equal

    @property
    def codim_meet(self):
        return self.ambient_dim - self.dim_meet

    @property
    def codim_matches(self):
        return self.codim_meet == self.codim_formula_value


def default_second_alphas(n, d, m):
    half = n // 2
    return (3,) * (half - m) + (1,) * (m + 1)


def locus_verdict(n, d, m, alphas_b=None, a=1, b=1, workers=1):
    """Decide whether T V_[a P + b P'] equals T V_[P] meet T V_[P'] for two
    Fermat linear cycles sharing the last m+1 coordinate pairs."""
    half = n // 2
    if d < 3:
        raise ValidationError("need d >= 3")
    if not 0 <= m < half:
        raise ValidationError(f"m = {m} must satisfy 0 <= m < n/2 = {half}")
    if a == 0 or b == 0:
        raise ValidationError("a and b must be nonzero")
    alphas_b = tuple(alphas_b) if alphas_b is not None else default_second_alphas(n, d, m)
    if len(alphas_b) != half + 1:
        raise ValidationError(f"second cycle needs {half + 1} exponents")
    for k, al in enumerate(alphas_b):
        if k < half - m:
            if al % 2 == 0 or not 3 <= al <= 2 * d - 1:
                raise ValidationError(
                    f"differing exponent {al} must be odd in [3, {2 * d - 1}]")
        elif al != 1:
            raise ValidationError("shared block of the second cycle must use exponent 1")
    ctx = fermat_context(n, d)
    P1 = associated_poly_closed(LinearCycleSpec.ones(n, d), ctx.ring).scale(a)
    P2 = associated_poly_closed(LinearCycleSpec(n, d, alphas_b), ctx.ring).scale(b)
    meet = tangent_meet(ctx, P1, P2, workers=workers)
    delta = tangent(ctx, P1 + P2, workers=workers)
    equal = meet.tangent_dim == delta.tangent_dim and delta.basis.contains_space(meet.basis)
    expected = Fraction(m) < Fraction(half) - Fraction(d, d - 2)
    return LocusVerdict(
        n=n, d=d, m=m, a=a, b=b, alphas_b=alphas_b,
        ambient_dim=meet.ambient_dim, dim_meet=meet.tangent_dim,
        dim_delta_tangent=delta.tangent_dim, equal=equal, expected_equal=expected,
        codim_formula_value=codim_formula(n, d, m),
    )


thm3_verdict = locus_verdict
