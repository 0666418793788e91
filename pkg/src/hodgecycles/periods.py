"""Periods, cycle classes and intersection numbers of complete-intersection cycles.

Everything reduces to one primitive: the scalar c with X = c * det(Hess F)
modulo the Jacobian ideal, taken in the socle degree (d-2)(n+2).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial, prod

from .artinian import (
    DEFAULT_MAX_DIM, GradedIdeal, expected_ci_hilbert, gorenstein_check,
    hilbert_function, normal_form, scalar_ratio,
)
from .errors import DegreeError, NotProportionalError, ValidationError
from .exactalg import CycloScalar
from .mpoly import Poly, det_poly, hessian, jacobian


@dataclass(frozen=True)
class PeriodValue:
    """(2*pi*i)^tpi_power / (inv_factorial!)^factorial_power * algebraic."""

    tpi_power: int
    inv_factorial: int
    algebraic: CycloScalar
    factorial_power: int = 1

    @property
    def coefficient(self):
        """The algebraic number multiplying (2*pi*i)^tpi_power."""
        return self.algebraic / factorial(self.inv_factorial) ** self.factorial_power

    def is_zero(self):
        return self.algebraic.is_zero()

    def same_value(self, other):
        if self.is_zero() and other.is_zero():
            return True
        return self.tpi_power == other.tpi_power and self.coefficient == other.coefficient

    def render(self):
        if self.factorial_power == 1:
            div = f"{self.inv_factorial}!"
        else:
            div = f"({self.inv_factorial}!)^{self.factorial_power}"
        return f"(2*pi*i)^{self.tpi_power}/{div} * ({self.algebraic.render()})"

    __str__ = render


@dataclass(frozen=True)
class Summand:
    coeff: int
    fs: tuple
    gs: tuple

    def __post_init__(self):
        object.__setattr__(self, "fs", tuple(self.fs))
        object.__setattr__(self, "gs", tuple(self.gs))
        object.__setattr__(self, "coeff", int(self.coeff))

    @property
    def H(self):
        """(f_1, g_1, f_2, g_2, ...), the order used for the Jacobian."""
        out = []
        for f, g in zip(self.fs, self.gs):
            out += [f, g]
        return tuple(out)

    def degree(self):
        return prod(f.degree() for f in self.fs)


@dataclass(frozen=True)
class CITCycle:
    """Integer combination of complete intersections sum_i n_i Z_i."""

    summands: tuple

    def __post_init__(self):
        object.__setattr__(self, "summands", tuple(self.summands))
        if not self.summands:
            raise ValueError("a cycle needs at least one summand")

    @classmethod
    def single(cls, fs, gs, coeff=1):
        return cls((Summand(coeff, fs, gs),))

    def __add__(self, other):
        return CITCycle(self.summands + other.summands)

    def __rmul__(self, k):
        return CITCycle(tuple(Summand(k * s.coeff, s.fs, s.gs) for s in self.summands))

    def __neg__(self):
        return (-1) * self

    def degree(self):
        """Bezout degree sum_i n_i prod_j deg f_ij."""
        return sum(s.coeff * s.degree() for s in self.summands)


@dataclass(frozen=True)
class CycleClassRepr:
    theta_coeff: Fraction
    primitive_scale: Fraction
    primitive_poly: Poly
    primitive_nf: Poly

    @property
    def is_theta_multiple(self):
        return self.primitive_nf.is_zero()


class HypersurfaceContext:
    """A smooth even-dimensional hypersurface X = {F = 0} with its Jacobian ring."""

    def __init__(self, F, check=True, max_dim=DEFAULT_MAX_DIM):
        ring = F.ring
        n = ring.num_vars - 2
        if n < 2 or n % 2:
            raise ValidationError(f"dimension n = {n} must be even and at least 2")
        d = F.degree()
        if d < 2:
            raise ValidationError(f"degree {d} must be at least 2")
        partials = [F.partial(i) for i in range(ring.num_vars)]
        if any(p.is_zero() for p in partials):
            raise ValidationError("F has a vanishing partial derivative; X is singular")
        self.F = F
        self.ring = ring
        self.n = n
        self.d = d
        self.sigma = (d - 2) * (n // 2 + 1)
        self.socle = (d - 2) * (n + 2)
        self.J = GradedIdeal(ring, partials, max_dim=max_dim)
        self.gorenstein = None
        if check:
            self.gorenstein = gorenstein_check(self.J, self.socle)
            if not self.gorenstein.passes:
                raise ValidationError(
                    "Jacobian ring is not Artinian Gorenstein of socle "
                    f"{self.socle}; F is not smooth")
        self._hess = None
        self._hess_nf = None
        self._summand_polys = {}
        self._valid = set()

    @property
    def field(self):
        return self.ring.field

    @property
    def hess_det(self):
        if self._hess is None:
            self._hess = det_poly(hessian(self.F))
        return self._hess

    @property
    def hess_nf(self):
        if self._hess_nf is None:
            self._hess_nf = normal_form(self.hess_det, self.J)
            if self._hess_nf.is_zero():
                raise ValidationError("det(Hess F) lies in the Jacobian ideal; F is not smooth")
        return self._hess_nf

    def hess_ratio(self, X):
        """c with X = c * det(Hess F) modulo J, for X of socle degree."""
        if X.is_zero():
            return self.field.zero
        if X.degree() != self.socle:
            raise DegreeError(f"expected degree {self.socle}, got {X.degree()}")
        nx = normal_form(X, self.J)
        hnf = self.hess_nf
        lead, hc = hnf.sorted_terms()[0]
        c = nx.coefficient(lead) / hc
        if nx != hnf.scale(c):
            raise NotProportionalError("not proportional to det(Hess F) modulo J")
        return c

    def product_ratio(self, A, B):
        """hess_ratio(A*B) without forming the terms that vanish modulo J."""
        if A.is_zero() or B.is_zero():
            return self.field.zero
        if not self.J.fast_path:
            return self.hess_ratio(A * B)
        if A.degree() + B.degree() != self.socle:
            raise DegreeError(f"product degree must be {self.socle}")
        acc = {}
        J = self.J
        if J.is_pure_power:
            targets = J.standard_box(self.socle)
            if len(targets) < len(B.terms):
                for s in targets:
                    tot = None
                    for m1, c1 in A.terms.items():
                        c2 = B.terms.get(tuple(x - y for x, y in zip(s, m1)))
                        if c2 is not None:
                            t = c1 * c2
                            tot = t if tot is None else tot + t
                    if tot is not None:
                        acc[s] = tot
                return self.hess_ratio(Poly(self.ring, acc))
        contains = J.contains_monomial
        for m1, c1 in A.terms.items():
            for m2, c2 in B.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                if contains(m):
                    continue
                t = c1 * c2
                s = acc.get(m)
                acc[m] = t if s is None else s + t
        return self.hess_ratio(Poly(self.ring, acc))

    def summand_poly(self, s):
        """det(Jac(H)) for one summand, cached."""
        key = (s.fs, s.gs)
        p = self._summand_polys.get(key)
        if p is None:
            p = det_poly(jacobian(s.H, self.ring))
            self._summand_polys[key] = p
        return p


def _check_summand(ctx, s, k):
    half = ctx.n // 2 + 1
    if len(s.fs) != half or len(s.gs) != half:
        raise ValidationError(
            f"summand {k}: need {half} f's and {half} g's, got {len(s.fs)} and {len(s.gs)}")
    for j, (f, g) in enumerate(zip(s.fs, s.gs)):
        if f.ring != ctx.ring or g.ring != ctx.ring:
            raise ValidationError(f"summand {k}: polynomial from a different ring")
        if f.is_zero():
            raise ValidationError(f"summand {k}: f_{j + 1} is zero")
        try:
            df = f.degree()
            dg = None if g.is_zero() else g.degree()
        except DegreeError as exc:
            raise ValidationError(f"summand {k}, pair {j + 1}: {exc}") from exc
        if dg is not None and df + dg != ctx.d:
            raise ValidationError(
                f"summand {k}, pair {j + 1}: deg f + deg g = {df + dg}, expected {ctx.d}")
        if df > ctx.d:
            raise ValidationError(f"summand {k}, pair {j + 1}: deg f = {df} exceeds d = {ctx.d}")


@dataclass(frozen=True)
class CycleReport:
    degree: int
    summand_degrees: tuple
    ci_profiles: tuple


def validate_cycle(ctx, cycle, ci_check=False):
    """Check F = sum_j f_ij g_ij and degree bookkeeping for every summand.

    With ``ci_check`` the Hilbert function of <f_i1, ..., f_ik> is compared with
    the complete-intersection series up to degree sum_j deg f_ij.  This only
    certifies a regular sequence in that degree range.
    """
    profiles = []
    for k, s in enumerate(cycle.summands):
        if not ci_check and (s.fs, s.gs) in ctx._valid:
            continue
        _check_summand(ctx, s, k)
        if ci_check:
            degs = [f.degree() for f in s.fs]
            top = sum(degs)
            got = hilbert_function(GradedIdeal(ctx.ring, s.fs, ctx.J.max_dim), top)
            want = expected_ci_hilbert(ctx.ring.num_vars, degs, top)
            if tuple(got) != want:
                raise ValidationError(
                    f"summand {k}: f's fail the complete-intersection check "
                    f"(Hilbert function {tuple(got)}, expected {want})")
            profiles.append(tuple(got))
        total = ctx.ring.zero
        for f, g in zip(s.fs, s.gs):
            total = total + f * g
        residual = total - ctx.F
        if residual:
            raise ValidationError(
                f"summand {k}: sum f*g differs from F by {residual.render()}", residual=residual)
        ctx._valid.add((s.fs, s.gs))
    return CycleReport(cycle.degree(), tuple(s.degree() for s in cycle.summands),
                       tuple(profiles))


def associated_polynomial(ctx, cycle):
    """P_delta = sum_i n_i det(Jac(f_i1, g_i1, ..., f_ik, g_ik))."""
    validate_cycle(ctx, cycle)
    total = ctx.ring.zero
    for s in cycle.summands:
        total = total + ctx.summand_poly(s).scale(s.coeff)
    return total


def _require_sigma(ctx, P):
    if not P.is_zero() and P.degree() != ctx.sigma:
        raise DegreeError(f"polynomial must have degree {ctx.sigma}, got {P.degree()}")


def period_constant(ctx, cycle, P):
    """sum_i n_i c_i with P*det(Jac H_i) = c_i * det(Hess F) mod J."""
    _require_sigma(ctx, P)
    validate_cycle(ctx, cycle)
    c = ctx.field.zero
    for s in cycle.summands:
        c = c + ctx.product_ratio(P, ctx.summand_poly(s)) * s.coeff
    return c


def period(ctx, cycle, P):
    """Integral over the cycle of res(P Omega / F^{n/2+1})."""
    c = period_constant(ctx, cycle, P)
    half = ctx.n // 2
    return PeriodValue(half, half, c * (ctx.d - 1) ** (ctx.n + 2))


def cycle_class(ctx, cycle):
    P = associated_polynomial(ctx, cycle)
    return CycleClassRepr(
        theta_coeff=Fraction(cycle.degree(), ctx.d),
        primitive_scale=Fraction(-factorial(ctx.n // 2), ctx.d),
        primitive_poly=P,
        primitive_nf=normal_form(P, ctx.J),
    )


def is_theta_multiple(ctx, cycle):
    return cycle_class(ctx, cycle).is_theta_multiple


def cup_primitive(ctx, P, Q):
    """Integral over X of omega_P ^ omega_Q."""
    _require_sigma(ctx, P)
    _require_sigma(ctx, Q)
    c = ctx.product_ratio(P, Q)
    alg = -c * ((ctx.d - 1) ** (ctx.n + 2) * ctx.d)
    return PeriodValue(ctx.n, ctx.n // 2, alg, factorial_power=2)


@dataclass(frozen=True)
class IntersectionReport:
    value: int
    c: Fraction
    c_scaled: int
    degree_a: int
    degree_b: int


def intersection_report(ctx, delta, mu):
    validate_cycle(ctx, delta)
    validate_cycle(ctx, mu)
    c = ctx.field.zero
    for s in delta.summands:
        ps = ctx.summand_poly(s)
        for t in mu.summands:
            c = c + ctx.product_ratio(ps, ctx.summand_poly(t)) * (s.coeff * t.coeff)
    if not c.is_rational():
        raise ValidationError(f"intersection constant c = {c} is not rational")
    c = c.to_rational()
    d = ctx.d
    scaled = c * (d - 1) ** (ctx.n + 2)
    da, db = delta.degree(), mu.degree()
    value = Fraction(da * db, d) - scaled / d
    if value.denominator != 1 or scaled.denominator != 1:
        raise ValidationError(
            f"non-integral intersection data: delta.mu = {value}, c*(d-1)^(n+2) = {scaled}")
    if (int(scaled) - da * db) % d:
        raise ValidationError("c*(d-1)^(n+2) is not congruent to deg(delta)*deg(mu) mod d")
    return IntersectionReport(int(value), c, int(scaled), da, db)


def intersection_number(ctx, delta, mu):
    """delta . mu = deg(delta) deg(mu)/d - c (d-1)^{n+2}/d, as an int."""
    return intersection_report(ctx, delta, mu).value


def top_form_period(f, Q):
    """Integral over P^{n+1} of Q Omega / (f_0 ... f_{n+1})."""
    f = list(f)
    ring = f[0].ring
    k = ring.num_vars
    if len(f) != k:
        raise ValidationError(f"need {k} polynomials, got {len(f)}")
    degs = {p.degree() for p in f}
    if len(degs) != 1:
        raise DegreeError(f"polynomials have mixed degrees {sorted(degs)}")
    l = degs.pop()
    top = (l - 1) * k
    if not Q.is_zero() and Q.degree() != top:
        raise DegreeError(f"Q must have degree {top}, got {Q.degree()}")
    I = GradedIdeal(ring, f)
    if not gorenstein_check(I, top).passes:
        raise ValidationError("the f_i have a common zero in projective space")
    c = scalar_ratio(Q, det_poly(jacobian(f, ring)), I) if Q else ring.field.zero
    sign = -1 if comb(k, 2) % 2 else 1
    return PeriodValue(k - 1, 0, c * (l ** k * sign))
