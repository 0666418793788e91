"""Zariski tangent spaces of Hodge loci as degree-d colon slices."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .artinian import SliceBasis, colon_slice, normal_form, slice_meet
from .errors import DegreeError, ValidationError
from .mpoly import Poly


@dataclass(frozen=True)
class TangentReport:
    ambient_dim: int
    tangent_dim: int
    basis: Optional[SliceBasis] = None

    @property
    def codim(self):
        return self.ambient_dim - self.tangent_dim


def _check_sigma(ctx, P):
    if not P.is_zero() and P.degree() != ctx.sigma:
        raise DegreeError(f"expected degree {ctx.sigma}, got {P.degree()}")


def tangent(ctx, P_delta, workers=1):
    """T V_[delta] = (J^F : P_delta)_d."""
    _check_sigma(ctx, P_delta)
    sb = colon_slice(ctx.J, P_delta, ctx.d, workers=workers)
    return TangentReport(sb.ambient_dim, sb.dim, sb)


def tangent_meet(ctx, P_1, P_2, workers=1):
    """(J^F : P_1)_d intersected with (J^F : P_2)_d."""
    _check_sigma(ctx, P_1)
    _check_sigma(ctx, P_2)
    a = colon_slice(ctx.J, P_1, ctx.d, workers=workers)
    if P_1 == P_2:
        return TangentReport(a.ambient_dim, a.dim, a)
    b = colon_slice(ctx.J, P_2, ctx.d, workers=workers)
    meet = slice_meet(a, b, workers=workers)
    return TangentReport(meet.ambient_dim, meet.dim, meet)


@dataclass(frozen=True)
class ColonEquality:
    holds: bool
    lhs_dim: int
    rhs_dim: int
    witness: Optional[Poly] = None


def colon_equality(I, R_1, R_2, e, workers=1):
    """Compare (I:R_1)_e meet (I:R_2)_e with (I:R_1+R_2)_e.

    The meet always sits inside the right side; on failure the witness is the
    first canonical basis vector of the right side not in the meet.
    """
    def check(name, p):
        if p.is_zero() or not p.is_homogeneous():
            raise ValidationError(f"{name} must be a nonzero homogeneous polynomial")
        if normal_form(p, I).is_zero():
            raise ValidationError(f"{name} lies in the ideal")

    check("R_1", R_1)
    check("R_2", R_2)
    if R_1.degree() != R_2.degree():
        raise DegreeError("R_1 and R_2 must have the same degree")
    S = R_1 + R_2
    check("R_1+R_2", S)
    a = colon_slice(I, R_1, e, workers=workers)
    b = colon_slice(I, R_2, e, workers=workers)
    meet = slice_meet(a, b, workers=workers)
    rhs = colon_slice(I, S, e, workers=workers)
    if not rhs.contains_space(meet):
        raise AssertionError("meet of colon slices escaped the sum colon slice")
    witness = None
    if meet.dim != rhs.dim:
        for row in rhs.rows:
            if not meet.contains(row):
                witness = rhs.poly(I.ring, row)
                break
    return ColonEquality(meet.dim == rhs.dim, meet.dim, rhs.dim, witness)
