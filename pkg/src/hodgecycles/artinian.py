"""Graded linear algebra for homogeneous ideals.

A degree slice I_e is held as the canonical reduced row echelon form of its
span inside the monomial coordinates of degree e (columns in descending
grlex order).  Non-pivot monomials are the standard monomials and give the
basis of the quotient R_e.  Monomial ideals never go through elimination:
membership is read off the exponents.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache

from . import _linalg
from .errors import DegreeError, NotProportionalError, ResourceLimitError
from .mpoly import Poly, count_monomials, monomials_of_degree

DEFAULT_MAX_DIM = 200_000


@lru_cache(maxsize=256)
def monomial_basis(num_vars, e):
    monos = tuple(monomials_of_degree(num_vars, e))
    return monos, {m: i for i, m in enumerate(monos)}


def _guard(num_vars, e, limit):
    need = count_monomials(num_vars, e)
    if need > limit:
        raise ResourceLimitError(
            f"degree-{e} slice in {num_vars} variables needs {need} monomials "
            f"(limit {limit})", required=need, limit=limit)
    return need


class GradedIdeal:
    """Homogeneous ideal given by generators, with cached degree slices."""

    def __init__(self, ring, generators, max_dim=DEFAULT_MAX_DIM, fast_path=True):
        gens = tuple(generators)
        if not gens:
            raise ValueError("an ideal needs at least one generator")
        for g in gens:
            if g.ring != ring:
                raise ValueError("generator from a different ring")
            if g.is_zero():
                raise ValueError("zero generator")
            g.degree()
        self.ring = ring
        self.generators = gens
        self.max_dim = max_dim
        self.is_monomial = all(g.is_monomial() for g in gens)
        self.fast_path = fast_path and self.is_monomial
        self._slices = {}
        if self.is_monomial:
            self._gen_monos = tuple(next(iter(g.terms)) for g in gens)
            bounds = [None] * ring.num_vars
            others = []
            for m in self._gen_monos:
                support = [i for i, a in enumerate(m) if a]
                if len(support) == 1:
                    i = support[0]
                    if bounds[i] is None or m[i] < bounds[i]:
                        bounds[i] = m[i]
                else:
                    others.append(m)
            self._power_bounds = tuple(bounds)
            self._other_monos = tuple(others)
        self.is_pure_power = (self.is_monomial and not self._other_monos
                              and None not in self._power_bounds)

    def __repr__(self):
        gens = ", ".join(g.render() for g in self.generators)
        return f"GradedIdeal<{gens}>"

    # -- monomial fast path --

    def contains_monomial(self, mono):
        """Membership of a monomial in a monomial ideal."""
        for a, b in zip(mono, self._power_bounds):
            if b is not None and a >= b:
                return True
        for g in self._other_monos:
            if all(a >= b for a, b in zip(mono, g)):
                return True
        return False

    def standard_box(self, e, max_dim=None):
        """Degree-e standard monomials of a pure-power ideal, descending grlex."""
        limit = self.max_dim if max_dim is None else max_dim
        caps = [b - 1 for b in self._power_bounds]
        out = []
        k = len(caps)
        tail = [sum(caps[i:]) for i in range(k)] + [0]

        def rec(i, prefix, left):
            if i == k - 1:
                if left <= caps[i]:
                    out.append(prefix + (left,))
                    if len(out) > limit:
                        raise ResourceLimitError(
                            f"more than {limit} standard monomials in degree {e}",
                            limit=limit)
                return
            for a in range(min(caps[i], left), -1, -1):
                if left - a <= tail[i + 1]:
                    rec(i + 1, prefix + (a,), left - a)

        if 0 <= e <= tail[0]:
            rec(0, (), e)
        return out

    def slice(self, e, max_dim=None):
        return slice_basis(self, e, max_dim)


class SliceBasis:
    """Canonical echelon basis of a subspace of the degree-e polynomials.

    Used both for ideal slices I_e and for colon slices (I:P)_e.
    ``rows`` are dicts from monomial index to scalar with a leading one at
    the pivot; ``standard`` are the non-pivot indices.
    """

    def __init__(self, num_vars, degree, field, pivots, rows=None):
        self.num_vars = num_vars
        self.degree = degree
        self.field = field
        self.monomials, self.index = monomial_basis(num_vars, degree)
        self.pivots = tuple(pivots)
        self._rows = None if rows is None else tuple(rows)
        piv = set(self.pivots)
        self.standard = tuple(i for i in range(len(self.monomials)) if i not in piv)
        self._pivot_map = None

    @property
    def rows(self):
        if self._rows is None:
            one = self.field.one
            self._rows = tuple({p: one} for p in self.pivots)
        return self._rows

    @property
    def pivot_map(self):
        if self._pivot_map is None:
            self._pivot_map = dict(zip(self.pivots, self.rows))
        return self._pivot_map

    @property
    def ambient_dim(self):
        return len(self.monomials)

    @property
    def dim(self):
        return len(self.pivots)

    @property
    def quotient_dim(self):
        return len(self.standard)

    @property
    def standard_monomials(self):
        return tuple(self.monomials[i] for i in self.standard)

    @property
    def pivot_monomials(self):
        return tuple(self.monomials[i] for i in self.pivots)

    def same_ambient(self, other):
        return (self.num_vars, self.degree, self.field) == (other.num_vars, other.degree, other.field)

    def reduce(self, vec):
        return _linalg.reduce_vector(vec, self.pivot_map)

    def contains(self, vec):
        return not self.reduce(vec)

    def contains_space(self, other):
        return all(self.contains(r) for r in other.rows)

    def vector(self, p):
        if p.is_zero():
            return {}
        if p.degree() != self.degree:
            raise DegreeError(f"expected degree {self.degree}, got {p.degree()}")
        return {self.index[m]: c for m, c in p.terms.items()}

    def poly(self, ring, vec):
        return Poly(ring, {self.monomials[i]: c for i, c in vec.items()})

    def basis_polys(self, ring):
        return [self.poly(ring, r) for r in self.rows]

    def __eq__(self, other):
        if not isinstance(other, SliceBasis):
            return NotImplemented
        return self.same_ambient(other) and self.pivots == other.pivots and self.rows == other.rows

    def __repr__(self):
        return (f"SliceBasis(vars={self.num_vars}, degree={self.degree}, "
                f"dim={self.dim}, ambient={self.ambient_dim})")


def slice_basis(I, e, max_dim=None):
    """Canonical SliceBasis of I_e."""
    if e < 0:
        raise ValueError("negative degree")
    limit = I.max_dim if max_dim is None else max_dim
    _guard(I.ring.num_vars, e, limit)
    cached = I._slices.get(e)
    if cached is not None:
        return cached
    monos, index = monomial_basis(I.ring.num_vars, e)
    field = I.ring.field
    if I.fast_path:
        pivots = [i for i, m in enumerate(monos) if I.contains_monomial(m)]
        sb = SliceBasis(I.ring.num_vars, e, field, pivots)
    else:
        ech = _linalg.Echelon()
        for g in I.generators:
            k = e - g.degree()
            if k < 0:
                continue
            for shift in monomials_of_degree(I.ring.num_vars, k):
                vec = {}
                for m, c in g.terms.items():
                    vec[index[tuple(a + b for a, b in zip(m, shift))]] = c
                ech.add(vec)
                if len(ech) == len(monos):
                    break
        rows = ech.rows()
        sb = SliceBasis(I.ring.num_vars, e, field, [min(r) for r in rows], rows)
    I._slices[e] = sb
    return sb


def slice_dense(I, e, max_dim=None):
    """I_e by elimination even for monomial ideals (cross-check path)."""
    J = GradedIdeal(I.ring, I.generators, I.max_dim, fast_path=False)
    return slice_basis(J, e, max_dim)


def normal_form(p, I):
    """Representative of p + I supported on standard monomials."""
    if p.ring != I.ring:
        raise ValueError("ring mismatch")
    if p.is_zero():
        return p
    if I.fast_path:
        return Poly._raw(p.ring, {m: c for m, c in p.terms.items()
                                  if not I.contains_monomial(m)})
    sb = slice_basis(I, p.degree())
    return sb.poly(p.ring, sb.reduce(sb.vector(p)))


@dataclass(frozen=True)
class HilbertProfile:
    dims: tuple

    def __getitem__(self, e):
        return self.dims[e] if e < len(self.dims) else None

    def __iter__(self):
        return iter(self.dims)

    def __len__(self):
        return len(self.dims)

    def render(self):
        return ",".join(str(x) for x in self.dims)


def quotient_dim(I, e, max_dim=None):
    limit = I.max_dim if max_dim is None else max_dim
    if I.fast_path and I.is_pure_power:
        return len(I.standard_box(e, max_dim))
    if I.fast_path:
        _guard(I.ring.num_vars, e, limit)
        return sum(1 for m in monomials_of_degree(I.ring.num_vars, e)
                   if not I.contains_monomial(m))
    return slice_basis(I, e, max_dim).quotient_dim


def hilbert_function(I, e_max, max_dim=None):
    """dim R_e for 0 <= e <= e_max."""
    return HilbertProfile(tuple(quotient_dim(I, e, max_dim) for e in range(e_max + 1)))


def expected_ci_hilbert(num_vars, degrees, e_max):
    """Coefficients of prod_j (1 - t^{d_j}) / (1 - t)^{num_vars} up to t^e_max."""
    series = [0] * (e_max + 1)
    series[0] = 1
    for dj in degrees:
        for e in range(e_max, dj - 1, -1):
            series[e] -= series[e - dj]
    for _ in range(num_vars):
        for e in range(1, e_max + 1):
            series[e] += series[e - 1]
    return tuple(series)


@dataclass(frozen=True)
class GorensteinReport:
    sigma: int
    socle_dim: int
    above_dim: int
    pairing_ranks: tuple
    pairing_dims: tuple = dc_field(default=())

    @property
    def socle_dim_ok(self):
        return self.socle_dim == 1

    @property
    def vanishing_ok(self):
        return self.above_dim == 0

    @property
    def pairing_ok(self):
        if not self.socle_dim_ok:
            return False
        return all(r == a == b for r, (a, b) in zip(self.pairing_ranks, self.pairing_dims))

    @property
    def passes(self):
        return self.socle_dim_ok and self.vanishing_ok and self.pairing_ok


def _standard(I, e):
    """Standard monomials of degree e (monomial ideals skip the slice object)."""
    if I.fast_path and I.is_pure_power:
        return I.standard_box(e)
    if I.fast_path:
        _guard(I.ring.num_vars, e, I.max_dim)
        return [m for m in monomials_of_degree(I.ring.num_vars, e) if not I.contains_monomial(m)]
    return list(slice_basis(I, e).standard_monomials)


def gorenstein_check(I, sigma):
    """Check Macaulay's three properties for R = S/I with socle degree sigma.

    pairing_ranks[i] is the rank of R_i x R_{sigma-i} -> R_sigma for i <= sigma/2.
    """
    top = _standard(I, sigma)
    above = quotient_dim(I, sigma + 1)
    ranks = []
    dims = []
    if len(top) == 1:
        socle = top[0]
        sb_top = None if I.fast_path else slice_basis(I, sigma)
        for i in range(sigma // 2 + 1):
            left = _standard(I, i)
            right = _standard(I, sigma - i)
            dims.append((len(left), len(right)))
            rindex = {m: k for k, m in enumerate(right)}
            rows = []
            for a in left:
                if I.fast_path:
                    b = tuple(s - x for s, x in zip(socle, a))
                    row = {rindex[b]: I.ring.field.one} if min(b) >= 0 and b in rindex else {}
                else:
                    pa = I.ring.monomial(a)
                    row = {}
                    sidx = sb_top.index[socle]
                    for k, b in enumerate(right):
                        vec = sb_top.reduce(sb_top.vector(pa * I.ring.monomial(b)))
                        c = vec.get(sidx)
                        if c:
                            row[k] = c
                rows.append(row)
            ranks.append(_linalg.rank(rows))
    return GorensteinReport(sigma, len(top), above, tuple(ranks), tuple(dims))


def scalar_ratio(P, Q, I):
    """The c with P = c*Q mod I.  Requires Q not in I and proportional normal forms."""
    if not P.is_zero() and not Q.is_zero() and P.degree() != Q.degree():
        raise DegreeError(f"degrees differ: {P.degree()} vs {Q.degree()}")
    nq = normal_form(Q, I)
    if nq.is_zero():
        raise NotProportionalError("Q lies in the ideal; the ratio is not unique")
    npoly = normal_form(P, I)
    lead, qc = nq.sorted_terms()[0]
    c = npoly.coefficient(lead) / qc
    if npoly != nq.scale(c):
        raise NotProportionalError("P is not proportional to Q modulo the ideal")
    return c


def full_space(num_vars, e, field):
    monos, _ = monomial_basis(num_vars, e)
    return SliceBasis(num_vars, e, field, range(len(monos)))


def colon_slice(I, P, e, workers=1, max_dim=None):
    """(I:P)_e as the kernel of q -> normal_form(q*P)."""
    ring = I.ring
    limit = I.max_dim if max_dim is None else max_dim
    _guard(ring.num_vars, e, limit)
    monos, _ = monomial_basis(ring.num_vars, e)
    if P.is_zero():
        return full_space(ring.num_vars, e, ring.field)
    mu = P.degree()
    columns = []
    if I.fast_path:
        for m in monos:
            col = {}
            for pm, c in P.terms.items():
                t = tuple(a + b for a, b in zip(m, pm))
                if not I.contains_monomial(t):
                    col[t] = c
            columns.append(col)
    else:
        target = slice_basis(I, e + mu, max_dim)
        for m in monos:
            vec = {}
            for pm, c in P.terms.items():
                vec[target.index[tuple(a + b for a, b in zip(m, pm))]] = c
            columns.append(target.reduce(vec))
    rows = _linalg.kernel(columns, ring.field, workers=workers)
    return SliceBasis(ring.num_vars, e, ring.field, [min(r) for r in rows], rows)


def slice_meet(A, B, workers=1):
    """Intersection of two subspaces of the same degree-e coordinate space."""
    if not A.same_ambient(B):
        raise ValueError("subspaces live in different ambient spaces")
    columns = []
    amap, bmap = A.pivot_map, B.pivot_map
    for c in range(A.ambient_dim):
        col = {}
        for tag, pm in ((0, amap), (1, bmap)):
            row = pm.get(c)
            if row is None:
                col[(tag, c)] = A.field.one
            else:
                for k, v in row.items():
                    if k != c:
                        col[(tag, k)] = -v
        columns.append(col)
    rows = _linalg.kernel(columns, A.field, workers=workers)
    return SliceBasis(A.num_vars, A.degree, A.field, [min(r) for r in rows], rows)
