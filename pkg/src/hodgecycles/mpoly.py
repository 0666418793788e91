"""Sparse homogeneous polynomials over a cyclotomic field.

Monomials are exponent tuples.  The canonical term order is graded
lexicographic with x0 > x1 > ... > x_{k-1}; every rendering and every
basis choice downstream follows it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from numbers import Rational as _RationalABC

from .errors import DegreeError, ParseError, RingMismatchError
from .exactalg import CycloField, CycloScalar

DEFAULT_DET_LIMIT = 12


def grlex_key(mono):
    """Sort key putting monomials in descending graded-lex order."""
    return (-sum(mono), tuple(-e for e in mono))


def monomials_of_degree(num_vars, e):
    """All degree-e monomials in ``num_vars`` variables, descending grlex."""
    out = []

    def rec(prefix, left, slots):
        if slots == 1:
            out.append(prefix + (left,))
            return
        for a in range(left, -1, -1):
            rec(prefix + (a,), left - a, slots - 1)

    if e < 0:
        return []
    rec((), e, num_vars)
    return out


def count_monomials(num_vars, e):
    return comb(e + num_vars - 1, num_vars - 1) if e >= 0 else 0


def render_monomial(mono):
    parts = []
    for i, a in enumerate(mono):
        if a == 1:
            parts.append(f"x{i}")
        elif a > 1:
            parts.append(f"x{i}^{a}")
    return "*".join(parts)


@dataclass(frozen=True)
class PolyRing:
    num_vars: int
    field: CycloField

    def __post_init__(self):
        if self.num_vars < 2:
            raise ValueError(f"need at least 2 variables, got {self.num_vars}")

    @property
    def zero(self):
        return Poly(self, {})

    @property
    def one(self):
        return self.const(1)

    def const(self, c):
        c = self.field.coerce(c)
        return Poly._raw(self, {(0,) * self.num_vars: c} if c else {})

    def var(self, i):
        if not 0 <= i < self.num_vars:
            raise IndexError(f"variable x{i} out of range for {self.num_vars} variables")
        exps = [0] * self.num_vars
        exps[i] = 1
        return Poly._raw(self, {tuple(exps): self.field.one})

    def monomial(self, exps, coeff=1):
        exps = tuple(int(a) for a in exps)
        if len(exps) != self.num_vars or min(exps) < 0:
            raise ValueError(f"bad exponent vector {exps}")
        c = self.field.coerce(coeff)
        return Poly._raw(self, {exps: c} if c else {})

    def parse(self, text):
        return parse_poly(text, self)


class Poly:
    """Immutable sparse polynomial; ``terms`` maps exponent tuples to nonzero scalars."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring, terms=None):
        clean = {}
        for mono, c in (terms or {}).items():
            mono = tuple(int(a) for a in mono)
            if len(mono) != ring.num_vars:
                raise ValueError(f"monomial {mono} has wrong length")
            c = ring.field.coerce(c)
            if c:
                clean[mono] = c
        self.ring = ring
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, ring, terms):
        self = object.__new__(cls)
        self.ring = ring
        self.terms = terms
        self._hash = None
        return self

    # -- structure --

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: grlex_key(kv[0]))

    def is_homogeneous(self):
        degs = {sum(m) for m in self.terms}
        return len(degs) <= 1

    def degree(self):
        """Total degree of a nonzero homogeneous polynomial."""
        if not self.terms:
            raise DegreeError("the zero polynomial has no degree")
        degs = {sum(m) for m in self.terms}
        if len(degs) != 1:
            raise DegreeError(f"polynomial is not homogeneous (degrees {sorted(degs)})")
        return degs.pop()

    def is_monomial(self):
        return len(self.terms) == 1

    def coefficient(self, mono):
        return self.terms.get(tuple(mono), self.ring.field.zero)

    def variables(self):
        used = set()
        for m in self.terms:
            used.update(i for i, a in enumerate(m) if a)
        return sorted(used)

    # -- arithmetic --

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise RingMismatchError(f"{other.ring} vs {self.ring}")
            return other
        if isinstance(other, (int, _RationalABC, CycloScalar)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m)
            if s is None:
                out[m] = c
            else:
                s = s + c
                if s:
                    out[m] = s
                else:
                    del out[m]
        return Poly._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c):
        c = self.ring.field.coerce(c)
        if not c:
            return self.ring.zero
        return Poly._raw(self.ring, {m: a * c for m, a in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, _RationalABC, CycloScalar)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                c = c1 * c2
                s = out.get(m)
                out[m] = c if s is None else s + c
        return Poly._raw(self.ring, {m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k):
        k = int(k)
        if k < 0:
            raise ValueError("negative polynomial power")
        result = self.ring.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def partial(self, i):
        """d/dx_i."""
        if not 0 <= i < self.ring.num_vars:
            raise IndexError(f"variable x{i} out of range")
        out = {}
        for m, c in self.terms.items():
            a = m[i]
            if a:
                m2 = m[:i] + (a - 1,) + m[i + 1:]
                out[m2] = c * a
        return Poly._raw(self.ring, out)

    # -- comparison --

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, _RationalABC, CycloScalar)):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    # -- display --

    def render(self):
        """Canonical text; ``parse_poly`` reads it back to an equal Poly."""
        if not self.terms:
            return "0"
        out = []
        for mono, c in self.sorted_terms():
            mtxt = render_monomial(mono)
            if c.is_rational():
                q = c.to_rational()
                neg = q < 0
                mag = abs(q)
                ctxt = f"{mag.numerator}" if mag.denominator == 1 else \
                    f"{mag.numerator}/{mag.denominator}"
                if not mtxt:
                    body = ctxt
                elif mag == 1:
                    body = mtxt
                else:
                    body = f"{ctxt}*{mtxt}"
            else:
                neg = False
                body = f"({c.render()})" + (f"*{mtxt}" if mtxt else "")
            if not out:
                out.append(("-" if neg else "") + body)
            else:
                out.append((" - " if neg else " + ") + body)
        return "".join(out)

    __str__ = render

    def __repr__(self):
        return f"Poly({self.render()!r})"


# -- parsing ---------------------------------------------------------------

class _Parser:
    def __init__(self, text, ring):
        self.text = text
        self.ring = ring
        self.pos = 0

    def error(self, msg):
        offset = len(self.text[:self.pos].encode("utf-8"))
        raise ParseError(msg, offset=offset)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def uint(self):
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected an unsigned integer")
        return int(self.text[start:self.pos])

    def parse(self):
        p = self.expr()
        if self.peek():
            self.error(f"unexpected {self.peek()!r}")
        return p

    def expr(self):
        acc = self.term()
        while self.peek() in ("+", "-"):
            op = self.text[self.pos]
            self.pos += 1
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self):
        acc = self.factor()
        while self.peek() == "*":
            self.pos += 1
            acc = acc * self.factor()
        return acc

    def factor(self):
        # unary minus binds looser than ^, so -x0^2 is -(x0^2)
        if self.peek() == "-":
            self.pos += 1
            return -self.factor()
        b = self.base()
        if self.peek() == "^":
            self.pos += 1
            b = b ** self.uint()
        return b

    def base(self):
        ch = self.peek()
        ring = self.ring
        if ch == "x":
            self.pos += 1
            start = self.pos
            if not (self.pos < len(self.text) and self.text[self.pos].isdigit()):
                self.error("expected variable index after 'x'")
            k = self.uint()
            if k >= ring.num_vars:
                self.pos = start
                self.error(f"variable x{k} out of range for {ring.num_vars} variables")
            return ring.var(k)
        if ch == "z":
            if ring.field.root_order == 1:
                self.error("'z' used but the coefficient field is Q (root order 1)")
            self.pos += 1
            return ring.const(ring.field.zeta)
        if ch.isdigit():
            num = self.uint()
            if self.peek() == "/":
                self.pos += 1
                self.skip()
                start = self.pos
                den = self.uint()
                if den == 0:
                    self.pos = start
                    self.error("zero denominator")
                return ring.const(Fraction(num, den))
            return ring.const(num)
        if ch == "(":
            self.pos += 1
            inner = self.expr()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
            return inner
        if ch == "-":
            self.pos += 1
            return -self.base()
        if not ch:
            self.error("unexpected end of input")
        self.error(f"unexpected {ch!r}")


def parse_poly(text, ring):
    """Parse ``text`` in the polynomial grammar into a Poly over ``ring``."""
    return _Parser(text, ring).parse()


# -- matrices --------------------------------------------------------------

class PolyMatrix:
    """Square matrix of polynomials over one ring."""

    def __init__(self, rows):
        rows = tuple(tuple(r) for r in rows)
        k = len(rows)
        if any(len(r) != k for r in rows):
            raise ValueError("PolyMatrix must be square")
        if k:
            ring = rows[0][0].ring
            for r in rows:
                for p in r:
                    if p.ring != ring:
                        raise RingMismatchError("matrix entries from different rings")
        self.rows = rows

    @property
    def size(self):
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, PolyMatrix) and self.rows == other.rows

    def __repr__(self):
        return "PolyMatrix([" + ", ".join(
            "[" + ", ".join(p.render() for p in r) + "]" for r in self.rows) + "])"

    @classmethod
    def identity(cls, ring, k):
        return cls([[ring.one if i == j else ring.zero for j in range(k)] for i in range(k)])

    def det(self, limit=DEFAULT_DET_LIMIT):
        return det_poly(self, limit)


def jacobian(H, ring=None):
    """Jac(H)[i][j] = dh_i/dx_j.  Needs exactly num_vars entries."""
    H = list(H)
    if ring is None:
        if not H:
            raise ValueError("empty tuple")
        ring = H[0].ring
    if len(H) != ring.num_vars:
        raise ValueError(f"Jacobian needs {ring.num_vars} polynomials, got {len(H)}")
    return PolyMatrix([[h.partial(j) for j in range(ring.num_vars)] for h in H])


def hessian(F):
    F.degree()
    k = F.ring.num_vars
    first = [F.partial(i) for i in range(k)]
    return PolyMatrix([[first[i].partial(j) for j in range(k)] for i in range(k)])


def det_poly(M, limit=DEFAULT_DET_LIMIT):
    """Exact determinant by cofactor expansion along the sparsest line."""
    k = M.size
    if k > limit:
        from .errors import ResourceLimitError
        raise ResourceLimitError(
            f"determinant of a {k}x{k} matrix exceeds the limit {limit}", required=k, limit=limit)
    if k == 0:
        raise ValueError("empty matrix")
    ring = M.rows[0][0].ring
    memo = {}

    def rec(rows, cols):
        key = (rows, cols)
        if key in memo:
            return memo[key]
        if len(rows) == 1:
            res = M.rows[rows[0]][cols[0]]
            memo[key] = res
            return res
        best = None
        for pr, r in enumerate(rows):
            nz = [pc for pc, c in enumerate(cols) if M.rows[r][c]]
            if best is None or len(nz) < best[0]:
                best = (len(nz), "row", pr, nz)
        for pc, c in enumerate(cols):
            nz = [pr for pr, r in enumerate(rows) if M.rows[r][c]]
            if len(nz) < best[0]:
                best = (len(nz), "col", pc, nz)
        count, kind, pos, nz = best
        res = ring.zero
        for other in nz:
            pr, pc = (pos, other) if kind == "row" else (other, pos)
            entry = M.rows[rows[pr]][cols[pc]]
            minor = rec(rows[:pr] + rows[pr + 1:], cols[:pc] + cols[pc + 1:])
            if not minor:
                continue
            term = entry * minor
            res = res - term if (pr + pc) % 2 else res + term
        memo[key] = res
        return res

    idx = tuple(range(k))
    return rec(idx, idx)


def euler_omega_check(f):
    """Check Omega_f = l^{-1} det(Jac f) Omega coefficient by coefficient.

    Omega_f = sum_i (-1)^i f_i df_0 ^ ... (omit i) ... ^ df_{k-1}.  Its coefficient on
    dx_0 ^ ... (omit j) ... ^ dx_{k-1} is sum_i (-1)^i f_i * minor(i, j); the
    coefficient of Omega there is (-1)^j x_j.
    """
    f = list(f)
    if not f:
        raise ValueError("empty tuple")
    ring = f[0].ring
    degs = {p.degree() for p in f}
    if len(degs) != 1:
        raise DegreeError(f"polynomials have mixed degrees {sorted(degs)}")
    l = degs.pop()
    if l < 1:
        raise DegreeError("common degree must be at least 1")
    k = ring.num_vars
    J = jacobian(f, ring)
    for i, p in enumerate(f):
        euler = ring.zero
        for j in range(k):
            euler = euler + ring.var(j) * J[i, j]
        if euler != p * l:
            return False
    det = det_poly(J)
    inv_l = Fraction(1, l)
    for j in range(k):
        lhs = ring.zero
        for i, p in enumerate(f):
            rows = [r for r in range(k) if r != i]
            cols = [c for c in range(k) if c != j]
            minor = det_poly(PolyMatrix([[J[r, c] for c in cols] for r in rows]))
            term = p * minor
            lhs = lhs - term if i % 2 else lhs + term
        rhs = det * ring.var(j) * inv_l
        if j % 2:
            rhs = -rhs
        if lhs != rhs:
            return False
    return True
