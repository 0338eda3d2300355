"""Exact arithmetic in cyclotomic-rational fields Q(zeta_N).

Scalars are rational-coefficient vectors over the power basis of the N-th
cyclotomic polynomial.  The conductor N is chosen per expression (i needs
4 | N, w needs 3 | N, sqrt(2) needs 8 | N, sqrt(3) needs 12 | N, sqrt(5)
needs 5 | N) and lifted to a common multiple when operands mix.  All
arithmetic is exact; floating point appears only in `to_complex`, which is
a cross-check convenience and never a source of truth.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union


def totient(n: int) -> int:
    """Euler's phi."""
    result = n
    p = 2
    m = n
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _poly_mul_int(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _poly_div_exact_int(num: Sequence[int], den: Sequence[int]) -> list[int]:
    """Exact division of integer polynomials; den must be monic."""
    num = list(num)
    dd = len(den) - 1
    out = [0] * (len(num) - dd)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + dd]
        out[i] = c
        if c:
            for j, dj in enumerate(den):
                num[i + j] -= c * dj
    if any(num[:dd]):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, constant term first, monic."""
    if n == 1:
        return (-1, 1)
    num = [0] * n + [1]
    num[0] = -1
    den = [1]
    for d in range(1, n):
        if n % d == 0:
            den = _poly_mul_int(den, cyclotomic_polynomial(d))
    return tuple(_poly_div_exact_int(num, den))


class _FieldContext:
    """Cached reduction data for one conductor."""

    __slots__ = ("n", "phi", "poly", "power_table")

    def __init__(self, n: int):
        self.n = n
        self.poly = cyclotomic_polynomial(n)
        self.phi = len(self.poly) - 1
        # power_table[j] = coefficients of zeta^j over the power basis,
        # for every exponent 0 <= j < n (integers: Phi_n is monic over Z).
        phi = self.phi
        table: list[tuple[int, ...]] = []
        cur = [1] + [0] * (phi - 1) if phi > 1 else [1]
        for _ in range(n):
            table.append(tuple(cur))
            nxt = [0] + cur[: phi - 1] if phi > 1 else [0]
            top = cur[phi - 1]
            if top:
                for idx in range(phi):
                    nxt[idx] -= top * self.poly[idx]
            cur = nxt
        self.power_table = tuple(table)


@lru_cache(maxsize=None)
def _context(n: int) -> _FieldContext:
    return _FieldContext(n)


@lru_cache(maxsize=None)
def _subfield_solver(n: int, d: int):
    """Row-echelon data for writing a Q(zeta_n) element over Q(zeta_d).

    Returns (pivots, rows) where rows are the echelonized images of the
    Q(zeta_d) power basis inside Q(zeta_n), augmented with the expression
    of each row in terms of the original basis vectors.
    """
    ctx = _context(n)
    step = n // d
    phi_d = _context(d).phi
    # images[i] = lift of zeta_d^i into Q(zeta_n)
    images = []
    for i in range(phi_d):
        vec = [Fraction(0)] * ctx.phi
        for coef_idx, coef in enumerate(ctx.power_table[(i * step) % n]):
            vec[coef_idx] += coef
        images.append(vec)
    # Gaussian elimination with bookkeeping of combinations.
    rows = [list(v) for v in images]
    combos = [[Fraction(int(i == j)) for j in range(phi_d)] for i in range(phi_d)]
    pivots: list[int] = []
    r = 0
    for col in range(ctx.phi):
        pivot = None
        for rr in range(r, len(rows)):
            if rows[rr][col] != 0:
                pivot = rr
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        combos[r], combos[pivot] = combos[pivot], combos[r]
        inv = 1 / rows[r][col]
        rows[r] = [x * inv for x in rows[r]]
        combos[r] = [x * inv for x in combos[r]]
        for rr in range(len(rows)):
            if rr != r and rows[rr][col] != 0:
                f = rows[rr][col]
                rows[rr] = [x - f * y for x, y in zip(rows[rr], rows[r])]
                combos[rr] = [x - f * y for x, y in zip(combos[rr], combos[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return pivots, tuple(tuple(row) for row in rows), tuple(tuple(c) for c in combos)


def _divisors(n: int) -> list[int]:
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


Rational = Union[int, Fraction]


class FieldScalar:
    """An element of Q(zeta_N), reduced over the power basis of Phi_N."""

    __slots__ = ("conductor", "coeffs", "_min", "_hash")

    def __init__(self, conductor: int, coeffs: Sequence[Fraction]):
        ctx = _context(conductor)
        if len(coeffs) != ctx.phi:
            raise ValueError("coefficient vector has wrong length")
        self.conductor = conductor
        self.coeffs = tuple(Fraction(c) for c in coeffs)
        self._min = None
        self._hash = None

    # -- constructors ------------------------------------------------

    @staticmethod
    def from_rational(q: Rational) -> "FieldScalar":
        return FieldScalar(1, (Fraction(q),))

    @staticmethod
    def root_of_unity(n: int, k: int = 1) -> "FieldScalar":
        ctx = _context(n)
        vec = [Fraction(c) for c in ctx.power_table[k % n]]
        return FieldScalar(n, vec)

    @staticmethod
    def zero() -> "FieldScalar":
        return FieldScalar.from_rational(0)

    @staticmethod
    def one() -> "FieldScalar":
        return FieldScalar.from_rational(1)

    # -- representation ----------------------------------------------

    def lift(self, m: int) -> "FieldScalar":
        """Embed into Q(zeta_m); the current conductor must divide m."""
        n = self.conductor
        if m == n:
            return self
        if m % n != 0:
            raise ValueError(f"cannot lift conductor {n} into {m}")
        ctx = _context(m)
        step = m // n
        out = [Fraction(0)] * ctx.phi
        for p, c in enumerate(self.coeffs):
            if c:
                for idx, t in enumerate(ctx.power_table[(p * step) % m]):
                    if t:
                        out[idx] += c * t
        return FieldScalar(m, out)

    def reduce(self) -> "FieldScalar":
        """Rewrite over the smallest cyclotomic subfield that contains it."""
        if self._min is not None:
            return self._min
        n = self.conductor
        if n == 1:
            self._min = self
            return self
        if all(c == 0 for c in self.coeffs[1:]):
            out = FieldScalar(1, (self.coeffs[0],))
            out._min = out
            self._min = out
            return out
        for d in _divisors(n)[:-1]:
            if d == 1:
                continue  # handled by the all-rational fast path above
            pivots, rows, combos = _subfield_solver(n, d)
            # Solve sum x_i * image_i = coeffs using echelon data.
            target = list(self.coeffs)
            phi_d = _context(d).phi
            x = [Fraction(0)] * phi_d
            residual = list(target)
            ok = True
            for r_idx, col in enumerate(pivots):
                f = residual[col]
                if f:
                    for j in range(len(residual)):
                        residual[j] -= f * rows[r_idx][j]
                    for j in range(phi_d):
                        x[j] += f * combos[r_idx][j]
            if any(residual):
                ok = False
            if ok:
                out = FieldScalar(d, x)
                out._min = out
                self._min = out
                return out
        self._min = self
        return self

    # -- predicates ---------------------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return self.coeffs[0]

    # -- arithmetic ---------------------------------------------------

    def _coerce(self, other) -> "tuple[FieldScalar, FieldScalar]":
        if isinstance(other, (int, Fraction)):
            other = FieldScalar.from_rational(other)
        elif not isinstance(other, FieldScalar):
            return NotImplemented, NotImplemented  # type: ignore[return-value]
        if self.conductor == other.conductor:
            return self, other
        m = math.lcm(self.conductor, other.conductor)
        return self.lift(m), other.lift(m)

    def __add__(self, other):
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        return FieldScalar(a.conductor, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return FieldScalar(self.conductor, [-x for x in self.coeffs])

    def __sub__(self, other):
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        return FieldScalar(a.conductor, [x - y for x, y in zip(a.coeffs, b.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        n = a.conductor
        ctx = _context(n)
        phi = ctx.phi
        out = [Fraction(0)] * phi
        table = ctx.power_table
        bc = b.coeffs
        for p, ac in enumerate(a.coeffs):
            if not ac:
                continue
            for q, bq in enumerate(bc):
                if not bq:
                    continue
                e = p + q
                prod = ac * bq
                if e < phi:
                    out[e] += prod
                else:
                    for idx, t in enumerate(table[e % n]):
                        if t:
                            out[idx] += prod * t
        return FieldScalar(n, out)

    __rmul__ = __mul__

    def inverse(self) -> "FieldScalar":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero field element")
        if self.is_rational():
            return FieldScalar(self.conductor, (1 / self.coeffs[0],) + self.coeffs[1:])
        n = self.conductor
        poly = [Fraction(c) for c in cyclotomic_polynomial(n)]
        # Extended Euclid over Q[x]: u*self + v*Phi_n = gcd = const.
        r0, r1 = poly, list(self.coeffs)
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while True:
            while r1 and r1[-1] == 0:
                r1.pop()
            if len(r1) == 1:
                break
            q, rem = _poly_divmod_frac(r0, r1)
            r0, r1 = r1, rem
            s_new = _poly_sub_frac(s0, _poly_mul_frac(q, s1))
            s0, s1 = s1, s_new
        c = r1[0]
        inv_coeffs = [x / c for x in s1]
        # Reduce mod Phi_n and pad.
        _, rem = _poly_divmod_frac(inv_coeffs, poly)
        phi = _context(n).phi
        rem = rem + [Fraction(0)] * (phi - len(rem))
        return FieldScalar(n, rem[:phi])

    def __truediv__(self, other):
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        return a * b.inverse()

    def __rtruediv__(self, other):
        return FieldScalar.from_rational(other) / self

    def conjugate(self) -> "FieldScalar":
        n = self.conductor
        if n <= 2:
            return self
        ctx = _context(n)
        out = [Fraction(0)] * ctx.phi
        for p, c in enumerate(self.coeffs):
            if c:
                for idx, t in enumerate(ctx.power_table[(n - p) % n]):
                    if t:
                        out[idx] += c * t
        return FieldScalar(n, out)

    # -- comparisons / hashing ----------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = FieldScalar.from_rational(other)
        elif not isinstance(other, FieldScalar):
            return NotImplemented
        if self.conductor == other.conductor:
            return self.coeffs == other.coeffs
        a, b = self._coerce(other)
        return a.coeffs == b.coeffs

    def __hash__(self):
        if self._hash is None:
            m = self.reduce()
            self._hash = hash((m.conductor, m.coeffs))
        return self._hash

    # -- misc ----------------------------------------------------------

    def to_complex(self) -> complex:
        n = self.conductor
        return sum(
            float(c) * cmath.exp(2j * cmath.pi * p / n)
            for p, c in enumerate(self.coeffs)
            if c
        )

    def __repr__(self):
        return f"FieldScalar({self.conductor}, {[str(c) for c in self.coeffs]})"


def _poly_divmod_frac(num: list[Fraction], den: list[Fraction]):
    num = list(num)
    while den and den[-1] == 0:
        den = den[:-1]
    dd = len(den) - 1
    if len(num) - 1 < dd:
        return [Fraction(0)], num
    q = [Fraction(0)] * (len(num) - dd)
    lead = den[-1]
    for i in range(len(q) - 1, -1, -1):
        c = num[i + dd] / lead
        q[i] = c
        if c:
            for j, dj in enumerate(den):
                num[i + j] -= c * dj
    return q, num[:dd] if dd else [Fraction(0)]


def _poly_mul_frac(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _poly_sub_frac(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    a = a + [Fraction(0)] * (n - len(a))
    b = b + [Fraction(0)] * (n - len(b))
    return [x - y for x, y in zip(a, b)]


# -- named generators -------------------------------------------------

I_UNIT = FieldScalar.root_of_unity(4, 1)
OMEGA = FieldScalar.root_of_unity(3, 1)
OMEGA2 = FieldScalar.root_of_unity(3, 2)
SQRT2 = FieldScalar.root_of_unity(8, 1) + FieldScalar.root_of_unity(8, 7)
SQRT3 = FieldScalar.root_of_unity(12, 1) + FieldScalar.root_of_unity(12, 11)
SQRT5 = (
    FieldScalar.root_of_unity(5, 1) + FieldScalar.root_of_unity(5, 4)
) * 2 + FieldScalar.from_rational(1)

_SQRT = {2: SQRT2, 3: SQRT3, 5: SQRT5}


# -- expression grammar ------------------------------------------------
#
#   expr   := term (('+'|'-') term)*
#   term   := factor (('*'|'/') factor)*
#   factor := '-' factor | atom
#   atom   := INT | 'i' | 'w' | 'w2' | 'sqrt' '(' INT ')' | '(' expr ')'


class ExpressionError(ValueError):
    """Malformed or unsupported component expression."""


def _tokenize(text: str) -> list[str]:
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(text[i:j])
            i = j
        elif ch.isalpha():
            j = i
            while j < len(text) and (text[j].isalnum()):
                j += 1
            tokens.append(text[i:j])
            i = j
        elif ch in "+-*/()":
            tokens.append(ch)
            i += 1
        else:
            raise ExpressionError(f"unexpected character {ch!r} in {text!r}")
    return tokens


class _Parser:
    def __init__(self, tokens: list[str], source: str):
        self.tokens = tokens
        self.pos = 0
        self.source = source

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        if tok is None:
            raise ExpressionError(f"unexpected end of expression in {self.source!r}")
        self.pos += 1
        return tok

    def expect(self, tok: str):
        got = self.take()
        if got != tok:
            raise ExpressionError(f"expected {tok!r}, got {got!r} in {self.source!r}")

    def expr(self) -> FieldScalar:
        value = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> FieldScalar:
        value = self.factor()
        while self.peek() in ("*", "/"):
            op = self.take()
            rhs = self.factor()
            if op == "*":
                value = value * rhs
            else:
                if rhs.is_zero():
                    raise ExpressionError(f"division by zero in {self.source!r}")
                value = value / rhs
        return value

    def factor(self) -> FieldScalar:
        if self.peek() == "-":
            self.take()
            return -self.factor()
        return self.atom()

    def atom(self) -> FieldScalar:
        tok = self.take()
        if tok.isdigit():
            return FieldScalar.from_rational(int(tok))
        if tok == "i":
            return I_UNIT
        if tok == "w":
            return OMEGA
        if tok == "w2":
            return OMEGA2
        if tok == "sqrt":
            self.expect("(")
            arg = self.take()
            if not arg.isdigit():
                raise ExpressionError(f"sqrt argument must be an integer in {self.source!r}")
            self.expect(")")
            k = int(arg)
            root = math.isqrt(k)
            if root * root == k:
                return FieldScalar.from_rational(root)
            if k in _SQRT:
                return _SQRT[k]
            # Split off supported square-free parts (e.g. sqrt(8) = 2*sqrt(2)).
            for base, val in _SQRT.items():
                if k % base == 0:
                    r = math.isqrt(k // base)
                    if r * r == k // base:
                        return val * r
            raise ExpressionError(f"unsupported radical sqrt({k})")
        if tok == "(":
            value = self.expr()
            self.expect(")")
            return value
        raise ExpressionError(f"unexpected token {tok!r} in {self.source!r}")


def from_expression(text: str) -> FieldScalar:
    """Parse a component expression into an exact field element."""
    tokens = _tokenize(text)
    if not tokens:
        raise ExpressionError("empty expression")
    parser = _Parser(tokens, text)
    value = parser.expr()
    if parser.peek() is not None:
        raise ExpressionError(f"trailing input {parser.peek()!r} in {text!r}")
    return value


# -- rendering ---------------------------------------------------------

def _format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _format_multiple(q: Fraction, base: str) -> str:
    if q == 1:
        return base
    if q == -1:
        return f"-{base}"
    num, den = q.numerator, q.denominator
    out = base if num == 1 else (f"-{base}" if num == -1 else f"{num}*{base}")
    if den != 1:
        out += f"/{den}"
    return out


def render_scalar(value: FieldScalar) -> str:
    """Shortest surface form that parses back to the same element."""
    if value.is_zero():
        return "0"
    candidates = []
    if value.is_rational():
        candidates.append(_format_rational(value.as_rational()))
    for base_str, base_val in (
        ("i", I_UNIT),
        ("w", OMEGA),
        ("w2", OMEGA2),
        ("sqrt(2)", SQRT2),
        ("sqrt(3)", SQRT3),
        ("sqrt(5)", SQRT5),
    ):
        ratio = value / base_val
        if ratio.is_rational():
            candidates.append(_format_multiple(ratio.as_rational(), base_str))
    if not candidates:
        # Affine forms a + b*sqrt(k), e.g. the golden-ratio components.
        for base_str, base_val in (("sqrt(5)", SQRT5), ("sqrt(2)", SQRT2), ("sqrt(3)", SQRT3)):
            sol = _solve_affine(value, base_val)
            if sol is not None:
                a, b = sol
                parts = []
                if b:
                    parts.append(_format_multiple(b, base_str))
                if a:
                    s = _format_rational(a)
                    parts.append(s if not parts or s.startswith("-") else f"+{s}")
                joined = parts[0] + "".join(
                    p if p.startswith("-") or p.startswith("+") else f"+{p}"
                    for p in parts[1:]
                )
                candidates.append(f"({joined})" if len(parts) > 1 else joined)
                break
    if not candidates:
        raise ValueError(f"no compact surface form for {value!r}")
    best = min(candidates, key=len)
    if from_expression(best) != value:
        raise AssertionError(f"surface form {best!r} does not round-trip")
    return best


def _solve_affine(value: FieldScalar, base: FieldScalar):
    """Write value as a + b*base with a, b rational, if possible."""
    m = math.lcm(value.conductor, base.conductor)
    v = value.lift(m).coeffs
    one = FieldScalar.one().lift(m).coeffs
    bs = base.lift(m).coeffs
    # Solve over the two-dimensional span with exact elimination.
    rows = [list(one), list(bs)]
    target = list(v)
    coefs = [Fraction(0), Fraction(0)]
    used_cols = []
    r = 0
    for col in range(len(target)):
        pivot = None
        for rr in range(r, 2):
            if rows[rr][col] != 0:
                pivot = rr
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        used_cols.append(col)
        r += 1
        if r == 2:
            break
    if r == 0:
        return None
    for a_b in _solve_2x2(rows[:r], used_cols, target):
        a, b = a_b
        check = [a * x + b * y for x, y in zip(one, bs)]
        if check == target:
            return a, b
    return None


def _solve_2x2(rows, cols, target):
    if len(rows) == 1:
        c = cols[0]
        if rows[0][c] == 0:
            return
        yield (target[c] / rows[0][c], Fraction(0))
        return
    c0, c1 = cols[0], cols[1]
    a11, a12 = rows[0][c0], rows[1][c0]
    a21, a22 = rows[0][c1], rows[1][c1]
    det = a11 * a22 - a12 * a21
    if det == 0:
        return
    t0, t1 = target[c0], target[c1]
    a = (t0 * a22 - a12 * t1) / det
    b = (a11 * t1 - t0 * a21) / det
    yield (a, b)


# -- rays ---------------------------------------------------------------

class Ray:
    """Projective equivalence class of a nonzero vector of field scalars.

    Stored canonically: scaled so the first nonzero component is 1, with
    every component rewritten over its minimal conductor and the whole
    vector lifted to their least common conductor.  Equal rays therefore
    have identical (conductor, coefficients) data regardless of how they
    were built.
    """

    __slots__ = ("components", "_hash")

    def __init__(self, components: Sequence[FieldScalar], _canonical: bool = False):
        comps = tuple(components)
        if not comps:
            raise ValueError("empty vector")
        if not _canonical:
            comps = _canonicalize(comps)
        self.components = comps
        self._hash = None

    @property
    def n(self) -> int:
        return len(self.components)

    def __eq__(self, other):
        if not isinstance(other, Ray):
            return NotImplemented
        return self.components == other.components

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(
                tuple((c.conductor, c.coeffs) for c in self.components)
            )
        return self._hash

    def sort_key(self):
        return tuple((c.conductor, c.coeffs) for c in self.components)

    def to_complex(self) -> list[complex]:
        return [c.to_complex() for c in self.components]

    def __repr__(self):
        try:
            inner = ",".join(render_scalar(c) for c in self.components)
        except ValueError:
            inner = ",".join(repr(c) for c in self.components)
        return f"Ray({inner})"


def _canonicalize(comps: tuple[FieldScalar, ...]) -> tuple[FieldScalar, ...]:
    first = next((c for c in comps if not c.is_zero()), None)
    if first is None:
        raise ValueError("zero vector has no projective class")
    inv = first.inverse()
    scaled = [c * inv for c in comps]
    reduced = [c.reduce() for c in scaled]
    m = math.lcm(*(c.conductor for c in reduced))
    return tuple(c.lift(m) for c in reduced)


def canonical_ray(vector: Sequence[FieldScalar]) -> Ray:
    """Projective canonical form: first nonzero component scaled to 1."""
    return Ray(vector)


VectorLike = Union[Ray, Sequence[FieldScalar]]


def _components(v: VectorLike) -> Sequence[FieldScalar]:
    return v.components if isinstance(v, Ray) else v


def inner_product(u: VectorLike, v: VectorLike) -> FieldScalar:
    """Hermitian inner product sum(conj(u_k) * v_k), exact."""
    uc, vc = _components(u), _components(v)
    if len(uc) != len(vc):
        raise ValueError(f"dimension mismatch: {len(uc)} vs {len(vc)}")
    total = FieldScalar.zero()
    for a, b in zip(uc, vc):
        total = total + a.conjugate() * b
    return total


def are_orthogonal(u: VectorLike, v: VectorLike) -> bool:
    return inner_product(u, v).is_zero()


# -- component sets ------------------------------------------------------

class ComponentSet:
    """Finite set of exact scalars from which vector entries are drawn."""

    __slots__ = ("surfaces", "values", "conductor")

    def __init__(self, expressions: Iterable[str]):
        surfaces: list[str] = []
        values: list[FieldScalar] = []
        for raw in expressions:
            text = raw.strip()
            if not text:
                continue
            val = from_expression(text)
            if any(val == v for v in values):
                continue
            surfaces.append(text)
            values.append(val)
        if not values:
            raise ValueError("component set is empty")
        if all(v.is_zero() for v in values):
            raise ValueError("component set has no nonzero element")
        self.conductor = math.lcm(*(v.reduce().conductor for v in values))
        self.surfaces = tuple(surfaces)
        self.values = tuple(v.reduce().lift(self.conductor) for v in values)

    @staticmethod
    def parse(text: str) -> "ComponentSet":
        """Parse a comma-separated component list, e.g. "0,1,-1,i,-i"."""
        return ComponentSet(part for part in text.split(","))

    def __len__(self):
        return len(self.values)

    def __repr__(self):
        return f"ComponentSet({','.join(self.surfaces)})"
