"""Exact coefficient ring: multivariate rational functions over Q.

A :class:`Scalar` is a quotient num/den of multivariate polynomials in
x1..xn with Fraction coefficients, kept in a canonical form (gcd removed,
denominator monic under graded lexicographic order), so equality of values
is literal equality of representations.  n = 0 is allowed and gives plain
rationals.  Everything is immutable and hashable.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations_with_replacement

__all__ = [
    "Scalar",
    "ScalarError",
    "ParseError",
    "PoleError",
    "parse_scalar",
    "random_polynomial",
    "monomials_up_to",
]


class ScalarError(ArithmeticError):
    """Raised on invalid scalar arithmetic (division by the zero scalar)."""


class PoleError(ZeroDivisionError):
    """Raised when a rational function is evaluated at a pole."""


class ParseError(ValueError):
    """Raised on malformed scalar text or unknown variables."""


# ---------------------------------------------------------------------------
# raw polynomial layer: dict {exponent tuple: Fraction}, zero coeffs removed
# ---------------------------------------------------------------------------

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _p_const(n, q):
    q = Fraction(q)
    return {} if q == 0 else {(0,) * n: q}


def _p_var(n, i):
    # i is 0-based here
    exp = [0] * n
    exp[i] = 1
    return {tuple(exp): _ONE}


def _p_add(a, b):
    out = dict(a)
    for m, c in b.items():
        s = out.get(m, _ZERO) + c
        if s:
            out[m] = s
        elif m in out:
            del out[m]
    return out


def _p_neg(a):
    return {m: -c for m, c in a.items()}


def _p_scale(a, q):
    if not q:
        return {}
    return {m: c * q for m, c in a.items()}


def _p_mul(a, b):
    if not a or not b:
        return {}
    if len(a) > len(b):
        a, b = b, a
    out = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = tuple(x + y for x, y in zip(ma, mb))
            s = out.get(m, _ZERO) + ca * cb
            if s:
                out[m] = s
            elif m in out:
                del out[m]
    return out


def _p_pow(a, k):
    if k == 0:
        return {(0,) * _p_nvars_guess(a): _ONE} if a else {}
    out = None
    base = a
    while k:
        if k & 1:
            out = base if out is None else _p_mul(out, base)
        k >>= 1
        if k:
            base = _p_mul(base, base)
    return out


def _p_nvars_guess(a):
    for m in a:
        return len(m)
    return 0


def _p_partial(a, i):
    out = {}
    for m, c in a.items():
        e = m[i]
        if e:
            m2 = m[:i] + (e - 1,) + m[i + 1 :]
            s = out.get(m2, _ZERO) + c * e
            if s:
                out[m2] = s
            elif m2 in out:
                del out[m2]
    return out


def _p_eval(a, point):
    total = _ZERO
    for m, c in a.items():
        v = c
        for e, x in zip(m, point):
            if e:
                v *= x**e
        total += v
    return total


def _grlex_key(m):
    return (sum(m), m)


def _p_leading(a):
    return max(a, key=_grlex_key)


def _p_is_const(a):
    return len(a) == 0 or (len(a) == 1 and not any(_p_leading(a)))


# --- exact division and gcd ------------------------------------------------


def _mono_divides(m, d):
    return all(x >= y for x, y in zip(m, d))


def _p_exact_div(a, b):
    """Return a/b assuming b divides a exactly; raise ScalarError otherwise."""
    if not b:
        raise ScalarError("division by zero polynomial")
    if not a:
        return {}
    if _p_is_const(b):
        c = next(iter(b.values()))
        return _p_scale(a, 1 / c)
    rem = dict(a)
    lead_b = _p_leading(b)
    cb = b[lead_b]
    quot = {}
    while rem:
        lead_r = _p_leading(rem)
        if not _mono_divides(lead_r, lead_b):
            raise ScalarError("inexact polynomial division")
        m = tuple(x - y for x, y in zip(lead_r, lead_b))
        c = rem[lead_r] / cb
        quot[m] = quot.get(m, _ZERO) + c
        piece = {tuple(x + y for x, y in zip(m, mb)): c * vb for mb, vb in b.items()}
        rem = _p_add(rem, _p_neg(piece))
    return {m: c for m, c in quot.items() if c}


def _p_max_var(a):
    """Largest 0-based variable index occurring, or -1 if constant."""
    best = -1
    for m in a:
        for i in range(len(m) - 1, best, -1):
            if m[i]:
                best = i
                break
    return best


def _to_univar(a, v):
    """View a as univariate in x_v: {degree: coefficient-poly}."""
    out = {}
    for m, c in a.items():
        d = m[v]
        m2 = m[:v] + (0,) + m[v + 1 :]
        coeff = out.setdefault(d, {})
        s = coeff.get(m2, _ZERO) + c
        if s:
            coeff[m2] = s
        elif m2 in coeff:
            del coeff[m2]
    return {d: c for d, c in out.items() if c}


def _from_univar(u, v):
    out = {}
    for d, coeff in u.items():
        for m, c in coeff.items():
            m2 = m[:v] + (d,) + m[v + 1 :]
            out[m2] = out.get(m2, _ZERO) + c
    return {m: c for m, c in out.items() if c}


def _u_shift_mul(u, d, coeff):
    """coeff * x^d * u in the univariate view."""
    return {du + d: _p_mul(cu, coeff) for du, cu in u.items()}


def _u_sub(a, b):
    out = dict(a)
    for d, c in b.items():
        s = _p_add(out.get(d, {}), _p_neg(c))
        if s:
            out[d] = s
        elif d in out:
            del out[d]
    return out


def _p_content(coeffs):
    g = {}
    for c in coeffs:
        g = _p_gcd(g, c)
        if _p_is_const(g) and g:
            break
    return g


def _p_normalize_lead(a):
    """Scale so the graded-lex leading coefficient is 1."""
    if not a:
        return a
    c = a[_p_leading(a)]
    if c == 1:
        return a
    return _p_scale(a, 1 / c)


def _p_gcd(a, b):
    """gcd in Q[x1..xn], normalized to leading coefficient 1 (0 if both 0)."""
    if not a:
        return _p_normalize_lead(b)
    if not b:
        return _p_normalize_lead(a)
    if _p_is_const(a) or _p_is_const(b):
        n = _p_nvars_guess(a)
        return {(0,) * n: _ONE}
    v = max(_p_max_var(a), _p_max_var(b))
    ua, ub = _to_univar(a, v), _to_univar(b, v)
    if max(ua) < max(ub):
        ua, ub = ub, ua
    cont_a = _p_content(ua.values())
    cont_b = _p_content(ub.values())
    ua = {d: _p_exact_div(c, cont_a) for d, c in ua.items()}
    ub = {d: _p_exact_div(c, cont_b) for d, c in ub.items()}
    cont = _p_gcd(cont_a, cont_b)
    # primitive PRS in the main variable
    while ub:
        da, db = max(ua), max(ub)
        if da < db:
            ua, ub = ub, ua
            continue
        lead_b = ub[db]
        rem = ua
        while rem and max(rem) >= db:
            dr = max(rem)
            lead_r = rem[dr]
            rem = _u_sub(
                {d: _p_mul(c, lead_b) for d, c in rem.items()},
                _u_shift_mul(ub, dr - db, lead_r),
            )
        if rem:
            c = _p_content(rem.values())
            rem = {d: _p_exact_div(cc, c) for d, cc in rem.items()}
        ua, ub = ub, rem
    result = _p_mul(cont, _from_univar(ua, v))
    return _p_normalize_lead(result)


# ---------------------------------------------------------------------------
# Scalar
# ---------------------------------------------------------------------------


class Scalar:
    """Canonical multivariate rational function over Q in x1..xn.

    Invariants: den is nonzero and monic under graded lex, gcd(num, den) is
    constant, and the zero scalar is 0/1.  Two Scalars are equal iff their
    (num, den, n) data coincide.
    """

    __slots__ = ("n", "num", "den", "_hash")

    def __init__(self, n, num, den=None, _canonical=False):
        self.n = n
        if den is None:
            den = {(0,) * n: _ONE}
        if not den:
            raise ScalarError("zero denominator")
        if not _canonical:
            num, den = _reduce(num, den)
        self.num = num
        self.den = den
        self._hash = None

    # -- constructors ------------------------------------------------------

    @staticmethod
    def const(n, q):
        return Scalar(n, _p_const(n, Fraction(q)), _canonical=True)

    @staticmethod
    def zero(n):
        return _zero_cache(n)

    @staticmethod
    def one(n):
        return _one_cache(n)

    @staticmethod
    def variable(n, i):
        """The coordinate function x_i, 1-based, 1 <= i <= n."""
        if not 1 <= i <= n:
            raise ScalarError(f"variable index {i} out of range 1..{n}")
        return Scalar(n, _p_var(n, i - 1), _canonical=True)

    @staticmethod
    def monomial(n, exponents, coeff=1):
        exponents = tuple(exponents)
        if len(exponents) != n:
            raise ScalarError("exponent tuple length mismatch")
        c = Fraction(coeff)
        return Scalar(n, {exponents: c} if c else {}, _canonical=True)

    # -- predicates ----------------------------------------------------------

    def is_zero(self):
        return not self.num

    def is_one(self):
        return self.den == {(0,) * self.n: _ONE} and self.num == self.den

    def is_constant(self):
        return _p_is_const(self.num) and _p_is_const(self.den)

    def is_polynomial(self):
        return _p_is_const(self.den)

    def constant_value(self):
        if not self.is_constant():
            raise ScalarError("not a constant")
        if not self.num:
            return _ZERO
        return next(iter(self.num.values())) / next(iter(self.den.values()))

    def total_degree(self):
        """Total degree of the numerator (-1 for the zero scalar)."""
        if not self.num:
            return -1
        return max(sum(m) for m in self.num)

    # -- arithmetic ----------------------------------------------------------

    def _check(self, other):
        if not isinstance(other, Scalar):
            raise TypeError("expected Scalar")
        if other.n != self.n:
            raise ScalarError("mixed variable counts")
        return other

    def __add__(self, other):
        other = self._check(other)
        if not self.num:
            return other
        if not other.num:
            return self
        if _p_is_const(self.den) and _p_is_const(other.den):
            ca = next(iter(self.den.values()))
            cb = next(iter(other.den.values()))
            num = _p_add(_p_scale(self.num, 1 / ca), _p_scale(other.num, 1 / cb))
            return Scalar(self.n, num, _canonical=True) if num else _zero_cache(self.n)
        num = _p_add(_p_mul(self.num, other.den), _p_mul(other.num, self.den))
        return Scalar(self.n, num, _p_mul(self.den, other.den))

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        if not self.num:
            return self
        return Scalar(self.n, _p_neg(self.num), self.den, _canonical=True)

    def __mul__(self, other):
        other = self._check(other)
        if not self.num or not other.num:
            return _zero_cache(self.n)
        if _p_is_const(self.den) and _p_is_const(other.den):
            ca = next(iter(self.den.values()))
            cb = next(iter(other.den.values()))
            num = _p_mul(self.num, other.num)
            if ca * cb != 1:
                num = _p_scale(num, 1 / (ca * cb))
            return Scalar(self.n, num, _canonical=True)
        return Scalar(self.n, _p_mul(self.num, other.num), _p_mul(self.den, other.den))

    def __truediv__(self, other):
        other = self._check(other)
        if other.is_zero():
            raise ScalarError("division by the zero scalar")
        if self.is_zero():
            return self
        return Scalar(self.n, _p_mul(self.num, other.den), _p_mul(self.den, other.num))

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ScalarError("exponent must be a nonnegative integer")
        out = _one_cache(self.n)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    # -- calculus ------------------------------------------------------------

    def partial(self, i):
        """Exact partial derivative with respect to x_i (1-based)."""
        if not 1 <= i <= self.n:
            raise ScalarError(f"variable index {i} out of range 1..{self.n}")
        j = i - 1
        if _p_is_const(self.den):
            c = next(iter(self.den.values())) if self.den else _ONE
            dn = _p_partial(self.num, j)
            if c != 1:
                dn = _p_scale(dn, 1 / c)
            return Scalar(self.n, dn, _canonical=True)
        # quotient rule (num' den - num den') / den^2
        num = _p_add(
            _p_mul(_p_partial(self.num, j), self.den),
            _p_neg(_p_mul(self.num, _p_partial(self.den, j))),
        )
        return Scalar(self.n, num, _p_mul(self.den, self.den))

    def evaluate(self, point):
        """Exact value at a rational point (sequence of length n)."""
        point = [Fraction(x) for x in point]
        if len(point) != self.n:
            raise ScalarError("point length mismatch")
        dv = _p_eval(self.den, point)
        if dv == 0:
            raise PoleError(f"pole at {tuple(point)}")
        return _p_eval(self.num, point) / dv

    # -- housekeeping ----------------------------------------------------------

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.n == other.n and self.num == other.num and self.den == other.den

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.n, frozenset(self.num.items()), frozenset(self.den.items())))
            self._hash = h
        return h

    def __bool__(self):
        return bool(self.num)

    def __repr__(self):
        return f"Scalar({self})"

    def __str__(self):
        num = _p_format(self.num)
        if _p_is_const(self.den) and self.den == {(0,) * self.n: _ONE}:
            return num
        return f"({num})/({_p_format(self.den)})"


def _reduce(num, den):
    if not num:
        n = len(next(iter(den)))
        return {}, {(0,) * n: _ONE}
    if _p_is_const(den):
        c = next(iter(den.values()))
        return (_p_scale(num, 1 / c) if c != 1 else num), {(0,) * len(next(iter(den))): _ONE}
    g = _p_gcd(num, den)
    if not _p_is_const(g):
        num = _p_exact_div(num, g)
        den = _p_exact_div(den, g)
    c = den[_p_leading(den)]
    if c != 1:
        den = _p_scale(den, 1 / c)
        num = _p_scale(num, 1 / c)
    return num, den


_ZERO_CACHE = {}
_ONE_CACHE = {}


def _zero_cache(n):
    s = _ZERO_CACHE.get(n)
    if s is None:
        s = Scalar(n, {}, _canonical=True)
        _ZERO_CACHE[n] = s
    return s


def _one_cache(n):
    s = _ONE_CACHE.get(n)
    if s is None:
        s = Scalar(n, _p_const(n, 1), _canonical=True)
        _ONE_CACHE[n] = s
    return s


def _p_format(a):
    if not a:
        return "0"
    parts = []
    for m in sorted(a, key=_grlex_key, reverse=True):
        c = a[m]
        factors = []
        for i, e in enumerate(m):
            if e == 1:
                factors.append(f"x{i + 1}")
            elif e > 1:
                factors.append(f"x{i + 1}^{e}")
        if not factors:
            parts.append(str(c))
            continue
        body = "*".join(factors)
        if c == 1:
            parts.append(body)
        elif c == -1:
            parts.append(f"-{body}")
        else:
            parts.append(f"{c}*{body}")
    out = parts[0]
    for p in parts[1:]:
        out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
    return out


# ---------------------------------------------------------------------------
# parsing:  variables x1..xn, rational literals p/q, operators + - * / ^
# ---------------------------------------------------------------------------


def parse_scalar(text, n):
    """Parse the input-file syntax, e.g. "2*x1^2*x2 - 1/3", into a Scalar."""
    tokens = _tokenize(text)
    parser = _Parser(tokens, n)
    value = parser.expr()
    if parser.peek() is not None:
        raise ParseError(f"unexpected token {parser.peek()!r} in {text!r}")
    return value


def _tokenize(text):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "+-*/^()":
            tokens.append(ch)
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("int", int(text[i:j])))
            i = j
        elif ch == "x":
            j = i + 1
            while j < len(text) and text[j].isdigit():
                j += 1
            if j == i + 1:
                raise ParseError(f"bad variable name at {text[i:]!r}")
            tokens.append(("var", int(text[i + 1 : j])))
            i = j
        else:
            raise ParseError(f"unexpected character {ch!r} in {text!r}")
    return tokens


class _Parser:
    def __init__(self, tokens, n):
        self.tokens = tokens
        self.pos = 0
        self.n = n

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def expr(self):
        if self.peek() == "-":
            self.take()
            value = -self.term()
        else:
            value = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.factor()
        while self.peek() in ("*", "/"):
            op = self.take()
            rhs = self.factor()
            if op == "*":
                value = value * rhs
            else:
                if rhs.is_zero():
                    raise ParseError("division by zero in input")
                value = value / rhs
        return value

    def factor(self):
        if self.peek() == "-":
            self.take()
            return -self.factor()
        base = self.atom()
        if self.peek() == "^":
            self.take()
            tok = self.take()
            if not (isinstance(tok, tuple) and tok[0] == "int"):
                raise ParseError("exponent must be a nonnegative integer")
            return base ** tok[1]
        return base

    def atom(self):
        tok = self.take()
        if tok == "(":
            value = self.expr()
            if self.take() != ")":
                raise ParseError("unbalanced parentheses")
            return value
        if isinstance(tok, tuple):
            kind, payload = tok
            if kind == "int":
                return Scalar.const(self.n, payload)
            if kind == "var":
                if not 1 <= payload <= self.n:
                    raise ParseError(f"unknown variable x{payload} (n = {self.n})")
                return Scalar.variable(self.n, payload)
        raise ParseError(f"unexpected token {tok!r}")


# ---------------------------------------------------------------------------
# seeded generation
# ---------------------------------------------------------------------------


def monomials_up_to(n, d):
    """All exponent tuples of total degree <= d, graded lex order."""
    out = [(0,) * n]
    for total in range(1, d + 1):
        level = []
        for combo in combinations_with_replacement(range(n), total):
            exp = [0] * n
            for i in combo:
                exp[i] += 1
            level.append(tuple(exp))
        out.extend(sorted(level, reverse=True))
    return out


def random_polynomial(n, degree, seed, nonzero=False):
    """Seeded polynomial with small rational coefficients; denominator 1.

    Reproducible: a fixed (n, degree, seed) always yields the same Scalar.
    """
    if degree < 0:
        raise ScalarError("degree cap must be >= 0")
    rng = random.Random(f"poly:{n}:{degree}:{seed}")
    while True:
        terms = {}
        for m in monomials_up_to(n, degree):
            p = rng.randint(-4, 4)
            q = rng.choice((1, 1, 2, 3))
            if p:
                terms[m] = Fraction(p, q)
        if terms or not nonzero:
            return Scalar(n, terms, _canonical=True)
