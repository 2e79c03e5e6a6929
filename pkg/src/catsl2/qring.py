"""Exact arithmetic in Z[q, q^-1] and its fraction field.

Also the quantum integers, factorials and binomials used everywhere else.
"""
from __future__ import annotations

from functools import lru_cache
from math import gcd
from typing import Iterable, Mapping, Union


class LaurentPoly:
    """Sparse Laurent polynomial in q with integer coefficients."""

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        c = {}
        if coeffs:
            for e, v in coeffs.items():
                if v:
                    c[int(e)] = int(v)
        self._c = c
        self._hash = None

    @classmethod
    def const(cls, v: int) -> "LaurentPoly":
        return cls({0: v})

    @classmethod
    def monomial(cls, e: int, v: int = 1) -> "LaurentPoly":
        return cls({e: v})

    @staticmethod
    def coerce(x) -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, int):
            return LaurentPoly({0: x})
        raise TypeError(f"cannot coerce {type(x).__name__} to LaurentPoly")

    def items(self):
        return sorted(self._c.items())

    def coeff(self, e: int) -> int:
        return self._c.get(e, 0)

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self):
        return bool(self._c)

    def min_exp(self) -> int:
        return min(self._c)

    def max_exp(self) -> int:
        return max(self._c)

    def __add__(self, other):
        if isinstance(other, RatFun):
            return NotImplemented
        other = LaurentPoly.coerce(other)
        c = dict(self._c)
        for e, v in other._c.items():
            c[e] = c.get(e, 0) + v
        return LaurentPoly(c)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -v for e, v in self._c.items()})

    def __sub__(self, other):
        if isinstance(other, RatFun):
            return NotImplemented
        return self + (-LaurentPoly.coerce(other))

    def __rsub__(self, other):
        return LaurentPoly.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, RatFun):
            return NotImplemented
        if isinstance(other, int):
            return LaurentPoly({e: v * other for e, v in self._c.items()})
        other = LaurentPoly.coerce(other)
        c: dict[int, int] = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                c[e1 + e2] = c.get(e1 + e2, 0) + v1 * v2
        return LaurentPoly(c)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self._c) == 1:
                (e, v), = self._c.items()
                if v in (1, -1):
                    return LaurentPoly({e * k: v ** (-k)})
            raise ValueError("negative power of a non-unit")
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __truediv__(self, other):
        return RatFun(self, LaurentPoly.coerce(other))

    def __rtruediv__(self, other):
        return RatFun(LaurentPoly.coerce(other), self)

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if isinstance(other, RatFun):
            return other == self
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def shift(self, k: int) -> "LaurentPoly":
        return LaurentPoly({e + k: v for e, v in self._c.items()})

    def bar(self) -> "LaurentPoly":
        return LaurentPoly({-e: v for e, v in self._c.items()})

    def is_bar_invariant(self) -> bool:
        return self == self.bar()

    def has_nonneg_coeffs(self) -> bool:
        return all(v > 0 for v in self._c.values())

    def exact_div(self, other) -> "LaurentPoly":
        """Quotient self/other, raising ArithmeticError if it is not a Laurent polynomial."""
        other = LaurentPoly.coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero Laurent polynomial")
        if self.is_zero():
            return ZERO
        a, sa = _dense(self)
        b, sb = _dense(other)
        q, r = _divmod_int(a, b)
        if q is None or any(r):
            raise ArithmeticError(f"{other} does not divide {self}")
        return _from_dense(q, sa - sb)

    def __call__(self, x):
        """Evaluate at q = x (x may be a Fraction)."""
        return sum(v * x ** e for e, v in self._c.items())

    def to_json(self) -> dict:
        return {str(e): v for e, v in self.items()}

    @classmethod
    def from_json(cls, d: Mapping) -> "LaurentPoly":
        return cls({int(e): int(v) for e, v in d.items()})

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for e, v in sorted(self._c.items(), reverse=True):
            if e == 0:
                mono = ""
            elif e == 1:
                mono = "q"
            else:
                mono = f"q^{e}"
            if mono:
                if v == 1:
                    s = mono
                elif v == -1:
                    s = "-" + mono
                else:
                    s = f"{v}{mono}"
            else:
                s = str(v)
            parts.append(s)
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def __repr__(self):
        return f"LaurentPoly({self})"


ZERO = LaurentPoly()
ONE = LaurentPoly({0: 1})
q = LaurentPoly({1: 1})


# dense helpers: list of ints, index = exponent offset


def _dense(p: LaurentPoly):
    lo = p.min_exp()
    hi = p.max_exp()
    out = [0] * (hi - lo + 1)
    for e, v in p._c.items():
        out[e - lo] = v
    return out, lo


def _from_dense(a: list, lo: int) -> LaurentPoly:
    return LaurentPoly({i + lo: v for i, v in enumerate(a) if v})


def _strip(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def _divmod_int(a: list, b: list):
    """Integer long division; quotient is None if some step is not integral."""
    a = list(a)
    b = _strip(list(b))
    db = len(b) - 1
    lead = b[-1]
    if len(a) - 1 < db:
        return [0], a
    quot = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c == 0:
            continue
        if c % lead:
            return None, a
        f = c // lead
        quot[i - db] = f
        for j in range(db + 1):
            a[i - db + j] -= f * b[j]
    return quot, a


def _content(a: list) -> int:
    c = 0
    for v in a:
        c = gcd(c, v)
    return c


def _primitive(a: list) -> list:
    c = _content(a)
    if c == 0:
        return a
    a = [v // c for v in a]
    if a[-1] < 0:
        a = [-v for v in a]
    return a


def _prem(a: list, b: list) -> list:
    r = list(a)
    lc = b[-1]
    db = len(b) - 1
    while len(r) - 1 >= db and r:
        c = r[-1]
        s = len(r) - 1 - db
        r = [v * lc for v in r]
        for j in range(db + 1):
            r[s + j] -= c * b[j]
        _strip(r)
    return r


def _poly_gcd(a: list, b: list) -> list:
    """Primitive gcd in Z[q] of two nonzero dense polynomials."""
    a = _primitive(_strip(list(a)))
    b = _primitive(_strip(list(b)))
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _prem(a, b)
        a, b = b, (_primitive(r) if r else [])
    return _primitive(a)


class RatFun:
    """Element of Q(q) with integer numerator and denominator in canonical reduced form.

    The denominator has lowest exponent 0 and a positive lowest coefficient;
    the common factors (polynomial and integer content) are removed.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = LaurentPoly.coerce(num)
        den = ONE if den is None else LaurentPoly.coerce(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        self.num, self.den = _canonical(num, den)

    @staticmethod
    def coerce(x) -> "RatFun":
        if isinstance(x, RatFun):
            return x
        return RatFun(LaurentPoly.coerce(x))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def __add__(self, other):
        other = RatFun.coerce(other)
        if self.den == other.den:
            return RatFun(self.num + other.num, self.den)
        return RatFun(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        r = object.__new__(RatFun)
        r.num, r.den = -self.num, self.den
        return r

    def __sub__(self, other):
        return self + (-RatFun.coerce(other))

    def __rsub__(self, other):
        return RatFun.coerce(other) - self

    def __mul__(self, other):
        other = RatFun.coerce(other)
        return RatFun(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = RatFun.coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero")
        return RatFun(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return RatFun.coerce(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return RatFun(self.den, self.num) ** (-k)
        return RatFun(self.num ** k, self.den ** k)

    def __eq__(self, other):
        if isinstance(other, (int, LaurentPoly)):
            other = RatFun.coerce(other)
        if not isinstance(other, RatFun):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        return hash((self.num, self.den))

    def bar(self) -> "RatFun":
        return RatFun(self.num.bar(), self.den.bar())

    def as_laurent(self) -> LaurentPoly | None:
        """The Laurent polynomial equal to self, or None if self is not one."""
        if len(self.den._c) == 1:
            (e, v), = self.den._c.items()
            if v == 1:
                return self.num.shift(-e)
        return None

    def series(self, order: int) -> dict[int, int]:
        """Coefficients of the Laurent expansion in positive powers of q, up to q^order.

        Requires a denominator with nonzero constant term (always true after canonicalization).
        """
        d, _ = _dense(self.den)
        c0 = d[0]
        lo = self.num.min_exp()
        n, _ = _dense(self.num)
        out: list = []
        for i in range(order - lo + 1):
            s = n[i] if i < len(n) else 0
            for j in range(1, min(i, len(d) - 1) + 1):
                s -= d[j] * out[i - j]
            if s % c0:
                raise ArithmeticError("series has non-integral coefficients")
            out.append(s // c0)
        return {i + lo: v for i, v in enumerate(out) if v}

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, d: Mapping) -> "RatFun":
        return cls(LaurentPoly.from_json(d["num"]), LaurentPoly.from_json(d["den"]))

    def __str__(self):
        if self.den == ONE:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"RatFun({self})"


def _canonical(num: LaurentPoly, den: LaurentPoly):
    if num.is_zero():
        return ZERO, ONE
    a, la = _dense(num)
    b, lb = _dense(den)
    if len(b) > 1 and len(a) > 1:
        g = _poly_gcd(a, b)
        if len(g) > 1:
            a, ra = _divmod_int(a, g)
            b, rb = _divmod_int(b, g)
            assert a is not None and b is not None and not any(ra) and not any(rb)
            _strip(a)
            _strip(b)
    c = gcd(_content(a), _content(b))
    if c > 1:
        a = [v // c for v in a]
        b = [v // c for v in b]
    if b[0] < 0:
        a = [-v for v in a]
        b = [-v for v in b]
    return _from_dense(a, la - lb), _from_dense(b, 0)


Scalar = Union[int, LaurentPoly, RatFun]


def bar(f):
    """The bar involution q -> q^-1."""
    if isinstance(f, int):
        return f
    return f.bar()


@lru_cache(maxsize=None)
def qint(a: int) -> LaurentPoly:
    """Quantum integer [a] = (q^a - q^-a)/(q - q^-1)."""
    if a < 0:
        return -qint(-a)
    return LaurentPoly({a - 1 - 2 * i: 1 for i in range(a)})


@lru_cache(maxsize=None)
def qfact(a: int) -> LaurentPoly:
    if a < 0:
        raise ValueError("qfact needs a >= 0")
    out = ONE
    for i in range(1, a + 1):
        out = out * qint(i)
    return out


@lru_cache(maxsize=None)
def qbin(m: int, j: int) -> LaurentPoly:
    """Quantum binomial by the falling product, so negative tops are allowed."""
    if j < 0:
        return ZERO
    top = ONE
    for i in range(j):
        top = top * qint(m - i)
    return top.exact_div(qfact(j))


@lru_cache(maxsize=None)
def ginv(a: int) -> LaurentPoly:
    """1/g(a) = prod_{j=1}^a (1 - q^{2j}), a polynomial."""
    out = ONE
    for j in range(1, a + 1):
        out = out * LaurentPoly({0: 1, 2 * j: -1})
    return out


@lru_cache(maxsize=None)
def g(a: int) -> RatFun:
    if a < 0:
        raise ValueError("g needs a >= 0")
    return RatFun(ONE, ginv(a))


def qpow(e: int) -> LaurentPoly:
    return LaurentPoly({e: 1})


def check_qidentities(amax: int = 6, jmax: int = 6, mmin: int = -4) -> dict:
    """Check the Pascal-type and g-recursion identities on a finite range.

    Returns {name: (ok, counterexample or None)}.
    """
    out = {}

    def first_fail(cases: Iterable, test):
        for case in cases:
            if not test(*case):
                return case
        return None

    aj = [(a, j) for a in range(0, amax + 1) for j in range(1, jmax + 1)]
    bad = first_fail(aj, lambda a, j: qbin(a + 1, j) == qpow(-j) * qbin(a, j) + qpow(a - j + 1) * qbin(a, j - 1))
    out["pascal_minus"] = (bad is None, bad)
    bad = first_fail(aj, lambda a, j: qbin(a + 1, j) == qpow(j) * qbin(a, j) + qpow(-a + j - 1) * qbin(a, j - 1))
    out["pascal_plus"] = (bad is None, bad)

    mj = [(m, j) for m in range(mmin, amax + 1) for j in range(0, jmax + 1)]
    # qbin(m, j+1)/g(j+1) as polynomials: multiply by 1/g
    bad = first_fail(mj, lambda m, j: qbin(m, j + 1) * ginv(j + 1)
                     == qpow(m + 1) * (qpow(2 * (j - m)) - 1) * qbin(m, j) * ginv(j))
    out["g_step"] = (bad is None, bad)
    bad = first_fail(mj, lambda m, j: qbin(m, j + 1) * ginv(j + 1)
                     == qpow(m + 1 + j) * (qpow(-2 * m) - 1) * qbin(m - 1, j) * ginv(j))
    out["g_step_lower"] = (bad is None, bad)
    return out
