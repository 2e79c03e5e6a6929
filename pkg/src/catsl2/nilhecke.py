"""Symmetric groups, divided differences, Schubert polynomials and the nilHecke ring.

Permutations compose as functions, (uv)(j) = u(v(j)), so w*s_i swaps the
entries in positions i and i+1 of the one-line notation of w.
"""
from __future__ import annotations

import itertools
import re
from functools import lru_cache
from typing import Iterable, Mapping

from .qring import ONE, LaurentPoly, RatFun, qfact, qpow


class Perm(tuple):
    """Permutation of {1..a} in one-line notation."""

    def __new__(cls, images: Iterable[int]):
        t = tuple(int(v) for v in images)
        if sorted(t) != list(range(1, len(t) + 1)):
            raise ValueError(f"not a permutation: {t}")
        return super().__new__(cls, t)

    @classmethod
    def identity(cls, a: int) -> "Perm":
        return cls(range(1, a + 1))

    @classmethod
    def longest(cls, a: int) -> "Perm":
        return cls(range(a, 0, -1))

    @classmethod
    def s(cls, i: int, a: int) -> "Perm":
        w = list(range(1, a + 1))
        w[i - 1], w[i] = w[i], w[i - 1]
        return cls(w)

    @classmethod
    def parse(cls, text: str) -> "Perm":
        text = text.strip()
        if "," in text or " " in text:
            return cls(int(v) for v in re.split(r"[,\s]+", text.strip("[]() ")) if v)
        return cls(int(ch) for ch in text)

    @property
    def rank(self) -> int:
        return len(self)

    def __mul__(self, other: "Perm") -> "Perm":
        return Perm(self[other[j] - 1] for j in range(len(self)))

    def inverse(self) -> "Perm":
        inv = [0] * len(self)
        for i, v in enumerate(self):
            inv[v - 1] = i + 1
        return Perm(inv)

    def length(self) -> int:
        return sum(1 for i in range(len(self)) for j in range(i + 1, len(self)) if self[i] > self[j])

    def reduced_word(self) -> tuple:
        """Lexicographically smallest reduced word (i1, ..., il) with w = s_i1 ... s_il."""
        return _reduced_word(tuple(self))

    def __str__(self):
        if len(self) < 10:
            return "".join(str(v) for v in self)
        return ",".join(str(v) for v in self)

    def __repr__(self):
        return f"Perm({self})"


@lru_cache(maxsize=None)
def _reduced_word(w: tuple) -> tuple:
    winv = Perm(w).inverse()
    for i in range(1, len(w)):
        # left descent: s_i w < w
        if winv[i - 1] > winv[i]:
            rest = Perm.s(i, len(w)) * Perm(w)
            return (i,) + _reduced_word(tuple(rest))
    return ()


def all_perms(a: int) -> list:
    """All of S_a ordered by length, then lexicographically."""
    ps = [Perm(p) for p in itertools.permutations(range(1, a + 1))]
    return sorted(ps, key=lambda p: (p.length(), tuple(p)))


class IntPoly:
    """Integer polynomial in x_1..x_a, stored as {exponent tuple: coefficient}."""

    __slots__ = ("a", "terms")

    def __init__(self, a: int, terms: Mapping | None = None):
        self.a = a
        t = {}
        for e, v in (terms or {}).items():
            if v:
                e = tuple(e)
                if len(e) != a:
                    raise ValueError("exponent length mismatch")
                t[e] = t.get(e, 0) + v
                if not t[e]:
                    del t[e]
        self.terms = t

    @classmethod
    def const(cls, a: int, c: int = 1) -> "IntPoly":
        return cls(a, {(0,) * a: c})

    @classmethod
    def var(cls, i: int, a: int, p: int = 1) -> "IntPoly":
        e = [0] * a
        e[i - 1] = p
        return cls(a, {tuple(e): 1})

    @classmethod
    def staircase(cls, a: int) -> "IntPoly":
        """x^delta = x_1^{a-1} x_2^{a-2} ... x_{a-1}."""
        return cls(a, {tuple(a - 1 - i for i in range(a)): 1})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        if isinstance(other, int):
            other = IntPoly.const(self.a, other)
        d = dict(self.terms)
        for e, v in other.terms.items():
            d[e] = d.get(e, 0) + v
        return IntPoly(self.a, d)

    __radd__ = __add__

    def __neg__(self):
        return IntPoly(self.a, {e: -v for e, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPoly(self.a, {e: v * other for e, v in self.terms.items()})
        d: dict = {}
        for e1, v1 in self.terms.items():
            for e2, v2 in other.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                d[e] = d.get(e, 0) + v1 * v2
        return IntPoly(self.a, d)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPoly.const(self.a, other)
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self.a == other.a and self.terms == other.terms

    def __hash__(self):
        return hash((self.a, frozenset(self.terms.items())))

    def degree(self) -> int | None:
        """Degree with deg x_i = 2, or None for inhomogeneous/zero input."""
        ds = {2 * sum(e) for e in self.terms}
        return ds.pop() if len(ds) == 1 else None

    def swap(self, i: int) -> "IntPoly":
        """s_i acting by exchanging x_i and x_{i+1}."""
        d = {}
        for e, v in self.terms.items():
            e = list(e)
            e[i - 1], e[i] = e[i], e[i - 1]
            d[tuple(e)] = v
        return IntPoly(self.a, d)

    def permute(self, w: Perm) -> "IntPoly":
        """w acting by x_j -> x_{w(j)}."""
        d = {}
        for e, v in self.terms.items():
            ne = [0] * self.a
            for j, p in enumerate(e):
                ne[w[j] - 1] = p
            d[tuple(ne)] = v
        return IntPoly(self.a, d)

    def is_symmetric(self) -> bool:
        return all(self.swap(i) == self for i in range(1, self.a))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, v in sorted(self.terms.items(), key=lambda t: (-sum(t[0]), [-x for x in t[0]])):
            mono = " ".join(f"x{i + 1}" + (f"^{p}" if p > 1 else "") for i, p in enumerate(e) if p)
            if not mono:
                parts.append(str(v))
            elif v == 1:
                parts.append(mono)
            elif v == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{v} {mono}")
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def __repr__(self):
        return f"IntPoly({self})"

    @classmethod
    def parse(cls, text: str, a: int) -> "IntPoly":
        """Inverse of str(): terms like ``-2 x1^2 x3`` joined by + and -."""
        text = text.replace("*", " ").strip()
        if text == "0":
            return cls(a)
        out = cls(a)
        for sign, body in re.findall(r"([+-]?)\s*([^+-]+)", text):
            toks = body.split()
            c = 1
            e = [0] * a
            for tok in toks:
                m = re.fullmatch(r"x(\d+)(?:\^(\d+))?", tok)
                if m:
                    i = int(m.group(1))
                    if not 1 <= i <= a:
                        raise ValueError(f"variable x{i} out of range")
                    e[i - 1] += int(m.group(2) or 1)
                elif re.fullmatch(r"\d+", tok):
                    c *= int(tok)
                else:
                    raise ValueError(f"bad token {tok!r}")
            out = out + cls(a, {tuple(e): -c if sign == "-" else c})
        return out


def divided_difference(i: int, p: IntPoly) -> IntPoly:
    """(p - s_i p)/(x_i - x_{i+1}), computed monomial by monomial."""
    if not 1 <= i < p.a:
        raise ValueError(f"index {i} out of range for rank {p.a}")
    d: dict = {}
    for e, v in p.terms.items():
        s, r = e[i - 1], e[i]
        if s == r:
            continue
        sign = 1 if s > r else -1
        hi, lo = max(s, r), min(s, r)
        # (x^hi y^lo - x^lo y^hi)/(x - y) = sum_t x^{hi-1-t} y^{lo+t}
        for t in range(hi - lo):
            ne = list(e)
            ne[i - 1] = hi - 1 - t
            ne[i] = lo + t
            ne = tuple(ne)
            d[ne] = d.get(ne, 0) + sign * v
    out = IntPoly(p.a, d)
    return out


def partial_word(word: Iterable[int], p: IntPoly) -> IntPoly:
    """d_{i1} ... d_{il} p, rightmost first."""
    for i in reversed(tuple(word)):
        p = divided_difference(i, p)
        if p.is_zero():
            break
    return p


def partial_perm(w: Perm, p: IntPoly) -> IntPoly:
    return partial_word(w.reduced_word(), p)


@lru_cache(maxsize=None)
def schubert(w: Perm) -> IntPoly:
    """Schubert polynomial: d_{w^-1 w0} applied to the staircase monomial."""
    a = len(w)
    return partial_perm(w.inverse() * Perm.longest(a), IntPoly.staircase(a))


class NHElement:
    """Integer combination of chi^e u_w (all chi to the left)."""

    __slots__ = ("a", "terms")

    def __init__(self, a: int, terms: Mapping | None = None):
        self.a = a
        t = {}
        for (e, w), v in (terms or {}).items():
            if v:
                key = (tuple(e), Perm(w))
                t[key] = t.get(key, 0) + v
                if not t[key]:
                    del t[key]
        self.terms = t

    @classmethod
    def one(cls, a: int) -> "NHElement":
        return cls(a, {((0,) * a, Perm.identity(a)): 1})

    @classmethod
    def chi(cls, i: int, a: int, p: int = 1) -> "NHElement":
        e = [0] * a
        e[i - 1] = p
        return cls(a, {(tuple(e), Perm.identity(a)): 1})

    @classmethod
    def u(cls, i: int, a: int) -> "NHElement":
        return cls(a, {((0,) * a, Perm.s(i, a)): 1})

    @classmethod
    def uw(cls, w: Perm) -> "NHElement":
        return cls(len(w), {((0,) * len(w), w): 1})

    @classmethod
    def from_poly(cls, p: IntPoly, w: Perm | None = None) -> "NHElement":
        w = w or Perm.identity(p.a)
        return cls(p.a, {(e, w): v for e, v in p.terms.items()})

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        d = dict(self.terms)
        for k, v in other.terms.items():
            d[k] = d.get(k, 0) + v
        return NHElement(self.a, d)

    def __neg__(self):
        return NHElement(self.a, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return NHElement(self.a, {k: v * other for k, v in self.terms.items()})
        return nh_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, NHElement):
            return NotImplemented
        return self.a == other.a and self.terms == other.terms

    def __hash__(self):
        return hash((self.a, frozenset(self.terms.items())))

    def degree(self) -> int | None:
        ds = {2 * sum(e) - 2 * w.length() for e, w in self.terms}
        return ds.pop() if len(ds) == 1 else None

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (e, w), v in sorted(self.terms.items(), key=lambda t: (t[0][1].length(), tuple(t[0][1]), t[0][0])):
            fs = [f"x{i + 1}" + (f"^{p}" if p > 1 else "") for i, p in enumerate(e) if p]
            if w != Perm.identity(self.a):
                fs.append(f"u[{w}]")
            mono = "*".join(fs)
            if not mono:
                parts.append(str(v))
            elif v == 1:
                parts.append(mono)
            elif v == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{v}*{mono}")
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def __repr__(self):
        return f"NHElement({self})"

    @classmethod
    def parse(cls, text: str, a: int) -> "NHElement":
        """Parse sums of products of x{i}^{p}, u{i} and u[one-line perm] with integer coefficients."""
        text = text.strip()
        if text == "0":
            return cls(a)
        total = cls(a)
        for sign, body in re.findall(r"([+-]?)\s*([^+-]+)", text):
            prod = cls.one(a)
            for tok in re.split(r"[*\s]+", body.strip()):
                if not tok:
                    continue
                m = re.fullmatch(r"(?:x|chi)(\d+)(?:\^(\d+))?", tok)
                if m:
                    i = int(m.group(1))
                    if not 1 <= i <= a:
                        raise ValueError(f"generator index {i} out of range")
                    f = cls.chi(i, a, int(m.group(2) or 1))
                elif re.fullmatch(r"u(\d+)", tok):
                    i = int(tok[1:])
                    if not 1 <= i < a:
                        raise ValueError(f"generator index {i} out of range")
                    f = cls.u(i, a)
                elif re.fullmatch(r"u\[([\d,]+)\]", tok):
                    w = Perm.parse(tok[2:-1])
                    if len(w) != a:
                        raise ValueError("permutation rank mismatch")
                    f = cls.uw(w)
                elif re.fullmatch(r"\d+", tok):
                    f = cls.one(a) * int(tok)
                else:
                    raise ValueError(f"bad token {tok!r}")
                prod = nh_mul(prod, f)
            total = total + (-prod if sign == "-" else prod)
        return total


def _u_times_poly(word: tuple, p: IntPoly) -> dict:
    """u_{i1}...u_{il} * p rewritten as {perm: poly} meaning sum poly * u_perm."""
    a = p.a
    cur = {Perm.identity(a): p}
    for i in reversed(word):
        nxt: dict = {}
        si = Perm.s(i, a)
        for v, pk in cur.items():
            # u_i pk = (s_i pk) u_i + d_i(pk)
            sv = si * v
            if sv.length() == v.length() + 1:
                nxt[sv] = nxt.get(sv, IntPoly(a)) + pk.swap(i)
            dp = divided_difference(i, pk)
            if not dp.is_zero():
                nxt[v] = nxt.get(v, IntPoly(a)) + dp
        cur = {v: q_ for v, q_ in nxt.items() if not q_.is_zero()}
    return cur


def nh_mul(x: NHElement, y: NHElement) -> NHElement:
    if x.a != y.a:
        raise ValueError("rank mismatch")
    a = x.a
    out: dict = {}
    for (e1, w1), v1 in x.terms.items():
        word = w1.reduced_word()
        for (e2, w2), v2 in y.terms.items():
            moved = _u_times_poly(word, IntPoly(a, {e2: 1}))
            for w, pk in moved.items():
                ww = w * w2
                if ww.length() != w.length() + w2.length():
                    continue
                for e, c in pk.terms.items():
                    key = (tuple(s + t for s, t in zip(e1, e)), ww)
                    out[key] = out.get(key, 0) + v1 * v2 * c
    return NHElement(a, out)


def act(e: NHElement, p: IntPoly) -> IntPoly:
    """chi_i acts by multiplication by x_i and u_i by the divided difference d_i."""
    out = IntPoly(p.a)
    for (ex, w), v in e.terms.items():
        d = partial_perm(w, p)
        if not d.is_zero():
            out = out + IntPoly(p.a, {ex: v}) * d
    return out


def schubert_basis(a: int) -> list:
    return all_perms(a)


def schubert_decompose(p: IntPoly) -> dict:
    """Coefficients c_w (symmetric polynomials) with p = sum c_w S_w.

    Longest permutations first: once longer terms are removed, d_w extracts c_w.
    """
    a = p.a
    perms = all_perms(a)
    coeffs = {}
    rem = p
    for L in range(a * (a - 1) // 2, -1, -1):
        level = [w for w in perms if w.length() == L]
        found = {w: partial_perm(w, rem) for w in level}
        for w, c in found.items():
            if not c.is_zero():
                if not c.is_symmetric():
                    raise ArithmeticError("Schubert decomposition produced a non-symmetric coefficient")
                coeffs[w] = c
                rem = rem - c * schubert(w)
    if not rem.is_zero():
        raise ArithmeticError("Schubert decomposition left a remainder")
    return coeffs


def phi_matrix(e: NHElement) -> list:
    """Matrix of act(e, .) in the Schubert basis; entry [i][j] is the coefficient of S_i in e.S_j."""
    basis = all_perms(e.a)
    cols = [schubert_decompose(act(e, schubert(w))) for w in basis]
    zero = IntPoly(e.a)
    return [[cols[j].get(basis[i], zero) for j in range(len(basis))] for i in range(len(basis))]


def matmul(m1: list, m2: list) -> list:
    n = len(m1)
    a = m1[0][0].a
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            s = IntPoly(a)
            for k in range(n):
                if not m1[i][k].is_zero() and not m2[k][j].is_zero():
                    s = s + m1[i][k] * m2[k][j]
            row.append(s)
        out.append(row)
    return out


def e_w0(a: int) -> NHElement:
    """x^delta u_{w0}."""
    st = IntPoly.staircase(a)
    (ex, _), = st.terms.items()
    return NHElement(a, {(ex, Perm.longest(a)): 1})


def is_idempotent(e: NHElement) -> bool:
    return nh_mul(e, e) == e


def graded_rank_checks(a: int) -> dict:
    """Length censuses against their closed forms.

    Keys: 'nilcoxeter' (sum over w of q^{-2l(w)} vs q^{-a(a-1)/2}[a]!) and
    'schubert' (sum of q^{deg S_w} vs q^{a(a-1)/2}[a]!), each (ok, census, closed form);
    'nilhecke' compares q^{-a(a-1)/2}[a]! (1/(1-q^2))^a with [a]!^2 g(a).
    """
    from .qring import g
    perms = all_perms(a)
    top = a * (a - 1) // 2
    nc = LaurentPoly({})
    sch = LaurentPoly({})
    for w in perms:
        nc = nc + qpow(-2 * w.length())
        sch = sch + qpow(schubert(w).degree() or 0)
    nc_closed = qpow(-top) * qfact(a)
    sch_closed = qpow(top) * qfact(a)
    nh_closed = RatFun(nc_closed) * RatFun(ONE, LaurentPoly({0: 1, 2: -1})) ** a
    other = RatFun(qfact(a) * qfact(a)) * g(a)
    return {
        "nilcoxeter": (nc == nc_closed, nc, nc_closed),
        "schubert": (sch == sch_closed, sch, sch_closed),
        "nilhecke": (nh_closed == other, nh_closed, other),
    }
