"""The idempotented quantum sl2 over Z[q, q^-1].

Elements are stored in the spanning set E^(a) F^(b) 1_n.  The canonical
basis, the (anti)automorphisms and both closed forms of the semilinear form
live here as well.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping

from .qring import (ONE, ZERO, LaurentPoly, RatFun, ginv, qbin, qpow)


@dataclass(frozen=True, order=True)
class BasisLabel:
    """E^(a) F^(b) 1_n (form 'EF') or F^(b) E^(a) 1_n (form 'FE')."""

    form: str
    a: int
    b: int
    n: int

    def __post_init__(self):
        if self.form not in ("EF", "FE"):
            raise ValueError(f"bad form tag {self.form!r}")
        if self.a < 0 or self.b < 0:
            raise ValueError("divided powers must be nonnegative")

    @property
    def left(self) -> int:
        return self.n + 2 * (self.a - self.b)

    def is_canonical(self) -> bool:
        if self.form == "EF":
            return self.n <= self.b - self.a
        return self.n >= self.b - self.a

    def normalized(self) -> "BasisLabel":
        """Identify the two tags on the wall n = b - a (EF is preferred there)."""
        if self.form == "FE" and self.n == self.b - self.a:
            return BasisLabel("EF", self.a, self.b, self.n)
        return self

    def __str__(self):
        return _word(self.form, self.a, self.b, self.n)


def _word(form: str, a: int, b: int, n: int) -> str:
    e = f"E({a})" if a else ""
    f = f"F({b})" if b else ""
    body = e + f if form == "EF" else f + e
    return f"{body}1_{{{n}}}"


def canonical_label(a: int, b: int, n: int) -> BasisLabel:
    return BasisLabel("EF" if n <= b - a else "FE", a, b, n)


def fe_to_ef(a: int, b: int, n: int) -> dict:
    """F^(b) E^(a) 1_n expanded over E^(a-j) F^(b-j) 1_n."""
    out = {}
    for j in range(min(a, b) + 1):
        c = qbin(b - a - n, j)
        if c:
            out[(a - j, b - j, n)] = c
    return out


def ef_to_fe(a: int, b: int, n: int) -> dict:
    """E^(a) F^(b) 1_n expanded over F^(b-j) E^(a-j) 1_n (keys are (a-j, b-j, n))."""
    out = {}
    for j in range(min(a, b) + 1):
        c = qbin(a - b + n, j)
        if c:
            out[(a - j, b - j, n)] = c
    return out


def _add_into(d: dict, key, c):
    v = d.get(key, ZERO) + c
    if v:
        d[key] = v
    else:
        d.pop(key, None)


class UdotElement:
    """Finite Z[q,q^-1]-combination of E^(a) F^(b) 1_n."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | None = None):
        t = {}
        for k, v in (terms or {}).items():
            v = LaurentPoly.coerce(v)
            if v:
                t[tuple(k)] = v
        self.terms = t

    # constructors
    @classmethod
    def ef(cls, a: int, b: int, n: int, coeff=ONE) -> "UdotElement":
        return cls({(a, b, n): coeff})

    @classmethod
    def fe(cls, a: int, b: int, n: int, coeff=ONE) -> "UdotElement":
        c = LaurentPoly.coerce(coeff)
        return cls({k: v * c for k, v in fe_to_ef(a, b, n).items()})

    @classmethod
    def one(cls, n: int) -> "UdotElement":
        return cls({(0, 0, n): ONE})

    @classmethod
    def from_label(cls, lab: BasisLabel) -> "UdotElement":
        if lab.form == "EF":
            return cls.ef(lab.a, lab.b, lab.n)
        return cls.fe(lab.a, lab.b, lab.n)

    def is_zero(self) -> bool:
        return not self.terms

    def weights(self) -> set:
        """Set of (source, target) weight pairs occurring."""
        return {(n, n + 2 * (a - b)) for (a, b, n) in self.terms}

    @property
    def src_weight(self) -> int:
        (s, _), = self.weights()
        return s

    @property
    def dst_weight(self) -> int:
        (_, t), = self.weights()
        return t

    def __add__(self, other: "UdotElement") -> "UdotElement":
        d = dict(self.terms)
        for k, v in other.terms.items():
            _add_into(d, k, v)
        return UdotElement(d)

    def __neg__(self):
        return UdotElement({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "UdotElement":
        c = LaurentPoly.coerce(c)
        return UdotElement({k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, LaurentPoly)):
            return self.scale(other)
        return mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, LaurentPoly)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, UdotElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = [_term_str(v, _word("EF", a, b, n)) for (a, b, n), v in sorted(self.terms.items())]
        return _join(parts)

    def __repr__(self):
        return f"UdotElement({self})"


def _term_str(c: LaurentPoly, word: str) -> str:
    if c == ONE:
        return word
    if c == -ONE:
        return "-" + word
    if len(c.items()) == 1:
        (e, v), = c.items()
        if e == 0:
            return f"{v}*{word}"
    return f"({c})*{word}"


def _join(parts: list) -> str:
    out = parts[0]
    for p in parts[1:]:
        out += " - " + p[1:] if p.startswith("-") else " + " + p
    return out


def mul(x: UdotElement, y: UdotElement) -> UdotElement:
    """Product in Udot; mismatched weights give zero."""
    out: dict = {}
    for (a, b, n), cx in x.terms.items():
        for (c, d, m), cy in y.terms.items():
            if m + 2 * (c - d) != n:
                continue
            # F^(b) E^(c) acting at weight m - 2d
            top = b - c - (m - 2 * d)
            coef = cx * cy
            for j in range(min(b, c) + 1):
                k = qbin(top, j) * qbin(a + c - j, a) * qbin(b + d - j, d)
                if k:
                    _add_into(out, (a + c - j, b + d - j, m), coef * k)
    return UdotElement(out)


def to_canonical(x: UdotElement) -> dict:
    """Expansion of x over the canonical basis, as {BasisLabel: coefficient}."""
    out: dict = {}
    for (a, b, n), c in x.terms.items():
        if n <= b - a:
            _add_into(out, BasisLabel("EF", a, b, n), c)
        else:
            for (a2, b2, n2), k in ef_to_fe(a, b, n).items():
                _add_into(out, BasisLabel("FE", a2, b2, n2).normalized(), c * k)
    return out


def from_canonical(d: Mapping) -> UdotElement:
    out = UdotElement()
    for lab, c in d.items():
        out = out + UdotElement.from_label(lab).scale(c)
    return out


def canonical_str(d: Mapping) -> str:
    if not d:
        return "0"
    return _join([_term_str(c, str(lab)) for lab, c in sorted(d.items())])


def structure_constants(b1: BasisLabel, b2: BasisLabel):
    """Canonical expansion of b1*b2 and whether every coefficient lies in N[q,q^-1]."""
    prod = mul(UdotElement.from_label(b1), UdotElement.from_label(b2))
    can = to_canonical(prod)
    return can, all(c.has_nonneg_coeffs() for c in can.values())


def canonical_labels(amax: int, bmax: int, nrange: Iterable[int]) -> list:
    return [canonical_label(a, b, n) for n in nrange for a in range(amax + 1) for b in range(bmax + 1)]


# symmetries, all given on q^s 1_m E^(a) F^(b) 1_n


def _tau_exp(a: int, b: int, n: int) -> int:
    return (a - b) * (a - b + n)


def apply_symmetry(which: str, x: UdotElement) -> UdotElement:
    which = {"omega": "ω", "sigma": "σ", "psi": "ψ", "tau": "τ", "tauinv": "τ⁻¹",
             "tau^-1": "τ⁻¹", "rho": "ρ"}.get(which, which)
    out = UdotElement()
    for (a, b, n), c in x.terms.items():
        m = n + 2 * (a - b)
        if which == "ω":
            out = out + UdotElement.fe(b, a, -n, c)
        elif which == "σ":
            out = out + UdotElement.fe(a, b, -m, c)
        elif which == "ψ":
            out = out + UdotElement.ef(a, b, n, c.bar())
        elif which == "τ":
            out = out + UdotElement.ef(b, a, m, c.bar() * qpow(-_tau_exp(a, b, n)))
        elif which == "τ⁻¹":
            out = out + UdotElement.ef(b, a, m, c.bar() * qpow(_tau_exp(a, b, n)))
        elif which == "ρ":
            out = out + UdotElement.ef(b, a, m, c * qpow(_tau_exp(a, b, n)))
        else:
            raise ValueError(f"unknown symmetry {which!r}")
    return out


# the semilinear form


def _form_ef(a, b, c, d, n) -> RatFun:
    """<E^(a)F^(b)1_n, E^(c)F^(d)1_n> by the triple-binomial sum."""
    if a - b != c - d:
        return RatFun(ZERO)
    top = b + c
    num = ZERO
    for j in range(min(a, c) + 1):
        t = qbin(b + d - n, j) * qbin(b + c - j, b) * qbin(a + d - j, d)
        if t:
            # g(b+c-j) = (prod_{i=b+c-j+1}^{b+c} (1-q^{2i})) / ginv(b+c)
            fill = ONE
            for i in range(b + c - j + 1, top + 1):
                fill = fill * LaurentPoly({0: 1, 2 * i: -1})
            num = num + t * fill * qpow((a + c - j) * (b + d - j - n))
    return RatFun(num, ginv(top))


def _form_fe(a, b, c, d, n) -> RatFun:
    """<F^(b)E^(a)1_n, F^(d)E^(c)1_n> by the triple-binomial sum."""
    if a - b != c - d:
        return RatFun(ZERO)
    top = a + d
    num = ZERO
    for j in range(min(b, d) + 1):
        t = qbin(a + c + n, j) * qbin(a + d - j, a) * qbin(b + c - j, c)
        if t:
            fill = ONE
            for i in range(a + d - j + 1, top + 1):
                fill = fill * LaurentPoly({0: 1, 2 * i: -1})
            num = num + t * fill * qpow((b + d - j) * (a + c - j + n))
    return RatFun(num, ginv(top))


def _alt_sum(a, b, c, d, expo) -> RatFun:
    if a - b != c - d:
        return RatFun(ZERO)
    total = RatFun(ZERO)
    for j in range(max(0, a - c), min(a, b) + 1):
        den = ginv(a - j) * ginv(b - j) * ginv(j) * ginv(c - a + j)
        total = total + RatFun(qpow(expo(j)), den)
    return total


def _form_ef_alt(a, b, c, d, n) -> RatFun:
    return _alt_sum(a, b, c, d, lambda j: 2 * j * j + (a - d + n) * (a - c - 2 * j))


def _form_fe_alt(a, b, c, d, n) -> RatFun:
    return _alt_sum(a, b, c, d, lambda j: 2 * j * j + (b - c - n) * (b - d - 2 * j))


def form_basis(l1: BasisLabel, l2: BasisLabel, alt: bool = False) -> RatFun:
    """Semilinear form on two basis labels.

    Same-tag pairs use the closed formula for that tag; mixed pairs expand the
    FE label over the EF spanning set first.
    """
    if l1.n != l2.n or l1.left != l2.left:
        return RatFun(ZERO)
    ef, fe = (_form_ef_alt, _form_fe_alt) if alt else (_form_ef, _form_fe)
    if l1.form == l2.form == "FE":
        return fe(l1.a, l1.b, l2.a, l2.b, l1.n)
    if l1.form == l2.form == "EF":
        return ef(l1.a, l1.b, l2.a, l2.b, l1.n)
    x = UdotElement.from_label(l1)
    y = UdotElement.from_label(l2)
    return _form_elements(x, y, ef)


def _form_elements(x: UdotElement, y: UdotElement, ef) -> RatFun:
    total = RatFun(ZERO)
    for (a, b, n), cx in x.terms.items():
        for (c, d, m), cy in y.terms.items():
            if n != m or a - b != c - d:
                continue
            total = total + RatFun(cx.bar() * cy) * ef(a, b, c, d, n)
    return total


def _form_canonical(x: UdotElement, y: UdotElement, alt: bool) -> RatFun:
    cx = to_canonical(x)
    cy = to_canonical(y)
    total = RatFun(ZERO)
    for l1, c1 in cx.items():
        for l2, c2 in cy.items():
            v = form_basis(l1, l2, alt)
            if v:
                total = total + RatFun(c1.bar() * c2) * v
    return total


def form(x: UdotElement, y: UdotElement) -> RatFun:
    """<x, y>: antilinear in x, linear in y."""
    return _form_canonical(x, y, alt=False)


def form_alt(x: UdotElement, y: UdotElement) -> RatFun:
    """<x, y> through the single-sum closed form."""
    return _form_canonical(x, y, alt=True)


def form_bilinear(x: UdotElement, y: UdotElement) -> RatFun:
    """Lusztig's symmetric bilinear form (x, y) = bar <x, psi(y)>."""
    return form(x, apply_symmetry("ψ", y)).bar()


def grdim(x: UdotElement, y: UdotElement) -> RatFun:
    """Predicted graded rank of the 2-hom space between lifts of x and y."""
    return form(x, y)


def indecomposable(lab: BasisLabel) -> bool:
    """True iff <b,b> lies in 1 + qN[[q]], read off the exponents of the single-sum form."""
    a, b, n = lab.a, lab.b, lab.n
    for j in range(1, min(a, b) + 1):
        if lab.form == "EF":
            e = 2 * j * (j - a + b - n)
        else:
            e = 2 * j * (j + a - b + n)
        if e <= 0:
            return False
    return True


def verify_nasty(a: int, b: int, c: int, n: int):
    """Both sides of the binomial identity behind the single-sum form.

    Returns (equal, lhs, rhs) as Laurent polynomials.
    """
    lhs = ZERO
    for j in range(a + 1):
        lhs = lhs + (qbin(a, j) * qbin(b + c - j, b) * qbin(2 * b + c - a - n, j)
                     * qpow(-j * (b + c - n)) * ginv(j))
    lhs = lhs * qpow(a * (3 * b + 2 * (c - a) - 2 * n))
    rhs = ZERO
    for s in range(min(a, b) + 1):
        rhs = rhs + qbin(a, s) * qbin(-a + b + c, b - s) * qpow(-s * (2 * a - 3 * b - c + 2 * n))
    return lhs == rhs, lhs, rhs


# parsing


_TOKEN = re.compile(r"\s*(?:(?P<idem>1_)|(?P<num>\d+)|(?P<q>q)|(?P<pow>\^)|(?P<gen>[EF])"
                    r"|(?P<lp>[({])|(?P<rp>[)}])|(?P<op>[+\-*]))")


class ParseError(ValueError):
    pass


def _tokens(s: str) -> list:
    out = []
    pos = 0
    s = s.strip()
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at {pos}: {s[pos:pos + 10]!r}")
        kind = m.lastgroup
        text = m.group(kind)
        out.append((kind, text))
        pos = m.end()
        while pos < len(s) and s[pos].isspace():
            pos += 1
    return out


class _Parser:
    def __init__(self, s: str):
        self.toks = _tokens(s)
        self.i = 0

    def peek(self, k=0):
        j = self.i + k
        return self.toks[j] if j < len(self.toks) else (None, None)

    def take(self, kind=None, text=None):
        t = self.peek()
        if t[0] is None or (kind and t[0] != kind) or (text and t[1] != text):
            raise ParseError(f"expected {text or kind}, got {t[1]!r}")
        self.i += 1
        return t

    def signed_int(self) -> int:
        sign = 1
        if self.peek() == ("op", "-"):
            self.take()
            sign = -1
        elif self.peek() == ("op", "+"):
            self.take()
        return sign * int(self.take("num")[1])

    def qmono(self) -> LaurentPoly:
        self.take("q")
        if self.peek()[0] == "pow":
            self.take()
            if self.peek()[0] == "lp":
                self.take()
                e = self.signed_int()
                self.take("rp")
            else:
                e = self.signed_int()
            return qpow(e)
        return qpow(1)

    def laurent(self) -> LaurentPoly:
        """Sum of terms like 3, q, -2q^-1 up to a closing paren."""
        total = ZERO
        sign = 1
        first = True
        while True:
            t = self.peek()
            if t == ("op", "-"):
                self.take()
                sign = -sign
                continue
            if t == ("op", "+"):
                self.take()
                continue
            if t[0] in ("rp", None):
                break
            c = 1
            if t[0] == "num":
                c = int(self.take()[1])
                if self.peek() == ("op", "*"):
                    self.take()
            mono = self.qmono() if self.peek()[0] == "q" else ONE
            total = total + mono * (sign * c)
            sign = 1
            first = False
        if first:
            raise ParseError("empty coefficient")
        return total

    def element(self) -> UdotElement:
        total = UdotElement()
        sign = 1
        first = True
        while self.peek()[0] is not None:
            t = self.peek()
            if t == ("op", "+"):
                self.take()
                continue
            if t == ("op", "-"):
                self.take()
                sign = -sign
                continue
            term = self.term()
            total = total + term.scale(sign)
            sign = 1
            first = False
        if first:
            raise ParseError("empty expression")
        return total

    def term(self) -> UdotElement:
        coeff = ONE
        t = self.peek()
        if t[0] == "lp" and t[1] == "(":
            self.take()
            coeff = self.laurent()
            self.take("rp")
            if self.peek() == ("op", "*"):
                self.take()
        else:
            if t[0] == "num":
                coeff = LaurentPoly.const(int(self.take()[1]))
                if self.peek() == ("op", "*"):
                    self.take()
            if self.peek()[0] == "q":
                coeff = coeff * self.qmono()
                if self.peek() == ("op", "*"):
                    self.take()
        gens = []
        while self.peek()[0] == "gen":
            g_ = self.take()[1]
            p = 1
            if self.peek() == ("lp", "("):
                self.take()
                p = int(self.take("num")[1])
                self.take("rp")
            gens.append((g_, p))
            if self.peek() == ("op", "*"):
                self.take()
        self.take("idem")
        if self.peek()[0] == "lp":
            self.take()
            n = self.signed_int()
            self.take("rp")
        else:
            n = self.signed_int()
        # build right to left
        elem = UdotElement.one(n)
        w = n
        for g_, p in reversed(gens):
            if g_ == "E":
                elem = mul(UdotElement.ef(p, 0, w), elem)
                w += 2 * p
            else:
                elem = mul(UdotElement.ef(0, p, w), elem)
                w -= 2 * p
        return elem.scale(coeff)


def parse(s: str) -> UdotElement:
    """Parse expressions such as ``q^2 E(2) F(1) 1_{-3} + F(1)E(1)1_{0}``."""
    if s.strip() == "0":
        return UdotElement()
    return _Parser(s).element()


def parse_label(s: str) -> BasisLabel:
    """Parse a single word E(a)F(b)1_{n} or F(b)E(a)1_{n} into a label."""
    p = _Parser(s)
    gens = []
    while p.peek()[0] == "gen":
        g_ = p.take()[1]
        k = 1
        if p.peek() == ("lp", "("):
            p.take()
            k = int(p.take("num")[1])
            p.take("rp")
        gens.append((g_, k))
    p.take("idem")
    if p.peek()[0] == "lp":
        p.take()
        n = p.signed_int()
        p.take("rp")
    else:
        n = p.signed_int()
    if p.peek()[0] is not None:
        raise ParseError("trailing input after basis word")
    letters = [x for x, _ in gens]
    if len(set(letters)) != len(letters):
        raise ParseError("a basis word uses each generator at most once")
    pw = dict(gens)
    a, b = pw.get("E", 0), pw.get("F", 0)
    form_ = "FE" if letters == ["F", "E"] else "EF"
    return BasisLabel(form_, a, b, n)
