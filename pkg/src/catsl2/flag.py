"""Cohomology of Grassmannians and iterated flag varieties.

H_k = H*(Gr(k, N)) is stored in the Schur basis, with partitions in the
k x (N-k) box.  The Chern classes are x_j = e_j and y_l = (-1)^l h_l, so
that (sum x_j t^j)(sum y_l t^l) = 1.

An iterated flag bimodule is described by a Signature: a word in E and F
(written left to right like the 1-morphism, so strand 1 is the last letter)
and the weight n0 of the rightmost region.  Its elements are stored as
combinations of xi-monomials (one xi per strand) times classes of the
rightmost ring H_{k0}.  Each strand adds a free extension of the ring to its
right, cut out by a single monic relation.

The sign conventions: for an E strand (right region k) xi is the first
Chern class of U_{k+1}/U_k, so x(left) = x(right)(1+xi t) and
y(left)(1+xi t) = y(right).  An F strand with right region k is the same
flag with the roles swapped: x(right) = x(left)(1+xi t).
"""
from __future__ import annotations

import ast
import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping


# partitions

Partition = tuple


def conjugate(lam: Partition) -> Partition:
    if not lam:
        return ()
    return tuple(sum(1 for p in lam if p > i) for i in range(lam[0]))


def fits(lam: Partition, k: int, N: int) -> bool:
    return len(lam) <= k and (not lam or lam[0] <= N - k)


@lru_cache(maxsize=None)
def box_partitions(k: int, N: int) -> tuple:
    """All partitions in the k x (N-k) box, by size then reverse lex."""
    out = []
    w = N - k

    def rec(prefix, maxpart, rows_left):
        out.append(tuple(prefix))
        if rows_left == 0:
            return
        for p in range(min(maxpart, w), 0, -1):
            rec(prefix + [p], p, rows_left - 1)

    if k >= 0 and w >= 0:
        rec([], w, k)
    return tuple(sorted(out, key=lambda l: (sum(l), [-p for p in l])))


def _strip(lam) -> Partition:
    return tuple(p for p in lam if p > 0)


@lru_cache(maxsize=None)
def vertical_strips(lam: Partition, j: int, k: int, N: int) -> tuple:
    """Partitions mu in the box with mu/lam a vertical j-strip."""
    base = list(lam) + [0] * (k - len(lam))
    if len(base) > k:
        return ()
    out = []
    for rows in itertools.combinations(range(k), j):
        mu = list(base)
        for r in rows:
            mu[r] += 1
        if all(mu[i] >= mu[i + 1] for i in range(k - 1)) and (not mu or mu[0] <= N - k):
            out.append(_strip(mu))
    return tuple(out)


@lru_cache(maxsize=None)
def horizontal_strips(lam: Partition, j: int, k: int, N: int) -> tuple:
    """Partitions mu in the box with mu/lam a horizontal j-strip."""
    base = list(lam) + [0] * (k - len(lam))
    if len(base) > k:
        return ()
    out = []

    def rec(i, remaining, mu):
        if i == k:
            if remaining == 0:
                out.append(_strip(mu))
            return
        upper = (N - k) if i == 0 else base[i - 1]
        for add in range(0, min(remaining, upper - base[i]) + 1):
            rec(i + 1, remaining - add, mu + [base[i] + add])

    if k == 0:
        return ((),) if j == 0 else ()
    rec(0, j, [])
    return tuple(out)


@lru_cache(maxsize=None)
def _schur_in_e(lam: Partition) -> tuple:
    """s_lam as a polynomial in the e_j by the dual Jacobi-Trudi determinant.

    Returned as ((coeff, sorted e-indices), ...) with zero-index factors dropped.
    """
    conj = conjugate(lam)
    r = len(conj)
    acc: dict = {}
    for perm in itertools.permutations(range(r)):
        idx = []
        ok = True
        for i in range(r):
            v = conj[i] - i + perm[i]
            if v < 0:
                ok = False
                break
            if v > 0:
                idx.append(v)
        if not ok:
            continue
        sign = _perm_sign(perm)
        key = tuple(sorted(idx))
        acc[key] = acc.get(key, 0) + sign
    return tuple((c, key) for key, c in acc.items() if c)


def _perm_sign(p) -> int:
    s = 1
    p = list(p)
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            s = -s
    return s


@lru_cache(maxsize=None)
def _e_action(lam: Partition, idx: tuple, k: int, N: int) -> tuple:
    """e_{i1}...e_{ir} * s_lam in H_k, as ((mu, coeff), ...)."""
    cur = {lam: 1}
    for j in idx:
        nxt: dict = {}
        for mu, c in cur.items():
            for nu in vertical_strips(mu, j, k, N):
                nxt[nu] = nxt.get(nu, 0) + c
        cur = {m: c for m, c in nxt.items() if c}
    return tuple(cur.items())


@lru_cache(maxsize=None)
def schur_product(lam: Partition, mu: Partition, k: int, N: int) -> tuple:
    """s_lam * s_mu in H_k, truncated to the box."""
    out: dict = {}
    for c, idx in _schur_in_e(mu):
        for nu, d in _e_action(lam, idx, k, N):
            out[nu] = out.get(nu, 0) + c * d
    return tuple((nu, c) for nu, c in sorted(out.items()) if c)


class GrElement:
    """Element of H*(Gr(k,N)) in the Schur basis with rational coefficients."""

    __slots__ = ("k", "N", "terms")

    def __init__(self, k: int, N: int, terms: Mapping | None = None):
        if not 0 <= k <= N:
            raise ValueError(f"k={k} outside [0, {N}]")
        self.k, self.N = k, N
        t = {}
        for lam, c in (terms or {}).items():
            lam = _strip(lam)
            if c and fits(lam, k, N):
                t[lam] = t.get(lam, 0) + Fraction(c)
                if not t[lam]:
                    del t[lam]
        self.terms = t

    @classmethod
    def one(cls, k, N):
        return cls(k, N, {(): 1})

    @classmethod
    def schur(cls, lam, k, N):
        return cls(k, N, {tuple(lam): 1})

    @classmethod
    def x(cls, j: int, k: int, N: int) -> "GrElement":
        if j < 0:
            return cls(k, N)
        return cls(k, N, {(1,) * j: 1})

    @classmethod
    def y(cls, l: int, k: int, N: int) -> "GrElement":
        if l < 0:
            return cls(k, N)
        return cls(k, N, {((l,) if l else ()): (-1) ** l})

    def is_zero(self):
        return not self.terms

    def _check(self, other):
        if (self.k, self.N) != (other.k, other.N):
            raise ValueError("different Grassmannians")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GrElement.one(self.k, self.N) * other
        self._check(other)
        d = dict(self.terms)
        for lam, c in other.terms.items():
            d[lam] = d.get(lam, 0) + c
        return GrElement(self.k, self.N, d)

    __radd__ = __add__

    def __neg__(self):
        return GrElement(self.k, self.N, {l: -c for l, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return GrElement(self.k, self.N, {l: c * other for l, c in self.terms.items()})
        return gr_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, p: int):
        out = GrElement.one(self.k, self.N)
        for _ in range(p):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = GrElement.one(self.k, self.N) * other
        if not isinstance(other, GrElement):
            return NotImplemented
        return (self.k, self.N) == (other.k, other.N) and self.terms == other.terms

    def __hash__(self):
        return hash((self.k, self.N, frozenset(self.terms.items())))

    def degree(self) -> int | None:
        ds = {2 * sum(l) for l in self.terms}
        return ds.pop() if len(ds) == 1 else None

    def homogeneous_part(self, d: int) -> "GrElement":
        return GrElement(self.k, self.N, {l: c for l, c in self.terms.items() if 2 * sum(l) == d})

    def to_json(self) -> dict:
        return {",".join(map(str, l)): str(c) for l, c in sorted(self.terms.items())}

    @classmethod
    def from_json(cls, k, N, d: Mapping) -> "GrElement":
        return cls(k, N, {tuple(int(p) for p in key.split(",") if p): Fraction(v) for key, v in d.items()})

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for lam, c in sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0])):
            s = "s(" + ",".join(map(str, lam)) + ")" if lam else ""
            if not s:
                parts.append(str(c))
            elif c == 1:
                parts.append(s)
            elif c == -1:
                parts.append("-" + s)
            else:
                parts.append(f"{c}*{s}")
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def __repr__(self):
        return f"GrElement(k={self.k}, N={self.N}: {self})"


def gr_mul(u: GrElement, v: GrElement) -> GrElement:
    u._check(v)
    k, N = u.k, u.N
    out: dict = {}
    for lam, a in u.terms.items():
        for mu, b in v.terms.items():
            for nu, c in schur_product(lam, mu, k, N):
                out[nu] = out.get(nu, 0) + a * b * c
    return GrElement(k, N, out)


def graded_dimension(k: int, N: int) -> dict:
    """{degree: dimension} of H_k."""
    out: dict = {}
    for lam in box_partitions(k, N):
        d = 2 * sum(lam)
        out[d] = out.get(d, 0) + 1
    return out


def gaussian_binomial_q2(N: int, k: int) -> dict:
    """Coefficients of the Gaussian binomial [N choose k] in the variable q^2, as {degree: coeff}."""
    # recursion on polynomials in t = q^2
    @lru_cache(maxsize=None)
    def gb(n, r):
        if r < 0 or r > n:
            return ()
        if r == 0 or r == n:
            return (1,)
        a = list(gb(n - 1, r - 1))
        b = list(gb(n - 1, r))
        # [n,r] = [n-1,r-1] + t^r [n-1,r]
        out = [0] * max(len(a), len(b) + r)
        for i, c in enumerate(a):
            out[i] += c
        for i, c in enumerate(b):
            out[i + r] += c
        return tuple(out)

    return {2 * i: c for i, c in enumerate(gb(N, k)) if c}


# polynomial expressions in the Chern classes


def gr_from_poly(k: int, N: int, expr) -> GrElement:
    """Evaluate a polynomial in x1..xk, y1..y(N-k) (e.g. "x1*y2 - 3*x2**2") in H_k."""
    if isinstance(expr, GrElement):
        return expr
    tree = ast.parse(str(expr).replace("^", "**"), mode="eval")

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.BinOp):
            l, r = node.left, node.right
            if isinstance(node.op, ast.Add):
                return ev(l) + ev(r)
            if isinstance(node.op, ast.Sub):
                return ev(l) - ev(r)
            if isinstance(node.op, ast.Mult):
                return ev(l) * ev(r)
            if isinstance(node.op, ast.Pow):
                p = ev(r)
                if not isinstance(p, int) or p < 0:
                    raise ValueError("exponents must be nonnegative integers")
                return ev(l) ** p
            if isinstance(node.op, ast.Div):
                d = ev(r)
                if not isinstance(d, (int, Fraction)) or d == 0:
                    raise ValueError("can only divide by nonzero numbers")
                return ev(l) * (Fraction(1) / d)
        if isinstance(node, ast.UnaryOp):
            if isinstance(node.op, ast.USub):
                return -ev(node.operand)
            if isinstance(node.op, ast.UAdd):
                return ev(node.operand)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return node.value
        if isinstance(node, ast.Name):
            name = node.id.replace("_", "")
            if name[:1] in ("x", "y") and name[1:].isdigit():
                j = int(name[1:])
                if name[0] == "x":
                    return GrElement.x(j, k, N) if j <= k else GrElement(k, N)
                return GrElement.y(j, k, N) if j <= N - k else GrElement(k, N)
            raise ValueError(f"unknown symbol {node.id!r}")
        raise ValueError(f"unsupported expression: {ast.dump(node)}")

    out = ev(tree)
    if isinstance(out, (int, Fraction)):
        return GrElement.one(k, N) * out
    return out


# signatures and the tower rings


@dataclass(frozen=True)
class Signature:
    """Shape of an iterated flag bimodule: Gamma of pattern 1_{n0} {shift}."""

    N: int
    n0: int
    pattern: str
    shift: int = 0

    def __post_init__(self):
        if (self.n0 + self.N) % 2:
            raise ValueError(f"weight {self.n0} has the wrong parity for N={self.N}")
        if set(self.pattern) - {"E", "F"}:
            raise ValueError(f"bad pattern {self.pattern!r}")

    @property
    def m(self) -> int:
        return len(self.pattern)

    def strand(self, i: int) -> str:
        """Orientation of strand i (1 = rightmost)."""
        return self.pattern[-i]

    @property
    def ks(self) -> tuple:
        """k-values of regions 0..m, right to left."""
        k = (self.n0 + self.N) // 2
        out = [k]
        for i in range(1, self.m + 1):
            k += 1 if self.strand(i) == "E" else -1
            out.append(k)
        return tuple(out)

    @property
    def weights(self) -> tuple:
        return tuple(2 * k - self.N for k in self.ks)

    def is_zero(self) -> bool:
        return any(k < 0 or k > self.N for k in self.ks)

    def caps(self) -> tuple:
        """Number of basis powers of xi on each strand (so exponents run below these)."""
        ks = self.ks
        out = []
        for i in range(1, self.m + 1):
            kr = ks[i - 1]
            out.append(self.N - kr if self.strand(i) == "E" else kr)
        return tuple(out)

    def total_shift(self) -> int:
        """Grading shift of Gamma(pattern 1_n0 {shift}): 1-N+k per E strand and 1-k per F strand."""
        ks = self.ks
        s = self.shift
        for i in range(1, self.m + 1):
            kr = ks[i - 1]
            s += (1 - self.N + kr) if self.strand(i) == "E" else (1 - kr)
        return s

    def to_json(self) -> dict:
        return {"N": self.N, "n0": self.n0, "strands": self.pattern, "shift": self.shift}

    @classmethod
    def from_json(cls, d: Mapping) -> "Signature":
        return cls(int(d["N"]), int(d["n0"]), str(d.get("strands", d.get("pattern", ""))), int(d.get("shift", 0)))


def xi_cap(sig: Signature, strand: int) -> int:
    """Largest exponent of xi allowed in normal form on the given strand."""
    return sig.caps()[strand - 1] - 1


def xi_reduce(sig: Signature, strand: int) -> list:
    """Rule xi^c = sum_j xi^{c-j} * r_j with r_j a class of the region right of the strand.

    Returned as [(j, kind, index, sign)] meaning r_j = sign * kind_index (kind 'y' for E, 'x' for F).
    """
    c = sig.caps()[strand - 1]
    kind = "y" if sig.strand(strand) == "E" else "x"
    return [(j, kind, j, -((-1) ** j)) for j in range(1, c + 1)]


class TowerRing:
    """Normal-form arithmetic in the ring of an iterated flag bimodule.

    Elements are dicts {(exps, lam): Fraction} with exps indexed by strand 1..m.
    """

    def __init__(self, N: int, n0: int, pattern: str):
        self.sig = Signature(N, n0, pattern)
        if self.sig.is_zero():
            raise ValueError("zero bimodule has no ring")
        self.N = N
        self.m = len(pattern)
        self.ks = self.sig.ks
        self.k0 = self.ks[0]
        self.caps = self.sig.caps()
        self._xcache: dict = {}
        self._ycache: dict = {}
        self._schur_cache: dict = {}
        self._rel: dict = {}

    # basic elements

    def zero_exps(self):
        return (0,) * self.m

    def one(self) -> dict:
        return {(self.zero_exps(), ()): Fraction(1)}

    def xi(self, i: int, p: int = 1) -> dict:
        e = [0] * self.m
        e[i - 1] = p
        return self.normalize({(tuple(e), ()): Fraction(1)})

    def base(self, g: GrElement) -> dict:
        """Class of the rightmost region."""
        z = self.zero_exps()
        return {(z, lam): c for lam, c in g.terms.items()}

    # arithmetic

    def add(self, a: dict, b: dict, scale=1) -> dict:
        out = dict(a)
        for key, c in b.items():
            v = out.get(key, 0) + scale * c
            if v:
                out[key] = v
            else:
                out.pop(key, None)
        return out

    def scale(self, a: dict, c) -> dict:
        if not c:
            return {}
        return {key: v * c for key, v in a.items()}

    def _raw_mul(self, a: dict, b: dict) -> dict:
        out: dict = {}
        k0, N = self.k0, self.N
        for (e1, l1), c1 in a.items():
            for (e2, l2), c2 in b.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                if not l2:
                    prods = ((l1, 1),)
                elif not l1:
                    prods = ((l2, 1),)
                else:
                    prods = schur_product(l1, l2, k0, N)
                for nu, c in prods:
                    key = (e, nu)
                    v = out.get(key, 0) + c1 * c2 * c
                    if v:
                        out[key] = v
                    else:
                        out.pop(key, None)
        return out

    def mul(self, a: dict, b: dict) -> dict:
        return self.normalize(self._raw_mul(a, b))

    def relation(self, i: int) -> list:
        """[(j, r_j)] with xi_i^c = sum_j xi_i^{c-j} r_j, r_j normalized over strands < i."""
        if i not in self._rel:
            c = self.caps[i - 1]
            rel = []
            for j in range(1, c + 1):
                if self.sig.strand(i) == "E":
                    cls_ = self.region_y(i - 1, j)
                else:
                    cls_ = self.region_x(i - 1, j)
                r = self.scale(cls_, -((-1) ** j))
                if r:
                    rel.append((j, r))
            self._rel[i] = rel
        return self._rel[i]

    def normalize(self, a: dict) -> dict:
        """Bring every exponent below its cap, top strand first."""
        cur = {k: v for k, v in a.items() if v}
        for i in range(self.m, 0, -1):
            c = self.caps[i - 1]
            while True:
                bad = [key for key in cur if key[0][i - 1] >= c]
                if not bad:
                    break
                rel = self.relation(i)
                for key in bad:
                    coef = cur.pop(key, 0)
                    if not coef:
                        continue
                    e, lam = key
                    for j, r in rel:
                        ne = list(e)
                        ne[i - 1] -= j
                        mono = {(tuple(ne), lam): coef}
                        cur = self.add(cur, self._raw_mul(mono, r))
        return cur

    # region classes

    def region_x(self, r: int, j: int) -> dict:
        key = (r, j)
        if key in self._xcache:
            return self._xcache[key]
        k = self.ks[r]
        if j < 0 or j > k:
            out: dict = {}
        elif j == 0:
            out = self.one()
        elif r == 0:
            out = self.base(GrElement.x(j, k, self.N))
        elif self.sig.strand(r) == "E":
            # x_j(left) = x_j(right) + xi x_{j-1}(right)
            out = self.add(self.region_x(r - 1, j), self.mul(self.xi(r), self.region_x(r - 1, j - 1)))
        else:
            # x(left) = x(right)/(1 + xi t)
            out = {}
            for i in range(j + 1):
                term = self.mul(self.xi(r, j - i), self.region_x(r - 1, i))
                out = self.add(out, term, (-1) ** (j - i))
        self._xcache[key] = out
        return out

    def region_y(self, r: int, j: int) -> dict:
        key = (r, j)
        if key in self._ycache:
            return self._ycache[key]
        k = self.ks[r]
        if j < 0 or j > self.N - k:
            out: dict = {}
        elif j == 0:
            out = self.one()
        elif r == 0:
            out = self.base(GrElement.y(j, k, self.N))
        elif self.sig.strand(r) == "F":
            # y(left) = (1 + xi t) y(right)
            out = self.add(self.region_y(r - 1, j), self.mul(self.xi(r), self.region_y(r - 1, j - 1)))
        else:
            # y(left) = y(right)/(1 + xi t)
            out = {}
            for i in range(j + 1):
                term = self.mul(self.xi(r, j - i), self.region_y(r - 1, i))
                out = self.add(out, term, (-1) ** (j - i))
        self._ycache[key] = out
        return out

    def region_x_raw(self, r: int, j: int) -> dict:
        """x_j of region r computed by the slide rules even when j exceeds k_r (should vanish)."""
        if r == 0:
            return self.base(GrElement.x(j, self.k0, self.N)) if j >= 0 else {}
        if j < 0:
            return {}
        if self.sig.strand(r) == "E":
            return self.add(self.region_x_raw(r - 1, j), self.mul(self.xi(r), self.region_x_raw(r - 1, j - 1)))
        out: dict = {}
        for i in range(j + 1):
            out = self.add(out, self.mul(self.xi(r, j - i), self.region_x_raw(r - 1, i)), (-1) ** (j - i))
        return out

    def region_schur(self, r: int, lam: Partition) -> dict:
        key = (r, lam)
        if key not in self._schur_cache:
            if r == 0:
                out = {(self.zero_exps(), lam): Fraction(1)} if fits(lam, self.k0, self.N) else {}
            else:
                out = {}
                for c, idx in _schur_in_e(lam):
                    term = self.one()
                    for j in idx:
                        term = self.mul(term, self.region_x(r, j))
                        if not term:
                            break
                    out = self.add(out, term, c)
            self._schur_cache[key] = out
        return self._schur_cache[key]

    def region_class(self, r: int, g: GrElement) -> dict:
        if g.k != self.ks[r] or g.N != self.N:
            raise ValueError(f"class of H_{g.k} placed in region {r} with k={self.ks[r]}")
        out: dict = {}
        for lam, c in g.terms.items():
            out = self.add(out, self.region_schur(r, lam), c)
        return out


@lru_cache(maxsize=None)
def tower(N: int, n0: int, pattern: str) -> TowerRing:
    return TowerRing(N, n0, pattern)


class BimElement:
    """Element of Gamma of a 1-morphism: a combination of xi-monomials with H_{k0} coefficients."""

    __slots__ = ("sig", "data")

    def __init__(self, sig: Signature, data: Mapping | None = None, normalize: bool = True):
        self.sig = sig
        if sig.is_zero():
            self.data = {}
            return
        d = {k: Fraction(v) for k, v in (data or {}).items() if v}
        if normalize and d:
            d = tower(sig.N, sig.n0, sig.pattern).normalize(d)
        self.data = d

    @property
    def ring(self) -> TowerRing:
        return tower(self.sig.N, self.sig.n0, self.sig.pattern)

    @classmethod
    def monomial(cls, sig: Signature, exps: Iterable[int], coeff: GrElement | None = None) -> "BimElement":
        exps = tuple(exps)
        if coeff is None:
            return cls(sig, {(exps, ()): 1})
        return cls(sig, {(exps, lam): c for lam, c in coeff.terms.items()})

    @classmethod
    def one(cls, sig: Signature) -> "BimElement":
        return cls.monomial(sig, (0,) * sig.m)

    @property
    def terms(self) -> dict:
        """{exps: GrElement over the rightmost ring}."""
        out: dict = {}
        k0 = self.sig.ks[0]
        for (e, lam), c in self.data.items():
            out.setdefault(e, {})[lam] = c
        return {e: GrElement(k0, self.sig.N, d) for e, d in out.items()}

    def is_zero(self):
        return not self.data

    def __add__(self, other):
        self._check(other)
        return BimElement(self.sig, self.ring.add(self.data, other.data), normalize=False)

    def __neg__(self):
        return BimElement(self.sig, {k: -v for k, v in self.data.items()}, normalize=False)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "BimElement":
        return BimElement(self.sig, {k: v * c for k, v in self.data.items()}, normalize=False)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        return BimElement(self.sig, self.ring.mul(self.data, other.data), normalize=False)

    __rmul__ = __mul__

    def _check(self, other):
        if (self.sig.N, self.sig.n0, self.sig.pattern) != (other.sig.N, other.sig.n0, other.sig.pattern):
            raise ValueError("elements of different bimodules")

    def __eq__(self, other):
        if not isinstance(other, BimElement):
            return NotImplemented
        return self.sig == other.sig and self.data == other.data

    def __hash__(self):
        return hash((self.sig, frozenset(self.data.items())))

    def degree(self) -> int | None:
        ds = {2 * sum(e) + 2 * sum(lam) + self.sig.total_shift() for e, lam in self.data}
        return ds.pop() if len(ds) == 1 else None

    def to_json(self) -> dict:
        return {"signature": self.sig.to_json(),
                "terms": [{"xi": list(e), "schur": g.to_json()} for e, g in sorted(self.terms.items())]}

    @classmethod
    def from_json(cls, d: Mapping) -> "BimElement":
        sig = Signature.from_json(d["signature"])
        k0 = sig.ks[0]
        data: dict = {}
        for t in d["terms"]:
            g = GrElement.from_json(k0, sig.N, t["schur"])
            for lam, c in g.terms.items():
                data[(tuple(t["xi"]), lam)] = c
        return cls(sig, data)

    def __str__(self):
        if not self.data:
            return "0"
        parts = []
        for e, g in sorted(self.terms.items()):
            mono = "*".join(f"xi{i + 1}" + (f"^{p}" if p > 1 else "") for i, p in enumerate(e) if p) or "1"
            parts.append(f"({g})*{mono}")
        return " + ".join(parts)

    def __repr__(self):
        return f"BimElement({self})"


def bim_normalize(e: BimElement) -> BimElement:
    return BimElement(e.sig, e.data)


def mul_region_class(e: BimElement, r: int, cls_) -> BimElement:
    """Multiply by a class sitting in region r (a GrElement, or a string such as 'x2')."""
    if e.sig.is_zero():
        return e
    ring = e.ring
    k = e.sig.ks[r]
    if not isinstance(cls_, GrElement):
        cls_ = gr_from_poly(k, e.sig.N, cls_)
    return BimElement(e.sig, ring.mul(e.data, ring.region_class(r, cls_)), normalize=False)


def monomial_basis(sig: Signature) -> list:
    """Exponent tuples of the xi-monomials freely generating the bimodule over H_{k0}."""
    if sig.is_zero():
        return []
    return [tuple(e) for e in itertools.product(*[range(c) for c in sig.caps()])]


# elementary bimodule maps


def _insert(e: tuple, pos: int, new: tuple) -> tuple:
    return e[:pos] + new + e[pos:]


def apply_dot(e: BimElement, strand: int) -> BimElement:
    if e.sig.is_zero():
        return e
    ring = e.ring
    return BimElement(e.sig, ring.mul(e.data, ring.xi(strand)), normalize=False)


def apply_cross(e: BimElement, strand: int) -> BimElement:
    """Crossing of strands strand+1 (left) and strand (right): divided difference in their xis.

    EE crossings use d(xi_left, xi_right); FF crossings use the negative.
    """
    sig = e.sig
    i = strand
    if not 1 <= i < sig.m:
        raise ValueError(f"no strands {i + 1},{i} to cross in {sig.pattern!r}")
    o = sig.strand(i)
    if sig.strand(i + 1) != o:
        raise ValueError("crossing needs two strands of the same orientation")
    if sig.is_zero():
        return e
    sign = 1 if o == "E" else -1
    raw: dict = {}
    for (ex, lam), c in e.data.items():
        m1, m2 = ex[i], ex[i - 1]
        if m1 == m2:
            continue
        tot = m1 + m2 - 1
        hi, s = (m1, sign) if m1 > m2 else (m2, -sign)
        lo = min(m1, m2)
        for j in range(lo, hi):
            ne = list(ex)
            ne[i] = tot - j
            ne[i - 1] = j
            key = (tuple(ne), lam)
            raw[key] = raw.get(key, 0) + s * c
    return BimElement(sig, raw)


def _target_sig(sig: Signature, pattern: str) -> Signature:
    return Signature(sig.N, sig.n0, pattern, sig.shift)


def apply_cap(e: BimElement, pos: int, kind: str) -> BimElement:
    """Close strands pos+2 (left) and pos+1 (right).

    kind 'FE': F on the left, E on the right, image (-1)^s x_s with s = m1+m2+k-N+1.
    kind 'EF': E on the left, F on the right, image (-1)^s y_s with s = m1+m2+1-k.
    Here k belongs to the region right of the pair.
    """
    sig = e.sig
    kind = kind.upper()
    i = pos + 1
    if kind not in ("FE", "EF"):
        raise ValueError(f"bad cap kind {kind!r}")
    if not 0 <= pos <= sig.m - 2:
        raise ValueError("cap position out of range")
    if sig.strand(i + 1) + sig.strand(i) != kind:
        raise ValueError(f"cap of kind {kind} does not match strands {sig.strand(i + 1)}{sig.strand(i)}")
    pat = sig.pattern
    L = len(pat)
    new_pat = pat[: L - pos - 2] + pat[L - pos:]
    tsig = _target_sig(sig, new_pat)
    if sig.is_zero() or tsig.is_zero():
        return BimElement(tsig)
    k = sig.ks[pos]
    N = sig.N
    tr = tower(N, sig.n0, new_pat)
    cache: dict = {}
    out: dict = {}
    for (ex, lam), c in e.data.items():
        m1, m2 = ex[i], ex[i - 1]
        s = m1 + m2 + (k - N + 1 if kind == "FE" else 1 - k)
        if kind == "FE":
            if s < 0 or s > k:
                continue
            cls_ = GrElement.x(s, k, N) * ((-1) ** s)
        else:
            if s < 0 or s > N - k:
                continue
            cls_ = GrElement.y(s, k, N) * ((-1) ** s)
        rest = ex[: i - 1] + ex[i + 1:]
        key = (rest, s)
        if key not in cache:
            mono = {(rest, ()): Fraction(1)}
            cache[key] = tr.mul(tr.normalize(mono), tr.region_class(pos, cls_))
        img = cache[key]
        if lam:
            img = tr.mul(img, tr.base(GrElement(tr.k0, N, {lam: 1})))
        out = tr.add(out, img, c)
    return BimElement(tsig, out, normalize=False)


def cup_image(tr: TowerRing, pos: int, kind: str) -> dict:
    """Image of 1 under the cup inserting a new pair in region pos, as a tower element."""
    N = tr.N
    k = tr.ks[pos]
    i = pos + 1  # right strand of the new pair; left strand is i+1
    out: dict = {}
    if kind == "FE":
        # sum_{l,j} (-1)^l xi_F^{k-l-j} x_l(middle) xi_E^j
        for l in range(k + 1):
            mid = tr.region_x(i, l)
            if not mid:
                continue
            for j in range(k - l + 1):
                t = tr.mul(tr.mul(tr.xi(i + 1, k - l - j), tr.xi(i, j)), mid)
                out = tr.add(out, t, (-1) ** l)
    else:
        for l in range(N - k + 1):
            mid = tr.region_y(i, l)
            if not mid:
                continue
            for j in range(N - k - l + 1):
                t = tr.mul(tr.mul(tr.xi(i + 1, N - k - l - j), tr.xi(i, j)), mid)
                out = tr.add(out, t, (-1) ** l)
    return out


def apply_cup(e: BimElement, pos: int, kind: str) -> BimElement:
    """Insert a new pair of strands (kind 'FE' or 'EF', read left to right) in region pos."""
    sig = e.sig
    kind = kind.upper()
    if kind not in ("FE", "EF"):
        raise ValueError(f"bad cup kind {kind!r}")
    if not 0 <= pos <= sig.m:
        raise ValueError("cup position out of range")
    pat = sig.pattern
    L = len(pat)
    new_pat = pat[: L - pos] + kind + pat[L - pos:]
    tsig = _target_sig(sig, new_pat)
    if sig.is_zero() or tsig.is_zero():
        return BimElement(tsig)
    tr = tower(sig.N, sig.n0, new_pat)
    img = cup_image(tr, pos, kind)
    out: dict = {}
    cache: dict = {}
    for (ex, lam), c in e.data.items():
        ne = _insert(ex, pos, (0, 0))
        if ne not in cache:
            cache[ne] = tr.mul(tr.normalize({(ne, ()): Fraction(1)}), img)
        t = cache[ne]
        if lam:
            t = tr.mul(t, tr.base(GrElement(tr.k0, sig.N, {lam: 1})))
        out = tr.add(out, t, c)
    return BimElement(tsig, out, normalize=False)


def bubble_class(N: int, n: int, orientation: str, m: int) -> GrElement:
    """Image of a closed bubble with m dots in a region of weight n.

    Clockwise bubbles have degree 2(m-n+1) and go to (-1)^a sum y_l y_{a-l};
    counterclockwise ones have degree 2(m+n+1) and go to (-1)^a sum x_l x_{a-l}.
    Negative labels are allowed (fake bubbles).
    """
    if (n + N) % 2:
        raise ValueError("weight parity does not match N")
    k = (n + N) // 2
    if not 0 <= k <= N:
        raise ValueError(f"weight {n} is outside the N={N} representation")
    if orientation in ("cw", "clockwise"):
        alpha = m - n + 1
        gen, top = GrElement.y, N - k
    elif orientation in ("ccw", "counterclockwise"):
        alpha = m + n + 1
        gen, top = GrElement.x, k
    else:
        raise ValueError(f"bad orientation {orientation!r}")
    out = GrElement(k, N)
    if alpha < 0:
        return out
    for l in range(0, min(alpha, top) + 1):
        out = out + gen(l, k, N) * gen(alpha - l, k, N)
    return out * ((-1) ** alpha)


def apply_bubble(e: BimElement, region: int, orientation: str, m: int) -> BimElement:
    sig = e.sig
    if sig.is_zero():
        return e
    n = sig.weights[region]
    return mul_region_class(e, region, bubble_class(sig.N, n, orientation, m))
