"""String diagrams for the categorified quantum sl2 as slice sequences.

A 2-morphism is a list of terms; each term is a rational coefficient times a
list of slices read from bottom to top.  A slice acts on the current word of
E's and F's (written as the 1-morphism, so the rightmost letter is strand 1):

    dot(strand)             a dot on one strand
    cross(strand)           crossing of strands strand+1 and strand
    cup(kind, pos)          new pair of strands in region pos
    cap(kind, pos)          close strands pos+2 and pos+1
    bubble(orient, dots, pos)   a closed dotted bubble in region pos

Region r is the region between strands r+1 and r; region 0 is the far right.
Cup and cap kinds name the letters of the pair, left to right ("fe" or "ef").

Equality of 2-morphisms is decided by evaluating both sides with Gamma_N on
every generator of the source bimodule.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from . import flag
from .flag import BimElement, GrElement, Signature
from .linalg import Echelon, solve
from .nilhecke import all_perms
from .qring import LaurentPoly, RatFun, qfact


def swap(word: str) -> str:
    return word.translate(str.maketrans("EF", "FE"))


def rot(word: str) -> str:
    """Word of the right (or left) adjoint: reversed with E and F exchanged."""
    return swap(word)[::-1]


# 1-morphisms


@dataclass(frozen=True)
class OneMor:
    pattern: str
    n: int
    shift: int = 0

    def __post_init__(self):
        if set(self.pattern) - {"E", "F"}:
            raise ValueError(f"bad word {self.pattern!r}")

    @property
    def length(self) -> int:
        return len(self.pattern)

    def weights(self) -> list:
        """Weights of regions 0..length, right to left."""
        w = [self.n]
        for ch in reversed(self.pattern):
            w.append(w[-1] + (2 if ch == "E" else -2))
        return w

    @property
    def left(self) -> int:
        return self.weights()[-1]

    def strand(self, i: int) -> str:
        return self.pattern[-i]

    def signature(self, N: int) -> Signature:
        return Signature(N, self.n, self.pattern, self.shift)

    def right_adjoint(self) -> "OneMor":
        return OneMor(rot(self.pattern), self.left, _adjoint_shift(self, right=True))

    def left_adjoint(self) -> "OneMor":
        return OneMor(rot(self.pattern), self.left, _adjoint_shift(self, right=False))

    def to_json(self) -> dict:
        return {"pattern": self.pattern, "n": self.n, "shift": self.shift}

    @classmethod
    def from_json(cls, d) -> "OneMor":
        return cls(str(d.get("pattern", "")), int(d["n"]), int(d.get("shift", 0)))

    def __str__(self):
        s = "".join(self.pattern) + f"1_{{{self.n}}}"
        return s + (f"{{{self.shift}}}" if self.shift else "")


def _adjoint_shift(x: OneMor, right: bool) -> int:
    # E1_w{s} has right adjoint F{-w-1-s} and left adjoint F{w+1-s};
    # F1_w{s} has right adjoint E{w-1-s} and left adjoint E{1-w-s}.
    w = x.weights()
    total = -x.shift
    for i in range(1, x.length + 1):
        wr = w[i - 1]
        if x.strand(i) == "E":
            total += (-wr - 1) if right else (wr + 1)
        else:
            total += (wr - 1) if right else (1 - wr)
    return total


# slices


@dataclass(frozen=True)
class Slice:
    op: str
    strand: int = 0
    kind: str = ""
    pos: int = 0
    orient: str = ""
    dots: int = 0

    def to_json(self) -> dict:
        if self.op in ("dot", "cross"):
            return {"op": self.op, "strand": self.strand}
        if self.op in ("cup", "cap"):
            return {"op": self.op, "kind": self.kind.lower(), "pos": self.pos}
        d = {"op": "bubble", "orient": self.orient, "dots": self.dots}
        if self.pos:
            d["pos"] = self.pos
        return d

    @classmethod
    def from_json(cls, d) -> "Slice":
        op = d["op"]
        if op in ("dot", "cross"):
            return cls(op, strand=int(d["strand"]))
        if op in ("cup", "cap"):
            kind = str(d["kind"]).upper()
            if kind not in ("FE", "EF"):
                raise ValueError(f"bad {op} kind {d['kind']!r}")
            return cls(op, kind=kind, pos=int(d.get("pos", 0)))
        if op == "bubble":
            orient = str(d.get("orient", d.get("orientation", "")))
            if orient not in ("cw", "ccw"):
                raise ValueError(f"bad bubble orientation {orient!r}")
            return cls(op, orient=orient, dots=int(d.get("dots", 0)), pos=int(d.get("pos", 0)))
        raise ValueError(f"unknown slice op {op!r}")

    def __str__(self):
        if self.op in ("dot", "cross"):
            return f"{self.op}({self.strand})"
        if self.op in ("cup", "cap"):
            return f"{self.op}[{self.kind.lower()}]({self.pos})"
        return f"bubble[{self.orient},{self.dots}]({self.pos})"


def dot(strand: int, m: int = 1) -> list:
    return [Slice("dot", strand=strand)] * m


def cross(strand: int) -> list:
    return [Slice("cross", strand=strand)]


def cup(kind: str, pos: int = 0) -> list:
    return [Slice("cup", kind=kind.upper(), pos=pos)]


def cap(kind: str, pos: int = 0) -> list:
    return [Slice("cap", kind=kind.upper(), pos=pos)]


def bubble(orient: str, dots: int, pos: int = 0) -> list:
    return [Slice("bubble", orient=orient, dots=dots, pos=pos)]


def step(word: str, n: int, s: Slice) -> str:
    """Word after applying one slice; raises ValueError if the slice does not fit."""
    L = len(word)
    if s.op == "dot":
        if not 1 <= s.strand <= L:
            raise ValueError(f"no strand {s.strand} in {word!r}")
        return word
    if s.op == "cross":
        i = s.strand
        if not 1 <= i < L:
            raise ValueError(f"no strands {i + 1},{i} to cross in {word!r}")
        if word[-i] != word[-i - 1]:
            raise ValueError("crossing needs two strands of the same orientation")
        return word
    if s.op == "cup":
        if not 0 <= s.pos <= L:
            raise ValueError(f"cup position {s.pos} out of range for {word!r}")
        return word[: L - s.pos] + s.kind + word[L - s.pos:]
    if s.op == "cap":
        if not 0 <= s.pos <= L - 2:
            raise ValueError(f"cap position {s.pos} out of range for {word!r}")
        pair = word[L - s.pos - 2: L - s.pos]
        if pair != s.kind:
            raise ValueError(f"cap of kind {s.kind} meets strands {pair}")
        return word[: L - s.pos - 2] + word[L - s.pos:]
    if s.op == "bubble":
        if not 0 <= s.pos <= L:
            raise ValueError(f"bubble region {s.pos} out of range for {word!r}")
        return word
    raise ValueError(f"unknown slice {s.op!r}")


def region_weight(word: str, n: int, r: int) -> int:
    w = n
    for ch in reversed(word[len(word) - r:] if r else ""):
        w += 2 if ch == "E" else -2
    return w


def slice_degree(word: str, n: int, s: Slice) -> int:
    if s.op == "dot":
        return 2
    if s.op == "cross":
        return -2
    if s.op == "cup":
        w = region_weight(word, n, s.pos)
        return 1 + w if s.kind == "FE" else 1 - w
    if s.op == "cap":
        w = region_weight(word, n, s.pos)
        return 1 + w if s.kind == "FE" else 1 - w
    w = region_weight(word, n, s.pos)
    return 2 * (s.dots - w + 1) if s.orient == "cw" else 2 * (s.dots + w + 1)


def walk(source: OneMor, slices: Sequence[Slice]) -> str:
    word = source.pattern
    for s in slices:
        word = step(word, source.n, s)
    return word


# 2-morphisms


@dataclass(frozen=True)
class Term2:
    coeff: Fraction
    slices: tuple

    def degree(self, source: OneMor) -> int:
        word, total = source.pattern, 0
        for s in self.slices:
            total += slice_degree(word, source.n, s)
            word = step(word, source.n, s)
        return total

    def to_json(self) -> dict:
        return {"coeff": str(self.coeff), "slices": [s.to_json() for s in self.slices]}


class TwoMor:
    """Finite sum of slice sequences with a common source and target."""

    def __init__(self, source: OneMor, terms: Iterable = (), target: OneMor | None = None,
                 inhomogeneous: bool = False):
        self.source = source
        ts = []
        for t in terms:
            if not isinstance(t, Term2):
                c, sl = t
                t = Term2(Fraction(c), tuple(sl))
            if t.coeff:
                ts.append(t)
        self.terms = ts
        words = {walk(source, t.slices) for t in ts}
        if target is None:
            if len(words) > 1:
                raise ValueError(f"terms end on different words: {sorted(words)}")
            word = words.pop() if words else source.pattern
            target = OneMor(word, source.n, source.shift)
        else:
            if words - {target.pattern}:
                raise ValueError(f"terms do not end on {target.pattern!r}")
            if target.n != source.n:
                raise ValueError("source and target must share their right weight")
        self.target = target
        self.inhomogeneous = inhomogeneous
        if not inhomogeneous and len({t.degree(source) for t in ts}) > 1:
            raise ValueError("terms of different degrees; pass inhomogeneous=True")

    @classmethod
    def identity(cls, x: OneMor) -> "TwoMor":
        return cls(x, [(1, ())])

    @classmethod
    def single(cls, x: OneMor, slices, coeff=1) -> "TwoMor":
        return cls(x, [(coeff, tuple(slices))])

    @classmethod
    def zero(cls, x: OneMor, target: OneMor | None = None) -> "TwoMor":
        return cls(x, [], target=target or x)

    def degree(self) -> int | None:
        ds = {t.degree(self.source) for t in self.terms}
        if not ds:
            return None
        return ds.pop() if len(ds) == 1 else None

    def total_degree(self) -> int | None:
        """Degree as a map between the shifted 1-morphisms."""
        d = self.degree()
        return None if d is None else d + self.target.shift - self.source.shift

    def __add__(self, other: "TwoMor") -> "TwoMor":
        self._check(other)
        return TwoMor(self.source, self.terms + other.terms, self.target,
                      self.inhomogeneous or other.inhomogeneous)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "TwoMor":
        return TwoMor(self.source, [Term2(t.coeff * Fraction(c), t.slices) for t in self.terms],
                      self.target, self.inhomogeneous)

    def __rmul__(self, c):
        return self.scale(c)

    def _check(self, other):
        if (self.source.pattern, self.source.n) != (other.source.pattern, other.source.n) or \
                self.target.pattern != other.target.pattern:
            raise ValueError(f"boundary mismatch: {self.source}->{self.target} vs {other.source}->{other.target}")

    def to_json(self) -> dict:
        return {"source": self.source.to_json(), "target": self.target.to_json(),
                "terms": [t.to_json() for t in self.terms]}

    @classmethod
    def from_json(cls, d) -> "TwoMor":
        if isinstance(d, str):
            d = json.loads(d)
        src = OneMor.from_json(d["source"])
        terms = [(Fraction(t.get("coeff", "1")), tuple(Slice.from_json(s) for s in t["slices"]))
                 for t in d["terms"]]
        tgt = OneMor.from_json(d["target"]) if "target" in d else None
        return cls(src, terms, tgt, inhomogeneous=bool(d.get("inhomogeneous", False)))

    def __eq__(self, other):
        if not isinstance(other, TwoMor):
            return NotImplemented
        return (self.source, self.target, self.terms) == (other.source, other.target, other.terms)

    def __str__(self):
        if not self.terms:
            return f"0: {self.source} -> {self.target}"
        parts = []
        for t in self.terms:
            body = " ".join(map(str, t.slices)) or "id"
            parts.append(f"{t.coeff} [{body}]")
        return " + ".join(parts) + f" : {self.source} -> {self.target}"

    __repr__ = __str__


def _shift_slice(s: Slice, k: int) -> Slice:
    if s.op in ("dot", "cross"):
        return replace(s, strand=s.strand + k)
    return replace(s, pos=s.pos + k)


def compose_v(A: TwoMor, B: TwoMor) -> TwoMor:
    """A after B (B at the bottom)."""
    if B.target.pattern != A.source.pattern or B.source.n != A.source.n:
        raise ValueError(f"cannot compose {A.source} after {B.target}")
    terms = [Term2(a.coeff * b.coeff, b.slices + a.slices) for a in A.terms for b in B.terms]
    return TwoMor(B.source, terms, A.target, A.inhomogeneous or B.inhomogeneous)


def compose_h(A: TwoMor, B: TwoMor) -> TwoMor:
    """A placed to the left of B."""
    if A.source.n != B.source.left:
        raise ValueError(f"weights do not match: {A.source.n} vs {B.source.left}")
    kb = B.target.length
    terms = []
    for a in A.terms:
        for b in B.terms:
            terms.append(Term2(a.coeff * b.coeff, b.slices + tuple(_shift_slice(s, kb) for s in a.slices)))
    src = OneMor(A.source.pattern + B.source.pattern, B.source.n, A.source.shift + B.source.shift)
    tgt = OneMor(A.target.pattern + B.target.pattern, B.source.n, A.target.shift + B.target.shift)
    return TwoMor(src, terms, tgt, A.inhomogeneous or B.inhomogeneous)


# evaluation


@dataclass
class GammaOptions:
    """Knobs for mutation testing; the defaults give Gamma_N."""

    u_sign: int = 1


DEFAULT = GammaOptions()


@lru_cache(maxsize=None)
def honest_bubble(N: int, n: int, orient: str, m: int) -> GrElement:
    """Closed cup/dot/cap composite evaluated on 1_n."""
    sig = Signature(N, n, "")
    kind = "EF" if orient == "cw" else "FE"
    e = flag.apply_cup(BimElement.one(sig), 0, kind)
    for _ in range(m):
        e = flag.apply_dot(e, 2)
    e = flag.apply_cap(e, 0, kind)
    k = sig.ks[0]
    return e.terms.get((), GrElement(k, N))


def bubble_image(N: int, n: int, orient: str, m: int) -> GrElement:
    if m >= 0:
        return honest_bubble(N, n, orient, m)
    return flag.bubble_class(N, n, orient, m)


def apply_slice(e: BimElement, s: Slice, opts: GammaOptions = DEFAULT) -> BimElement:
    if s.op == "dot":
        return flag.apply_dot(e, s.strand)
    if s.op == "cross":
        out = flag.apply_cross(e, s.strand)
        if opts.u_sign != 1 and e.sig.strand(s.strand) == "E":
            out = out.scale(opts.u_sign)
        return out
    if s.op == "cup":
        return flag.apply_cup(e, s.pos, s.kind)
    if s.op == "cap":
        return flag.apply_cap(e, s.pos, s.kind)
    if e.sig.is_zero():
        return e
    n = e.sig.weights[s.pos]
    return flag.mul_region_class(e, s.pos, bubble_image(e.sig.N, n, s.orient, s.dots))


class BimMap:
    """Gamma_N of a 2-morphism, as a right-module map."""

    def __init__(self, A: TwoMor, N: int, opts: GammaOptions = DEFAULT):
        if (A.source.n + N) % 2:
            raise ValueError(f"weight {A.source.n} has the wrong parity for N={N}")
        self.A, self.N, self.opts = A, N, opts
        self.source = A.source.signature(N)
        self.target = A.target.signature(N)

    def __call__(self, e: BimElement) -> BimElement:
        out = BimElement(self.target)
        for t in self.A.terms:
            x = e
            for s in t.slices:
                x = apply_slice(x, s, self.opts)
                if x.is_zero():
                    break
            if not x.is_zero():
                out = out + BimElement(self.target, x.data, normalize=False).scale(t.coeff)
        return out

    def generators(self) -> list:
        return [BimElement.monomial(self.source, e) for e in flag.monomial_basis(self.source)]

    def table(self) -> list:
        """[(generator exponents, image)] over the free basis of the source."""
        return [(ex, self(BimElement.monomial(self.source, ex))) for ex in flag.monomial_basis(self.source)]

    def is_zero(self) -> bool:
        return all(img.is_zero() for _, img in self.table())

    def vector(self) -> dict:
        """Flattened coefficients over (generator, output monomial, partition)."""
        v = {}
        for ex, img in self.table():
            for key, c in img.data.items():
                v[(ex, key)] = c
        return v


def eval(A: TwoMor, N: int, opts: GammaOptions = DEFAULT) -> BimMap:  # noqa: A001
    return BimMap(A, N, opts)


def dot_degree(A: TwoMor) -> int:
    """Largest degree carried by dots and bubbles in any term."""
    best = 0
    for t in A.terms:
        word, d = A.source.pattern, 0
        for s in t.slices:
            if s.op == "dot":
                d += 2
            elif s.op == "bubble":
                d += max(0, slice_degree(word, A.source.n, s))
            word = step(word, A.source.n, s)
        best = max(best, d)
    return best


def _all_regions(A: TwoMor) -> set:
    ws = set(A.source.weights()) | set(A.target.weights())
    for t in A.terms:
        word = A.source.pattern
        for s in t.slices:
            word = step(word, A.source.n, s)
            ws |= set(OneMor(word, A.source.n).weights())
    return ws


def auto_N(*mors: TwoMor) -> int:
    """Smallest N of the right parity with 2 min(k, N-k) above the dot degree in every region."""
    n = mors[0].source.n
    d = max(dot_degree(A) for A in mors)
    ws = set()
    for A in mors:
        ws |= _all_regions(A)
    N = max(abs(w) for w in ws)
    if (N + n) % 2:
        N += 1
    while True:
        if all(2 * min((w + N) // 2, N - (w + N) // 2) > d for w in ws):
            return N
        N += 2


def equal_under_gamma(A: TwoMor, B: TwoMor, N: int | None = None, opts: GammaOptions = DEFAULT) -> bool:
    A._check(B)
    if N is None:
        N = auto_N(A, B)
    D = eval(A - B if not (A.inhomogeneous or B.inhomogeneous) else _sub_inhom(A, B), N, opts)
    return D.is_zero()


def _sub_inhom(A, B):
    return TwoMor(A.source, A.terms + [Term2(-t.coeff, t.slices) for t in B.terms], A.target, True)


def difference(A: TwoMor, B: TwoMor) -> TwoMor:
    return _sub_inhom(A, B)


# mates and symmetries


def right_mate(A: TwoMor) -> TwoMor:
    """Mate under the right adjunctions: rot(target) -> rot(source), cups right and caps left."""
    x, y = A.source.pattern, A.target.pattern
    p, q = len(x), len(y)
    pre = []
    for k, c in enumerate(x):
        pre += cup(c + swap(c), k)
    post = []
    for j, d in enumerate(y, start=1):
        post += cap(swap(d) + d, p + q - j)
    src = OneMor(rot(y), A.source.left, 0)
    terms = [Term2(t.coeff, tuple(pre) + tuple(_shift_slice(s, p) for s in t.slices) + tuple(post))
             for t in A.terms]
    return TwoMor(src, terms, OneMor(rot(x), src.n), A.inhomogeneous)


def left_mate(A: TwoMor) -> TwoMor:
    """Mate under the left adjunctions: cups left and caps right."""
    x, y = A.source.pattern, A.target.pattern
    q = len(y)
    pre = []
    for k, c in enumerate(reversed(x)):
        pre += cup(swap(c) + c, q + k)
    post = []
    for j, d in enumerate(reversed(y), start=1):
        post += cap(d + swap(d), q - j)
    src = OneMor(rot(y), A.source.left, 0)
    terms = [Term2(t.coeff, tuple(pre) + tuple(_shift_slice(s, q) for s in t.slices) + tuple(post))
             for t in A.terms]
    return TwoMor(src, terms, OneMor(rot(x), src.n), A.inhomogeneous)


def _lengths(source: OneMor, slices) -> list:
    """Word length before each slice."""
    out, word = [], source.pattern
    for s in slices:
        out.append(len(word))
        word = step(word, source.n, s)
    return out


def _omega_term(t: Term2, source: OneMor) -> Term2:
    c = t.coeff
    out = []
    for s in t.slices:
        if s.op == "cross":
            c = -c
            out.append(s)
        elif s.op in ("cup", "cap"):
            out.append(replace(s, kind=swap(s.kind)))
        elif s.op == "bubble":
            out.append(replace(s, orient="ccw" if s.orient == "cw" else "cw"))
        else:
            out.append(s)
    return Term2(c, tuple(out))


def _mirror_slice(s: Slice, L: int, letters) -> Slice:
    """Reflect a slice acting on a word of length L; letters maps a cup/cap kind."""
    if s.op == "dot":
        return replace(s, strand=L + 1 - s.strand)
    if s.op == "cross":
        return replace(s, strand=L - s.strand)
    if s.op == "cup":
        return replace(s, kind=letters(s.kind), pos=L - s.pos)
    if s.op == "cap":
        return replace(s, kind=letters(s.kind), pos=L - 2 - s.pos)
    return replace(s, pos=L - s.pos)


def _flip_orient(s: Slice) -> Slice:
    if s.op == "bubble":
        return replace(s, orient="ccw" if s.orient == "cw" else "cw")
    return s


def _rotate_slice(s: Slice, L: int) -> Slice:
    """Slice s acted on a word of length L; its 180-degree rotation, read bottom to top."""
    if s.op == "dot":
        return replace(s, strand=L + 1 - s.strand)
    if s.op == "cross":
        return replace(s, strand=L - s.strand)
    if s.op == "cup":
        # rotated cup is a cap on the word of length L+2
        return Slice("cap", kind=s.kind, pos=L - s.pos)
    if s.op == "cap":
        return Slice("cup", kind=s.kind, pos=L - 2 - s.pos)
    return replace(s, pos=L - s.pos)


def _flip_slice(s: Slice) -> Slice:
    if s.op == "cup":
        return Slice("cap", kind=s.kind, pos=s.pos)
    if s.op == "cap":
        return Slice("cup", kind=s.kind, pos=s.pos)
    return s


def symmetry(A: TwoMor, which: str) -> TwoMor:
    """Apply one of the diagram symmetries omega, sigma, psi, tau, tau_inv."""
    w = {"ω̃": "omega", "ω": "omega", "σ̃": "sigma", "σ": "sigma", "ψ̃": "psi", "ψ": "psi",
         "τ̃": "tau", "τ": "tau", "τ̃⁻¹": "tau_inv", "τ⁻¹": "tau_inv", "tau^-1": "tau_inv", "tauinv": "tau_inv"}.get(which, which)
    src, tgt = A.source, A.target
    if w == "omega":
        s2 = OneMor(swap(src.pattern), -src.n, src.shift)
        t2 = OneMor(swap(tgt.pattern), -tgt.n, tgt.shift)
        return TwoMor(s2, [_omega_term(t, src) for t in A.terms], t2, A.inhomogeneous)
    if w == "sigma":
        s2 = OneMor(src.pattern[::-1], -src.left, src.shift)
        t2 = OneMor(tgt.pattern[::-1], -tgt.left, tgt.shift)
        terms = []
        for t in A.terms:
            Ls = _lengths(src, t.slices)
            sl, c = [], t.coeff
            for s, L in zip(t.slices, Ls):
                if s.op == "cross":
                    c = -c
                sl.append(_flip_orient(_mirror_slice(s, L, lambda k: k[::-1])))
            terms.append(Term2(c, tuple(sl)))
        return TwoMor(s2, terms, t2, A.inhomogeneous)
    if w == "psi":
        s2 = OneMor(tgt.pattern, tgt.n, -tgt.shift)
        t2 = OneMor(src.pattern, src.n, -src.shift)
        terms = [Term2(t.coeff, tuple(_flip_slice(s) for s in reversed(t.slices))) for t in A.terms]
        return TwoMor(s2, terms, t2, A.inhomogeneous)
    if w in ("tau", "tau_inv"):
        adj = OneMor.right_adjoint if w == "tau" else OneMor.left_adjoint
        s2, t2 = adj(tgt), adj(src)
        terms = []
        for t in A.terms:
            Ls = _lengths(src, t.slices)
            sl = [_rotate_slice(s, L) for s, L in zip(t.slices, Ls)]
            terms.append(Term2(t.coeff, tuple(reversed(sl))))
        return TwoMor(s2, terms, t2, A.inhomogeneous)
    if w in ("rho", "ρ", "ρ̃"):
        raise ValueError("no categorical lift of rho is defined")
    raise ValueError(f"unknown symmetry {which!r}")


# sideways crossings


def sideways(word: str, i: int, variant: str = "left") -> list:
    """Crossing of the opposite strands i+1 and i, built from a cup, an upward or downward crossing and a cap.

    variant 'left' bends the strand through a cup on the left, 'right' through a cup on the right.
    """
    pair = word[-i - 1] + word[-i]
    if pair not in ("EF", "FE"):
        raise ValueError("sideways crossing needs opposite strands")
    if variant == "left":
        return cup(swap(pair), i + 1) + cross(i + 1) + cap(pair, i - 1)
    return cup(pair[::-1], i - 1) + cross(i + 1) + cap(pair, i + 1)


# bubble polynomials


class BubblePoly:
    """Polynomial in the bubble generators v_1, v_2, ... at a fixed weight.

    Keys are sorted tuples of generator indices (a multiset); orient records
    which family of bubbles the generators stand for.
    """

    def __init__(self, n: int, orient: str, terms=None):
        self.n, self.orient = n, orient
        t = {}
        for key, c in (terms or {}).items():
            if any(j < 0 for j in key):
                continue  # negative degree bubbles vanish
            key = tuple(sorted(j for j in key if j))  # v_0 = 1
            c = Fraction(c)
            if c:
                t[key] = t.get(key, 0) + c
                if not t[key]:
                    del t[key]
        self.terms = t

    @classmethod
    def one(cls, n, orient):
        return cls(n, orient, {(): 1})

    @classmethod
    def gen(cls, n, orient, j):
        return cls(n, orient, {(j,) if j else (): 1})

    def _check(self, other):
        if (self.n, self.orient) != (other.n, other.orient):
            raise ValueError("bubble polynomials over different generators")

    def __add__(self, other):
        self._check(other)
        d = dict(self.terms)
        for k, c in other.terms.items():
            d[k] = d.get(k, 0) + c
        return BubblePoly(self.n, self.orient, d)

    def __neg__(self):
        return BubblePoly(self.n, self.orient, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return BubblePoly(self.n, self.orient, {k: c * other for k, c in self.terms.items()})
        self._check(other)
        d: dict = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                k = tuple(sorted(k1 + k2))
                d[k] = d.get(k, 0) + c1 * c2
        return BubblePoly(self.n, self.orient, d)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, BubblePoly):
            return NotImplemented
        return (self.n, self.orient, self.terms) == (other.n, other.orient, other.terms)

    def degree(self) -> int | None:
        ds = {2 * sum(k) for k in self.terms}
        return ds.pop() if len(ds) == 1 else None

    def image(self, N: int) -> GrElement:
        """Evaluate with each v_j sent to its bubble image in H_k."""
        k = (self.n + N) // 2
        out = GrElement(k, N)
        for key, c in self.terms.items():
            term = GrElement.one(k, N)
            for j in key:
                term = term * v_image(N, self.n, self.orient, j)
            out = out + term * c
        return out

    def to_json(self) -> dict:
        return {"n": self.n, "orient": self.orient,
                "terms": [{"v": list(k), "coeff": str(c)} for k, c in sorted(self.terms.items())]}

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for key, c in sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0])):
            mono = " ".join(f"v{j}" + (f"^{e}" if e > 1 else "")
                            for j, e in sorted(_counts(key).items()))
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c} {mono}")
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    __repr__ = __str__


def _counts(key):
    d: dict = {}
    for j in key:
        d[j] = d.get(j, 0) + 1
    return d


def default_orient(n: int) -> str:
    """Family of bubbles used as generators at weight n."""
    return "ccw" if n >= 0 else "cw"


def v_dots(n: int, orient: str, j: int) -> int:
    """Dot label of the degree-2j bubble of the given orientation at weight n."""
    return -n - 1 + j if orient == "ccw" else n - 1 + j


def v_image(N: int, n: int, orient: str, j: int) -> GrElement:
    return bubble_image(N, n, orient, v_dots(n, orient, j))


def fake_bubble_poly(n: int, j: int) -> BubblePoly:
    """A fake bubble of degree 2j as a polynomial in the oppositely oriented honest bubbles.

    For n >= 0 the fake bubble is counterclockwise and the answer is in the
    clockwise generators; for n <= 0 the other way round.  At n = 0 the
    counterclockwise fake bubble is returned.
    """
    if not 0 <= j <= abs(n):
        raise ValueError(f"fake bubble degree {j} outside 0..{abs(n)}")
    other = "cw" if n >= 0 else "ccw"
    fake: list = [BubblePoly.one(n, other)]
    for jj in range(1, j + 1):
        acc = BubblePoly(n, other)
        if n >= 0:
            # sum_{l=1}^{jj} cw(n-1+l) * fake(jj-l)
            for l in range(1, jj + 1):
                acc = acc + BubblePoly.gen(n, other, l) * fake[jj - l]
        else:
            # sum_{l=0}^{jj-1} fake(l) * ccw(-n-1+jj-l)
            for l in range(0, jj):
                acc = acc + fake[l] * BubblePoly.gen(n, other, jj - l)
        fake.append(-acc)
    return fake[j]


def closed_to_bubbles(A: TwoMor, N: int | None = None, orient: str | None = None,
                      opts: GammaOptions = DEFAULT) -> BubblePoly:
    """Express a closed diagram in the bubble generators by solving in H_k."""
    if A.source.pattern or A.target.pattern:
        raise ValueError("closed_to_bubbles needs a diagram from 1_n to 1_n")
    n = A.source.n
    orient = orient or default_orient(n)
    if N is None:
        N = auto_N(A)
    k = (n + N) // 2
    sig = Signature(N, n, "")
    img = eval(A, N, opts)(BimElement.one(sig))
    g = img.terms.get((), GrElement(k, N))
    out = BubblePoly(n, orient)
    for d in sorted({2 * sum(l) for l in g.terms}):
        part = g.homogeneous_part(d)
        cols = {}
        for mu in _partitions(d // 2):
            key = tuple(sorted(mu))
            cols[key] = BubblePoly(n, orient, {key: 1}).image(N).terms
        try:
            sol = solve(cols, part.terms)
        except ValueError:
            raise ValueError(f"bubble images are dependent in degree {d} at N={N}; use a larger N") from None
        if sol is None:
            raise ValueError(f"degree {d} part is not in the span of bubble images at N={N}")
        out = out + BubblePoly(n, orient, sol)
    return out


def _partitions(m: int, maxpart: int | None = None) -> list:
    if maxpart is None:
        maxpart = m
    if m == 0:
        return [()]
    out = []
    for p in range(min(m, maxpart), 0, -1):
        for rest in _partitions(m - p, p):
            out.append((p,) + rest)
    return out


def closed_from_bubbles(P: BubblePoly) -> TwoMor:
    """A closed diagram (sum of products of bubbles) representing P."""
    x = OneMor("", P.n)
    terms = []
    for key, c in P.terms.items():
        sl = []
        for j in key:
            sl += bubble(P.orient, v_dots(P.n, P.orient, j))
        terms.append((c, tuple(sl)))
    return TwoMor(x, terms, x, inhomogeneous=True)


# the idempotent system for EF (n >= 0) and FE (n <= 0)


def decomposition_idempotents(n: int, N: int | None = None, opts: GammaOptions = DEFAULT):
    """Build the maps lambda_s, sigma_s decomposing EF1_n (n >= 0) or FE1_n (n < 0) and verify them.

    Returns (pairs, report) where pairs is a list of (lambda_s, sigma_s) and
    report lists every check with its outcome.
    """
    if n < 0:
        pairs = [(symmetry(l, "omega"), symmetry(s, "omega")) for l, s in _ef_system(-n)]
    else:
        pairs = _ef_system(n)
    if N is None:
        N = abs(n) + 4 if (abs(n) % 2 == 0) else abs(n) + 3
        if (N + n) % 2:
            N += 1
    report = []
    X = pairs[0][0].target
    for a, (lam_a, sig_a) in enumerate(pairs):
        for b, (lam_b, sig_b) in enumerate(pairs):
            comp = compose_v(sig_a, lam_b) if sig_a.source.pattern == lam_b.target.pattern else None
            if comp is None:
                continue
            if a == b:
                ok = equal_under_gamma(comp, TwoMor.identity(comp.source), N, opts)
                report.append((f"sigma_{a} lambda_{a} = id", ok))
            else:
                ok = eval(comp, N, opts).is_zero()
                report.append((f"sigma_{a} lambda_{b} = 0", ok))
    total = None
    for lam, sig in pairs:
        c = compose_v(lam, sig)
        c = TwoMor(X, c.terms, X, inhomogeneous=True)
        total = c if total is None else TwoMor(X, total.terms + c.terms, X, True)
    ok = equal_under_gamma(total, TwoMor(X, [(1, ())], X, True), N, opts)
    report.append(("sum lambda_s sigma_s = id", ok))
    return pairs, {"n": n, "N": N, "checks": report, "ok": all(r[1] for r in report)}


def _ef_system(n: int) -> list:
    """Pairs (lambda_s, sigma_s), s = 0..n-1, then (lambda_n, sigma_n), for EF1_n with n >= 0."""
    EF = OneMor("EF", n)
    pairs = []
    for s in range(n):
        shift = n - 1 - 2 * s
        one = OneMor("", n, shift)
        lam = TwoMor(one, [(1, tuple(cup("EF", 0) + dot(2, n - 1 - s)))], OneMor("EF", n, 0))
        sig_terms = []
        for j in range(s + 1):
            sig_terms.append((1, tuple(dot(2, s - j) + cap("EF", 0) + bubble("ccw", -n - 1 + j, 0))))
        sig = TwoMor(EF, sig_terms, one)
        pairs.append((lam, sig))
    FE = OneMor("FE", n)
    lam_n = TwoMor.single(FE, sideways("FE", 1))
    sig_n = TwoMor.single(EF, sideways("EF", 1), -1)
    pairs.append((lam_n, sig_n))
    return pairs


# the relation suite


def _T(source: OneMor, terms, target: OneMor | None = None) -> TwoMor:
    return TwoMor(source, [(c, tuple(sl)) for c, sl in terms], target, inhomogeneous=True)


def _id(x: OneMor) -> TwoMor:
    return _T(x, [(1, [])])


def _zero(x: OneMor, target: OneMor | None = None) -> TwoMor:
    return _T(x, [], target or x)


def _with_left(pattern: str, left: int) -> OneMor:
    """1-morphism with the given word and left weight."""
    n = left - OneMor(pattern, 0).left
    return OneMor(pattern, n)


def rel_biadjoint(n: int, params=None) -> list:
    out = []
    for X in "EF":
        x = OneMor(X, n)
        Y = swap(X)
        out.append((f"zigzag {X} right", _T(x, [(1, cup(Y + X, 0) + cap(X + Y, 1))]), _id(x)))
        out.append((f"zigzag {X} left", _T(x, [(1, cup(X + Y, 1) + cap(Y + X, 0))]), _id(x)))
        dotted = _T(x, [(1, dot(1))])
        out.append((f"dot cyclic {X} right", _T(x, [(1, cup(Y + X, 0) + dot(2) + cap(X + Y, 1))]), dotted))
        out.append((f"dot cyclic {X} left", _T(x, [(1, cup(X + Y, 1) + dot(2) + cap(Y + X, 0))]), dotted))
        # both mates of the crossing on YY equal the crossing on XX
        xx = OneMor(X + X, n)
        A = _T(_with_left(Y + Y, n), [(1, cross(1))])
        out.append((f"crossing dual {X}{X} right", right_mate(A), _T(xx, [(1, cross(1))])))
        out.append((f"crossing dual {X}{X} left", left_mate(A), _T(xx, [(1, cross(1))])))
    for pair in ("EF", "FE"):
        x = OneMor(pair, n)
        out.append((f"sideways {pair} left=right", _T(x, [(1, sideways(pair, 1, "left"))]),
                    _T(x, [(1, sideways(pair, 1, "right"))])))
    return out


def _closed_bubble(orient: str, m: int) -> list:
    kind = "EF" if orient == "cw" else "FE"
    return cup(kind, 0) + dot(2, m) + cap(kind, 0)


def rel_positivity(n: int, params=None) -> list:
    out = []
    one = OneMor("", n)
    for orient in ("cw", "ccw"):
        top = (n - 1) if orient == "cw" else (-n - 1)
        for m in range(0, max(top, -1) + 1):
            lhs = _T(one, [(1, _closed_bubble(orient, m))])
            rhs = _id(one) if m == top else _zero(one)
            out.append((f"{orient} bubble with {m} dots", lhs, rhs))
    return out


def rel_nilhecke(n: int, params=None) -> list:
    ms = range(1, 4) if params is None else params.get("m", range(1, 4))
    ee = OneMor("EE", n)
    eee = OneMor("EEE", n)
    out = [
        ("U^2 = 0", _T(ee, [(1, cross(1) + cross(1))]), _zero(ee)),
        ("dot slide bottom-left/top-right", _T(ee, [(1, dot(2) + cross(1)), (-1, cross(1) + dot(1))]), _id(ee)),
        ("dot slide top-left/bottom-right", _T(ee, [(1, cross(1) + dot(2)), (-1, dot(1) + cross(1))]), _id(ee)),
        ("Reidemeister III", _T(eee, [(1, cross(1) + cross(2) + cross(1))]),
         _T(eee, [(1, cross(2) + cross(1) + cross(2))])),
        ("symmetric dots pass through",
         _T(ee, [(1, cross(1) + dot(2)), (1, cross(1) + dot(1))]),
         _T(ee, [(1, dot(2) + cross(1)), (1, dot(1) + cross(1))])),
        ("product of dots passes through",
         _T(ee, [(1, cross(1) + dot(2) + dot(1))]), _T(ee, [(1, dot(2) + dot(1) + cross(1))])),
    ]
    for m in ms:
        lhs1 = _T(ee, [(1, cross(1) + dot(2, m)), (-1, dot(1, m) + cross(1))])
        lhs2 = _T(ee, [(1, dot(2, m) + cross(1)), (-1, cross(1) + dot(1, m))])
        rhs = _T(ee, [(1, dot(2, m - j - 1) + dot(1, j)) for j in range(m)])
        out.append((f"induction formula m={m} (top)", lhs1, rhs))
        out.append((f"induction formula m={m} (bottom)", lhs2, rhs))
    # the downward versions are the omega images
    for name, a, b in list(out):
        out.append((name + " [F]", symmetry(a, "omega"), symmetry(b, "omega")))
    return out


def rel_reduction(n: int, params=None) -> list:
    ms = range(0, 4) if params is None else params.get("m", range(0, 4))
    out = []
    for m in ms:
        x = OneMor("E", n)
        lhs = _T(x, [(1, cup("EF", 0) + dot(1, m) + cross(2) + cap("EF", 0))])
        rhs = _T(x, [(-1, dot(1, m - n - l) + bubble("cw", n - 1 + l, 0)) for l in range(0, m - n + 1)],
                 target=x)
        out.append((f"right curl, m={m}", lhs, rhs))
        x = OneMor("E", n - 2)
        lhs = _T(x, [(1, cup("FE", 1) + dot(3, m) + cross(1) + cap("FE", 1))])
        rhs = _T(x, [(1, dot(1, m + n - j) + bubble("ccw", -n - 1 + j, 1)) for j in range(0, m + n + 1)],
                 target=x)
        out.append((f"left curl, m={m}", lhs, rhs))
    return out


def identity_decomposition(n: int) -> tuple:
    """Both identity decompositions at weight n as (lhs, rhs) pairs."""
    ef = OneMor("EF", n)
    terms = [(-1, sideways("EF", 1) + sideways("FE", 1))]
    for l in range(0, n):
        for j in range(0, l + 1):
            terms.append((1, dot(2, l - j) + cap("EF", 0) + bubble("ccw", -n - 1 + j, 0)
                          + cup("EF", 0) + dot(2, n - 1 - l)))
    first = (_id(ef), _T(ef, terms))
    fe = OneMor("FE", n)
    terms = [(-1, sideways("FE", 1) + sideways("EF", 1))]
    for l in range(0, -n):
        for j in range(0, l + 1):
            terms.append((1, dot(2, l - j) + cap("FE", 0) + bubble("cw", n - 1 + j, 0)
                          + cup("FE", 0) + dot(2, -n - 1 - l)))
    second = (_id(fe), _T(fe, terms))
    return first, second


def rel_decomp(n: int, params=None) -> list:
    (a, b), (c, d) = identity_decomposition(n)
    return [("identity decomposition EF", a, b), ("identity decomposition FE", c, d)]


def rel_slides(n: int, params=None) -> list:
    alphas = range(0, 4) if params is None else params.get("alpha", range(0, 4))
    x = OneMor("E", n)
    out = []
    for a in alphas:
        out.append((f"ccw slide alpha={a}",
                    _T(x, [(1, bubble("ccw", -n - 1 + a, 0))]),
                    _T(x, [(a + 1 - l, bubble("ccw", -n - 3 + l, 1) + dot(1, a - l)) for l in range(a + 1)])))
        out.append((f"cw slide alpha={a}",
                    _T(x, [(1, bubble("cw", n + 1 + a, 1))]),
                    _T(x, [(a + 1 - l, bubble("cw", n - 1 + l, 0) + dot(1, a - l)) for l in range(a + 1)])))
        out.append((f"cw slide back alpha={a}",
                    _T(x, [(1, bubble("cw", n - 1 + a, 0))]),
                    _T(x, [(1, bubble("cw", n - 1 + a, 1) + dot(1, 2)),
                           (-2, bubble("cw", n + a, 1) + dot(1)),
                           (1, bubble("cw", n + 1 + a, 1))])))
        out.append((f"ccw slide back alpha={a}",
                    _T(x, [(1, bubble("ccw", -n - 3 + a, 1))]),
                    _T(x, [(1, bubble("ccw", -n - 3 + a, 0) + dot(1, 2)),
                           (-2, bubble("ccw", -n - 2 + a, 0) + dot(1)),
                           (1, bubble("ccw", -n - 1 + a, 0))])))
    for name, a_, b_ in list(out):
        out.append((name + " [F]", symmetry(a_, "omega"), symmetry(b_, "omega")))
    return out


def triangle(n: int) -> tuple:
    fe = OneMor("FE", n)
    lhs = [(1, sideways("FE", 1) + cup("FE", 1) + sideways("EFEF", 3) + sideways("FEEF", 1))]
    for l in range(0, n + 1):
        for j in range(0, l + 1):
            for f in range(0, l - j + 1):
                lhs.append((1, dot(2, l - j - f) + dot(1, f) + bubble("ccw", -n - 3 + j, 1)
                            + cup("EF", 1) + dot(3, n - l)))
    rhs = [(1, cup("FE", 1) + cross(3) + cross(1) + sideways("FFEE", 2))]
    for l in range(0, -n - 1):
        for j in range(0, l + 1):
            for f in range(0, -n - 2 - l + 1):
                rhs.append((-1, dot(2, l - j) + cap("FE", 0) + bubble("cw", n - 1 + j, 0) + cup("FE", 0)
                            + dot(2, -n - 2 - l - f) + cup("FE", 2) + dot(4, f)))
    return _T(fe, lhs), _T(fe, rhs)


def rel_triangle(n: int, params=None) -> list:
    a, b = triangle(n)
    return [("triangle", a, b)]


def rel_grassmannian(n: int, params=None) -> list:
    ds = range(0, 5) if params is None else params.get("d", range(0, 5))
    one = OneMor("", n)
    out = []
    for d in ds:
        lhs = _T(one, [(1, bubble("cw", n - 1 + j, 0) + bubble("ccw", -n - 1 + d - j, 0)) for j in range(d + 1)])
        out.append((f"infinite Grassmannian d={d}", lhs, _id(one) if d == 0 else _zero(one)))
    return out


SUITES = {
    "biadjoint": [rel_biadjoint],
    "nilhecke": [rel_nilhecke],
    "bubbles": [rel_positivity, rel_grassmannian],
    "reduction": [rel_reduction],
    "decomp": [rel_decomp],
    "slides": [rel_slides],
    "triangle": [rel_triangle],
}
SUITES["all"] = [f for name in list(SUITES) for f in SUITES[name]]


def _run_case(case) -> list:
    name, N, n, opts, params = case
    out = []
    for builder in SUITES[name]:
        for label, lhs, rhs in builder(n, params):
            ok = equal_under_gamma(lhs, rhs, N, opts)
            out.append({"suite": name, "relation": label, "n": n, "N": N, "ok": ok})
    return out


def relation_suite(N_range: Iterable[int], n_range: Iterable[int] | None = None, suite: str = "all",
                   opts: GammaOptions = DEFAULT, params=None, workers: int = 1) -> dict:
    """Check relations as exact equalities under Gamma_N.

    Returns {"ok": bool, "N_values": [...], "results": [{"suite", "relation", "n", "N", "ok"}]}.
    Weights n range over the parity-valid |n| <= N unless n_range is given.
    """
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {sorted(SUITES)}")
    names = [suite] if suite != "all" else [s for s in SUITES if s != "all"]
    N_range = list(N_range)
    n_range = list(n_range) if n_range is not None else None
    cases = []
    for N in N_range:
        ns = n_range if n_range is not None else range(-N, N + 1)
        for n in ns:
            if (n + N) % 2 == 0:
                cases += [(name, N, n, opts, params) for name in names]
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(workers) as pool:
            chunks = list(pool.map(_run_case, cases))
    else:
        chunks = [_run_case(c) for c in cases]
    results = [r for chunk in chunks for r in chunk]
    return {"ok": all(r["ok"] for r in results), "N_values": N_range, "results": results}


# End(E^a 1_n) at a fixed degree


def nilhecke_series(a: int, order: int) -> dict:
    """{d: coefficient of q^d} of q^{-a(a-1)/2}[a]!/(1-q^2)^a times the bubble series, up to q^order."""
    num = qfact(a).shift(-a * (a - 1) // 2)
    den = LaurentPoly.const(1) - LaurentPoly.monomial(2)
    den = den ** a
    for j in range(1, order // 2 + 2):
        den = den * (LaurentPoly.const(1) - LaurentPoly.monomial(2 * j))
    return RatFun(num, den).series(order)


def beta_basis(a: int, n: int, d: int) -> list:
    """Degree-d elements x^alpha u_w (x) v_mu of the nilHecke ring times the bubble ring, as TwoMors."""
    src = OneMor("E" * a, n)
    orient = default_orient(n)
    out = []
    for w in all_perms(a):
        lw = w.length()
        for rest in range(0, d + 2 * lw + 1, 2):
            dotdeg = rest // 2
            bub = (d + 2 * lw - rest) // 2
            if (d + 2 * lw - rest) % 2:
                continue
            for alpha in _compositions(dotdeg, a):
                for mu in _partitions(bub):
                    sl = []
                    for i in w.reduced_word():
                        sl += cross(a - i)
                    for i, e in enumerate(alpha, start=1):
                        sl += dot(a + 1 - i, e)
                    for j in mu:
                        sl += bubble(orient, v_dots(n, orient, j), 0)
                    label = (tuple(alpha), str(w), tuple(mu))
                    out.append((label, TwoMor(src, [(1, tuple(sl))])))
    return out


def _compositions(total: int, parts: int) -> list:
    if parts == 0:
        return [()] if total == 0 else []
    out = []
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            out.append((first,) + rest)
    return out


def endring_dim_check(a: int, n: int, d: int, N: int | None = None) -> dict:
    """Independence and count of the degree-d basis of End(E^a 1_n) under Gamma_N."""
    basis = beta_basis(a, n, d)
    expected = nilhecke_series(a, max(d, 0)).get(d, 0)
    if N is None:
        N = auto_N(*[A for _, A in basis]) if basis else (abs(n) + 2 * a + 2)
    ech = Echelon()
    for label, A in basis:
        ech.add(eval(A, N).vector())
    rank = ech.rank
    return {"a": a, "n": n, "d": d, "N": N, "count": len(basis), "expected": expected,
            "rank": rank, "independent": rank == len(basis), "ok": rank == len(basis) == expected}


def rel_idempotents(n: int, params=None, N: int | None = None, opts: GammaOptions = DEFAULT) -> list:
    """The decomposition system as (name, lhs, rhs) triples."""
    pairs = _ef_system(n) if n >= 0 else [(symmetry(l, "omega"), symmetry(s, "omega")) for l, s in _ef_system(-n)]
    out = []
    X = pairs[0][0].target
    for a, (_, sig_a) in enumerate(pairs):
        for b, (lam_b, _) in enumerate(pairs):
            comp = compose_v(sig_a, lam_b)
            rhs = _id(comp.source) if a == b else _zero(comp.source, comp.target)
            out.append((f"sigma_{a} lambda_{b} = {'id' if a == b else '0'}", comp, rhs))
    terms = []
    for lam, sig in pairs:
        terms += [(t.coeff, t.slices) for t in compose_v(lam, sig).terms]
    out.append(("sum lambda_s sigma_s = id", _T(X, terms, X), _id(X)))
    return out


SUITES["idempotents"] = [rel_idempotents]
SUITES["all"] = SUITES["all"] + [rel_idempotents]


def bubble_generation_check(N: int, max_degree: int | None = None) -> dict:
    """Rank of the degree-d bubble monomial images in H_k against dim H_k^d, for every k.

    The default range is d <= 2 min(k, N-k), where the monomials are also independent.
    """
    rows = []
    for k in range(N + 1):
        n = 2 * k - N
        top = 2 * min(k, N - k) if max_degree is None else max_degree
        dims = flag.graded_dimension(k, N)
        for orient in ("cw", "ccw"):
            for d in range(0, top + 1, 2):
                ech = Echelon()
                mons = _partitions(d // 2)
                for mu in mons:
                    ech.add(BubblePoly(n, orient, {tuple(sorted(mu)): 1}).image(N).terms)
                dim = dims.get(d, 0)
                rows.append({"N": N, "k": k, "orient": orient, "d": d, "dim": dim, "rank": ech.rank,
                             "monomials": len(mons), "ok": ech.rank == dim})
    return {"ok": all(r["ok"] for r in rows), "rows": rows}
