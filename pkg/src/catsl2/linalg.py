"""Row reduction over the rationals.

Vectors are sparse dicts {key: Fraction}; matrices are lists of such rows.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Iterable, Mapping


class Echelon:
    """Incrementally maintained reduced row echelon basis of a span."""

    def __init__(self):
        self.rows: list = []  # (pivot, row dict, tag combination)
        self.pivots: dict = {}

    def reduce(self, vec: Mapping, tags: Mapping | None = None):
        """Reduce vec against the basis; returns (residual, tag combination)."""
        v = {k: Fraction(c) for k, c in vec.items() if c}
        t = dict(tags or {})
        for p, row, rt in self.rows:
            c = v.get(p)
            if c:
                for k, rc in row.items():
                    nv = v.get(k, 0) - c * rc
                    if nv:
                        v[k] = nv
                    else:
                        v.pop(k, None)
                for k, rc in rt.items():
                    nv = t.get(k, 0) - c * rc
                    if nv:
                        t[k] = nv
                    else:
                        t.pop(k, None)
        return v, t

    def add(self, vec: Mapping, tag: Hashable | None = None) -> bool:
        """Insert vec; returns False if it was already in the span."""
        v, t = self.reduce(vec, {tag: Fraction(1)} if tag is not None else None)
        if not v:
            return False
        p = min(v, key=_sort_key)
        c = v[p]
        v = {k: x / c for k, x in v.items()}
        t = {k: x / c for k, x in t.items()}
        # keep rows fully reduced so that reduce() is a single pass
        for i, (q, row, rt) in enumerate(self.rows):
            d = row.get(p)
            if d:
                for k, x in v.items():
                    nv = row.get(k, 0) - d * x
                    if nv:
                        row[k] = nv
                    else:
                        row.pop(k, None)
                for k, x in t.items():
                    nv = rt.get(k, 0) - d * x
                    if nv:
                        rt[k] = nv
                    else:
                        rt.pop(k, None)
        self.rows.append((p, v, t))
        self.pivots[p] = len(self.rows) - 1
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)


def _sort_key(k):
    return repr(k)


def rank(vectors: Iterable[Mapping]) -> int:
    e = Echelon()
    for v in vectors:
        e.add(v)
    return e.rank


def solve(columns: Mapping[Hashable, Mapping], target: Mapping):
    """Find {name: coefficient} with sum coeff*columns[name] == target, or None.

    The solution is unique when the columns are independent; raises ValueError otherwise.
    """
    e = Echelon()
    for name, col in columns.items():
        if not e.add(col, name):
            raise ValueError(f"columns are dependent (at {name!r})")
    resid, combo = e.reduce(target)
    if resid:
        return None
    # target = sum over rows; rows carry their tag combinations
    out: dict = {}
    tv = {k: Fraction(c) for k, c in target.items() if c}
    for p, row, rt in e.rows:
        c = tv.get(p, 0)
        # after full reduction each pivot appears in exactly one row
        if c:
            for k, x in rt.items():
                out[k] = out.get(k, 0) + c * x
    return {k: v for k, v in out.items() if v}
