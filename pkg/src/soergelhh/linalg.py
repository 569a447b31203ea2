"""Exact sparse linear algebra over the rationals.

Vectors are dicts {column index: value}; matrices are lists of such rows.
Two elimination paths:

* an integer fraction-free path for rank-only work on large sparse
  matrices (rows are cleared to integers, each update divides by the row
  gcd, pivots are chosen by a Markowitz-style count to limit fill-in);
* a rational RREF path that keeps full echelon data for kernels, image
  membership and change-of-basis bookkeeping.

Everything is deterministic: pivot choice breaks ties by smallest index,
echelon rows are fully reduced against each other with leading value 1.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Optional

__all__ = [
    "intify_rows",
    "sparse_rank_int",
    "sparse_rref",
    "kernel_basis",
    "FracEchelon",
]


def intify_rows(rows: Iterable[dict]) -> list[dict]:
    """Clear denominators row by row; values become plain ints."""
    out = []
    for row in rows:
        lcm = 1
        for v in row.values():
            if isinstance(v, Fraction):
                d = v.denominator
                lcm = lcm // gcd(lcm, d) * d
        new = {}
        for c, v in row.items():
            w = int(v * lcm) if isinstance(v, Fraction) else v * lcm
            if w:
                new[c] = w
        if new:
            out.append(new)
    return out


def _row_gcd(row: dict) -> int:
    g = 0
    for v in row.values():
        g = gcd(g, v if v >= 0 else -v)
        if g == 1:
            return 1
    return g


def sparse_rank_int(rows: list[dict]) -> int:
    """Rank of an integer matrix given as sparse rows; destroys its input."""
    alive = {i: r for i, r in enumerate(rows) if r}
    col_rows: dict[int, set] = {}
    for i, r in alive.items():
        for c in r:
            col_rows.setdefault(c, set()).add(i)
    rank = 0
    while alive:
        # pivot column: fewest live rows, then smallest index
        best_c = None
        best_cnt = None
        for c, s in col_rows.items():
            cnt = len(s)
            if cnt and (best_cnt is None or cnt < best_cnt or (cnt == best_cnt and c < best_c)):
                best_c, best_cnt = c, cnt
                if cnt == 1:
                    break
        if best_c is None:
            break
        # pivot row: prefer unit entries, then shortest row, then index
        cand = col_rows[best_c]
        best_i = None
        best_key = None
        for i in cand:
            r = alive[i]
            v = r[best_c]
            key = (0 if v in (1, -1) else 1, len(r), i)
            if best_key is None or key < best_key:
                best_i, best_key = i, key
        prow = alive.pop(best_i)
        p = prow[best_c]
        for c in prow:
            col_rows[c].discard(best_i)
        rank += 1
        for i in list(col_rows.get(best_c, ())):
            row = alive[i]
            q = row[best_c]
            # row := p*row - q*prow, then strip the gcd
            for c in row:
                col_rows[c].discard(i)
            new = {c: p * v for c, v in row.items()}
            for c, v in prow.items():
                w = new.get(c, 0) - q * v
                if w:
                    new[c] = w
                else:
                    new.pop(c, None)
            if new:
                g = _row_gcd(new)
                if g > 1:
                    new = {c: v // g for c, v in new.items()}
                alive[i] = new
                for c in new:
                    col_rows.setdefault(c, set()).add(i)
            else:
                del alive[i]
        if not col_rows.get(best_c):
            col_rows.pop(best_c, None)
    return rank


def sparse_rref(rows: Iterable[dict]) -> list[tuple[int, dict]]:
    """Reduced row echelon form over Fraction.

    Returns [(pivot column, row)] sorted by pivot column; each row has a 1
    in its pivot column and zeros in every other pivot column.
    """
    ech = FracEchelon()
    for row in rows:
        ech.insert({c: _frac(v) for c, v in row.items()})
    return ech.sorted_rows()


def _frac(v) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v)


def kernel_basis(rref: list[tuple[int, dict]], ncols: int) -> list[dict]:
    """Kernel of the matrix whose RREF rows are given, as sparse vectors.

    One basis vector per free column f: value 1 at f, and -row[f] at each
    pivot column.  Vectors come out ordered by free column.
    """
    pivots = {p for p, _ in rref}
    out = []
    for f in range(ncols):
        if f in pivots:
            continue
        vec = {f: Fraction(1)}
        for p, row in rref:
            v = row.get(f)
            if v:
                vec[p] = -v
        out.append(vec)
    return out


class FracEchelon:
    """Incrementally maintained RREF over Fraction with sparse rows."""

    __slots__ = ("rows",)

    def __init__(self):
        self.rows: dict[int, dict] = {}  # pivot column -> row (leading 1)

    def reduce(self, vec: dict) -> dict:
        """Fully reduce a copy of vec against the stored rows."""
        return self.reduce_tracked(vec)[0]

    def reduce_tracked(self, vec: dict) -> tuple[dict, dict]:
        """Reduce vec, also returning {pivot: coefficient} used.

        Stored rows vanish at every other pivot column, so reduction can
        never introduce a nonzero at a pivot column vec did not already
        touch; one pass over vec's pivot coordinates suffices.
        """
        v = dict(vec)
        combo = {}
        for p in sorted(p for p in v if p in self.rows):
            c = v.get(p)
            if c:
                combo[p] = c
                row = self.rows[p]
                for col, val in row.items():
                    w = v.get(col, Fraction(0)) - c * val
                    if w:
                        v[col] = w
                    else:
                        v.pop(col, None)
        return v, combo

    def insert(self, vec: dict) -> Optional[int]:
        """Reduce and, if nonzero, add as a new row.

        Returns the new pivot column, or None when vec was in the span.
        """
        v = self.reduce(vec)
        if not v:
            return None
        p = min(v)
        lead = v[p]
        if lead != 1:
            v = {c: val / lead for c, val in v.items()}
        # back-eliminate the new pivot from stored rows
        for p2, row in self.rows.items():
            c = row.get(p)
            if c:
                for col, val in v.items():
                    w = row.get(col, Fraction(0)) - c * val
                    if w:
                        row[col] = w
                    else:
                        row.pop(col, None)
        self.rows[p] = v
        return p

    @property
    def rank(self) -> int:
        return len(self.rows)

    def sorted_rows(self) -> list[tuple[int, dict]]:
        return sorted(self.rows.items())
