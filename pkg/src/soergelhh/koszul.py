"""Hochschild homology of a bimodule via the Koszul complex, gradewise.

For a bimodule M presented as a free left module with right-action
matrices R_k, the Koszul complex has terms M (x) Wedge^i(Q^n) with basis
m_a (x) theta_I over |I| = i, and differential contracting theta_k into
the operator x_k*Id - R_k, with signs alternating in the position of k
inside I.  The operators commute, so the square of the differential is
exactly zero.  Wedge degree is the Hochschild grading; a basis element
m_a (x) theta_I sits in polynomial degree degrees[a] + 2|I|.

Homology is extracted degree by degree: the topological-degree-d slice of
each term is a finite dimensional rational vector space spanned by pairs
(basis element, monomial), and the sliced differential is a sparse exact
matrix.  Ranks come from fraction-free elimination; when induced maps are
needed the kernel-mod-image representatives are fixed by reduced echelon
form on the canonical coordinate order, so everything downstream is
reproducible bit for bit.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

from .groundring import LaurentSeries2, Poly
from .linalg import FracEchelon, intify_rows, kernel_basis, sparse_rank_int, sparse_rref
from .soergel import BimoduleMap, SoergelBimodule, mat_identity, mat_mul, mat_sub, mat_scale, mat_zero, validate

__all__ = [
    "BigradedTable",
    "KoszulComplex",
    "koszul_complex",
    "hochschild_dims",
    "HochschildSlices",
    "induced_map_on_hh",
    "series_from_table",
    "freeness_check",
    "FreenessReport",
    "regrade",
    "table_to_json",
    "table_from_json",
]


# ----------------------------------------------------------------------
# bigraded dimension tables
# ----------------------------------------------------------------------


@dataclass
class BigradedTable:
    """Dimensions indexed by (Hochschild degree i, topological degree d)."""

    entries: dict
    cutoff: int
    warnings: list = field(default_factory=list)

    def dim(self, i: int, d: int) -> int:
        return self.entries.get((i, d), 0)

    def max_h(self) -> int:
        return max((i for i, _ in self.entries), default=0)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, BigradedTable)
            and self.entries == other.entries
            and self.cutoff == other.cutoff
        )


def table_to_json(t: BigradedTable) -> str:
    entries = [
        {"h": i, "p": d, "dim": m}
        for (i, d), m in sorted(t.entries.items())
    ]
    return json.dumps({"entries": entries, "cutoff": t.cutoff})


def table_from_json(text: str) -> BigradedTable:
    data = json.loads(text)
    entries = {(e["h"], e["p"]): e["dim"] for e in data["entries"]}
    return BigradedTable(entries, data["cutoff"])


def regrade(t: BigradedTable) -> BigradedTable:
    """Move (i, d) to (i, d - 2i): polynomial grading to weight grading.

    Pure reindexing, bijective on entries; the cutoff field is carried
    along unchanged.
    """
    return BigradedTable(
        {(i, d - 2 * i): m for (i, d), m in t.entries.items()}, t.cutoff, list(t.warnings)
    )


def regrade_inverse(t: BigradedTable) -> BigradedTable:
    return BigradedTable(
        {(i, d + 2 * i): m for (i, d), m in t.entries.items()}, t.cutoff, list(t.warnings)
    )


# ----------------------------------------------------------------------
# full Koszul complex (polynomial matrices; small inputs only)
# ----------------------------------------------------------------------


class KoszulComplex:
    """Terms and polynomial differential matrices of the Koszul complex.

    Term i has left-module basis m_a (x) theta_I at index I_idx*rank + a,
    over subsets I of size i in lexicographic order.  differential(i) maps
    term i to term i-1.
    """

    def __init__(self, module: SoergelBimodule):
        self.module = module
        self.n = module.n
        self.subsets = [list(combinations(range(self.n), i)) for i in range(self.n + 1)]

    def term_rank(self, i: int) -> int:
        if not 0 <= i <= self.n:
            return 0
        return self.module.rank * len(self.subsets[i])

    def basis_degrees(self, i: int) -> list:
        return [
            self.module.degrees[a] + 2 * i
            for _ in self.subsets[i]
            for a in range(self.module.rank)
        ]

    def differential(self, i: int):
        """Matrix of D_i: term i -> term i-1 over S."""
        M = self.module
        n, r = self.n, M.rank
        src, tgt = self.subsets[i], self.subsets[i - 1]
        tgt_index = {I: t for t, I in enumerate(tgt)}
        out = mat_zero(n, r * len(tgt), r * len(src))
        for s, I in enumerate(src):
            for pos, k in enumerate(I):
                sign = 1 if pos % 2 == 0 else -1
                J = I[:pos] + I[pos + 1 :]
                t = tgt_index[J]
                xk = Poly.variable(n, k + 1)
                for a in range(r):
                    for b in range(r):
                        val = -M.right[k][b][a]
                        if a == b:
                            val = val + xk
                        if not val.is_zero():
                            out[t * r + b][s * r + a] = out[t * r + b][s * r + a] + val.scale(sign)
        return out


def koszul_complex(M: SoergelBimodule) -> KoszulComplex:
    rep = validate(M)
    if not rep.ok:
        raise ValueError(f"invalid bimodule: {rep.failures[0]}")
    return KoszulComplex(M)


# ----------------------------------------------------------------------
# gradewise slices
# ----------------------------------------------------------------------

_MONOMIAL_CACHE: dict[tuple, list] = {}


def monomials_of(n: int, e: int) -> list:
    """Exponent vectors of sum e, ascending lexicographic, cached."""
    key = (n, e)
    got = _MONOMIAL_CACHE.get(key)
    if got is None:
        if n == 1:
            got = [(e,)]
        else:
            got = [
                (h,) + rest for h in range(e + 1) for rest in monomials_of(n - 1, e - h)
            ]
            got.sort()
        _MONOMIAL_CACHE[key] = got
    return got


class Slice:
    """Basis of the degree-d part of Koszul term i for one module.

    Coordinates are triples (subset index, module basis index, monomial),
    enumerated with subsets outermost and monomials in ascending
    lexicographic order; this fixed order is what makes echelon-form
    representatives canonical.
    """

    __slots__ = ("module", "i", "d", "blocks", "index", "coords", "size", "subsets")

    def __init__(self, module: SoergelBimodule, i: int, d: int, subsets):
        self.module = module
        self.i = i
        self.d = d
        self.subsets = subsets
        self.blocks = {}  # (I_idx, a) -> (offset, e)
        off = 0
        for I_idx in range(len(subsets)):
            for a in range(module.rank):
                rem = d - module.degrees[a] - 2 * i
                if rem < 0 or rem % 2:
                    continue
                e = rem // 2
                self.blocks[(I_idx, a)] = (off, e)
                off += len(monomials_of(module.n, e))
        self.size = off
        self.index = None  # built lazily
        self.coords = None

    def build_index(self):
        if self.index is None:
            idx = {}
            coords = [None] * self.size
            for (I_idx, a), (off, e) in self.blocks.items():
                for m_i, mono in enumerate(monomials_of(self.module.n, e)):
                    idx[(I_idx, a, mono)] = off + m_i
                    coords[off + m_i] = (I_idx, a, mono)
            self.index = idx
            self.coords = coords
        return self.index

    def coord_of(self, s: int):
        self.build_index()
        return self.coords[s]


class SliceContext:
    """Shared subset tables plus a cache of slices for one module."""

    def __init__(self, module: SoergelBimodule):
        self.module = module
        self.n = module.n
        self.subsets = [list(combinations(range(self.n), i)) for i in range(self.n + 1)]
        self.subset_index = [
            {I: t for t, I in enumerate(level)} for level in self.subsets
        ]
        self._slices: dict[tuple, Slice] = {}

    def slice(self, i: int, d: int) -> Slice:
        key = (i, d)
        got = self._slices.get(key)
        if got is None:
            subsets = self.subsets[i] if 0 <= i <= self.n else []
            got = Slice(self.module, i, d, subsets)
            self._slices[key] = got
        return got

    def diff_columns(self, i: int, d: int) -> list:
        """Columns of the sliced differential D_i at degree d.

        Returns a list of sparse vectors over the coordinates of the
        (i-1, d) slice, one per coordinate of the (i, d) slice.
        """
        M = self.module
        src = self.slice(i, d)
        tgt = self.slice(i - 1, d)
        tgt_idx = tgt.build_index()
        sub_index_tgt = self.subset_index[i - 1]
        cols = [dict() for _ in range(src.size)]
        for (I_idx, a), (off, e) in src.blocks.items():
            I = self.subsets[i][I_idx]
            monos = monomials_of(self.n, e)
            moves = []
            for pos, k in enumerate(I):
                sign = 1 if pos % 2 == 0 else -1
                J_idx = sub_index_tgt[I[:pos] + I[pos + 1 :]]
                # multiplication by x_k on the left: bump exponent k
                moves.append((k, sign, J_idx))
            for m_i, mono in enumerate(monos):
                col = cols[off + m_i]
                for k, sign, J_idx in moves:
                    bumped = list(mono)
                    bumped[k] += 1
                    t = tgt_idx.get((J_idx, a, tuple(bumped)))
                    if t is not None:
                        col[t] = col.get(t, Fraction(0)) + sign
                    for b in range(M.rank):
                        entry = M.right[k][b][a]
                        if entry.is_zero():
                            continue
                        for exps, c in entry.terms.items():
                            shifted = tuple(x + y for x, y in zip(mono, exps))
                            t2 = tgt_idx.get((J_idx, b, shifted))
                            if t2 is not None:
                                v = col.get(t2, Fraction(0)) - sign * c
                                if v:
                                    col[t2] = v
                                else:
                                    del col[t2]
                # drop exact zeros
                for t in [t for t, v in col.items() if not v]:
                    del col[t]
        return cols

    def diff_rank(self, i: int, d: int) -> int:
        cols = self.diff_columns(i, d)
        rows = intify_rows(c for c in cols if c)
        if not rows:
            return 0
        return sparse_rank_int(rows)


def hochschild_dims(M: SoergelBimodule, cutoff: int) -> BigradedTable:
    """Bigraded dimensions of HH_*(M) for topological degrees <= cutoff.

    For each degree the sliced complex is finite dimensional over Q and
    dim HH_i = dim(term_i) - rank(D_i) - rank(D_{i+1}), all ranks exact.
    """
    warnings = []
    if M.rank == 0 or not M.degrees:
        return BigradedTable({}, cutoff, ["empty module"])
    dmin = min(M.degrees)
    if cutoff < dmin:
        return BigradedTable({}, cutoff, ["cutoff below minimum basis degree"])
    if cutoff < max(M.degrees):
        warnings.append("cutoff below maximum basis degree; table may be empty in range")
    ctx = SliceContext(M)
    n = M.n
    parities = {d % 2 for d in M.degrees}
    entries = {}
    for d in range(dmin, cutoff + 1):
        if d % 2 not in parities:
            continue
        sizes = [ctx.slice(i, d).size for i in range(n + 1)]
        if not any(sizes):
            continue
        ranks = [0] * (n + 2)
        for i in range(1, n + 1):
            if sizes[i] and sizes[i - 1]:
                ranks[i] = ctx.diff_rank(i, d)
        for i in range(n + 1):
            dim = sizes[i] - ranks[i] - ranks[i + 1]
            if dim:
                entries[(i, d)] = dim
    return BigradedTable(entries, cutoff, warnings)


# ----------------------------------------------------------------------
# homology bases and induced maps
# ----------------------------------------------------------------------


class SliceHomology:
    """Canonical homology data of one (i, d) slice.

    The basis of HH_i(M)_d is the reduced echelon form of the kernel of
    the sliced D_i after reduction modulo the image of D_{i+1}; `coords`
    expresses any cycle in that basis.
    """

    __slots__ = ("dim", "im_ech", "hom_ech", "pivots")

    def __init__(self, im_ech: FracEchelon, hom_ech: FracEchelon):
        self.im_ech = im_ech
        self.hom_ech = hom_ech
        self.pivots = sorted(hom_ech.rows)
        self.dim = len(self.pivots)

    def representatives(self) -> list:
        return [self.hom_ech.rows[p] for p in self.pivots]

    def coords(self, vec: dict) -> list:
        r = self.im_ech.reduce(vec)
        r, combo = self.hom_ech.reduce_tracked(r)
        if r:
            raise ArithmeticError("vector is not a cycle modulo the image")
        return [combo.get(p, Fraction(0)) for p in self.pivots]


class HochschildSlices:
    """Lazily computed homology slices of one module up to a cutoff."""

    def __init__(self, module: SoergelBimodule, cutoff: int):
        self.module = module
        self.cutoff = cutoff
        self.ctx = SliceContext(module)
        self._hom: dict[tuple, SliceHomology] = {}

    def homology(self, i: int, d: int) -> SliceHomology:
        key = (i, d)
        got = self._hom.get(key)
        if got is not None:
            return got
        ctx = self.ctx
        n = self.module.n
        src = ctx.slice(i, d)
        im_ech = FracEchelon()
        if 0 <= i < n and src.size:
            for col in ctx.diff_columns(i + 1, d):
                if col:
                    im_ech.insert(col)
        hom_ech = FracEchelon()
        if src.size:
            if i >= 1 and ctx.slice(i - 1, d).size:
                rows: dict[int, dict] = {}
                for s, col in enumerate(ctx.diff_columns(i, d)):
                    for t, v in col.items():
                        rows.setdefault(t, {})[s] = v
                rref = sparse_rref(rows[t] for t in sorted(rows))
                kern = kernel_basis(rref, src.size)
            else:
                kern = [{c: Fraction(1)} for c in range(src.size)]
            for kv in kern:
                hom_ech.insert(im_ech.reduce(kv))
        got = SliceHomology(im_ech, hom_ech)
        self._hom[key] = got
        return got

    def dims_table(self) -> BigradedTable:
        """Dimension table from the slices computed so far is not enough;
        compute the full table directly."""
        return hochschild_dims(self.module, self.cutoff)


def map_slice_image(
    f: BimoduleMap,
    src_slice: Slice,
    tgt_slice: Slice,
    vec: dict,
) -> dict:
    """Push a slice vector through f (x) id on Koszul terms.

    Source coordinates (I, a, mono) map to sum over b of the terms of
    f.matrix[b][a] shifted onto (I, b, mono + exps); wedge data is
    untouched because f commutes with both actions.
    """
    tgt_idx = tgt_slice.build_index()
    # invert source offsets once per call
    out: dict[int, Fraction] = {}
    for s, c in vec.items():
        I_idx, a, mono = src_slice.coord_of(s)
        for b in range(f.target.rank):
            entry = f.matrix[b][a]
            if entry.is_zero():
                continue
            for exps, coef in entry.terms.items():
                shifted = tuple(x + y for x, y in zip(mono, exps))
                t = tgt_idx.get((I_idx, b, shifted))
                if t is not None:
                    v = out.get(t, Fraction(0)) + c * coef
                    if v:
                        out[t] = v
                    else:
                        del out[t]
    return out


def induced_map_on_hh(
    f: BimoduleMap,
    cutoff: int,
    source_slices: Optional[HochschildSlices] = None,
    target_slices: Optional[HochschildSlices] = None,
) -> dict:
    """Matrices of HH_i(f) on the canonical homology bases per (i, d).

    Returns {(i, d): matrix} with matrix[t][s] the coefficient of the
    t-th target basis class in the image of the s-th source class; (i, d)
    refers to the source grading, the target sits at (i, d + deg f).
    Keys appear only where both sides have nonzero homology.
    """
    if f.source.n != f.target.n:
        raise ValueError("variable counts differ")
    src = source_slices or HochschildSlices(f.source, cutoff)
    tgt = target_slices or HochschildSlices(f.target, cutoff + f.degree)
    out = {}
    n = f.source.n
    dmin = min(f.source.degrees, default=0)
    parities = {d % 2 for d in f.source.degrees}
    for i in range(n + 1):
        for d in range(dmin, cutoff + 1):
            if d % 2 not in parities:
                continue
            sh = src.homology(i, d)
            if sh.dim == 0:
                continue
            th = tgt.homology(i, d + f.degree)
            mat = [[Fraction(0)] * sh.dim for _ in range(th.dim)]
            if th.dim:
                s_slice = src.ctx.slice(i, d)
                t_slice = tgt.ctx.slice(i, d + f.degree)
                for s_i, rep in enumerate(sh.representatives()):
                    image = map_slice_image(f, s_slice, t_slice, rep)
                    for t_i, c in enumerate(th.coords(image)):
                        mat[t_i][s_i] = c
            out[(i, d)] = mat
    return out


# ----------------------------------------------------------------------
# series and freeness
# ----------------------------------------------------------------------


def series_from_table(
    t: BigradedTable, normalize: bool = False
) -> LaurentSeries2 | tuple:
    """Sum of a^i q^(d/2) dim over the table, truncated at q = cutoff/2.

    With normalize=True also divides by the monomial of the lowest term
    and returns (series, (a0, q0)) recording the discarded prefactor.
    """
    qmax = Fraction(t.cutoff, 2)
    entries = {}
    for (i, d), m in t.entries.items():
        entries[(i, Fraction(d, 2))] = Fraction(m)
    s = LaurentSeries2(entries, qmax)
    if not normalize:
        return s
    return s.normalize()


@dataclass
class FreenessReport:
    free: bool
    fiber: LaurentSeries2
    fiber_at_one: Fraction
    reason: str = ""

    def __bool__(self) -> bool:
        return self.free


def freeness_check(s: LaurentSeries2, n: int) -> FreenessReport:
    """Decide freeness over S from a truncated Hilbert series.

    Multiplies by (1-q)^n; a free module of finite fiber gives exactly the
    fiber polynomial, so the product must have nonnegative coefficients
    and vanish near the validity bound.  The window of width n+1 below
    the bound guards against geometric tails, which would populate every
    degree there.
    """
    if s.qmax is None:
        raise ValueError("freeness check needs a truncated series")
    poly = LaurentSeries2.one()
    one_minus_q = LaurentSeries2({(0, Fraction(0)): 1, (0, Fraction(1)): -1})
    for _ in range(n):
        poly = poly * one_minus_q
    prod = s * poly
    bound = s.qmax - n
    window_lo = bound - (n + 1)
    fiber_entries = {}
    free = True
    reason = ""
    for (a, q), c in prod.entries.items():
        if q > bound:
            continue
        if c < 0:
            free = False
            reason = f"negative coefficient {c} at a^{a} q^{q}"
        if q > window_lo:
            free = False
            if not reason:
                reason = f"nonzero coefficient at a^{a} q^{q} near the validity bound"
        else:
            fiber_entries[(a, q)] = c
    fiber = LaurentSeries2(fiber_entries, bound)
    return FreenessReport(free, fiber, fiber.eval_ones(), reason)
