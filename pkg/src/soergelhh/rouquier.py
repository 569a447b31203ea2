"""Braid complexes, simplification, and triply graded link homology.

A braid letter maps to a two-term complex: the elementary bimodule B_i in
homological degree 0, with the unit bimodule S[-1] mapping in from degree
-1 for a positive crossing, or S[1] receiving the multiplication map in
degree +1 for a negative one; both differentials are the unique (up to
scalar) degree-0 maps, fixed here by their echelon-form representatives.
Tensoring the letter complexes over S gives the braid complex, with the
Koszul sign (-1)^{left homological degree} on the right differential.

Every term is a direct sum of shifted Bott-Samelson bimodules tracked as
(word, shift) summands.  Simplification does two homotopy-preserving
moves until neither applies:

* quadratic rewrite: a summand whose word repeats a letter in adjacent
  positions splits as BS(..i i..) = BS(..i..)[1] + BS(..i..)[-1], through
  the invariant-basis decomposition of the shared tensor slot (the four
  structure maps are constant 0/1 matrices);
* Gaussian cancellation: a differential component between summands that
  is an isomorphism (equal degree multisets and an invertible constant
  block; the determinant of a degree-0 map is itself constant) removes
  the pair and corrects the neighbouring components.

The triply graded table of a braid closure applies Hochschild homology
termwise, gradewise, and takes homology of the resulting rational
complexes in the homological direction.  Tables are normalized by a
monomial shift affine in the writhe and strand count, with constants
calibrated once on an unknot family and frozen in `calibration`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from . import calibration
from .groundring import LaurentSeries2, Poly
from .koszul import HochschildSlices, induced_map_on_hh
from .linalg import FracEchelon
from .soergel import (
    BimoduleMap,
    SoergelBimodule,
    build_bs,
    direct_sum,
    hom_space,
    mat_identity,
    mat_is_zero,
    mat_mul,
    mat_scale,
    mat_sub,
    mat_zero,
    unit_bimodule,
)

__all__ = [
    "BraidWord",
    "BimoduleComplex",
    "TriplyGradedTable",
    "TruncationError",
    "crossing_complex",
    "tensor_complexes",
    "gaussian_eliminate",
    "braid_complex",
    "kr_homology",
    "euler_characteristic",
    "normalize",
    "triply_to_json",
    "triply_from_json",
]


class TruncationError(ValueError):
    """The requested cutoff cannot support the requested computation."""


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple

    def __post_init__(self):
        if self.strands < 1:
            raise ValueError("need at least one strand")
        for x in self.letters:
            if x == 0:
                raise ValueError("letters must be nonzero")
            if abs(x) > self.strands - 1:
                raise ValueError(
                    f"letter {x} out of range for {self.strands} strands"
                )

    @property
    def writhe(self) -> int:
        return sum(1 if x > 0 else -1 for x in self.letters)

    def __str__(self) -> str:
        return " ".join(str(x) for x in self.letters) if self.letters else "(empty)"


# ----------------------------------------------------------------------
# complexes of summand lists
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class Summand:
    """A shifted Bott-Samelson bimodule BS(word)[shift]."""

    word: tuple
    shift: int

    def module(self, n: int) -> SoergelBimodule:
        return build_bs(self.word, n).shifted(self.shift)


@dataclass
class BimoduleComplex:
    n: int
    terms: dict  # homological index -> list[Summand]
    diffs: dict  # j -> {(target idx, source idx): Matrix}, term j -> term j+1

    def degrees(self) -> list:
        return sorted(self.terms)

    def term_rank(self, j: int) -> int:
        return sum(1 << len(s.word) for s in self.terms.get(j, []))

    def summand_module(self, j: int, idx: int) -> SoergelBimodule:
        return self.terms[j][idx].module(self.n)

    def component(self, j: int, tb: int, sa: int):
        return self.diffs.get(j, {}).get((tb, sa))

    def verify_d2(self) -> None:
        """Exact check that consecutive differentials compose to zero."""
        for j in self.degrees():
            if j + 1 not in self.terms or j + 2 not in self.terms:
                continue
            d0 = self.diffs.get(j, {})
            d1 = self.diffs.get(j + 1, {})
            for s, S in enumerate(self.terms[j]):
                for t, T in enumerate(self.terms[j + 2]):
                    acc = None
                    for m, M in enumerate(self.terms[j + 1]):
                        a = d0.get((m, s))
                        b = d1.get((t, m))
                        if a is None or b is None:
                            continue
                        prod = mat_mul(b, a)
                        acc = prod if acc is None else [
                            [x + y for x, y in zip(r1, r2)]
                            for r1, r2 in zip(acc, prod)
                        ]
                    if acc is not None and not mat_is_zero(acc):
                        raise AssertionError(
                            f"d.d nonzero from term {j} summand {s} to {t}"
                        )

    def verify_degrees(self) -> None:
        """Every differential entry homogeneous of its forced degree 0 slot."""
        for j, comps in self.diffs.items():
            for (tb, sa), mat in comps.items():
                A = self.summand_module(j, sa)
                B = self.summand_module(j + 1, tb)
                for c in range(B.rank):
                    for a in range(A.rank):
                        want = A.degrees[a] - B.degrees[c]
                        if not mat[c][a].is_homogeneous_of(want):
                            raise AssertionError(
                                f"component ({j},{tb},{sa}) entry ({c},{a})"
                                f" not homogeneous of degree {want}"
                            )


def _unique_map(maps: list, what: str) -> BimoduleMap:
    if len(maps) != 1:
        raise AssertionError(f"{what}: expected a one-dimensional map space, got {len(maps)}")
    return maps[0]


def crossing_complex(i: int, sign: int, n: int) -> BimoduleComplex:
    """The two-term complex of one braid crossing.

    Positive: S[-1] -> B_i placed in degrees (-1, 0); negative:
    B_i -> S[1] in degrees (0, +1).  B_i sits in homological degree 0 for
    both signs, so inverse crossings cancel to degree 0.
    """
    if not 1 <= i <= n - 1:
        raise IndexError(f"crossing index {i} out of range 1..{n - 1}")
    B = build_bs((i,), n)
    if sign > 0:
        S = unit_bimodule(n, -1)
        f = _unique_map(hom_space(S, B, 0), "unit map into B")
        terms = {-1: [Summand((), -1)], 0: [Summand((i,), 0)]}
        diffs = {-1: {(0, 0): f.matrix}}
    else:
        S = unit_bimodule(n, 1)
        f = _unique_map(hom_space(B, S, 0), "multiplication map out of B")
        terms = {0: [Summand((i,), 0)], 1: [Summand((), 1)]}
        diffs = {0: {(0, 0): f.matrix}}
    return BimoduleComplex(n, terms, diffs)


def tensor_complexes(C: BimoduleComplex, D: BimoduleComplex) -> BimoduleComplex:
    """Total complex of the double complex C (x) D over S.

    Summand (p, c) (x) (q, d) sits in degree p + q with word and shift
    concatenated/added; the differential is d_C (x) id + (-1)^p id (x) d_D.
    """
    if C.n != D.n:
        raise ValueError("strand algebra mismatch")
    n = C.n
    index: dict = {}
    terms: dict = {}
    for m in range(
        min(C.degrees()) + min(D.degrees()), max(C.degrees()) + max(D.degrees()) + 1
    ):
        lst = []
        for p in C.degrees():
            q = m - p
            if q not in D.terms:
                continue
            for ci, cs in enumerate(C.terms[p]):
                for di, ds in enumerate(D.terms[q]):
                    index[(p, q, ci, di)] = (m, len(lst))
                    lst.append(Summand(cs.word + ds.word, cs.shift + ds.shift))
        if lst:
            terms[m] = lst
    diffs: dict = {}

    def add_component(j, tb, sa, mat):
        comps = diffs.setdefault(j, {})
        old = comps.get((tb, sa))
        comps[(tb, sa)] = mat if old is None else [
            [x + y for x, y in zip(r1, r2)] for r1, r2 in zip(old, mat)
        ]

    for (p, q, ci, di), (m, src) in index.items():
        cs, ds = C.terms[p][ci], D.terms[q][di]
        M = cs.module(n)
        N = ds.module(n)
        # d_C (x) id
        for (tb, sa), F in C.diffs.get(p, {}).items():
            if sa != ci:
                continue
            tgt_key = (p + 1, q, tb, di)
            if tgt_key not in index:
                continue
            _, tgt = index[tgt_key]
            Mp = C.terms[p + 1][tb].module(n)
            mat = mat_zero(n, Mp.rank * N.rank, M.rank * N.rank)
            for c in range(N.rank):
                for b in range(Mp.rank):
                    for a in range(M.rank):
                        e = F[b][a]
                        if not e.is_zero():
                            mat[c * Mp.rank + b][c * M.rank + a] = e
            add_component(m, tgt, src, mat)
        # (-1)^p id (x) d_D
        sign = 1 if p % 2 == 0 else -1
        ev = M.evaluator()
        for (tb, sa), G in D.diffs.get(q, {}).items():
            if sa != di:
                continue
            tgt_key = (p, q + 1, ci, tb)
            if tgt_key not in index:
                continue
            _, tgt = index[tgt_key]
            Np = D.terms[q + 1][tb].module(n)
            mat = mat_zero(n, M.rank * Np.rank, M.rank * N.rank)
            for cp in range(Np.rank):
                for c in range(N.rank):
                    entry = G[cp][c]
                    if entry.is_zero():
                        continue
                    block = ev.poly(entry)
                    for b in range(M.rank):
                        for a in range(M.rank):
                            v = block[b][a]
                            if not v.is_zero():
                                mat[cp * M.rank + b][c * M.rank + a] = (
                                    v.scale(sign)
                                )
            add_component(m, tgt, src, mat)
    out = BimoduleComplex(n, terms, diffs)
    return out


# ----------------------------------------------------------------------
# simplification
# ----------------------------------------------------------------------


def _split_maps(word: tuple, p: int):
    """Index maps for BS(word)[.] = U[+1] (+) V[-1] at adjacent equal letters.

    The shared slot between factors p and p+1 decomposes into invariant
    multiples of 1 and of x_i; in the iterated-induction basis the four
    structure maps are the 0/1 coordinate maps computed here.  Returns
    (new_word, proj_U, inc_U, proj_V, inc_V) with projections as
    {new index: old index} and inclusions the same pairs reversed.
    """
    m = len(word)
    new_word = word[:p] + word[p + 1 :]
    lowbits = p
    pairs_u = []
    pairs_v = []
    for old in range(1 << m):
        low = old & ((1 << lowbits) - 1)
        e = (old >> lowbits) & 3
        high = old >> (lowbits + 2)
        b, c = e & 1, e >> 1
        new = low | (c << lowbits) | (high << (lowbits + 1))
        if b == 0:
            pairs_u.append((new, old))
        else:
            pairs_v.append((new, old))
    return new_word, dict(pairs_u), dict(pairs_v)


def _perm_matrix(n_vars: int, nrows: int, ncols: int, pairs: dict) -> list:
    mat = mat_zero(n_vars, nrows, ncols)
    one = Poly.const(n_vars, 1)
    for r, c in pairs.items():
        mat[r][c] = one
    return mat


def _find_adjacent_pair(C: BimoduleComplex):
    for j in C.degrees():
        for idx, s in enumerate(C.terms[j]):
            for p in range(len(s.word) - 1):
                if s.word[p] == s.word[p + 1]:
                    return j, idx, p
    return None


def _apply_split(C: BimoduleComplex, j: int, idx: int, p: int) -> None:
    """Replace summand (j, idx) by its two halves, in place."""
    n = C.n
    s = C.terms[j][idx]
    new_word, proj_u, proj_v = _split_maps(s.word, p)
    r_old = 1 << len(s.word)
    r_new = 1 << len(new_word)
    U = Summand(new_word, s.shift + 1)
    V = Summand(new_word, s.shift - 1)
    piU = _perm_matrix(n, r_new, r_old, proj_u)
    piV = _perm_matrix(n, r_new, r_old, proj_v)
    incU = _perm_matrix(n, r_old, r_new, {o: nw for nw, o in proj_u.items()})
    incV = _perm_matrix(n, r_old, r_new, {o: nw for nw, o in proj_v.items()})

    old_terms = C.terms[j]
    C.terms[j] = old_terms[:idx] + [U, V] + old_terms[idx + 1 :]

    def remap(t):  # summand index translation for untouched summands
        return t if t < idx else t + 1

    new_out = {}
    for (tb, sa), mat in C.diffs.get(j, {}).items():
        if sa == idx:
            new_out[(tb, idx)] = mat_mul(mat, incU)
            new_out[(tb, idx + 1)] = mat_mul(mat, incV)
        else:
            new_out[(tb, remap(sa))] = mat
    if new_out:
        C.diffs[j] = new_out
    elif j in C.diffs:
        del C.diffs[j]

    new_in = {}
    for (tb, sa), mat in C.diffs.get(j - 1, {}).items():
        if tb == idx:
            new_in[(idx, sa)] = mat_mul(piU, mat)
            new_in[(idx + 1, sa)] = mat_mul(piV, mat)
        else:
            new_in[(remap(tb), sa)] = mat
    if new_in:
        C.diffs[j - 1] = new_in
    elif j - 1 in C.diffs:
        del C.diffs[j - 1]


def _constant_part(mat, A: SoergelBimodule, B: SoergelBimodule):
    """Rational matrix of the degree-0 entries of a degree-0 component."""
    out = []
    for c in range(B.rank):
        row = []
        for a in range(A.rank):
            row.append(mat[c][a].constant_term())
        out.append(row)
    return out


def _invert_rational(mat) -> Optional[list]:
    """Exact inverse of a square rational matrix, or None if singular."""
    size = len(mat)
    ech = FracEchelon()
    for r in range(size):
        row = {c: Fraction(mat[r][c]) for c in range(size) if mat[r][c]}
        row[size + r] = Fraction(1)
        ech.insert(row)
    if ech.rank < size:
        return None
    inv = [[Fraction(0)] * size for _ in range(size)]
    for p, row in ech.sorted_rows():
        if p >= size:
            return None
        for c in range(size):
            inv[p][c] = row.get(size + c, Fraction(0))
    return inv


def _invert_component(mat, A: SoergelBimodule, B: SoergelBimodule) -> Optional[list]:
    """Inverse over S of an isomorphism component, or None.

    A degree-0 map has homogeneous determinant of degree zero, hence a
    rational number; the map is invertible over S exactly when the
    constant part is invertible over Q.  The inverse is the finite
    Neumann series around that constant part (the positive-degree tail is
    nilpotent for grading reasons).
    """
    if A.rank != B.rank or sorted(A.degrees) != sorted(B.degrees):
        return None
    const = _constant_part(mat, A, B)
    inv0 = _invert_rational(const)
    if inv0 is None:
        return None
    n = A.n
    P0inv = [[Poly.const(n, inv0[r][c]) for c in range(A.rank)] for r in range(A.rank)]
    plus = [
        [
            mat[r][c] - Poly.const(n, const[r][c])
            for c in range(A.rank)
        ]
        for r in range(B.rank)
    ]
    if all(e.is_zero() for row in plus for e in row):
        return P0inv
    out = [row[:] for row in P0inv]
    term = P0inv
    spread = max(A.degrees) - min(A.degrees)
    for _ in range(spread // 2 + 1):
        term = mat_scale(mat_mul(mat_mul(P0inv, plus), term), -1)
        # term = (-P0inv plus)^k P0inv accumulates the Neumann series
        if mat_is_zero(term):
            break
        out = [[x + y for x, y in zip(r1, r2)] for r1, r2 in zip(out, term)]
    check = mat_mul(mat, out)
    ident = mat_identity(n, A.rank)
    if not all(
        (check[r][c] == ident[r][c]) for r in range(A.rank) for c in range(A.rank)
    ):
        return None
    return out


def _find_cancellation(C: BimoduleComplex):
    for j in sorted(C.diffs):
        comps = C.diffs[j]
        for (tb, sa) in sorted(comps):
            A = C.summand_module(j, sa)
            B = C.summand_module(j + 1, tb)
            if A.rank != B.rank or sorted(A.degrees) != sorted(B.degrees):
                continue
            inv = _invert_component(comps[(tb, sa)], A, B)
            if inv is not None:
                return j, sa, tb, inv
    return None


def _apply_cancellation(C: BimoduleComplex, j: int, sa: int, tb: int, inv) -> None:
    comps = C.diffs.get(j, {})
    others_src = [s for s in range(len(C.terms[j])) if s != sa]
    others_tgt = [t for t in range(len(C.terms[j + 1])) if t != tb]
    # corrected differential on the survivors
    corrections = {}
    for s in others_src:
        delta = comps.get((tb, s))
        if delta is None:
            continue
        for t in others_tgt:
            gamma = comps.get((t, sa))
            if gamma is None:
                continue
            upd = mat_mul(mat_mul(gamma, inv), delta)
            corrections[(t, s)] = upd
    src_map = {s: k for k, s in enumerate(others_src)}
    tgt_map = {t: k for k, t in enumerate(others_tgt)}
    new_comps = {}
    for (t, s), mat in comps.items():
        if s == sa or t == tb:
            continue
        new_comps[(tgt_map[t], src_map[s])] = mat
    for (t, s), upd in corrections.items():
        key = (tgt_map[t], src_map[s])
        old = new_comps.get(key)
        if old is None:
            old = mat_zero(C.n, len(upd), len(upd[0]))
        new_comps[key] = mat_sub(old, upd)
    if new_comps:
        C.diffs[j] = new_comps
    elif j in C.diffs:
        del C.diffs[j]
    # incoming and outgoing components just drop the removed summands
    if j - 1 in C.diffs:
        pruned = {
            (src_map_t, s): m
            for (t, s), m in C.diffs[j - 1].items()
            if t != sa
            for src_map_t in [src_map[t]]
        }
        if pruned:
            C.diffs[j - 1] = pruned
        else:
            del C.diffs[j - 1]
    if j + 1 in C.diffs:
        pruned = {
            (t, tgt_map_s): m
            for (t, s), m in C.diffs[j + 1].items()
            if s != tb
            for tgt_map_s in [tgt_map[s]]
        }
        if pruned:
            C.diffs[j + 1] = pruned
        else:
            del C.diffs[j + 1]
    C.terms[j] = [C.terms[j][s] for s in others_src]
    C.terms[j + 1] = [C.terms[j + 1][t] for t in others_tgt]
    for jj in (j, j + 1):
        if not C.terms[jj]:
            del C.terms[jj]


def gaussian_eliminate(C: BimoduleComplex) -> BimoduleComplex:
    """Simplify a complex by quadratic rewrites and Gaussian cancellation.

    Deterministic scan order (lowest homological degree first, then
    summand indices); the output is homotopy equivalent to the input and
    already-reduced complexes come back unchanged.
    """
    C = BimoduleComplex(
        C.n,
        {j: list(lst) for j, lst in C.terms.items()},
        {j: dict(m) for j, m in C.diffs.items()},
    )
    while True:
        spot = _find_adjacent_pair(C)
        if spot is not None:
            _apply_split(C, *spot)
            continue
        hit = _find_cancellation(C)
        if hit is None:
            return C
        _apply_cancellation(C, *hit)


# ----------------------------------------------------------------------
# the triply graded table
# ----------------------------------------------------------------------


@dataclass
class TriplyGradedTable:
    """Dimensions over (Hochschild exponent a, q-exponent, homological t)."""

    entries: dict  # (i, Fraction qexp, t) -> dim
    qmax: Fraction
    shift: dict = field(default_factory=lambda: {"a": 0, "q": Fraction(0), "t": 0})

    def dim(self, i: int, qexp, t: int) -> int:
        return self.entries.get((i, Fraction(qexp), t), 0)

    def shifted(self, da, dq, dt) -> "TriplyGradedTable":
        """Monomial shift; fractional a/t offsets are allowed and simply
        move the table onto a shifted index lattice."""
        da, dq, dt = Fraction(da), Fraction(dq), Fraction(dt)
        if da.denominator == 1:
            da = int(da)
        if dt.denominator == 1:
            dt = int(dt)
        return TriplyGradedTable(
            {(i + da, q + dq, t + dt): m for (i, q, t), m in self.entries.items()},
            self.qmax + dq,
            {
                "a": self.shift["a"] + da,
                "q": self.shift["q"] + dq,
                "t": self.shift["t"] + dt,
            },
        )

    def equal_through(self, other: "TriplyGradedTable", qbound) -> bool:
        qbound = Fraction(qbound)
        keys = set(self.entries) | set(other.entries)
        for k in keys:
            if k[1] <= qbound and self.entries.get(k, 0) != other.entries.get(k, 0):
                return False
        return True


def triply_to_json(t: TriplyGradedTable) -> str:
    entries = [
        {"a": i, "q": str(q), "t": k, "dim": m}
        for (i, q, k), m in sorted(t.entries.items())
    ]
    return json.dumps(
        {
            "entries": entries,
            "shift": {
                "a": t.shift["a"],
                "q": str(t.shift["q"]),
                "t": t.shift["t"],
            },
            "cutoff": str(t.qmax),
        }
    )


def triply_from_json(text: str) -> TriplyGradedTable:
    data = json.loads(text)
    entries = {
        (e["a"], Fraction(e["q"]), e["t"]): e["dim"] for e in data["entries"]
    }
    shift = {
        "a": data["shift"]["a"],
        "q": Fraction(data["shift"]["q"]),
        "t": data["shift"]["t"],
    }
    return TriplyGradedTable(entries, Fraction(data["cutoff"]), shift)


def _assemble_terms(C: BimoduleComplex):
    """Direct-sum module and full differential matrix per homological degree."""
    degs = C.degrees()
    modules = {}
    offsets = {}
    for j in degs:
        mods = [s.module(C.n) for s in C.terms[j]]
        modules[j], offsets[j] = direct_sum(mods)
    maps = {}
    for j in degs:
        if j + 1 not in modules or j not in C.diffs:
            continue
        src, tgt = modules[j], modules[j + 1]
        mat = mat_zero(C.n, tgt.rank, src.rank)
        for (tb, sa), comp in C.diffs[j].items():
            roff = offsets[j + 1][tb]
            coff = offsets[j][sa]
            for r in range(len(comp)):
                for c in range(len(comp[0])):
                    if not comp[r][c].is_zero():
                        mat[roff + r][coff + c] = comp[r][c]
        maps[j] = BimoduleMap(src, tgt, 0, mat)
    return modules, maps


def braid_complex(b: BraidWord, eliminate: bool = True) -> BimoduleComplex:
    """The (optionally simplified) bimodule complex of a braid word."""
    n = b.strands
    C = BimoduleComplex(n, {0: [Summand((), 0)]}, {})
    for letter in b.letters:
        X = crossing_complex(abs(letter), 1 if letter > 0 else -1, n)
        C = tensor_complexes(C, X)
        if eliminate:
            C = gaussian_eliminate(C)
    return C


def kr_homology(
    b: BraidWord, cutoff: int, eliminate: bool = True
) -> TriplyGradedTable:
    """Raw triply graded homology table of the closure of b.

    `cutoff` bounds the q-exponent (topological degree 2*cutoff); entries
    with q-exponent <= cutoff are exact.  Use `normalize` to apply the
    frozen invariance shifts.
    """
    C = braid_complex(b, eliminate=eliminate)
    modules, maps = _assemble_terms(C)
    degs = sorted(modules)
    top = 2 * cutoff
    for j in degs:
        if min(modules[j].degrees) > top:
            raise TruncationError(
                f"cutoff {cutoff} too small: term {j} starts in degree"
                f" {min(modules[j].degrees)}"
            )
    slices = {j: HochschildSlices(modules[j], top) for j in degs}
    induced = {}
    for j in degs:
        if j in maps:
            induced[j] = induced_map_on_hh(
                maps[j], top, slices[j], slices[j + 1]
            )
    n = b.strands
    entries = {}
    dmin = min(min(modules[j].degrees) for j in degs)
    parity = dmin % 2
    for i in range(n + 1):
        for d in range(dmin, top + 1):
            if d % 2 != parity:
                continue
            dims = {}
            ranks = {}
            for j in degs:
                dims[j] = slices[j].homology(i, d).dim
            for j in degs:
                mat = induced.get(j, {}).get((i, d))
                if mat is None or not mat or not mat[0]:
                    ranks[j] = 0
                    continue
                ech = FracEchelon()
                cols = len(mat[0])
                for c in range(cols):
                    vec = {r: mat[r][c] for r in range(len(mat)) if mat[r][c]}
                    if vec:
                        ech.insert(vec)
                ranks[j] = ech.rank
            for j in degs:
                h = dims[j] - ranks.get(j, 0) - ranks.get(j - 1, 0)
                if h:
                    entries[(i, Fraction(d, 2), j)] = h
    return TriplyGradedTable(entries, Fraction(cutoff))


def normalize(t: TriplyGradedTable, b: BraidWord) -> TriplyGradedTable:
    """Apply the frozen monomial shift making closures braid invariants.

    The exponents are affine in the writhe e and strand count n, anchored
    so the one-strand empty braid is fixed; constants live in
    `calibration` with the procedure that produced them.
    """
    e, n = b.writhe, b.strands
    da = calibration.affine(calibration.SHIFT_A, e, n)
    dq = calibration.affine(calibration.SHIFT_Q, e, n)
    dt = calibration.affine(calibration.SHIFT_T, e, n)
    return t.shifted(da, dq, dt)


def euler_characteristic(t: TriplyGradedTable) -> LaurentSeries2:
    """Graded Euler characteristic: substitute -1 for the homological variable.

    Requires an integer homological lattice; tables normalized onto a
    half-integer lattice (even-component closures) should be decategorified
    before normalization.
    """
    entries: dict = {}
    for (i, q, tt), m in t.entries.items():
        if isinstance(tt, Fraction) or isinstance(i, Fraction):
            raise ValueError(
                "table sits on a fractional lattice; take the Euler"
                " characteristic of the raw table instead"
            )
        c = m if tt % 2 == 0 else -m
        key = (i, q)
        v = entries.get(key, 0) + c
        if v:
            entries[key] = v
        else:
            entries.pop(key, None)
    return LaurentSeries2(entries, t.qmax)
