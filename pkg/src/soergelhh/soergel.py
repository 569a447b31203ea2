"""Bott-Samelson bimodules as free left modules with right-action matrices.

A bimodule M over S = Q[x_1..x_n] is stored through a basis of M as a free
left S-module: a list of basis degrees and, for each variable x_k, the
matrix R_k with entry (a, b) giving the coefficient of basis element a in
(basis element b) * x_k.  Left multiplication is coefficientwise, so the
whole bimodule structure is the commuting family R_1, ..., R_n.

The elementary bimodule attached to a simple transposition s_i is built by
one induction step M -> M tensor (over the s_i-invariant subring) S, shifted
so its generator sits in degree -1.  Iterating over a word of simple
indices gives the Bott-Samelson bimodule of that word, left-free of rank
2^length.  Tensor products over S, spaces of bimodule maps of a fixed
degree, and structural validation live here as well.

Grading shift convention: (M[a])^i = M^{i+a}, so the unit bimodule S[a]
has basis degree -a.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Optional, Sequence

from .groundring import DimensionMismatch, Poly, invariant_split, parse_poly, poly_to_str
from .linalg import FracEchelon, kernel_basis, sparse_rref

__all__ = [
    "SoergelBimodule",
    "BimoduleMap",
    "ValidationReport",
    "unit_bimodule",
    "induct_through_s",
    "build_bs",
    "tensor_over_S",
    "direct_sum",
    "hom_space",
    "validate",
    "mat_mul",
    "mat_identity",
    "bimodule_to_json",
    "bimodule_from_json",
]

Matrix = list  # list of lists of Poly


# ----------------------------------------------------------------------
# matrices over S
# ----------------------------------------------------------------------


def mat_zero(n_vars: int, nrows: int, ncols: int) -> Matrix:
    z = Poly.zero(n_vars)
    return [[z for _ in range(ncols)] for _ in range(nrows)]


def mat_identity(n_vars: int, size: int) -> Matrix:
    one = Poly.const(n_vars, 1)
    z = Poly.zero(n_vars)
    return [[one if i == j else z for j in range(size)] for i in range(size)]


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    nr, inner, nc = len(A), len(B), len(B[0]) if B else 0
    n_vars = A[0][0].n if A and A[0] else 0
    out = []
    for i in range(nr):
        Ai = A[i]
        row = []
        for j in range(nc):
            acc = Poly.zero(n_vars)
            for k in range(inner):
                a = Ai[k]
                if a.is_zero():
                    continue
                b = B[k][j]
                if b.is_zero():
                    continue
                acc = acc + a * b
            row.append(acc)
        out.append(row)
    return out


def mat_add(A: Matrix, B: Matrix) -> Matrix:
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_sub(A: Matrix, B: Matrix) -> Matrix:
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_scale(A: Matrix, c) -> Matrix:
    return [[a.scale(c) for a in row] for row in A]


def mat_eq(A: Matrix, B: Matrix) -> bool:
    return all(a == b for ra, rb in zip(A, B) for a, b in zip(ra, rb))


def mat_is_zero(A: Matrix) -> bool:
    return all(a.is_zero() for row in A for a in row)


class ActionEvaluator:
    """Evaluates polynomials at the commuting right-action matrices.

    Substitution f |-> f(R_1, ..., R_n) is a ring homomorphism from S to
    rank x rank matrices over S; powers and monomial products are cached
    per evaluator instance.
    """

    def __init__(self, module: "SoergelBimodule"):
        self.module = module
        self._powers: dict[tuple[int, int], Matrix] = {}
        self._monomials: dict[tuple, Matrix] = {}

    def _power(self, k: int, e: int) -> Matrix:
        key = (k, e)
        got = self._powers.get(key)
        if got is not None:
            return got
        if e == 0:
            out = mat_identity(self.module.n, self.module.rank)
        elif e == 1:
            out = [list(row) for row in self.module.right[k]]
        else:
            out = mat_mul(self._power(k, e - 1), self._power(k, 1))
        self._powers[key] = out
        return out

    def monomial(self, exps: tuple) -> Matrix:
        got = self._monomials.get(exps)
        if got is not None:
            return got
        out = mat_identity(self.module.n, self.module.rank)
        for k, e in enumerate(exps):
            if e:
                out = mat_mul(out, self._power(k, e))
        self._monomials[exps] = out
        return out

    def poly(self, f: Poly) -> Matrix:
        out = mat_zero(self.module.n, self.module.rank, self.module.rank)
        for exps, c in f.terms.items():
            out = mat_add(out, mat_scale(self.monomial(exps), c))
        return out


# ----------------------------------------------------------------------
# the bimodule type
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class SoergelBimodule:
    n: int
    rank: int
    degrees: tuple  # topological degree of each left basis element
    right: tuple  # n matrices, right[k][a][b] over S

    def shifted(self, a: int) -> "SoergelBimodule":
        """Grading shift [a]: every basis degree drops by a."""
        return SoergelBimodule(
            self.n, self.rank, tuple(d - a for d in self.degrees), self.right
        )

    def evaluator(self) -> ActionEvaluator:
        return ActionEvaluator(self)

    def __repr__(self) -> str:
        return f"SoergelBimodule(n={self.n}, rank={self.rank}, degrees={list(self.degrees)})"


def unit_bimodule(n: int, shift: int = 0) -> SoergelBimodule:
    """The regular bimodule S[shift]: rank one, both actions multiplication."""
    if n < 1:
        raise ValueError("need at least one variable")
    right = tuple(((Poly.variable(n, k + 1),),) for k in range(n))
    return SoergelBimodule(n, 1, (-shift,), right)


def induct_through_s(M: SoergelBimodule, i: int) -> SoergelBimodule:
    """One induction step: M tensor_{S^{s_i}} S, shifted by [1].

    The new basis is {m_a (x) 1, m_a (x) x_i}; a right multiplication by
    x_k lands in the slot polynomial x_i^e * x_k, which splits as
    f0 + f1*x_i with both parts s_i-invariant, and invariant scalars pass
    to M through the tensor as M's right action.
    """
    n, r = M.n, M.rank
    if not 1 <= i <= n - 1:
        raise IndexError(f"simple index {i} out of range 1..{n - 1}")
    ev = M.evaluator()
    xi = Poly.variable(n, i)
    degrees = tuple(d - 1 for d in M.degrees) + tuple(d + 1 for d in M.degrees)
    right = []
    for k in range(1, n + 1):
        xk = Poly.variable(n, k)
        f0a, f1a = invariant_split(xk, i)  # column block e = 0
        f0b, f1b = invariant_split(xi * xk, i)  # column block e = 1
        A, C = ev.poly(f0a), ev.poly(f1a)
        B, D = ev.poly(f0b), ev.poly(f1b)
        mat = mat_zero(n, 2 * r, 2 * r)
        for a in range(r):
            for b in range(r):
                mat[a][b] = A[a][b]
                mat[r + a][b] = C[a][b]
                mat[a][r + b] = B[a][b]
                mat[r + a][r + b] = D[a][b]
        right.append(tuple(tuple(row) for row in mat))
    return SoergelBimodule(n, 2 * r, degrees, tuple(right))


_BS_CACHE: dict[tuple, SoergelBimodule] = {}


def build_bs(word: Sequence[int], n: int) -> SoergelBimodule:
    """Bott-Samelson bimodule of a word of simple indices over GL_n."""
    key = (n, tuple(word))
    got = _BS_CACHE.get(key)
    if got is not None:
        return got
    M = unit_bimodule(n, 0)
    for i in word:
        M = induct_through_s(M, i)
    _BS_CACHE[key] = M
    return M


def tensor_over_S(M: SoergelBimodule, N: SoergelBimodule) -> SoergelBimodule:
    """M tensor_S N; basis m_a (x) n_c at index c*rank(M) + a.

    The right action of x_k is N's matrix with each polynomial entry
    evaluated at M's commuting right-action matrices (the entry has to
    pass through the tensor onto M).
    """
    if M.n != N.n:
        raise DimensionMismatch(f"variable counts differ: {M.n} vs {N.n}")
    n, rM, rN = M.n, M.rank, N.rank
    ev = M.evaluator()
    degrees = tuple(N.degrees[c] + M.degrees[a] for c in range(rN) for a in range(rM))
    right = []
    for k in range(n):
        mat = mat_zero(n, rM * rN, rM * rN)
        for d in range(rN):
            for c in range(rN):
                entry = N.right[k][d][c]
                if entry.is_zero():
                    continue
                block = ev.poly(entry)
                for b in range(rM):
                    for a in range(rM):
                        if not block[b][a].is_zero():
                            mat[d * rM + b][c * rM + a] = block[b][a]
        right.append(tuple(tuple(row) for row in mat))
    return SoergelBimodule(n, rM * rN, degrees, tuple(right))


def direct_sum(mods: Sequence[SoergelBimodule]) -> tuple[SoergelBimodule, list[int]]:
    """Block-diagonal direct sum; returns the sum and basis offsets."""
    if not mods:
        raise ValueError("empty direct sum")
    n = mods[0].n
    offsets = []
    total = 0
    for m in mods:
        if m.n != n:
            raise DimensionMismatch("variable counts differ in direct sum")
        offsets.append(total)
        total += m.rank
    degrees = tuple(d for m in mods for d in m.degrees)
    right = []
    for k in range(n):
        mat = mat_zero(n, total, total)
        for m, off in zip(mods, offsets):
            for a in range(m.rank):
                for b in range(m.rank):
                    e = m.right[k][a][b]
                    if not e.is_zero():
                        mat[off + a][off + b] = e
        right.append(tuple(tuple(row) for row in mat))
    return SoergelBimodule(n, total, degrees, tuple(right)), offsets


# ----------------------------------------------------------------------
# bimodule maps
# ----------------------------------------------------------------------


@dataclass
class BimoduleMap:
    source: SoergelBimodule
    target: SoergelBimodule
    degree: int
    matrix: Matrix  # shape rank(target) x rank(source)

    def compose(self, other: "BimoduleMap") -> "BimoduleMap":
        """self after other (source of self = target of other)."""
        if other.target is not self.source and other.target != self.source:
            raise ValueError("composition mismatch")
        return BimoduleMap(
            other.source,
            self.target,
            self.degree + other.degree,
            mat_mul(self.matrix, other.matrix),
        )

    def __add__(self, other: "BimoduleMap") -> "BimoduleMap":
        return BimoduleMap(
            self.source, self.target, self.degree, mat_add(self.matrix, other.matrix)
        )

    def scale(self, c) -> "BimoduleMap":
        return BimoduleMap(self.source, self.target, self.degree, mat_scale(self.matrix, c))

    def is_zero(self) -> bool:
        return mat_is_zero(self.matrix)

    def check(self) -> None:
        """Assert degree homogeneity and commutation with both actions."""
        M, N = self.source, self.target
        for c in range(N.rank):
            for a in range(M.rank):
                want = M.degrees[a] + self.degree - N.degrees[c]
                if not self.matrix[c][a].is_homogeneous_of(want):
                    raise AssertionError(
                        f"entry ({c},{a}) not homogeneous of degree {want}"
                    )
        for k in range(M.n):
            lhs = mat_mul([list(r) for r in N.right[k]], self.matrix)
            rhs = mat_mul(self.matrix, [list(r) for r in M.right[k]])
            if not mat_eq(lhs, rhs):
                raise AssertionError(f"map does not commute with x_{k + 1}")


def identity_map(M: SoergelBimodule) -> BimoduleMap:
    return BimoduleMap(M, M, 0, mat_identity(M.n, M.rank))


def zero_map(M: SoergelBimodule, N: SoergelBimodule, degree: int = 0) -> BimoduleMap:
    return BimoduleMap(M, N, degree, mat_zero(M.n, N.rank, M.rank))


def _monomials_of_degree(n: int, e: int) -> list[tuple]:
    """Exponent vectors with sum e, ascending lexicographic order."""
    if e == 0:
        return [(0,) * n]
    out = set()
    for combo in combinations_with_replacement(range(n), e):
        exps = [0] * n
        for k in combo:
            exps[k] += 1
        out.add(tuple(exps))
    return sorted(out)


def hom_space(M: SoergelBimodule, N: SoergelBimodule, d: int) -> list[BimoduleMap]:
    """Basis of the degree-d bimodule maps M -> N.

    Each matrix entry has a forced homogeneous degree; entries with a
    negative or odd forced degree vanish, the rest contribute one unknown
    per monomial.  Commutation with every right action gives the linear
    system; the returned basis comes from the reduced echelon form of its
    kernel on a canonical unknown ordering, so it is reproducible.
    """
    if M.n != N.n:
        raise DimensionMismatch(f"variable counts differ: {M.n} vs {N.n}")
    n = M.n
    unknowns: list[tuple[int, int, tuple]] = []
    by_entry: dict[tuple[int, int], list[tuple[int, tuple]]] = {}
    for c in range(N.rank):
        for a in range(M.rank):
            delta = M.degrees[a] + d - N.degrees[c]
            if delta < 0 or delta % 2:
                continue
            slots = []
            for exps in _monomials_of_degree(n, delta // 2):
                slots.append((len(unknowns), exps))
                unknowns.append((c, a, exps))
            by_entry[(c, a)] = slots
    if not unknowns:
        return []

    rows: dict[tuple, dict[int, Fraction]] = {}

    def accumulate(eq_head, poly: Poly, u: int, sign: int) -> None:
        for exps, coef in poly.terms.items():
            key = eq_head + (exps,)
            row = rows.setdefault(key, {})
            val = row.get(u, Fraction(0)) + sign * coef
            if val:
                row[u] = val
            else:
                del row[u]

    for k in range(n):
        RN, RM = N.right[k], M.right[k]
        # (R^N_k F)[c][a] = sum_b RN[c][b] F[b][a]
        for (b, a), slots in by_entry.items():
            for c in range(N.rank):
                coefpoly = RN[c][b]
                if coefpoly.is_zero():
                    continue
                for u, exps in slots:
                    accumulate((k, c, a), coefpoly * Poly.monomial(n, exps), u, 1)
        # (F R^M_k)[c][a] = sum_b F[c][b] RM[b][a]
        for (c, b), slots in by_entry.items():
            for a in range(M.rank):
                coefpoly = RM[b][a]
                if coefpoly.is_zero():
                    continue
                for u, exps in slots:
                    accumulate((k, c, a), coefpoly * Poly.monomial(n, exps), u, -1)

    rref = sparse_rref(rows[k] for k in sorted(rows))
    basis = kernel_basis(rref, len(unknowns))
    out = []
    for vec in basis:
        mat = mat_zero(n, N.rank, M.rank)
        for u, coef in vec.items():
            c, a, exps = unknowns[u]
            mat[c][a] = mat[c][a] + Poly.monomial(n, exps, coef)
        out.append(BimoduleMap(M, N, d, mat))
    return out


# ----------------------------------------------------------------------
# validation and serialization
# ----------------------------------------------------------------------


@dataclass
class ValidationReport:
    ok: bool
    failures: list = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def validate(M: SoergelBimodule) -> ValidationReport:
    """Check commutation of the right actions and entry homogeneity."""
    failures = []
    for k in range(M.n):
        mat = M.right[k]
        if len(mat) != M.rank or any(len(row) != M.rank for row in mat):
            failures.append(f"matrix {k + 1} has wrong shape")
    if not failures:
        for a in range(M.rank):
            for b in range(M.rank):
                for k in range(M.n):
                    e = M.right[k][a][b]
                    want = M.degrees[b] + 2 - M.degrees[a]
                    if not e.is_homogeneous_of(want):
                        failures.append(
                            f"entry ({a},{b}) of matrix {k + 1} not homogeneous"
                            f" of degree {want}"
                        )
        for j in range(M.n):
            for k in range(j + 1, M.n):
                A = [list(r) for r in M.right[j]]
                B = [list(r) for r in M.right[k]]
                if not mat_eq(mat_mul(A, B), mat_mul(B, A)):
                    failures.append(f"matrices {j + 1} and {k + 1} do not commute")
    return ValidationReport(not failures, failures)


def bimodule_to_json(M: SoergelBimodule) -> str:
    return json.dumps(
        {
            "n": M.n,
            "rank": M.rank,
            "basis_degrees": list(M.degrees),
            "right_action": [
                [[poly_to_str(M.right[k][a][b]) for b in range(M.rank)] for a in range(M.rank)]
                for k in range(M.n)
            ],
        }
    )


def bimodule_from_json(text: str) -> SoergelBimodule:
    data = json.loads(text)
    n, rank = data["n"], data["rank"]
    right = tuple(
        tuple(
            tuple(parse_poly(data["right_action"][k][a][b], n) for b in range(rank))
            for a in range(rank)
        )
        for k in range(n)
    )
    return SoergelBimodule(n, rank, tuple(data["basis_degrees"]), right)
