"""Root-system combinatorics for finite Cartan types.

Positive roots are integer vectors in the simple-root basis, generated by
closing the simple roots under simple reflections; the height of a root
is its coordinate sum.  Weyl group elements act on root vectors; for type
A they can also be handed around as permutations in one-line notation.

This module computes, for an element w:

* the inversion multiset (heights of positive roots sent negative by w),
* the degrees k_i governing the smooth-case Hochschild Hilbert series
  prod (1 + a q^{k_i}) / (1 - q)^n, read off from the heights of the
  positive roots whose reflections lie below w in Bruhat order (with an
  applicability guard: multiplicities must be nonnegative and the
  reflection count must equal the length),
* the Poincare polynomial of the Bruhat interval [e, w] by subword
  enumeration, together with its factorization into q-integers, which is
  the independent cross-check for the degrees above,
* the 3412/4231 pattern-avoidance smoothness test in type A.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Optional, Sequence

from .groundring import LaurentSeries2

__all__ = [
    "RootSystemData",
    "WeylElement",
    "LemmaInapplicableError",
    "positive_roots",
    "inversion_set",
    "reflection_heights",
    "smooth_degrees",
    "smooth_hilbert_series",
    "is_smooth_typeA",
    "bruhat_poincare",
    "permutation_element",
    "longest_element",
]


class LemmaInapplicableError(ValueError):
    """The smooth-case degree count does not apply to this element."""


_CARTAN_BUILDERS = {}


def _cartan(letter: str, rank: int) -> list:
    """Cartan matrix C with C[i][j] = <alpha_j, alpha_i^vee>."""
    C = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]

    def link(i, j, cij=-1, cji=-1):
        C[i][j] = cij
        C[j][i] = cji

    if letter == "A":
        for i in range(rank - 1):
            link(i, i + 1)
    elif letter == "B":  # B_n: last simple root short
        if rank < 2:
            raise ValueError("B needs rank >= 2")
        for i in range(rank - 1):
            link(i, i + 1)
        C[rank - 2][rank - 1] = -2
    elif letter == "C":
        if rank < 2:
            raise ValueError("C needs rank >= 2")
        for i in range(rank - 1):
            link(i, i + 1)
        C[rank - 1][rank - 2] = -2
    elif letter == "D":
        if rank < 3:
            raise ValueError("D needs rank >= 3")
        for i in range(rank - 2):
            link(i, i + 1)
        link(rank - 3, rank - 1)
    elif letter == "E":
        if rank not in (6, 7, 8):
            raise ValueError("E needs rank 6, 7 or 8")
        # chain 0-2-3-4-..., node 1 attached to position 3 (Bourbaki)
        chain = [0, 2, 3, 4, 5, 6, 7][: rank - 1]
        for a, b in zip(chain, chain[1:]):
            link(a, b)
        link(1, 3)
    elif letter == "F":
        if rank != 4:
            raise ValueError("F needs rank 4")
        link(0, 1)
        link(1, 2, -2, -1)
        link(2, 3)
    elif letter == "G":
        if rank != 2:
            raise ValueError("G needs rank 2")
        link(0, 1, -3, -1)
    else:
        raise ValueError(f"unknown Cartan type {letter!r}")
    return C


@dataclass(frozen=True)
class RootSystemData:
    letter: str
    rank: int
    cartan: tuple  # cartan[i][j] = <alpha_j, alpha_i^vee>
    positive: tuple  # root vectors in the simple-root basis, by height

    @property
    def type_name(self) -> str:
        return f"{self.letter}{self.rank}"

    def height(self, root: tuple) -> int:
        return sum(root)

    def simple_reflection(self, i: int, root: tuple) -> tuple:
        """s_i acting on a root vector; i is 0-based."""
        pairing = sum(self.cartan[i][j] * root[j] for j in range(self.rank))
        out = list(root)
        out[i] -= pairing
        return tuple(out)

    def heights(self) -> list:
        return [self.height(r) for r in self.positive]


def parse_type(name: str) -> tuple:
    name = name.strip().upper()
    letter = name[0]
    rank = int(name[1:])
    return letter, rank


def positive_roots(letter: str, rank: Optional[int] = None) -> RootSystemData:
    """All positive roots of a finite type, closed under simple reflections.

    Accepts positive_roots("A2") or positive_roots("A", 2).
    """
    if rank is None:
        letter, rank = parse_type(letter)
    if rank < 1:
        raise ValueError("rank must be positive")
    C = _cartan(letter.upper(), rank)
    simple = [tuple(1 if j == i else 0 for j in range(rank)) for i in range(rank)]
    roots = set(simple)
    frontier = set(simple)
    data = RootSystemData(letter.upper(), rank, tuple(tuple(r) for r in C), ())
    while frontier:
        new = set()
        for r in frontier:
            for i in range(rank):
                s = data.simple_reflection(i, r)
                if all(x >= 0 for x in s) and s not in roots:
                    new.add(s)
        roots |= new
        frontier = new
    ordered = tuple(sorted(roots, key=lambda r: (sum(r), r)))
    return RootSystemData(letter.upper(), rank, tuple(tuple(r) for r in C), ordered)


# ----------------------------------------------------------------------
# Weyl group elements
# ----------------------------------------------------------------------


class WeylElement:
    """A Weyl group element, stored through its action on root vectors.

    `images` lists the image of each simple root; two elements are equal
    iff the actions agree.  A reduced word is recovered on demand by
    stripping descents.
    """

    __slots__ = ("system", "images")

    def __init__(self, system: RootSystemData, images: tuple):
        self.system = system
        self.images = images

    @classmethod
    def identity(cls, system: RootSystemData) -> "WeylElement":
        n = system.rank
        return cls(
            system,
            tuple(tuple(1 if j == i else 0 for j in range(n)) for i in range(n)),
        )

    @classmethod
    def from_word(cls, system: RootSystemData, word: Sequence[int]) -> "WeylElement":
        """Product s_{i_1} s_{i_2} ... for 1-based simple indices."""
        w = cls.identity(system)
        for i in word:
            w = w.mult_right(i)
        return w

    def apply(self, root: tuple) -> tuple:
        n = self.system.rank
        out = [0] * n
        for j, c in enumerate(root):
            if c:
                img = self.images[j]
                for t in range(n):
                    out[t] += c * img[t]
        return tuple(out)

    def mult_right(self, i: int) -> "WeylElement":
        """w * s_i for a 1-based simple index."""
        sys = self.system
        new_images = []
        for j in range(sys.rank):
            root = sys.simple_reflection(i - 1, tuple(1 if t == j else 0 for t in range(sys.rank)))
            new_images.append(self.apply(root))
        return WeylElement(sys, tuple(new_images))

    def mult_left(self, i: int) -> "WeylElement":
        sys = self.system
        return WeylElement(
            sys,
            tuple(sys.simple_reflection(i - 1, img) for img in self.images),
        )

    def mult(self, other: "WeylElement") -> "WeylElement":
        return WeylElement(
            self.system, tuple(self.apply(img) for img in other.images)
        )

    def inverse(self) -> "WeylElement":
        # images of simple roots under the inverse action: solve by matrix
        n = self.system.rank
        # action matrix columns are self.images; invert over Q exactly
        from .linalg import FracEchelon

        aug = []
        for r in range(n):
            row = {c: Fraction(self.images[c][r]) for c in range(n) if self.images[c][r]}
            row[n + r] = Fraction(1)
            aug.append(row)
        ech = FracEchelon()
        for row in aug:
            ech.insert(row)
        inv_cols = [[Fraction(0)] * n for _ in range(n)]
        for p, row in ech.sorted_rows():
            for c in range(n):
                inv_cols[p][c] = row.get(n + c, Fraction(0))
        # column j of the inverse matrix = image of alpha_j
        images = []
        for j in range(n):
            col = tuple(int(inv_cols[r][j]) for r in range(n))
            images.append(col)
        return WeylElement(self.system, tuple(images))

    def is_identity(self) -> bool:
        n = self.system.rank
        return all(
            self.images[i] == tuple(1 if j == i else 0 for j in range(n))
            for i in range(n)
        )

    def descents(self) -> list:
        """1-based simple indices i with w(alpha_i) negative."""
        out = []
        for i in range(self.system.rank):
            img = self.images[i]
            if any(x < 0 for x in img):
                out.append(i + 1)
        return out

    def length(self) -> int:
        return sum(
            1 for r in self.system.positive if any(x < 0 for x in self.apply(r))
        )

    def reduced_word(self) -> tuple:
        """A canonical reduced word (always strips the smallest descent)."""
        word = []
        w = self
        while True:
            ds = w.descents()
            if not ds:
                break
            i = ds[0]
            word.append(i)
            w = w.mult_right(i)
        return tuple(reversed(word))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, WeylElement) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return f"WeylElement({self.system.type_name}, word={list(self.reduced_word())})"


def longest_element(system: RootSystemData) -> WeylElement:
    w = WeylElement.identity(system)
    while True:
        # any non-descent extends the length
        for i in range(1, system.rank + 1):
            if i not in w.descents():
                w = w.mult_right(i)
                break
        else:
            return w


def permutation_element(perm: Sequence[int]) -> WeylElement:
    """Type A element from one-line notation (a permutation of 1..n)."""
    n = len(perm)
    if sorted(perm) != list(range(1, n + 1)):
        raise ValueError(f"not a permutation of 1..{n}: {perm}")
    system = positive_roots("A", max(n - 1, 1))

    # e_i - e_j as a root vector: alpha_lo + ... + alpha_{hi-1}, signed
    def vec(i, j):
        lo, hi, sign = (i, j, 1) if i < j else (j, i, -1)
        return tuple(sign if lo <= t + 1 <= hi - 1 else 0 for t in range(n - 1))

    # alpha_j = e_j - e_{j+1} maps to e_{w(j)} - e_{w(j+1)}
    images = []
    for j in range(1, n):
        images.append(vec(perm[j - 1], perm[j]))
    return WeylElement(system, tuple(images))


def element_to_permutation(w: WeylElement) -> tuple:
    """One-line notation for a type A element."""
    if w.system.letter != "A":
        raise ValueError("only type A elements are permutations")
    n = w.system.rank + 1
    # right multiplication by s_i swaps the entries at positions i, i+1
    perm = list(range(1, n + 1))
    for i in w.reduced_word():
        perm[i - 1], perm[i] = perm[i], perm[i - 1]
    return tuple(perm)


# ----------------------------------------------------------------------
# inversions and smooth-case degrees
# ----------------------------------------------------------------------


def inversion_set(w: WeylElement, R: Optional[RootSystemData] = None) -> list:
    """Heights of the positive roots sent negative by w, sorted.

    This is the multiset of heights over R^+ with w(alpha) negative; its
    size equals the length of w.
    """
    system = R or w.system
    out = [
        system.height(r)
        for r in system.positive
        if any(x < 0 for x in w.apply(r))
    ]
    return sorted(out)


def _bruhat_leq(v: WeylElement, w: WeylElement) -> bool:
    """v <= w in Bruhat order, by the left-descent recursion.

    For a left descent s of w: v <= w iff sv <= sw when sv < v, and
    v <= sw otherwise.
    """
    lv, lw = v.length(), w.length()
    if lv > lw:
        return False
    if lv == 0:
        return True
    # left descents of w: i with w^{-1}(alpha_i) negative
    winv = w.inverse()
    for i in range(1, w.system.rank + 1):
        if any(x < 0 for x in winv.images[i - 1]):
            sw = w.mult_left(i)
            sv = v.mult_left(i)
            if sv.length() < lv:
                return _bruhat_leq(sv, sw)
            return _bruhat_leq(v, sw)
    return v.is_identity()


def reflection_heights(w: WeylElement) -> list:
    """Heights of positive roots alpha with reflection s_alpha <= w, sorted.

    For rationally smooth elements the count equals the length of w; the
    multiset drives the smooth-case Hilbert series.
    """
    system = w.system
    out = []
    for root in system.positive:
        refl = _reflection_element(system, root)
        if _bruhat_leq(refl, w):
            out.append(system.height(root))
    return sorted(out)


def _reflection_element(system: RootSystemData, root: tuple) -> WeylElement:
    """The reflection s_alpha as a Weyl element, alpha a positive root."""
    # write s_alpha = u s_i u^{-1} by lowering alpha to a simple root
    word = []
    current = root
    while sum(current) > 1:
        for i in range(system.rank):
            lowered = system.simple_reflection(i, current)
            if sum(lowered) < sum(current):
                word.append(i + 1)
                current = lowered
                break
        else:  # pragma: no cover - cannot happen for positive roots
            raise RuntimeError("failed to lower root")
    i_simple = current.index(1) + 1
    # current = s_{i_k}...s_{i_1}(alpha), so alpha = u(alpha_m) with
    # u = s_{i_1}...s_{i_k} and s_alpha = u s_m u^{-1}
    u = WeylElement.from_word(system, word)
    return u.mult(WeylElement.from_word(system, [i_simple])).mult(u.inverse())


def smooth_degrees(
    w: WeylElement, R: Optional[RootSystemData] = None, pad_to: Optional[int] = None
) -> list:
    """The degrees k_i of the smooth-case Hochschild Hilbert series.

    The multiplicity of m >= 2 is N_{m-1} - N_m, where N_h counts height-h
    entries of the reflection-height multiset of w; the list is padded
    with 1's up to pad_to.  Raises LemmaInapplicableError when a
    multiplicity goes negative or the reflection count exceeds the length
    (the element is not rationally smooth, so the smooth-case count does
    not apply).
    """
    system = R or w.system
    heights = reflection_heights(w)
    if len(heights) != w.length():
        raise LemmaInapplicableError(
            f"element has {len(heights)} reflections below it but length"
            f" {w.length()}; smooth-case degrees do not apply"
        )
    counts: dict[int, int] = {}
    for h in heights:
        counts[h] = counts.get(h, 0) + 1
    ks = []
    maxh = max(counts, default=0)
    for m in range(2, maxh + 2):
        mult = counts.get(m - 1, 0) - counts.get(m, 0)
        if mult < 0:
            raise LemmaInapplicableError(
                f"negative multiplicity {mult} for degree {m}"
            )
        ks.extend([m] * mult)
    if pad_to is not None:
        if pad_to < len(ks):
            raise ValueError(f"pad_to={pad_to} below the computed count {len(ks)}")
        ks.extend([1] * (pad_to - len(ks)))
    return sorted(ks)


def smooth_hilbert_series(ks: Sequence[int], cutoff: int) -> LaurentSeries2:
    """Expansion of prod (1 + a q^{k}) / (1 - q)^len(ks) through q^cutoff."""
    out = LaurentSeries2.one(cutoff)
    for k in ks:
        if k < 1:
            raise ValueError("degrees must be >= 1")
        out = out * (LaurentSeries2.one() + LaurentSeries2.monomial(1, 1, k))
    for _ in range(len(ks)):
        out = out.div_one_minus(1, 0, 1, cap=cutoff)
    return out.truncate(cutoff)


# ----------------------------------------------------------------------
# type A smoothness and the Bruhat-interval cross-check
# ----------------------------------------------------------------------


def is_smooth_typeA(perm: Sequence[int]) -> bool:
    """Pattern avoidance of 3412 and 4231, by brute subsequence scan."""
    p = list(perm)
    n = len(p)
    for quad in combinations(range(n), 4):
        vals = [p[i] for i in quad]
        order = sorted(range(4), key=lambda t: vals[t])
        pattern = [0] * 4
        for rank, t in enumerate(order, start=1):
            pattern[t] = rank
        if pattern == [3, 4, 1, 2] or pattern == [4, 2, 3, 1]:
            return False
    return True


@dataclass
class PoincareResult:
    coeffs: list  # coeffs[i] = dim H^{2i}, i.e. number of v <= w of length i
    factors: Optional[list]  # q-integer degrees, largest first, or None

    def polynomial_str(self) -> str:
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                body = "q" if i == 1 else f"q^{i}"
                parts.append(body if c == 1 else f"{c}*{body}")
        return " + ".join(parts) if parts else "0"


def bruhat_poincare(w: WeylElement) -> PoincareResult:
    """Poincare polynomial of [e, w] and its q-integer factorization.

    Enumerates all subwords of a reduced word of w, deduplicates the
    resulting elements, and counts them by length.  Factorization divides
    by q-integers [k] greedily from the largest feasible k, falling back
    to exhaustive backtracking; a failed factorization returns None in
    the factors slot, which is a result and not an error.
    """
    word = w.reduced_word()
    seen: set = set()
    lengths: dict[int, int] = {}
    m = len(word)
    for mask in range(1 << m):
        letters = [word[t] for t in range(m) if mask >> t & 1]
        v = WeylElement.from_word(w.system, letters)
        if v in seen:
            continue
        seen.add(v)
        lv = v.length()
        lengths[lv] = lengths.get(lv, 0) + 1
    coeffs = [lengths.get(i, 0) for i in range(max(lengths, default=0) + 1)]
    return PoincareResult(coeffs, factor_into_q_integers(coeffs))


def _divide_q_integer(coeffs: list, k: int) -> Optional[list]:
    """Exact division by [k] = 1 + q + ... + q^{k-1}, or None."""
    if len(coeffs) < k:
        return None
    out = [0] * (len(coeffs) - k + 1)
    rem = list(coeffs)
    for i in range(len(out)):
        out[i] = rem[i]
        for j in range(k):
            rem[i + j] -= out[i]
    if any(rem):
        return None
    return out


def factor_into_q_integers(coeffs: list) -> Optional[list]:
    """Write a polynomial as a product of q-integers [k], k >= 2.

    Greedy largest-first with backtracking; returns the degrees sorted in
    decreasing order, the empty list for the constant 1, or None.
    """
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if not coeffs:
        return None
    if coeffs == [1]:
        return []

    def go(c: list) -> Optional[list]:
        if c == [1]:
            return []
        deg = len(c) - 1
        for k in range(deg + 1, 1, -1):
            q = _divide_q_integer(c, k)
            if q is not None:
                rest = go(q)
                if rest is not None:
                    return [k] + rest
        return None

    return go(coeffs)
