"""Exact arithmetic in the graded ring S = Q[x_1, ..., x_n].

Every variable sits in topological degree 2, so a monomial with exponent
sum e is homogeneous of degree 2e.  Coefficients are exact rationals; no
floating point appears anywhere in this package.

Three primitives drive all bimodule constructions downstream:

* the simple transposition s_i exchanging x_i and x_{i+1},
* the divided difference operator  d_i(f) = (f - s_i.f) / (x_i - x_{i+1}),
* the splitting of f into f0 + f1*x_i with f0, f1 invariant under s_i,
  which realises S as a free module of rank two over the invariant
  subring with basis {1, x_i}.

The module also provides LaurentSeries2, a truncated table of rational
coefficients in two variables (a, q).  Half-integer q-exponents are
permitted because grading shifts produce odd topological degrees; the
correspondence is q-exponent j <-> topological degree 2j.  Every series
carries an explicit validity bound `qmax`; arithmetic never pretends to
know coefficients past that bound.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Optional, Union

Scalar = Union[int, Fraction]

__all__ = [
    "DimensionMismatch",
    "Poly",
    "demazure",
    "invariant_split",
    "poly_to_str",
    "parse_poly",
    "LaurentSeries2",
    "parse_series",
]


class DimensionMismatch(ValueError):
    """Raised when polynomials over different variable counts are mixed."""


def _as_fraction(c: Scalar) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


class Poly:
    """A polynomial in Q[x_1..x_n], stored as {exponent tuple: coefficient}.

    Zero coefficients are never stored, so equality of the term maps is
    equality of polynomials.  Instances are treated as immutable; all
    operations return fresh objects.
    """

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Optional[Mapping[tuple, Scalar]] = None):
        self.n = n
        clean: dict[tuple, Fraction] = {}
        if terms:
            for exps, c in terms.items():
                c = _as_fraction(c)
                if c:
                    clean[tuple(exps)] = c
        self.terms = clean

    # ----- constructors -------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> "Poly":
        return cls(n)

    @classmethod
    def const(cls, n: int, c: Scalar) -> "Poly":
        return cls(n, {(0,) * n: c})

    @classmethod
    def variable(cls, n: int, i: int) -> "Poly":
        """x_i, with i in 1..n."""
        if not 1 <= i <= n:
            raise IndexError(f"variable index {i} out of range 1..{n}")
        exps = [0] * n
        exps[i - 1] = 1
        return cls(n, {tuple(exps): 1})

    @classmethod
    def monomial(cls, n: int, exps: Iterable[int], c: Scalar = 1) -> "Poly":
        return cls(n, {tuple(exps): c})

    # ----- predicates and gradings --------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.n, Fraction(0))

    def homogeneous_degree(self) -> Optional[int]:
        """Topological degree if homogeneous and nonzero, else None."""
        degs = {2 * sum(e) for e in self.terms}
        if len(degs) == 1:
            return degs.pop()
        return None

    def is_homogeneous_of(self, d: int) -> bool:
        if self.is_zero():
            return True
        return all(2 * sum(e) == d for e in self.terms)

    def max_degree(self) -> int:
        if self.is_zero():
            return 0
        return max(2 * sum(e) for e in self.terms)

    # ----- arithmetic ----------------------------------------------------

    def _check(self, other: "Poly") -> None:
        if self.n != other.n:
            raise DimensionMismatch(f"variable counts differ: {self.n} vs {other.n}")

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, Fraction(0)) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        out = Poly.__new__(Poly)
        out.n = self.n
        out.terms = terms
        return out

    def __neg__(self) -> "Poly":
        out = Poly.__new__(Poly)
        out.n = self.n
        out.terms = {e: -c for e, c in self.terms.items()}
        return out

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def scale(self, c: Scalar) -> "Poly":
        c = _as_fraction(c)
        out = Poly.__new__(Poly)
        out.n = self.n
        out.terms = {} if not c else {e: c * v for e, v in self.terms.items()}
        return out

    def __mul__(self, other: Union["Poly", Scalar]) -> "Poly":
        if not isinstance(other, Poly):
            return self.scale(other)
        self._check(other)
        if len(self.terms) > len(other.terms):
            self, other = other, self
        terms: dict[tuple, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = terms.get(e, Fraction(0)) + c1 * c2
                if s:
                    terms[e] = s
                else:
                    del terms[e]
        out = Poly.__new__(Poly)
        out.n = self.n
        out.terms = terms
        return out

    def __rmul__(self, other: Scalar) -> "Poly":
        return self.scale(other)

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative power")
        out = Poly.const(self.n, 1)
        for _ in range(k):
            out = out * self
        return out

    # ----- symmetry ------------------------------------------------------

    def swap(self, i: int) -> "Poly":
        """Apply the simple transposition s_i (exchange x_i and x_{i+1})."""
        if not 1 <= i <= self.n - 1:
            raise IndexError(f"simple index {i} out of range 1..{self.n - 1}")
        terms = {}
        for e, c in self.terms.items():
            le = list(e)
            le[i - 1], le[i] = le[i], le[i - 1]
            terms[tuple(le)] = c
        out = Poly.__new__(Poly)
        out.n = self.n
        out.terms = terms
        return out

    def is_invariant(self, i: int) -> bool:
        return self.swap(i) == self

    # ----- misc -----------------------------------------------------------

    def key(self) -> frozenset:
        """Hashable view, for use as a cache key."""
        return frozenset(self.terms.items())

    def sorted_terms(self) -> list[tuple[tuple, Fraction]]:
        """Graded-lex descending, the canonical display order."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Poly) and self.n == other.n and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.n, self.key()))

    def __repr__(self) -> str:
        return f"Poly({self.n}, {poly_to_str(self)!r})"

    def __str__(self) -> str:
        return poly_to_str(self)


def demazure(f: Poly, i: int) -> Poly:
    """Divided difference d_i(f) = (f - s_i.f)/(x_i - x_{i+1}).

    Computed monomial by monomial from the exact identity
    (x^a y^b - x^b y^a)/(x - y) = sum_{t} x^{b+t} y^{a-1-t}  (a > b),
    so no polynomial division loop is needed.  The result is s_i-invariant,
    its degree drops by 2, and d_i(f) = 0 iff f is s_i-invariant.
    """
    if not 1 <= i <= f.n - 1:
        raise IndexError(f"simple index {i} out of range 1..{f.n - 1}")
    i0, i1 = i - 1, i
    terms: dict[tuple, Fraction] = {}
    for e, c in f.terms.items():
        a, b = e[i0], e[i1]
        if a == b:
            continue
        le = list(e)
        if a > b:
            rng = range(a - b)
            lo, hi, sign = b, a - 1, c
        else:
            rng = range(b - a)
            lo, hi, sign = a, b - 1, -c
        for t in rng:
            le[i0], le[i1] = lo + t, hi - t
            key = tuple(le)
            s = terms.get(key, Fraction(0)) + sign
            if s:
                terms[key] = s
            else:
                del terms[key]
    return Poly(f.n, terms)


def invariant_split(f: Poly, i: int) -> tuple[Poly, Poly]:
    """Write f = f0 + f1*x_i with f0, f1 invariant under s_i.

    f1 = d_i(f) and f0 = f - x_i*d_i(f); the decomposition is unique and
    recomposes exactly.
    """
    f1 = demazure(f, i)
    f0 = f - Poly.variable(f.n, i) * f1
    return f0, f1


# ----------------------------------------------------------------------
# text format: "3*x1^2*x2 - 1/2*x3"
# ----------------------------------------------------------------------


def poly_to_str(f: Poly) -> str:
    if f.is_zero():
        return "0"
    pieces = []
    for e, c in f.sorted_terms():
        factors = []
        for k, p in enumerate(e):
            if p == 1:
                factors.append(f"x{k + 1}")
            elif p > 1:
                factors.append(f"x{k + 1}^{p}")
        mag = abs(c)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = str(mag) + "*" + "*".join(factors)
        if not pieces:
            pieces.append(body if c > 0 else "-" + body)
        else:
            pieces.append(("+ " if c > 0 else "- ") + body)
    return " ".join(pieces)


def parse_poly(s: str, n: int) -> Poly:
    """Inverse of poly_to_str.  Accepts rational coefficients "p/q"."""
    s = s.strip()
    if s in ("", "0"):
        return Poly.zero(n)
    s = s.replace("-", "+-")
    terms: dict[tuple, Fraction] = {}
    for chunk in s.split("+"):
        chunk = chunk.strip()
        if not chunk:
            continue
        sign = Fraction(1)
        if chunk.startswith("-"):
            sign = Fraction(-1)
            chunk = chunk[1:].strip()
        coeff = sign
        exps = [0] * n
        for factor in chunk.split("*"):
            factor = factor.strip()
            if not factor:
                continue
            if factor.startswith("x"):
                if "^" in factor:
                    var, p = factor.split("^")
                    power = int(p)
                else:
                    var, power = factor, 1
                k = int(var[1:])
                if not 1 <= k <= n:
                    raise ValueError(f"variable {var} out of range for n={n}")
                exps[k - 1] += power
            else:
                coeff *= Fraction(factor)
        key = tuple(exps)
        c = terms.get(key, Fraction(0)) + coeff
        if c:
            terms[key] = c
        else:
            del terms[key]
    return Poly(n, terms)


# ----------------------------------------------------------------------
# truncated two-variable Laurent series
# ----------------------------------------------------------------------

QExp = Fraction  # q-exponents may be half-integers


class LaurentSeries2:
    """Rational coefficients indexed by (a-exponent >= 0, q-exponent).

    `qmax` is the validity bound: coefficients with q-exponent <= qmax are
    exact, anything beyond is unknown and never stored.  qmax=None means
    the series is an exact (Laurent) polynomial, known completely.
    """

    __slots__ = ("entries", "qmax")

    def __init__(
        self,
        entries: Optional[Mapping[tuple, Scalar]] = None,
        qmax: Optional[Scalar] = None,
    ):
        self.qmax: Optional[Fraction] = None if qmax is None else Fraction(qmax)
        clean: dict[tuple[int, Fraction], Fraction] = {}
        if entries:
            for (ae, qe), c in entries.items():
                c = _as_fraction(c)
                qe = Fraction(qe)
                if c and (self.qmax is None or qe <= self.qmax):
                    clean[(ae, qe)] = c
        self.entries = clean

    @classmethod
    def zero(cls, qmax: Optional[Scalar] = None) -> "LaurentSeries2":
        return cls({}, qmax)

    @classmethod
    def one(cls, qmax: Optional[Scalar] = None) -> "LaurentSeries2":
        return cls({(0, Fraction(0)): 1}, qmax)

    @classmethod
    def monomial(
        cls, c: Scalar, aexp: int, qexp: Scalar, qmax: Optional[Scalar] = None
    ) -> "LaurentSeries2":
        return cls({(aexp, Fraction(qexp)): c}, qmax)

    # ----- helpers --------------------------------------------------------

    def coefficient(self, aexp: int, qexp: Scalar) -> Fraction:
        return self.entries.get((aexp, Fraction(qexp)), Fraction(0))

    def min_q(self) -> Optional[Fraction]:
        if not self.entries:
            return None
        return min(q for _, q in self.entries)

    def min_key(self) -> Optional[tuple[int, Fraction]]:
        """Lowest (q-exponent, a-exponent) pair present, or None."""
        if not self.entries:
            return None
        q0 = self.min_q()
        a0 = min(a for a, q in self.entries if q == q0)
        return (a0, q0)

    def truncate(self, qmax: Optional[Scalar]) -> "LaurentSeries2":
        if qmax is None:
            return LaurentSeries2(self.entries, self.qmax)
        qmax = Fraction(qmax)
        if self.qmax is not None:
            qmax = min(qmax, self.qmax)
        return LaurentSeries2(self.entries, qmax)

    # ----- arithmetic ------------------------------------------------------

    @staticmethod
    def _merge_qmax(a: Optional[Fraction], b: Optional[Fraction]) -> Optional[Fraction]:
        if a is None:
            return b
        if b is None:
            return a
        return min(a, b)

    def __add__(self, other: "LaurentSeries2") -> "LaurentSeries2":
        qmax = self._merge_qmax(self.qmax, other.qmax)
        entries = dict(self.entries)
        for k, c in other.entries.items():
            s = entries.get(k, Fraction(0)) + c
            if s:
                entries[k] = s
            else:
                entries.pop(k, None)
        return LaurentSeries2(entries, qmax)

    def __neg__(self) -> "LaurentSeries2":
        return LaurentSeries2({k: -c for k, c in self.entries.items()}, self.qmax)

    def __sub__(self, other: "LaurentSeries2") -> "LaurentSeries2":
        return self + (-other)

    def __mul__(self, other: "LaurentSeries2") -> "LaurentSeries2":
        # validity: the coefficient of q^j needs every split j1+j2=j with
        # j1 >= min_q(self), j2 >= min_q(other) inside both bounds
        m1, m2 = self.min_q(), other.min_q()
        if m1 is None or m2 is None:
            return LaurentSeries2({}, self._merge_qmax(self.qmax, other.qmax))
        qmax = None
        if self.qmax is not None:
            qmax = self.qmax + m2
        if other.qmax is not None:
            q2 = other.qmax + m1
            qmax = q2 if qmax is None else min(qmax, q2)
        entries: dict[tuple[int, Fraction], Fraction] = {}
        for (a1, q1), c1 in self.entries.items():
            for (a2, q2), c2 in other.entries.items():
                q = q1 + q2
                if qmax is not None and q > qmax:
                    continue
                k = (a1 + a2, q)
                s = entries.get(k, Fraction(0)) + c1 * c2
                if s:
                    entries[k] = s
                else:
                    del entries[k]
        return LaurentSeries2(entries, qmax)

    def shift(self, aexp: int, qexp: Scalar) -> "LaurentSeries2":
        """Multiply by the monomial a^aexp * q^qexp."""
        qexp = Fraction(qexp)
        qmax = None if self.qmax is None else self.qmax + qexp
        return LaurentSeries2(
            {(a + aexp, q + qexp): c for (a, q), c in self.entries.items()}, qmax
        )

    def scale(self, c: Scalar) -> "LaurentSeries2":
        c = _as_fraction(c)
        return LaurentSeries2({k: c * v for k, v in self.entries.items()}, self.qmax)

    def div_one_minus(
        self, coef: Scalar, aexp: int, qexp: Scalar, cap: Optional[Scalar] = None
    ) -> "LaurentSeries2":
        """Divide by (1 - coef * a^aexp * q^qexp), geometric expansion.

        Requires qexp > 0 so the expansion is locally finite; the result is
        valid to min(self.qmax, cap), and cap must be supplied when the
        series is an exact polynomial (qmax None).
        """
        qexp = Fraction(qexp)
        if qexp <= 0:
            raise ValueError("geometric division needs a positive q-exponent")
        qmax = self._merge_qmax(self.qmax, None if cap is None else Fraction(cap))
        if qmax is None:
            raise ValueError("unbounded geometric expansion; supply a cap")
        coef = _as_fraction(coef)
        # grid of keys reachable from the input by repeatedly adding the step
        keys = set()
        for a, q in self.entries:
            while q <= qmax:
                keys.add((a, q))
                a, q = a + aexp, q + qexp
        out: dict[tuple[int, Fraction], Fraction] = {}
        # r = f + m*r, solved in order of increasing q-exponent
        for k in sorted(keys, key=lambda k2: (k2[1], k2[0])):
            prev = out.get((k[0] - aexp, k[1] - qexp), Fraction(0))
            val = self.entries.get(k, Fraction(0)) + coef * prev
            if val:
                out[k] = val
        return LaurentSeries2(out, qmax)

    def normalize(self) -> tuple["LaurentSeries2", tuple[int, Fraction]]:
        """Divide by the monomial of the lowest term (min q, then min a).

        Returns (normalized series, (a0, q0) prefactor exponents).  The
        discarded prefactor means `self = normalized * a^a0 * q^q0`.
        """
        key = self.min_key()
        if key is None:
            return self, (0, Fraction(0))
        a0, q0 = key
        return self.shift(-a0, -q0), (a0, q0)

    def eval_ones(self) -> Fraction:
        """Sum of all stored coefficients (a=1, q=1 on a finite table)."""
        return sum(self.entries.values(), Fraction(0))

    def equal_through(self, other: "LaurentSeries2", qbound: Scalar) -> bool:
        qbound = Fraction(qbound)
        keys = set(self.entries) | set(other.entries)
        for k in keys:
            if k[1] <= qbound:
                if self.entries.get(k, Fraction(0)) != other.entries.get(
                    k, Fraction(0)
                ):
                    return False
        return True

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, LaurentSeries2)
            and self.entries == other.entries
            and self.qmax == other.qmax
        )

    def __repr__(self) -> str:
        return f"LaurentSeries2({series_to_str(self)!r}, qmax={self.qmax})"

    def __str__(self) -> str:
        return series_to_str(self)


def _qexp_str(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"({q})"


def series_to_str(s: LaurentSeries2) -> str:
    """Canonical text form, terms sorted by (q-exponent, a-exponent)."""
    if not s.entries:
        return "0"
    pieces = []
    for (a, q), c in sorted(s.entries.items(), key=lambda kv: (kv[0][1], kv[0][0])):
        factors = []
        if a == 1:
            factors.append("a")
        elif a != 0:
            factors.append(f"a^{a}")
        if q == 1:
            factors.append("q")
        elif q != 0:
            factors.append(f"q^{_qexp_str(q)}")
        mag = abs(c)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = str(mag) + "*" + "*".join(factors)
        if not pieces:
            pieces.append(body if c > 0 else "-" + body)
        else:
            pieces.append(("+ " if c > 0 else "- ") + body)
    return " ".join(pieces)


def parse_series(text: str, qmax: Optional[Scalar] = None) -> LaurentSeries2:
    """Inverse of series_to_str."""
    text = text.strip()
    if text in ("", "0"):
        return LaurentSeries2({}, qmax)
    text = text.replace("-", "+-")
    entries: dict[tuple[int, Fraction], Fraction] = {}
    for chunk in text.split("+"):
        chunk = chunk.strip()
        if not chunk:
            continue
        sign = Fraction(1)
        if chunk.startswith("-"):
            sign = Fraction(-1)
            chunk = chunk[1:].strip()
        coeff = sign
        aexp, qexp = 0, Fraction(0)
        for factor in chunk.split("*"):
            factor = factor.strip()
            if not factor:
                continue
            if factor.startswith("a"):
                aexp += int(factor[2:]) if "^" in factor else 1
            elif factor.startswith("q"):
                if "^" in factor:
                    p = factor.split("^")[1].strip()
                    if p.startswith("(") and p.endswith(")"):
                        p = p[1:-1]
                    qexp += Fraction(p)
                else:
                    qexp += 1
            else:
                coeff *= Fraction(factor)
        k = (aexp, qexp)
        c = entries.get(k, Fraction(0)) + coeff
        if c:
            entries[k] = c
        else:
            del entries[k]
    return LaurentSeries2(entries, qmax)
