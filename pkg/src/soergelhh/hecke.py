"""Decategorified oracle: the type A Hecke algebra with its Markov trace.

The algebra H_n over Q[q, q^-1] has basis T_w indexed by permutations,
with T_w T_i = T_{w s_i} when the length grows and
T_w T_i = (q-1) T_w + q T_{w s_i} otherwise.  The Markov trace tr is
linear, takes 1 on the identity, and satisfies tr(x T_{m-1} y) =
tau * tr(x y) for x, y in H_{m-1}; it is evaluated by peeling the
largest moved point through the coset decomposition
w = u * (s_{m-1} s_{m-2} ... s_k).

Closing a braid with writhe e on n strands and rescaling for both Markov
moves yields the two-variable link invariant normalized to 1 on the
unknot and satisfying

    a P(L+) - a^{-1} P(L-) = z P(L0).

Substituting tau = a^2 (q-1) / (a^2 - 1) turns the trace into a Laurent
polynomial in a and z = q^{1/2} - q^{-1/2}; the substitution is done
denominator-free by collecting powers of tau first.

A second, independent evaluation path computes the same invariant by
skein recursion on the closed diagram: walk the closure, flip the first
crossing that violates the ascending rule (first visits go under, and
earlier components pass under later ones), and resolve with the skein
relation; fully ascending diagrams are unlinks.  Both paths must agree
before any value is frozen as a golden file.

This module is deliberately self-contained (its own Laurent polynomial
arithmetic, plain permutation tuples) so that it shares no code with the
categorified side it is used to cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

__all__ = [
    "LPoly",
    "HeckeElement",
    "hecke_identity",
    "multiply_by_generator",
    "braid_image",
    "ocneanu_trace",
    "homfly",
    "homfly_skein",
    "homfly_to_str",
    "parse_homfly",
]


class LPoly:
    """Laurent polynomial over Q in named variables.

    Terms map exponent tuples (possibly negative entries) to nonzero
    rational coefficients; the variable-name tuple travels with the value
    and must agree for arithmetic.
    """

    __slots__ = ("names", "terms")

    def __init__(self, names: tuple, terms: Optional[dict] = None):
        self.names = names
        clean = {}
        if terms:
            for e, c in terms.items():
                c = c if isinstance(c, Fraction) else Fraction(c)
                if c:
                    clean[tuple(e)] = c
        self.terms = clean

    @classmethod
    def const(cls, names: tuple, c) -> "LPoly":
        return cls(names, {(0,) * len(names): c})

    @classmethod
    def mono(cls, names: tuple, exps, c=1) -> "LPoly":
        return cls(names, {tuple(exps): c})

    def is_zero(self) -> bool:
        return not self.terms

    def _chk(self, other: "LPoly"):
        if self.names != other.names:
            raise ValueError(f"variable mismatch: {self.names} vs {other.names}")

    def __add__(self, other: "LPoly") -> "LPoly":
        self._chk(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            s = t.get(e, Fraction(0)) + c
            if s:
                t[e] = s
            else:
                t.pop(e, None)
        return LPoly(self.names, t)

    def __neg__(self) -> "LPoly":
        return LPoly(self.names, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "LPoly") -> "LPoly":
        return self + (-other)

    def __mul__(self, other: Union["LPoly", int, Fraction]) -> "LPoly":
        if not isinstance(other, LPoly):
            c = Fraction(other)
            return LPoly(self.names, {e: c * v for e, v in self.terms.items()})
        self._chk(other)
        t: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = t.get(e, Fraction(0)) + c1 * c2
                if s:
                    t[e] = s
                else:
                    del t[e]
        return LPoly(self.names, t)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LPoly":
        if k < 0:
            raise ValueError("negative power")
        out = LPoly.const(self.names, 1)
        for _ in range(k):
            out = out * self
        return out

    def shift(self, exps) -> "LPoly":
        return LPoly(
            self.names,
            {tuple(a + b for a, b in zip(e, exps)): c for e, c in self.terms.items()},
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LPoly)
            and self.names == other.names
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.names, frozenset(self.terms.items())))

    def __repr__(self):
        return f"LPoly({self.names}, {homfly_to_str(self)!r})"


Q = ("q",)
QT = ("q", "tau")
AQ = ("a", "q")
AS = ("a", "s")
AZ = ("a", "z")


def _q(e: int, c=1) -> LPoly:
    return LPoly.mono(Q, (e,), c)


# ----------------------------------------------------------------------
# the Hecke algebra
# ----------------------------------------------------------------------


@dataclass
class HeckeElement:
    """A linear combination of T_w, coefficients Laurent in q."""

    n: int
    coeffs: dict  # permutation tuple (one-line, values 1..n) -> LPoly in q

    def support(self) -> list:
        return sorted(self.coeffs)


def hecke_identity(n: int) -> HeckeElement:
    return HeckeElement(n, {tuple(range(1, n + 1)): LPoly.const(Q, 1)})


def _add_term(coeffs: dict, w: tuple, c: LPoly) -> None:
    s = coeffs.get(w)
    s = c if s is None else s + c
    if s.is_zero():
        coeffs.pop(w, None)
    else:
        coeffs[w] = s


def multiply_by_generator(x: HeckeElement, i: int, sign: int = 1) -> HeckeElement:
    """Right multiplication by T_i (sign +1) or T_i^{-1} (sign -1).

    Uses T_w T_i = T_{w s_i} or (q-1) T_w + q T_{w s_i} by the quadratic
    relation, and T_i^{-1} = q^{-1} T_i + (q^{-1} - 1).
    """
    if not 1 <= i <= x.n - 1:
        raise IndexError(f"generator {i} out of range 1..{x.n - 1}")
    out: dict = {}
    for w, c in x.coeffs.items():
        ws = list(w)
        ws[i - 1], ws[i] = ws[i], ws[i - 1]
        ws = tuple(ws)
        if w[i - 1] < w[i]:  # length goes up
            if sign > 0:
                _add_term(out, ws, c)
            else:
                _add_term(out, ws, c * _q(-1))
                _add_term(out, w, c * (_q(-1) - _q(0)))
        else:  # length goes down
            if sign > 0:
                _add_term(out, w, c * (_q(1) - _q(0)))
                _add_term(out, ws, c * _q(1))
            else:
                _add_term(out, ws, c)
    return HeckeElement(x.n, out)


def braid_image(letters: Sequence[int], n: int) -> HeckeElement:
    """Image of a braid word in H_n (letters are nonzero signed indices)."""
    x = hecke_identity(n)
    for letter in letters:
        x = multiply_by_generator(x, abs(letter), 1 if letter > 0 else -1)
    return x


# ----------------------------------------------------------------------
# the Markov trace
# ----------------------------------------------------------------------

_TRACE_CACHE: dict = {}


def _perm_trace(w: tuple) -> LPoly:
    """tr(T_w) as a polynomial in (q, tau)."""
    # strip fixed points above the last moved one
    m = len(w)
    while m and w[m - 1] == m:
        m -= 1
    w = w[:m]
    if not w:
        return LPoly.const(QT, 1)
    got = _TRACE_CACHE.get(w)
    if got is not None:
        return got
    k = w.index(m) + 1  # position with value m
    # w = u * (s_{m-1} ... s_k) with u fixing m
    u = w[: k - 1] + w[k:m] + (m,)
    h = HeckeElement(m, {u: LPoly.const(Q, 1)})
    for i in range(m - 2, k - 1, -1):
        h = multiply_by_generator(h, i, 1)
    tau = LPoly.mono(QT, (0, 1))
    total = LPoly(QT)
    for v, c in h.coeffs.items():
        cq = LPoly(QT, {(e[0], 0): coef for e, coef in c.terms.items()})
        total = total + cq * _perm_trace(v)
    out = tau * total
    _TRACE_CACHE[w] = out
    return out


def ocneanu_trace(x: HeckeElement) -> LPoly:
    """Markov trace of a Hecke element, polynomial in (q, tau)."""
    out = LPoly(QT)
    for w, c in x.coeffs.items():
        cq = LPoly(QT, {(e[0], 0): coef for e, coef in c.terms.items()})
        out = out + cq * _perm_trace(w)
    return out


# ----------------------------------------------------------------------
# assembly into the two-variable invariant
# ----------------------------------------------------------------------


def _peel_to_z(f: LPoly) -> LPoly:
    """Rewrite a Laurent polynomial in (a, s) as one in (a, z), z = s - 1/s.

    Only inputs that genuinely are polynomials in z arrive here; peeling
    the top s-degree with (s - 1/s)^M terminates and any leftover negative
    s-power is a hard error.
    """
    f = LPoly(AS, dict(f.terms))
    out: dict = {}
    while not f.is_zero():
        M = max(e[1] for e in f.terms)
        if M == 0:
            if any(e[1] for e in f.terms):  # pragma: no cover - guarded by M
                raise ArithmeticError("not a polynomial in z")
            for e, c in f.terms.items():
                out[(e[0], 0)] = out.get((e[0], 0), Fraction(0)) + c
            break
        if M < 0:
            raise ArithmeticError("not a polynomial in z")
        top = {e[0]: c for e, c in f.terms.items() if e[1] == M}
        zM = (LPoly.mono(AS, (0, 1)) - LPoly.mono(AS, (0, -1))) ** M
        for p, c in top.items():
            out[(p, M)] = out.get((p, M), Fraction(0)) + c
            f = f - LPoly.mono(AS, (p, 0), c) * zM
    return LPoly(AZ, out)


def _as_pair(b, strands: Optional[int]):
    if strands is None:
        return tuple(b.letters), b.strands
    return tuple(b), strands


def homfly(b, strands: Optional[int] = None) -> LPoly:
    """The two-variable invariant of the closure of a braid word.

    Accepts a braid word object (with .letters and .strands) or a
    sequence of letters plus an explicit strand count.  Output is Laurent
    in (a, z), normalized to 1 on the unknot and obeying
    a P(+) - a^{-1} P(-) = z P(0); the c-component unlink evaluates to
    ((a - a^{-1})/z)^{c-1}.
    """
    letters, n = _as_pair(b, strands)
    e = sum(1 if x > 0 else -1 for x in letters)
    tr = ocneanu_trace(braid_image(letters, n))
    # collect p_k(q) tau^k and substitute tau = a^2 (q-1)/(a^2-1):
    # X = a^{1-n-e} s^{-e} N(a, s^2) z^{-(n-1)} with
    # N = sum_k p_k(q) a^{2k} (q-1)^k (a^2-1)^{n-1-k}
    a2 = LPoly.mono(AQ, (2, 0))
    one = LPoly.const(AQ, 1)
    qm1 = LPoly.mono(AQ, (0, 1)) - one
    N = LPoly(AQ)
    by_tau: dict[int, dict] = {}
    for (qe, te), c in tr.terms.items():
        by_tau.setdefault(te, {})[(0, qe)] = c
    for k, terms in by_tau.items():
        pk = LPoly(AQ, terms)
        N = N + pk * a2 ** k * qm1 ** k * (a2 - one) ** (n - 1 - k)
    # q -> s^2, then the monomial prefactor
    f = LPoly(AS, {(ae + 1 - n - e, 2 * qe - e): c for (ae, qe), c in N.terms.items()})
    g = _peel_to_z(f)
    return g.shift((0, -(n - 1)))


# ----------------------------------------------------------------------
# independent path: skein recursion on the closed diagram
# ----------------------------------------------------------------------


def _closure_walk(letters: tuple, n: int):
    """Visit order data for the closure of a braid word.

    Returns (components, visits) where visits is a list, in traversal
    order, of (crossing position, component index, is_over).
    """
    # underlying permutation of the braid (signs ignored)
    sa = list(range(n))  # strand occupying each slot
    for letter in letters:
        i = abs(letter)
        sa[i - 1], sa[i] = sa[i], sa[i - 1]
    end_slot = [0] * n
    for slot, strand in enumerate(sa):
        end_slot[strand] = slot
    # components: cycles of top slot -> its bottom slot
    comp_of = [-1] * n
    comps = 0
    for start in range(n):
        if comp_of[start] >= 0:
            continue
        j = start
        while comp_of[j] < 0:
            comp_of[j] = comps
            j = end_slot[j]
        comps += 1
    visits = []
    seen_start: set = set()
    for start in range(n):
        if start in seen_start:
            continue
        j = start
        while True:
            seen_start.add(j)
            slot = j
            for p, letter in enumerate(letters):
                i, pos = abs(letter), letter > 0
                if slot == i - 1 or slot == i:
                    over_slot = i - 1 if pos else i
                    visits.append((p, comp_of[start], slot == over_slot))
                    slot = i if slot == i - 1 else i - 1
            j = slot
            if j == start:
                break
    return comps, visits


def _first_bad_crossing(letters: tuple, n: int) -> Optional[int]:
    """First crossing violating the ascending rule, in traversal order.

    Same-component crossings must be met first on the under strand;
    crossings between two components must have the earlier component
    underneath.  A fully ascending closure is an unlink.
    """
    comps, visits = _closure_walk(letters, n)
    first: dict[int, tuple] = {}
    state: dict[int, bool] = {}
    for t, (p, comp, over) in enumerate(visits):
        if p not in first:
            first[p] = (t, comp, over)
        else:
            t1, c1, over1 = first[p]
            if c1 == comp:
                state[p] = not over1  # good iff first visit went under
            else:
                state[p] = not over1  # earlier visitor must be under
    order = sorted(first.items(), key=lambda kv: kv[1][0])
    for p, _ in order:
        if not state.get(p, True):
            return p
    return None


_SKEIN_CACHE: dict = {}


def homfly_skein(b, strands: Optional[int] = None) -> LPoly:
    """Skein-recursion evaluation of the same invariant, for cross-checks.

    Flips the first ascending-rule violation (strictly fewer violations,
    walk unchanged) or smooths it (strictly shorter word), so the
    recursion terminates; ascending closures are unlinks.
    """
    letters, n = _as_pair(b, strands)
    key = (n, letters)
    got = _SKEIN_CACHE.get(key)
    if got is not None:
        return got
    p = _first_bad_crossing(letters, n)
    if p is None:
        comps, _ = _closure_walk(letters, n)
        delta = LPoly(AZ, {(1, -1): 1, (-1, -1): -1})
        out = delta ** (comps - 1)
    else:
        flip = letters[:p] + (-letters[p],) + letters[p + 1 :]
        smooth = letters[:p] + letters[p + 1 :]
        if letters[p] > 0:
            out = LPoly.mono(AZ, (-2, 0)) * homfly_skein(flip, n) + LPoly.mono(
                AZ, (-1, 1)
            ) * homfly_skein(smooth, n)
        else:
            out = LPoly.mono(AZ, (2, 0)) * homfly_skein(flip, n) - LPoly.mono(
                AZ, (1, 1)
            ) * homfly_skein(smooth, n)
    _SKEIN_CACHE[key] = out
    return out


# ----------------------------------------------------------------------
# canonical strings
# ----------------------------------------------------------------------


def homfly_to_str(f: LPoly) -> str:
    if not f.terms:
        return "0"
    pieces = []
    for e, c in sorted(f.terms.items()):
        factors = []
        for name, p in zip(f.names, e):
            if p == 1:
                factors.append(name)
            elif p != 0:
                factors.append(f"{name}^{p}")
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


def parse_homfly(text: str, names: tuple = AZ) -> LPoly:
    text = text.strip()
    if text in ("", "0"):
        return LPoly(names)
    text = text.replace("-", "+-")
    terms: dict = {}
    for chunk in text.split("+"):
        chunk = chunk.strip()
        if not chunk:
            continue
        sign = Fraction(1)
        if chunk.startswith("-"):
            sign, chunk = Fraction(-1), chunk[1:].strip()
        coeff = sign
        exps = [0] * len(names)
        for factor in chunk.split("*"):
            factor = factor.strip()
            if not factor:
                continue
            head = factor.split("^")[0]
            if head in names:
                p = int(factor.split("^")[1]) if "^" in factor else 1
                exps[names.index(head)] += p
            else:
                coeff *= Fraction(factor)
        key = tuple(exps)
        c = terms.get(key, Fraction(0)) + coeff
        if c:
            terms[key] = c
        else:
            del terms[key]
    return LPoly(names, terms)
