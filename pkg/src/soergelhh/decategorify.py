"""Cross-check of the graded Euler characteristic against the trace oracle.

The homological side computes triply graded tables; substituting -1 for
the homological variable leaves a two-variable series.  The decategorified
side computes the two-variable invariant from the Hecke algebra trace.
With the frozen dictionary from `calibration` applied monomialwise to the
trace invariant, both sides agree through the truncation bound; this
module implements that comparison.
"""

from __future__ import annotations

from fractions import Fraction

from . import calibration
from .groundring import LaurentSeries2
from .hecke import LPoly, homfly
from .rouquier import BraidWord, TruncationError, euler_characteristic, kr_homology

__all__ = ["oracle_series", "euler_check", "unknot_series"]


def unknot_series(cutoff) -> LaurentSeries2:
    """(1 + a q)/(1 - q), truncated at the given q-exponent."""
    one_plus_aq = LaurentSeries2(
        {(0, Fraction(0)): 1, (1, Fraction(1)): 1}
    )
    return one_plus_aq.div_one_minus(1, 0, 1, cap=cutoff)


def _dict_series(table: dict) -> LaurentSeries2:
    return LaurentSeries2({k: v for k, v in table.items()})


def oracle_series(P: LPoly, e: int, n: int, cutoff) -> LaurentSeries2:
    """Dictionary image of the trace invariant, times the unknot series.

    Each monomial a^p z^m of P has p = m (mod 2); even pairs map through
    the squared images, odd pairs factor off one a*z first.  Negative
    even z-powers expand the inverse of the z^2 image, q/(1-q)^2, as a
    truncated geometric series.
    """
    cutoff = Fraction(cutoff)
    phi2 = _dict_series(calibration.DICT_A_SQUARED)
    phi2_inv = LaurentSeries2({(1, Fraction(1)): -1})  # -(a q), exact inverse
    zeta2 = _dict_series(calibration.DICT_Z_SQUARED)
    xi = _dict_series(calibration.DICT_AZ)
    out = LaurentSeries2.zero(cutoff)
    for (p, m), c in P.terms.items():
        if (p - m) % 2:
            raise ValueError("trace invariant monomial with mismatched parity")
        term = LaurentSeries2.monomial(c, 0, 0, None)
        if p % 2:
            term = term * xi
            p -= 1
            m -= 1
        half_p = p // 2
        if half_p >= 0:
            for _ in range(half_p):
                term = term * phi2
        else:
            for _ in range(-half_p):
                term = term * phi2_inv
        half_m = m // 2
        if half_m >= 0:
            for _ in range(half_m):
                term = term * zeta2
        else:
            for _ in range(-half_m):
                # 1/(q - 2 + q^{-1}) = q/(1-q)^2
                term = term.shift(0, 1).truncate(cutoff)
                term = term.div_one_minus(1, 0, 1, cap=cutoff)
                term = term.div_one_minus(1, 0, 1, cap=cutoff)
        out = out + term.truncate(cutoff)
    return (out * unknot_series(cutoff)).truncate(cutoff)


def euler_check(b: BraidWord, cutoff: int) -> tuple:
    """Compare chi of the raw table with the dictionary image of the oracle.

    Returns (ok, lhs, rhs, qbound): both series and the q-exponent bound
    through which they were compared.  The bound must leave a nonempty
    window or a TruncationError is raised.
    """
    table = kr_homology(b, cutoff)
    chi = euler_characteristic(table)
    e, n = b.writhe, b.strands
    A, B, S = calibration.euler_shift(e, n)
    lhs = chi.shift(A, B).scale(S)
    P = homfly(b)
    rhs = oracle_series(P, e, n, Fraction(cutoff))
    qbound = min(lhs.qmax, rhs.qmax)
    if qbound < 1:
        raise TruncationError(f"cutoff {cutoff} leaves no comparison window")
    return lhs.equal_through(rhs, qbound), lhs, rhs, qbound
