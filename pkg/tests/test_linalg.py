import random
from fractions import Fraction

from soergelhh.linalg import (
    FracEchelon,
    intify_rows,
    kernel_basis,
    sparse_rank_int,
    sparse_rref,
)


def test_rank_simple():
    rows = [{0: 1, 1: 2}, {0: 2, 1: 4}, {2: 5}]
    assert sparse_rank_int(intify_rows(rows)) == 2


def test_rank_fraction_clearing():
    rows = [{0: Fraction(1, 2), 1: Fraction(1, 3)}, {0: Fraction(3, 2), 1: Fraction(1)}]
    assert sparse_rank_int(intify_rows([dict(r) for r in rows])) == 1
    rows.append({1: Fraction(2, 7)})
    assert sparse_rank_int(intify_rows(rows)) == 2


def test_rref_and_kernel():
    rows = [{0: 1, 1: 1, 2: 1}, {0: 1, 1: 2, 2: 3}]
    rref = sparse_rref(rows)
    assert [p for p, _ in rref] == [0, 1]
    kern = kernel_basis(rref, 3)
    assert len(kern) == 1
    v = kern[0]
    # check A v = 0
    for row in rows:
        assert sum(Fraction(c) * v.get(k, Fraction(0)) for k, c in row.items()) == 0


def test_echelon_membership_and_coords():
    ech = FracEchelon()
    ech.insert({0: Fraction(1), 1: Fraction(2)})
    ech.insert({1: Fraction(1), 2: Fraction(1)})
    assert ech.rank == 2
    inside = {0: Fraction(2), 1: Fraction(5), 2: Fraction(1)}
    r, combo = ech.reduce_tracked(inside)
    assert not r
    outside = {2: Fraction(1)}
    assert ech.reduce(outside)


def _dense_rank(rows, ncols):
    mat = [[Fraction(r.get(c, 0)) for c in range(ncols)] for r in rows]
    rank = 0
    for col in range(ncols):
        piv = None
        for r in range(rank, len(mat)):
            if mat[r][col]:
                piv = r
                break
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = 1 / mat[rank][col]
        mat[rank] = [v * inv for v in mat[rank]]
        for r in range(len(mat)):
            if r != rank and mat[r][col]:
                f = mat[r][col]
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[rank])]
        rank += 1
    return rank


def test_rank_against_dense_oracle_random():
    rng = random.Random(11)
    for _ in range(60):
        nrows, ncols = rng.randint(1, 8), rng.randint(1, 8)
        rows = []
        for _ in range(nrows):
            row = {}
            for c in range(ncols):
                if rng.random() < 0.4:
                    row[c] = rng.randint(-4, 4)
            rows.append({k: v for k, v in row.items() if v})
        want = _dense_rank(rows, ncols)
        got_int = sparse_rank_int(intify_rows([dict(r) for r in rows]))
        got_rref = len(sparse_rref([dict(r) for r in rows if r]))
        assert got_int == want == got_rref
