import random
from fractions import Fraction

from partabel.linalg import SparseEchelon, dense_rank, nullspace, rank_of_rows, solve_linear
from partabel.scalars import PrimeField, QQ, random_prime


def random_sparse_rows(rng, nrows, ncols, density=0.3):
    rows = []
    for _ in range(nrows):
        row = {}
        for c in range(ncols):
            if rng.random() < density:
                v = rng.randint(-5, 5)
                if v:
                    row[c] = Fraction(v)
        rows.append(row)
    return rows


def to_dense(rows, ncols):
    return [[r.get(c, Fraction(0)) for c in range(ncols)] for r in rows]


def test_sparse_rank_matches_dense_oracle():
    rng = random.Random(3)
    for _ in range(25):
        nrows, ncols = rng.randint(1, 12), rng.randint(1, 10)
        rows = random_sparse_rows(rng, nrows, ncols)
        sparse = rank_of_rows(QQ, rows)
        dense = dense_rank(QQ, to_dense(rows, ncols))
        assert sparse == dense


def test_modp_rank_matches_rational_on_small_entries():
    rng = random.Random(5)
    p = random_prime(rng)
    gf = PrimeField(p)
    for _ in range(20):
        nrows, ncols = rng.randint(1, 10), rng.randint(1, 8)
        rows = random_sparse_rows(rng, nrows, ncols)
        rq = rank_of_rows(QQ, rows)
        rp = rank_of_rows(gf, [{c: int(v) % p for c, v in r.items()} for r in rows])
        assert rq == rp  # entries tiny, huge prime: no bad reduction


def test_echelon_pivot_rows_reduce_to_zero():
    rng = random.Random(7)
    rows = random_sparse_rows(rng, 15, 10)
    ech = SparseEchelon(QQ)
    for r in rows:
        ech.add_row(dict(r))
    for r in rows:
        assert ech.reduce(dict(r)) == {}


def test_reduce_remainder_is_supported_on_nonpivots():
    rng = random.Random(9)
    rows = random_sparse_rows(rng, 6, 8)
    ech = SparseEchelon(QQ)
    for r in rows:
        ech.add_row(dict(r))
    probe = {c: Fraction(rng.randint(-3, 3)) for c in range(8)}
    rem = ech.reduce(dict(probe))
    assert all(c not in ech.pivots for c in rem)


def test_nullspace_and_solve():
    rng = random.Random(11)
    for _ in range(15):
        nrows, ncols = rng.randint(1, 6), rng.randint(1, 6)
        m = [[Fraction(rng.randint(-4, 4)) for _ in range(ncols)] for _ in range(nrows)]
        for v in nullspace(QQ, m):
            for row in m:
                assert sum(a * b for a, b in zip(row, v)) == 0
        x = [Fraction(rng.randint(-3, 3)) for _ in range(ncols)]
        rhs = [sum(a * b for a, b in zip(row, x)) for row in m]
        sol = solve_linear(QQ, m, rhs)
        assert sol is not None
        for row, b in zip(m, rhs):
            assert sum(a * s for a, s in zip(row, sol)) == b


def test_solve_detects_inconsistency():
    m = [[Fraction(1), Fraction(0)], [Fraction(1), Fraction(0)]]
    assert solve_linear(QQ, m, [Fraction(1), Fraction(2)]) is None
