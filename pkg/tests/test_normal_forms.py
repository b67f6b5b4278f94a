import random

import pytest

from mtors.linalg import IntMatrix, det, hnf, kernel_int, rational_kernel, snf
from mtors.linalg.matrix import RatMatrix

from oracles import hnf_oracle, rank_oracle, smith_invariants_oracle


def test_hnf_identity():
    H, U = hnf(IntMatrix.identity(3))
    assert H == IntMatrix.identity(3)
    assert U == IntMatrix.identity(3)


def test_hnf_spec_example():
    M = IntMatrix([[2, 0], [1, 1]])
    H, U = hnf(M)
    assert H.rows == [[1, 1], [0, 2]]
    assert (U * M).rows == H.rows
    assert det(U) in (1, -1)


def test_hnf_zero_matrix():
    H, U = hnf(IntMatrix([[0, 0], [0, 0]]))
    assert H.m == 0
    assert det(U) in (1, -1)


def test_hnf_idempotent_and_unimodular():
    rng = random.Random(1)
    for _ in range(60):
        m = rng.randint(1, 5)
        n = rng.randint(1, 5)
        M = IntMatrix([[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)])
        H, U = hnf(M)
        assert det(U) in (1, -1)
        UM = U * M
        assert UM.rows[: H.m] == H.rows
        assert all(not any(r) for r in UM.rows[H.m :])
        H2, _ = hnf(H)
        assert H2 == H


def test_hnf_matches_subtraction_oracle():
    rng = random.Random(2)
    for _ in range(60):
        m = rng.randint(1, 5)
        n = rng.randint(1, 5)
        rows = [[rng.randint(-20, 20) for _ in range(n)] for _ in range(m)]
        H, _ = hnf(IntMatrix(rows))
        assert H.rows == hnf_oracle(rows)


def test_snf_spec_examples():
    D, U, V = snf(IntMatrix([[4, 0], [0, 6]]))
    assert [D.rows[i][i] for i in range(2)] == [2, 12]
    D, U, V = snf(IntMatrix([[2, 4], [6, 8]]))
    assert [D.rows[i][i] for i in range(2)] == [2, 4]
    D, U, V = snf(IntMatrix.identity(4))
    assert D == IntMatrix.identity(4)


def test_snf_transform_and_chain():
    rng = random.Random(3)
    for _ in range(60):
        m = rng.randint(1, 5)
        n = rng.randint(1, 5)
        M = IntMatrix([[rng.randint(-15, 15) for _ in range(n)] for _ in range(m)])
        D, U, V = snf(M)
        assert (U * M * V).rows == D.rows
        assert det(U) in (1, -1)
        assert det(V) in (1, -1)
        diag = [D.rows[i][i] for i in range(min(m, n))]
        nz = [d for d in diag if d]
        for a, b in zip(nz, nz[1:]):
            assert b % a == 0
        # off-diagonal must vanish
        for i in range(D.m):
            for j in range(D.n):
                if i != j:
                    assert D.rows[i][j] == 0
        assert [d for d in nz if d > 1] == smith_invariants_oracle(M.rows)


def test_snf_determinant_product():
    rng = random.Random(4)
    for _ in range(40):
        n = rng.randint(1, 5)
        M = IntMatrix([[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)])
        d = det(M)
        D, _, _ = snf(M)
        prod = 1
        for i in range(n):
            prod *= D.rows[i][i]
        assert prod == abs(d)


def test_kernel_examples():
    assert rational_kernel(RatMatrix.from_int(IntMatrix.identity(3))).num.m == 0
    k = rational_kernel(RatMatrix.from_int(IntMatrix([[1, 1]])))
    assert k.num.rows == [[1, -1]]


def test_kernel_rank_nullity_and_saturation():
    rng = random.Random(5)
    for _ in range(60):
        m = rng.randint(1, 4)
        n = rng.randint(1, 5)
        rows = [[rng.randint(-8, 8) for _ in range(n)] for _ in range(m)]
        if rng.random() < 0.5 and m >= 2:
            rows[-1] = list(rows[0])  # force a duplicated row
        M = IntMatrix(rows)
        K = kernel_int(M)
        assert K.m == n - rank_oracle(rows)
        for krow in K.rows:
            assert all(sum(M.rows[i][j] * krow[j] for j in range(n)) == 0
                       for i in range(m))
        if K.m:
            # saturated: the quotient by the kernel is torsion free
            assert smith_invariants_oracle(K.rows) == []


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_det_vs_oracle(n):
    from oracles import det_oracle

    rng = random.Random(6 + n)
    for _ in range(30):
        rows = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]
        assert det(IntMatrix(rows)) == det_oracle(rows)
