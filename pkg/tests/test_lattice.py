import random

import pytest

from mtors.errors import SingularOperator
from mtors.linalg import IntMatrix, Lattice, preimage_lattice
from mtors.linalg.lattice import integral_preimage_joint, preimage_in_lattice
from mtors.linalg.matrix import RatMatrix


def rand_lattice(rng, n, full_rank=True):
    while True:
        rows = [[rng.randint(-6, 6) for _ in range(n)] for _ in range(n)]
        L = Lattice(IntMatrix(rows), rng.randint(1, 4))
        if not full_rank or L.rank == n:
            return L


def test_standard_and_equality():
    assert Lattice.standard(3) == Lattice(IntMatrix.identity(3))
    assert Lattice.standard(2) != Lattice(IntMatrix.identity(2), 2)


def test_sum_idempotent():
    rng = random.Random(10)
    for _ in range(20):
        L = rand_lattice(rng, 3)
        assert L + L == L


def test_intersect_scaled_standard():
    two = Lattice(IntMatrix.identity(2).scale(2))
    three = Lattice(IntMatrix.identity(2).scale(3))
    six = Lattice(IntMatrix.identity(2).scale(6))
    assert two.intersect(three) == six


def test_contains_index_two():
    Z2 = Lattice.standard(2)
    L = Lattice(IntMatrix([[1, 1], [1, -1]]))
    assert Z2.contains(L)
    assert not L.contains(Z2)
    assert L.index_in(Z2) == 2


def test_sum_and_intersect_brute():
    rng = random.Random(11)
    for _ in range(25):
        A = rand_lattice(rng, 2)
        B = rand_lattice(rng, 2)
        S = A + B
        I = A.intersect(B)
        assert S.contains(A) and S.contains(B)
        assert A.contains(I) and B.contains(I)
        # covolume identity: covol(A)*covol(B) = covol(S)*covol(I)
        from mtors.linalg import det

        def covol(L):
            from fractions import Fraction

            return abs(Fraction(det(L.basis), L.denom ** L.ambient_dim))

        assert covol(A) * covol(B) == covol(S) * covol(I)


def test_preimage_scaled_identity():
    H = Lattice.standard(3)
    A = RatMatrix.from_int(IntMatrix.identity(3).scale(5))
    L = preimage_lattice(A, H)
    assert L == Lattice(IntMatrix.identity(3), 5)
    assert preimage_lattice(RatMatrix.identity(3), H) == H


def test_preimage_spec_example():
    A = RatMatrix.from_int(IntMatrix([[1, 1], [0, 2]]))
    L = preimage_lattice(A, Lattice.standard(2))
    want = Lattice(IntMatrix([[2, 0], [1, 1]]), 2)
    assert L == want
    assert Lattice.standard(2).index_in(L) == 2
    # brute force over the (1/2)Z^2 candidates
    for a in range(-4, 5):
        for b in range(-4, 5):
            num = [a, b]
            img = A.num.apply(num)
            member_direct = all(v % 2 == 0 for v in img)  # A*(num/2) integral
            assert L.contains_vector(num, 2) == member_direct


def test_preimage_maps_into_h():
    rng = random.Random(12)
    count = 0
    while count < 100:
        n = rng.randint(1, 3)
        rows = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(n)]
        A = IntMatrix(rows)
        from mtors.linalg import det

        if det(A) == 0:
            continue
        count += 1
        H = rand_lattice(rng, n)
        L = preimage_lattice(RatMatrix.from_int(A), H)
        for row in L.basis.rows:
            img = A.apply(row)
            assert H.contains_vector(img, L.denom)


def test_preimage_singular_raises():
    A = RatMatrix.from_int(IntMatrix([[1, 1], [1, 1]]))
    with pytest.raises(SingularOperator):
        preimage_lattice(A, Lattice.standard(2))


def test_joint_preimage_matches_composed_route():
    rng = random.Random(13)
    from mtors.linalg import det

    done = 0
    while done < 30:
        n = rng.randint(1, 3)
        A = IntMatrix([[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)])
        B = IntMatrix([[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)])
        if det(A) == 0 or det(B) == 0:
            continue
        done += 1
        H = Lattice.standard(n)
        joint = integral_preimage_joint([A, B])
        composed = preimage_lattice(RatMatrix.from_int(A), H).intersect(
            preimage_lattice(RatMatrix.from_int(B), H)
        )
        assert joint == composed


def test_preimage_in_lattice_restricts_domain():
    # {x in (1/2)Z^2 : (swap - 1) x in Z^2}
    dom = Lattice(IntMatrix.identity(2), 2)
    swap_minus_1 = IntMatrix([[-1, 1], [1, -1]])
    L = preimage_in_lattice(dom, RatMatrix.from_int(swap_minus_1), Lattice.standard(2))
    for a in range(-4, 5):
        for b in range(-4, 5):
            img = swap_minus_1.apply([a, b])
            member = all(v % 2 == 0 for v in img)
            assert L.contains_vector([a, b], 2) == member


def test_saturation():
    L = Lattice(IntMatrix([[2, 1]]))
    S = L.saturation()
    assert S == Lattice(IntMatrix([[2, 1]]))  # (2,1) is primitive
    L2 = Lattice(IntMatrix([[4, 2]]))
    assert L2.saturation() == S
    assert Lattice(IntMatrix([[2, 0], [0, 2]])).saturation() == Lattice.standard(2)
