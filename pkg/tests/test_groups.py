import random

import pytest

from mtors.errors import InfiniteOrder, NotStable, NotSublattice
from mtors.linalg import (
    FinAbelianGroup,
    IntMatrix,
    Lattice,
    det,
    fixed_subgroup,
    subgroup_generated,
)
from mtors.linalg.matrix import RatMatrix

from oracles import invariants_consistent_with_elements


def test_invariants_diagonal():
    G = FinAbelianGroup(Lattice.standard(2), Lattice(IntMatrix([[2, 0], [0, 4]])))
    assert G.invariants == [2, 4]
    assert G.order == 8
    assert G.exponent == 4


def test_invariants_trivial():
    L = Lattice(IntMatrix([[1, 2], [0, 3]]))
    assert FinAbelianGroup(L, L).invariants == []


def test_invariants_conjugated():
    # unimodular images of diag(2, 6) still present Z/2 x Z/6
    rng = random.Random(20)
    for _ in range(20):
        U = _random_unimodular(rng, 2)
        V = _random_unimodular(rng, 2)
        M = U * IntMatrix([[2, 0], [0, 6]]) * V
        G = FinAbelianGroup(Lattice.standard(2), Lattice(M))
        assert G.invariants == [2, 6]


def _random_unimodular(rng, n):
    U = IntMatrix.identity(n)
    for _ in range(6):
        i, j = rng.sample(range(n), 2)
        c = rng.randint(-3, 3)
        rows = [list(r) for r in U.rows]
        rows[i] = [a + c * b for a, b in zip(rows[i], rows[j])]
        U = IntMatrix(rows)
    return U


def test_not_sublattice():
    with pytest.raises(NotSublattice):
        FinAbelianGroup(Lattice(IntMatrix([[2, 0], [0, 2]])), Lattice.standard(2))


def test_invariants_vs_bruteforce():
    rng = random.Random(21)
    done = 0
    while done < 40:
        n = rng.randint(1, 3)
        rows = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(n)]
        M = IntMatrix(rows)
        d = abs(det(M))
        if d == 0 or d > 1000:
            continue
        done += 1
        H = Lattice(M)
        G = FinAbelianGroup(Lattice.standard(n), H)
        assert invariants_consistent_with_elements(G.invariants, Lattice.standard(n), H)


def test_fixed_subgroup_identity():
    G = FinAbelianGroup(Lattice(IntMatrix.identity(2), 5), Lattice.standard(2))
    F = fixed_subgroup(G, IntMatrix.identity(2))
    assert F.invariants == G.invariants


def test_fixed_subgroup_swap_on_z5_squared():
    G = FinAbelianGroup(Lattice(IntMatrix.identity(2), 5), Lattice.standard(2))
    F = fixed_subgroup(G, IntMatrix([[0, 1], [1, 0]]))
    assert F.invariants == [5]


def test_fixed_subgroup_minus_one_on_two_torsion():
    G = FinAbelianGroup(Lattice(IntMatrix.identity(1), 2), Lattice.standard(1))
    F = fixed_subgroup(G, IntMatrix([[-1]]))
    assert F.invariants == G.invariants == [2]


def test_fixed_subgroup_not_stable():
    G = FinAbelianGroup(Lattice(IntMatrix.identity(2), 5), Lattice.standard(2))
    with pytest.raises(NotStable):
        fixed_subgroup(G, RatMatrix(IntMatrix.identity(2), 3))


def test_fixed_subgroup_vs_bruteforce():
    rng = random.Random(22)
    done = 0
    while done < 40:
        n = rng.randint(1, 2)
        d = rng.choice([2, 3, 4, 5, 6, 8, 12])
        L = Lattice(IntMatrix.identity(n), d)
        H = Lattice.standard(n)
        phi = IntMatrix([[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)])
        G = FinAbelianGroup(L, H)
        if G.order > 1000:
            continue
        done += 1
        F = fixed_subgroup(G, phi)
        delta = phi - IntMatrix.identity(n)
        # brute force over all cosets (1/d)Z^n / Z^n
        fixed_lattice_members = []
        import itertools

        for coords in itertools.product(range(d), repeat=n):
            img = delta.apply(list(coords))
            if all(v % d == 0 for v in img):
                fixed_lattice_members.append(coords)
        assert F.order == len(fixed_lattice_members)
        assert invariants_consistent_with_elements(F.invariants, F.ambient, F.sub)


def test_subgroup_generated_examples():
    H = Lattice.standard(2)
    assert subgroup_generated([([2, 0], 1), ([0, 5], 1)], H).invariants == []
    assert subgroup_generated([([1, 0], 5)], H).invariants == [5]
    assert subgroup_generated([([1, 0], 2), ([0, 1], 3)], H).invariants == [6]


def test_subgroup_generated_infinite_order():
    H = Lattice(IntMatrix([[1, 0]]), 1, ambient_dim=2)
    with pytest.raises(InfiniteOrder):
        subgroup_generated([([0, 1], 2)], H)


def test_subgroup_generated_brute():
    rng = random.Random(23)
    for _ in range(30):
        n = rng.randint(1, 2)
        H = Lattice.standard(n)
        gens = []
        for _ in range(rng.randint(1, 3)):
            den = rng.choice([2, 3, 4, 6])
            gens.append(([rng.randint(-3, 3) for _ in range(n)], den))
        G = subgroup_generated(gens, H)
        assert invariants_consistent_with_elements(G.invariants, G.ambient, G.sub)
