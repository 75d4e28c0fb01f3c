import itertools
import random

import pytest

from chaincert.matrix import Matrix
from chaincert.resolution import ModulePresentation, generate_resolution
from chaincert.rings import ZZ, GroupRing, GroupTable, PrimeField

F2 = PrimeField(2)
F3 = PrimeField(3)
F5 = PrimeField(5)


@pytest.fixture(scope="session")
def zc2():
    return GroupRing(ZZ, GroupTable.cyclic(2))


@pytest.fixture(scope="session")
def f2c2():
    return GroupRing(F2, GroupTable.cyclic(2))


def random_presentation(ring, rng):
    """Small random module presentation over Z or a prime field."""
    if isinstance(ring, PrimeField):
        ambient = rng.randint(0, 2)
        return ModulePresentation(ring, ambient, Matrix(ring, ambient, 0, ()))
    ambient = rng.randint(1, 2)
    cols = []
    for i in range(ambient):
        if rng.random() < 0.6:
            m = rng.choice([2, 3, 4, 6])
            col = [0] * ambient
            col[i] = m
            cols.append(col)
    entries = [cols[j][i] for i in range(ambient) for j in range(len(cols))]
    return ModulePresentation(ring, ambient, Matrix(ring, ambient, len(cols), entries))


def random_resolution_pair(ring, n, max_rank, rng):
    pres = random_presentation(ring, rng)
    res_p = generate_resolution(pres, n=n, max_rank=max_rank, seed=rng.randrange(2**30))
    res_q = generate_resolution(pres, n=n, max_rank=max_rank, seed=rng.randrange(2**30))
    return res_p, res_q


def s3_resolution():
    """Length-2 free resolution of Z over Z[S3], from the standard
    two-generator three-relator presentation of the group; validated by the
    test suite before use."""
    from chaincert.chain import ChainComplex
    from chaincert.resolution import TruncatedResolution

    table = GroupTable.symmetric(3)
    ring = GroupRing(ZZ, table)
    perms = sorted(itertools.permutations(range(3)))
    idx = {p: i for i, p in enumerate(perms)}
    s_i = idx[(1, 2, 0)]
    t_i = idx[(1, 0, 2)]

    def g(i):
        return ring.basis_element(i)

    one = ring.one
    s, t = g(s_i), g(t_i)
    s2 = g(table.mult[s_i][s_i])
    st = g(table.mult[s_i][t_i])
    s_m1 = ring.sub(s, one)
    t_m1 = ring.sub(t, one)

    rel = Matrix(ring, 1, 2, [s_m1, t_m1])
    d1 = Matrix(ring, 1, 2, [s_m1, t_m1])
    d2 = Matrix(
        ring, 2, 3,
        [
            ring.add(ring.add(one, s), s2), ring.zero, ring.add(s2, t),
            ring.zero, ring.add(one, t), ring.add(one, st),
        ],
    )
    pres = ModulePresentation(ring, 1, rel)
    return TruncatedResolution(
        pres, ChainComplex(ring, [1, 2, 3], [d1, d2]), Matrix(ring, 1, 1, [one])
    )


@pytest.fixture(scope="session")
def acceptance_certificates():
    """The 200 randomized certificates shared by several acceptance
    criteria: (ring label, pair, certificate) triples."""
    from chaincert.stabilize import total_equivalence

    rng = random.Random(20260810)
    rings = [F2, F5, ZZ]
    out = []
    for case in range(200):
        ring = rings[case % 3]
        n = rng.randint(1, 4)
        res_p, res_q = random_resolution_pair(ring, n, max_rank=5, rng=rng)
        cert = total_equivalence(res_p, res_q)
        out.append((str(ring), (res_p, res_q), cert))
    return out
