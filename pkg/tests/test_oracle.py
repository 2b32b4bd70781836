from __future__ import annotations

import itertools
import random

import pytest

from thinrep.errors import UsageError
from thinrep.field import GF, GF2, QQ
from thinrep.linalg import Matrix, rank
from thinrep.oracle import (
    PlantSpec,
    equioriented_multiplicities,
    hom_dim,
    interval_hom_matrix,
    multiplicities_via_hom,
    plant_instance,
    random_barcode,
    random_instance,
    random_orientation,
)
from thinrep.quiver import Barcode, Direction, Interval, Orientation, Representation, all_intervals, direct_sum, thin

from conftest import FIELDS, FIELD_IDS


def test_hom_dim_examples():
    for o in ["ff", "fb", "bf", "bb"]:
        orient = Orientation.parse(o)
        for iv in all_intervals(3):
            E = thin(orient, iv, QQ)
            assert hom_dim(E, E) == 1
    o = Orientation.parse("f")
    assert hom_dim(thin(o, Interval(1, 1), QQ), thin(o, Interval(1, 2), QQ)) == 0
    assert hom_dim(thin(o, Interval(1, 2), QQ), thin(o, Interval(1, 1), QQ)) == 1
    M = random_instance(Orientation.parse("fbf"), 2, GF(3), 5)
    assert hom_dim(M, direct_sum(M, M)) == 2 * hom_dim(M, M)
    with pytest.raises(UsageError):
        hom_dim(M, random_instance(Orientation.parse("fff"), 2, GF(3), 5))


def test_hom_dim_additive():
    rng = random.Random(4)
    for _ in range(40):
        n = rng.randint(1, 4)
        o = random_orientation(n, rng)
        f = rng.choice([GF2, GF(3), QQ])
        X, Y, Z = (random_instance(o, 2, f, rng.getrandbits(32)) for _ in range(3))
        assert hom_dim(direct_sum(X, Y), Z) == hom_dim(X, Z) + hom_dim(Y, Z)
        assert hom_dim(X, direct_sum(Y, Z)) == hom_dim(X, Y) + hom_dim(X, Z)


@pytest.mark.parametrize("n", range(1, 9))
def test_interval_hom_matrix_invertible(n):
    rng = random.Random(n)
    dirs = list(itertools.product((Direction.FORWARD, Direction.BACKWARD), repeat=n - 1))
    for d in rng.sample(dirs, min(len(dirs), 3 if n > 6 else 6)):
        ivs, C = interval_hom_matrix(Orientation(n, d), GF2)
        assert rank(Matrix.from_rows(QQ, C, len(ivs))) == len(ivs)


def test_multiplicities_examples():
    o = Orientation.parse("fb")
    for iv in all_intervals(3):
        assert multiplicities_via_hom(thin(o, iv, QQ)) == Barcode(3, {iv: 1})
    assert multiplicities_via_hom(Representation.zero(o, QQ)) == Barcode(3)
    A = Representation.build(o, QQ, (1, 2, 1), [[[1], [0]], [[1], [1]]])
    assert multiplicities_via_hom(A) == Barcode.parse(3, "1-2,2-3")


@pytest.mark.parametrize("field", FIELDS, ids=FIELD_IDS)
def test_oracle_recovers_plants_and_dims(field):
    rng = random.Random(8)
    for _ in range(12):
        n = rng.randint(1, 5)
        o = random_orientation(n, rng)
        spec = PlantSpec(o, random_barcode(n, rng, max_mult=2, max_dim=4), field, rng.getrandbits(64))
        A, planted = plant_instance(spec)
        m = multiplicities_via_hom(A)
        assert m == planted and m.dims() == A.dims


def test_plant_examples():
    o = Orientation.parse("fbb")
    A, b = plant_instance(PlantSpec(o, Barcode(4), GF(5), 1))
    assert A == Representation.zero(o, GF(5)) and len(b) == 0
    iv = Interval(2, 4)
    A, _ = plant_instance(PlantSpec(o, Barcode(4, {iv: 1}), GF(5), 1), conjugate=False)
    assert A == thin(o, iv, GF(5))
    spec = PlantSpec(o, Barcode.parse(4, "1-3:2,2-4,3-3:3"), QQ, 12345)
    assert plant_instance(spec) == plant_instance(spec)
    with pytest.raises(UsageError):
        PlantSpec(o, Barcode(3), QQ, 0)


def test_random_instance_contract():
    o = Orientation.parse("fbf")
    assert random_instance(o, 4, GF(7), 3) == random_instance(o, 4, GF(7), 3)
    rng = random.Random(0)
    for _ in range(50):
        A = random_instance(o, 4, GF(7), rng.getrandbits(32))
        assert all(0 <= d <= 4 for d in A.dims) and A.field == GF(7)


def test_random_barcode_respects_bounds():
    rng = random.Random(2)
    for _ in range(200):
        n = rng.randint(1, 12)
        b = random_barcode(n, rng, max_mult=3, max_dim=8)
        assert all(m <= 3 for m in b.items.values())
        assert all(d <= 8 for d in b.dims())


def test_equioriented_formula_against_oracle():
    rng = random.Random(6)
    for _ in range(60):
        n = rng.randint(1, 6)
        A = random_instance(Orientation.equioriented(n), 3, rng.choice(FIELDS), rng.getrandbits(32))
        assert equioriented_multiplicities(A) == multiplicities_via_hom(A)
    with pytest.raises(UsageError):
        equioriented_multiplicities(random_instance(Orientation.parse("fb"), 2, QQ, 0))
