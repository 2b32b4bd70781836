from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from thinrep.decompose import (
    certificate_problems,
    collapse_middle,
    decompose,
    decompose_a3_peak,
    decompose_collapsed,
    decompose_linear_map,
    peak_split,
    verify_certificate,
)
from thinrep.errors import CertificateError, InternalLogicError, UsageError
from thinrep.field import GF, QQ
from thinrep.linalg import Matrix, inverse, mul_mat, rank
from thinrep.oracle import (
    PlantSpec,
    multiplicities_via_hom,
    plant_instance,
    random_instance,
    random_invertible,
    random_orientation,
)
from thinrep.quiver import (
    Barcode,
    Interval,
    Orientation,
    Representation,
    apply_base_change,
    direct_sum,
    is_peak,
    reverse,
    thin,
)

from conftest import FIELDS, FIELD_IDS, checked


def bc(n, text):
    return Barcode.parse(n, text)


# examples


def test_linear_map_examples():
    Z = Representation.zero(Orientation.parse("f"), QQ, (2, 1))
    assert checked(Z).barcode == bc(2, "1-1:2,2-2:1")
    A = Representation.build("f", QQ, (2, 1), [[[1, 0]]])
    assert checked(A).barcode == bc(2, "1-2,1-1")
    Bk = Representation.build("b", QQ, (1, 2), [[[1, 0]]])
    assert decompose_linear_map(Bk).barcode == bc(2, "1-2,2-2")
    I = Representation(Orientation.parse("f"), (3, 3), (Matrix.identity(GF(7), 3),), GF(7))
    assert decompose_linear_map(I).barcode == bc(2, "1-2:3")
    Z = Representation.zero(Orientation.parse("b"), GF(2), (2, 3))
    assert decompose_linear_map(Z).barcode == bc(2, "1-1:2,2-2:3")
    with pytest.raises(UsageError):
        decompose_linear_map(Representation.zero(Orientation.parse("ff"), QQ))


def test_a3_examples():
    A = Representation.build("fb", QQ, (1, 2, 1), [[[1], [0]], [[1], [1]]])
    assert checked(A).barcode == bc(3, "1-2,2-3")
    assert multiplicities_via_hom(A) == bc(3, "1-2,2-3")
    ident = Representation.build("ff", GF(5), (1, 1, 1), [[[1]], [[1]]])
    assert checked(ident).barcode == bc(3, "1-3")


def test_a3_case_plans():
    # both maps into the peak, equal images
    A = Representation.build("fb", QQ, (1, 1, 1), [[[1]], [[1]]])
    assert decompose_a3_peak(A).barcode == bc(3, "1-3")
    # both maps into the peak, complementary images
    A = Representation.build("fb", QQ, (1, 2, 1), [[[1], [0]], [[0], [1]]])
    assert decompose_a3_peak(A).barcode == bc(3, "1-2,2-3")
    # both maps out of the peak, trivial kernels
    A = Representation.build("bf", QQ, (1, 1, 1), [[[1]], [[1]]])
    assert decompose_a3_peak(A).barcode == bc(3, "1-3")
    # 1 -> 2 -> 3: the composite is nonzero exactly when ker(beta) misses im(alpha)
    A = Representation.build("ff", QQ, (1, 2, 1), [[[1], [0]], [[1, 1]]])
    assert decompose_a3_peak(A).barcode == bc(3, "1-3,2-2") == multiplicities_via_hom(A)
    A = Representation.build("ff", QQ, (1, 2, 1), [[[1], [0]], [[0, 1]]])
    assert decompose_a3_peak(A).barcode == bc(3, "1-2,2-3") == multiplicities_via_hom(A)
    # mirrored orientation goes through reverse
    A = Representation.build("bb", QQ, (1, 2, 1), [[[0, 1]], [[1], [0]]])
    assert decompose_a3_peak(A).barcode == multiplicities_via_hom(A)
    with pytest.raises(UsageError):
        decompose_a3_peak(Representation.build("fb", QQ, (2, 1, 0), [[[1, 0]], [[]]]))


@pytest.mark.parametrize("dirs", ["ff", "fb", "bf", "bb"])
def test_a3_random_peaked(dirs, field):
    rng = random.Random(dirs)
    o = Orientation.parse(dirs)
    for _ in range(40):
        items = {iv: rng.randint(0, 2) for iv in [Interval(1, 2), Interval(2, 3), Interval(1, 3), Interval(2, 2)]}
        A, planted = plant_instance(PlantSpec(o, Barcode(3, items), field, rng.getrandbits(64)))
        assert is_peak(A, 2)
        dec = decompose_a3_peak(A)
        assert dec.barcode == planted and certificate_problems(A, dec) == []


def test_planted_example_f101():
    o = Orientation.parse("fff")
    target = bc(4, "1-4:1,2-3:2,4-4:1")
    A, planted = plant_instance(PlantSpec(o, target, GF(101), 2024))
    assert planted == target
    assert checked(A).barcode == target


def test_zero_and_single_vertex():
    Z = Representation.zero(Orientation.parse("fbf"), GF(3))
    dec = checked(Z)
    assert len(dec.barcode) == 0 and dec.summands == ()
    one = Representation.zero(Orientation(1, ()), QQ, (3,))
    assert checked(one).barcode == bc(1, "1-1:3")


# collapse


def test_collapse_n3_identity():
    A = Representation.build("fb", QQ, (1, 2, 1), [[[1], [0]], [[1], [1]]])
    col = collapse_middle(A)
    assert col.a3 == A and all(T.is_identity() for T in col.transport)


def test_collapse_equioriented_identity_middle():
    f = GF(5)
    A = Representation.build("fff", f, (1, 2, 2, 1),
                             [[[1], [2]], [[1, 0], [0, 1]], [[3, 4]]])
    col = collapse_middle(A)
    assert col.a3 == Representation.build("ff", f, (1, 2, 1), [[[1], [2]], [[3, 4]]])
    table = {(1, 1): (1, 1), (2, 2): (2, 3), (3, 3): (4, 4), (1, 2): (1, 3), (2, 3): (2, 4), (1, 3): (1, 4)}
    for (a, b), (c, d) in table.items():
        assert col.pull_back(Interval(a, b)) == Interval(c, d)


def test_collapse_rejects_noninvertible_middle():
    A = Representation.build("fff", QQ, (1, 1, 1, 1), [[[1]], [[0]], [[1]]])
    with pytest.raises(InternalLogicError):
        collapse_middle(A)


def _doubly_peaked_instance(n, field, rng):
    o = random_orientation(n, rng)
    items = {Interval(a, b): rng.randint(0, 2) for a in (1, 2) for b in (n - 1, n)}
    return plant_instance(PlantSpec(o, Barcode(n, items), field, rng.getrandbits(64)))


@pytest.mark.parametrize("n", [4, 5, 6])
def test_collapse_pull_back_matches_decompose(n):
    rng = random.Random(n)
    for _ in range(30):
        A, planted = _doubly_peaked_instance(n, GF(5), rng)
        assert is_peak(A, 2) and is_peak(A, n - 1)
        col = collapse_middle(A)
        small = decompose_a3_peak(col.a3).barcode
        pulled = Barcode(n, {col.pull_back(iv): m for iv, m in small.items.items()})
        assert pulled == planted == decompose(A).barcode
        dec = decompose_collapsed(A)
        assert dec.barcode == planted and certificate_problems(A, dec) == []
        assert multiplicities_via_hom(A) == planted


# peak_split


def test_peak_split_example():
    o = Orientation.parse("ff")
    A = direct_sum(thin(o, Interval(1, 3), QQ), thin(o, Interval(1, 1), QQ))
    sp = peak_split(A, 2)
    assert sp.problems(A) == []
    assert [U.dim for U in sp.B] == [1, 1, 1]
    assert [U.dim for U in sp.C] == [1, 0, 0]
    assert [U.dim for U in sp.D] == [0, 0, 0]


def test_peak_split_zero_at_x():
    o = Orientation.parse("fbbf")
    A = direct_sum(thin(o, Interval(1, 2), GF(3)), thin(o, Interval(4, 5), GF(3)))
    sp = peak_split(A, 3)
    assert sp.problems(A) == []
    assert all(U.dim == 0 for U in sp.B)
    assert [U.dim for U in sp.C] == [1, 1, 0, 0, 0]
    assert [U.dim for U in sp.D] == [0, 0, 0, 1, 1]


def test_peak_split_random():
    rng = random.Random(55)
    for _ in range(60):
        n = rng.randint(3, 6)
        x = rng.randint(2, n - 1)
        A = random_instance(random_orientation(n, rng), 3, GF(3), rng.getrandbits(32))
        assert peak_split(A, x).problems(A) == []
    with pytest.raises(UsageError):
        peak_split(A, 1)


# certificates


def test_certificate_tampering_detected():
    A, _ = plant_instance(PlantSpec(Orientation.parse("fb"), bc(3, "1-3,2-2,1-2"), GF(7), 9))
    dec = decompose(A)
    verify_certificate(A, dec)
    P = list(dec.base_change)
    P[1] = mul_mat(P[1], Matrix.from_rows(GF(7), [[1, 1, 0], [0, 1, 0], [0, 0, 1]]))
    bad = type(dec)(dec.n, dec.field, dec.summands, tuple(P), dec.column_tags)
    assert certificate_problems(A, bad)
    with pytest.raises(CertificateError):
        verify_certificate(A, bad)


def test_canonical_order_and_determinism():
    A = random_instance(Orientation.parse("fbbf"), 3, GF(3), 8)
    d1, d2 = decompose(A), decompose(A)
    assert d1 == d2
    keys = [(s.interval.a, s.interval.b) for s in d1.summands]
    assert keys == sorted(keys) and [s.id for s in d1.summands] == list(range(len(keys)))


# properties


def _rank_identity(A, barcode):
    for s, t, M in A.arrows():
        lo, hi = min(s, t), max(s, t)
        want = sum(m for iv, m in barcode.items.items() if iv.a <= lo and hi <= iv.b)
        assert rank(M) == want


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 7), st.integers(0, 2**32), st.sampled_from(FIELDS))
def test_soundness_completeness_rank_identity(n, seed, field):
    rng = random.Random(seed)
    A = random_instance(random_orientation(n, rng), 4, field, rng.getrandbits(32))
    dec = checked(A)
    assert dec.barcode.dims() == A.dims
    _rank_identity(A, dec.barcode)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 7), st.integers(0, 2**32), st.sampled_from(FIELDS))
def test_additivity_mirror_base_change(n, seed, field):
    rng = random.Random(seed)
    o = random_orientation(n, rng)
    A = random_instance(o, 3, field, rng.getrandbits(32))
    Bm = random_instance(o, 3, field, rng.getrandbits(32))
    bA, bB = decompose(A).barcode, decompose(Bm).barcode
    assert checked(direct_sum(A, Bm)).barcode == bA + bB
    assert checked(reverse(A)).barcode == bA.mirrored()
    P = [random_invertible(field, d, rng) for d in A.dims]
    assert checked(apply_base_change(A, P)).barcode == bA


@pytest.mark.parametrize("field", FIELDS, ids=FIELD_IDS)
def test_oracle_agreement(field):
    rng = random.Random(31)
    for _ in range(25):
        n = rng.randint(1, 6)
        A = random_instance(random_orientation(n, rng), 4, field, rng.getrandbits(32))
        assert checked(A).barcode == multiplicities_via_hom(A)


def test_planted_round_trip_with_inverse_certificate():
    rng = random.Random(77)
    for _ in range(30):
        n = rng.randint(1, 9)
        o = random_orientation(n, rng)
        items = {Interval(a, b): rng.randint(0, 2) for a in range(1, n + 1) for b in range(a, n + 1)
                 if rng.random() < 0.3}
        A, planted = plant_instance(PlantSpec(o, Barcode(n, items), GF(3), rng.getrandbits(64)))
        dec = checked(A)
        assert dec.barcode == planted
        # conjugating by the certificate yields the canonical direct sum of intervals
        routed = apply_base_change(A, dec.base_change, [inverse(P) for P in dec.base_change])
        for s, t, M in routed.arrows():
            assert all(v in (0, 1) for row in M.rows for v in row)
