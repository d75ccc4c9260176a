import numpy as np
import pytest

from gen import NESTED, RUNNING, adversarial
from segsum.errors import CapabilityError, FormatError, RangeError
from segsum.index import EMPTY, RMaxSSQIndex, SegmentAnswer, build_index
from segsum.oracle import naive_all_windows, naive_rmaxssq


def windows(n):
    i, j = np.triu_indices(n)
    return i + 1, j + 1


def check_all_windows(a):
    a = np.asarray(a)
    idx = build_index(a)
    i, j = windows(a.size)
    lo, hi = idx.query_many(i, j)
    wlo, whi = naive_all_windows(a)
    assert np.array_equal(lo, wlo[i, j]) and np.array_equal(hi, whi[i, j])
    return idx, lo, hi


def test_examples():
    idx = build_index(RUNNING)
    assert idx.n == 5
    assert idx.query(1, 5) == SegmentAnswer("range", 1, 3)
    assert idx.query(2, 5).as_tuple() == (5, 5)
    assert build_index([10, -2, 5, -9, 2]).query(2, 5).as_tuple() == (3, 3)
    assert build_index([-5, -1, -7]).query(1, 3) is EMPTY
    assert build_index([0]).query(1, 1).kind == "empty"
    neg = build_index([-1, -2])
    assert all(neg.query(i, j).kind == "empty" for i in (1, 2) for j in (1, 2) if i <= j)
    assert str(idx.query(1, 5)) == "1 3" and str(EMPTY) == "empty"


def test_oracle_examples():
    assert naive_rmaxssq(RUNNING, 1, 5).as_tuple() == (1, 3)
    assert naive_rmaxssq([1, -2, 1], 1, 3).as_tuple() == (3, 3)
    assert naive_rmaxssq([-1], 1, 1).kind == "empty"


def test_left_min_and_sib():
    idx = build_index(RUNNING)
    assert idx.left_min(4) == 1
    assert idx.left_min(3) == 3
    assert idx.left_sib(6) == 1
    assert idx.left_sib(2) is None
    assert build_index([10, -2, 5, -9, 2]).left_sib(6) == 3
    assert build_index(NESTED).left_min(8) == 1
    with pytest.raises(ValueError):
        idx.left_sib(3)
    with pytest.raises(RangeError):
        idx.left_min(7)


def test_nonempty_variant():
    assert build_index([-5, -1, -7], with_nonempty=True).query_nonempty(1, 3) == SegmentAnswer("nonpositive", 2, 2)
    assert build_index([-5, -1, -1], with_nonempty=True).query_nonempty(1, 3).lo == 3
    assert build_index(RUNNING, with_nonempty=True).query_nonempty(1, 5).as_tuple() == (1, 3)
    with pytest.raises(CapabilityError):
        build_index(RUNNING).query_nonempty(1, 5)


def test_range_errors():
    idx = build_index(RUNNING)
    for i, j in [(0, 1), (3, 2), (1, 6)]:
        with pytest.raises(RangeError):
            idx.query(i, j)
    with pytest.raises(RangeError):
        idx.query_many([1, 2], [5, 9])
    with pytest.raises(ValueError):
        idx.query_many([1, 2], [5])


def test_random_all_windows():
    rng = np.random.default_rng(31)
    for _ in range(2000):
        check_all_windows(rng.integers(-20, 21, int(rng.integers(1, 65))))


@pytest.mark.parametrize("name", sorted(adversarial(64)))
def test_adversarial_all_windows(name):
    check_all_windows(adversarial(64)[name])


def test_answers_have_positive_sum():
    rng = np.random.default_rng(32)
    for _ in range(300):
        a = rng.integers(-5, 6, int(rng.integers(1, 50)))
        _, lo, hi = check_all_windows(a)
        c = np.concatenate(([0], np.cumsum(a)))
        ok = lo > 0
        assert (c[hi[ok]] - c[lo[ok] - 1] > 0).all()


def test_larger_arrays_spot_check():
    rng = np.random.default_rng(33)
    a = rng.integers(-50, 51, 3000)
    idx = build_index(a)
    for _ in range(300):
        i, j = sorted(rng.integers(1, 3001, 2).tolist())
        j = min(j, i + 120)
        assert idx.query(i, j).as_tuple() == naive_rmaxssq(a, i, j).as_tuple()


def test_size_bounds():
    n = 1 << 20
    a = np.random.default_rng(0).integers(-(1 << 20), 1 << 20, n)
    assert build_index(a).size_in_bits() / n <= 13.0
    plus = build_index(a, with_nonempty=True)
    assert plus.size_in_bits() / n <= 15.2
    allneg = build_index(-np.abs(a) - 1)
    graphs = allneg.g.size_in_bits() + allneg.h.size_in_bits()
    # no edges: each graph is just its n + 1 vertex pairs, 2 bits apiece
    assert allneg.g.m == allneg.h.m == 0
    assert 4 * (n + 1) <= graphs <= 4.5 * n


# -- persistence ------------------------------------------------------------


def test_roundtrip():
    rng = np.random.default_rng(34)
    for flag in (False, True):
        a = rng.integers(-20, 21, 300)
        idx = build_index(a, with_nonempty=flag)
        data = idx.serialize()
        back = RMaxSSQIndex.deserialize(data)
        assert back.serialize() == data and back == idx and hash(back) == hash(idx)
        i, j = windows(300)
        assert all(np.array_equal(x, y) for x, y in zip(back.query_many(i, j), idx.query_many(i, j)))


def corrupt_code(data):
    with pytest.raises(FormatError) as info:
        RMaxSSQIndex.deserialize(data)
    return info.value.code


def test_corruption_codes():
    data = build_index(RUNNING).serialize()
    assert corrupt_code(data[:10]) == "truncated"
    assert corrupt_code(data[:-9]) == "truncated"
    assert corrupt_code(b"XXXX" + data[4:]) == "bad-magic"
    assert corrupt_code(data[:4] + bytes([2]) + data[5:]) == "unsupported-version"
    assert corrupt_code(data[:5] + bytes([4]) + data[6:]) == "unsupported-version"
    flipped = bytearray(data)
    flipped[30] ^= 1
    assert corrupt_code(bytes(flipped)) == "checksum"
    assert corrupt_code(data[:-4] + b"\0" * 8 + data[-4:]) == "corrupt"


def test_structurally_corrupt_but_checksummed():
    import struct

    import crc32c

    data = build_index(RUNNING).serialize()
    body = bytearray(data[:-4])
    struct.pack_into("<Q", body, 6, 7)  # wrong n
    fixed = bytes(body) + struct.pack("<I", crc32c.crc32c(bytes(body)))
    assert corrupt_code(fixed) == "corrupt"


def test_query_never_reads_values():
    idx = build_index(RUNNING)
    for comp in idx.components():
        assert comp.__class__.__name__ in ("ShapeParens", "PairedParens")
    numeric = [k for k, v in vars(idx).items() if isinstance(v, np.ndarray)]
    assert numeric == []
