import itertools

import numpy as np
import pytest

from chromsieve import field as F
from chromsieve import linalg
from chromsieve.linalg import MatrixF


def _det_leibniz(a: np.ndarray) -> int:
    n = a.shape[0]
    total = 0
    for perm in itertools.permutations(range(n)):
        t = 1
        for i, j in enumerate(perm):
            t = F.mul(t, int(a[i, j]))
        total ^= t
    return total


def test_det_matches_leibniz():
    rng = np.random.default_rng(0)
    for n in range(1, 6):
        a = linalg.random_matrix(rng, n, n).array
        assert linalg.det(a) == _det_leibniz(a)


def test_det_multiplicative_and_singular():
    rng = np.random.default_rng(1)
    a, b = linalg.random_matrix(rng, 7, 7), linalg.random_matrix(rng, 7, 7)
    assert linalg.det(a @ b) == F.mul(linalg.det(a), linalg.det(b))
    s = np.array(a.array)
    s[3] = s[1] ^ s[2]
    assert linalg.det(s) == 0 and linalg.rank(s) == 6


def test_rank_and_rref():
    rng = np.random.default_rng(2)
    low = linalg.random_matrix(rng, 6, 2) @ linalg.random_matrix(rng, 2, 9)
    assert linalg.rank(low) == 2
    red, piv = linalg.rref(low)
    assert red.shape == (2, 9) and list(piv) == [0, 1]
    assert np.array_equal(red[:, piv], np.eye(2, dtype=np.uint64))
    assert linalg.rank(np.zeros((3, 4), dtype=np.uint64)) == 0


def test_pfaffian_against_matching_sum():
    rng = np.random.default_rng(3)
    for n in range(0, 11):
        a = linalg.random_skew(rng, n)
        assert linalg.pfaffian(a) == linalg.pfaffian_combinatorial(a)


def test_pfaffian_small_cases():
    a = MatrixF([[0, 5], [5, 0]])
    assert linalg.pfaffian(a) == 5
    assert linalg.pfaffian(linalg.random_skew(np.random.default_rng(0), 5)) == 0
    four = np.zeros((4, 4), dtype=np.uint64)
    for (i, j), v in {(0, 1): 2, (2, 3): 3, (0, 2): 5, (1, 3): 7, (0, 3): 11, (1, 2): 13}.items():
        four[i, j] = four[j, i] = v
    want = F.mul(2, 3) ^ F.mul(5, 7) ^ F.mul(11, 13)
    assert linalg.pfaffian(four) == want


def test_pfaffian_rejects_non_skew():
    with pytest.raises(ValueError):
        linalg.pfaffian(MatrixF([[1, 2], [2, 0]]))
    with pytest.raises(ValueError):
        linalg.pfaffian(MatrixF([[0, 2], [3, 0]]))
    with pytest.raises(ValueError):
        linalg.pfaffian_combinatorial(linalg.random_skew(np.random.default_rng(0), 14))


def test_matrix_labels_follow_entries():
    m = MatrixF([[1, 2, 3], [4, 5, 6]], row_labels=["a", "b"], col_labels=["x", "y", "z"])
    s = m.select_cols(["z", "x"])
    assert s.col_labels == ("z", "x") and s[0, 0] == 3 and s[1, 1] == 4
    assert m.T.row_labels == ("x", "y", "z")
    with pytest.raises(ValueError):
        m.array[0, 0] = 9
    with pytest.raises(ValueError):
        m @ m
    assert (m + m) == MatrixF.zeros(2, 3)


def test_block_diag_and_hex_dump():
    b = linalg.block_diag(MatrixF([[1]]), MatrixF([[2, 3]]))
    assert b.shape == (2, 3) and b[1, 2] == 3 and b[0, 1] == 0
    assert linalg.hex_dump(MatrixF.identity(1)).strip() == "0x0000000000000001"
