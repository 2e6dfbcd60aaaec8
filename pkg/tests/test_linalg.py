import numpy as np
import pytest

from eamod.gf import field_create
from eamod.linalg import (
    Dominance,
    JordanType,
    MatF,
    NotNilpotent,
    UnequalTotals,
    canonical_nilpotent,
    compound_matrix,
    dominance_compare,
    jordan_type_nilpotent,
)
from eamod.stream import CounterStream

from oracles import slow_matmul, slow_rank

F3 = field_create(3, 1)
F9 = field_create(3, 2)
F5 = field_create(5, 1)
F25 = field_create(5, 2)


def random_mat(ctx, rows, cols, stream):
    data = np.zeros((rows, cols, ctx.m), dtype=np.int64)
    for i in range(rows):
        for j in range(cols):
            data[i, j] = ctx.from_code(stream.below(ctx.q))
    return MatF(ctx, data)


def as_fel_rows(mat):
    return [[mat.get(i, j) for j in range(mat.cols)] for i in range(mat.rows)]


def test_rank_examples():
    assert MatF.identity(F3, 3).rank() == 3
    assert MatF.zeros(F3, 4, 4).rank() == 0
    x1 = MatF.from_rows(F3, [[0, 0, 0], [1, 0, 0], [0, 1, 0]])
    assert x1.rank() == 2


def test_kernel_examples():
    assert MatF.identity(F3, 3).kernel_basis() == []
    z = MatF.zeros(F3, 2, 2).kernel_basis()
    assert [[int(c.coeffs[0]) for c in v] for v in z] == [[1, 0], [0, 1]]
    a = MatF.from_rows(F3, [[1, 1], [2, 2]])
    assert [[int(c.coeffs[0]) for c in v] for v in a.kernel_basis()] == [[1, 2]]


@pytest.mark.parametrize("ctx", [F3, F9, F5, F25])
def test_rank_matches_slow_oracle(ctx):
    stream = CounterStream(7, ctx.p, ctx.m)
    for trial in range(25):
        rows = 1 + stream.below(7)
        cols = 1 + stream.below(7)
        mat = random_mat(ctx, rows, cols, stream)
        assert mat.rank() == slow_rank(as_fel_rows(mat))


@pytest.mark.parametrize("ctx", [F9, F25])
def test_matmul_matches_slow_oracle(ctx):
    stream = CounterStream(11, ctx.p, ctx.m)
    for _ in range(10):
        a = random_mat(ctx, 4, 5, stream)
        b = random_mat(ctx, 5, 3, stream)
        prod = a @ b
        expect = slow_matmul(as_fel_rows(a), as_fel_rows(b))
        assert as_fel_rows(prod) == expect


def test_kernel_vectors_annihilated_and_sized():
    stream = CounterStream(13)
    for _ in range(20):
        mat = random_mat(F9, 5, 7, stream)
        kernel = mat.kernel_array()
        assert kernel.shape[0] == mat.cols - mat.rank()
        for vec in kernel:
            col = MatF(F9, vec[:, None, :])
            assert (mat @ col).is_zero()


def test_inverse_roundtrip():
    stream = CounterStream(17)
    found = 0
    while found < 10:
        mat = random_mat(F9, 5, 5, stream)
        try:
            inv = mat.inv()
        except ZeroDivisionError:
            continue
        found += 1
        assert mat @ inv == MatF.identity(F9, 5)


def test_rank_product_bound():
    stream = CounterStream(19)
    for _ in range(20):
        a = random_mat(F5, 6, 4, stream)
        b = random_mat(F5, 4, 6, stream)
        assert (a @ b).rank() <= min(a.rank(), b.rank())


def test_jordan_type_canonical_blocks():
    jt = JordanType.from_blocks(3, [3, 1])
    n = canonical_nilpotent(F3, jt)
    assert jordan_type_nilpotent(n, 3) == jt
    assert str(jt) == "[3][1]"


def _partitions(total, max_part):
    if total == 0:
        yield []
        return
    for part in range(min(total, max_part), 0, -1):
        for rest in _partitions(total - part, part):
            yield [part] + rest


@pytest.mark.parametrize("p", [3, 5])
def test_jordan_roundtrip_exhaustive(p):
    ctx = field_create(p, 1)
    for total in range(1, 13):
        for blocks in _partitions(total, p):
            jt = JordanType.from_blocks(p, blocks)
            assert jordan_type_nilpotent(canonical_nilpotent(ctx, jt), p) == jt


def test_jordan_conjugation_invariant():
    stream = CounterStream(23)
    jt = JordanType.from_blocks(3, [3, 2, 2, 1])
    n = canonical_nilpotent(F9, jt)
    found = 0
    while found < 8:
        p_mat = random_mat(F9, 8, 8, stream)
        try:
            p_inv = p_mat.inv()
        except ZeroDivisionError:
            continue
        found += 1
        assert jordan_type_nilpotent(p_mat @ n @ p_inv, 3) == jt


def test_not_nilpotent_raises():
    with pytest.raises(NotNilpotent):
        jordan_type_nilpotent(MatF.identity(F3, 2), 3)


def test_dominance_examples():
    g = dominance_compare(JordanType.from_blocks(3, [3, 1]), JordanType.from_blocks(3, [2, 2]))
    assert g is Dominance.GREATER
    inc = dominance_compare(
        JordanType.from_blocks(3, [3, 1, 1, 1]), JordanType.from_blocks(3, [2, 2, 2])
    )
    assert inc is Dominance.INCOMPARABLE
    eq = dominance_compare(JordanType.from_blocks(3, [2, 2]), JordanType.from_blocks(3, [2, 2]))
    assert eq is Dominance.EQUAL
    assert dominance_compare(
        JordanType.from_blocks(3, [2, 2]), JordanType.from_blocks(3, [3, 1])
    ) is Dominance.LESS


def test_dominance_unequal_totals():
    with pytest.raises(UnequalTotals):
        dominance_compare(JordanType.from_blocks(3, [3]), JordanType.from_blocks(3, [2, 2]))


def test_compound_identity_and_multiplicativity():
    assert compound_matrix(MatF.identity(F3, 4), 2) == MatF.identity(F3, 6)
    stream = CounterStream(29)
    for _ in range(5):
        a = random_mat(F9, 5, 5, stream)
        b = random_mat(F9, 5, 5, stream)
        for r in (2, 3):
            lhs = compound_matrix(a @ b, r)
            rhs = compound_matrix(a, r) @ compound_matrix(b, r)
            assert lhs == rhs


def test_jordan_type_free_flag():
    assert JordanType.from_blocks(3, [3, 3]).is_free()
    assert not JordanType.from_blocks(3, [3, 1]).is_free()
