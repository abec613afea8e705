"""
线性代数原语测试
功能：对称特征分解 / SVD零空间 / 带抖动的广义特征分解
运行：python test_linalg.py
"""

import os
import sys
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import logging

import numpy as np

from errors import DimensionError, InvalidInput, NumericalError
from linalg import canonical_signs, gen_sym_eig_topk, nullspace_basis, sym_eig_topk

# 配置日志
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger(__name__)

SEED = 20240611


def _raises(error, fn, *args, **kwargs):
    try:
        fn(*args, **kwargs)
    except error:
        return True
    return False


def _random_symmetric(rng, p):
    M = rng.standard_normal((p, p))
    return M + M.T


# ==================== sym_eig_topk ====================

def test_identity_tie_picks_first_axis():
    result = sym_eig_topk(np.eye(2), 1)
    assert np.allclose(result.values, [1.0])
    assert np.allclose(result.vectors[:, 0], [1.0, 0.0])


def test_diagonal_top_one():
    result = sym_eig_topk(np.diag([3.0, 1.0]), 1)
    assert np.isclose(result.values[0], 3.0)
    assert np.allclose(result.vectors[:, 0], [1.0, 0.0])


def test_two_by_two_pair():
    A = np.array([[2.0, 1.0], [1.0, 2.0]])
    result = sym_eig_topk(A, 2)
    assert np.allclose(result.values, [3.0, 1.0])
    assert np.allclose(result.vectors[:, 0], np.array([1.0, 1.0]) / np.sqrt(2))
    # 第二个向量两分量绝对值相同，只检查特征关系和符号约定
    v = result.vectors[:, 1]
    assert np.allclose(np.abs(v), np.ones(2) / np.sqrt(2))
    assert np.allclose(A @ v, 1.0 * v)
    assert v[np.argmax(np.abs(v))] >= 0


def test_random_residual_and_order():
    rng = np.random.default_rng(SEED)
    for p in (3, 7, 20):
        A = _random_symmetric(rng, p)
        result = sym_eig_topk(A, p)
        assert np.all(np.diff(result.values) <= 0)
        V = result.vectors
        assert np.abs(V.T @ V - np.eye(p)).max() <= 1e-8
        for i in range(p):
            residual = np.linalg.norm(A @ V[:, i] - result.values[i] * V[:, i])
            assert residual <= 1e-6 * (1 + np.abs(A).max())


def test_sign_convention_holds():
    rng = np.random.default_rng(SEED + 1)
    result = sym_eig_topk(_random_symmetric(rng, 6), 4)
    V = result.vectors
    pivots = np.argmax(np.abs(V), axis=0)
    assert np.all(V[pivots, np.arange(4)] >= 0)


def test_deterministic_bitwise():
    rng = np.random.default_rng(SEED + 2)
    A = _random_symmetric(rng, 8)
    first = sym_eig_topk(A, 3)
    second = sym_eig_topk(A.copy(), 3)
    assert np.array_equal(first.values, second.values)
    assert np.array_equal(first.vectors, second.vectors)


def test_sym_eig_errors():
    assert _raises(DimensionError, sym_eig_topk, np.eye(3), 4)
    assert _raises(DimensionError, sym_eig_topk, np.eye(3), 0)
    bad = np.eye(2)
    bad[0, 1] = np.nan
    assert _raises(InvalidInput, sym_eig_topk, bad, 1)
    assert _raises(DimensionError, sym_eig_topk, np.ones((2, 3)), 1)


def test_nearly_symmetric_input_is_symmetrized():
    A = np.array([[2.0, 1.0], [1.0 + 1e-3, 2.0]])
    result = sym_eig_topk(A, 1)
    assert np.isclose(result.values[0], 3.0005)


# ==================== nullspace_basis ====================

def test_nullspace_single_vector():
    N = nullspace_basis(np.array([[1.0, 1.0]]))
    assert N.shape == (2, 1)
    assert np.allclose(N @ N.T, np.array([[0.5, -0.5], [-0.5, 0.5]]))


def test_nullspace_of_zero_map_is_everything():
    N = nullspace_basis(np.zeros((1, 3)))
    assert N.shape == (3, 3)
    assert np.allclose(N.T @ N, np.eye(3))


def test_nullspace_coordinate_kernel():
    N = nullspace_basis(np.array([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]))
    assert N.shape == (3, 1)
    assert np.allclose(N[:, 0], [0.0, 0.0, 1.0])


def test_nullspace_random_properties():
    rng = np.random.default_rng(SEED + 3)
    for m, d in ((1, 5), (3, 10), (4, 4), (6, 3)):
        M = rng.standard_normal((m, d))
        N = nullspace_basis(M)
        assert N.shape == (d, max(d - m, 0))
        if N.shape[1]:
            sigma_max = np.linalg.svd(M, compute_uv=False).max()
            assert np.abs(N.T @ N - np.eye(N.shape[1])).max() <= 1e-8
            assert np.abs(M @ N).max() <= 1e-8 * max(1.0, sigma_max)


def test_nullspace_rank_deficient():
    # 两行线性相关，数值秩为1
    M = np.array([[1.0, 2.0, 3.0], [2.0, 4.0, 6.0]])
    N = nullspace_basis(M)
    assert N.shape == (3, 2)
    assert np.abs(M @ N).max() <= 1e-8 * 10


def test_nullspace_errors():
    assert _raises(InvalidInput, nullspace_basis, np.array([[np.inf, 1.0]]))
    assert _raises(InvalidInput, nullspace_basis, np.ones((1, 2)), 0.0)


# ==================== gen_sym_eig_topk ====================

def test_generalized_identity_matches_standard():
    rng = np.random.default_rng(SEED + 4)
    A = _random_symmetric(rng, 5)
    standard = sym_eig_topk(A, 3)
    generalized = gen_sym_eig_topk(A, np.eye(5), 3, jitter=0.0)
    assert np.allclose(standard.values, generalized.values)
    assert np.allclose(standard.vectors, generalized.vectors, atol=1e-10)


def test_generalized_two_by_two():
    result = gen_sym_eig_topk(np.diag([4.0, 1.0]), np.diag([2.0, 1.0]), 1, jitter=0.0)
    assert np.isclose(result.values[0], 2.0)
    assert np.allclose(result.vectors[:, 0], [1.0 / np.sqrt(2), 0.0])


def test_generalized_zero_operator():
    result = gen_sym_eig_topk(np.zeros((3, 3)), np.diag([1.0, 2.0, 3.0]), 1)
    assert np.isclose(result.values[0], 0.0)


def test_generalized_b_orthonormal_and_residual():
    rng = np.random.default_rng(SEED + 5)
    p, jitter = 8, 1e-5
    A = _random_symmetric(rng, p)
    G = rng.standard_normal((p, p - 2))
    B = G @ G.T   # 秩亏的半正定矩阵，靠抖动变为正定
    result = gen_sym_eig_topk(A, B, 4, jitter=jitter)
    B_reg = B + jitter * np.eye(p)
    V = result.vectors
    assert np.abs(V.T @ B_reg @ V - np.eye(4)).max() <= 1e-6
    for i in range(4):
        residual = np.linalg.norm(A @ V[:, i] - result.values[i] * (B_reg @ V[:, i]))
        assert residual <= 1e-5 * (1 + np.abs(A).max())


def test_generalized_errors():
    assert _raises(NumericalError, gen_sym_eig_topk, np.eye(2), np.zeros((2, 2)), 1, 0.0)
    assert _raises(NumericalError, gen_sym_eig_topk, np.eye(2), np.diag([1.0, -1.0]), 1, 0.0)
    assert _raises(InvalidInput, gen_sym_eig_topk, np.eye(2), np.eye(2), 1, -1.0)
    assert _raises(DimensionError, gen_sym_eig_topk, np.eye(2), np.eye(3), 1)


def test_canonical_signs_ties_lowest_index():
    V = np.array([[-1.0, 0.5], [1.0, -0.5]])
    flipped = canonical_signs(V)
    assert np.allclose(flipped, [[1.0, 0.5], [-1.0, -0.5]])


TESTS = [
    test_identity_tie_picks_first_axis,
    test_diagonal_top_one,
    test_two_by_two_pair,
    test_random_residual_and_order,
    test_sign_convention_holds,
    test_deterministic_bitwise,
    test_sym_eig_errors,
    test_nearly_symmetric_input_is_symmetrized,
    test_nullspace_single_vector,
    test_nullspace_of_zero_map_is_everything,
    test_nullspace_coordinate_kernel,
    test_nullspace_random_properties,
    test_nullspace_rank_deficient,
    test_nullspace_errors,
    test_generalized_identity_matches_standard,
    test_generalized_two_by_two,
    test_generalized_zero_operator,
    test_generalized_b_orthonormal_and_residual,
    test_generalized_errors,
    test_canonical_signs_ties_lowest_index,
]


def main():
    print("=" * 90)
    print("线性代数原语测试")
    print("=" * 90 + "\n")

    failed = []
    for test in TESTS:
        try:
            test()
            print(f"   ✅ {test.__name__}")
        except AssertionError as e:
            failed.append(test.__name__)
            print(f"   ❌ {test.__name__}: {e}")

    print("\n" + "=" * 90)
    if failed:
        print(f"❌ {len(failed)}/{len(TESTS)} 项失败: {failed}")
    else:
        print(f"🎉 全部 {len(TESTS)} 项通过")
    print("=" * 90)
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
