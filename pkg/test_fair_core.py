"""
公平PCA核心测试
功能：约束矩阵 / 标准PCA / 公平PCA（多组、多属性、EO）/ Fair PCA-S / 权衡表示 / 模型文件
运行：python test_fair_core.py
"""

import os
import sys
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import logging

import numpy as np

from data import MixtureSpec, gen_mixture
from errors import DegenerateAttribute, DegenerateInput, DimensionError, InvalidInput, SchemaError
from evaluation import covariance_gap, explained_variance
from fair_core import (
    Dataset,
    ProjectionModel,
    TradeoffModel,
    build_constraint_matrix,
    dumps_model,
    fair_s_dimension,
    fit_fair_pca,
    fit_fair_pca_s,
    fit_standard_pca,
    loads_model,
    tradeoff_transform,
    transform,
)

# 配置日志
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger(__name__)

SEED = 7001


def _raises(error, fn, *args, **kwargs):
    try:
        fn(*args, **kwargs)
    except error:
        return True
    return False


def _projector(U):
    return U @ U.T


def _random_dataset(rng, d, n, group_counts=(2,), with_labels=False):
    """每个属性至少每组出现2次；组影响均值，保证约束非平凡"""
    X = rng.standard_normal((d, n))
    rows = []
    for m in group_counts:
        codes = np.concatenate([np.repeat(np.arange(m), 2), rng.integers(0, m, n - 2 * m)])
        rng.shuffle(codes)
        X = X + rng.standard_normal((d, 1)) * (codes == 0)
        rows.append(codes)
    labels = None
    if with_labels:
        labels = rng.integers(0, 2, n)
    return Dataset(X=X, groups=np.vstack(rows), labels=labels)


def _max_group_mean_gap(U, data):
    E = U.T @ data.X
    overall = E.mean(axis=1)
    gap = 0.0
    for r in range(data.n_attributes):
        for g in np.unique(data.groups[r]):
            member = data.groups[r] == g
            gap = max(gap, float(np.linalg.norm(E[:, member].mean(axis=1) - overall)))
    return gap, float(np.abs(E).max())


# ==================== 约束矩阵 ====================

def test_constraint_balanced_binary():
    data = Dataset(X=np.zeros((2, 4)), groups=[0, 0, 1, 1])
    constraint = build_constraint_matrix(data)
    assert constraint.c == 1
    assert np.allclose(constraint.Z[:, 0], [-0.5, -0.5, 0.5, 0.5])


def test_constraint_three_groups():
    data = Dataset(X=np.ones((1, 3)), groups=[0, 1, 2])
    Z = build_constraint_matrix(data).Z
    expected = np.array([
        [2 / 3, -1 / 3, -1 / 3],
        [-1 / 3, 2 / 3, -1 / 3],
        [-1 / 3, -1 / 3, 2 / 3],
    ])
    assert np.allclose(Z, expected)


def test_constraint_two_binary_attributes():
    data = Dataset(X=np.zeros((2, 4)), groups=[[0, 0, 1, 1], [0, 1, 0, 1]])
    constraint = build_constraint_matrix(data)
    assert constraint.c == 2
    assert np.allclose(constraint.Z.sum(axis=0), 0.0)
    assert constraint.columns == ((0, 1), (1, 1))


def test_constraint_uncollapsed_binary_has_two_columns():
    data = Dataset(X=np.zeros((2, 4)), groups=[0, 0, 1, 1])
    Z = build_constraint_matrix(data, collapse_binary=False).Z
    assert Z.shape == (4, 2)
    assert np.allclose(Z[:, 0], -Z[:, 1])


def test_constraint_degenerate_attribute():
    data = Dataset(X=np.zeros((2, 4)), groups=[[0, 0, 0, 0], [0, 1, 0, 1]])
    assert _raises(DegenerateAttribute, build_constraint_matrix, data)
    constraint = build_constraint_matrix(data, drop_degenerate=True)
    assert constraint.c == 1
    assert constraint.columns == ((1, 1),)


# ==================== 标准PCA ====================

AXIS_X = np.array([[2.0, -2.0, 0.0, 0.0], [0.0, 0.0, 1.0, -1.0]])


def test_standard_pca_axis_aligned():
    data = Dataset(X=AXIS_X, groups=[0, 0, 1, 1])
    model = fit_standard_pca(data, 1)
    assert np.allclose(model.U[:, 0], [1.0, 0.0])
    assert np.isclose(explained_variance(model.U, data.X), 0.8)


def test_standard_pca_full_basis():
    rng = np.random.default_rng(SEED)
    data = _random_dataset(rng, 4, 15)
    model = fit_standard_pca(data, 4)
    assert np.isclose(explained_variance(model.U, data.X), 1.0)


def test_standard_pca_matches_top_eigenvalues():
    rng = np.random.default_rng(SEED + 1)
    data = _random_dataset(rng, 5, 20)
    model = fit_standard_pca(data, 2)
    XXt = data.X @ data.X.T
    top_two = np.sort(np.linalg.eigvalsh(XXt))[-2:].sum()
    assert np.isclose(np.trace(model.U.T @ XXt @ model.U), top_two)
    assert np.abs(model.U.T @ model.U - np.eye(2)).max() <= 1e-8


def test_standard_pca_k_too_large():
    data = Dataset(X=AXIS_X, groups=[0, 0, 1, 1])
    assert _raises(DimensionError, fit_standard_pca, data, 3)


# ==================== 公平PCA ====================

def test_fair_equal_means_reduces_to_standard():
    data = Dataset(X=AXIS_X, groups=[0, 0, 1, 1])
    model = fit_fair_pca(data, 1)
    assert np.allclose(model.U[:, 0], [1.0, 0.0])


def test_fair_hand_example():
    X = np.array([[0.0, 2.0, 1.0, 3.0], [0.0, 0.0, 1.0, 1.0]])
    data = Dataset(X=X, groups=[0, 0, 1, 1])
    model = fit_fair_pca(data, 1)
    u = model.U[:, 0]
    assert np.allclose(_projector(model.U), np.array([[0.5, -0.5], [-0.5, 0.5]]))
    assert np.isclose(u @ (X @ X.T) @ u, 4.0)

    # 两组投影均值相同
    E = transform(model, X)
    assert np.isclose(E[0, :2].mean(), E[0, 2:].mean())


def test_fair_constraint_on_random_instances():
    rng = np.random.default_rng(SEED + 2)
    for trial in range(20):
        d = int(rng.integers(4, 20))
        n = int(rng.integers(20, 200))
        counts = tuple(int(m) for m in rng.integers(2, 5, size=int(rng.integers(1, 3))))
        data = _random_dataset(rng, d, n, counts)
        bound = d - sum(counts) + len(counts)
        if bound < 1:
            continue
        k = int(rng.integers(1, bound + 1))
        model = fit_fair_pca(data, k)
        assert np.abs(model.U.T @ model.U - np.eye(k)).max() <= 1e-8
        gap, scale = _max_group_mean_gap(model.U, data)
        assert gap <= 1e-6 * (1 + scale), f"trial {trial}: gap {gap}"


def test_fair_two_group_paths_agree():
    rng = np.random.default_rng(SEED + 3)
    data = _random_dataset(rng, 6, 40)
    collapsed = fit_fair_pca(data, 3)
    full = fit_fair_pca(data, 3, collapse_binary=False)
    assert np.abs(_projector(collapsed.U) - _projector(full.U)).max() <= 1e-8


def test_fair_k_bound_reports_maximum():
    rng = np.random.default_rng(SEED + 4)
    data = _random_dataset(rng, 3, 30)
    try:
        fit_fair_pca(data, 3)
        assert False, "应当抛出 DimensionError"
    except DimensionError as e:
        assert e.achievable_max == 2
        assert "2" in str(e)


def test_fair_k_above_d_reports_nullspace_dimension():
    rng = np.random.default_rng(SEED + 4)
    data = _random_dataset(rng, 3, 30)
    for fit in (fit_fair_pca, fit_fair_pca_s):
        try:
            fit(data, 4)
            assert False, "应当抛出 DimensionError"
        except DimensionError as e:
            # d=3 本身不可达，上限是零空间维数
            assert e.achievable_max == 2, f"{fit.__name__}: {e.achievable_max}"
        assert _raises(DimensionError, fit, data, 0)


def test_fair_degenerate_attribute():
    rng = np.random.default_rng(SEED + 5)
    X = rng.standard_normal((4, 10))
    data = Dataset(X=X, groups=np.zeros(10, dtype=int))
    assert _raises(DegenerateAttribute, fit_fair_pca, data, 2)
    fair = fit_fair_pca(data, 2, drop_degenerate=True)
    standard = fit_standard_pca(data, 2)
    assert np.allclose(fair.U, standard.U)


def test_fair_centered_model_maps_mean_to_zero():
    rng = np.random.default_rng(SEED + 6)
    data = _random_dataset(rng, 5, 50)
    model = fit_fair_pca(data, 2, center=True)
    assert model.center and model.mean is not None
    out = transform(model, data.X.mean(axis=1, keepdims=True))
    assert np.allclose(out, 0.0, atol=1e-12)


def test_fair_eo_mode_constrains_positives():
    rng = np.random.default_rng(SEED + 7)
    data = _random_dataset(rng, 6, 120, with_labels=True)
    model = fit_fair_pca(data, 2, eo_mode=True)
    positives = data.subset(np.flatnonzero(data.labels == 1))
    gap, scale = _max_group_mean_gap(model.U, positives)
    assert gap <= 1e-6 * (1 + scale)
    assert model.fit_options["eo_mode"] is True

    all_objective = fit_fair_pca(data, 2, eo_mode=True, eo_objective="all")
    gap, scale = _max_group_mean_gap(all_objective.U, positives)
    assert gap <= 1e-6 * (1 + scale)
    assert _raises(InvalidInput, fit_fair_pca, data, 2, eo_mode=True, eo_objective="bogus")


def test_fair_eo_mode_needs_labels():
    rng = np.random.default_rng(SEED + 8)
    data = _random_dataset(rng, 4, 30)
    assert _raises(DegenerateInput, fit_fair_pca, data, 1, eo_mode=True)


# ==================== Fair PCA-S ====================

def test_fair_s_dimension_rule():
    assert fair_s_dimension(2, 0.5, 10, 9) == 5
    assert fair_s_dimension(7, 0.5, 10, 9) == 7
    assert fair_s_dimension(2, 1.0, 10, 9) == 9
    assert fair_s_dimension(2, 0.85, 10, 6) == 6


def test_fair_s_full_fraction_equals_fair():
    rng = np.random.default_rng(SEED + 9)
    for _ in range(5):
        data = _random_dataset(rng, 6, 80)
        fair = fit_fair_pca(data, 2)
        fair_s = fit_fair_pca_s(data, 2, f=1.0)
        assert fair_s.fit_options["l"] == 5
        assert np.abs(_projector(fair.U) - _projector(fair_s.U)).max() <= 1e-6


def test_fair_s_shrinks_covariance_gap():
    data = gen_mixture(MixtureSpec.preset("fig1", d=10, n_per_group=1000, seed=11))
    codes = data.groups[0]
    fair = fit_fair_pca(data, 2)
    fair_s = fit_fair_pca_s(data, 2, f=0.5)
    assert fair_s.fit_options["l"] == 5
    gap, _ = _max_group_mean_gap(fair_s.U, data)
    assert gap <= 1e-6 * (1 + np.abs(fair_s.U.T @ data.X).max())
    assert covariance_gap(fair_s.U, data.X, codes) * 2 <= covariance_gap(fair.U, data.X, codes)


def test_variance_dominance():
    rng = np.random.default_rng(SEED + 10)
    for _ in range(5):
        data = _random_dataset(rng, 8, 100)
        ev_standard = explained_variance(fit_standard_pca(data, 2).U, data.X)
        ev_fair = explained_variance(fit_fair_pca(data, 2).U, data.X)
        ev_fair_s = explained_variance(fit_fair_pca_s(data, 2, f=0.5).U, data.X)
        assert ev_standard >= ev_fair - 1e-12
        assert ev_fair >= ev_fair_s - 1e-12


def test_fair_s_requires_two_groups():
    rng = np.random.default_rng(SEED + 11)
    data = _random_dataset(rng, 6, 60, group_counts=(3,))
    assert _raises(DegenerateInput, fit_fair_pca_s, data, 2)
    assert _raises(InvalidInput, fit_fair_pca_s, _random_dataset(rng, 6, 60), 2, f=0.0)


# ==================== 变换 / 权衡 ====================

def test_identity_transform_passthrough():
    model = ProjectionModel(U=np.eye(3), method="standard", k=3)
    X = np.arange(12, dtype=float).reshape(3, 4)
    assert np.array_equal(transform(model, X), X)
    assert _raises(DimensionError, transform, model, np.ones((2, 4)))


def test_tradeoff_blocks():
    rng = np.random.default_rng(SEED + 12)
    data = _random_dataset(rng, 6, 60)
    fair = fit_fair_pca(data, 2)
    standard = fit_standard_pca(data, 2)

    zero = tradeoff_transform(TradeoffModel(fair, standard, 0.0), data.X)
    assert zero.shape == (4, data.n)
    assert np.allclose(zero[:2], fair.embed(data.X))
    assert np.all(zero[2:] == 0.0)

    one = TradeoffModel(fair, standard, 1.0).embed(data.X)
    assert np.allclose(one[2:], standard.embed(data.X))

    assert _raises(InvalidInput, TradeoffModel, fair, standard, 1.5)
    assert _raises(InvalidInput, TradeoffModel, fair, fair, 0.5)


# ==================== 模型文件 ====================

def test_model_file_reproduces_transform():
    rng = np.random.default_rng(SEED + 13)
    data = _random_dataset(rng, 5, 40)
    X_new = rng.standard_normal((5, 7))
    for model in (fit_fair_pca(data, 2, center=True), fit_fair_pca_s(data, 2, f=0.85)):
        restored = loads_model(dumps_model(model))
        assert restored.method == model.method and restored.k == model.k
        assert restored.fit_options == model.fit_options
        assert np.abs(restored.embed(X_new) - model.embed(X_new)).max() <= 1e-12


def test_tradeoff_model_file():
    rng = np.random.default_rng(SEED + 14)
    data = _random_dataset(rng, 5, 40)
    model = TradeoffModel(fit_fair_pca(data, 2), fit_standard_pca(data, 2), 0.343)
    restored = loads_model(dumps_model(model))
    assert isinstance(restored, TradeoffModel)
    assert restored.lam == 0.343
    assert np.abs(restored.embed(data.X) - model.embed(data.X)).max() <= 1e-12


def test_model_file_rejects_damage():
    rng = np.random.default_rng(SEED + 15)
    text = dumps_model(fit_standard_pca(_random_dataset(rng, 3, 10), 1))
    assert _raises(SchemaError, loads_model, "hello\n")
    assert _raises(SchemaError, loads_model, text.replace("\nend\n", "\n"))
    assert _raises(SchemaError, loads_model, text.replace("format_version: 1", "format_version: 99"))
    assert _raises(SchemaError, loads_model, text.replace("matrix U 3 1", "matrix U 3 2"))


TESTS = [
    test_constraint_balanced_binary,
    test_constraint_three_groups,
    test_constraint_two_binary_attributes,
    test_constraint_uncollapsed_binary_has_two_columns,
    test_constraint_degenerate_attribute,
    test_standard_pca_axis_aligned,
    test_standard_pca_full_basis,
    test_standard_pca_matches_top_eigenvalues,
    test_standard_pca_k_too_large,
    test_fair_equal_means_reduces_to_standard,
    test_fair_hand_example,
    test_fair_constraint_on_random_instances,
    test_fair_two_group_paths_agree,
    test_fair_k_bound_reports_maximum,
    test_fair_k_above_d_reports_nullspace_dimension,
    test_fair_degenerate_attribute,
    test_fair_centered_model_maps_mean_to_zero,
    test_fair_eo_mode_constrains_positives,
    test_fair_eo_mode_needs_labels,
    test_fair_s_dimension_rule,
    test_fair_s_full_fraction_equals_fair,
    test_fair_s_shrinks_covariance_gap,
    test_variance_dominance,
    test_fair_s_requires_two_groups,
    test_identity_transform_passthrough,
    test_tradeoff_blocks,
    test_model_file_reproduces_transform,
    test_tradeoff_model_file,
    test_model_file_rejects_damage,
]


def main():
    print("=" * 90)
    print("公平PCA核心测试")
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
