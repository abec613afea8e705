"""
命令行参数定义
所有选项默认 None，便于区分"未指定"与"显式指定"（配置文件可补全）
"""

import argparse

from cli.run_config import METHODS


def _csv_list(cast):
    def parse(value: str):
        try:
            return [cast(item.strip()) for item in value.split(",") if item.strip()]
        except ValueError as e:
            raise argparse.ArgumentTypeError(f"无法解析列表: {value!r}") from e
    return parse


def _add_data_options(parser: argparse.ArgumentParser):
    parser.add_argument("data", nargs="?", help="输入数据CSV")
    parser.add_argument("--group", dest="groups", action="append", help="敏感属性列（可重复）")
    parser.add_argument("--label", help="二值任务标签列")
    parser.add_argument("--features", type=_csv_list(str), help="特征列，逗号分隔（默认：其余全部列）")
    parser.add_argument("--categorical", type=_csv_list(str), help="需要one-hot的分类特征列")


def _add_method_options(parser: argparse.ArgumentParser):
    parser.add_argument("--method", choices=METHODS, help="pca / fair / fair-s / fair-kernel")
    parser.add_argument("--k", type=int, help="目标维数")
    parser.add_argument("--eo", action=argparse.BooleanOptionalAction, default=None,
                        help="机会均等模式：只用 y=1 的样本拟合")
    parser.add_argument("--center", action=argparse.BooleanOptionalAction, default=None,
                        help="先减去训练均值")
    parser.add_argument("--f", type=float, help="Fair PCA-S 比例 f ∈ (0, 1]")
    parser.add_argument("--kernel", choices=("gaussian", "linear"), help="公平核PCA的核类型")
    parser.add_argument("--gamma", type=float, help="高斯核 γ（默认 1/(d·Var)）")
    parser.add_argument("--jitter", type=float, help="广义特征问题中加到 B 上的抖动")


def _add_protocol_options(parser: argparse.ArgumentParser):
    parser.add_argument("--seeds", type=_csv_list(int), help="切分种子，逗号分隔")
    parser.add_argument("--test-fraction", dest="test_fraction", type=float, help="测试集比例")
    parser.add_argument("--standardize", action=argparse.BooleanOptionalAction, default=None,
                        help="按训练集标准化")
    parser.add_argument("--downstream-reg", dest="downstream_reg", type=float, help="下游逻辑回归正则强度")
    parser.add_argument("--probe-reg", dest="probe_reg", type=float, help="探针正则强度")
    parser.add_argument("--threads", type=int, help="并行线程数（默认 FAIRPCA_THREADS）")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fairpca", description="公平PCA：拟合 / 变换 / 评估 / 权衡曲线 / 合成数据")
    parser.add_argument("--config", help="可选配置文件（key=value）")
    sub = parser.add_subparsers(dest="command", required=True)

    fit = sub.add_parser("fit", help="拟合模型并写出模型文件")
    _add_data_options(fit)
    _add_method_options(fit)
    fit.add_argument("-o", "--output", help="模型输出路径")

    transform = sub.add_parser("transform", help="用模型文件变换数据")
    _add_data_options(transform)
    transform.add_argument("--model", help="模型文件")
    transform.add_argument("-o", "--output", help="嵌入输出CSV（默认stdout）")

    evaluate = sub.add_parser("eval", help="多种子评估，输出报告CSV")
    _add_data_options(evaluate)
    _add_method_options(evaluate)
    _add_protocol_options(evaluate)
    evaluate.add_argument("--model", help="已拟合模型（不指定则每个切分现拟合）")
    evaluate.add_argument("--quadratic-probe", dest="quadratic_probe", action=argparse.BooleanOptionalAction,
                          default=None, help="额外报告二次特征探针")
    evaluate.add_argument("-o", "--output", help="报告CSV（默认stdout）")

    sweep = sub.add_parser("sweep", help="λ 网格上的公平性/准确率权衡曲线")
    _add_data_options(sweep)
    _add_method_options(sweep)
    _add_protocol_options(sweep)
    sweep.add_argument("--lambdas", type=_csv_list(float), help="λ 列表（默认 (i/10)^3）")
    sweep.add_argument("--model", help="已拟合的权衡模型文件")
    sweep.add_argument("-o", "--output", help="曲线CSV（默认stdout）")

    synth = sub.add_parser("synth", help="生成两高斯混合数据CSV")
    synth.add_argument("--preset", choices=("prop1", "fig1", "tradeoff", "none"), help="预设参数")
    synth.add_argument("--d", type=int, help="维数")
    synth.add_argument("--n-per-group", dest="n_per_group", type=int, help="每组样本数")
    synth.add_argument("--separation", type=float, help="两组均值沿 e₀ 的距离")
    synth.add_argument("--var0", type=float, help="preset=none 时组0方差（标量·I）")
    synth.add_argument("--var1", type=float, help="preset=none 时组1方差（标量·I）")
    synth.add_argument("--seed", type=int, help="随机种子")
    synth.add_argument("--label-mode", dest="label_mode", choices=("none", "group", "linear"), help="标签生成方式")
    synth.add_argument("-o", "--output", help="输出CSV（默认stdout）")
    return parser
