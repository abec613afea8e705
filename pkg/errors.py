"""
统一异常体系
每个异常类自带CLI退出码：2=配置错误，3=数据错误，4=数值错误
"""

from typing import Optional


class FairPCAError(Exception):
    """所有预期错误的根类"""
    exit_code = 1


class ConfigError(FairPCAError):
    """参数/配置不合法"""
    exit_code = 2


class InvalidSpec(ConfigError):
    """MixtureSpec / KernelSpec 不合法（如协方差非半正定）"""


class DimensionError(ConfigError):
    """维度不匹配或k超过可行上限"""

    def __init__(self, message: str, achievable_max: Optional[int] = None):
        if achievable_max is not None:
            message = f"{message}（可达上限 k ≤ {achievable_max}）"
        super().__init__(message)
        self.achievable_max = achievable_max


class DataError(FairPCAError):
    """数据相关错误"""
    exit_code = 3


class InvalidInput(DataError):
    """非有限值或非矩阵输入"""


class DegenerateInput(DataError):
    """退化输入：零矩阵、单一类别、组内样本过少"""


class DegenerateAttribute(DataError):
    """敏感属性只出现一个取值，约束无意义"""

    def __init__(self, attribute, message: Optional[str] = None):
        super().__init__(message or f"敏感属性 {attribute} 只有一个取值，约束无意义")
        self.attribute = attribute


class SchemaError(DataError):
    """CSV列缺失或模型与数据结构不一致"""


class ParseError(DataError):
    """单元格无法解析或缺失"""

    def __init__(self, message: str, row: Optional[int] = None, column: Optional[str] = None):
        location = []
        if row is not None:
            location.append(f"行 {row}")
        if column is not None:
            location.append(f"列 {column}")
        if location:
            message = f"{message}（{', '.join(location)}）"
        super().__init__(message)
        self.row = row
        self.column = column


class NumericalError(FairPCAError):
    """数值失败（加抖动后Cholesky仍失败）"""
    exit_code = 4
