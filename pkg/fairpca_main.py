#!/usr/bin/env python3
"""
fairpca 命令行入口
用法：python fairpca_main.py <fit|transform|eval|sweep|synth> [选项]
退出码：0 成功，2 配置错误，3 数据错误，4 数值错误，1 其他
"""

import logging
import os
import sys
import traceback
from typing import List, Optional

# 设置路径
BASE_DIR = os.path.dirname(os.path.abspath(__file__))
if BASE_DIR not in sys.path:
    sys.path.insert(0, BASE_DIR)

from config import Config, setup_all_loggers
from cli import COMMAND_TABLE, build_parser, build_run_config
from errors import FairPCAError

logger = logging.getLogger("cli")


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    # argparse 自身的用法错误以退出码 2 结束
    args = parser.parse_args(argv)
    values = vars(args)
    command = values.pop("command")
    config_path = values.pop("config")

    setup_all_loggers()
    try:
        Config.validate_config()
        config = build_run_config(command, values, Config.load_file(config_path))
        logger.info(f"【{command}】 method={config.method} k={config.k}")
        return COMMAND_TABLE[command](config)
    except FairPCAError as e:
        # 预期错误：一行消息，不打印堆栈
        print(f"❌ {e}", file=sys.stderr)
        return e.exit_code
    except Exception as e:
        logger.error(f"🚨 未预期的错误: {e}")
        logger.error(traceback.format_exc())
        return 1


if __name__ == "__main__":
    sys.exit(main())
