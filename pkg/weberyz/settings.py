"""
Settings - 配置加载
JSON 配置文件覆盖内置默认值，环境变量 WEBER_YZ_PREC 覆盖默认精度
"""

import copy
import json
import os
from pathlib import Path
from typing import Any, Dict, Optional

from .errors import UsageError
from .webereval.eta import PREC_ENV

DEFAULT_CONFIG: Dict[str, Any] = {
    "precision": {
        "default_bits": 192,
        "cap_bits": 65536,
        "guard_bits": 16,
    },
    "sweep": {
        "dmin": -400,
        "dmax": -1,
        "s_list": [1, 2, 3, 4, 6, 8, 12, 24],
        "jobs": 1,
    },
    "whittaker": {
        "oracle_cap": 1 << 21,
        "default_depth": 12,
    },
    "cache": {
        "enabled": False,
        "path": "./.weberyz_cache/polynomials.db",
    },
    "output": {
        "directory": "./output",
        "json_indent": 2,
    },
}


def _deep_merge(base: Dict, override: Dict) -> Dict:
    merged = copy.deepcopy(base)
    for key, value in override.items():
        if key.startswith("_"):
            continue
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _deep_merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def load_config(path: Optional[str] = None) -> Dict[str, Any]:
    """
    加载配置

    Args:
        path: JSON 配置文件路径；为空时只用默认值

    Returns:
        dict: 合并后的配置（"_comment" 之类的下划线键被忽略）
    """
    config = copy.deepcopy(DEFAULT_CONFIG)
    if path is not None:
        config_path = Path(path)
        if not config_path.is_file():
            raise UsageError(f"config file not found: {path}")
        try:
            with open(config_path, "r", encoding="utf-8") as f:
                user = json.load(f)
        except json.JSONDecodeError as e:
            raise UsageError(f"config file {path} is not valid JSON: {e}") from None
        if not isinstance(user, dict):
            raise UsageError(f"config file {path} must contain a JSON object")
        config = _deep_merge(config, user)

    env = os.environ.get(PREC_ENV)
    if env:
        try:
            bits = int(env)
        except ValueError:
            raise UsageError(f"{PREC_ENV} must be an integer, got {env!r}") from None
        if bits <= 0:
            raise UsageError(f"{PREC_ENV} must be positive, got {bits}")
        config["precision"]["default_bits"] = bits
    return config
