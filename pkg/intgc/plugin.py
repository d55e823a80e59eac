"""
IntGC 工具包配置

config_schema 声明全部配置项（类型、默认值、说明）；可选的 config.toml 覆盖默认值。
读取时未知的键被忽略，类型不符的值回退到默认值，两种情况都记 warning。
"""

from dataclasses import dataclass
from pathlib import Path
from typing import Any, Optional, Union

import tomlkit
from tomlkit.exceptions import TOMLKitError

from .errors import ConfigError
from .logger import get_logger

logger = get_logger("IntGC.plugin")


@dataclass(frozen=True)
class ConfigField:
    type: type
    default: Any
    description: str = ""

    def accepts(self, value: Any) -> bool:
        if self.type is bool:
            return isinstance(value, bool)
        if self.type is float:
            return isinstance(value, (int, float)) and not isinstance(value, bool)
        if self.type is int:
            return isinstance(value, int) and not isinstance(value, bool)
        return isinstance(value, self.type)


class IntGCToolkit:
    """IntGC 判定工具包 - 公式解析、模型检查、过滤、反模型搜索、代数语义"""
    plugin_name = "IntGC"
    plugin_description = "IntGC（带 Galois 连接 ▲/▽ 的直觉主义命题逻辑）判定工具包"
    config_file_name = "config.toml"

    config_section_descriptions = {
        "search": "反模型搜索配置（decide 命令；命令行参数优先）",
        "kripke": "Kripke 语义配置（valid --frame 的赋值枚举预算）",
        "algebra": "代数语义配置（alg-valid 的赋值枚举预算）",
        "random": "随机模型配置（random-model 命令与性质测试）",
        "logging": "日志配置（日志只写 stderr）",
    }

    config_schema = {
        "search": {
            "max_worlds": ConfigField(type=int, default=3, description="搜索的最大世界数"),
            "max_models": ConfigField(type=int, default=1_000_000, description="最多检查的模型数"),
            "timeout_ms": ConfigField(type=int, default=60_000,
                                      description="墙钟时间上限（毫秒），只在两个框架之间检查"),
            "seed": ConfigField(type=int, default=0, description="随机种子（64 位非负整数）"),
        },
        "kripke": {
            "max_frame_assignments": ConfigField(type=int, default=100_000,
                                                 description="框架有效性检查允许的上集赋值组合数上限"),
        },
        "algebra": {
            "max_assignments": ConfigField(type=int, default=100_000,
                                           description="代数有效性检查允许的赋值组合数上限"),
        },
        "random": {
            "min_worlds": ConfigField(type=int, default=1, description="随机模型的最少世界数"),
            "max_worlds": ConfigField(type=int, default=6, description="随机模型的最多世界数"),
            "leq_density": ConfigField(type=float, default=0.3, description="≤ 种子边的密度（0-1）"),
            "r_density": ConfigField(type=float, default=0.3, description="R 种子对的密度（0-1）"),
            "val_density": ConfigField(type=float, default=0.4, description="赋值种子的密度（0-1）"),
        },
        "logging": {
            "level": ConfigField(type=str, default="WARNING", description="日志级别: DEBUG / INFO / WARNING / ERROR"),
            "json": ConfigField(type=bool, default=False, description="是否以 JSON 行输出日志"),
        },
    }

    def __init__(self, config_path: Optional[Union[str, Path]] = None):
        self.config: dict[str, dict[str, Any]] = {
            section: {key: spec.default for key, spec in fields.items()}
            for section, fields in self.config_schema.items()
        }
        if config_path is not None:
            self.load_config(config_path)

    def load_config(self, path: Union[str, Path]) -> None:
        """用 TOML 文件覆盖当前配置

        Raises:
            ConfigError: 文件不存在或不是合法的 TOML
        """
        path = Path(path)
        try:
            data = tomlkit.parse(path.read_text(encoding="utf-8")).unwrap()
        except OSError as e:
            raise ConfigError(f"无法读取配置文件 {path}: {e}") from e
        except TOMLKitError as e:
            raise ConfigError(f"配置文件 {path} 不是合法的 TOML: {e}") from e

        for section, values in data.items():
            fields = self.config_schema.get(section)
            if fields is None or not isinstance(values, dict):
                logger.warning(f"忽略未知的配置段: {section}")
                continue
            for key, value in values.items():
                spec = fields.get(key)
                if spec is None:
                    logger.warning(f"忽略未知的配置项: {section}.{key}")
                elif not spec.accepts(value):
                    logger.warning(f"配置项 {section}.{key} 类型应为 {spec.type.__name__}，使用默认值 {spec.default!r}")
                else:
                    self.config[section][key] = float(value) if spec.type is float else value
        logger.info(f"已加载配置: {path}")

    def get_config(self, key: str, default: Any = None) -> Any:
        """按 "section.key" 读取配置"""
        section, _, name = key.partition(".")
        return self.config.get(section, {}).get(name, default)

    @classmethod
    def default_config_document(cls) -> tomlkit.TOMLDocument:
        """由 config_schema 生成带注释的默认配置"""
        doc = tomlkit.document()
        doc.add(tomlkit.comment(f"{cls.plugin_name} 配置文件"))
        for section, fields in cls.config_schema.items():
            table = tomlkit.table()
            table.add(tomlkit.comment(cls.config_section_descriptions.get(section, "")))
            for key, spec in fields.items():
                table.add(tomlkit.comment(spec.description))
                table.add(key, spec.default)
            doc.add(tomlkit.nl())
            doc.add(section, table)
        return doc

    @classmethod
    def write_default_config(cls, path: Union[str, Path]) -> Path:
        path = Path(path)
        path.write_text(tomlkit.dumps(cls.default_config_document()), encoding="utf-8")
        logger.info(f"已生成默认配置: {path}")
        return path
