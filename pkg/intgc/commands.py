"""
IntGC 命令行

run(argv, stdin) -> (退出码, stdout, stderr)：结果一律作为数据写到 stdout，
退出码只表示运行是否出错（0 正常，2 输入错误或内部错误）。
"""

import argparse
import contextlib
import io
import sys
from typing import Any, Optional

from .errors import IntGCError, NotALattice, NotDistributive, UsageError
from .helpers import (
    InputStream, build_random_params, build_search_budget, dump_json, load_algebra_file, load_model_file,
)
from .logger import configure_logging, get_logger
from .plugin import IntGCToolkit
from .search import decide_bounded, random_model
from .semantics import (
    build_filtration, check_gc_operators, complex_algebra, extension, failing_assignment, failing_world,
    model_to_dict, rf_pair_basis, rf_pair_basis_alt, satisfies, to_dot, valid_in_frame, valid_in_model,
    verify_filtration,
)
from .syntax import closure_basis, parse

logger = get_logger("IntGC.commands")


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(f"{self.prog}: {message}")


def _add_model_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("model", help="模型 JSON 文件，- 表示 stdin")
    sub.add_argument("--close-r", action="store_true", help="对 r 取 (★) 闭包而不是报错")
    sub.add_argument("--close-valuation", action="store_true", help="对赋值取上闭包而不是报错")


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="intgc", description=IntGCToolkit.plugin_description)
    parser.add_argument("--config", help="配置文件（TOML）")
    parser.add_argument("--log-level", help="日志级别，覆盖配置 logging.level")
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("parse", help="解析公式并输出语法树")
    sub.add_argument("formula")

    sub = subs.add_parser("closure", help="输出 Sub(A)、Γ 与 Rᶠ 的范式对集合")
    sub.add_argument("formula")

    sub = subs.add_parser("mc", help="模型检查")
    _add_model_flags(sub)
    sub.add_argument("formula")
    sub.add_argument("--world", help="只检查这个世界")

    sub = subs.add_parser("valid", help="模型（或其框架）上的有效性")
    _add_model_flags(sub)
    sub.add_argument("formula")
    sub.add_argument("--frame", action="store_true", help="枚举全部上集赋值，检查框架有效性")

    sub = subs.add_parser("filter", help="经由 Σ(A) 的过滤")
    _add_model_flags(sub)
    sub.add_argument("formula")
    sub.add_argument("--verify", action="store_true", help="附加五项检查的报告")

    sub = subs.add_parser("decide", help="有界反模型搜索")
    sub.add_argument("formula")
    sub.add_argument("--max-worlds", type=int)
    sub.add_argument("--max-models", type=int)
    sub.add_argument("--timeout-ms", type=int)
    sub.add_argument("--seed", type=int)
    sub.add_argument("--min-worlds", type=int, default=1)
    sub.add_argument("--emit-filtration", action="store_true", help="输出过滤商模型与验证报告")

    sub = subs.add_parser("alg-check", help="检查代数的格结构与 Galois 连接")
    sub.add_argument("algebra", help="代数 JSON 文件，- 表示 stdin")

    sub = subs.add_parser("alg-valid", help="代数有效性")
    sub.add_argument("algebra")
    sub.add_argument("formula")

    sub = subs.add_parser("complex", help="框架的复代数")
    _add_model_flags(sub)

    sub = subs.add_parser("export-dot", help="导出 DOT")
    _add_model_flags(sub)
    sub.add_argument("--name", default="M")

    sub = subs.add_parser("random-model", help="生成随机模型")
    sub.add_argument("--seed", type=int)
    sub.add_argument("--vars", default="p,q", help="逗号分隔的变量名")

    sub = subs.add_parser("init-config", help="写出带注释的默认配置")
    sub.add_argument("path", nargs="?", default=IntGCToolkit.config_file_name)
    return parser


class IntGCCommand:
    """子命令分发，每个子命令返回写到 stdout 的文本"""

    def __init__(self, toolkit: IntGCToolkit, stdin: InputStream = None):
        self.toolkit = toolkit
        self.stdin = stdin

    def get_config(self, key: str, default: Any = None) -> Any:
        return self.toolkit.get_config(key, default)

    def execute(self, args: argparse.Namespace) -> str:
        handler = getattr(self, "_" + args.command.replace("-", "_"))
        return handler(args)

    def _model(self, args: argparse.Namespace):
        return load_model_file(args.model, self.stdin, args.close_r, args.close_valuation)

    # ==================== syntax ====================
    def _parse(self, args) -> str:
        f = parse(args.formula)
        return dump_json({"formula": str(f), "ast": f.to_dict()})

    def _closure(self, args) -> str:
        basis = closure_basis(parse(args.formula))
        return dump_json({
            "formula": str(basis.root),
            "sub": [str(b) for b in basis.sub],
            "gamma": [str(g) for g in basis.gamma],
            "rf_pairs": [[str(a), str(b)] for a, b in rf_pair_basis(basis)],
            "rf_pairs_alt": [[str(a), str(b)] for a, b in rf_pair_basis_alt(basis)],
        })

    # ==================== kripke ====================
    def _mc(self, args) -> str:
        model = self._model(args)
        f = parse(args.formula)
        if args.world is not None:
            return dump_json({"formula": str(f), "world": args.world, "satisfied": satisfies(model, args.world, f)})
        ext = extension(model, f)
        return dump_json({
            "formula": str(f),
            "extension": [w for w in model.worlds if w in ext],
            "valid": len(ext) == len(model.worlds),
        })

    def _valid(self, args) -> str:
        model = self._model(args)
        f = parse(args.formula)
        if args.frame:
            budget = self.get_config("kripke.max_frame_assignments", 100_000)
            return dump_json({"formula": str(f), "frame_valid": valid_in_frame(model.frame, f, budget=budget)})
        return dump_json({
            "formula": str(f),
            "valid": valid_in_model(model, f),
            "failing_world": failing_world(model, f),
        })

    def _filter(self, args) -> str:
        filt = build_filtration(self._model(args), parse(args.formula))
        data = filt.to_dict()
        if args.verify:
            data["report"] = verify_filtration(filt).to_dict()
        return dump_json(data)

    def _export_dot(self, args) -> str:
        return to_dot(self._model(args), args.name)

    def _random_model(self, args) -> str:
        variables = tuple(v.strip() for v in args.vars.split(",") if v.strip())
        params = build_random_params(self.get_config, variables)
        seed = args.seed if args.seed is not None else self.get_config("search.seed", 0)
        return dump_json(model_to_dict(random_model(params, seed)))

    # ==================== search ====================
    def _decide(self, args) -> str:
        budget = build_search_budget(
            self.get_config, args.max_worlds, args.max_models, args.timeout_ms, args.seed,
        )
        decision = decide_bounded(parse(args.formula), budget, args.min_worlds)
        data = decision.to_dict(emit_filtration=args.emit_filtration)
        data["budget"] = {
            "max_worlds": budget.max_worlds,
            "max_models": budget.max_models,
            "max_millis": budget.max_millis,
            "seed": budget.seed,
        }
        return dump_json(data)

    # ==================== algebra ====================
    def _alg_check(self, args) -> str:
        try:
            alg = load_algebra_file(args.algebra, self.stdin)
        except (NotALattice, NotDistributive) as e:
            return dump_json({"ok": False, "lattice": {"ok": False, "error": str(e), "witness": list(e.witness)}})
        report = check_gc_operators(alg)
        lat = alg.lattice
        return dump_json({
            "ok": report.ok,
            "lattice": {"ok": True, "size": lat.size, "bottom": lat.bottom, "top": lat.top},
            "operators": report.to_dict(),
        })

    def _alg_valid(self, args) -> str:
        alg = load_algebra_file(args.algebra, self.stdin)
        f = parse(args.formula)
        budget = self.get_config("algebra.max_assignments", 100_000)
        failing = failing_assignment(alg, f, budget)
        return dump_json({"formula": str(f), "valid": failing is None, "failing_assignment": failing})

    def _complex(self, args) -> str:
        alg = complex_algebra(self._model(args).frame)
        data = alg.to_dict()
        data["report"] = check_gc_operators(alg).to_dict()
        return dump_json(data)

    # ==================== config ====================
    def _init_config(self, args) -> str:
        path = IntGCToolkit.write_default_config(args.path)
        return dump_json({"written": str(path)})


def run(argv: list[str], stdin: InputStream = None) -> tuple[int, str, str]:
    """执行一条命令，返回 (退出码, stdout, stderr)"""
    out = io.StringIO()
    err = io.StringIO()
    configure_logging(stream=err)
    try:
        with contextlib.redirect_stdout(out):
            args = build_parser().parse_args(argv)
    except SystemExit as e:
        # --help
        return int(e.code or 0), out.getvalue(), err.getvalue()
    except UsageError as e:
        err.write(f"{e}\n")
        return 2, out.getvalue(), err.getvalue()

    try:
        toolkit = IntGCToolkit(args.config)
        level = args.log_level or toolkit.get_config("logging.level", "WARNING")
        configure_logging(level, toolkit.get_config("logging.json", False), stream=err)
        out.write(IntGCCommand(toolkit, stdin).execute(args))
    except (IntGCError, ValueError, OSError) as e:
        err.write(f"错误: {e}\n")
        return 2, "", err.getvalue()
    except Exception as e:
        logger.exception(f"内部错误: {e}")
        return 2, "", err.getvalue()
    return 0, out.getvalue(), err.getvalue()


def main(argv: Optional[list[str]] = None) -> int:
    code, stdout, stderr = run(sys.argv[1:] if argv is None else argv, sys.stdin.buffer)
    sys.stdout.write(stdout)
    sys.stderr.write(stderr)
    return code
