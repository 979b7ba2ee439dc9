"""
CLI - 命令行入口
verify-disc / verify-resultant / sweep / whittaker 四个子命令
"""

import argparse
import json
import sys
from fractions import Fraction
from typing import List, Optional

from .errors import DomainError, PrecisionError, ResourceError, UsageError

EXIT_MATCH = 0
EXIT_MISMATCH = 1
EXIT_PRECISION = 2
EXIT_USAGE = 64


class _Parser(argparse.ArgumentParser):
    """参数错误改为 UsageError，由 main 统一映射退出码"""

    def error(self, message):
        raise UsageError(message)


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _s_list(text: str) -> List[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma separated list of integers: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="weberyz", description="weberyz - Weber 类不变量判别式与结式的赋值验证")
    parser.add_argument('--config', help='配置文件路径（JSON）')
    parser.add_argument('--quiet', action='store_true', help='不输出进度信息')
    parser.add_argument('--json', action='store_true', help='在 stdout 输出 JSON 报告')
    parser.add_argument('--prec', type=int, help='起始精度（比特），默认 192')
    parser.add_argument('--no-cache', action='store_true', help='不使用多项式缓存')
    parser.add_argument('--save', metavar='NAME', help='同时把 JSON 报告写入 output.directory/NAME')

    sub = parser.add_subparsers(dest='command', parser_class=_Parser)

    p = sub.add_parser('verify-disc', help='验证 disc(D; s)')
    p.add_argument('-D', type=int, required=True, help='可容许的基本判别式')
    p.add_argument('-s', type=int, default=1, help='24 的因子')
    p.add_argument('--class-index', type=int, help='逐类表只列出第 k 个类')

    p = sub.add_parser('verify-resultant', help='验证 Res(P[D1], P[D2])')
    p.add_argument('-D1', type=int, required=True)
    p.add_argument('-D2', type=int, required=True)
    p.add_argument('-s', type=int, default=1, help='24 的因子')

    p = sub.add_parser('sweep', help='在判别式区间上批量验证')
    p.add_argument('--dmin', type=int, help='区间下端，默认取配置')
    p.add_argument('--dmax', type=int, help='区间上端，默认取配置')
    p.add_argument('--s-list', type=_s_list, help='逗号分隔的 s 列表，如 1,24')
    p.add_argument('--jobs', type=int, help='进程数')

    p = sub.add_parser('whittaker', help='局部 Whittaker 闭式与暴力核对')
    p.add_argument('p', type=int, help='奇素数')
    p.add_argument('Delta', type=_fraction)
    p.add_argument('kappa', type=_fraction)
    p.add_argument('m', type=_fraction)
    p.add_argument('mu1', type=_fraction, nargs='?', default=Fraction(0))
    p.add_argument('mu2', type=_fraction, nargs='?', default=Fraction(0))
    p.add_argument('--depth', type=int, help='壳层数')

    return parser


def _emit(args, config, data) -> None:
    indent = config["output"]["json_indent"]
    text = json.dumps(data, indent=indent, ensure_ascii=False)
    if args.json:
        print(text)
    if args.save:
        from .verifier import VerificationPipeline
        path = VerificationPipeline(config, quiet=True).save(text + "\n", args.save)
        if not args.quiet:
            print(f"报告已写入: {path}", file=sys.stderr)


def _run(args) -> int:
    from .settings import load_config
    from .verifier import VerificationPipeline

    config = load_config(args.config)
    pipeline = VerificationPipeline(
        config,
        quiet=args.quiet,
        stream=sys.stderr if args.json else sys.stdout,
        use_cache=False if args.no_cache else None,
        prec=args.prec,
    )

    if args.command == 'verify-disc':
        report = pipeline.verify_disc(args.D, args.s, args.class_index)
        _emit(args, config, report.to_dict())
        return EXIT_MATCH if report.match else EXIT_MISMATCH

    if args.command == 'verify-resultant':
        report = pipeline.verify_resultant(args.D1, args.D2, args.s)
        _emit(args, config, report.to_dict())
        return EXIT_MATCH if report.match else EXIT_MISMATCH

    if args.command == 'sweep':
        defaults = config["sweep"]
        report = pipeline.sweep_cases(
            args.dmin if args.dmin is not None else defaults["dmin"],
            args.dmax if args.dmax is not None else defaults["dmax"],
            args.s_list or defaults["s_list"],
            args.jobs if args.jobs is not None else defaults["jobs"],
        )
        _emit(args, config, report.to_dict())
        return EXIT_MATCH if report.ok else EXIT_MISMATCH

    result = pipeline.whittaker_compare(args.p, args.Delta, args.kappa, args.m,
                                        args.mu1, args.mu2, args.depth)
    _emit(args, config, result.to_json())
    return EXIT_MATCH if result.agree else EXIT_MISMATCH


def main(argv: Optional[List[str]] = None) -> int:
    """命令行入口，返回退出码"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("a command is required: verify-disc, verify-resultant, sweep or whittaker")
        return _run(args)
    except PrecisionError as e:
        print(f"Error: {e}", file=sys.stderr)
        if e.report is not None:
            print(json.dumps({"rounding": e.report.to_json()}, indent=2), file=sys.stderr)
        return EXIT_PRECISION
    except ResourceError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_PRECISION
    except (UsageError, DomainError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
