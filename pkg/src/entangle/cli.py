"""
命令行入口：

    entangle eval "(|000>+|111>)/sqrt(2)"
    entangle eval --catalog W3 --split "0|12" --format json
    entangle polygon --catalog "GHZ(3,3)"
    entangle sweep --dims 2,2,2 --count 1000 --seed 42 --csv -
    entangle teleport "0.6|0> + 0.8|1>" --resource "|00>"
    entangle catalog list
    entangle catalog show PhiPlus

成功时退出码 0；出错时在 stderr 输出一行 JSON 并返回非零退出码。
"""
import argparse
import json
import logging
import sys
from pathlib import Path

from configs import numerics
from .batch_run import SweepRunner, csv_text, default_csv_path, save_csv
from .core.builder import render, save_document
from .core.errors import EntanglementError
from .job_loader import JobOptions, JobSpec, StateSource, parse_dims
from .pipeline import AnalysisPipeline

logger = logging.getLogger(__name__)

EXIT_USAGE = 2
EXIT_IO = 1


class UsageError(EntanglementError):
    code = "UsageError"


class ArgumentParser(argparse.ArgumentParser):
    """参数错误时抛异常，由 main 统一输出单行 JSON"""

    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _common_parser():
    common = ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default="text")
    common.add_argument("--base", choices=["2", "e"], default=str(numerics.DEFAULT_LOG_BASE))
    common.add_argument("--tol", type=float, default=numerics.EQUALITY_TOL,
                        help="equality tolerance for the oracle cross-check")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", default=None, help="write the report here instead of stdout")
    common.add_argument("--normalize", action="store_true",
                        help="rescale parsed states to unit norm")
    common.add_argument("-v", "--verbose", action="store_true")
    return common


def _add_state_source(parser, positional_help):
    parser.add_argument("expr", nargs="?", default=None, help=positional_help)
    parser.add_argument("--catalog", default=None, help="catalog name, e.g. W3 or GHZ(3,3)")
    parser.add_argument("--random", default=None, metavar="DIMS",
                        help="random Haar states with these dims, e.g. 2,2,2")
    parser.add_argument("--count", type=int, default=1)
    parser.add_argument("--dims", default=None, help="local dimensions for a ket expression")


def build_parser():
    common = _common_parser()
    parser = ArgumentParser(
        prog="entangle",
        description="Wedge-product entanglement of multipartite pure states.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", parents=[common], help="concurrence, Schmidt and entropy")
    _add_state_source(p_eval, "ket expression")
    p_eval.add_argument("--split", action="append", default=[], metavar="A|B",
                        help="bipartition selector such as 0|12 (repeatable)")

    p_poly = sub.add_parser("polygon", parents=[common], help="polygon inequalities (3 parties)")
    _add_state_source(p_poly, "ket expression")

    p_sweep = sub.add_parser("sweep", parents=[common], help="random-state verification sweep")
    p_sweep.add_argument("--dims", required=True, help="local dimensions, e.g. 2,2,2")
    p_sweep.add_argument("--count", type=int, default=1000)
    p_sweep.add_argument("--csv", default=None,
                         help="CSV destination ('-' for stdout); default under output/sweeps")
    p_sweep.add_argument("--workers", type=int, default=1)
    p_sweep.add_argument("--no-progress", action="store_true")

    p_tel = sub.add_parser("teleport", parents=[common], help="teleportation protocol")
    _add_state_source(p_tel, "input qubit as a ket expression")
    p_tel.add_argument("--resource", default=None, help="two-qubit resource (default phi+)")

    p_cat = sub.add_parser("catalog", help="named states")
    cat_sub = p_cat.add_subparsers(dest="action", required=True)
    cat_sub.add_parser("list", parents=[common])
    p_show = cat_sub.add_parser("show", parents=[common])
    p_show.add_argument("name")
    return parser


def _options(args):
    return JobOptions(
        splits=tuple(getattr(args, "split", []) or []),
        base=args.base,
        tol=args.tol,
        format=args.format,
        out=args.out,
        normalize=args.normalize,
        resource=getattr(args, "resource", None),
    )


def _source(args):
    dims_hint = parse_dims(args.dims) if args.dims is not None else None
    return StateSource(
        ket=args.expr,
        catalog=args.catalog,
        random=parse_dims(args.random) if args.random is not None else None,
        seed=args.seed,
        count=args.count,
        dims_hint=dims_hint,
    )


def job_from_args(args):
    """argparse 结果 -> JobSpec (执行前完成所有校验)"""
    options = _options(args)
    if args.command in ("eval", "polygon", "teleport"):
        return JobSpec(args.command, _source(args), options)
    if args.command == "sweep":
        return JobSpec("sweep", None, options, {
            "dims": list(parse_dims(args.dims)), "count": args.count, "seed": args.seed,
            "csv": args.csv, "workers": args.workers, "progress": not args.no_progress})
    extra = {"action": args.action}
    if args.action == "show":
        extra["name"] = args.name
    return JobSpec("catalog", None, options, extra)


# --- 各子命令，返回 ReportDocument ---

def cmd_eval(source, options):
    return AnalysisPipeline(options).run_eval(source)


def cmd_polygon(source, options):
    return AnalysisPipeline(options).run_polygon(source)


def cmd_teleport(source, options):
    return AnalysisPipeline(options).run_teleport(source)


def cmd_catalog(action, options, name=None):
    pipeline = AnalysisPipeline(options)
    if action == "show":
        return pipeline.run_catalog_show(name)
    return pipeline.run_catalog_list()


def cmd_sweep(dims, count, seed, options, csv=None, workers=1, progress=False, stdout=None):
    """
    运行扫描，写出 CSV，返回汇总文档。

    :param csv: CSV 路径；'-' 表示写到 stdout；None 表示默认路径
    """
    runner = SweepRunner(dims, count, seed, workers=workers, progress=progress,
                         equality_tol=options.tol)
    rows = runner.run()
    n_parties = len(runner.dims)
    if csv == "-":
        (stdout or sys.stdout).write(csv_text(rows, n_parties))
        target = "-"
    else:
        target = Path(csv) if csv is not None else default_csv_path(runner.dims, seed)
        save_csv(rows, n_parties, target)
    return runner.summarize(rows, target)


def execute(job, stdout=None):
    """执行一个 JobSpec，返回 ReportDocument"""
    options = job.options
    if job.command == "eval":
        return cmd_eval(job.source, options)
    if job.command == "polygon":
        return cmd_polygon(job.source, options)
    if job.command == "teleport":
        return cmd_teleport(job.source, options)
    if job.command == "sweep":
        extra = job.extra
        return cmd_sweep(parse_dims(extra["dims"]), int(extra.get("count", 1000)),
                         int(extra.get("seed", 0)), options, csv=extra.get("csv"),
                         workers=int(extra.get("workers", 1)),
                         progress=bool(extra.get("progress", False)), stdout=stdout)
    return cmd_catalog(job.extra.get("action", "list"), options, job.extra.get("name"))


def emit(document, options, stdout=None):
    if options.out:
        save_document(document, options.out, options.format)
    else:
        (stdout or sys.stdout).write(render(document, options.format))


def _error_line(payload):
    return json.dumps(payload, sort_keys=True)


def main(argv=None, stdout=None, stderr=None):
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        logging.basicConfig(
            level=logging.INFO if args.verbose else logging.WARNING,
            format="%(asctime)s - %(levelname)s - %(message)s",
            stream=sys.stderr,
        )
        job = job_from_args(args)
        document = execute(job, stdout=stdout)
        # CSV 已经占用 stdout 时，汇总文档改写到 stderr
        csv_on_stdout = job.command == "sweep" and job.extra.get("csv") == "-"
        emit(document, job.options, stdout=stderr if csv_on_stdout else stdout)
    except EntanglementError as e:
        stderr.write(_error_line(e.as_dict()) + "\n")
        return EXIT_USAGE
    except MemoryError as e:
        message = str(e) or "out of memory"
        stderr.write(_error_line({"error": "MemoryError", "message": message, "position": None}) + "\n")
        return EXIT_USAGE
    except OSError as e:
        stderr.write(_error_line({"error": "IOError", "message": str(e), "position": None}) + "\n")
        return EXIT_IO
    return 0


if __name__ == "__main__":
    sys.exit(main())
