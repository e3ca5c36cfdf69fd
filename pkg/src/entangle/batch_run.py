import csv
import io
import logging
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from tqdm import tqdm

from configs import numerics, paths
from .core.builder import ReportBuilder
from .core.errors import InvalidParameters
from .core.state import all_bipartitions, random_pure, single_party_splits
from .geometry import concurrence_purity, concurrence_wedge, polygon_check

logger = logging.getLogger(__name__)

CSV_SCHEMA_LINE = f"# schema={numerics.SCHEMA_VERSION}"


def csv_columns(n_parties):
    """三方时即 index,seed,C_0,C_1,C_2,slack_lin_min,slack_sq_min,oracle_disc_max"""
    return (["index", "seed"] + [f"C_{k}" for k in range(n_parties)]
            + ["slack_lin_min", "slack_sq_min", "oracle_disc_max"])


def default_csv_path(dims, seed):
    name = "x".join(str(d) for d in dims)
    return paths.SWEEP_OUTPUT_ROOT / f"sweep_{name}_seed{seed}.csv"


def sweep_sample(dims, index, seed):
    """
    单个样本：random_pure(dims, seed) 的单方 concurrence、多边形 slack
    (仅三方) 以及所有二分割上楔积与纯度校验的最大差。
    """
    state = random_pure(dims, seed)
    row = {"index": index, "seed": seed}
    for bip in single_party_splits(state.n_parties):
        row[f"C_{min(bip.focus)}"] = concurrence_wedge(state, bip)
    if state.n_parties == 3:
        report = polygon_check(state)
        row["slack_lin_min"] = report.min_linear_slack
        row["slack_sq_min"] = report.min_squared_slack
    else:
        row["slack_lin_min"] = None
        row["slack_sq_min"] = None
    row["oracle_disc_max"] = max(
        abs(concurrence_wedge(state, bip) - concurrence_purity(state, bip))
        for bip in all_bipartitions(state.n_parties))
    return row


def _sweep_task(args):
    return sweep_sample(*args)


class SweepRunner:
    def __init__(self, dims, count, seed=0, workers=1, progress=True,
                 equality_tol=numerics.EQUALITY_TOL):
        """
        批量随机态扫描。

        :param dims: 各方维数
        :param count: 样本数 (>= 1)
        :param seed: 第 i 个样本用 seed + i，与 worker 数无关
        :param workers: 进程数；1 表示在当前进程里顺序执行
        :param progress: 是否显示 tqdm 进度条
        """
        if count < 1:
            raise InvalidParameters(f"sweep count must be >= 1, got {count}")
        if workers < 1:
            raise InvalidParameters(f"workers must be >= 1, got {workers}")
        # 提前校验 dims
        random_pure(dims, seed)
        self.dims = tuple(dims)
        self.count = count
        self.seed = seed
        self.workers = workers
        self.progress = progress
        self.equality_tol = equality_tol

    def tasks(self):
        return [(self.dims, i, self.seed + i) for i in range(self.count)]

    def run(self):
        """返回按 index 排序的所有行"""
        tasks = self.tasks()
        desc = f"Sweeping {list(self.dims)}"
        if self.workers == 1:
            rows = [_sweep_task(t) for t in tqdm(tasks, desc=desc, unit="state", disable=not self.progress)]
        else:
            chunk = max(1, self.count // (self.workers * 8))
            with ProcessPoolExecutor(max_workers=self.workers) as pool:
                # map 保持提交顺序，输出与完成顺序无关
                rows = list(tqdm(pool.map(_sweep_task, tasks, chunksize=chunk), total=len(tasks),
                                 desc=desc, unit="state", disable=not self.progress))
        logger.info(f"sweep finished: {len(rows)} samples of dims {list(self.dims)}")
        return rows

    def summarize(self, rows, csv_target=None):
        """汇总：最小 slack、最大校验差以及违例个数 (应为 0)"""
        lin = [r["slack_lin_min"] for r in rows if r["slack_lin_min"] is not None]
        sq = [r["slack_sq_min"] for r in rows if r["slack_sq_min"] is not None]
        violations = sum(
            1 for r in rows
            if r["slack_lin_min"] is not None
            and min(r["slack_lin_min"], r["slack_sq_min"]) < -numerics.VIOLATION_TOL)
        disc = max(r["oracle_disc_max"] for r in rows)
        disc_violations = sum(1 for r in rows if r["oracle_disc_max"] > self.equality_tol)
        if violations:
            logger.warning(f"{violations} polygon inequality violations in sweep")
        builder = ReportBuilder(
            "sweep",
            {"random": {"dims": list(self.dims), "seed": self.seed, "count": self.count}},
            {"csv": str(csv_target) if csv_target is not None else None})
        builder.set_summary(
            count=len(rows),
            min_linear_slack=min(lin) if lin else None,
            min_squared_slack=min(sq) if sq else None,
            max_discrepancy=disc,
            violation_count=violations,
            discrepancy_violations=disc_violations,
        )
        return builder.get_document()


def _cell(value):
    if value is None:
        return ""
    if isinstance(value, float):
        return format(value, f".{numerics.MACHINE_DIGITS}g")
    return str(value)


def write_csv(rows, n_parties, stream):
    """带版本注释行的 CSV"""
    stream.write(CSV_SCHEMA_LINE + "\n")
    columns = csv_columns(n_parties)
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_cell(row.get(c)) for c in columns])


def csv_text(rows, n_parties):
    buffer = io.StringIO()
    write_csv(rows, n_parties, buffer)
    return buffer.getvalue()


def save_csv(rows, n_parties, output_path):
    output_path = Path(output_path)
    output_path.parent.mkdir(parents=True, exist_ok=True)
    with open(output_path, "w", encoding="utf-8", newline="") as f:
        write_csv(rows, n_parties, f)
    logger.info(f"CSV saved to {output_path}")
