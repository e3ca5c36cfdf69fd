import argparse
import logging
from pathlib import Path

from tqdm import tqdm

from configs import paths
from src.entangle.cli import execute
from src.entangle.core.builder import save_document
from src.entangle.core.errors import EntanglementError
from src.entangle.job_loader import JobLoader

# 配置日志
logging.basicConfig(
    level=logging.INFO,
    format="%(asctime)s - %(levelname)s - %(message)s",
)
logger = logging.getLogger(__name__)


def run_jobs(job_files, output_dir=paths.JOB_OUTPUT_ROOT):
    """
    批量执行 JSON job 文件，每个 job 写一个报告。

    :param job_files: job 文件路径列表
    :param output_dir: 报告输出目录
    :return: (成功数, 失败数)
    """
    loader = JobLoader(job_files)
    output_dir = Path(output_dir)
    output_dir.mkdir(parents=True, exist_ok=True)

    success_count = 0
    fail_count = 0
    for index, job in enumerate(tqdm(loader, desc="Running jobs", unit="job")):
        suffix = "json" if job.options.format == "json" else "txt"
        target = Path(job.options.out) if job.options.out else output_dir / f"job_{index:03d}_{job.command}.{suffix}"
        try:
            document = execute(job)
            save_document(document, str(target), job.options.format)
            success_count += 1
            logger.info(f"Success: job {index} ({job.command}) -> {target}")
        except EntanglementError as e:
            fail_count += 1
            logger.error(f"Failed: job {index} ({job.command}). Error: {e.code}: {e.message}")

    logger.info(f"完成: 成功 {success_count}, 失败 {fail_count}")
    return success_count, fail_count


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description="Run JSON job files.")
    parser.add_argument("jobs", nargs="+", help="job files")
    parser.add_argument("--out-dir", default=str(paths.JOB_OUTPUT_ROOT))
    args = parser.parse_args()
    run_jobs(args.jobs, args.out_dir)
