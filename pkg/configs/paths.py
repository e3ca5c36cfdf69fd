from pathlib import Path

# 项目所在根目录
PROJECT_ROOT = (Path(__file__).parent.parent).resolve()
# 输出目录
OUTPUT_ROOT = (Path(__file__).parent.parent / "output").resolve()
# sweep 生成的 CSV 默认存放目录
SWEEP_OUTPUT_ROOT = OUTPUT_ROOT / "sweeps"
# run_experiment.py 执行 job 文件后的报告目录
JOB_OUTPUT_ROOT = OUTPUT_ROOT / "jobs"


if __name__ == '__main__':
    print(PROJECT_ROOT)
    print(OUTPUT_ROOT)
    print(SWEEP_OUTPUT_ROOT)
    print(JOB_OUTPUT_ROOT)
