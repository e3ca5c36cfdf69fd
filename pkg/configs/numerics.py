# 数值容差的默认值 (Tolerances 从这里取默认)
NORM_TOL = 1e-9
RANK_TOL = 1e-9  # 相对最大奇异值
EQUALITY_TOL = 1e-9
EIG_CLIP = 1e-12

# 多边形不等式 / Araki-Lieb 判定违例的阈值
VIOLATION_TOL = 1e-10

# 熵的默认对数底：2 -> bit
DEFAULT_LOG_BASE = 2

# 输出格式
TEXT_DIGITS = 7  # 文本输出有效数字
MACHINE_DIGITS = 17  # JSON 输出有效数字 (无损)
FORMAT_THRESHOLD = 1e-12  # format_state 忽略的振幅阈值
SCHEMA_VERSION = 1

# DensityMatrix 厄米性检查的容差
HERMITIAN_TOL = 1e-10

# 态矢量总维数 ∏ dims 的上限 (2^24 个复振幅约 256 MiB)
MAX_TOTAL_DIM = 2 ** 24
