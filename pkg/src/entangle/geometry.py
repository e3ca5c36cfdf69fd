"""
纠缠的几何：态的矩阵化、测量后向量、楔积 concurrence、可分性、Schmidt 系数、
多边形不等式以及三比特恒等式。

对二分割 A|B，把 B 在计算基下测量得到 d_B 个未归一的向量 χ_j (维数 d_A)，
它们就是 state_matrix 的列。concurrence 为

    C = 2 * sqrt( Σ_{j<k} |χ_j ∧ χ_k|² )

即两两张成的平行四边形面积平方和。态可分当且仅当所有 χ_j 平行。
"""
import itertools
import logging
from dataclasses import dataclass
from typing import NamedTuple, Tuple

import numpy as np

from .core.errors import DimensionMismatch, NotThreeParty, NotThreeQubit, NotTwoQubit
from .core.state import Bipartition, DEFAULT_TOLERANCES, single_party_splits
from .core.utils import matricize
from .entropy import partial_trace, purity

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PostMeasurementFamily:
    bipartition: Bipartition
    vectors: Tuple[np.ndarray, ...]

    @property
    def total_weight(self):
        """Σ_j ||χ_j||²，对归一化的态等于 1"""
        return float(sum(np.vdot(v, v).real for v in self.vectors))

    def nonzero(self, threshold=0.0):
        """(下标, 向量) 中范数大于 threshold 的那些"""
        return [(j, v) for j, v in enumerate(self.vectors) if np.linalg.norm(v) > threshold]


@dataclass(frozen=True)
class ConcurrenceReport:
    bipartition: Bipartition
    c_wedge: float
    c_oracle: float
    discrepancy: float
    equality_tol: float

    @property
    def accepted(self):
        return self.discrepancy <= self.equality_tol


@dataclass(frozen=True)
class PolygonReport:
    """
    三方纯态的单方 concurrence (C_{A|BC}, C_{B|CA}, C_{C|AB}) 以及
    linear_slacks[i] = C_j + C_k - C_i, squared_slacks[i] = C_j² + C_k² - C_i²。
    原样报告，不截断。
    """
    c: Tuple[float, float, float]
    linear_slacks: Tuple[float, float, float]
    squared_slacks: Tuple[float, float, float]

    @property
    def min_linear_slack(self):
        return min(self.linear_slacks)

    @property
    def min_squared_slack(self):
        return min(self.squared_slacks)


class IdentityResidual(NamedTuple):
    lhs: float
    rhs: float

    @property
    def residual(self):
        return self.lhs - self.rhs


def state_matrix(state, bipartition):
    """
    态在二分割下的 d_A × d_B 矩阵：M[i][j] 为 |i>_A ⊗ |j>_B 的振幅。
    行为 focus 一侧；列即测量后向量 χ_j。
    """
    bip = Bipartition.of(state, bipartition)
    return matricize(state.amps, state.dims, bip.focus)


def post_measurement_vectors(state, bipartition, tolerances=DEFAULT_TOLERANCES):
    """χ_j = (I_A ⊗ <j|_B)|ψ>，j 遍历 B 的计算基"""
    bip = Bipartition.of(state, bipartition)
    matrix = matricize(state.amps, state.dims, bip.focus)
    family = PostMeasurementFamily(bip, tuple(matrix[:, j].copy() for j in range(matrix.shape[1])))
    weight = family.total_weight
    if abs(weight - 1.0) > tolerances.norm_tol:
        # PureState 已保证归一，这里只可能是数值问题
        logger.warning("post-measurement family for %s has total weight %r", bip.label(), weight)
    return family


def wedge_norm_sq(u, v):
    """
    |u ∧ v|² = Σ_{i<j} |u_i v_j - u_j v_i|²，即 u, v 张成的平行四边形面积的平方。
    """
    u = np.asarray(u, dtype=complex).ravel()
    v = np.asarray(v, dtype=complex).ravel()
    if u.shape != v.shape:
        raise DimensionMismatch(f"wedge of vectors with dimensions {u.size} and {v.size}")
    minors = np.outer(u, v) - np.outer(v, u)
    # 反对称矩阵，上下三角各算一次
    return float(0.5 * np.sum(np.abs(minors) ** 2))


def squared_area(state, bipartition):
    """Σ_{j<k} |χ_j ∧ χ_k|²"""
    family = post_measurement_vectors(state, bipartition)
    return sum(wedge_norm_sq(u, v) for u, v in itertools.combinations(family.vectors, 2))


def concurrence_wedge(state, bipartition):
    """C = 2 sqrt(Σ_{j<k} |χ_j ∧ χ_k|²)。局域维数 > 2 时不做归一 (qutrit GHZ 为 2/√3)。"""
    return float(2.0 * np.sqrt(squared_area(state, bipartition)))


def concurrence_purity(state, bipartition):
    """独立的校验：C = sqrt(2 (1 - Tr ρ_A²))"""
    bip = Bipartition.of(state, bipartition)
    rho = partial_trace(state, bip.focus)
    return float(np.sqrt(max(0.0, 2.0 * (1.0 - purity(rho)))))


def concurrence_report(state, bipartition, tolerances=DEFAULT_TOLERANCES):
    bip = Bipartition.of(state, bipartition)
    c_wedge = concurrence_wedge(state, bip)
    c_oracle = concurrence_purity(state, bip)
    report = ConcurrenceReport(bip, c_wedge, c_oracle, abs(c_wedge - c_oracle), tolerances.equality_tol)
    if not report.accepted:
        logger.warning("concurrence mismatch on %s: wedge=%r oracle=%r",
                       bip.label(), c_wedge, c_oracle)
    return report


def determinant_concurrence(state):
    """两比特态 a|00> + b|01> + c|10> + d|11> 的 2|ad - bc|"""
    if state.dims != (2, 2):
        raise NotTwoQubit(f"determinant form needs dims [2, 2], got {list(state.dims)}")
    a, b, c, d = state.amps
    return float(2.0 * abs(a * d - b * c))


def parallelogram_sides(state, bipartition, threshold=1e-12):
    """
    非零测量后向量的长度以及总的面积平方。
    φ+ 在 A|B 下给出两条长 1/√2 的正交边，即面积 1/2 的正方形。
    """
    family = post_measurement_vectors(state, bipartition)
    sides = {j: float(np.linalg.norm(v)) for j, v in family.nonzero(threshold)}
    area_sq = sum(wedge_norm_sq(u, v) for u, v in itertools.combinations(family.vectors, 2))
    return sides, area_sq


def schmidt_coefficients(state, bipartition):
    """state_matrix 的奇异值，降序"""
    return np.linalg.svd(state_matrix(state, bipartition), compute_uv=False)


def is_separable(state, bipartition, tolerances=DEFAULT_TOLERANCES):
    """
    当且仅当矩阵秩为 1 (第二大奇异值 <= rank_tol × 最大奇异值) 时可分。

    :return: (separable, effective_rank)
    """
    sigma = schmidt_coefficients(state, bipartition)
    cutoff = tolerances.rank_tol * sigma[0]
    rank = int(np.count_nonzero(sigma > cutoff))
    return rank <= 1, rank


def polygon_check(state):
    """三方态的多边形不等式 C_i <= C_j + C_k 及其平方形式"""
    if state.n_parties != 3:
        raise NotThreeParty(f"polygon check needs exactly 3 parties, got {state.n_parties}")
    c = tuple(concurrence_wedge(state, bip) for bip in single_party_splits(3))
    linear, squared = [], []
    for i in range(3):
        j, k = [x for x in range(3) if x != i]
        linear.append(c[j] + c[k] - c[i])
        squared.append(c[j] ** 2 + c[k] ** 2 - c[i] ** 2)
    return PolygonReport(c, tuple(linear), tuple(squared))


def three_qubit_identity_residual(state):
    """
    三比特态 a|000> + b|001> + c|010> + d|011> + p|100> + q|101> + r|110> + s|111>：

        lhs = C²_{B|CA} + C²_{C|AB} - C²_{A|BC}
        rhs = 4 [2|ad - bc|² + 2|ps - qr|² + |as + pd - br - qc|²]

    两者都返回，不判断是否相等 (复振幅下恒等式不一定成立)。
    """
    if state.dims != (2, 2, 2):
        raise NotThreeQubit(f"identity needs dims [2, 2, 2], got {list(state.dims)}")
    c_a, c_b, c_c = (concurrence_wedge(state, bip) for bip in single_party_splits(3))
    lhs = c_b ** 2 + c_c ** 2 - c_a ** 2
    a, b, c, d, p, q, r, s = state.amps
    rhs = 4.0 * (2 * abs(a * d - b * c) ** 2
                 + 2 * abs(p * s - q * r) ** 2
                 + abs(a * s + p * d - b * r - q * c) ** 2)
    return IdentityResidual(float(lhs), float(rhs))
