import logging
import math
from dataclasses import dataclass, field
from typing import Dict, NamedTuple

import numpy as np

from configs import numerics
from .core.errors import InvalidParameters, InvalidSubset, NotDensityMatrix, OverlappingSubsets
from .core.state import Bipartition, DEFAULT_TOLERANCES
from .core.utils import matricize

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """
    约化密度矩阵：厄米、迹为 1、半正定 (允许 -eig_clip 的数值漂移)。
    """
    entries: np.ndarray = field(repr=False)
    tolerances: object = field(default=DEFAULT_TOLERANCES, repr=False)

    def __post_init__(self):
        entries = np.array(self.entries, dtype=complex)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1] or entries.shape[0] < 1:
            raise NotDensityMatrix(f"density matrix must be square, got shape {entries.shape}")
        if np.max(np.abs(entries - entries.conj().T)) > numerics.HERMITIAN_TOL:
            raise NotDensityMatrix("matrix is not Hermitian")
        trace = np.trace(entries).real
        if abs(trace - 1.0) > self.tolerances.norm_tol:
            raise NotDensityMatrix(f"trace is {trace!r}, expected 1")
        if np.linalg.eigvalsh(entries)[0] < -self.tolerances.eig_clip:
            raise NotDensityMatrix("matrix has a negative eigenvalue")
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    @property
    def dim(self):
        return self.entries.shape[0]

    def eigenvalues(self):
        """升序特征值"""
        return np.linalg.eigvalsh(self.entries)


@dataclass(frozen=True)
class EntropyReport:
    """key 为 party 子集 (升序 tuple)；全体 party 对应整个纯态，熵应为 0"""
    entropies: Dict[tuple, float]
    base: object

    def single_party(self):
        return {k: v for k, v in self.entropies.items() if len(k) == 1}


class ArakiLiebResult(NamedTuple):
    s_a: float
    s_b: float
    s_ab: float
    lower_slack: float  # S_AB - |S_A - S_B|
    upper_slack: float  # S_A + S_B - S_AB


def _log_of_base(base):
    if base == 2:
        return math.log(2)
    if base == "e" or base == math.e:
        return 1.0
    raise InvalidParameters(f"log base must be 2 or e, got {base!r}")


def _checked_subset(state, parties, name="subset"):
    try:
        parties = frozenset(int(k) for k in parties)
    except (TypeError, ValueError):
        raise InvalidSubset(f"{name} must be a set of party indices, got {parties!r}")
    if not parties:
        raise InvalidSubset(f"{name} is empty")
    bad = sorted(k for k in parties if not 0 <= k < state.n_parties)
    if bad:
        raise InvalidSubset(f"{name} has invalid party indices {bad}")
    return parties


def partial_trace(state, keep, tolerances=DEFAULT_TOLERANCES):
    """
    ρ_keep = Tr_补集 |ψ><ψ|，按 M M† 计算，M 为 keep|补集 的矩阵。

    :param keep: 保留的 party 下标，非空真子集
    """
    keep = _checked_subset(state, keep, "keep")
    if len(keep) == state.n_parties:
        raise InvalidSubset("keep must be a proper subset of the parties")
    m = matricize(state.amps, state.dims, keep)
    return DensityMatrix(m @ m.conj().T, tolerances)


def pure_density(state, tolerances=DEFAULT_TOLERANCES):
    """|ψ><ψ|"""
    return DensityMatrix(np.outer(state.amps, state.amps.conj()), tolerances)


def _as_density(rho):
    if isinstance(rho, DensityMatrix):
        return rho
    try:
        return DensityMatrix(np.asarray(rho))
    except (TypeError, ValueError) as e:
        if isinstance(e, NotDensityMatrix):
            raise
        raise NotDensityMatrix(f"cannot interpret {type(rho).__name__} as a density matrix")


def purity(rho):
    """Tr ρ²"""
    entries = _as_density(rho).entries
    return float(np.sum(np.abs(entries) ** 2))


def linear_entropy(rho):
    return 1.0 - purity(rho)


def von_neumann_entropy(rho, base=numerics.DEFAULT_LOG_BASE):
    """
    S(ρ) = -Σ λ log λ，λ <= eig_clip 的特征值按 0 log 0 = 0 处理。

    :param base: 2 (bit) 或 'e' (nat)
    """
    rho = _as_density(rho)
    return _spectrum_entropy(rho.eigenvalues(), base, rho.tolerances.eig_clip)


def _spectrum_entropy(eigs, base, eig_clip):
    scale = _log_of_base(base)
    eigs = np.asarray(eigs, dtype=float)
    eigs = eigs[eigs > eig_clip]
    value = float(-np.sum(eigs * np.log(eigs)) / scale)
    return max(0.0, value)


def pure_state_entropy(state, base=numerics.DEFAULT_LOG_BASE, tolerances=DEFAULT_TOLERANCES):
    """
    整个纯态 |ψ><ψ| 的熵。秩为 1，唯一非零特征值是 <ψ|ψ>，不需要构造 d×d 矩阵。
    """
    norm_sq = float(np.vdot(state.amps, state.amps).real)
    return _spectrum_entropy([norm_sq], base, tolerances.eig_clip)


def entanglement_entropy(state, bipartition, base=numerics.DEFAULT_LOG_BASE):
    bip = Bipartition.of(state, bipartition)
    return von_neumann_entropy(partial_trace(state, bip.focus), base)


def _subset_entropy(state, parties, base):
    if len(parties) == state.n_parties:
        return 0.0
    return von_neumann_entropy(partial_trace(state, parties), base)


def entropy_report(state, base=numerics.DEFAULT_LOG_BASE):
    """每个单方约化态的熵，以及整个纯态的熵 (应为 0)"""
    entropies = {}
    for k in range(state.n_parties):
        entropies[(k,)] = von_neumann_entropy(partial_trace(state, {k}), base)
    entropies[tuple(range(state.n_parties))] = pure_state_entropy(state, base)
    return EntropyReport(entropies, base)


def araki_lieb_check(state, a, b, base=numerics.DEFAULT_LOG_BASE):
    """
    Araki-Lieb 下界 |S_A - S_B| <= S_AB 与次可加性 S_AB <= S_A + S_B。
    返回原始 slack，不做判断。A ∪ B 为全体时 S_AB = 0。
    """
    a = _checked_subset(state, a, "A")
    b = _checked_subset(state, b, "B")
    if a & b:
        raise OverlappingSubsets(f"subsets share parties {sorted(a & b)}")
    s_a = _subset_entropy(state, a, base)
    s_b = _subset_entropy(state, b, base)
    s_ab = _subset_entropy(state, a | b, base)
    return ArakiLiebResult(s_a, s_b, s_ab, s_ab - abs(s_a - s_b), s_a + s_b - s_ab)


def mutual_information(state, a, b, base=numerics.DEFAULT_LOG_BASE):
    """I(A:B) = S_A + S_B - S_AB"""
    return araki_lieb_check(state, a, b, base).upper_slack


def entropy_from_concurrence(c, base=numerics.DEFAULT_LOG_BASE):
    """
    两比特纯态的纠缠熵是 concurrence 的单调函数：
    S = h((1 + sqrt(1 - C²)) / 2)，h 为二元熵。
    """
    if not 0.0 <= c <= 1.0 + 1e-12:
        raise InvalidParameters(f"two-qubit concurrence must lie in [0, 1], got {c}")
    x = (1.0 + math.sqrt(max(0.0, 1.0 - c * c))) / 2.0
    scale = _log_of_base(base)
    value = 0.0
    for p in (x, 1.0 - x):
        if p > 0:
            value -= p * math.log(p)
    return value / scale
