import logging
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.stats import unitary_group

from configs import numerics
from .errors import (
    InvalidBipartition, InvalidDimensions, InvalidParameters, LengthMismatch,
    NonFiniteAmplitude, NotNormalized, ZeroVector, DimensionMismatch,
)
from .utils import total_dim, proper_subsets

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Tolerances:
    """数值容差，默认值见 configs/numerics.py"""
    norm_tol: float = numerics.NORM_TOL
    rank_tol: float = numerics.RANK_TOL
    equality_tol: float = numerics.EQUALITY_TOL
    eig_clip: float = numerics.EIG_CLIP

    def __post_init__(self):
        for name in ("norm_tol", "rank_tol", "equality_tol", "eig_clip"):
            value = getattr(self, name)
            if not value > 0:
                raise InvalidParameters(f"tolerance {name} must be strictly positive, got {value}")

    def with_equality_tol(self, tol):
        return Tolerances(self.norm_tol, self.rank_tol, tol, self.eig_clip)


DEFAULT_TOLERANCES = Tolerances()


def check_dims(dims):
    """
    校验各方维数：至少一方，每方 >= 2，总维数不超过 numerics.MAX_TOTAL_DIM。

    :param dims: 各方维数
    :return: 整数 tuple
    """
    try:
        dims = tuple(int(d) for d in dims)
    except (TypeError, ValueError):
        raise InvalidDimensions(f"dims must be integers, got {dims!r}")
    if not dims:
        raise InvalidDimensions("dims must name at least one party")
    bad = [d for d in dims if d < 2]
    if bad:
        raise InvalidDimensions(f"every local dimension must be >= 2, got {list(dims)}")
    if math.prod(dims) > numerics.MAX_TOTAL_DIM:
        raise InvalidDimensions(
            f"total dimension {math.prod(dims)} of dims {list(dims)} exceeds {numerics.MAX_TOTAL_DIM}")
    return dims


def _check_finite(amps):
    if not np.all(np.isfinite(amps)):
        raise NonFiniteAmplitude("amplitudes must be finite (no nan or inf)")


@dataclass(frozen=True, eq=False)
class PureState:
    """
    多方纯态。

    dims: 各方维数 (每个 >= 2)
    amps: 长度为 ∏ dims 的复振幅，party 0 为最高位
    构造后不可变 (amps 设为只读)。
    """
    dims: tuple
    amps: np.ndarray = field(repr=False)
    norm_tol: float = field(default=numerics.NORM_TOL, repr=False)

    def __post_init__(self):
        dims = check_dims(self.dims)
        amps = np.array(self.amps, dtype=complex).ravel()
        if amps.size != total_dim(dims):
            raise LengthMismatch(
                f"{amps.size} amplitudes given, dims {list(dims)} need {total_dim(dims)}")
        _check_finite(amps)
        norm_sq = float(np.vdot(amps, amps).real)
        if abs(norm_sq - 1.0) > self.norm_tol:
            raise NotNormalized(f"squared norm is {norm_sq!r}, expected 1 within {self.norm_tol}")
        amps.setflags(write=False)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "amps", amps)

    @property
    def n_parties(self):
        return len(self.dims)

    @property
    def dim(self):
        return self.amps.size

    def tensor(self):
        """按 dims reshape 后的振幅张量"""
        return self.amps.reshape(self.dims)

    def inner(self, other):
        """<self|other>"""
        if self.dims != other.dims:
            raise DimensionMismatch(f"dims {list(self.dims)} and {list(other.dims)} differ")
        return complex(np.vdot(self.amps, other.amps))

    def __repr__(self):
        return f"PureState(dims={list(self.dims)}, amps={np.array2string(self.amps, precision=4)})"


def make_state(dims, amps, normalize=False, tolerances=DEFAULT_TOLERANCES):
    """
    构造 PureState。

    :param dims: 各方维数
    :param amps: 复振幅序列
    :param normalize: True 时先归一化；否则要求范数在 norm_tol 内等于 1
    """
    dims = check_dims(dims)
    amps = np.asarray(amps, dtype=complex).ravel()
    if amps.size != total_dim(dims):
        raise LengthMismatch(
            f"{amps.size} amplitudes given, dims {list(dims)} need {total_dim(dims)}")
    _check_finite(amps)
    # 先按最大模缩放再求范数，避免大振幅平方溢出
    peak = float(np.max(np.abs(amps)))
    scaled = amps / peak if peak > 0 else amps
    norm = peak * float(np.linalg.norm(scaled))
    if norm <= tolerances.norm_tol:
        raise ZeroVector("all amplitudes are (numerically) zero")
    if normalize:
        amps = scaled / np.linalg.norm(scaled)
    return PureState(dims, amps, norm_tol=tolerances.norm_tol)


def random_pure(dims, seed):
    """
    Haar 随机纯态：i.i.d. 标准复高斯振幅再归一化。
    同一个 seed 总是得到同一个态。
    """
    dims = check_dims(dims)
    rng = np.random.default_rng(seed)
    n = total_dim(dims)
    amps = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return PureState(dims, amps / np.linalg.norm(amps))


def random_real_pure(dims, seed):
    """实振幅的随机纯态 (实高斯再归一化)"""
    dims = check_dims(dims)
    rng = np.random.default_rng(seed)
    amps = rng.standard_normal(total_dim(dims))
    return PureState(dims, (amps / np.linalg.norm(amps)).astype(complex))


def random_local_unitary(dim, seed):
    """dim 维 Haar 随机幺正矩阵"""
    return unitary_group.rvs(dim, random_state=np.random.default_rng(seed))


def apply_local(state, party, unitary):
    """在单个 party 上作用局域算符，其余各方不变。结果重新校验归一化。"""
    if not 0 <= party < state.n_parties:
        raise InvalidParameters(f"party {party} out of range for {state.n_parties} parties")
    unitary = np.asarray(unitary, dtype=complex)
    d = state.dims[party]
    if unitary.shape != (d, d):
        raise DimensionMismatch(f"operator shape {unitary.shape} does not act on dimension {d}")
    tensor = np.tensordot(unitary, state.tensor(), axes=([1], [party]))
    tensor = np.moveaxis(tensor, 0, party)
    return PureState(state.dims, tensor.ravel(), norm_tol=state.norm_tol)


def tensor(state_a, state_b):
    """|a> ⊗ |b>，party 顺序为 a 的各方在前"""
    return PureState(state_a.dims + state_b.dims, np.kron(state_a.amps, state_b.amps))


@dataclass(frozen=True)
class Bipartition:
    """
    二分割 A|B。focus 为 A 一侧的 party 下标，B 为补集。
    """
    focus: frozenset
    n_parties: int

    def __post_init__(self):
        try:
            focus = frozenset(int(k) for k in self.focus)
        except (TypeError, ValueError):
            raise InvalidBipartition(f"focus must be a set of party indices, got {self.focus!r}")
        object.__setattr__(self, "focus", focus)
        if not focus:
            raise InvalidBipartition("focus side is empty")
        bad = sorted(k for k in focus if not 0 <= k < self.n_parties)
        if bad:
            raise InvalidBipartition(f"party indices {bad} invalid for {self.n_parties} parties")
        if len(focus) == self.n_parties:
            raise InvalidBipartition("focus side contains every party")

    @property
    def complement(self):
        return frozenset(range(self.n_parties)) - self.focus

    def dims_of(self, dims):
        """(d_A, d_B)"""
        d_a = total_dim([dims[k] for k in sorted(self.focus)])
        d_b = total_dim([dims[k] for k in sorted(self.complement)])
        return d_a, d_b

    def label(self):
        """'0|12' 形式的标签"""
        focus = "".join(str(k) for k in sorted(self.focus))
        rest = "".join(str(k) for k in sorted(self.complement))
        return f"{focus}|{rest}"

    @classmethod
    def of(cls, state, focus):
        """为 state 构造二分割，并检查 party 数"""
        if isinstance(focus, Bipartition):
            if focus.n_parties != state.n_parties:
                raise InvalidBipartition(
                    f"bipartition {focus.label()} is for {focus.n_parties} parties, "
                    f"state has {state.n_parties}")
            return focus
        if isinstance(focus, int):
            focus = (focus,)
        return cls(frozenset(focus), state.n_parties)

    @classmethod
    def parse(cls, selector, n_parties):
        """
        解析 '0|12' 形式的选择器 (bar 左边是 focus)。
        右边可以省略；若给出则必须恰好是补集。
        """
        text = selector.strip()
        left, bar, right = text.partition("|")
        if not left or not left.isdigit():
            raise InvalidBipartition(f"bad split selector {selector!r}: expected digits before '|'")
        bip = cls(frozenset(int(c) for c in left), n_parties)
        if len(set(left)) != len(left):
            raise InvalidBipartition(f"bad split selector {selector!r}: repeated party")
        right = right.strip()
        if bar and right:
            if not right.isdigit() or frozenset(int(c) for c in right) != bip.complement \
                    or len(set(right)) != len(right):
                raise InvalidBipartition(
                    f"bad split selector {selector!r}: right side must be the complement "
                    f"{''.join(str(k) for k in sorted(bip.complement))}")
        return bip


def single_party_splits(n_parties):
    return [Bipartition(frozenset({k}), n_parties) for k in range(n_parties)]


def all_bipartitions(n_parties):
    """每一个非空真子集作为 focus (两种朝向都包含)"""
    return [Bipartition(focus, n_parties) for focus in proper_subsets(n_parties)]
