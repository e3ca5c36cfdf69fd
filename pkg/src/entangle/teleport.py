"""
隐形传态模拟。

Alice 持有未知比特 (party 0) 和资源态的第一个比特 (party 1)，Bob 持有资源态的
第二个比特 (party 2)。Alice 在 Bell 基下测量 (0, 1)，把结果 k 告诉 Bob，Bob 作用
固定的修正算符：

    k = 0  φ+  ->  I
    k = 1  φ-  ->  Z
    k = 2  ψ+  ->  X
    k = 3  ψ-  ->  iY = [[0, 1], [-1, 0]]

这张表只对 φ+ 资源给出保真度 1；其他资源沿用同一张表，以暴露保真度的下降。
"""
import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .core.catalog import NamedState, StateKind, catalog
from .core.errors import BadOutcomeIndex, DimensionMismatch, NotThreeQubit
from .core.state import DEFAULT_TOLERANCES, PureState, apply_local, tensor
from .geometry import is_separable

logger = logging.getLogger(__name__)

BELL_LABELS = ("phi+", "phi-", "psi+", "psi-")

_CORRECTIONS = (
    ("I", np.array([[1, 0], [0, 1]], dtype=complex)),
    ("Z", np.array([[1, 0], [0, -1]], dtype=complex)),
    ("X", np.array([[0, 1], [1, 0]], dtype=complex)),
    ("iY", np.array([[0, 1], [-1, 0]], dtype=complex)),
)


@dataclass(frozen=True)
class BellOutcome:
    """一次 Bell 测量结果；probability 为 0 时 bob_state 为 None (未定义)"""
    outcome: int
    probability: float
    bob_state: Optional[PureState]


@dataclass(frozen=True)
class TeleportationTranscript:
    outcome: int
    probability: float
    correction: str
    bob_state: Optional[PureState]  # 修正前
    corrected_state: Optional[PureState]  # 修正后
    fidelity: Optional[float]

    @property
    def label(self):
        return BELL_LABELS[self.outcome]


@dataclass(frozen=True)
class TeleportationResult:
    transcripts: Tuple[TeleportationTranscript, ...]

    @property
    def total_probability(self):
        return float(sum(t.probability for t in self.transcripts))

    @property
    def average_fidelity(self):
        """Σ p_k F_k，跳过概率为 0 的结果"""
        return float(sum(t.probability * t.fidelity for t in self.transcripts if t.fidelity is not None))


def bell_basis():
    """(φ+, φ-, ψ+, ψ-)，正交归一"""
    kinds = (StateKind.PHI_PLUS, StateKind.PHI_MINUS, StateKind.PSI_PLUS, StateKind.PSI_MINUS)
    return tuple(catalog(NamedState(kind)) for kind in kinds)


def correction_for_outcome(k):
    """结果 k 对应的修正幺正矩阵"""
    return _CORRECTIONS[_check_outcome(k)][1].copy()


def correction_name(k):
    return _CORRECTIONS[_check_outcome(k)][0]


def _check_outcome(k):
    if isinstance(k, bool) or not isinstance(k, (int, np.integer)) or not 0 <= k <= 3:
        raise BadOutcomeIndex(f"Bell outcome index must be 0..3, got {k!r}")
    return int(k)


def _check_three_qubit(state):
    if state.dims != (2, 2, 2):
        raise NotThreeQubit(f"Bell measurement needs dims [2, 2, 2], got {list(state.dims)}")


def _pair_matrix(state, measured_parties):
    """4 × 2 矩阵：行为被测两比特 (按 measured_parties 顺序)，列为剩下的比特"""
    measured = tuple(int(k) for k in measured_parties)
    if len(measured) != 2 or len(set(measured)) != 2 or not all(0 <= k < 3 for k in measured):
        raise DimensionMismatch(f"measured_parties must be two distinct parties of 3, got {measured}")
    rest = [k for k in range(3) if k not in measured]
    t = np.transpose(state.tensor(), axes=list(measured) + rest)
    return t.reshape(4, 2)


def bell_measurement(state, measured_parties=(0, 1), tolerances=DEFAULT_TOLERANCES):
    """
    在 measured_parties 上做 Bell 测量。

    p_k = ||(<b_k| ⊗ I)|ψ>||²；p_k > eig_clip 时给出归一化的剩余单比特态。
    """
    _check_three_qubit(state)
    matrix = _pair_matrix(state, measured_parties)
    outcomes = []
    for k, bell in enumerate(bell_basis()):
        collapsed = bell.amps.conj() @ matrix
        p = float(np.vdot(collapsed, collapsed).real)
        if p > tolerances.eig_clip:
            bob = PureState((2,), collapsed / np.sqrt(p))
        else:
            bob = None
        outcomes.append(BellOutcome(k, p, bob))
    return tuple(outcomes)


def _check_inputs(input_state, resource):
    if input_state.dims != (2,):
        raise DimensionMismatch(f"input must be one qubit, got dims {list(input_state.dims)}")
    if resource.dims != (2, 2):
        raise DimensionMismatch(f"resource must be two qubits, got dims {list(resource.dims)}")


def teleport(input_state, resource=None, tolerances=DEFAULT_TOLERANCES):
    """
    完整的一次协议：|input> ⊗ |resource>，测量 (0, 1)，修正 Bob 的比特，
    保真度 F = |<input|bob_corrected>|²。

    :param resource: 两比特资源态，缺省为 φ+
    """
    if resource is None:
        resource = catalog(NamedState(StateKind.PHI_PLUS))
    _check_inputs(input_state, resource)
    joint = tensor(input_state, resource)
    transcripts = []
    for outcome in bell_measurement(joint, (0, 1), tolerances):
        name = correction_name(outcome.outcome)
        if outcome.bob_state is None:
            transcripts.append(TeleportationTranscript(
                outcome.outcome, outcome.probability, name, None, None, None))
            continue
        corrected = apply_local(outcome.bob_state, 0, correction_for_outcome(outcome.outcome))
        fidelity = abs(input_state.inner(corrected)) ** 2
        transcripts.append(TeleportationTranscript(
            outcome.outcome, outcome.probability, name, outcome.bob_state, corrected,
            float(min(1.0, fidelity))))
    result = TeleportationResult(tuple(transcripts))
    logger.info("teleport: average fidelity %.7g", result.average_fidelity)
    return result


@dataclass(frozen=True)
class DecouplingDetail:
    outcome: int
    probability: float
    separable: Optional[bool]
    overlap: Optional[float]  # |<b_k ⊗ bob_k | post>|²

    def holds(self, tol):
        if self.separable is None:
            return True
        return bool(self.separable and abs(1.0 - self.overlap) <= tol)


def decoupling_report(input_state, resource=None, tolerances=DEFAULT_TOLERANCES):
    """
    对每个概率非零的结果，用完整的 8×8 投影算符得到测量后的三比特态，
    检查它在 {0,1}|{2} 上可分，并且等于 (Bell 态) ⊗ (Bob 的态)。
    """
    if resource is None:
        resource = catalog(NamedState(StateKind.PHI_PLUS))
    _check_inputs(input_state, resource)
    joint = tensor(input_state, resource)
    details = []
    for bell, outcome in zip(bell_basis(), bell_measurement(joint, (0, 1), tolerances)):
        if outcome.bob_state is None:
            details.append(DecouplingDetail(outcome.outcome, outcome.probability, None, None))
            continue
        projector = np.kron(np.outer(bell.amps, bell.amps.conj()), np.eye(2))
        post = PureState((2, 2, 2), projector @ joint.amps / np.sqrt(outcome.probability))
        separable, _ = is_separable(post, {0, 1}, tolerances)
        expected = tensor(bell, outcome.bob_state)
        overlap = abs(expected.inner(post)) ** 2
        details.append(DecouplingDetail(outcome.outcome, outcome.probability, separable, float(overlap)))
    return tuple(details)


def decoupling_check(input_state, resource=None, tolerances=DEFAULT_TOLERANCES):
    details = decoupling_report(input_state, resource, tolerances)
    return all(d.holds(tolerances.equality_tol) for d in details)
