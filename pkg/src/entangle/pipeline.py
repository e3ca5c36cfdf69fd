import logging

from .core.builder import ReportBuilder
from .core.catalog import CATALOG_NAMES, NamedState, catalog
from .core.errors import NotThreeParty
from .core.state import Bipartition, single_party_splits
from .entropy import entanglement_entropy, pure_state_entropy
from .geometry import (
    concurrence_report, is_separable, polygon_check, schmidt_coefficients,
    three_qubit_identity_residual,
)
from .job_loader import JobOptions, resolve_states
from .parser import format_state, parse_ket_expr
from .teleport import decoupling_check, teleport

logger = logging.getLogger(__name__)


class AnalysisPipeline:
    def __init__(self, options=None):
        """
        初始化分析流程。

        :param options: JobOptions (split 选择、对数底、容差等)
        """
        self.options = options or JobOptions()
        self.tolerances = self.options.tolerances

    # --- 各分析的单态结果 ---

    def _splits_for(self, state):
        if not self.options.splits:
            return single_party_splits(state.n_parties)
        return [Bipartition.parse(s, state.n_parties) for s in self.options.splits]

    def evaluate_state(self, state, label=None):
        """一个态在每个请求的二分割下的 concurrence (楔积 + 纯度校验)、Schmidt 系数和熵"""
        splits = []
        for bip in self._splits_for(state):
            report = concurrence_report(state, bip, self.tolerances)
            separable, rank = is_separable(state, bip, self.tolerances)
            splits.append({
                "split": bip.label(),
                "c_wedge": report.c_wedge,
                "c_purity": report.c_oracle,
                "discrepancy": report.discrepancy,
                "accepted": report.accepted,
                "separable": separable,
                "schmidt_rank": rank,
                "schmidt": schmidt_coefficients(state, bip),
                "entropy": entanglement_entropy(state, bip, self.options.base),
            })
        entry = {"label": label} if label is not None else {}
        entry.update({
            "dims": list(state.dims),
            "state": format_state(state),
            "splits": splits,
            "full_entropy": pure_state_entropy(state, self.options.base, self.tolerances),
        })
        return entry

    def polygon_state(self, state, label=None):
        if state.n_parties != 3:
            raise NotThreeParty(f"polygon needs a 3-party state, got {state.n_parties} parties")
        report = polygon_check(state)
        entry = {"label": label} if label is not None else {}
        entry.update({
            "dims": list(state.dims),
            "state": format_state(state),
            "c": report.c,
            "linear_slacks": report.linear_slacks,
            "squared_slacks": report.squared_slacks,
            "min_linear_slack": report.min_linear_slack,
            "min_squared_slack": report.min_squared_slack,
        })
        if state.dims == (2, 2, 2):
            identity = three_qubit_identity_residual(state)
            entry["identity"] = {"lhs": identity.lhs, "rhs": identity.rhs,
                                 "residual": identity.residual}
        return entry

    # --- 整个命令的文档 ---

    def run_eval(self, source):
        builder = ReportBuilder("eval", source.echo(), self.options.echo())
        for label, state in resolve_states(source, self.options):
            builder.add_result(**self.evaluate_state(state, label))
        return builder.get_document()

    def run_polygon(self, source):
        builder = ReportBuilder("polygon", source.echo(), self.options.echo())
        for label, state in resolve_states(source, self.options):
            builder.add_result(**self.polygon_state(state, label))
        return builder.get_document()

    def run_teleport(self, source):
        """source 给出输入比特；资源态取 options.resource (缺省 φ+)"""
        builder = ReportBuilder("teleport", source.echo(), self.options.echo())
        resource = None
        if self.options.resource is not None:
            resource = parse_ket_expr(self.options.resource, normalize=self.options.normalize,
                                      tolerances=self.tolerances)
        resource_text = format_state(resource) if resource is not None else "phi+"
        for label, input_state in resolve_states(source, self.options):
            result = teleport(input_state, resource, self.tolerances)
            transcripts = []
            for t in result.transcripts:
                transcripts.append({
                    "outcome": t.outcome,
                    "bell": t.label,
                    "probability": t.probability,
                    "correction": t.correction,
                    "bob_state": format_state(t.bob_state) if t.bob_state is not None else None,
                    "corrected_state":
                        format_state(t.corrected_state) if t.corrected_state is not None else None,
                    "fidelity": t.fidelity,
                })
            builder.add_result(
                label=label,
                input=format_state(input_state),
                resource=resource_text,
                transcripts=transcripts,
                total_probability=result.total_probability,
                average_fidelity=result.average_fidelity,
                decoupled=decoupling_check(input_state, resource, self.tolerances),
            )
        return builder.get_document()

    def run_catalog_list(self):
        builder = ReportBuilder("catalog", {"list": True})
        for name in CATALOG_NAMES:
            state = catalog(name)
            builder.add_result(name=name, dims=list(state.dims))
        return builder.get_document()

    def run_catalog_show(self, name):
        named = NamedState.parse(name)
        state = catalog(named)
        builder = ReportBuilder("catalog", {"show": str(named)}, self.options.echo())
        entry = self.evaluate_state(state)
        builder.add_result(name=str(named), **entry)
        return builder.get_document()

