from __future__ import annotations

from typing import TYPE_CHECKING

from ..exceptions import SweepInvariantViolation
from ..models import dispersion_of
from ..oracle import brute_force_2colcc
from ..plugin_config_inject import register_plugin_config_field
from ..plugin_system import BreakPayload, ResultPayload, SweepHook, register_sweep_hook
from ..utils.log import logger

register_plugin_config_field(
    "simple_mdcc_verify_certificate",
    bool,
    default=False,
    description="校验最优性证书：结果划分的 dispersion 不低于报告值，小实例上用枚举确认中断阈值不可行",
)

if TYPE_CHECKING:
    from ..config import Config


def _get_plugin_config() -> "Config":
    from ..config import get_solver_config

    return get_solver_config()


class CertificateCheck(SweepHook):
    """Check both halves of the optimality certificate.

    Upper bound: the graph at the break threshold admits no cardinality-exact
    coloring (re-checked by exhaustive enumeration when the instance is small).
    Lower bound: the returned assignment reaches the reported dispersion.
    """

    # 必须先于 MonotoneBreakCheck 运行，后者会继续往图里加边
    priority = 200

    def on_break(self, payload: BreakPayload) -> None:
        config = _get_plugin_config()
        if not config.simple_mdcc_verify_certificate:
            return
        if payload.graph.vertex_count > config.simple_mdcc_oracle_max_vertices:
            return
        if brute_force_2colcc(payload.graph, payload.constraint) is not None:
            raise SweepInvariantViolation(
                f"[{payload.stage}] break threshold {payload.threshold_d2!r} (squared) "
                "still admits a cardinality-exact coloring"
            )

    def on_result(self, payload: ResultPayload) -> None:
        if not _get_plugin_config().simple_mdcc_verify_certificate:
            return
        result = payload.result
        if not result.assignment.respects(payload.constraint):
            raise SweepInvariantViolation(
                f"assignment does not respect c1={payload.constraint.c1}, c2={payload.constraint.c2}"
            )
        achieved = dispersion_of(payload.points, result.assignment)
        if achieved < result.dispersion:
            raise SweepInvariantViolation(
                f"assignment reaches dispersion {achieved!r} below reported {result.dispersion!r}"
            )
        logger.debug(f"simple-mdcc: 证书校验通过 (dispersion={result.dispersion!r})")


register_sweep_hook(CertificateCheck())
