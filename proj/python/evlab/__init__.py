"""Python access to the evlab core."""

from ._evlab import (
    Configuration,
    ParseError,
    audit,
    drift,
    enumerate_configurations,
    f1,
    f2,
    g_rect,
    initial_chi,
    phi,
    render_svg,
    rho2,
    step_distribution,
    tau_samples,
)

__all__ = [
    "Configuration",
    "ParseError",
    "audit",
    "drift",
    "enumerate_configurations",
    "f1",
    "f2",
    "g_rect",
    "initial_chi",
    "phi",
    "render_svg",
    "rho2",
    "step_distribution",
    "tau_samples",
]
