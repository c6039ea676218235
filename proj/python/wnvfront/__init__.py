"""Python access to the wnv free-boundary solver."""

from ._core import (
    FrontGeometry,
    InitialData,
    LyapunovConfig,
    ModelSpec,
    ParseError,
    RunConfig,
    SolverConfig,
    Trajectory,
    ValidationError,
    classify,
    default_paper_spec,
    lyapunov_constant_oracle,
    lyapunov_exponent,
    lyapunov_exponent_constant,
    parse_config,
    render_config,
    simulate,
    spatial_convergence,
    x_to_y,
    y_to_x,
)

__all__ = [
    "FrontGeometry",
    "InitialData",
    "LyapunovConfig",
    "ModelSpec",
    "ParseError",
    "RunConfig",
    "SolverConfig",
    "Trajectory",
    "ValidationError",
    "classify",
    "default_paper_spec",
    "lyapunov_constant_oracle",
    "lyapunov_exponent",
    "lyapunov_exponent_constant",
    "parse_config",
    "render_config",
    "simulate",
    "spatial_convergence",
    "x_to_y",
    "y_to_x",
]
