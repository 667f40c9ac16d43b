"""Perspective-three-point pose solver with a synthetic benchmark harness."""

from ._core import (
    CollinearPoints,
    DegenerateInput,
    Error,
    Solution,
    SolverConfig,
    generate_problem,
    pose_error,
    rotation_to_quaternion,
    run_ablation,
    run_benchmark,
    run_timing,
    solve,
    solve_json,
    solve_quartic,
)

__all__ = [
    "CollinearPoints",
    "DegenerateInput",
    "Error",
    "Solution",
    "SolverConfig",
    "generate_problem",
    "pose_error",
    "rotation_to_quaternion",
    "run_ablation",
    "run_benchmark",
    "run_timing",
    "solve",
    "solve_json",
    "solve_quartic",
]
