"""Run configurations shared by the CLI, the scripts and the acceptance suite."""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import F32003, Field


@dataclass(frozen=True)
class RunConfig:
    field: Field = F32003
    seed: int = 0
    width: int = 2
    format: str = "text"
    max_dim: int = 3
    amplitude: int = 3


@dataclass(frozen=True)
class AcceptanceConfig:
    """Case counts and limits of the acceptance criteria."""

    field: Field = F32003
    max_dim: int = 3
    amplitude: int = 3
    time_limit: float = 60.0
    rational_fraction: float = 0.1
    cone_maps: int = 200
    squares: int = 200
    pasting: int = 100
    bp_morphisms: int = 50
    bp_width: int = 3
    rotation: int = 50
    octahedra: int = 50
    cof_cubed: int = 100
    coxeter_inputs: int = 50
    orientation_reps: int = 50
    serre_reps: int = 100
    weight_cases: int = 50
    unit_posets: int = 20
    unit_poset_size: int = 5
    tilting_roundtrips: int = 25
    tilting_direct: int = 25
    cubes: int = 50
