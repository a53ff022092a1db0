"""Gabor frames over finite abelian groups, plus an exact construction on R^2."""

from .group_core import COUNTING, GroupSpec, MeasureConvention, Window
from .subgroup_lattice import PhaseSubgroup, adjoint, all_subgroups, annihilator, volume

__all__ = [
    "COUNTING",
    "GroupSpec",
    "MeasureConvention",
    "PhaseSubgroup",
    "Window",
    "adjoint",
    "all_subgroups",
    "annihilator",
    "volume",
]
