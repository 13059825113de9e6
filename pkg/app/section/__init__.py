"""
Poincare sections, chart coordinates and section-to-section maps.
"""

from section.charts import (
    CHART_SCALE,
    Chart,
    GenericChart,
    MirroredChart,
    Psi0Chart,
    RegularizedEnergy,
    build_generic_chart,
    chart_to_phase,
    phase_to_chart,
    swap,
)
from section.crossing import CrossingResult, crossing_fast, crossing_map
from section.eta import eta_matrix, eta_shear, exact_shear
from section.local_map import ChartPatch, LocalMapEnclosure, local_poincare
from section.sections import AffineSection, CoordinateSection, Section

__all__ = [
    "AffineSection",
    "CHART_SCALE",
    "Chart",
    "ChartPatch",
    "CoordinateSection",
    "CrossingResult",
    "GenericChart",
    "LocalMapEnclosure",
    "MirroredChart",
    "Psi0Chart",
    "RegularizedEnergy",
    "Section",
    "build_generic_chart",
    "chart_to_phase",
    "crossing_fast",
    "crossing_map",
    "eta_matrix",
    "eta_shear",
    "exact_shear",
    "local_poincare",
    "phase_to_chart",
    "swap",
]
