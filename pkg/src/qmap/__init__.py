"""Structural measures of cognitive maps and decision frames."""

from .metrics import MapMetrics, closeness, counts, density, map_metrics
from .model import (CausalLink, CognitiveMap, Concept, DecisionFrame, QmapWarning, Role,
                    Sign, Simplex, SimplicialFamily, to_simplicial_family, validate_map)
from .qengine import (QClasses, StructureVector, complexity, q_components,
                      q_components_oracle, shared_face_dim, structure_vector)
from .series import Baseline, MetricSeries, build_series, detect_disruption
from .synth import (ShockSpec, gen_motif_map, gen_preset, gen_random_frame,
                    gen_random_map, inject_shock)

__version__ = "0.1.0"
