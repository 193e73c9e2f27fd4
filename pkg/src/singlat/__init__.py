"""Lattice invariants of resolution graphs of normal surface singularities.

Exact-arithmetic computations on negative-definite decorated graphs: the
intersection form, dual cycles, canonical cycle, discriminant group,
computation sequences, and the resulting Chern-class level classification
of rank-one full sheaves with specialness and flatness annotations. Every
algorithmic path is mirrored by a brute-force oracle at desk scale.
"""

from .classify import (ClassificationReport, FullSheafFamily, SpecialnessRecord,
                       VertexRecord, flat_annotation, full_sheaf_classes_min_elliptic,
                       full_sheaf_classes_rational, special_full_sheaves, wunram_table)
from .cycles import RatCycle, cycle_min
from .dsl import GraphDocument, catalog, catalog_names, catalog_source, parse, serialize
from .errors import (InputError, InternalError, ParseError, PreconditionError,
                     SinglatError)
from .graph import (BlowUpMap, IntersectionMatrix, ResolutionGraph, Vertex, blow_up,
                    canonical_cycle, chi, dual_basis, dual_cycle, extend_graph,
                    intersection_matrix, is_negative_definite, lattice_determinant,
                    pairing, total_transform)
from .lattice import (ClassElement, ClassGroup, class_group, class_of, in_lipman_cone,
                      reduced_rep)
from .laufer import (ComputationSequence, LauferStep, SingularityType, antinef_closure,
                     classify_singularity, fundamental_cycle, h1_rational,
                     laufer_rational, minimal_antinef_rep, minimally_elliptic_cycle)
from .oracle import (Box, VerificationTranscript, antinef_points, brute_fundamental_cycle,
                     brute_lipman_min, brute_lipman_minima, brute_min_chi, verify_all)

__version__ = "0.1.0"
