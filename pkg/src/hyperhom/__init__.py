"""Exact embedded homology of hypergraphs."""

from .acyclicity import cone_augmentation, is_acyclic, reduce_to_discrete
from .chainalg import GF, QQ, ZZ, Matrix, Ring, smith_normal_form
from .core import (Hypergraph, HypergraphMorphism, SimplicialComplex, associated_complex,
                   complement_hypergraph, mv_condition, parse_hypergraph, simplex)
from .embedded import (HomologyGroup, betti_numbers, embedded_homology, induced_map, infimum_chain,
                       sup_homology, supremum_chain)
from .errors import HyperhomError, InternalError, UserError
from .indices import (connectivity_index, correlation_index, differentiation_index, fit, rk_reduce)
from .mayer_vietoris import connecting_homomorphism, general_sequences, verify_long_exact
from .persistence import (DistanceMatrix, PointCloud, barcode, metric_filtration, persistence_diagram,
                          persistent_betti, sublevel_filtration, verify_persistent_mv)

__version__ = "0.1.0"
