"""Betti numbers of graph toppling ideals via chip-firing and homology.

The package computes fine and coarse Betti numbers of the homogeneous
toppling ideal of a connected multigraph from the support complexes of
divisor linear systems, builds boundary divisors for connected partitions
through acyclic orientations, and provides the extension-cycle witness
construction on multi-edged trees.
"""

from .divisors import (apply_script, class_key, dhar_unburnt,
                       enumerate_maximal_superstables, enumerate_superstables,
                       equivalence_script, is_alive, is_minimally_alive,
                       linear_system, parse_divisor, divisor_to_string,
                       q_reduce)
from .homology import (betti_kD, coarse_betti, complex_of_divisor,
                       cut_from_splitting, reduced_homology_dims, splittings)
from .multigraph import (Multigraph, crossing_degree, laplacian, load_graph,
                         neighbor_set, serialize_graph, spanning_tree_count)
from .orientations import (boundary_divisor, boundary_divisor_classes,
                           enumerate_AUS, enumerate_acyclic_orientations,
                           f_map, orientations_equivalent, switch)
from .partitions import (enumerate_connected_partitions, generating_sequences,
                         make_partition, parse_partition, partition_to_string,
                         quotient)
from .cycles import (ExtensionSpec, SignedChain, boundary_of_chain,
                     extension_cycle, tree_witness_cycle,
                     witness_certifies_nonzero_homology)

__version__ = "0.1.0"

__all__ = [
    "Multigraph", "load_graph", "serialize_graph", "laplacian",
    "crossing_degree", "neighbor_set", "spanning_tree_count",
    "apply_script", "dhar_unburnt", "q_reduce", "class_key",
    "equivalence_script", "linear_system", "enumerate_superstables",
    "enumerate_maximal_superstables", "is_alive", "is_minimally_alive",
    "parse_divisor", "divisor_to_string",
    "make_partition", "parse_partition", "partition_to_string",
    "enumerate_connected_partitions", "quotient", "generating_sequences",
    "enumerate_acyclic_orientations", "enumerate_AUS", "f_map",
    "boundary_divisor", "boundary_divisor_classes", "switch",
    "orientations_equivalent",
    "complex_of_divisor", "reduced_homology_dims", "betti_kD",
    "coarse_betti", "splittings", "cut_from_splitting",
    "ExtensionSpec", "SignedChain", "extension_cycle", "boundary_of_chain",
    "tree_witness_cycle", "witness_certifies_nonzero_homology",
]
