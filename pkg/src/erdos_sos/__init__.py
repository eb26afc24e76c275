"""Algorithmic toolkit around bounded-degree tree embedding: cut density,
regularity, fractional matchings, tree surgery, constructive embedders,
structure detectors and brute-force oracles."""

__version__ = "0.1.0"

from .graph import (EmbeddingReport, Graph, GraphError, ParseError, Tree, make_tree, parse_graph,
                    parse_tree, serialize_graph, tree_from_edges, validate_embedding)
from .profile import DESK_PROFILE, ParamProfile, extremal_constants
from .cutdensity import (CutDensityReport, DominatedDecomposition, cut_dense_decomposition,
                         dominated_decomposition, find_cut_dense_subgraph, kappa_exact,
                         sparse_cut_search)
from .regularity import (ReducedGraph, RegularityPartition, RegularityUnresolved, halve_partition,
                         is_regular_pair, reduced_graph, regularity_cover, regularity_refine)
from .matchings import (FractionalCover, FractionalMatching, StarForest, fractional_matching,
                        konig_cover, matching_from_fractional, stars_or_matching)
from .treetools import (PathsOrLeaves, TreeSplit, divide_tree, leaves_or_bare_paths, scattered_set,
                        split_tree_by_edge)
from .embedders import (EmbedTrace, EmbeddingStageError, ExtremalWitness, HypothesisError,
                        complete_bipartite_embedding, embed_bipartite_extremal,
                        embed_nonbipartite_extremal, find_good_subgraph, greedy_embed)
from .stability import StabilityStructure, detect_bipartite_core, detect_dense_core
from .oracles import (ContainmentResult, contains_tree_bruteforce, erdos_sos_sample,
                      fractional_matching_bruteforce)

__all__ = [name for name in dir() if not name.startswith("_")]
