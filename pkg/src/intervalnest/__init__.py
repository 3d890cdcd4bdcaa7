"""Minimum nesting of interval graphs.

Recognition and optimization over MPQ-trees, witness representations,
proper-layer partitions, a compact endpoint codec, a brute-force oracle,
and generators for two-length extension hardness instances.
"""

from .cliques import CliqueList, maximal_cliques
from .errors import (CapExceededError, IntervalNestError, MalformedCodeError,
                     NotChordalError, NotIntervalError,
                     OrderingNotConsecutiveError, ParseError, RangeError,
                     StaleAnnotationError)
from .graph import (Graph, TwinReduction, induced_subgraph, parse_graph,
                    prune_twins, random_interval_graph)
from .hardness import (HardnessInstance, ThreePartitionInstance, Unsolvable,
                       reduce_3partition, solve_small, verify_extension)
from .mpqtree import (ForcedNestingDag, MpqTree, build_mpq_tree, dump_tree,
                      enumerate_orderings, forced_nesting_dag, frontier,
                      section_bounds)
from .nesting import (DpAnnotation, Triple, build_minimal_representation,
                      leaf_triple, min_nesting, p_node_triple, q_node_triple,
                      recognize_k_nested)
from .oracle import (GadgetKind, attach_gadget, brute_nesting, brute_triple)
from .representation import (BitCode, IntervalRepresentation, LayerLabeling,
                             NestingStats, cleaned_representation, decode,
                             encode, flip, nesting_stats, proper_layers,
                             verify)

__all__ = [name for name in dir() if not name.startswith("_")]
