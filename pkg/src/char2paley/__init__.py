"""Paley-like graphs over GF(2^k): construction, certification, analysis.

For even k the trace condition tr((xy + x + a)/(x + y)) = 0 (with
tr(a) = 1) defines a q/2-regular, vertex-transitive, self-complementary
graph on the q+1 points of the projective line; for odd k it defines a
tournament.  This package builds those objects exactly, certifies their
structure (circulant labeling, automorphisms, shift isomorphisms,
Hamiltonian decompositions for prime order), and audits their
pseudo-randomness (Kloosterman codegree law, jumbledness) with integer
arithmetic throughout.
"""

__version__ = "0.1.0"

from .analyze import (
    CodegreePair, CodegreeSpectrum, JumblednessAudit, KloostermanValue,
    codegree_direct, codegree_formula, codegree_spectrum, jumbledness_audit,
    kloosterman, kloosterman_sweep, weil_bound_holds,
)
from .construct import (
    MATRIX_CAP, CirculantLabeling, OutOfScopeError, PaleyLikeGraph,
    PaleyLikeTournament, ParamA, adjacency, build_graph, build_tournament,
    circulant_labeling, param_a, verify_circulant,
)
from .gf2k import DEFAULT_POLYS, K_MAX, FieldCtx, factorize, field_new, is_irreducible
from .mobius import (
    INF, IDENTITY, MobiusMap, QuadExtCtx, all_points, alpha_of, apply, beta_of,
    compose, construct_a_for_order, det, find_generator_a, inverse,
    lambda_of, lambda_ratio_order, mobius_map, orbit, point_of_index,
    vertex_index,
)
from .structure import (
    ChapmanComparison, ChapmanGraph, HamiltonianDecomposition, ShiftIso,
    chapman_build, chapman_compare, hamiltonian_decompose,
    permutation_exchanges_complement, permutation_is_automorphism,
    shift_isomorphism, verify_arc_reversal, verify_automorphisms,
    verify_representative_independence, verify_self_complementary,
    verify_shift_isomorphism,
)

__all__ = [name for name in dir() if not name.startswith("_")]
