"""Exact-integer model of the Hofstadter-butterfly skeleton.

The spectrum's self-similar hierarchy is organized as an octonary tree of
"butterflies with tails": each butterfly is a Farey triplet of flux
values plus a pair of central Chern numbers, eight unimodular generators
move between them, and the whole structure ties into Pythagorean triples,
Apollonian circle packings, quadratic-surd scaling exponents, and a
drawable Wannier-diagram skeleton.  Everything is arbitrary-precision
integer arithmetic; floats appear only as display views.
"""

from .errors import (
    ButterflyError,
    DegenerateDifference,
    EmptyInput,
    InconsistentChernPair,
    InvariantViolation,
    NoTail,
    NotCCell,
    NotCoprime,
    ParabolicWord,
    TailDirectionMismatch,
)
from .farey import (
    FareyDifference,
    FriendlyTriplet,
    farey_difference,
    is_friendly,
    mediant,
    stern_brocot_friendly_triplets,
)
from .diophantine import (
    BandLabel,
    GapLabel,
    band_cherns,
    center_gap_index,
    gap_labels,
    hierarchy_gap_cherns,
    recover_edges,
)
from .generators import (
    BABY_KINDS,
    ButterflyLabel,
    ButterflyState,
    GeneratorKind,
    GeneratorMatrix,
    apply_label,
    apply_state,
    canonical_matrices,
    representation_consistency,
)
from .tree import (
    ExpansionLimits,
    TreeNode,
    chain,
    children,
    expand,
    node_at,
    parse_word,
    root,
    verify_node,
    word_string,
)
from .pythagoras import (
    EuclidPair,
    PythTriple,
    apply_H,
    apply_h,
    cbranch_to_triple,
    euclid_to_triple,
    primitive_triple_oracle,
    triple_tree,
)
from .apollonian import (
    DescartesQuadruple,
    adjoint_S,
    apply_S,
    correspondence_search,
    ford_quadruple,
    super_orbit,
    triple_to_quadruple,
)
from .scaling import (
    ContinuedFraction,
    QuadraticSurd,
    cf_expansion,
    scaling_exponent,
    word_block,
)
from .skeleton import (
    RenderOptions,
    SkeletonCell,
    WannierLine,
    cell_geometry,
    render_svg,
    tail_triangle,
    wannier_lines,
)

__version__ = "0.1.0"
