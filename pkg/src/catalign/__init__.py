"""catalign: sequence alignment through finite limits of segment diagrams.

The library models colored, bracketed intervals (segments) over a finite
pre-ordered color set, words over their truncations, dynamic-programming
pairwise alignment with exhaustive optimal traceback, and the gluing of
pairwise tables into multiple sequence alignments as an objectwise right
Kan extension.  Cone classification, pedigrad verification, slices and
mechanism templates sit on top.
"""

from .preorder import (
    MonotoneMap,
    Preorder,
    boolean_preorder,
    chain_preorder,
    compose_maps,
    discrete_preorder,
    identity_map,
    monotone_map,
    preorder_from_pairs,
    product,
    validate_monotone,
)
from .segments import (
    Segment,
    SegmentError,
    SegmentMorphism,
    compose,
    enumerate_morphisms,
    identity,
    induce_f0,
    is_homologous,
    is_quasi_homologous,
    morphism_from_f1,
    push_colors,
    push_colors_morphism,
    quasi_homologous_morphism,
    segment_from_patches,
    trivial_segment,
)
from .truncation import STAR, TruncationSet, truncate, truncate_morphism
from .finset import (
    CapExceeded,
    Edge,
    FinDiagram,
    FinFn,
    FinSetObj,
    SetCone,
    classify,
    colimit,
    limit,
    limit_adjoint,
)
from .environment import (
    AlignedTuple,
    AlignmentSpec,
    PointedAlphabet,
    Word,
    aligned_image,
    aligned_tuple,
    dna_alphabet,
    enumerate_words,
    project,
    word,
    word_image,
)
from .dp_align import (
    EPSILON,
    PairwiseAlignment,
    align_all_pairs,
    align_pair,
    build_table,
    traceback_all,
)
from .chromology import (
    Chromology,
    SegCone,
    canonical_arrow,
    chromology,
    environment_table,
    is_exactly_distributive,
    is_injective,
    verify_pedigrad,
    wide_span,
)
from .alignment_functor import (
    BaseCategory,
    BuildPolicy,
    FiniteImage,
    HubImage,
    RecolorStep,
    SeqAlignFunctor,
    StandardSetup,
    build_from_pairwise,
    extend_colors,
    standard_setup,
)
from .kan import (
    CommaCategory,
    comma,
    comma_cone,
    functor_diagram_limit,
    ran_eval,
    ran_on_morphism,
    unit_forward,
    unit_solve,
)
from .slices import (
    DUPLICATION,
    INVERSION,
    SliceElement,
    custom_template,
    detect_mechanisms,
    pareto_subsets,
    slice_eval,
    wide_pullback,
)

__version__ = "0.1.0"
