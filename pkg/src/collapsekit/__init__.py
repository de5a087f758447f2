"""Combinatorial complexes, collapse certificates and LC certification."""

from .collapse import (
    Certificate,
    CollapseError,
    CollapsePair,
    SearchOutcome,
    Verdict,
    VerifyReport,
    collapse_to_dim,
    elementary_collapse,
    free_pairs,
    verify_certificate,
)
from .complex import (
    Complex,
    ComplexError,
    FaceRecord,
    FVector,
    f_vector,
    from_cubical_cells,
    from_simplicial_facets,
    point,
    product,
    remove_facet,
)
from .generators import (
    boundary_cube,
    boundary_simplex,
    cycle,
    dunce_hat,
    solid_cube,
    solid_simplex,
    tree_of_cubes,
)
from .homology import (
    BettiProfile,
    dual_graph,
    dual_graph_is_tree,
    euler_characteristic,
    gf2_betti,
    is_pseudomanifold,
)
from .labels import Cube, FaceId, Pair, Simplex, label_key, parse_label
from .product_transfer import (
    CertificationError,
    FactorWitness,
    LCResult,
    LCVerdict,
    certify_factor,
    iterated_punctured_product,
    lc_certify,
    product_witness,
    punctured_product_collapse,
    transfer_collapse,
)

__version__ = "0.1.0"
