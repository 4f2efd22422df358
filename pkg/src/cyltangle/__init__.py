"""Classification of mutually pairwise touching infinite cylinders via
chirality (Seidel) and ring matrices."""

from .seidel import CharPoly, ChiralityMatrix, validate
from .invariants import (
    QMatrix,
    RingMatrix,
    RingVector,
    complement_identity_check,
    decimal10,
    q_matrix,
    ring_vector,
    validate_ring,
    wp,
    wp_ring,
)
from .geometry import (
    AngleConvention,
    DEFAULT_CONVENTION,
    LineConfiguration,
    LineSpec,
    OrientedLine,
    calibrate_convention,
    chirality_from_geometry,
    encages,
    pair_distance,
    realize,
    ring_matrix_from_geometry,
    shortest_unit_vectors,
    verify_tangency,
)
from .forbidden import (
    SubmatrixWitness,
    contains_k5,
    contains_p250,
    ee_switch_property,
    k5_switch_forms,
    p250_representative,
    radii_determinant,
)
from .enumeration import (
    ClassCatalog,
    determinant_spectrum,
    enumerate_base,
    extend,
    run_theorem1,
    run_theorem2,
)
from .catalog import (
    CatalogEntry,
    equal_radii_screen,
    ingest,
    invariant_pairs_check,
    load_invariant_table,
    verify_catalog,
    verify_entry,
)

__version__ = "0.1.0"
