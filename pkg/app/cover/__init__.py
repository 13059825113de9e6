"""
h-sets, covering relations and the certificates built from them.
"""

from cover.certificates import (  # noqa: F401
    Certificate,
    CertificateKind,
    CoveringCertificate,
    Direction,
    dump_certificates,
    load_certificates,
    relation_id,
)
from cover.cone import (  # noqa: F401
    ConeBounds,
    check_cone_bounds,
    cone_certificate,
    conjugated_derivative,
    conjugated_map,
    enclose_anchors,
)
from cover.covering import check_backcovering, check_covering, grid_cells  # noqa: F401
from cover.discs import collision_disc  # noqa: F401
from cover.families import ApproachLevel, approach_family, excludes_collision_line  # noqa: F401
from cover.hsets import UNIT_SQUARE, HSet, HSetOnSection, mirror_label  # noqa: F401
from cover.symmetry import (  # noqa: F401
    check_self_symmetric,
    check_symmetry_hypotheses,
    derive_symmetric,
    substitute_self_symmetric,
)
