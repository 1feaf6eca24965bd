from isogeny2.ext.rm_q5 import (
    GundlachPoint,  # noqa: F401
    beta_pair,  # noqa: F401
    dtG_matrix,  # noqa: F401
    gundlach_jacobian,  # noqa: F401
    gundlach_to_igusa,  # noqa: F401
    gundlach_to_igusa_clebsch,  # noqa: F401
    hilb_curve_reconstruct,  # noqa: F401
    igusa_to_gundlach,  # noqa: F401
    is_hilbert_normalized,  # noqa: F401
    pullback_identities,  # noqa: F401
    quartic_closed_form,  # noqa: F401
    quartic_product,  # noqa: F401
    sqrt5,  # noqa: F401
)
