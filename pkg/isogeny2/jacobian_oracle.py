from isogeny2.ext.jacobian_oracle import (
    conjugate_pair,  # noqa: F401
    MumfordDivisor,  # noqa: F401
    OddModel,  # noqa: F401
    cantor_add,  # noqa: F401
    negate,  # noqa: F401
    oracle_pair,  # noqa: F401
    oracle_rational_rep,  # noqa: F401
    scalar_mul,  # noqa: F401
)
