# must import here every module/object X that will be available as isogeny2.X
# For each 'extension' e.g. named foobar, you must have:
# a ext/foobar.py file in isogeny2/ which contains the actual code
# a foobar.py file in isogeny2/ which just imports the minimal objects to be exposed

from isogeny2 import jacobian_oracle, rm_q5  # noqa: F401
from isogeny2.core.example_data import example_data  # noqa: F401
from isogeny2.core.options import option_manager as options  # noqa: F401
from isogeny2.core.random import random_curve, random_points  # noqa: F401
from isogeny2.core.version import __version__  # noqa: F401
from isogeny2.curves import CurveModel, CurvePoint, find_base_point, mestre_reconstruct  # noqa: F401
from isogeny2.field import ExtField, PrimeField, adjoin_sqrt  # noqa: F401
from isogeny2.modeq import evaluate_and_differentiate, from_string, load_modeq  # noqa: F401
from isogeny2.pipeline import RunConfig, RunOutput, run  # noqa: F401
from isogeny2.reconstruct import (  # noqa: F401
    DegreeBounds,
    RationalRepresentation,
    reconstruct,
    required_precision,
    verify_rational_rep,
)
from isogeny2.solver import compute_lift  # noqa: F401
from isogeny2.tangent import (  # noqa: F401
    TangentCandidate,
    endomorphism_tangent,
    tangent_candidates_hilbert,
    tangent_candidates_siegel,
    tangent_from_matrix,
)
