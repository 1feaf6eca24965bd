from typing import Final, Literal, get_args

# Define the Literal type
VALID_PATH_TYPE = Literal["siegel", "hilbert-q5", "endo"]

# Extract the options from the Literal type
VALID_PATH_OPTIONS = list(get_args(VALID_PATH_TYPE))
PATH_SIEGEL, PATH_HILBERT_Q5, PATH_ENDO = VALID_PATH_OPTIONS

VALID_MODEQ_KIND_TYPE = Literal["siegel", "hilbert_q5"]
VALID_MODEQ_KIND_OPTIONS = list(get_args(VALID_MODEQ_KIND_TYPE))
MODEQ_SIEGEL, MODEQ_HILBERT_Q5 = VALID_MODEQ_KIND_OPTIONS

VALID_UNIFORMIZER_TYPE = Literal["generic", "weierstrass"]
VALID_UNIFORMIZER_OPTIONS = list(get_args(VALID_UNIFORMIZER_TYPE))
UNIFORMIZER_GENERIC, UNIFORMIZER_WEIERSTRASS = VALID_UNIFORMIZER_OPTIONS

VALID_CANDIDATE_STATUS_TYPE = Literal["accepted", "rejected"]
VALID_CANDIDATE_STATUS_OPTIONS = list(get_args(VALID_CANDIDATE_STATUS_TYPE))
STATUS_ACCEPTED, STATUS_REJECTED = VALID_CANDIDATE_STATUS_OPTIONS

# total degree over the prime field allowed for the working field
MAX_EXTENSION_DEGREE: Final = 8

# minimal characteristic for the covariant formulas
MIN_CHARACTERISTIC: Final = 7

SEXTIC_DEGREE: Final = 6
GENUS: Final = 2

# number of variables of a modular-equation set, by kind
MODEQ_ARITY: Final = {MODEQ_SIEGEL: 3, MODEQ_HILBERT_Q5: 2}

# stable keys of the JSON run output
FIELD_KEY: Final = "field"
CURVES_KEY: Final = "curves"
BASE_POINT_KEY: Final = "base_point"
CANDIDATES_KEY: Final = "candidates"
TIMINGS_KEY: Final = "timings_ms"
