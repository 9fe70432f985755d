"""Constants for the sl(n) parabolic polarization verifier."""

import json
from pathlib import Path

DOMAIN = "slpolar"

MANIFEST = json.loads((Path(__file__).parent / "manifest.json").read_text(encoding="utf-8"))
VERSION = MANIFEST["version"]

# Configuration keys
CONF_RANKS = "ranks"
CONF_COMPOSITIONS = "compositions"
CONF_SAMPLES = "samples"
CONF_SEED = "seed"
CONF_BOUND = "bound"
CONF_CHECKS = "checks"
CONF_OUTPUT = "output_path"
CONF_FORMAT = "format"
CONF_JOBS = "jobs"

ALL = "all"
FORMAT_JSON = "json"
FORMAT_MARKDOWN = "markdown"

DEFAULT_RANKS = (2, 3, 4)
DEFAULT_SAMPLES = 50
DEFAULT_SEED = 42
DEFAULT_BOUND = 9
DEFAULT_FORMAT = FORMAT_JSON
DEFAULT_JOBS = 1

MIN_RANK = 2
MAX_RANK = 6
MAX_WEYL_RANK = 6
MAX_EXHAUSTIVE_RANK = 5
MAX_SEED = 2**64 - 1

# Sampling
RESAMPLE_CAP = 100
GENERICITY_DRAWS = 5
RICHARDSON_THRESHOLD = 0.9

# Check identifiers, in run order
CHECK_VXY_IN_P = "vxy_in_p"
CHECK_VXY_IN_OPPOSITE = "vxy_in_opposite"
CHECK_VXY_EQ_B = "vxy_eq_b"
CHECK_VXY_IN_LEVI_SUM = "vxy_in_levi_sum"
CHECK_VXY_DECOMPOSITION = "vxy_decomposition"
CHECK_VARPI_IMAGE = "varpi_image"
CHECK_CENTRALIZER = "centralizer_criterion"
CHECK_WEYL_LEMMA = "weyl_lemma"
CHECK_PARABOLIC_CONJUGACY = "parabolic_conjugacy"
CHECK_FIBER_CARDINALITY = "fiber_cardinality"
CHECK_GENERIC_FIBER = "generic_fiber"
CHECK_RICHARDSON_DENSITY = "richardson_density"

ALL_CHECKS = (
    CHECK_VXY_IN_P,
    CHECK_VXY_IN_OPPOSITE,
    CHECK_VXY_EQ_B,
    CHECK_VXY_IN_LEVI_SUM,
    CHECK_VXY_DECOMPOSITION,
    CHECK_VARPI_IMAGE,
    CHECK_CENTRALIZER,
    CHECK_WEYL_LEMMA,
    CHECK_PARABOLIC_CONJUGACY,
    CHECK_FIBER_CARDINALITY,
    CHECK_GENERIC_FIBER,
    CHECK_RICHARDSON_DENSITY,
)

# Checks that only depend on the rank, not on the Levi composition
RANK_CHECKS = (CHECK_WEYL_LEMMA, CHECK_PARABOLIC_CONJUGACY)
