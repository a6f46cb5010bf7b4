"""Exact algebra of Z[c^±1], its boundary onto divided powers, and the
polylogarithm / blackbody numerics attached to it."""

from .divided_power import DividedPower, dp_mul, dp_rationalize
from .laurent import LaurentPoly, LocalizedLaurent, ParseError, RingMismatch, loc_normalize, lp_add, lp_mul, lp_parse, lp_project
from .series import (
    FormalGroupLaw,
    OneFormSeries,
    PowerSeries,
    b_series,
    bernoulli,
    c_from_b_check,
    degrade,
    fgl_character_check,
    one_form_check,
    ps_arith,
    ps_exp_log,
    uniform_cumulants,
)
from .tate import boundary, exactness_check, rota_baxter_check

__version__ = "0.1.0"
