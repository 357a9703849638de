"""Subword complexity of infinite words attached to Laurent series over F_q.

The package has three layers: finite-field arithmetic and infinite word
generators at the bottom (field, words, carlitz, lacunary), factor
counting engines and Laurent-series operations in the middle
(complexity, laurent), and a CLI plus a named-check verification suite
on top (seqspec, checks, cli).
"""

from fqwords.field import (
    FieldElement,
    FieldSpec,
    ff_arith,
    ff_embed_int,
    ff_inv,
    field,
    field_from_modulus,
    parse_field,
)
from fqwords.words import InfiniteWord
from fqwords.complexity import profile_fast, profile_naive
from fqwords.checks import SuiteParams, run_suite
from fqwords.seqspec import parse_sequence_spec, parse_series_expr

__version__ = "0.1.0"
