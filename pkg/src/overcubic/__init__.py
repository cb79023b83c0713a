"""Exact q-series toolkit for verifying congruences of overcubic partition
k-tuples and related families."""

__version__ = "0.1.0"

from .series import (  # noqa: F401
    ResidueSeries,
    TruncatedSeries,
    add,
    dilate,
    equal_to_order,
    inv,
    mul,
    power,
    reduce_mod,
    shift,
)
from .etaq import (  # noqa: F401
    EtaQuotient,
    Family,
    FMonomial,
    FQuotientSum,
    cotron_check,
    expand_f,
    expand_monomial,
    expand_sum,
    family_monomial,
    phi,
    psi,
    sellers_product,
)
from .dissect import IdentityClaim, extract_progression, interleave, verify_identity  # noqa: F401
from .congruence import CongruenceClaim, ScanConfig, scan, theorem_suite, verify_congruence  # noqa: F401
from .certify import RaduCertificate, load_certificate, verify_certificate  # noqa: F401
from .density import DensityReport, compute_density, exception_structure_check  # noqa: F401
from .oracle import count_ktuple, count_opt_ktuple, count_overcubic  # noqa: F401
