"""Exact and interval-certified checks of Bessenrodt-Ono type and
log-concavity inequalities for partition-like sequences."""

__version__ = "0.1.0"

from .errors import DomainError, InternalInconsistency, InvalidSpec, PartineqError, PrecisionExhausted  # noqa: E402
from .seq_core import (  # noqa: E402
    Kind,
    SequenceSpec,
    euler_p,
    evaluate,
    extended_p,
    fib_even,
    load_prefix,
    mary_p,
    max_partition_product,
    plane_p,
    restricted_p,
    save_prefix,
    values,
)
from .intervals import RealInterval  # noqa: E402
from .expr import IndexMap  # noqa: E402
from .verdict import Status, Verdict  # noqa: E402
from .envelopes import (  # noqa: E402
    CHEN,
    LEHMER,
    BoundEnvelope,
    MahlerParams,
    WrightParams,
    certify_envelope,
)
from .criteria import (  # noqa: E402
    BOCriterionInputs,
    LCCriterionInputs,
    check_prop42,
    check_ratio_descent,
    check_thm43,
    limsup_probe,
    run_bo_criterion,
    run_lc_criterion,
)
from .analysis import (  # noqa: E402
    ScanReport,
    ViolationRecord,
    bo_gap_audit_q,
    cassini_audit,
    find_min_bo_threshold,
    golden_bounds_audit,
    scan_bo,
    scan_logconcavity,
)
from .presets import PRESET_IDS, load_config, preset  # noqa: E402
