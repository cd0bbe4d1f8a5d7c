"""merolocus: root-locus analysis for factored meromorphic functions.

The classical control-theory root locus generalized to meromorphic W(s):
gain K = 1/|W| and phase evaluation, closed-form departure/arrival angle
fans at poles and zeros, and numerical tracing of constant-phase loci from
poles to zeros, with a catalog of rational examples and zeta/eta/gamma/xi
black boxes.
"""

from .angles import (
    AngleFan,
    AngleKind,
    DirectionAngle,
    arrival_angle,
    arrival_fan,
    departure_angle,
    departure_fan,
    is_simple_by_gap,
    opposite_gap_pole,
    opposite_gap_zero,
)
from .catalog import (
    BlackBoxFunction,
    as_black_box_spec,
    eta,
    gamma,
    named_rational,
    xi,
    xi_reality_check,
    zeta,
)
from .errors import (
    CorrectorDivergence,
    DegenerateGeometry,
    EmptyInput,
    InvalidIndex,
    MerolocusError,
    NonPositiveExponent,
    NotRegularPoint,
    OutOfValidityRegion,
    UnknownFunction,
    UnwrapAliasing,
)
from .model import (
    ComplexPoint,
    EntireFactor,
    Form,
    FunctionValue,
    MeromorphicSpec,
    PoleTerm,
    ValueKind,
    ZeroTerm,
    cancel_coincident,
    dump_spec,
    evaluate,
    is_regular_point,
    load_spec,
    log_derivative,
    phase_terms,
    spec_from_dict,
    spec_to_dict,
)
from .phase import (
    GainValue,
    PhaseTarget,
    gain,
    phase_residual,
    principal_phase,
    satisfies_phase_condition,
    unwrap_phase_along,
)
from .report import emit_plot, render_figure
from .tracer import (
    CurvePoint,
    Endpoint,
    EndpointKind,
    LocusCurve,
    SaddleEvent,
    TraceConfig,
    Window,
    continue_through_saddle,
    grid_scan_oracle,
    numeric_anchor_directions,
    trace_fan,
    trace_from_point,
    trace_from_pole,
    verify_curve,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
