"""Semi-Bloch periodicity toolkit.

Exact and numeric representations of almost periodic type signals, Bohr
spectra, certified (anti/Bloch) period witnesses, Stepanov norms and the
convolution operators that preserve these classes.
"""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    DomainError,
    NonSummableError,
    ParameterError,
    PreconditionError,
    SemiBlochError,
    UnsupportedRepresentation,
    ValidationError,
)
from .frequency import ONE, PI_SQRT2, SQRT2, Frequency, FrequencySymbol  # noqa: E402
from .signals import (  # noqa: E402
    HALF_LINE,
    REAL_LINE,
    PiecewiseConstantSignal,
    SampledSignal,
    TrigPolynomial,
    TruncatedSeries,
    bloch_reduce,
    constant,
    cosine,
    evaluate,
    exponential,
    extend_to_real_line,
    reciprocal,
    scale,
    sine,
    sup_distance,
    translate,
)
from .spectrum import bohr_coefficient, commensurability_theta, spectral_classify, spectrum  # noqa: E402
from .periods import (  # noqa: E402
    almost_anti_periodic_test,
    bloch_exact_check,
    epsilon_period_scan,
    quantifier_search,
    semi_anti_witness,
    semi_bloch_witness,
    witness_bound,
)
from .stepanov import (  # noqa: E402
    lift_distance,
    separation_witness,
    stepanov_norm,
    stepanov_semi_test,
)
from .convolution import (  # noqa: E402
    KernelFamily,
    asymptotic_conditions,
    decompose,
    finite_convolution,
    heat_evolve,
    heat_quadrature,
    infinite_convolution,
    preservation_check,
    summability_constant,
)
from .classify import classify  # noqa: E402
