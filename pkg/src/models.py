"""
Data models for the recurrence toolkit.

Defines the dataclasses and enums shared across modules: parameters and seeds,
orbits, admissibility verdicts, behavior classes, periodic points, stability
verdicts, sweep configuration and solver settings.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator, List, Optional, Tuple, Union

from .errors import NotAdmissible
from .numerics import (
    Mode,
    Scalar,
    coerce,
    common_mode,
    check_finite,
    format_scalar,
    to_scalar,
    validate_params,
)


def _parse_pair(text: str, mode: Mode) -> Tuple[Scalar, Scalar]:
    parts = text.split(",")
    if len(parts) != 2:
        raise ValueError(f"Expected two comma-separated numbers, got {text!r}")
    return to_scalar(parts[0], mode), to_scalar(parts[1], mode)


@dataclass(frozen=True)
class Params:
    """Recurrence coefficients (a, b), both in the same mode, not both zero."""
    a: Scalar
    b: Scalar

    def __post_init__(self):
        object.__setattr__(self, "a", coerce(self.a))
        object.__setattr__(self, "b", coerce(self.b))
        validate_params(self)

    @property
    def mode(self) -> Mode:
        """Arithmetic mode of the coefficients."""
        return common_mode(self.a, self.b)

    @classmethod
    def from_values(cls, a, b, mode: Mode = Mode.EXACT) -> "Params":
        """Build params from raw values converted to ``mode``."""
        return cls(to_scalar(a, mode), to_scalar(b, mode))

    @classmethod
    def parse(cls, text: str, mode: Mode = Mode.EXACT) -> "Params":
        """Parse "a,b"."""
        return cls(*_parse_pair(text, mode))

    def to_float(self) -> "Params":
        return Params(float(self.a), float(self.b))

    def __str__(self) -> str:
        return f"a={format_scalar(self.a)}, b={format_scalar(self.b)}"


@dataclass(frozen=True)
class SeedPair:
    """Initial values (x_{-1}, x_0)."""
    x_prev: Scalar
    x_zero: Scalar

    def __post_init__(self):
        object.__setattr__(self, "x_prev", coerce(self.x_prev))
        object.__setattr__(self, "x_zero", coerce(self.x_zero))
        common_mode(self.x_prev, self.x_zero)
        check_finite(self.x_prev)
        check_finite(self.x_zero)

    @property
    def mode(self) -> Mode:
        return common_mode(self.x_prev, self.x_zero)

    @property
    def is_zero(self) -> bool:
        """True for the seed (0, 0)."""
        return self.x_prev == 0 and self.x_zero == 0

    @classmethod
    def from_values(cls, x_prev, x_zero, mode: Mode = Mode.EXACT) -> "SeedPair":
        return cls(to_scalar(x_prev, mode), to_scalar(x_zero, mode))

    @classmethod
    def parse(cls, text: str, mode: Mode = Mode.EXACT) -> "SeedPair":
        """Parse "x_-1,x_0"."""
        return cls(*_parse_pair(text, mode))

    def to_float(self) -> "SeedPair":
        return SeedPair(float(self.x_prev), float(self.x_zero))


class TerminationKind(Enum):
    """How an orbit computation ended."""
    COMPLETED = "completed"
    SINGULAR = "singular"
    NON_FINITE = "non_finite"


@dataclass(frozen=True)
class Termination:
    """Termination status; ``step`` is the index n of the term that could not be formed."""
    kind: TerminationKind
    step: Optional[int] = None

    @property
    def label(self) -> str:
        if self.kind == TerminationKind.COMPLETED:
            return "Completed"
        if self.kind == TerminationKind.SINGULAR:
            return f"SingularAt({self.step})"
        return f"NonFiniteAt({self.step})"


@dataclass(frozen=True)
class Orbit:
    """Terms x_{-1}, x_0, ..., x_N of one orbit, stored from index -1."""
    params: Params
    seed: SeedPair
    terms: Tuple[Scalar, ...]
    termination: Termination
    ill_conditioned: Tuple[int, ...] = ()

    @property
    def last_index(self) -> int:
        return len(self.terms) - 2

    def term(self, n: int) -> Scalar:
        """Return x_n for -1 <= n <= last_index."""
        if n < -1 or n > self.last_index:
            raise IndexError(f"Term x_{n} not in orbit (last index {self.last_index})")
        return self.terms[n + 1]

    def indexed(self) -> Iterator[Tuple[int, Scalar]]:
        """Yield (n, x_n) pairs."""
        for slot, value in enumerate(self.terms):
            yield slot - 1, value


@dataclass(frozen=True)
class CoefficientQuery:
    """Arguments of the coefficient functions h(n) and g(n)."""
    n: int
    a: Scalar
    alpha: Scalar

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"Coefficient index must be non-negative, got {self.n}")
        object.__setattr__(self, "a", coerce(self.a))
        object.__setattr__(self, "alpha", coerce(self.alpha))
        common_mode(self.a, self.alpha)


@dataclass(frozen=True)
class PartialProducts:
    """Running products P_k = prod h(2i) and Q_k = prod h(2i+1) for i = 0..k."""
    even_products: Tuple[Scalar, ...]
    odd_products: Tuple[Scalar, ...]

    @property
    def k_max(self) -> int:
        return len(self.even_products) - 1


@dataclass(frozen=True)
class RiccatiOrbit:
    """Terms y_0..y_N of the first-order Riccati companion y_{n+1} = y_n / (a + b*y_n)."""
    params: Params
    terms: Tuple[Scalar, ...]


class SingularKind(Enum):
    """Admissible seeds on which the general convergence statements do not apply."""
    ALPHA_ZERO = "AlphaZero"
    ALPHA_ONE_MINUS_A = "AlphaOneMinusA"


class VerdictKind(Enum):
    ADMISSIBLE_REGULAR = "AdmissibleRegular"
    ADMISSIBLE_SINGULAR = "AdmissibleSingular"
    NON_ADMISSIBLE = "NonAdmissible"
    UNDECIDED = "Undecided"


@dataclass(frozen=True)
class AdmissibilityVerdict:
    """Outcome of the admissibility check for one (params, seed)."""
    kind: VerdictKind
    singular: Optional[SingularKind] = None
    step: Optional[int] = None
    max_n_checked: Optional[int] = None

    @property
    def is_admissible(self) -> bool:
        """True unless the seed is known to hit a zero denominator."""
        return self.kind != VerdictKind.NON_ADMISSIBLE

    @property
    def is_regular(self) -> bool:
        return self.kind == VerdictKind.ADMISSIBLE_REGULAR

    @property
    def label(self) -> str:
        """Compact text form, e.g. "NonAdmissible(3)"."""
        if self.kind == VerdictKind.ADMISSIBLE_SINGULAR:
            return f"AdmissibleSingular({self.singular.value})"
        if self.kind == VerdictKind.NON_ADMISSIBLE:
            return f"NonAdmissible({self.step})"
        if self.kind == VerdictKind.UNDECIDED:
            return f"Undecided({self.max_n_checked})"
        return self.kind.value

    def require_admissible(self) -> None:
        """Raise NotAdmissible for a non-admissible verdict."""
        if self.kind == VerdictKind.NON_ADMISSIBLE:
            raise NotAdmissible(f"Seed is not admissible: {self.label}", step=self.step)


class BehaviorKind(Enum):
    """Asymptotic behavior classes of an admissible orbit."""
    TRIVIALLY_ZERO = "TriviallyZero"
    CONVERGES_TO_ZERO = "ConvergesToZero"
    EXACTLY_TWO_PERIODIC = "ExactlyTwoPeriodic"
    CONVERGES_TO_TWO_PERIODIC = "ConvergesToTwoPeriodic"
    FOUR_PERIODIC = "FourPeriodic"
    UNBOUNDED_EVEN_DIVERGES_ODD_TO_ZERO = "UnboundedEvenDivergesOddToZero"
    UNBOUNDED_ODD_DIVERGES_EVEN_TO_ZERO = "UnboundedOddDivergesEvenToZero"
    UNBOUNDED_ALTERNATING = "UnboundedAlternating"
    UNBOUNDED_GEOMETRIC = "UnboundedGeometric"
    NOT_ADMISSIBLE = "NotAdmissible"


@dataclass(frozen=True)
class DivergentBranch:
    """The subsequence x_{modulus*k + residue} tends to sign * infinity."""
    modulus: int
    residue: int
    sign: int


UNBOUNDED_KINDS = (
    BehaviorKind.UNBOUNDED_EVEN_DIVERGES_ODD_TO_ZERO,
    BehaviorKind.UNBOUNDED_ODD_DIVERGES_EVEN_TO_ZERO,
    BehaviorKind.UNBOUNDED_ALTERNATING,
    BehaviorKind.UNBOUNDED_GEOMETRIC,
)


@dataclass(frozen=True)
class Behavior:
    """Classification of an orbit with the data each class carries."""
    kind: BehaviorKind
    p: Optional[Union[Scalar, float]] = None
    q: Optional[Union[Scalar, float]] = None
    error: Optional[float] = None
    tail_bound: Optional[float] = None
    start_index: int = -1
    cycle: Tuple[Scalar, ...] = ()
    divergent: Tuple[DivergentBranch, ...] = ()
    vanishing: Tuple[Tuple[int, int], ...] = ()
    step: Optional[int] = None
    monotone_from: Optional[int] = None

    @property
    def is_bounded(self) -> Optional[bool]:
        """Boundedness of the orbit, None when the orbit is undefined."""
        if self.kind == BehaviorKind.NOT_ADMISSIBLE:
            return None
        return self.kind not in UNBOUNDED_KINDS

    @property
    def sign(self) -> Optional[int]:
        """Sign of the single divergent branch for the parity-split classes."""
        if len(self.divergent) == 1:
            return self.divergent[0].sign
        return None


@dataclass(frozen=True)
class PeriodicPoint:
    """A period-1 or period-2 point (p, q) with a certified error bound."""
    p: Union[Scalar, float]
    q: Union[Scalar, float]
    period: int
    error_bound: float
    tail_bound: float = 0.0
    k_used: int = 0


@dataclass(frozen=True)
class ProductBounds:
    """Two-sided bounds on the odd and even partial products, valid for every k."""
    odd_lower: float
    odd_upper: float
    even_lower: float
    even_upper: float


class StabilityTarget(Enum):
    ZERO = "Zero"
    NONZERO_PERIODIC = "NonzeroPeriodic"


class StabilityKind(Enum):
    ASYMPTOTICALLY_STABLE = "AsymptoticallyStable"
    STABLE_NOT_ASYMPTOTICALLY = "StableNotAsymptotically"
    UNSTABLE = "Unstable"


@dataclass(frozen=True)
class StabilityVerdict:
    """Stability of a solution; eigenvalues only for nonzero periodic targets."""
    target: StabilityTarget
    verdict: StabilityKind
    eigenvalues: Optional[Tuple[complex, complex]] = None
    note: str = ""


@dataclass(frozen=True)
class ProbeRow:
    """Perturbation experiment for one delta."""
    delta: float
    sup_distance: float
    final_distance: float
    termination: str


@dataclass(frozen=True)
class ProbeReport:
    """Empirical stability evidence, never a proof."""
    rows: Tuple[ProbeRow, ...]
    shrinks_with_delta: bool
    empirical: bool = True


class SampleFlag(Enum):
    OK = "ok"
    SINGULAR = "singular"
    NON_FINITE = "non_finite"


@dataclass(frozen=True)
class SweepConfig:
    """Bifurcation sweep over a in [a_min, a_max] for fixed b and seed."""
    a_min: float
    a_max: float
    step: float
    b: float
    seed: Tuple[float, float]
    iters: int = 400
    keep_from: int = 350

    def __post_init__(self):
        if not self.step > 0:
            raise ValueError(f"step must be positive, got {self.step}")
        if self.a_min > self.a_max:
            raise ValueError(f"a_min ({self.a_min}) exceeds a_max ({self.a_max})")
        if self.iters < 1:
            raise ValueError(f"iters must be positive, got {self.iters}")
        if not 0 <= self.keep_from < self.iters:
            raise ValueError(f"keep_from must lie in [0, iters), got {self.keep_from}")


@dataclass(frozen=True)
class BifurcationSample:
    """One row of a bifurcation diagram; x is None for flagged rows."""
    a: float
    n: int
    x: Optional[float]
    flag: SampleFlag = SampleFlag.OK


@dataclass
class PlotOptions:
    """Rendering options for bifurcation SVGs."""
    y_clip: Optional[float] = None
    width: float = 8.0
    height: float = 6.0
    marker_size: float = 1.0
    title: str = ""


@dataclass
class SolverSettings:
    """Tunable defaults for every numerical procedure."""
    # Exact arithmetic
    max_bits: int = 1_000_000

    # Admissibility scan
    n_cap: int = 10_000
    float_tol: float = 1e-12

    # Orbits
    n_max: int = 100
    ill_conditioned_ratio: float = 1e-12

    # Infinite products
    limit_tol: float = 1e-10
    k_cap: int = 100_000
    scan_cap: int = 100_000

    # Stability
    eig_tol: float = 1e-9
    probe_deltas: List[float] = field(default_factory=lambda: [1e-2, 1e-3, 1e-4, 0.0])
    probe_n_max: int = 10_000

    # Sweeps
    sweep_step: float = 0.005
    sweep_iters: int = 400
    sweep_keep_from: int = 350
    workers: int = 1


@dataclass
class ClassificationResult:
    """Admissibility, behavior and supporting certificates for one seed."""
    params: Params
    seed: SeedPair
    alpha: Scalar
    verdict: AdmissibilityVerdict
    behavior: Behavior
    pq_product: Optional[Scalar] = None
    pq_target: Optional[Scalar] = None
    zero_stability: Optional[StabilityVerdict] = None
    periodic_stability: Optional[StabilityVerdict] = None
