"""Exception hierarchy.

Two branches matter to callers: InputError (bad data handed to us; CLI exit 2)
and NumericsError (a numerical contract broke mid-computation; CLI exit 3).
"""


class OpucError(Exception):
    pass


class InputError(OpucError):
    """Invalid input: precondition on user-supplied data failed."""


class NumericsError(OpucError):
    """Numerical contract violation: an internal guarantee failed to hold."""


class InvalidParameters(InputError):
    pass


class NotAChainSequence(InputError):
    """The d-prefix admits no parameter sequence in [0, 1)."""

    def __init__(self, index: int, value: float):
        self.index = index
        self.value = value
        super().__init__(
            f"d prefix is not a positive chain sequence: parameter "
            f"m_{index} = {value!r} falls outside [0, 1)"
        )


class HypothesisViolated(InputError):
    """A structural hypothesis (sign pattern, alternation, parity) fails."""


class NotACandidate(InputError):
    """Point-mass evaluation requested at a point with tau_p(w) != 1."""


class OffBand(InputError):
    """Density evaluation requested outside the open bands (|Delta| >= 2)."""


class NoConvergence(NumericsError):
    pass


class DivisionByZero(NumericsError):
    """A backward parameter iterate hit zero; the d prefix is inconsistent."""


class DegenerateDenominator(NumericsError):
    pass


class BracketFailure(NumericsError):
    """An interlacing bracket showed no sign change."""

    def __init__(self, level: int, j: int, message: str = ""):
        self.level = level
        self.j = j
        super().__init__(
            f"no sign change in bracket {j} at level {level}" + (": " + message if message else "")
        )


class GapViolated(NumericsError):
    """A zero landed inside the forbidden interval implied by the sign pattern."""

    def __init__(self, level: int, x: float, bound: float):
        self.level = level
        self.x = x
        self.bound = bound
        super().__init__(
            f"zero x = {x!r} at level {level} lies inside the excluded interval (+-{bound!r})"
        )


class NodeAtOne(NumericsError):
    """R_n(1) is numerically zero; the node z = 1 degenerates."""


class NegativeWeight(NumericsError):
    def __init__(self, j: int, value: float):
        self.j = j
        self.value = value
        super().__init__(f"quadrature weight {j} is not positive: {value!r}")


class NonRealDiscriminant(NumericsError):
    pass


class RootCountMismatch(NumericsError):
    pass


class CandidateCountMismatch(NumericsError):
    pass


class DenominatorVanished(NumericsError):
    pass


class InternalInvariant(NumericsError):
    pass


class ClusterWarning(UserWarning):
    """Adjacent zeros closer than the cluster threshold; accuracy may degrade."""
