"""
Exceptions raised by the numerical kernels and proof scenarios.
"""


class ProofError(Exception):
    """Base class for every error raised by the project."""


class ConfigurationError(ProofError):
    """Invalid integrator settings, CLI options or environment."""


class DatasetError(ConfigurationError):
    """Chart dataset missing, malformed or violating its invariants."""


class IntervalError(ProofError):
    """Base class for interval arithmetic failures."""


class InvalidInterval(IntervalError):
    """Endpoints out of order or not numbers."""


class DomainError(IntervalError):
    """Operation applied outside its domain (e.g. sqrt of a negative box)."""


class DivisionByZeroInterval(IntervalError):
    """Divisor enclosure contains zero."""


class SingularEnclosure(IntervalError):
    """Invertibility of an interval matrix could not be verified."""


class SingularityHit(ProofError):
    """Evaluation box touches a singular set of the model."""


class CollisionSingularity(SingularityHit):
    """Primary-distance enclosure contains zero in the original frame."""


class RegularizedCollision(SingularityHit):
    """The (u, v) enclosure contains the origin."""


class SecondPrimarySingularity(SingularityHit):
    """Distance to the unregularized primary contains zero."""


class IntegrationError(ProofError):
    """Base class for integrator failures."""


class StepUnderflow(IntegrationError):
    """Step size fell below the configured minimum."""


class BlowUp(IntegrationError):
    """Enclosure diameter exceeded the configured budget."""


class NoCrossing(ProofError):
    """No section crossing found within the step budget."""


class TangentialCrossing(ProofError):
    """Transversality enclosure contains zero at the crossing."""


class DegenerateChart(ProofError):
    """Chart matrix could not be verified invertible."""


class OffSection(ProofError):
    """Point box is not on the chart section or energy level."""


class NewtonFailure(ProofError):
    """Interval Newton did not verify a required zero."""


class VerificationFailure(ProofError):
    """A proof hypothesis was checked and does not hold."""


class ConditionFailed(VerificationFailure):
    """A covering condition failed on a sub-box."""

    def __init__(self, sub_box, condition, message=""):
        self.sub_box = sub_box
        self.condition = condition
        super().__init__(message or f"{condition} failed on {sub_box}")

    def __reduce__(self):
        return type(self), (self.sub_box, self.condition, str(self))


class BoundsViolated(VerificationFailure):
    """Cone derivative bounds do not hold."""

    def __init__(self, condition, message=""):
        self.condition = condition
        super().__init__(message or f"cone bound violated: {condition}")

    def __reduce__(self):
        return type(self), (self.condition, str(self))


class HypothesisUnverified(VerificationFailure):
    """Premise of a symmetry rule is not established."""


class AvoidanceFailed(VerificationFailure):
    """A tube segment may contain a collision state."""

    def __init__(self, leg, segment, message=""):
        self.leg = leg
        self.segment = segment
        super().__init__(message or f"leg {leg}: segment {segment} may collide")

    def __reduce__(self):
        return type(self), (self.leg, self.segment, str(self))


class EnclosureTooWide(VerificationFailure):
    """Verified enclosure exceeds its width budget."""


class MissingPremise(VerificationFailure):
    """A symbolic word references a relation without a certificate."""

    def __init__(self, relation_id):
        self.relation_id = relation_id
        super().__init__(f"missing premise: {relation_id}")
