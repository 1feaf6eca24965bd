"""Exceptions raised by isogeny2.

Every failure of the pipeline is a subclass of :class:`IsogenyError`. The class attribute ``condition`` names the
genericity condition (or input requirement) whose violation the error signals; the command line surfaces it next to
the message.
"""

from typing import ClassVar


class IsogenyError(ValueError):
    condition: ClassVar[str] = "input outside the supported domain"


# field


class DegreeOverflowError(IsogenyError):
    condition = "the working field has degree dividing 8 over the prime field"


class SquareInFieldError(IsogenyError):
    condition = "only non-squares can be adjoined"


# series


class ZeroConstantTermError(IsogenyError):
    condition = "series to invert must be a unit"


class NonSquareLeadingTermError(IsogenyError):
    condition = "leading coefficient of a series square root must be a square in the working field"


class OddValuationError(IsogenyError):
    condition = "series square roots need an even valuation"


class PrecisionTooLowError(IsogenyError):
    condition = "precision at least the number of unknowns of the reconstruction"


class NoSolutionError(IsogenyError):
    condition = "series comes from a rational fraction of the prescribed degrees"


# covariants and curves


class OrderTooLargeError(IsogenyError):
    condition = "transvectant order at most the orders of both forms"


class SingularCurveError(IsogenyError):
    condition = "curve is nonsingular (I10 != 0)"


class ZeroI4Error(IsogenyError):
    condition = "I4 != 0 (Igusa invariants and their derivatives are defined)"


class NonGenericInvariantsError(IsogenyError):
    condition = "curve has automorphism group {1, -1} and j3 != 0 (Mestre's conic is nondegenerate)"


class PointAtInfinityError(IsogenyError):
    condition = "base point is affine"


class NonSquareBranchError(IsogenyError):
    condition = "local expansion at the base point is defined over the working field"


class NoGenericPointError(IsogenyError):
    condition = "phi_P is of generic type for some tried base point P"


# modular equations and tangent matrices


class ModeqParseError(IsogenyError):
    condition = "modular equation file follows the documented text format"


class WrongArityError(IsogenyError):
    condition = "monomials have one exponent per variable of the set"


class SingularMatrixError(IsogenyError):
    condition = "derivative matrices of the modular equations and of the invariants are invertible"


class ModularEquationNonzeroError(IsogenyError):
    condition = "the modular equations vanish at (J, J')"


class NonDiagonalSolutionError(IsogenyError):
    condition = "both curves are Hilbert-normalized for compatible real multiplication embeddings"


class ZeroG1Error(IsogenyError):
    condition = "Gundlach invariant g1 != 0"


class NotOnHumbertError(IsogenyError):
    condition = "Igusa invariants lie on the Humbert surface of Q(sqrt 5)"


class NonSquareError(IsogenyError):
    condition = "square root exists in the working field"


class DegenerateGundlachError(IsogenyError):
    condition = "Hilbert modular forms F6, F10 and the pullback of I2 do not vanish"


class InconsistentChainRuleError(IsogenyError):
    condition = "curve is potentially Hilbert-normalized"


class SingularJacobianError(IsogenyError):
    condition = "the map from Gundlach to Igusa invariants is etale at the point"


# solver and reconstruction


class EqualRootsError(IsogenyError):
    condition = "x1 - x2 has valuation one (correct tangent matrix, generic base point)"


class NonInvertibleLeadingError(IsogenyError):
    condition = "characteristic larger than the precision and invertible constant term"


class ResidualNonzeroError(IsogenyError):
    condition = "Newton iteration doubles the precision of the lift"


class CandidateRejectedError(IsogenyError):
    condition = "series come from rational fractions of the prescribed degrees (correct tangent matrix)"


class NotAPerfectSquareError(IsogenyError):
    condition = "q and r are functions on the source curve"


class SignMismatchError(IsogenyError):
    condition = "deduced q and r agree with the series of the lift"


class NonGenericPositionError(IsogenyError):
    condition = "image divisor is a pair of affine points with distinct abscissae"


class ExtensionFieldReconstructionError(IsogenyError):
    condition = "Mestre reconstruction runs over a prime field"
