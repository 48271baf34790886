"""Exception types shared across the package."""


class QuasimonoError(Exception):
    """Base class for all package-specific errors."""


class NonPrimeModulus(QuasimonoError):
    """The modulus of a prime field descriptor is not prime."""


class RedundantAdjunction(QuasimonoError):
    """The adjoined element already exists in the field built so far."""


class BadAdjunction(QuasimonoError):
    """The adjunction kind is incompatible with the characteristic."""


class PoleAtPoint(QuasimonoError):
    """Evaluation point lies on the denominator's zero locus."""


class IdenticallyZeroDenominator(QuasimonoError):
    """A substitution sends the denominator to the zero function."""


class ZeroCoefficient(QuasimonoError):
    """A Laurent monomial or action coefficient is zero."""


class ParseError(QuasimonoError):
    """Malformed rational function expression."""


class NotUnimodular(QuasimonoError):
    """An integer matrix expected in GL_n(Z) has determinant != +-1."""


class CapExceeded(QuasimonoError):
    """Group closure exceeded the element cap (suspected infinite group)."""


class Unidentified(QuasimonoError):
    """No conjugator onto a catalog representative found within bounds."""


class InvalidAction(QuasimonoError):
    """The action data violates the quasi-monomial axioms."""


class UnsupportedKernelQuotient(QuasimonoError):
    """Kernel quotient N/N0 is not cyclic of small order."""


class ModularCharacterUnsupported(QuasimonoError):
    """char k divides |G| and no closed-form invariant applies."""


class DecompositionInvalid(QuasimonoError):
    """The supplied change of basis does not block-diagonalize the group."""


class FaithfulnessPreconditionFailed(QuasimonoError):
    """Neither block of the supplied splitting carries a faithful action."""


class DegenerateSampling(QuasimonoError):
    """Too many fiber-count trials hit poles to certify anything."""


class UndecidableAtHeightBound(QuasimonoError):
    """Point search exhausted without a local certificate either way."""
