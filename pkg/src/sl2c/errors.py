"""Exception types raised across the package."""


class Sl2cError(Exception):
    """Base class for all package errors."""


class SingularPoint(Sl2cError, ValueError):
    """A realization function was evaluated at (or too close to) its pole."""


class NotRegular(Sl2cError, ValueError):
    """The requested eigenfunction does not decay at both ends of the line."""


class InvalidStrengths(Sl2cError, ValueError):
    """Physical potential strengths violate their admissible ranges."""


class V1IZero(InvalidStrengths):
    """Morse inversion needs a non-vanishing imaginary part of V1."""


class SingularPotential(Sl2cError, ValueError):
    """Potential samples are non-finite or exceed the configured cap."""


class NotBracketed(Sl2cError, ValueError):
    """A scan interval does not bracket the transition it is meant to locate."""


class NoConvergence(Sl2cError, RuntimeError):
    """An iterative eigenvalue computation did not converge.

    ``partial`` holds whatever eigenvalues were obtained, ``converged`` flags
    which of them are final.
    """

    def __init__(self, message, partial=None, converged=None):
        super().__init__(message)
        self.partial = partial
        self.converged = converged
