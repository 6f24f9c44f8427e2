"""Error taxonomy shared across the toolkit.

Three failure classes, kept deliberately small so the CLI can map them to
exit codes without inspecting messages:

* DomainError    -- inputs outside a formula's physical domain
                    (speeds at or above the wave speed, radii inside the
                    Schwarzschild radius, geometry with no solution).
* NumericError   -- an iteration or quadrature failed to converge.
* ValidationError -- a scenario file or configuration is malformed.
"""


class DomainError(ValueError):
    """Input lies outside the physical domain of the requested formula."""


class NumericError(ArithmeticError):
    """A numerical procedure failed to converge to the requested tolerance."""


class ValidationError(ValueError):
    """A scenario file or configuration failed validation."""
