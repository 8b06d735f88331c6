"""Exception and warning types shared across the package."""


class SpringError(Exception):
    pass


class ValidationError(SpringError, ValueError):
    """Invalid parameters or request fields."""


class DomainError(SpringError, ValueError):
    """Argument outside the domain of a nonlinearity family."""


class UnsupportedExtension(SpringError, ValueError):
    """Family has no closed form at real (non-integer) occupation."""


class NonPositiveOmega(SpringError, ValueError):
    """Modulation value Omega(p) <= 0 where the eigenproblem needs Omega > 0."""

    def __init__(self, omega_value: float, p: int | None = None):
        self.omega_value = omega_value
        self.p = p
        where = "" if p is None else f" at p={p}"
        super().__init__(f"non-positive Omega={omega_value!r}{where}")

    def at(self, p: int) -> "NonPositiveOmega":
        """Return a copy of this error tagged with the offending occupation."""
        return type(self)(self.omega_value, p)


class ZeroOmega(NonPositiveOmega):
    """Omega(p) == 0: free-particle degeneracy, no normalizable eigenstates."""


class TruncationCapHit(UserWarning):
    """Poisson support reached p_max_cap before meeting the tail tolerance."""


class NegativeOmegaWarning(UserWarning):
    """Omega(p) < 0 replaced by |Omega(p)| under the absolute policy."""
