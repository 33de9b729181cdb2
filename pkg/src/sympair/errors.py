"""Exception hierarchy shared by all sympair modules.

Two families matter to callers: usage errors (bad dimensions, bad input
files, mixed field tags) and mathematical events (failed preconditions,
falsified identities).  The CLI maps them to distinct exit codes.
"""


class SympairError(Exception):
    """Base class for everything raised by this package."""


class UsageError(SympairError):
    """Caller error: wrong dimensions, malformed arguments, bad references."""


class ExtensionMismatchError(UsageError):
    """Two scalars from distinct nontrivial quadratic extensions were mixed."""


class InvariantError(SympairError):
    """A construction-time invariant failed (J^2 != -I, non-intertwining block, ...)."""


class SessionError(UsageError):
    """A session file failed to parse or validate; message carries the location."""


class NotAnIsogenyError(SympairError):
    """Operation requires an isogeny but the morphism has zero determinant."""


class NotSymplecticError(SympairError):
    """Operation requires a symplectic block isomorphism."""


class NotApplicableError(SympairError):
    """The division-algebra hypothesis is not certified, so the trichotomy
    does not apply.  Carries the verdict that blocked it."""

    def __init__(self, message, verdict=None):
        super().__init__(message)
        self.verdict = verdict


class NotSubvarietyError(SympairError):
    """Sublattice input does not span a J-stable subspace (not an abelian
    subvariety), so isotropy is undefined for it."""


class OracleDisagreementError(SympairError):
    """Two independent oracles for the same predicate returned different
    verdicts.  This falsifies a proved identity or reveals a bug; either
    way computation must halt."""


class TheoremViolation(SympairError):
    """An assertion that the underlying theorem guarantees has failed.
    Carries a full dump of the offending input."""

    def __init__(self, message, details=None):
        super().__init__(message)
        self.details = details or {}

    def __str__(self):
        base = super().__str__()
        if not self.details:
            return base
        lines = [base]
        for key, value in self.details.items():
            lines.append(f"  {key}: {value}")
        return "\n".join(lines)
