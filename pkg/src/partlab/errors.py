"""Exception types shared across the package."""


class PartlabError(Exception):
    """Base class for all partlab errors."""


class InvalidPartitionError(PartlabError, ValueError):
    """Malformed partition data: bad part/multiplicity or unparseable text."""


class DomainError(PartlabError, ValueError):
    """Arguments lie outside the defined domain of an operation or family."""


class ResourceLimitError(PartlabError, RuntimeError):
    """A request exceeds the configured enumeration cap or series order."""


class OrderMismatchError(PartlabError, ValueError):
    """Series operands have different truncation orders."""


class UnsupportedFamilyError(PartlabError, LookupError):
    """The requested family has no closed-form generating function."""


class UnknownFamilyError(PartlabError, LookupError):
    """The family identifier is not registered."""


class UnknownIdentityError(PartlabError, LookupError):
    """The identity identifier is not registered."""
