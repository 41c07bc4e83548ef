"""Exception hierarchy with machine-readable categories.

Every error raised by this package carries a short category string that the
command line front end maps to a distinct exit code:

    parse        malformed input files, bad labels, dimension mismatches
    route        a required coupling cannot be realized on the system graph
    parity       a Hamiltonian term does not preserve fermionic parity
    resource     a qubit/size guard was exceeded
    verify-fail  an internal consistency or oracle check failed
"""


class FermigraphError(Exception):
    """Base class for all package errors."""

    category = "parse"


class ParseError(FermigraphError):
    category = "parse"


class DimensionError(ParseError):
    """Operands act on different numbers of qubits or modes."""


class RoutingError(FermigraphError):
    category = "route"


class ParityError(FermigraphError):
    category = "parity"


class ResourceError(FermigraphError):
    category = "resource"


class VerifyError(FermigraphError):
    category = "verify-fail"
