"""Exception types shared across the package.

Every error that a caller can act on has its own class; generic misuse
(bad argument types, malformed argv) surfaces as ValueError or the CLI's
usage handling.
"""


class HqcountError(Exception):
    """Base class for all package-specific errors."""


# -- field ------------------------------------------------------------------

class NotPrimePower(HqcountError):
    """q has at least two distinct prime factors."""


class ZeroHasNoLog(HqcountError):
    """Discrete log requested for the zero element."""


class CacheFormatError(HqcountError):
    """A field-table cache file is missing, truncated or inconsistent."""


# -- cyclo ------------------------------------------------------------------

class OrderMismatch(HqcountError):
    """Arithmetic between cyclotomic numbers of different root orders."""


class NotRational(HqcountError):
    """A cyclotomic number expected to be rational is not.

    The offending residual (canonical coefficients beyond the constant
    term) is attached for diagnostics.
    """

    def __init__(self, message: str, residual=None):
        super().__init__(message)
        self.residual = residual


# -- gauss ------------------------------------------------------------------

class BadDivisor(HqcountError):
    """Hasse-Davenport order N does not divide q - 1."""


# -- hyper ------------------------------------------------------------------

class UnbalancedDegrees(HqcountError):
    """Sum of the p-exponents differs from the sum of the q-exponents."""


class NotCoprime(HqcountError):
    """gcd(p_1, ..., p_r, q_1, ..., q_s) exceeds 1."""


class DegenerateCancellation(HqcountError):
    """Cyclotomic cancellation leaves an empty alpha or beta multiset."""


class NotDefinedOverQ(HqcountError):
    """alpha/beta are not Galois-stable, so no (p, q)-lists exist."""


class BadFieldForParams(HqcountError):
    """(q - 1) * alpha_i or (q - 1) * beta_j is not an integer."""


class ZeroArgument(HqcountError):
    """The hypergeometric argument t (or lambda) is zero."""


class CharacteristicClash(HqcountError):
    """The field characteristic divides one of the defining exponents."""


# -- toric / variety --------------------------------------------------------

class IndexOutOfRange(HqcountError):
    """A cell references an index outside the (r, s) grid."""


class MaximalCellHasNoComponent(HqcountError):
    """Component counts are undefined for maximal cells."""


class SingularFiber(HqcountError):
    """M * lambda = 1: the closed formula is withheld.

    The brute-force count still makes sense and is attached as
    ``report`` (a CountReport whose formula side is None).
    """

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class BadPartition(HqcountError):
    """Alternative-variety blocks fail the zero-sum or gcd conditions."""


class BadParameter(HqcountError):
    """A curve parameter falls on an excluded value (e.g. lambda = 1)."""
