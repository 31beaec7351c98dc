"""Exception hierarchy.

Every error raised on purpose by the library derives from :class:`WittError`
and carries a short machine-readable ``code`` that the CLI reports verbatim.
"""


class WittError(Exception):
    """Base class for domain errors."""

    code = "WittError"

    def __init__(self, detail: str = ""):
        super().__init__(detail)
        self.detail = detail

    def to_json(self) -> dict:
        return {"error": self.code, "detail": self.detail}


def _make(name: str, doc: str, code: str = "") -> type:
    return type(name, (WittError,), {"code": code or name, "__doc__": doc})


InvalidRing = _make("InvalidRing", "A ring descriptor failed validation.")
NotDivisible = _make("NotDivisible", "x is not a multiple of n in the ring.")
NotUnique = _make("NotUnique", "n-torsion makes the quotient x/n ambiguous.")
NoLiftDeclared = _make("NoLiftDeclared", "The ring has no registered Frobenius lift.")
NotASublattice = _make("NotASublattice", "The first lattice is not contained in the second.")
NotAMember = _make("NotAMember", "An index is not a member of the truncation set.")
NotDivisorClosed = _make("NotDivisorClosed", "A set of integers is not divisor closed.")
MismatchedShape = _make("MismatchedShape", "Operands live over different rings or index sets.")
NotInGhostImage = _make("NotInGhostImage", "A ghost vector is not the ghost of any Witt vector.")
IntegralityViolation = _make("IntegralityViolation", "A universal polynomial had a non-integral coefficient.")
PrimeNotInvertible = _make("PrimeNotInvertible", "A prime that must be a unit is not invertible.")
BadTruncationPair = _make("BadTruncationPair", "T is not a valid sub truncation set for an idempotent.")
NotInitialSegment = _make("NotInitialSegment", "The truncation set is not of the form {1..m}.")
NotPerfect = _make("NotPerfect", "Frobenius is not bijective on the ring.")
FrobeniusNotInjective = _make("FrobeniusNotInjective", "Frobenius is not injective on the ring.")
PrecisionExhausted = _make("PrecisionExhausted", "A p-adic division ran out of precision.")
ConstructionFailed = _make("ConstructionFailed", "A verified construction could not be found.")
TooLarge = _make("TooLarge", "The requested enumeration exceeds the size limit.")
ParseError = _make("ParseError", "Malformed expression text.", "SyntaxError")
ExprTypeError = _make("ExprTypeError", "An expression is ill-typed for the ring or index set.", "TypeError")
