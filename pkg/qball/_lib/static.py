from fractions import Fraction
from typing import Sequence


class LetterKind:
    Z = "z"
    ZSTAR = "zs"
    F0 = "f0"


class GenKind:
    E = "E"
    F = "F"
    KPLUS = "K"
    KMINUS = "Ki"


class ExitCode:
    OK = 0
    USAGE = 1
    NOT_FINITE = 2
    VERIFY_FAILED = 3


# Rational q values at which Gram matrices are checked for positive definiteness.
POSITIVITY_GRID: Sequence[Fraction] = (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4))

DEFAULT_DEGREE_CAP = 3

# psi f0 phi* with deg psi, deg phi <= SANDWICH_DEGREE spans the invariance sample.
SANDWICH_DEGREE = 2

# Highest monomial degree on which the q-Serre relations are checked.
SERRE_DEGREE = 2
