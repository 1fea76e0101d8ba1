import argparse
from fractions import Fraction


class IterableNamespace(argparse.Namespace):
    def __init__(self, *pos, **kwargs):
        argparse.Namespace.__init__(self, *pos, **kwargs)

    def keys(self):
        return self.__dict__.keys()

    def items(self):
        return self.__dict__.items()

    def values(self):
        return self.__dict__.values()

    def __getitem__(self, key):
        return getattr(self, key)

    def __contains__(self, value) -> bool:
        return value in self.__dict__.values()


PARITIES = IterableNamespace(EVEN="even", ODD="odd")

PADE_KINDS = IterableNamespace(DIAGONAL="diagonal", SUBDIAGONAL="subdiagonal")

VERDICTS = IterableNamespace(
    INDETERMINATE="indeterminate-evidence",
    DETERMINATE="determinate-evidence",
    INCONCLUSIVE="inconclusive",
)

OUTPUT_FORMATS = IterableNamespace(JSON="json", TEXT="text", CSV="csv")

COMMANDS = IterableNamespace(
    ANALYZE="analyze",
    FRACTIONS="fractions",
    POLYS="polys",
    RESOLVENT="resolvent",
    PADE="pade",
    DETERMINACY="determinacy",
    PROBE="probe",
    LAGUERRE_DEMO="laguerre-demo",
    VERIFY="verify",
    MOMENTS="moments",
)

EXIT_CODES = IterableNamespace(OK=0, PARSE=2, DOMAIN=3, CONSISTENCY=4)

# determinacy evidence: tail terms must shrink by at least this ratio over the window
DEFAULT_TAIL_WINDOW = 5
DEFAULT_TAIL_RATIO = Fraction(9, 10)

# float rendering of probe tables only
DEFAULT_PROBE_TOLERANCE = 1e-3
DEFAULT_PROBE_POINTS = (Fraction(1),)
DEFAULT_PROBE_N_LIST = (2, 4, 8)

DEFAULT_LAGUERRE_COUNT = 6

DEMOS = {
    "laguerre-0": {"alpha": Fraction(0), "count": DEFAULT_LAGUERRE_COUNT},
    "laguerre-3/2": {"alpha": Fraction(-3, 2), "count": DEFAULT_LAGUERRE_COUNT},
}
