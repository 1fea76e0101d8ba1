"""
Type annotations for the JSON job and report records read and written by the command line
"""

from typing import Dict, List, Union

try:
    from typing import TypedDict  # type: ignore
except ImportError:
    from typing_extensions import TypedDict

RationalString = str  # "p/q" or "p"
CoefficientList = List[RationalString]  # lowest degree first


class SFractionPairRecord(TypedDict):
    m: CoefficientList
    l: RationalString


class AtomRecord(TypedDict):
    a: CoefficientList
    b: RationalString


class LaguerreRecord(TypedDict):
    alpha: RationalString
    count: int


class JobInput(TypedDict, total=False):
    moments: List[RationalString]
    laguerre: LaguerreRecord
    s_fraction: List[SFractionPairRecord]
    length: int


class JobOptions(TypedDict, total=False):
    N: int
    j: int
    parity: str
    kind: str
    tau: str
    points: List[RationalString]
    N_list: List[int]
    format: str
    emit: bool
    floats: bool


class JobSpec(TypedDict, total=False):
    command: str
    input: JobInput
    options: JobOptions


class RationalFunctionRecord(TypedDict):
    numer: CoefficientList
    denom: CoefficientList


class IdentityRecord(TypedDict):
    name: str
    index: int
    lhs: Union[RationalString, CoefficientList, RationalFunctionRecord]
    rhs: Union[RationalString, CoefficientList, RationalFunctionRecord]
    passed: bool


class PolyMatrixRecord(TypedDict):
    w11: CoefficientList
    w12: CoefficientList
    w21: CoefficientList
    w22: CoefficientList


Report = Dict[str, object]
