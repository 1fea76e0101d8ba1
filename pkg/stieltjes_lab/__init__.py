from .arith import INFINITY, ZERO, LaurentTail, Poly, PolyMatrix2, RationalFunction  # noqa: F401
from .contfrac import (  # noqa: F401
    PFraction,
    SFraction,
    moments_from_s_fraction,
    p_fraction,
    p_from_s,
    s_from_p,
    schur_s_fraction,
)
from .hankel import MomentSequence, class_indices, hankel_det  # noqa: F401
from .util import StieltjesError, logger  # noqa: F401
