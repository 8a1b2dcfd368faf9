"""Exact incidence geometry: count the lines, circles, planes and spheres a
finite rational point set determines, and audit inequalities on those counts."""

__version__ = "0.1.0"

from .exact import *  # noqa: F401,F403
from .incidence import *  # noqa: F401,F403
from .validation import *  # noqa: F401,F403
from .transforms import *  # noqa: F401,F403
from .bounds import *  # noqa: F401,F403
from .generators import *  # noqa: F401,F403
from .audit import *  # noqa: F401,F403
from .serialization import *  # noqa: F401,F403

_ESTIMATORS = ("check_point_set", "IncidenceCounter", "Inversion", "CentralProjection", "BoundAuditor")


def __getattr__(name):
    # scikit-learn is imported only when an estimator is requested
    if name in _ESTIMATORS:
        from . import estimators

        return getattr(estimators, name)
    raise AttributeError(f"module 'incidence_lab' has no attribute {name!r}")
