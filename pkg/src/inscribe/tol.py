"""Tolerance configuration shared by every geometric predicate.

All predicates compare against a single relative tolerance.  The default is
1e-9 and can be overridden globally through the ``INSCRIBE_EPS`` environment
variable or per call through the ``eps`` keyword most functions accept.
"""

import os

_ENV_VAR = "INSCRIBE_EPS"

DEFAULT_EPS = float(os.environ.get(_ENV_VAR, "1e-9"))


def resolve_eps(eps=None) -> float:
    """Return the effective tolerance: ``eps`` if given, else the default."""
    return DEFAULT_EPS if eps is None else float(eps)


def set_default_eps(eps) -> float:
    """Replace the global default tolerance and return the previous value."""
    global DEFAULT_EPS
    previous = DEFAULT_EPS
    DEFAULT_EPS = float(eps)
    return previous
