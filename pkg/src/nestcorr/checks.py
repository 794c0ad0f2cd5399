"""Debug switch for the in-line identity checks.

Several operations can recompute their result along a second route and
raise IdentityMismatch on disagreement.  The expensive ones only do so
when debugging is on: set NESTCORR_DEBUG=1 or assign ``checks.DEBUG``.
"""

import os

from .errors import IdentityMismatch

DEBUG = os.environ.get("NESTCORR_DEBUG", "") not in ("", "0")


def enabled(flag=None):
    return DEBUG if flag is None else bool(flag)


def require_equal(name, left, right):
    if left != right:
        raise IdentityMismatch(name, left, right)
    return left


def require_close(name, left, right, tol):
    if abs(left - right) > tol:
        raise IdentityMismatch(name, left, right)
    return left
