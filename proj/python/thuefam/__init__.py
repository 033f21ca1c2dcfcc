"""Thue equations over the family of cubic forms F_n = N(X - eps^(n+1) Y)."""

import json

from ._core import Error, form, schema_version, search
from ._core import trace_json as _trace_json
from ._core import verify as _verify

__all__ = ["Error", "form", "forms", "schema_version", "search", "trace", "verify"]


def forms(D, n_lo, n_hi):
    """Mapping n -> (a0, a1, a2, a3) for n_lo <= n <= n_hi."""
    return {n: form(D, n) for n in range(n_lo, n_hi + 1)}


def trace(D, n, x, y, k):
    """Certificate for one solution of |F_n(x, y)| <= k, as a dict.

    Integers appear as decimal strings and enclosures as {"mid", "rad"}.
    """
    return json.loads(_trace_json(D, n, x, y, k))


def verify(D, deep=False):
    """Identity checks for the family; a list of (name, passed, detail)."""
    return _verify(D, deep)
