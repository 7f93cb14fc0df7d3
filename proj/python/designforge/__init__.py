"""Difference families, divisible difference families and Hadamard matrices."""

import json

from . import _designforge as _core
from ._designforge import DesignError, is_hadamard, is_skew, is_symmetric, skew_hadamard, sylvester

__all__ = [
    "DesignError",
    "check_thm41_preconditions",
    "claim_tests",
    "construct",
    "fingerprint",
    "is_hadamard",
    "is_skew",
    "is_symmetric",
    "search",
    "skew_hadamard",
    "sylvester",
    "symmetric_hadamard",
    "verify",
]


def construct(kind, *, q=0, e=2, n=3, u=None, y=None):
    """Build a family; kind is one of szekeres, prop22, prop23, gr4-ddf, gr4-union, prop34."""
    return json.loads(_core.construct(kind, q, e, n, u, y))


def verify(family):
    return json.loads(_core.verify(json.dumps(family)))


def check_thm41_preconditions(family, m):
    return json.loads(_core.check_thm41_preconditions(json.dumps(family), m))


def symmetric_hadamard(family, seed, assignment_seed=None):
    return _core.symmetric_hadamard(json.dumps(family), seed, assignment_seed)


def claim_tests(family, seed):
    return json.loads(_core.claim_tests(json.dumps(family), seed))


def fingerprint(rows):
    return json.loads(_core.fingerprint(rows))


def search(spec):
    return json.loads(_core.search(json.dumps(spec)))
