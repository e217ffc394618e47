"""Equations over groups: radicals, witnesses and certificates.

Structured arguments and results are plain dicts in the same JSON shapes the
eqgeo command line tool reads and writes. Relative group paths inside a dict
resolve against ``base_dir``.
"""

import json
import os

from . import _eqgeo
from ._eqgeo import BudgetExceeded, Error, Group, Undecided, ValidationError

__all__ = [
    "BudgetExceeded", "Error", "Group", "Undecided", "ValidationError",
    "load_group", "witness", "check", "certificate_text", "decompose", "closure",
    "chain", "qmodz_demo", "quotient_eq", "r_member",
]


def _dir(base_dir):
    return os.fspath(base_dir) if base_dir else ""


def load_group(spec, base_dir=None):
    """A group from a definition dict, or from a path to a definition file."""
    if isinstance(spec, (str, os.PathLike)):
        return _eqgeo.load_group_file(os.fspath(spec))
    return _eqgeo.load_group(json.dumps(spec), _dir(base_dir))


def witness(tuple_set, method="auto", budget=0, base_dir=None):
    """Certificate dict for a finite witness of the tuple set."""
    return json.loads(_eqgeo.witness(json.dumps(tuple_set), method, budget, _dir(base_dir)))


def certificate_text(certificate):
    """Canonical text of a certificate, the exact bytes ``check`` accepts."""
    return _eqgeo.certificate_text(json.dumps(certificate))


def check(certificate):
    """Re-validate a certificate given as canonical text or as a dict."""
    text = certificate if isinstance(certificate, str) else certificate_text(certificate)
    return json.loads(_eqgeo.check(text))


def decompose(group, word, lambda_):
    return json.loads(_eqgeo.decompose(group, word, list(lambda_)))


def closure(tuple_set, budget=0, base_dir=None):
    return json.loads(_eqgeo.closure(json.dumps(tuple_set), budget, _dir(base_dir)))


def chain(sets, window=16, budget=0, base_dir=None):
    """Monitor an ascending chain given as a list of cumulative tuple sets."""
    return json.loads(_eqgeo.chain([json.dumps(s) for s in sets], window, budget, _dir(base_dir)))


def qmodz_demo(k):
    return json.loads(_eqgeo.qmodz_demo(k))


def quotient_eq(union, p, q, base_dir=None):
    return _eqgeo.quotient_eq(json.dumps(union), p, q, _dir(base_dir))


def r_member(union, word, base_dir=None):
    return json.loads(_eqgeo.r_member(json.dumps(union), word, _dir(base_dir)))
