"""Python access to the orbiclan core.

Documents may be passed as JSON text or as already-parsed dicts; results
come back parsed.
"""

import json
import os

from . import _core
from ._core import OrbiclanError, RefusalError

__all__ = [
    "OrbiclanError",
    "RefusalError",
    "validate",
    "cocycles",
    "run",
    "sweep",
    "export",
    "reference_algebra",
    "morita_profile",
    "compare_morita",
]


def _text(doc):
    if isinstance(doc, (dict, list)):
        return json.dumps(doc)
    return doc


def validate(doc):
    return json.loads(_core.validate(_text(doc)))


def cocycles(doc, cap=4096):
    return json.loads(_core.cocycles(_text(doc), cap))


def run(doc, flavor="both", degree_cap=32, cocycle_cap=4096, potential="second-twisted"):
    """Returns (report, exit_code)."""
    report, code = _core.run(_text(doc), flavor, degree_cap, cocycle_cap, potential)
    return json.loads(report), code


def sweep(directory, flavor="both", degree_cap=32, cocycle_cap=4096, potential="second-twisted"):
    """Returns (summary, exit_code)."""
    summary, code = _core.sweep(os.fspath(directory), flavor, degree_cap, cocycle_cap, potential)
    return json.loads(summary), code


def export(doc, cocycle=0, flavor="b", potential="second-twisted"):
    return json.loads(_core.export(_text(doc), cocycle, flavor, potential))


def reference_algebra(name):
    return json.loads(_core.reference_algebra(name))


def morita_profile(algebra):
    return json.loads(_core.morita_profile(_text(algebra)))


def compare_morita(p, q):
    return json.loads(_core.compare_morita(_text(p), _text(q)))
