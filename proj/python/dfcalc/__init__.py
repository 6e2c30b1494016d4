"""Python front end to the dfcalc core.

Every call returns the parsed JSON report, or the text rendering with text=True.
"""

import json

from . import _dfcalc
from ._dfcalc import ParseError, PreconditionError

__all__ = [
    "ParseError",
    "PreconditionError",
    "bbw",
    "bgg_complex",
    "duality",
    "e1",
    "scenario",
    "scenarios",
    "sweep",
]


def _out(raw, text):
    return raw if text else json.loads(raw)


def _fmt(text):
    return "text" if text else "json"


def bbw(label, base="", text=False):
    return _out(_dfcalc.bbw(label, base, _fmt(text)), text)


def e1(fibration, label, bgg=False, discount_flags=False, text=False):
    return _out(_dfcalc.e1(fibration, label, bgg, discount_flags, _fmt(text)), text)


def duality(fibration, label="", random=0, seed=1, bgg=False, text=False):
    return _out(_dfcalc.duality(fibration, label, random, seed, bgg, _fmt(text)), text)


def bgg_complex(fibration, label, text=False):
    return _out(_dfcalc.bgg_complex(fibration, label, _fmt(text)), text)


def sweep(fibration, ranges=(), threads=0, text=False):
    return _out(_dfcalc.sweep(fibration, list(ranges), threads, _fmt(text)), text)


def scenario(name, bundles=(), text=False):
    return _out(_dfcalc.scenario(name, list(bundles), _fmt(text)), text)


def scenarios():
    return list(_dfcalc.scenarios())
