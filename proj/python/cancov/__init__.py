"""Canonical covers of toric rings and Gabriel covers of graded algebras."""

import json

from . import _cancov
from ._cancov import Error, examples, set_threads

__all__ = ["Error", "analyze", "findim", "invariant_factors", "examples", "set_threads"]


def _text(spec):
    return spec if isinstance(spec, str) else json.dumps(spec)


def analyze(ring, cover=False, divisors=(), box=None):
    """Analysis report of a ring spec (dict or JSON text) as a dict."""
    return json.loads(_cancov.analyze(_text(ring), cover, [_text(d) for d in divisors], box))


def findim(algebra, smash=False, skew=None, cutoff=12):
    """Dimension report of an algebra spec (dict or JSON text) as a dict."""
    return json.loads(_cancov.findim(_text(algebra), smash, None if skew is None else str(skew), cutoff))


def invariant_factors(rows):
    """Nonzero Smith invariant factors of an integer matrix."""
    return [int(x) for x in _cancov.invariant_factors(rows)]
