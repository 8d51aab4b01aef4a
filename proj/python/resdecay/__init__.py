"""Resonance decay amplitudes from the compiled core.

Form factors and quadrature settings are plain dicts using the same schema as
the command-line config files, e.g. ``{"kind": "polynomial", "coefficients": [0, 1]}``.
"""

import json

from . import _core
from ._core import EngineError, exp_integral_e1, halfline_kernel

__all__ = [
    "EngineError",
    "amplitude",
    "crossover_time",
    "decompose",
    "deviation_report",
    "exp_integral_e1",
    "halfline",
    "halfline_kernel",
    "run_cli",
]


def _text(obj):
    return "" if obj is None else json.dumps(obj)


def amplitude(model, energy, width, times, form_factor=None, strategy="auto", quadrature=None):
    """Values and error estimates of one model on a list of times."""
    return _core.amplitude(model, energy, width, list(times), _text(form_factor), strategy, _text(quadrature))


def halfline(energy, width, t, form_factor=None, strategy="auto", quadrature=None):
    return _core.halfline(energy, width, t, _text(form_factor), strategy, _text(quadrature))


def decompose(energy, width, t, form_factor=None, quadrature=None):
    return _core.decompose(energy, width, t, _text(form_factor), _text(quadrature))


def deviation_report(energy, width, tmin, tmax, points, spacing="logarithmic", form_factor=None, quadrature=None):
    text = _core.deviation_report_json(
        energy, width, tmin, tmax, points, spacing, _text(form_factor), _text(quadrature)
    )
    return json.loads(text)


def crossover_time(energy, width, form_factor=None, quadrature=None):
    return _core.crossover_time(energy, width, _text(form_factor), _text(quadrature))


def run_cli(args):
    """Runs the command-line tool in-process; returns (exit_code, stdout, stderr)."""
    return _core.run_cli([str(a) for a in args])
