"""Sampled-data pendulum simulation and spectral-submanifold reduced models."""

import json as _json

from ._fssm import (
    ControllerConfig,
    ManifoldModel,
    ParametricModel,
    PendulumParams,
    average_delay,
    correlation_dimension,
    dtw_nmte,
    embed,
    fft_peaks,
    fit_geometry,
    ks_statistics,
    lyapunov_data,
    mechanical_energy,
    quantize,
    rho,
    simulate,
)
from . import _fssm


def fit_node(series, dt, m=12, d=4):
    """Fit one parameter node from observable series sampled every `dt`."""
    return _json.loads(_fssm.fit_node_json([list(s) for s in series], dt, m, d))


def parametric(nodes, mode="linear"):
    """Parametric model from node dicts returned by fit_node."""
    return ParametricModel([_json.dumps(n) for n in nodes], mode)


def portrait(model, mu, orbits=False):
    return _json.loads(model.portrait_json(mu, orbits))


def run_chaos(params, controller, h=None, t_end=None, seed=1):
    kw = {"seed": seed}
    if h is not None:
        kw["h"] = h
    if t_end is not None:
        kw["t_end"] = t_end
    return _json.loads(_fssm.run_chaos_json(params, controller, **kw))


__all__ = [n for n in dir() if not n.startswith("_")]
