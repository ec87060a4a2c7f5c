"""k-star decompositions of random regular graphs."""

import json

from ._core import *  # noqa: F401,F403
from ._core import run_trials_json, weak_certificate_json


def weak_certificate(d, k, grid_step=1e-4, curves=False):
    return json.loads(weak_certificate_json(d, k, grid_step, curves))


def run_trials(d, k, N, trials, a_mode="random", seed=0, threads=1, records=False):
    return json.loads(run_trials_json(d, k, N, trials, a_mode, seed, threads, records))
