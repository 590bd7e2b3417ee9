"""The default experiment suite: the finite-n checks behind the acceptance run."""

from __future__ import annotations

import math

from .bounds import BoundParams, chromatic_window, clique_upper_hom, corollary_window
from .montecarlo import ExperimentConfig, events_from_bound, run_experiment, summarize
from .model import ModelSpec

SUITE_SEED = 20240601


def default_suite(seed: int = SUITE_SEED, scale: float = 1.0) -> list[ExperimentConfig]:
    """Configs for the homogeneous upper bound, the clique window and the chromatic window.

    ``scale`` shrinks trial counts for smoke runs; 1.0 is the full suite.
    """
    def trials(k):
        return max(1, int(round(k * scale)))

    configs = []
    m30 = ModelSpec(n=30, family="constant", p=0.5)
    hom = clique_upper_hom(30, 0.5, math.log(30))
    configs.append(ExperimentConfig(m30, trials(10_000), seed, tuple(events_from_bound(hom, 30)),
                                    name="clq-upper-hom n=30"))
    params = BoundParams(eta=0.3, gamma=0.1, xi=0.5)
    for n in (100, 300):
        m = ModelSpec(n=n, family="constant", p=0.5)
        w = corollary_window("ii", n, m, params)
        configs.append(ExperimentConfig(m, trials(1000), seed, tuple(events_from_bound(w, n)),
                                        name=f"clq-cor-ii n={n}"))
    m500 = ModelSpec(n=500, family="constant", p=0.5)
    w = chromatic_window("ii", 500, m500, BoundParams(xi=0.5, zeta=0.5))
    configs.append(ExperimentConfig(m500, trials(20), seed, tuple(events_from_bound(w, 500)),
                                    name="chr-thm-ii n=500"))
    return configs


def run_suite(seed: int = SUITE_SEED, workers: int = 1, scale: float = 1.0):
    results = [run_experiment(c, workers=workers) for c in default_suite(seed, scale)]
    return results, summarize(results)
