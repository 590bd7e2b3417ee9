import json
import math
from itertools import product

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ergbounds import FormatError, PreconditionError
from ergbounds.bounds import BoundParams, clique_upper_hom, corollary_window
from ergbounds.model import Graph, ModelSpec, n_pairs
from ergbounds.montecarlo import (CSV_COLUMNS, Event, ExperimentConfig, ExperimentResult,
                                  chernoff_frequency, events_from_bound, run_experiment,
                                  summarize, verdict, wilson_interval)

from conftest import brute_omega


def exact_probability(n, p, pred):
    total = 0.0
    m = n_pairs(n)
    for bits in product((False, True), repeat=m):
        k = sum(bits)
        if pred(Graph(n, np.array(bits, dtype=bool))):
            total += p ** k * (1 - p) ** (m - k)
    return total


def config(n, p, events, trials, seed=5):
    return ExperimentConfig(ModelSpec(n=n, family="constant", p=p), trials, seed, tuple(events))


class TestWilson:
    @given(st.integers(1, 10 ** 6), st.data())
    def test_contains_estimate(self, trials, data):
        k = data.draw(st.integers(0, trials))
        lo, hi = wilson_interval(k, trials)
        assert 0.0 <= lo <= k / trials <= hi <= 1.0

    def test_width_shrinks(self):
        w2 = np.subtract(*wilson_interval(50, 100)[::-1])
        w4 = np.subtract(*wilson_interval(5000, 10 ** 4)[::-1])
        assert w4 / w2 == pytest.approx(0.1, rel=0.05)

    def test_zero_trials(self):
        with pytest.raises(PreconditionError):
            wilson_interval(0, 0)


def test_verdicts():
    ev = Event("omega<=", hi=3, guarantee=0.99)
    assert verdict(ev, 0, 1000) == "consistent"
    assert verdict(ev, 100, 1000) == "violated"
    assert verdict(Event("omega<=", hi=3, guarantee=0.0), 1000, 1000) == "bound-vacuous"
    assert verdict(Event("omega<=", hi=3), 1000, 1000) == "no-bound"


def test_event_validation():
    with pytest.raises(PreconditionError):
        Event("omega-in", lo=5, hi=3)
    with pytest.raises(PreconditionError):
        Event("omega>=", lo=None)
    with pytest.raises(PreconditionError):
        Event("edges-within", epsilon=math.inf)
    with pytest.raises(PreconditionError):
        Event("diameter<=", hi=3)


def test_n4_clique_frequency():
    r = run_experiment(config(4, 0.5, [Event("omega>=", lo=2)], 10 ** 5))
    assert exact_probability(4, 0.5, lambda g: g.num_edges > 0) == 63 / 64
    assert abs(r.outcomes[0].freq - 63 / 64) <= 0.005


@pytest.mark.parametrize("p", [0.25, 0.5, 0.75])
def test_enumerable_frequencies(p):
    n = 5
    events = [Event("omega>=", lo=3), Event("omega<=", hi=2), Event("omega-in", lo=2, hi=3),
              Event("chi-in", lo=3, hi=4)]
    from conftest import brute_chi
    exact = [exact_probability(n, p, lambda g: brute_omega(g) >= 3),
             exact_probability(n, p, lambda g: brute_omega(g) <= 2),
             exact_probability(n, p, lambda g: 2 <= brute_omega(g) <= 3),
             exact_probability(n, p, lambda g: 3 <= brute_chi(g) <= 4)]
    r = run_experiment(config(n, p, events, 10 ** 5, seed=17))
    for o, ref in zip(r.outcomes, exact):
        assert o.undecided == 0
        se = math.sqrt(max(ref * (1 - ref), 1e-12) / o.trials)
        assert abs(o.freq - ref) <= 5 * se, (o.event.label, o.freq, ref)


def test_determinism_and_workers():
    cfg = config(12, 0.5, [Event("omega-in", lo=3, hi=5), Event("chi-in", lo=3, hi=6)], 300)
    a = json.dumps(run_experiment(cfg).to_json())
    assert a == json.dumps(run_experiment(cfg).to_json())
    assert a == json.dumps(run_experiment(cfg, workers=4, chunk=7).to_json())
    assert json.loads(a)["outcomes"][0]["undecided"] == 0


def test_trials_extend():
    ev = [Event("omega>=", lo=4)]
    small = run_experiment(config(10, 0.5, ev, 64, seed=3), chunk=64)
    big = run_experiment(config(10, 0.5, ev, 128, seed=3), chunk=64)
    first = run_experiment(config(10, 0.5, ev, 128, seed=3), chunk=64)
    assert big == first
    assert small.outcomes[0].successes <= big.outcomes[0].successes


def test_undecided_counted():
    cfg = ExperimentConfig(ModelSpec(n=200, family="constant", p=0.5), 3, 1,
                           (Event("omega>=", lo=12),), budget=2)
    o = run_experiment(cfg).outcomes[0]
    assert o.successes + o.failures + o.undecided == 3
    assert o.undecided > 0


def test_hom_bound_no_failures():
    ev = events_from_bound(clique_upper_hom(30, 0.5, math.log(30)), 30)
    assert ev[0].kind == "omega<=" and ev[0].hi == 20
    o = run_experiment(config(30, 0.5, ev, 2000)).outcomes[0]
    assert o.failures == 0 and o.verdict == "consistent"


def test_config_json_with_bound():
    data = {"model": {"n": 100, "family": "constant", "p": 0.5}, "trials": 3,
            "events": [{"bound": {"statement": "clq-cor-ii", "eta": 0.3, "gamma": 0.1, "xi": 0.5}},
                       {"kind": "edges-within", "epsilon": 0.1}]}
    cfg = ExperimentConfig.from_json(data, seed=9)
    assert cfg.events[0].lo == 5 and cfg.events[0].hi == 16
    assert cfg.events[0].statement_id == "clq-cor-ii"
    with pytest.raises(PreconditionError):
        ExperimentConfig.from_json(data)
    with pytest.raises(FormatError):
        ExperimentConfig.from_json({"trials": 3})


def test_result_round_trip():
    r = run_experiment(config(8, 0.5, [Event("omega<=", hi=4, guarantee=0.5)], 50))
    text = json.dumps(r.to_json())
    r2 = ExperimentResult.from_json(json.loads(text))
    assert json.dumps(r2.to_json()) == text


class TestSummarize:
    def test_empty(self):
        assert summarize([]) == ",".join(CSV_COLUMNS) + "\n"

    def test_one_row_populated(self):
        ev = events_from_bound(clique_upper_hom(30, 0.5, math.log(30)), 30)
        r = run_experiment(config(30, 0.5, ev, 20))
        lines = summarize([r]).splitlines()
        assert len(lines) == 2
        row = dict(zip(CSV_COLUMNS, lines[1].split(",")))
        blank = [k for k, v in row.items() if v == ""]
        assert blank == ["threshold_lo"]  # one-sided event

    def test_window_row_fully_populated_and_sorted(self):
        results = []
        for n in (300, 100):
            w = corollary_window("ii", n, ModelSpec(n=n, family="constant", p=0.5),
                                 BoundParams(eta=0.3, gamma=0.1, xi=0.5))
            results.append(run_experiment(config(n, 0.5, events_from_bound(w, n), 5)))
        lines = summarize(results).splitlines()
        assert [line.split(",")[1] for line in lines[1:]] == ["100", "300"]
        assert all(v != "" for v in lines[1].split(","))

    def test_mixed_versions(self):
        r = run_experiment(config(6, 0.5, [Event("omega>=", lo=2)], 5))
        old = ExperimentResult(r.config, r.outcomes, version="0.0.1")
        with pytest.raises(FormatError):
            summarize([r, old])


def test_chernoff_frequency_deterministic():
    a = chernoff_frequency(500, 0.5, 0.1, 1000, 4)
    assert a == chernoff_frequency(500, 0.5, 0.1, 1000, 4)
    assert 0 <= a[0] <= 1000
