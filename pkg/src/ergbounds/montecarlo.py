"""Seeded Monte Carlo checks of the bounds.

Trial t of an experiment always samples ``sample_graph(matrix, seed, t)``,
so adding trials extends a run rather than reshuffling it, and the result
does not depend on how trials are scheduled across workers.

Events are decided from certified solver output. A trial whose solver
interval straddles the event threshold is counted as undecided; it is never
counted as a success.
"""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from statistics import NormalDist

import numpy as np

from . import FormatError, PreconditionError, __version__, rng
from .bounds import BoundReport, Window, evaluate, event_lower, event_upper
from .model import ModelSpec, build_matrix, sample_graph
from .solvers import DEFAULT_BUDGET, chromatic_exact, max_clique

Z95 = NormalDist().inv_cdf(0.975)
EVENT_KINDS = ("omega>=", "omega<=", "omega-in", "chi-in", "edges-within")
CSV_COLUMNS = ("statement_id", "n", "family", "params", "event", "threshold_lo", "threshold_hi",
               "trials", "successes", "undecided", "freq", "wilson_lo", "wilson_hi",
               "guarantee", "verdict")


def wilson_interval(successes: int, trials: int, z: float = Z95) -> tuple[float, float]:
    """Wilson score interval; always contains successes/trials."""
    if trials <= 0:
        raise PreconditionError("trials must be positive")
    phat = successes / trials
    z2 = z * z
    denom = 1.0 + z2 / trials
    center = (phat + z2 / (2 * trials)) / denom
    half = z * math.sqrt(phat * (1.0 - phat) / trials + z2 / (4.0 * trials * trials)) / denom
    return min(phat, max(0.0, center - half)), max(phat, min(1.0, center + half))


@dataclass(frozen=True)
class Event:
    """An event on one sampled graph, optionally tied to a bound's guarantee.

    ``lo``/``hi`` are integer size thresholds; ``epsilon`` is the relative
    deviation for ``edges-within``. ``guarantee`` is a lower bound on the
    event's probability (clamped to [0, 1]).
    """

    kind: str
    lo: int | None = None
    hi: int | None = None
    epsilon: float | None = None
    statement_id: str | None = None
    guarantee: float | None = None

    def __post_init__(self):
        if self.kind not in EVENT_KINDS:
            raise PreconditionError(f"unknown event kind {self.kind!r}")
        needs = {"omega>=": ("lo",), "omega<=": ("hi",), "omega-in": ("lo", "hi"),
                 "chi-in": ("lo", "hi"), "edges-within": ("epsilon",)}[self.kind]
        for name in needs:
            value = getattr(self, name)
            if value is None or not math.isfinite(value):
                raise PreconditionError(f"{self.kind} event needs a finite {name}")
        if self.lo is not None and self.hi is not None and self.lo > self.hi:
            raise PreconditionError(f"inconsistent thresholds: lo = {self.lo} > hi = {self.hi}")

    @property
    def label(self) -> str:
        if self.kind == "omega>=":
            return f"omega>={self.lo}"
        if self.kind == "omega<=":
            return f"omega<={self.hi}"
        if self.kind == "omega-in":
            return f"omega in [{self.lo},{self.hi}]"
        if self.kind == "chi-in":
            return f"chi in [{self.lo},{self.hi}]"
        return f"|edges-mean|<{self.epsilon!r}*mean"

    def to_json(self) -> dict:
        out = {"kind": self.kind}
        for name in ("lo", "hi", "epsilon", "statement_id", "guarantee"):
            if getattr(self, name) is not None:
                out[name] = getattr(self, name)
        return out

    @classmethod
    def from_json(cls, data: dict) -> Event:
        allowed = {"kind", "lo", "hi", "epsilon", "statement_id", "guarantee"}
        if not isinstance(data, dict) or not set(data) <= allowed or "kind" not in data:
            raise FormatError(f"bad event record {data!r}")
        return cls(**data)


def events_from_bound(result, n: int) -> list[Event]:
    """Integer event(s) implied by an evaluated bound."""
    if isinstance(result, Window):
        lo, hi = result.integer_window
        sid = result.lower.statement_id.split(":")[0]
        kind = "chi-in" if sid.startswith("chr-") else "omega-in"
        return [Event(kind, lo=lo, hi=hi, statement_id=sid, guarantee=result.lower.guarantee_clamped)]
    if not isinstance(result, BoundReport):
        raise PreconditionError("only bound reports and windows define events")
    sid, g = result.statement_id, result.guarantee_clamped
    if sid in ("clq-upper-hom", "clq-upper-inhom"):
        return [Event("omega<=", hi=event_upper(result.threshold), statement_id=sid, guarantee=g)]
    if sid.startswith("clq-main-") or sid == "clq-extrem-3":
        return [Event("omega>=", lo=event_lower(result.threshold), statement_id=sid, guarantee=g)]
    if sid == "clq-extrem-1":
        return [Event("omega<=", hi=1, statement_id=sid, guarantee=g)]
    if sid == "clq-extrem-2":
        return [Event("omega>=", lo=n, statement_id=sid, guarantee=g)]
    if sid == "chernoff":
        return [Event("edges-within", epsilon=result.threshold, statement_id=sid, guarantee=g)]
    raise PreconditionError(f"no event defined for {sid}")


@dataclass(frozen=True)
class ExperimentConfig:
    model: ModelSpec
    trials: int
    seed: int
    events: tuple[Event, ...]
    budget: int = DEFAULT_BUDGET
    name: str = ""

    def __post_init__(self):
        if not isinstance(self.trials, int) or self.trials < 1:
            raise PreconditionError(f"trials must be a positive integer, got {self.trials!r}")
        if not self.events:
            raise PreconditionError("an experiment needs at least one event")
        object.__setattr__(self, "events", tuple(self.events))

    def to_json(self) -> dict:
        return {"name": self.name, "model": self.model.to_json(), "trials": self.trials,
                "seed": self.seed, "budget": self.budget,
                "events": [e.to_json() for e in self.events]}

    @classmethod
    def from_json(cls, data: dict, seed: int | None = None) -> ExperimentConfig:
        """Parse a config; ``{"bound": {"statement": ..., ...}}`` entries expand to events."""
        if not isinstance(data, dict) or "model" not in data or "events" not in data:
            raise FormatError("experiment config needs 'model' and 'events'")
        model = ModelSpec.from_json(data["model"])
        if seed is None:
            seed = data.get("seed")
        if seed is None:
            raise PreconditionError("an experiment needs an explicit seed")
        events: list[Event] = []
        for entry in data["events"]:
            if isinstance(entry, dict) and "bound" in entry:
                spec = dict(entry["bound"])
                statement = spec.pop("statement", None)
                if statement is None:
                    raise FormatError("bound entries need a 'statement'")
                events.extend(events_from_bound(evaluate(statement, model=model, **spec), model.n))
            else:
                events.append(Event.from_json(entry))
        return cls(model=model, trials=data.get("trials", 1), seed=int(seed), events=tuple(events),
                   budget=data.get("budget", DEFAULT_BUDGET), name=data.get("name", ""))


@dataclass(frozen=True)
class EventOutcome:
    event: Event
    trials: int
    successes: int
    failures: int
    undecided: int
    freq: float
    wilson_lo: float
    wilson_hi: float
    verdict: str

    def to_json(self) -> dict:
        return {"event": self.event.to_json(), "label": self.event.label, "trials": self.trials,
                "successes": self.successes, "failures": self.failures,
                "undecided": self.undecided, "freq": self.freq, "wilson_lo": self.wilson_lo,
                "wilson_hi": self.wilson_hi, "guarantee": self.event.guarantee,
                "verdict": self.verdict}

    @classmethod
    def from_json(cls, data: dict) -> EventOutcome:
        return cls(Event.from_json(data["event"]), data["trials"], data["successes"],
                   data["failures"], data["undecided"], data["freq"], data["wilson_lo"],
                   data["wilson_hi"], data["verdict"])


@dataclass(frozen=True)
class ExperimentResult:
    config: ExperimentConfig
    outcomes: tuple[EventOutcome, ...]
    version: str = __version__
    provenance: dict = field(default_factory=dict, compare=False)

    def to_json(self) -> dict:
        return {"config": self.config.to_json(),
                "outcomes": [o.to_json() for o in self.outcomes],
                "provenance": {"artifact_version": self.version, **self.provenance}}

    @classmethod
    def from_json(cls, data: dict) -> ExperimentResult:
        try:
            cfg = data["config"]
            config = ExperimentConfig(
                model=ModelSpec.from_json(cfg["model"]), trials=cfg["trials"], seed=cfg["seed"],
                events=tuple(Event.from_json(e) for e in cfg["events"]),
                budget=cfg.get("budget", DEFAULT_BUDGET), name=cfg.get("name", ""))
            outcomes = tuple(EventOutcome.from_json(o) for o in data["outcomes"])
            version = data["provenance"]["artifact_version"]
        except (KeyError, TypeError) as exc:
            raise FormatError(f"malformed experiment result: {exc}") from exc
        return cls(config, outcomes, version)


def verdict(event: Event, failures: int, trials: int) -> str:
    """consistent / violated / bound-vacuous, or no-bound for plain events.

    Violated only when the Wilson lower end of the certified failure rate
    exceeds the failure rate the guarantee permits.
    """
    if event.guarantee is None:
        return "no-bound"
    if event.guarantee <= 0.0:
        return "bound-vacuous"
    fail_lo, _ = wilson_interval(failures, trials)
    return "violated" if fail_lo > 1.0 - event.guarantee else "consistent"


def _decide(kind: str, lo_cert: int, hi_cert: int, event: Event) -> int:
    # +1 certified success, -1 certified failure, 0 undecided
    if kind == "omega>=":
        return 1 if lo_cert >= event.lo else (-1 if hi_cert < event.lo else 0)
    if kind == "omega<=":
        return 1 if hi_cert <= event.hi else (-1 if lo_cert > event.hi else 0)
    # interval containment
    if event.lo <= lo_cert and hi_cert <= event.hi:
        return 1
    if hi_cert < event.lo or lo_cert > event.hi:
        return -1
    return 0


def evaluate_trial(config: ExperimentConfig, matrix, trial: int) -> tuple[int, ...]:
    g = sample_graph(matrix, config.seed, trial)
    omega = chi = None
    status = []
    for ev in config.events:
        if ev.kind.startswith("omega"):
            if omega is None:
                omega = max_clique(g, config.budget).interval
            status.append(_decide(ev.kind, omega[0], omega[1], ev))
        elif ev.kind == "chi-in":
            if chi is None:
                chi = chromatic_exact(g, config.budget).interval
            status.append(_decide(ev.kind, chi[0], chi[1], ev))
        else:
            mean = float(matrix.upper.sum())
            status.append(1 if abs(g.num_edges - mean) < ev.epsilon * mean else -1)
    return tuple(status)


def run_experiment(config: ExperimentConfig, workers: int = 1, chunk: int = 64) -> ExperimentResult:
    """Run all trials and aggregate per event; output is independent of ``workers``."""
    matrix = build_matrix(config.model)

    def run_block(start: int) -> list[tuple[int, ...]]:
        stop = min(start + chunk, config.trials)
        return [evaluate_trial(config, matrix, t) for t in range(start, stop)]

    starts = range(0, config.trials, chunk)
    if workers <= 1:
        blocks = [run_block(s) for s in starts]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            blocks = list(pool.map(run_block, starts))
    statuses = np.array([row for block in blocks for row in block], dtype=np.int8)
    outcomes = []
    for k, ev in enumerate(config.events):
        col = statuses[:, k]
        succ, fail = int((col == 1).sum()), int((col == -1).sum())
        und = config.trials - succ - fail
        lo, hi = wilson_interval(succ, config.trials)
        outcomes.append(EventOutcome(ev, config.trials, succ, fail, und, succ / config.trials,
                                     lo, hi, verdict(ev, fail, config.trials)))
    return ExperimentResult(config, tuple(outcomes))


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return repr(x)
    return str(x)


def summarize(results) -> str:
    """CSV table, one row per (experiment, event), rows ordered by n ascending."""
    results = list(results)
    versions = {r.version for r in results}
    if len(versions) > 1:
        raise FormatError(f"results come from different artifact versions: {sorted(versions)}")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in sorted(results, key=lambda r: r.config.model.n):
        m = r.config.model
        for o in r.outcomes:
            ev = o.event
            lo, hi = ev.lo, ev.hi
            if ev.kind == "edges-within":
                lo = hi = ev.epsilon
            writer.writerow([_fmt(x) for x in (
                ev.statement_id, m.n, m.family, m.params_label(), ev.label, lo, hi, o.trials,
                o.successes, o.undecided, o.freq, o.wilson_lo, o.wilson_hi, ev.guarantee,
                o.verdict)])
    return buf.getvalue()


def chernoff_frequency(m: int, p: float, epsilon: float, trials: int, seed: int) -> tuple[int, float]:
    """Count of |T - mT| >= eps*mT over ``trials`` draws of T ~ Binomial(m, p).

    Returns (count, Monte Carlo standard error of the frequency).
    """
    draws = rng.stream(seed, 0).binomial(m, p, size=trials)
    mean = m * p
    hits = int((np.abs(draws - mean) >= epsilon * mean).sum())
    freq = hits / trials
    return hits, math.sqrt(max(freq * (1.0 - freq), 0.0) / trials)


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"
