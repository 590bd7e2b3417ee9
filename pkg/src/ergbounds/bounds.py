"""Finite-n evaluation of the clique and chromatic number bounds.

Every guarantee is reported twice: ``guarantee_raw`` is the formula taken
literally (it can be negative, which makes the bound vacuous at that n) and
``guarantee_clamped`` is its projection onto [0, 1]. Thresholds stay real;
the integer events are omega >= ceil(lower) and omega <= floor(upper).

Decay exponents alpha1/alpha2 are whatever the caller supplies (see
``model.alpha_exponents`` and ``model.limiting_alphas``); the report records
their source.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field, fields
from fractions import Fraction
from typing import NamedTuple

from . import ConstraintError, PreconditionError
from .model import AlphaExponents, ModelSpec, decay_exponents, limiting_alphas

_EXP_MAX = 709.0


def _exp(x: float) -> float:
    if x > _EXP_MAX:
        return math.inf
    return math.exp(x)


def _pow(base: float, exponent: float) -> float:
    try:
        return base ** exponent
    except OverflowError:
        return math.inf


@dataclass(frozen=True)
class BoundParams:
    eta: float | None = None
    gamma: float | None = None
    xi: float | None = None
    zeta: float | None = None
    epsilon: float | None = None
    delta: float | None = None
    a: float | None = None
    beta: float | None = None

    def __post_init__(self):
        for f in fields(self):
            v = getattr(self, f.name)
            if v is not None and not math.isfinite(v):
                raise PreconditionError(f"{f.name} must be finite, got {v}")

    def need(self, *names: str) -> tuple[float, ...]:
        missing = [n for n in names if getattr(self, n) is None]
        if missing:
            raise PreconditionError(f"missing parameter(s): {', '.join(missing)}")
        return tuple(getattr(self, n) for n in names)

    def to_json(self) -> dict:
        return {k: v for k, v in asdict(self).items() if v is not None}


@dataclass(frozen=True)
class BoundReport:
    statement_id: str
    threshold: float
    guarantee_raw: float
    guarantee_clamped: float
    constraints_ok: bool
    vacuous: bool
    details: dict = field(default_factory=dict, compare=False)

    def to_json(self) -> dict:
        return {
            "statement_id": self.statement_id,
            "threshold": self.threshold,
            "guarantee_raw": self.guarantee_raw,
            "guarantee_clamped": self.guarantee_clamped,
            "constraints_ok": self.constraints_ok,
            "vacuous": self.vacuous,
            "details": self.details,
        }


class Window(NamedTuple):
    lower: BoundReport
    upper: BoundReport

    @property
    def integer_window(self) -> tuple[int, int]:
        return event_lower(self.lower.threshold), event_upper(self.upper.threshold)

    def to_json(self) -> dict:
        return {"lower": self.lower.to_json(), "upper": self.upper.to_json()}


def event_lower(threshold: float) -> int:
    """Smallest integer size satisfying ``size >= threshold``."""
    return math.ceil(threshold)


def event_upper(threshold: float) -> int:
    return math.floor(threshold)


def _report(statement_id: str, threshold: float, failure: float, **details) -> BoundReport:
    raw = 1.0 - failure
    clamped = min(1.0, max(0.0, raw))
    details["failure"] = failure
    return BoundReport(statement_id, threshold, raw, clamped, True, raw <= 0.0, details)


def _require(ok: bool, message: str, exc=ConstraintError):
    if not ok:
        raise exc(message)


# ---------------------------------------------------------------- Chernoff

def chernoff_tail(epsilon: float, mean: float) -> float:
    """exp(-eps^2 * mean / 4): bound on P(|T - ET| >= eps ET) for Bernoulli sums."""
    _require(0.0 < epsilon < 1.0 / 6.0,
             f"chernoff hypothesis violated: need 0 < epsilon < 1/6, got {epsilon}")
    _require(mean > 0.0, f"mean must be positive, got {mean}", PreconditionError)
    return math.exp(-epsilon * epsilon * mean / 4.0)


def chernoff_report(epsilon: float, mean: float) -> BoundReport:
    return _report("chernoff", epsilon, chernoff_tail(epsilon, mean), mean=mean)


# ----------------------------------------------------------- upper bounds

def clique_upper_inhom(n: int, u_n: float, log_inv_tn: float) -> BoundReport:
    """P(omega <= u_n) >= 1 - exp(-f_n u_n), f_n = (u_n - 1)/2 log(1/t_n) - log n."""
    _require(n >= 2, f"need n >= 2, got {n}", PreconditionError)
    _require(u_n > 1.0, f"need u_n > 1, got {u_n}", PreconditionError)
    _require(log_inv_tn >= 0.0, f"log(1/t_n) must be >= 0, got {log_inv_tn}", PreconditionError)
    f_n = (u_n - 1.0) / 2.0 * log_inv_tn - math.log(n)
    failure = 0.0 if math.isinf(f_n) else _exp(-f_n * u_n)
    return _report("clq-upper-inhom", u_n, failure, n=n, f_n=f_n, log_inv_tn=log_inv_tn)


def homogeneous_un(n: int, p_n: float, f_n: float) -> float:
    return (2.0 * math.log(n) + 2.0 * f_n) / math.log(1.0 / p_n) + 1.0


def clique_upper_hom(n: int, p_n: float, f_n: float) -> BoundReport:
    """U_n = (2 log n + 2 f_n)/log(1/p_n) + 1 with P(omega <= U_n) >= 1 - exp(-f_n U_n)."""
    _require(0.0 < p_n < 1.0, f"need 0 < p_n < 1, got {p_n}", PreconditionError)
    _require(f_n > 0.0, f"need f_n > 0, got {f_n}", PreconditionError)
    _require(n >= 2, f"need n >= 2, got {n}", PreconditionError)
    u_n = homogeneous_un(n, p_n, f_n)
    return _report("clq-upper-hom", u_n, _exp(-f_n * u_n), n=n, p_n=p_n, f_n=f_n)


# ---------------------------------------------------------- lower bounds

CASES = ("i", "ii", "iii")


def check_clique_case(case: str, alpha1: float, alpha2: float, a: float,
                      eta: float, gamma: float) -> None:
    """Raise ConstraintError naming the first violated inequality of the case."""
    _require(case in CASES, f"unknown case {case!r}", PreconditionError)
    _require(0.0 <= a < 1.0, f"need 0 <= a < 1, got {a}")
    _require(eta > 0.0 and gamma > 0.0, "need eta > 0 and gamma > 0")
    if case == "i":
        _require(0.0 < alpha1 < 2.0, f"case i requires 0 < alpha1 < 2, got alpha1 = {alpha1}")
        _require(eta > max(alpha1 / 2.0, a) + gamma,
                 "clq_condi violated: eta <= max(alpha1/2,a)+gamma")
        _require(eta < 1.0, "clq_condi violated: eta >= 1")
    elif case == "ii":
        _require(alpha1 == 0.0 and alpha2 == 0.0,
                 f"case ii requires alpha1 = alpha2 = 0, got ({alpha1}, {alpha2})")
        _require(gamma > a, "clq_condii violated: gamma <= a")
        _require(eta > gamma, "clq_condii violated: eta <= gamma")
        _require(eta < 1.0, "clq_condii violated: eta >= 1")
    else:
        _require(0.0 < alpha2 < 1.0, f"case iii requires 0 < alpha2 < 1, got alpha2 = {alpha2}")
        _require(eta > max(gamma - alpha2 / 2.0, a),
                 "clq_condiii violated: eta <= max(gamma-alpha2/2,a)")
        _require(eta < 1.0 - alpha2, "clq_condiii violated: eta >= 1-alpha2")


def clique_lower_main(case: str, n: int, p_n: float, a: float, params: BoundParams,
                      alphas: AlphaExponents | None = None) -> BoundReport:
    """Lower clique threshold L_n with guarantee 1 - 3 exp(-n^e).

    Without ``alphas`` the pointwise proxies at (p_n, n) are used.
    """
    _require(0.0 < p_n < 1.0, f"need 0 < p_n < 1, got {p_n}", PreconditionError)
    _require(n >= 2, f"need n >= 2, got {n}", PreconditionError)
    eta, gamma = params.need("eta", "gamma")
    if alphas is None:
        a1, a2 = decay_exponents(p_n, n)
        source = "pointwise"
    else:
        a1, a2, source = alphas.alpha1, alphas.alpha2, alphas.source
    check_clique_case(case, a1, a2, a, eta, gamma)
    scale = math.log(n) / math.log(1.0 / p_n)
    if case == "i":
        threshold, exponent = (1.0 - eta) * scale, 2 * eta - 2 * gamma - a1
    elif case == "ii":
        threshold, exponent = (1.0 - eta) * scale, 2 * eta - 2 * gamma
    else:
        threshold, exponent = (1.0 - a2 - eta) * scale, 2 * eta - 2 * gamma + a2
    failure = 3.0 * _exp(-_pow(n, exponent))
    return _report(f"clq-main-{case}", threshold, failure, n=n, p_n=p_n, a=a,
                   alpha1=a1, alpha2=a2, alpha_source=source, exponent=exponent,
                   event="omega >= threshold")


REGIMES = ("alpha1>2", "alpha2>2", "1<alpha2<2")


def extreme_regimes(n: int, regime: str, alpha: float, epsilon: float) -> BoundReport:
    """Very sparse (omega = 1), very dense (omega = n) and near-complete regimes."""
    _require(regime in REGIMES, f"unknown regime {regime!r}", PreconditionError)
    _require(n >= 2, f"need n >= 2, got {n}", PreconditionError)
    _require(epsilon > 0.0, f"need epsilon > 0, got {epsilon}")
    if regime == "alpha1>2":
        _require(alpha - epsilon > 2.0, "clq_extrem1 hypothesis violated: alpha1-epsilon <= 2")
        return _report("clq-extrem-1", 1.0, _pow(n, -(alpha - epsilon - 2.0)),
                       n=n, alpha1=alpha, epsilon=epsilon, event="omega = 1")
    if regime == "alpha2>2":
        _require(alpha - epsilon > 2.0, "clq_extrem2 hypothesis violated: alpha2-epsilon <= 2")
        return _report("clq-extrem-2", float(n), _pow(n, -(alpha - epsilon - 2.0)),
                       n=n, alpha2=alpha, epsilon=epsilon, event="omega = n")
    _require(1.0 < alpha < 2.0, f"regime requires 1 < alpha2 < 2, got {alpha}")
    lo, hi = 2.0 - alpha - 2.0 * epsilon, 2.0 - alpha + 2.0 * epsilon
    _require(hi < 1.0, f"clq_extrem3 hypothesis violated: 2-alpha2+2*epsilon = {hi:g} >= 1")
    _require(lo > 0.0, "clq_extrem3 hypothesis violated: 2-alpha2-2*epsilon <= 0")
    threshold = n - _pow(n, hi)
    return _report("clq-extrem-3", threshold, _exp(-_pow(n, lo)),
                   n=n, alpha2=alpha, epsilon=epsilon, event="omega >= threshold")


# ---------------------------------------------------------------- windows

def _family_exponent(case: str, model: ModelSpec, family: str, hi: float, name: str) -> float:
    _require(model.family == family,
             f"case {case} needs the {family} family, got {model.family}", PreconditionError)
    theta = model.exponent
    _require(0.0 < theta < hi, f"case {case} hypothesis violated: need 0 < {name} < {hi:g}, "
             f"got {theta}")
    return theta


def _window(statement_id: str, lo: float, hi: float, failure: float, **details) -> Window:
    low = _report(f"{statement_id}:lower", lo, failure, side="lower", **details)
    up = _report(f"{statement_id}:upper", hi, failure, side="upper", **details)
    return Window(low, up)


def corollary_window(case: str, n: int, model: ModelSpec, params: BoundParams) -> Window:
    """Two-sided clique window for the homogeneous families."""
    _require(case in CASES, f"unknown case {case!r}", PreconditionError)
    _require(n >= 2, f"need n >= 2, got {n}", PreconditionError)
    eta, gamma, xi = params.need("eta", "gamma", "xi")
    _require(eta > 0.0 and gamma > 0.0, "need eta > 0 and gamma > 0")
    _require(xi > 0.0, "need xi > 0")
    log_n = math.log(n)
    if case == "i":
        theta = _family_exponent(case, model, "power-law-sparse", 1.0, "theta1")
        _require(eta > theta / 2.0 + gamma, "clq_bd_case1 hypothesis violated: eta <= theta1/2+gamma")
        _require(eta < 1.0, "clq_bd_case1 hypothesis violated: eta >= 1")
        lo, hi = (1.0 - eta) / theta, (2.0 + xi) / theta + 1.0
        terms = [3.0 * _exp(-_pow(n, 2 * eta - 2 * gamma - theta)),
                 _pow(n, -xi * (2.0 + xi) / theta)]
    elif case == "ii":
        _require(model.family == "constant",
                 f"case ii needs the constant family, got {model.family}", PreconditionError)
        p = model.p
        _require(gamma < eta, "clq_bd_case2 hypothesis violated: eta <= gamma")
        _require(eta < 1.0, "clq_bd_case2 hypothesis violated: eta >= 1")
        lp = math.log(1.0 / p)
        lo, hi = (1.0 - eta) * log_n / lp, (2.0 + xi) * log_n / lp
        terms = [3.0 * _exp(-_pow(n, 2 * eta - 2 * gamma)),
                 _exp(-xi * (1.0 + xi) * log_n ** 2 / lp)]
    else:
        theta = _family_exponent(case, model, "near-complete", 1.0, "theta2")
        _require(eta > gamma - theta / 2.0, "clq_bd_case3 hypothesis violated: eta <= gamma-theta2/2")
        _require(eta < 1.0 - theta, "clq_bd_case3 hypothesis violated: eta >= 1-theta2")
        scale = _pow(n, theta) * log_n
        lo, hi = (1.0 - theta - eta) * scale, (2.0 + xi) * scale
        terms = [3.0 * _exp(-_pow(n, 2 * eta - 2 * gamma + theta)),
                 _exp(-xi * (1.0 + xi) * _pow(n, theta) * log_n ** 2)]
    return _window(f"clq-cor-{case}", lo, hi, sum(terms), n=n, family=model.family,
                   failure_terms=terms, event="omega in window")


def chromatic_window(case: str, n: int, model: ModelSpec, params: BoundParams) -> Window:
    """Two-sided chromatic number window for G(n, r_n).

    Case iii's failure term involves eta and gamma although the statement
    does not quantify them; they must be supplied and are checked against
    (1 + theta1)/2 + gamma < eta < 1, the condition attached to them in the
    supporting argument.
    """
    _require(case in CASES, f"unknown case {case!r}", PreconditionError)
    _require(n >= 2, f"need n >= 2, got {n}", PreconditionError)
    xi, zeta = params.need("xi", "zeta")
    _require(xi > 0.0 and zeta > 0.0, "need xi > 0 and zeta > 0")
    log_n = math.log(n)
    notes = []
    if case == "i":
        theta = _family_exponent(case, model, "power-law-sparse", 0.5, "theta2")
        scale = _pow(n, 1.0 - theta) / log_n
        lo, hi = (1.0 - xi) * scale / 2.0, 2.0 * (1.0 + xi) / (1.0 - 2.0 * theta) * scale
        terms = [3.0 * _exp(-_pow(n, 1.0 - theta - zeta)),
                 _exp(-xi * (1.0 + xi) * _pow(n, theta) * log_n ** 2)]
    elif case == "ii":
        _require(model.family == "constant",
                 f"case ii needs the constant family, got {model.family}", PreconditionError)
        lq = math.log(1.0 / (1.0 - model.p))
        lo, hi = (1.0 - xi) * n * lq / (2.0 * log_n), 2.0 * (1.0 + xi) * n * lq / log_n
        terms = [3.0 * _exp(-_pow(n, 1.0 - zeta)),
                 _exp(-xi * (1.0 + xi) * log_n ** 2 / lq)]
    else:
        theta = _family_exponent(case, model, "near-complete", 1.0, "theta1")
        eta, gamma = params.need("eta", "gamma")
        _require(eta > (1.0 + theta) / 2.0 + gamma,
                 "chr_condiii violated: eta <= (1+theta1)/2+gamma")
        _require(eta < 1.0, "chr_condiii violated: eta >= 1")
        lo, hi = (1.0 - xi) * theta * n / (2.0 + theta), (1.0 + xi) * 2.0 * theta * n / (1.0 - theta)
        terms = [3.0 * _exp(-_pow(n, 2 * eta - 2 * gamma - theta)),
                 _pow(n, -xi * (1.0 + xi) / theta)]
        notes.append("failure term uses caller-supplied eta, gamma not quantified in the statement")
    return _window(f"chr-thm-{case}", lo, hi, sum(terms), n=n, family=model.family,
                   failure_terms=terms, event="chi in window", notes=notes)


# ------------------------------------------------------------- recursion

@dataclass(frozen=True)
class RecursionChain:
    q0: int
    p: float
    delta: float
    epsilon: float
    L: int
    a_floor: float
    q_seq: tuple[int, ...]
    v_seq: tuple[float, ...]
    A1: float
    A2: float
    t_bound: float
    hypothesis_ok: bool
    vacuous: bool

    def invariant_violations(self, tol: float = 1e-9) -> list[int]:
        """Indices i where v_i <= q_i <= (p - delta)^i q fails.

        The lower half is not a theorem: each floor step can lose up to
        1 + (p - delta), so the chain only guarantees ``floor_lower(i)``.
        Small q with p - delta near 1/2 or above typically violates it.
        """
        r = self.p - self.delta
        bad = []
        for i, (q_i, v_i) in enumerate(zip(self.q_seq, self.v_seq)):
            top = r ** i * self.q0
            if not (v_i <= q_i + tol * max(1.0, abs(v_i)) and q_i <= top + tol * max(1.0, top)):
                bad.append(i)
        return bad

    def floor_lower(self, i: int) -> float:
        """Guaranteed lower bound (p - delta)^i q - (1 + r)/(1 - r), r = p - delta."""
        r = self.p - self.delta
        return r ** i * self.q0 - (1.0 + r) / (1.0 - r)

    def to_json(self) -> dict:
        out = asdict(self)
        out["q_seq"] = list(self.q_seq)
        out["v_seq"] = list(self.v_seq)
        return out


def recursion_chain(q: int, p: float, delta: float, epsilon: float, L: int,
                    a_floor: float = 0.0) -> RecursionChain:
    """Iterate q_i = floor((p - delta)(q_{i-1} - 1)) and evaluate the tail bound.

    q_seq is computed in exact rational arithmetic on the given floats, so the
    floor is never disturbed by rounding.
    """
    _require(isinstance(q, int) and q >= 1, f"q must be a positive integer, got {q}", PreconditionError)
    _require(0.0 < p < 1.0, f"need 0 < p < 1, got {p}", PreconditionError)
    _require(0.0 < delta < p, f"need 0 < delta < p, got delta = {delta}, p = {p}")
    _require(0.0 < epsilon < 1.0 / 6.0, f"need 0 < epsilon < 1/6, got {epsilon}")
    _require(isinstance(L, int) and L >= 2, f"L must be an integer >= 2, got {L}", PreconditionError)
    ratio = Fraction(p) - Fraction(delta)
    q_seq = [q]
    for _ in range(L):
        q_seq.append(math.floor(ratio * (q_seq[-1] - 1)))
    r = p - delta
    c = 1.0 / (1.0 - p + delta)
    v_seq = [r ** i * q - c for i in range(L + 1)]
    v_L = v_seq[-1]
    L_log_q = L * math.log(q)
    A1 = -L_log_q + math.log(1.0 / (1.0 - p)) * v_L * v_L / 4.0
    A2 = epsilon * delta * v_L * v_L / 10.0 - L_log_q
    t_bound = _exp(-A1) + 2.0 * _exp(-A2)
    hypothesis_ok = v_L >= q ** a_floor
    return RecursionChain(q, p, delta, epsilon, L, a_floor, tuple(q_seq), tuple(v_seq),
                          A1, A2, t_bound, hypothesis_ok, t_bound >= 1.0)


# ---------------------------------------------------------- log estimates

def log_bounds(x: float) -> tuple[float, float, float]:
    """(x, -log(1 - x), x/(1 - x)), strictly increasing for 0 < x < 1."""
    _require(0.0 < x < 1.0, f"need 0 < x < 1, got {x}", PreconditionError)
    triple = (x, -math.log1p(-x), x / (1.0 - x))
    assert triple[0] < triple[1] < triple[2], triple
    return triple


# ------------------------------------------------------- parameter search

FEASIBILITY_CASES = ("clq-i", "clq-ii", "clq-iii", "chr-i", "chr-ii", "chr-iii")


@dataclass(frozen=True)
class Infeasible:
    case: str
    binding: str

    def to_json(self) -> dict:
        return {"case": self.case, "feasible": False, "binding": self.binding}


def _chr_theta22(theta: float, beta: float) -> float:
    return theta / (1.0 - beta)


def feasible(case: str, params: BoundParams, alpha1: float, alpha2: float, a: float) -> bool:
    """Strict check of the case's inequalities on ``params``."""
    eta, gamma, beta = params.eta, params.gamma, params.beta
    if eta is None or gamma is None or not (eta > 0 and gamma > 0):
        return False
    if case.startswith("clq-"):
        try:
            check_clique_case(case[4:], alpha1, alpha2, a, eta, gamma)
        except ConstraintError:
            return False
        return True
    if beta is None:
        return False
    if case == "chr-i":
        theta = alpha1
        if not (0.0 < theta < 0.5 and theta < beta < 1.0):
            return False
        t22 = _chr_theta22(theta, beta)
        return (1.0 - t22) / 2.0 + gamma < eta < 1.0 - t22
    if case == "chr-ii":
        return beta > 0.0 and (1.0 + gamma) / 2.0 < eta < 1.0
    if case == "chr-iii":
        theta = alpha2
        return 0.0 < theta < 1.0 and 0.0 < beta <= 1.0 and (1.0 + theta) / 2.0 + gamma < eta < 1.0
    raise PreconditionError(f"unknown case {case!r}")


def _chr_extra_ok(case: str, params: BoundParams, theta: float, xi: float, zeta: float,
                  n: int | None) -> bool:
    eta, gamma, beta = params.eta, params.gamma, params.beta
    if case == "chr-i":
        t22 = _chr_theta22(theta, beta)
        return ((1 + 0.5 * xi) / ((1 - eta - t22) * (1 - beta)) <= 2 * (1 + xi) / (1 - 2 * theta)
                and (1 - beta) * (2 * eta - 2 * gamma) + theta >= 1 - theta - zeta)
    if case == "chr-ii":
        return ((1 + 0.5 * xi) / ((1 - eta) * (1 - beta)) <= 2 * (1 + xi)
                and (1 - beta) * (2 * eta - 2 * gamma) >= 1 - zeta)
    ok = theta / (2 * (1 - eta)) + beta <= theta / (1 - theta) * (1 + xi)
    if n is not None:
        ok = ok and 0.5 * (beta * n) ** (2 * eta - 2 * gamma - theta) >= n ** (1 - theta - zeta)
    return ok


def _chr_point(case: str, theta: float, t: float) -> BoundParams:
    # t = 1/2 is the midpoint heuristic; t -> 0 pushes beta, gamma and eta
    # toward the infimum of the feasible region
    if case == "chr-i":
        beta = theta + t * (1.0 - 2.0 * theta)
        t22 = _chr_theta22(theta, beta)
        lo0, hi = (1.0 - t22) / 2.0, 1.0 - t22
    elif case == "chr-ii":
        beta = t
        lo0, hi = 0.5, 1.0
    else:
        beta = t
        lo0, hi = (1.0 + theta) / 2.0, 1.0
    gap = hi - lo0
    gamma = gap / 4.0 if t == 0.5 else t * gap / 4.0
    lo = lo0 + (gamma / 2.0 if case == "chr-ii" else gamma)
    eta = (lo + hi) / 2.0 if t == 0.5 else lo + t * (hi - lo)
    return BoundParams(eta=eta, gamma=gamma, beta=beta)


def find_feasible_params(case: str, alpha1: float, alpha2: float, a: float = 0.0,
                         xi: float | None = None, zeta: float | None = None,
                         n: int | None = None) -> BoundParams | Infeasible:
    """Parameters strictly inside the case's constraint set, or the binding constraint.

    gamma takes a quarter of the available gap and eta the midpoint of what
    remains. For chromatic cases with ``xi`` and ``zeta`` given, the point is
    additionally moved toward the infimum of the region until the
    supporting inequalities on the window constants hold.
    """
    if case not in FEASIBILITY_CASES:
        raise PreconditionError(f"unknown case {case!r}")
    if not 0.0 <= a < 1.0:
        return Infeasible(case, "0 <= a < 1")
    if case == "clq-i":
        if not 0.0 < alpha1 < 2.0:
            return Infeasible(case, "0 < alpha1 < 2")
        lo = max(alpha1 / 2.0, a)
        gamma = (1.0 - lo) / 4.0
        params = BoundParams(eta=(lo + gamma + 1.0) / 2.0, gamma=gamma, a=a)
    elif case == "clq-ii":
        if alpha1 != 0.0 or alpha2 != 0.0:
            return Infeasible(case, "alpha1 = alpha2 = 0")
        gamma = a + (1.0 - a) / 4.0
        params = BoundParams(eta=(gamma + 1.0) / 2.0, gamma=gamma, a=a)
    elif case == "clq-iii":
        if not 0.0 < alpha2 < 1.0:
            return Infeasible(case, "0 < alpha2 < 1")
        if not a < 1.0 - alpha2:
            return Infeasible(case, "a < 1-alpha2")
        gamma = (1.0 - alpha2 - a) / 4.0
        lo = max(gamma - alpha2 / 2.0, a)
        params = BoundParams(eta=(lo + 1.0 - alpha2) / 2.0, gamma=gamma, a=a)
    else:
        theta = {"chr-i": alpha1, "chr-ii": 0.0, "chr-iii": alpha2}[case]
        if case == "chr-i" and not 0.0 < theta < 0.5:
            return Infeasible(case, "0 < theta2 < 1/2 (alpha1 of r_n)")
        if case == "chr-ii" and (alpha1 != 0.0 or alpha2 != 0.0):
            return Infeasible(case, "alpha1 = alpha2 = 0")
        if case == "chr-iii" and not 0.0 < theta < 1.0:
            return Infeasible(case, "0 < theta1 < 1 (alpha2 of r_n)")
        params = _chr_point(case, theta, 0.5)
        if xi is not None and zeta is not None:
            for j in range(1, 60):
                cand = _chr_point(case, theta, 0.5 ** j)
                if feasible(case, cand, alpha1, alpha2, a) and _chr_extra_ok(case, cand, theta, xi, zeta, n):
                    params = cand
                    break
            else:
                return Infeasible(case, "window-constant inequalities unmet on the search path")
            params = BoundParams(eta=params.eta, gamma=params.gamma, beta=params.beta,
                                 xi=xi, zeta=zeta, a=a)
        else:
            params = BoundParams(eta=params.eta, gamma=params.gamma, beta=params.beta, a=a)
    if not feasible(case, params, alpha1, alpha2, a):
        return Infeasible(case, "midpoint failed its own predicate")
    return params


# --------------------------------------------------------------- dispatch

STATEMENTS = (
    "chernoff", "clq-upper-inhom", "clq-upper-hom",
    "clq-main-i", "clq-main-ii", "clq-main-iii",
    "clq-extrem-1", "clq-extrem-2", "clq-extrem-3",
    "clq-cor-i", "clq-cor-ii", "clq-cor-iii",
    "chr-thm-i", "chr-thm-ii", "chr-thm-iii",
    "recursion", "log-bounds", "feasible",
)

_PARAM_NAMES = tuple(f.name for f in fields(BoundParams))


def evaluate(statement: str, model: ModelSpec | None = None, **kw):
    """Evaluate one statement by id from keyword arguments.

    Shared by the command line and by experiment configs so both resolve a
    statement identically. ``n`` defaults to ``model.n``.
    """
    if statement not in STATEMENTS:
        raise PreconditionError(f"unknown statement {statement!r}; choose from {', '.join(STATEMENTS)}")
    n = kw.get("n", model.n if model is not None else None)

    def need(*names):
        values = []
        for name in names:
            if name == "n":
                value = n
            else:
                value = kw.get(name)
            if value is None:
                raise PreconditionError(f"{statement} needs {name}")
            values.append(value)
        return values

    def model_at_n():
        if model is None:
            raise PreconditionError(f"{statement} needs a model (family and parameters)")
        return model if n is None or n == model.n else model.with_n(n)

    params = BoundParams(**{k: kw[k] for k in _PARAM_NAMES if kw.get(k) is not None})
    if statement == "chernoff":
        return chernoff_report(*need("epsilon", "mean"))
    if statement == "clq-upper-inhom":
        return clique_upper_inhom(*need("n", "u_n", "log_inv_tn"))
    if statement == "clq-upper-hom":
        p_n = kw.get("p_n") if kw.get("p_n") is not None else model_at_n().p_n
        f_n = math.log(need("n")[0]) if kw.get("fn_log_n") else need("f_n")[0]
        return clique_upper_hom(n, p_n, f_n)
    if statement.startswith("clq-main-"):
        m = model_at_n()
        p_n = kw.get("p_n") if kw.get("p_n") is not None else m.p_n
        if kw.get("alpha1") is not None or kw.get("alpha2") is not None:
            alphas = AlphaExponents(kw.get("alpha1") or 0.0, kw.get("alpha2") or 0.0,
                                    n, p_n, "caller")
        else:
            alphas = limiting_alphas(m)
        return clique_lower_main(statement.rsplit("-", 1)[1], n, p_n, kw.get("a") or 0.0,
                                 params, alphas)
    if statement.startswith("clq-extrem-"):
        regime = {"1": "alpha1>2", "2": "alpha2>2", "3": "1<alpha2<2"}[statement[-1]]
        return extreme_regimes(*need("n"), regime, *need("alpha", "epsilon"))
    if statement.startswith("clq-cor-"):
        return corollary_window(statement.rsplit("-", 1)[1], n, model_at_n(), params)
    if statement.startswith("chr-thm-"):
        return chromatic_window(statement.rsplit("-", 1)[1], n, model_at_n(), params)
    if statement == "recursion":
        q, p, delta, epsilon, L = need("q", "p", "delta", "epsilon", "L")
        return recursion_chain(int(q), p, delta, epsilon, int(L), kw.get("a_floor") or 0.0)
    if statement == "log-bounds":
        return log_bounds(*need("x"))
    case, = need("case")
    return find_feasible_params(case, kw.get("alpha1") or 0.0, kw.get("alpha2") or 0.0,
                                kw.get("a") or 0.0, kw.get("xi"), kw.get("zeta"), kw.get("n"))
