"""Closed-form deterministic and probabilistic forward-error bounds.

All bounds are pure functions of (n, u, lambda, kappa, K1, K2) packaged in a
:class:`BoundQuery`.  Probabilistic bounds hold with probability at least
1 - lambda; the deterministic textbook bound holds with probability 1.

Conventions:

* ``gamma(n, t) = (1 + t)**n - 1``, evaluated in the numerically stable
  expm1/log1p form (bound sweeps go up to n ~ 1e9);
* ``log(n)`` inside pairwise bounds means the tree height
  ``h = ceil(log2(n))``, matching the zero-padded summation tree;
* the Hallman-Ipsen comparison bound takes a total failure probability and
  splits it evenly between its two parameters unless told otherwise;
* pairwise two-pass bounds are obtained from the flat two-pass formulas by
  substituting the tree height for n; they are flagged ``by_analogy`` in the
  output because they are constructed, not quoted.

Bound values are diagnostics evaluated in carrier precision, not certified
enclosures (no directed rounding).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, replace
from enum import Enum

from .fp_core import InvalidInputError

__all__ = [
    "BiasPrediction",
    "BoundQuery",
    "BoundValue",
    "DomainError",
    "Method",
    "Regime",
    "UndefinedBoundError",
    "asymptotic_textbook_bound",
    "evaluate_all",
    "gamma",
    "methods_for_algorithm",
    "pairwise_height",
    "textbook_bias_prediction",
    "twopass_bias_prediction",
]


class DomainError(InvalidInputError):
    """A bound was evaluated outside its parameter domain."""


class UndefinedBoundError(DomainError):
    """A required condition number is an infinite sentinel."""


class Method(str, Enum):
    DET_TEXTBOOK = "det_textbook"
    BC_PAIRWISE_SUM = "bc_pairwise_sum"
    AH_PAIRWISE_SUM = "ah_pairwise_sum"
    HI_PAIRWISE_SUM = "hi_pairwise_sum"
    BC_RECURSIVE_SUM = "bc_recursive_sum"
    AH_RECURSIVE_SUM = "ah_recursive_sum"
    BC_TEXTBOOK = "bc_textbook"
    AH_TEXTBOOK = "ah_textbook"
    DM_TEXTBOOK = "dm_textbook"
    BC_TWOPASS = "bc_twopass"
    AH_TWOPASS = "ah_twopass"
    BC_PAIRWISE_TEXTBOOK = "bc_pairwise_textbook"
    AH_PAIRWISE_TEXTBOOK = "ah_pairwise_textbook"
    BC_PAIRWISE_TWOPASS = "bc_pairwise_twopass"
    AH_PAIRWISE_TWOPASS = "ah_pairwise_twopass"


class Regime(str, Enum):
    SMALL_NU = "small_nu"  # n*u << 1
    LARGE_NU = "large_nu"  # n*u >> 1 and n*u^2 << 1


@dataclass(frozen=True)
class BoundQuery:
    """Inputs to any closed-form bound.

    ``lam`` is the failure probability (unused by deterministic bounds);
    condition numbers default to NaN so that a bound needing one of them
    fails loudly instead of silently producing NaN output.
    """

    n: int
    u: float
    lam: float = 0.1
    kappa: float = math.nan
    k1: float = math.nan
    k2: float = math.nan

    def __post_init__(self) -> None:
        if self.n < 1:
            raise DomainError(f"n must be >= 1, got {self.n}")
        if not 0.0 <= self.u <= 0.5:
            raise DomainError(f"u must be in [0, 1/2], got {self.u}")
        if self.n * self.u * self.u >= 1.0:
            warnings.warn(
                "n*u^2 >= 1: gamma values are exact but the probabilistic "
                "bounds are vacuous in this regime",
                stacklevel=2,
            )

    def with_lambda(self, lam: float) -> "BoundQuery":
        return replace(self, lam=lam)


@dataclass(frozen=True)
class BoundValue:
    method: Method
    value: float
    holds_with_probability: float
    by_analogy: bool = False

    def __post_init__(self) -> None:
        if self.value < 0.0:
            raise DomainError(f"bound value must be >= 0, got {self.value}")


def gamma(n: int, t: float) -> float:
    """gamma_n(t) = (1 + t)**n - 1 via the stable exp/log form."""
    if n < 0:
        raise DomainError(f"gamma needs n >= 0, got {n}")
    if t <= -1.0:
        raise DomainError(f"gamma needs t > -1, got {t}")
    if n == 0:
        return 0.0
    if n == 1:
        return t
    return math.expm1(n * math.log1p(t))


def pairwise_height(n: int) -> int:
    """Summation-tree height: h = ceil(log2(n)), 0 for n == 1."""
    return int(math.ceil(math.log2(n))) if n > 1 else 0


def _check_lambda(lam: float, name: str = "lambda") -> None:
    if not 0.0 < lam < 1.0:
        raise DomainError(f"{name} must be in (0, 1), got {lam}")


def _need(value: float, name: str) -> float:
    if math.isnan(value):
        raise DomainError(f"bound requires {name}")
    if math.isinf(value):
        raise UndefinedBoundError(f"{name} is an infinite sentinel")
    return value


# ---------------------------------------------------------------------------
# summation bounds
# ---------------------------------------------------------------------------


def bc_pairwise_sum_bound(q: BoundQuery) -> BoundValue:
    """Bienayme-Chebyshev pairwise bound: kappa * sqrt(gamma_h(u^2)/lambda)."""
    _check_lambda(q.lam)
    kappa = _need(q.kappa, "kappa")
    h = pairwise_height(q.n)
    value = kappa * math.sqrt(gamma(h, q.u * q.u) / q.lam)
    return BoundValue(Method.BC_PAIRWISE_SUM, value, 1.0 - q.lam)


def ah_pairwise_sum_bound(q: BoundQuery) -> BoundValue:
    """Azuma-Hoeffding pairwise bound: kappa*sqrt(u*gamma_2h(u))*sqrt(ln(2/lambda))."""
    _check_lambda(q.lam)
    kappa = _need(q.kappa, "kappa")
    h = pairwise_height(q.n)
    value = kappa * math.sqrt(q.u * gamma(2 * h, q.u)) * math.sqrt(math.log(2.0 / q.lam))
    return BoundValue(Method.AH_PAIRWISE_SUM, value, 1.0 - q.lam)


def hallman_ipsen_bound(
    q: BoundQuery, eta: float | None = None, delta: float | None = None
) -> BoundValue:
    """Comparison pairwise bound: kappa*u*sqrt(h)*sqrt(2 ln(2/delta))*(1+phi).

    Holds with probability 1 - (eta + delta).  When eta/delta are omitted the
    query's total failure probability is split evenly between them.
    """
    if eta is None and delta is None:
        _check_lambda(q.lam)
        eta = delta = q.lam / 2.0
    if eta is None or delta is None:
        raise DomainError("give both eta and delta, or neither")
    _check_lambda(eta, "eta")
    _check_lambda(delta, "delta")
    if eta + delta >= 1.0:
        raise DomainError(f"eta + delta must be < 1, got {eta + delta}")
    kappa = _need(q.kappa, "kappa")
    h = pairwise_height(q.n)
    lam_n_eta = math.sqrt(2.0 * math.log(2.0 * q.n / eta))
    phi = lam_n_eta * math.sqrt(2.0 * h) * q.u * math.exp(lam_n_eta**2 * h * q.u * q.u)
    value = kappa * q.u * math.sqrt(h) * math.sqrt(2.0 * math.log(2.0 / delta)) * (1.0 + phi)
    return BoundValue(Method.HI_PAIRWISE_SUM, value, 1.0 - (eta + delta))


def bc_recursive_sum_bound(q: BoundQuery) -> BoundValue:
    """Recursive-sum bound used inside the textbook analyses (BC form)."""
    _check_lambda(q.lam)
    kappa = _need(q.kappa, "kappa")
    value = kappa * math.sqrt(2.0 * gamma(q.n - 1, q.u * q.u) / q.lam)
    return BoundValue(Method.BC_RECURSIVE_SUM, value, 1.0 - q.lam)


def ah_recursive_sum_bound(q: BoundQuery) -> BoundValue:
    """Recursive-sum bound used inside the textbook analyses (AH form)."""
    _check_lambda(q.lam)
    kappa = _need(q.kappa, "kappa")
    value = (
        kappa
        * math.sqrt(q.u * gamma(2 * (q.n - 1), q.u))
        * math.sqrt(math.log(4.0 / q.lam))
    )
    return BoundValue(Method.AH_RECURSIVE_SUM, value, 1.0 - q.lam)


# ---------------------------------------------------------------------------
# variance bounds, flat summation
# ---------------------------------------------------------------------------


def det_textbook_bound(q: BoundQuery) -> BoundValue:
    """Deterministic textbook bound: K2^2*gamma_{n+1}(u) + K1^2*gamma_{2n+1}(u)."""
    k1 = _need(q.k1, "K1")
    k2 = _need(q.k2, "K2")
    value = k2 * k2 * gamma(q.n + 1, q.u) + k1 * k1 * gamma(2 * q.n + 1, q.u)
    return BoundValue(Method.DET_TEXTBOOK, value, 1.0)


def _bc_textbook_value(n_inner: int, n_outer: int, q: BoundQuery) -> float:
    # shared by the flat (n_outer = n+1, n_inner = n-1) and pairwise
    # (h+1, h) textbook variants
    k1 = _need(q.k1, "K1")
    k2 = _need(q.k2, "K2")
    u = q.u
    outer = math.sqrt(2.0 * gamma(n_outer, u * u) / q.lam)
    inner = math.sqrt(2.0 * gamma(n_inner, u * u) / q.lam)
    return k2 * k2 * outer + k1 * k1 * ((1.0 + u) ** 3 * (inner + 1.0) ** 2 - 1.0)


def bc_textbook_bound(q: BoundQuery) -> BoundValue:
    _check_lambda(q.lam)
    value = _bc_textbook_value(q.n - 1, q.n + 1, q)
    return BoundValue(Method.BC_TEXTBOOK, value, 1.0 - q.lam)


def bc_pairwise_textbook_bound(q: BoundQuery) -> BoundValue:
    _check_lambda(q.lam)
    h = pairwise_height(q.n)
    value = _bc_textbook_value(h, h + 1, q)
    return BoundValue(Method.BC_PAIRWISE_TEXTBOOK, value, 1.0 - q.lam)


def _ah_textbook_value(n_inner: int, n_outer: int, q: BoundQuery) -> float:
    k1 = _need(q.k1, "K1")
    k2 = _need(q.k2, "K2")
    u = q.u
    root_log = math.sqrt(math.log(4.0 / q.lam))
    outer = math.sqrt(u * gamma(2 * n_outer, u)) * root_log
    inner = math.sqrt(u * gamma(2 * n_inner, u)) * root_log
    return k2 * k2 * outer + k1 * k1 * ((1.0 + u) ** 3 * (inner + 1.0) ** 2 - 1.0)


def ah_textbook_bound(q: BoundQuery) -> BoundValue:
    _check_lambda(q.lam)
    value = _ah_textbook_value(q.n - 1, q.n + 1, q)
    return BoundValue(Method.AH_TEXTBOOK, value, 1.0 - q.lam)


def ah_pairwise_textbook_bound(q: BoundQuery) -> BoundValue:
    _check_lambda(q.lam)
    h = pairwise_height(q.n)
    value = _ah_textbook_value(h, h + 1, q)
    return BoundValue(Method.AH_PAIRWISE_TEXTBOOK, value, 1.0 - q.lam)


def dm_textbook_bound(q: BoundQuery) -> BoundValue:
    """Doob-Meyer textbook bound (tighter bias accounting than AH)."""
    _check_lambda(q.lam)
    k1 = _need(q.k1, "K1")
    k2 = _need(q.k2, "K2")
    u = q.u
    root_log = math.sqrt(math.log(4.0 / q.lam))
    term1 = k2 * k2 * math.sqrt(u * gamma(2 * (q.n + 1), u)) * root_log
    bracket = (
        math.sqrt(2.0 * u * gamma(4 * (q.n - 1), u)) * root_log
        + u * gamma(2 * (q.n - 1), u) / 2.0
        + 1.0
    )
    value = term1 + k1 * k1 * (1.0 + u) ** 3 * bracket - k1 * k1
    return BoundValue(Method.DM_TEXTBOOK, value, 1.0 - q.lam)


def _bc_twopass_value(n_outer: int, q: BoundQuery) -> float:
    k1 = _need(q.k1, "K1")
    u = q.u
    g = 4.0 * gamma(n_outer, u * u) / q.lam
    root = math.sqrt(g)
    return (1.0 + u) * (root + g * (2.0 * k1 + k1 * k1 * (root + 1.0))) + u


def bc_twopass_bound(q: BoundQuery) -> BoundValue:
    _check_lambda(q.lam)
    value = _bc_twopass_value(q.n + 1, q)
    return BoundValue(Method.BC_TWOPASS, value, 1.0 - q.lam)


def _ah_twopass_value(n_outer: int, q: BoundQuery) -> float:
    k1 = _need(q.k1, "K1")
    u = q.u
    g = u * gamma(2 * n_outer, u)
    big_l = math.log(8.0 / q.lam)
    root = math.sqrt(g) * math.sqrt(big_l)
    return (1.0 + u) * (root + g * big_l * (2.0 * k1 + k1 * k1 * (root + 1.0))) + u


def ah_twopass_bound(q: BoundQuery) -> BoundValue:
    _check_lambda(q.lam)
    value = _ah_twopass_value(q.n + 1, q)
    return BoundValue(Method.AH_TWOPASS, value, 1.0 - q.lam)


# ---------------------------------------------------------------------------
# variance bounds, pairwise summation in both passes (constructed by analogy:
# substitute the tree height for n in the flat two-pass formulas)
# ---------------------------------------------------------------------------


def bc_pairwise_twopass_bound(q: BoundQuery) -> BoundValue:
    _check_lambda(q.lam)
    h = pairwise_height(q.n)
    value = _bc_twopass_value(h + 1, q)
    return BoundValue(Method.BC_PAIRWISE_TWOPASS, value, 1.0 - q.lam, by_analogy=True)


def ah_pairwise_twopass_bound(q: BoundQuery) -> BoundValue:
    _check_lambda(q.lam)
    h = pairwise_height(q.n)
    value = _ah_twopass_value(h + 1, q)
    return BoundValue(Method.AH_PAIRWISE_TWOPASS, value, 1.0 - q.lam, by_analogy=True)


def pairwise_twopass_bounds(q: BoundQuery) -> tuple[BoundValue, BoundValue]:
    return bc_pairwise_twopass_bound(q), ah_pairwise_twopass_bound(q)


# ---------------------------------------------------------------------------
# bias predictions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BiasPrediction:
    """Predicted expectation shift of a variance estimate and its bound.

    ``bias`` is the first-order prediction (-V(s_hat)/n for textbook,
    +V(s_hat)/n for two-pass) when an empirical V(s_hat) is available, else
    None; ``bound`` is the closed-form magnitude bound on the shift.
    """

    bias: float | None
    bound: float


def textbook_bias_prediction(
    n: int, u: float, y: float, k1: float, v_s_hat: float | None = None
) -> BiasPrediction:
    """E(y_hat) = y - V(s_hat)/n, with |shift| <= y*K1^2*gamma_{n-1}(u^2)."""
    if y <= 0.0:
        raise DomainError(f"y must be > 0, got {y}")
    bound = y * k1 * k1 * gamma(n - 1, u * u)
    bias = None if v_s_hat is None else -v_s_hat / n
    return BiasPrediction(bias, bound)


def twopass_bias_prediction(
    n: int, u: float, z: float, k1: float, v_s_hat: float | None = None
) -> BiasPrediction:
    """E(z_hat) = z + V(s_hat)/n + O(u^2), E(z_hat) <= z(1+u^2)(1+K1^2*gamma_n(u^2))."""
    if z <= 0.0:
        raise DomainError(f"z must be > 0, got {z}")
    bound = z * ((1.0 + u * u) * (1.0 + k1 * k1 * gamma(n, u * u)) - 1.0)
    bias = None if v_s_hat is None else v_s_hat / n
    return BiasPrediction(bias, bound)


# ---------------------------------------------------------------------------
# asymptotic (Table 1) forms
# ---------------------------------------------------------------------------

_ASYM_METHODS = (Method.DET_TEXTBOOK, Method.BC_TEXTBOOK, Method.AH_TEXTBOOK, Method.DM_TEXTBOOK)


def asymptotic_textbook_bound(regime: Regime, method: Method, q: BoundQuery) -> float:
    """Leading-order textbook bound forms by regime, up to a constant."""
    if method not in _ASYM_METHODS:
        raise DomainError(f"no asymptotic form for {method}")
    k1 = _need(q.k1, "K1")
    k2 = _need(q.k2, "K2")
    n, u = q.n, q.u
    k2sq, k1sq = k2 * k2, k1 * k1
    if method is not Method.DET_TEXTBOOK:
        _check_lambda(q.lam)
    if regime is Regime.SMALL_NU:
        if method is Method.DET_TEXTBOOK:
            return (k2sq + 2.0 * k1sq) * n * u
        if method is Method.BC_TEXTBOOK:
            return (k2sq + 2.0 * k1sq) * math.sqrt(2.0 / q.lam) * math.sqrt(n) * u
        root_log = math.sqrt(math.log(4.0 / q.lam))
        if method is Method.AH_TEXTBOOK:
            return (k2sq + 2.0 * k1sq) * root_log * math.sqrt(n) * u
        return (k2sq + math.sqrt(8.0) * k1sq) * root_log * math.sqrt(n) * u
    if regime is Regime.LARGE_NU:
        if method is Method.DET_TEXTBOOK:
            return (k2sq + k1sq) * math.exp((2.0 * n + 1.0) * u)
        if method is Method.BC_TEXTBOOK:
            return (k2sq + 2.0 * k1sq) * math.sqrt(2.0 / q.lam) * math.sqrt(n) * u
        root_ul = math.sqrt(u * math.log(4.0 / q.lam))
        grow = math.exp((2.0 * n + 1.0) * u)
        if method is Method.AH_TEXTBOOK:
            return (k2sq + k1sq * root_ul) * root_ul * grow
        return (root_ul * (k2sq + math.sqrt(2.0) * k1sq) + k1sq * u / 2.0) * grow
    raise DomainError(f"unknown regime {regime}")


# ---------------------------------------------------------------------------
# evaluation helpers
# ---------------------------------------------------------------------------

_EVALUATORS = {
    Method.DET_TEXTBOOK: det_textbook_bound,
    Method.BC_PAIRWISE_SUM: bc_pairwise_sum_bound,
    Method.AH_PAIRWISE_SUM: ah_pairwise_sum_bound,
    Method.HI_PAIRWISE_SUM: hallman_ipsen_bound,
    Method.BC_RECURSIVE_SUM: bc_recursive_sum_bound,
    Method.AH_RECURSIVE_SUM: ah_recursive_sum_bound,
    Method.BC_TEXTBOOK: bc_textbook_bound,
    Method.AH_TEXTBOOK: ah_textbook_bound,
    Method.DM_TEXTBOOK: dm_textbook_bound,
    Method.BC_TWOPASS: bc_twopass_bound,
    Method.AH_TWOPASS: ah_twopass_bound,
    Method.BC_PAIRWISE_TEXTBOOK: bc_pairwise_textbook_bound,
    Method.AH_PAIRWISE_TEXTBOOK: ah_pairwise_textbook_bound,
    Method.BC_PAIRWISE_TWOPASS: bc_pairwise_twopass_bound,
    Method.AH_PAIRWISE_TWOPASS: ah_pairwise_twopass_bound,
}

# which bounds apply to which harness algorithm
_ALGORITHM_METHODS: dict[str, tuple[Method, ...]] = {
    "sum_recursive": (Method.BC_RECURSIVE_SUM, Method.AH_RECURSIVE_SUM),
    "sum_pairwise": (
        Method.BC_PAIRWISE_SUM,
        Method.AH_PAIRWISE_SUM,
        Method.HI_PAIRWISE_SUM,
    ),
    "textbook_recursive": (
        Method.DET_TEXTBOOK,
        Method.BC_TEXTBOOK,
        Method.AH_TEXTBOOK,
        Method.DM_TEXTBOOK,
    ),
    "textbook_pairwise": (Method.BC_PAIRWISE_TEXTBOOK, Method.AH_PAIRWISE_TEXTBOOK),
    "two_pass_recursive": (Method.BC_TWOPASS, Method.AH_TWOPASS),
    "two_pass_pairwise": (Method.BC_PAIRWISE_TWOPASS, Method.AH_PAIRWISE_TWOPASS),
}


def methods_for_algorithm(algorithm: str) -> tuple[Method, ...]:
    return _ALGORITHM_METHODS[algorithm]


def evaluate(method: Method, q: BoundQuery) -> BoundValue:
    return _EVALUATORS[method](q)


def evaluate_all(
    q: BoundQuery, methods: tuple[Method, ...] | None = None
) -> dict[Method, BoundValue]:
    """Evaluate the given (default: all) methods, skipping undefined ones."""
    out: dict[Method, BoundValue] = {}
    for method in methods or tuple(Method):
        try:
            out[method] = evaluate(method, q)
        except UndefinedBoundError:
            continue
    return out
