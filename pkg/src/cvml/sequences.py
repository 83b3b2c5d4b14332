"""Convergence, Cauchy behaviour and multiple limits of sequences.

Limits are decided on a finite horizon.  A sequence is declared convergent
to ``x0`` when the residuals ``|d(x_n, x0) - d(x0, x0)|`` over the last
``tail`` terms are below ``threshold`` and have dropped to at most half of
the largest residual in the first quarter of the horizon.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np

from .order import (
    DEFAULT_EPS,
    EvaluationError,
    InvalidInputError,
    as_complex,
    check_eps,
    lt_strict,
    to_pair,
)
from .spaces import DistanceFn

DEFAULT_HORIZON = 1024
DEFAULT_TAIL = 128
DEFAULT_THRESHOLD = 1e-6

RULES = ("reciprocal_i", "constant", "alternating")


@dataclass(frozen=True)
class SequenceSpec:
    """Either an explicit list of ``terms`` or a catalogued ``rule``.

    Rules: ``reciprocal_i`` (x_n = i/n), ``constant`` (x_n = x) and
    ``alternating`` (x, y, x, y, ...), evaluated for n = 1..n_max.
    """

    rule: str | None = None
    terms: tuple | None = None
    n_max: int = DEFAULT_HORIZON
    x: Any = None
    y: Any = None

    def __post_init__(self):
        if self.terms is not None:
            object.__setattr__(self, "terms", tuple(self.terms))
            if len(self.terms) < 1:
                raise InvalidInputError("explicit sequences need at least one term")
            return
        if self.rule not in RULES:
            raise InvalidInputError(f"unknown sequence rule {self.rule!r}")
        if int(self.n_max) < 8:
            raise InvalidInputError("n_max must be at least 8")
        if self.rule in ("constant", "alternating") and self.x is None:
            raise InvalidInputError(f"rule {self.rule} needs x")
        if self.rule == "alternating" and self.y is None:
            raise InvalidInputError("rule alternating needs y")

    @property
    def horizon(self) -> int:
        return len(self.terms) if self.terms is not None else int(self.n_max)

    def points(self) -> list:
        if self.terms is not None:
            return list(self.terms)
        n = np.arange(1, self.horizon + 1)
        if self.rule == "reciprocal_i":
            return list(1j / n)
        if self.rule == "constant":
            return [self.x] * self.horizon
        return [self.x if k % 2 else self.y for k in n]

    def to_json(self) -> dict:
        if self.terms is not None:
            return {"terms": [_point_json(t) for t in self.terms]}
        doc: dict[str, Any] = {"rule": self.rule, "n_max": self.horizon}
        for key in ("x", "y"):
            if getattr(self, key) is not None:
                doc[key] = _point_json(getattr(self, key))
        return doc

    @classmethod
    def from_json(cls, doc: dict) -> "SequenceSpec":
        if not isinstance(doc, dict):
            raise InvalidInputError("sequence must be a JSON object")
        if "terms" in doc:
            return cls(terms=tuple(parse_point(t) for t in doc["terms"]))
        return cls(
            rule=doc.get("rule"),
            n_max=int(doc.get("n_max", DEFAULT_HORIZON)),
            x=parse_point(doc["x"]) if "x" in doc else None,
            y=parse_point(doc["y"]) if "y" in doc else None,
        )


def reciprocal_i(n_max: int = DEFAULT_HORIZON) -> SequenceSpec:
    return SequenceSpec("reciprocal_i", n_max=n_max)


def constant(x, n_max: int = DEFAULT_HORIZON) -> SequenceSpec:
    return SequenceSpec("constant", n_max=n_max, x=x)


def alternating(x, y, n_max: int = DEFAULT_HORIZON) -> SequenceSpec:
    return SequenceSpec("alternating", n_max=n_max, x=x, y=y)


def parse_point(p):
    """JSON point: a label string (finite spaces) or ``[re, im]``."""
    return p if isinstance(p, str) else as_complex(p)


def _point_json(p):
    return p if isinstance(p, str) else to_pair(p)


@dataclass
class ConvergenceVerdict:
    converges: bool
    residual_tail: list[float]
    decision_index: int | None
    candidate: Any = None

    def to_json(self) -> dict:
        return {
            "candidate": _point_json(self.candidate),
            "converges": self.converges,
            "decision_index": self.decision_index,
            "residual_tail": self.residual_tail,
        }


@dataclass
class CauchyVerdict:
    is_cauchy: bool
    limit_estimate: complex | None
    max_deviation: float = field(default=float("nan"))

    def to_json(self) -> dict:
        return {
            "is_cauchy": self.is_cauchy,
            "limit_estimate": None if self.limit_estimate is None else to_pair(self.limit_estimate),
            "max_deviation": self.max_deviation,
        }


def _check_window(seq: SequenceSpec, tail: int) -> None:
    if tail < 8:
        raise InvalidInputError("tail must be at least 8")
    if seq.horizon < 2 * tail:
        raise InvalidInputError(
            f"horizon {seq.horizon} is shorter than twice the tail ({tail})"
        )


def _finite(values: np.ndarray) -> np.ndarray:
    if not np.all(np.isfinite(values)):
        raise EvaluationError("distance evaluated to a non-finite value")
    return values


def residuals(d: DistanceFn, seq: SequenceSpec, x0) -> np.ndarray:
    """Complex residuals ``d(x_n, x0) - d(x0, x0)`` for n = 1..horizon."""
    xs = d.coords(seq.points())
    c0 = d.coords(x0)
    return _finite(d.evaluate(xs, c0)) - _finite(d.evaluate(c0, c0))


def check_convergence(
    d: DistanceFn,
    seq: SequenceSpec,
    x0,
    *,
    eps: float = DEFAULT_EPS,
    threshold: float = DEFAULT_THRESHOLD,
    tail: int = DEFAULT_TAIL,
) -> ConvergenceVerdict:
    """Decide ``x_n -> x0`` from the scalar residual ``|d(x_n,x0) - d(x0,x0)|``."""
    eps = check_eps(eps)
    _check_window(seq, tail)
    r = np.abs(residuals(d, seq, x0))
    n = len(r)
    tail_max = r[-tail:].max()
    first_quarter_max = r[: max(1, n // 4)].max()
    trending = tail_max <= 0.5 * first_quarter_max or tail_max <= eps
    converges = bool(tail_max < threshold and trending)

    above = np.flatnonzero(r >= threshold)
    decision = None
    if converges:
        decision = int(above[-1]) + 1 if len(above) else 0
    return ConvergenceVerdict(converges, [float(v) for v in r], decision, x0)


def default_radii(k_max: int = 20) -> list[complex]:
    return [(1 + 1j) * 2.0**-k for k in range(1, k_max + 1)]


def converges_by_balls(
    d: DistanceFn,
    seq: SequenceSpec,
    x0,
    radii: Sequence[complex] | None = None,
    *,
    eps: float = DEFAULT_EPS,
    tail: int = DEFAULT_TAIL,
) -> bool:
    """Convergence read straight off the ball definition.

    For each radius ``r`` there must be an index after which every term lies
    in ``N(x0, r)``, i.e. ``|d(x_n,x0) - d(x0,x0)|_c ≺ r``; on a finite
    horizon that index has to leave at least ``tail`` terms.
    """
    _check_window(seq, tail)
    eps = check_eps(eps)
    res = residuals(d, seq, x0)
    re, im = np.abs(res.real), np.abs(res.imag)
    n = len(res)
    for r in default_radii() if radii is None else radii:
        r = as_complex(r)
        if not lt_strict(0, r, eps=0):
            raise InvalidInputError(f"radius {r} is not strictly positive")
        outside = np.flatnonzero(~((re < r.real - eps) & (im < r.imag - eps)))
        n0 = int(outside[-1]) + 1 if len(outside) else 0
        if n0 > n - tail:
            return False
    return True


def check_cauchy(
    d: DistanceFn,
    seq: SequenceSpec,
    *,
    eps: float = DEFAULT_EPS,
    threshold: float = DEFAULT_THRESHOLD,
    tail: int = DEFAULT_TAIL,
) -> CauchyVerdict:
    """Estimate ``lim d(x_n, x_m)`` as the mean over tail pairs and test stability."""
    check_eps(eps)
    _check_window(seq, tail)
    pts = seq.points()
    window = d.coords(pts[len(pts) - tail - 1:])
    pair_d = _finite(d.evaluate(window[:, None], window[None, :]))
    limit = complex(pair_d.mean())
    deviation = float(np.abs(pair_d - limit).max())
    ok = deviation < threshold
    return CauchyVerdict(ok, limit if ok else None, deviation)


def find_limits(
    d: DistanceFn,
    seq: SequenceSpec,
    candidates: Sequence,
    *,
    eps: float = DEFAULT_EPS,
    threshold: float = DEFAULT_THRESHOLD,
    tail: int = DEFAULT_TAIL,
) -> list:
    """Candidates the sequence converges to, in candidate order."""
    return [v.candidate for v in limit_verdicts(d, seq, candidates, eps=eps,
                                                 threshold=threshold, tail=tail)
            if v.converges]


def limit_verdicts(d, seq, candidates, *, eps=DEFAULT_EPS, threshold=DEFAULT_THRESHOLD,
                   tail=DEFAULT_TAIL) -> list[ConvergenceVerdict]:
    if len(candidates) == 0:
        raise InvalidInputError("need at least one candidate")
    return [
        check_convergence(d, seq, c, eps=eps, threshold=threshold, tail=tail)
        for c in candidates
    ]


def quasi_equal_pairs(limits: Sequence) -> list[tuple]:
    """All pairs among the limits of one sequence; each pair is quasi-equal."""
    return [(a, b) for i, a in enumerate(limits) for b in limits[i + 1:]]


def completely_separate(d: DistanceFn, x, y, eps: float = DEFAULT_EPS) -> bool:
    """``d(x,x) + d(y,y) ≺ d(x,y)``."""
    return lt_strict(d(x, x) + d(y, y), d(x, y), eps)
