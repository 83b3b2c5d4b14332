"""Finite distance spaces, catalogued distance functions and axiom checking.

A :class:`FiniteSpace` is a list of labels plus an ``n x n`` matrix of
complex distances.  Analytic distances (:class:`DistanceFn`) are checked
by restricting them to a finite sample with :func:`sample_space`.

Every axiom is checked exhaustively over all pairs and triples and all
violations are kept, each with the points involved and the values that
broke the axiom.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

import numpy as np

from .order import (
    DEFAULT_EPS,
    InvalidInputError,
    RangeError,
    UnknownLabelError,
    as_complex,
    check_eps,
    format_complex,
    lt_strict,
    to_pair,
)


@dataclass(frozen=True, eq=False)
class FiniteSpace:
    labels: tuple[str, ...]
    matrix: np.ndarray

    def __init__(self, labels: Iterable[Any], matrix, eps: float = DEFAULT_EPS):
        labels = tuple(str(label) for label in labels)
        m = np.array(matrix, dtype=complex)
        n = len(labels)
        if n < 1:
            raise InvalidInputError("a space needs at least one point")
        if len(set(labels)) != n:
            raise InvalidInputError("labels must be distinct")
        if m.shape != (n, n):
            raise InvalidInputError(f"matrix shape {m.shape} does not match {n} labels")
        if not np.all(np.isfinite(m)):
            raise InvalidInputError("matrix has non-finite entries")
        eps = check_eps(eps)
        bad = np.argwhere((m.real < -eps) | (m.imag < -eps))
        if len(bad):
            i, j = bad[0]
            raise RangeError(
                f"d({labels[i]}, {labels[j]}) = {format_complex(m[i, j])} is not >= 0"
            )
        m.setflags(write=False)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "_index", {label: i for i, label in enumerate(labels)})

    def __len__(self) -> int:
        return len(self.labels)

    def index(self, label) -> int:
        try:
            return self._index[str(label)]
        except KeyError:
            raise UnknownLabelError(f"unknown label {label!r}") from None

    def d(self, x, y) -> complex:
        return complex(self.matrix[self.index(x), self.index(y)])

    def to_json(self) -> dict:
        return {
            "labels": list(self.labels),
            "matrix": [[to_pair(v) for v in row] for row in self.matrix],
        }

    @classmethod
    def from_json(cls, doc: dict, eps: float = DEFAULT_EPS) -> "FiniteSpace":
        try:
            labels = doc["labels"]
            rows = doc["matrix"]
            matrix = [[as_complex(v) for v in row] for row in rows]
        except (KeyError, TypeError) as exc:
            raise InvalidInputError(f"malformed space document: {exc}") from None
        return cls(labels, matrix, eps=eps)


# --- distance functions ----------------------------------------------------

KINDS = (
    "exp_itheta_sum",
    "i_max_mod",
    "max_shift",
    "max_real",
    "one_plus_i_sum",
    "scaled_euclidean",
    "user_matrix",
)


@dataclass(frozen=True)
class DistanceFn:
    """A distance on complex points (or on the labels of a user matrix).

    Calling the object evaluates one pair; :meth:`evaluate` broadcasts over
    arrays of points.
    """

    kind: str
    theta: float | None = None
    c: complex | None = None
    w: complex | None = None
    space: FiniteSpace | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidInputError(f"unknown distance function {self.kind!r}")
        if self.kind == "exp_itheta_sum":
            if self.theta is None or not 0 <= self.theta <= math.pi / 2 + 1e-12:
                raise InvalidInputError("exp_itheta_sum needs 0 <= theta <= pi/2")
        elif self.kind == "max_shift":
            object.__setattr__(self, "c", as_complex(5 if self.c is None else self.c))
        elif self.kind == "scaled_euclidean":
            if self.w is None or not lt_strict(0, self.w, eps=0):
                raise InvalidInputError("scaled_euclidean needs a weight w with 0 < w")
            object.__setattr__(self, "w", as_complex(self.w))
        elif self.kind == "user_matrix" and self.space is None:
            raise InvalidInputError("user_matrix needs a space")

    @property
    def is_finite(self) -> bool:
        return self.kind == "user_matrix"

    @property
    def radial(self) -> bool:
        """True when d(x, y) depends on |x| and |y| only."""
        return self.kind in ("exp_itheta_sum", "i_max_mod", "one_plus_i_sum")

    def coords(self, points) -> np.ndarray:
        """Points as an array the formula can consume (indices for matrices)."""
        if self.is_finite:
            if isinstance(points, (str, int, np.integer)):
                return np.asarray(self.space.index(points))
            return np.array([self.space.index(p) for p in points], dtype=int)
        if isinstance(points, _SCALAR):
            return np.asarray(as_complex(points))
        if isinstance(points, np.ndarray) and points.dtype.kind in "iufc":
            arr = points.astype(complex)
            if not np.all(np.isfinite(arr)):
                raise InvalidInputError("non-finite point")
            return arr
        return np.array([as_complex(p) for p in points], dtype=complex)

    def evaluate(self, xs, ys) -> np.ndarray:
        """Elementwise (broadcast) evaluation over coordinate arrays."""
        x, y = np.asarray(xs), np.asarray(ys)
        k = self.kind
        if k == "exp_itheta_sum":
            out = np.exp(1j * self.theta) * (np.abs(x) + np.abs(y))
        elif k == "i_max_mod":
            out = 1j * np.maximum(np.abs(x), np.abs(y))
        elif k == "max_shift":
            out = np.maximum(np.abs(x - self.c), np.abs(y - self.c)) + 0j
        elif k == "max_real":
            for v in (x, y):
                if np.any(np.imag(v) != 0) or np.any(np.real(v) < 0):
                    raise RangeError("max_real is defined on nonnegative reals only")
            out = np.maximum(np.real(x), np.real(y)) + 0j
        elif k == "one_plus_i_sum":
            out = (1 + 1j) * (np.abs(x) + np.abs(y))
        elif k == "scaled_euclidean":
            out = self.w * np.abs(x - y)
        else:
            out = self.space.matrix[x, y]
        return np.asarray(out, dtype=complex)

    def __call__(self, x, y) -> complex:
        return complex(self.evaluate(self.coords(x), self.coords(y)))

    def to_json(self) -> dict:
        doc: dict[str, Any] = {"fn": self.kind}
        if self.kind == "exp_itheta_sum":
            doc["theta"] = self.theta
        elif self.kind == "max_shift":
            doc["c"] = to_pair(self.c)
        elif self.kind == "scaled_euclidean":
            doc["w"] = to_pair(self.w)
        elif self.kind == "user_matrix":
            doc["space"] = self.space.to_json()
        return doc

    @classmethod
    def from_json(cls, doc: dict, eps: float = DEFAULT_EPS) -> "DistanceFn":
        if not isinstance(doc, dict) or "fn" not in doc:
            raise InvalidInputError('distance object needs an "fn" field')
        kind = doc["fn"]
        if kind == "exp_itheta_sum":
            return cls(kind, theta=float(doc.get("theta", 0.0)))
        if kind == "max_shift":
            return cls(kind, c=as_complex(doc.get("c", 5)))
        if kind == "scaled_euclidean":
            return cls(kind, w=as_complex(doc.get("w", [1, 1])))
        if kind == "user_matrix":
            return cls(kind, space=FiniteSpace.from_json(doc.get("space", doc), eps=eps))
        return cls(kind)


_SCALAR = (int, float, complex, np.number)


def exp_itheta_sum(theta: float) -> DistanceFn:
    """``e^{iθ}(|x| + |y|)`` for ``0 <= θ <= π/2``."""
    return DistanceFn("exp_itheta_sum", theta=float(theta))


def i_max_mod() -> DistanceFn:
    """``i·max{|x|, |y|}``: a CVML whose sequences can have several limits."""
    return DistanceFn("i_max_mod")


def max_shift(c=5) -> DistanceFn:
    """``max{|x - c|, |y - c|}``: metric-like, not partial metric on the line."""
    return DistanceFn("max_shift", c=as_complex(c))


def max_real() -> DistanceFn:
    return DistanceFn("max_real")


def one_plus_i_sum() -> DistanceFn:
    return DistanceFn("one_plus_i_sum")


def scaled_euclidean(w) -> DistanceFn:
    return DistanceFn("scaled_euclidean", w=as_complex(w))


def user_matrix(space: FiniteSpace) -> DistanceFn:
    return DistanceFn("user_matrix", space=space)


def sample_space(fn: DistanceFn, points: Sequence, eps: float = DEFAULT_EPS) -> FiniteSpace:
    """Restrict ``fn`` to ``points``; raw (possibly asymmetric) values are kept."""
    if len(points) == 0:
        raise InvalidInputError("need at least one point")
    if fn.is_finite:
        labels = [str(p) for p in points]
    else:
        points = [as_complex(p) for p in points]
        labels = [format_complex(p) for p in points]
        if len(set(labels)) != len(labels):
            labels = [f"{label}#{k}" for k, label in enumerate(labels)]
    xs = fn.coords(points)
    m = fn.evaluate(xs[:, None], xs[None, :])
    if not np.all(np.isfinite(m)):
        raise InvalidInputError("distance evaluated to a non-finite value")
    eps = check_eps(eps)
    bad = np.argwhere((m.real < -eps) | (m.imag < -eps))
    if len(bad):
        i, j = bad[0]
        raise RangeError(
            f"{fn.kind}({labels[i]}, {labels[j]}) = {format_complex(m[i, j])} is not >= 0"
        )
    return FiniteSpace(labels, m, eps=eps)


# --- axiom checking --------------------------------------------------------


class AxiomClass(enum.Enum):
    METRIC = "METRIC"
    PARTIAL_METRIC = "PARTIAL_METRIC"
    METRIC_LIKE = "METRIC_LIKE"
    CV_METRIC = "CV_METRIC"
    CV_PARTIAL_METRIC = "CV_PARTIAL_METRIC"
    CVML = "CVML"

    @property
    def real_valued(self) -> bool:
        return not self.name.startswith("CV")


# Axioms per class, in report order.
AXIOMS: dict[AxiomClass, tuple[str, ...]] = {
    AxiomClass.METRIC: ("real", "zero_self_distance", "positivity", "symmetry", "triangle"),
    AxiomClass.PARTIAL_METRIC: (
        "real", "pm_identity", "small_self_distance", "symmetry", "modified_triangle",
    ),
    AxiomClass.METRIC_LIKE: ("real", "indiscernibility", "symmetry", "triangle"),
    AxiomClass.CV_METRIC: ("zero_self_distance", "positivity", "symmetry", "triangle"),
    AxiomClass.CV_PARTIAL_METRIC: (
        "pm_identity", "small_self_distance_join", "symmetry", "modified_triangle",
    ),
    AxiomClass.CVML: ("indiscernibility", "symmetry", "triangle"),
}


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: tuple[str, ...]
    values: dict[str, complex]
    within_tolerance: bool = False

    def to_json(self) -> dict:
        return {
            "axiom": self.axiom,
            "witness": list(self.witness),
            "values": {k: to_pair(v) for k, v in self.values.items()},
            "within_tolerance": self.within_tolerance,
        }


@dataclass
class AxiomReport:
    cls: AxiomClass
    violations: list[Violation]
    marginal: list[Violation] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json(self, limit: int | None = None) -> dict:
        shown = self.violations if limit is None else self.violations[:limit]
        return {
            "class": self.cls.value,
            "passed": self.passed,
            "violation_count": len(self.violations),
            "violations": [v.to_json() for v in shown],
            "marginal_count": len(self.marginal),
        }


def _le(a, b, eps):
    """Elementwise ``a ≾ b`` on arrays."""
    return (a.real <= b.real + eps) & (a.imag <= b.imag + eps)


def _close(a, b, eps):
    return (np.abs(a.real - b.real) <= eps) & (np.abs(a.imag - b.imag) <= eps)


def _axiom_ok(m: np.ndarray, axiom: str, eps: float) -> np.ndarray:
    """Boolean array, True where the axiom instance holds.

    Pair axioms are indexed ``[x, y]``; triple axioms ``[x, y, z]``.
    """
    n = len(m)
    diag = np.diag(m)
    off = ~np.eye(n, dtype=bool)
    if axiom == "real":
        return np.abs(m.imag) <= eps
    if axiom == "zero_self_distance":
        return _close(diag, 0, eps)
    if axiom in ("positivity", "indiscernibility"):
        # distinct points must not be at distance 0
        return ~(_close(m, 0, eps) & off)
    if axiom == "symmetry":
        # one instance per unordered pair, witnessed as (x, y) with x before y
        return _close(m, m.T, eps) | ~np.triu(off)
    if axiom == "pm_identity":
        same = _close(diag[:, None], diag[None, :], eps) & _close(diag[:, None], m, eps)
        return ~(same & off)
    if axiom == "small_self_distance":
        return _le(diag[:, None], m, eps)
    if axiom == "small_self_distance_join":
        return _le(diag[:, None], m, eps) & _le(diag[None, :], m, eps)
    if axiom == "triangle":
        # d(x, y) ≾ d(x, z) + d(z, y)
        return _le(m[:, :, None], m[:, None, :] + m.T[None, :, :], eps)
    if axiom == "modified_triangle":
        # p(x, z) ≾ p(x, y) + p(y, z) - p(y, y), indexed [x, y, z]
        return _le(m[:, None, :], m[:, :, None] + m[None, :, :] - diag[None, :, None], eps)
    raise ValueError(axiom)


def _witness(space: FiniteSpace, axiom: str, idx: tuple[int, ...]) -> tuple[tuple[str, ...], dict]:
    m = space.matrix
    lab = space.labels
    if axiom == "zero_self_distance":
        (x,) = idx
        return (lab[x],), {"d(x,x)": m[x, x]}
    if axiom in ("real", "positivity", "indiscernibility"):
        x, y = idx
        return (lab[x], lab[y]), {"d(x,y)": m[x, y]}
    if axiom == "symmetry":
        x, y = idx
        return (lab[x], lab[y]), {"d(x,y)": m[x, y], "d(y,x)": m[y, x]}
    if axiom == "pm_identity":
        x, y = idx
        return (lab[x], lab[y]), {"d(x,x)": m[x, x], "d(y,y)": m[y, y], "d(x,y)": m[x, y]}
    if axiom == "small_self_distance":
        x, y = idx
        return (lab[x], lab[y]), {"d(x,x)": m[x, x], "d(x,y)": m[x, y]}
    if axiom == "small_self_distance_join":
        x, y = idx
        return (lab[x], lab[y]), {"d(x,x)": m[x, x], "d(y,y)": m[y, y], "d(x,y)": m[x, y]}
    if axiom == "triangle":
        x, y, z = idx
        return (lab[x], lab[y], lab[z]), {
            "d(x,y)": m[x, y], "d(x,z)": m[x, z], "d(z,y)": m[z, y],
        }
    if axiom == "modified_triangle":
        x, y, z = idx
        return (lab[x], lab[y], lab[z]), {
            "d(x,z)": m[x, z], "d(x,y)": m[x, y], "d(y,z)": m[y, z], "d(y,y)": m[y, y],
        }
    raise ValueError(axiom)


def _make(space, axiom, idx, within_tolerance):
    witness, values = _witness(space, axiom, tuple(int(i) for i in idx))
    values = {k: complex(v) for k, v in values.items()}
    return Violation(axiom, witness, values, within_tolerance)


def check_axioms(space: FiniteSpace, cls: AxiomClass, eps: float = DEFAULT_EPS) -> AxiomReport:
    """Check every axiom of ``cls`` over all pairs and triples of ``space``.

    Each instance is evaluated at ``eps`` and at zero slack.  A tolerant
    failure is a violation; one that exact arithmetic would accept is
    flagged ``within_tolerance``.  Instances that only fail exactly land in
    ``marginal`` and do not affect ``passed``.
    """
    cls = AxiomClass(cls)
    eps = check_eps(eps)
    violations: list[Violation] = []
    marginal: list[Violation] = []
    for axiom in AXIOMS[cls]:
        ok = _axiom_ok(space.matrix, axiom, eps)
        exact = ok if eps == 0 else _axiom_ok(space.matrix, axiom, 0.0)
        # argwhere yields C order, i.e. witnesses sorted by index tuple
        for idx in np.argwhere(~ok):
            violations.append(_make(space, axiom, idx, bool(exact[tuple(idx)])))
        for idx in np.argwhere(ok & ~exact):
            marginal.append(_make(space, axiom, idx, True))
    return AxiomReport(cls, violations, marginal)


def satisfies(space: FiniteSpace, cls: AxiomClass, eps: float = DEFAULT_EPS) -> bool:
    """Verdict of :func:`check_axioms` without building witnesses."""
    eps = check_eps(eps)
    return all(_axiom_ok(space.matrix, a, eps).all() for a in AXIOMS[AxiomClass(cls)])


def classify(space: FiniteSpace, eps: float = DEFAULT_EPS) -> set[AxiomClass]:
    return {cls for cls in AxiomClass if satisfies(space, cls, eps)}
