"""Componentwise partial order on the complex plane.

``z1 <= z2`` holds when both the real and the imaginary part of ``z1`` are
at most those of ``z2``.  Every comparison takes an absolute per-component
slack ``eps``; strict comparisons subtract it so that rounding never
manufactures a strict inequality.
"""

from __future__ import annotations

import math
from numbers import Number

DEFAULT_EPS = 1e-9


class CVMLError(ValueError):
    """Base class for all errors raised by this package."""


class InvalidInputError(CVMLError):
    pass


class RangeError(CVMLError):
    """A distance value fell outside the cone {z : 0 <= z}."""


class EvaluationError(CVMLError):
    pass


class UnknownLabelError(CVMLError, KeyError):
    def __str__(self) -> str:
        return ValueError.__str__(self)


def as_complex(z) -> complex:
    """Coerce ``z`` to ``complex`` and reject NaN or infinite components."""
    if isinstance(z, (list, tuple)):
        if len(z) != 2:
            raise InvalidInputError(f"expected [re, im], got {z!r}")
        z = complex(float(z[0]), float(z[1]))
    elif not isinstance(z, Number):
        raise InvalidInputError(f"not a number: {z!r}")
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise InvalidInputError(f"non-finite complex value {z!r}")
    return z


def check_eps(eps: float) -> float:
    eps = float(eps)
    if not eps >= 0 or not math.isfinite(eps):
        raise InvalidInputError(f"tolerance must be finite and >= 0, got {eps!r}")
    return eps


def leq(z1, z2, eps: float = DEFAULT_EPS) -> bool:
    """``z1 ≾ z2``: both components of ``z1`` at most those of ``z2`` (plus eps)."""
    z1, z2, eps = as_complex(z1), as_complex(z2), check_eps(eps)
    return z1.real <= z2.real + eps and z1.imag <= z2.imag + eps


def lt_strict(z1, z2, eps: float = DEFAULT_EPS) -> bool:
    """``z1 ≺ z2``: strictly smaller in both components, by more than eps."""
    z1, z2, eps = as_complex(z1), as_complex(z2), check_eps(eps)
    return z1.real < z2.real - eps and z1.imag < z2.imag - eps


def close(z1, z2, eps: float = DEFAULT_EPS) -> bool:
    """Componentwise equality within eps."""
    z1, z2, eps = as_complex(z1), as_complex(z2), check_eps(eps)
    return abs(z1.real - z2.real) <= eps and abs(z1.imag - z2.imag) <= eps


def precneq(z1, z2, eps: float = DEFAULT_EPS) -> bool:
    """``z1 ⪵ z2``: ``z1 ≾ z2`` and the two values differ."""
    return leq(z1, z2, eps) and not close(z1, z2, eps)


def abs_c(z) -> complex:
    """Complex absolute value ``|Re z| + i|Im z|``; always lies in the cone."""
    z = as_complex(z)
    return complex(abs(z.real), abs(z.imag))


complex_abs_c = abs_c


def modulus(z) -> float:
    return math.hypot(*_parts(as_complex(z)))


def join(z1, z2) -> complex:
    """Least upper bound in the product order (componentwise max)."""
    z1, z2 = as_complex(z1), as_complex(z2)
    return complex(max(z1.real, z2.real), max(z1.imag, z2.imag))


def _parts(z: complex) -> tuple[float, float]:
    return z.real, z.imag


def to_pair(z) -> list[float]:
    """JSON encoding of a complex value: ``[re, im]``."""
    z = complex(z)
    return [_clean(z.real), _clean(z.imag)]


def _clean(x: float) -> float:
    # normalise -0.0 so reports are byte-stable
    return 0.0 if x == 0 else float(x)


def format_complex(z) -> str:
    """Short text form used for labels and CSV cells, e.g. ``1+2i``, ``0.5i``."""
    z = complex(z)
    re, im = _clean(z.real), _clean(z.imag)
    if im == 0:
        return f"{re:g}"
    if re == 0:
        return f"{im:g}i"
    return f"{re:g}{im:+g}i"


def parse_complex(text: str) -> complex:
    """Parse ``re+imi`` style text (``3``, ``2i``, ``1-0.5i``)."""
    s = text.strip().replace(" ", "")
    if not s:
        raise InvalidInputError("empty complex literal")
    try:
        return as_complex(complex(s.replace("i", "j")))
    except ValueError as exc:
        if isinstance(exc, CVMLError):
            raise
        raise InvalidInputError(f"cannot parse complex literal {text!r}") from None
