"""Conjugate surfaces and the associated family X^t = Re(e^{it} Z).

Rotating the data by a unit scalar preserves nullity and the metric
pointwise; only the splitting into real and imaginary parts moves.  On a
multiply connected domain this is legitimate exactly when the complex
periods vanish, since a surviving flux rotates into a real period for
general t.  Phases t = 0 mod pi only flip the sign of f and are always
allowed.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from .weierstrass import (
    PERIOD_FLAG_FACTOR,
    NullData,
    PeriodError,
    SurfaceSpec,
)

__all__ = [
    "conjugate",
    "associate",
    "associate_spec",
    "conjugate_spec",
    "helicatenoid_closed_form",
    "helicatenoid_null_curve",
]


def _require_rotatable(spec: SurfaceSpec, t: float) -> None:
    if math.isclose(math.sin(t), 0.0, abs_tol=1e-15):
        # e^{it} = +-1 keeps real periods real; always fine
        return
    periods = spec.basis_periods()
    for k, p in enumerate(periods):
        if float(np.max(np.abs(p), initial=0.0)) > PERIOD_FLAG_FACTOR * spec.tol:
            raise PeriodError(
                f"cycle {k} has nonvanishing complex period: the associated surface "
                f"at t={t} would be multivalued",
                cycle_index=k,
            )


def conjugate(data: NullData) -> NullData:
    """Data of the conjugate surface: f -> -i f (Re of the new null curve
    equals Im of the old one)."""
    return data.scaled(-1j)


def associate(data: NullData, t: float) -> NullData:
    """Data of the associated surface X^t: f -> e^{it} f."""
    if t == 0.0:
        return data
    return data.scaled(cmath.exp(1j * t))


def associate_spec(spec: SurfaceSpec, t: float) -> SurfaceSpec:
    """Associated-family member as a full spec; rejects phases that would
    break single-valuedness on a multiply connected domain."""
    _require_rotatable(spec, t)
    name = f"{spec.name}@t={t:g}" if spec.name else f"associated@t={t:g}"
    return SurfaceSpec(
        data=associate(spec.data, t),
        domain=spec.domain,
        basepoint=spec.basepoint,
        offset=spec.offset,
        name=name,
        tol=spec.tol,
    )


def conjugate_spec(spec: SurfaceSpec) -> SurfaceSpec:
    """Conjugate surface as a full spec (requires vanishing complex periods)."""
    _require_rotatable(spec, math.pi / 2)
    name = f"{spec.name}-conjugate" if spec.name else "conjugate"
    return SurfaceSpec(
        data=conjugate(spec.data),
        domain=spec.domain,
        basepoint=spec.basepoint,
        offset=spec.offset,
        name=name,
        tol=spec.tol,
    )


def helicatenoid_null_curve(z: complex) -> np.ndarray:
    """Z(z) = (cos z, sin z, -i z)."""
    return np.array([cmath.cos(z), cmath.sin(z), -1j * z])


def helicatenoid_closed_form(t: float, z: complex) -> np.ndarray:
    """X^t(z) = Re(e^{it} Z(z)) in closed form, with z = x + i y:

    cos t (cos x cosh y, sin x cosh y, y) + sin t (sin x sinh y, -cos x sinh y, x)
    """
    x, y = z.real, z.imag
    cat = np.array([math.cos(x) * math.cosh(y), math.sin(x) * math.cosh(y), y])
    hel = np.array([math.sin(x) * math.sinh(y), -math.cos(x) * math.sinh(y), x])
    return math.cos(t) * cat + math.sin(t) * hel
