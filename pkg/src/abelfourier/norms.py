"""L^p quasi-norms, the finiteness regions in the (1/p, 1/q) plane, and the
closed-form operator norm on each finite region.

Exponents are carried as reciprocals u = 1/p in [0, inf), so p = infinity is
the exact point u = 0 and the region geometry lives in the same plane the
classification is stated in.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .groups import COMPACT, DISCRETE, GroupSpec
from .transform import MeasuredFunction, forward

INF = math.inf

# Region labels.  R1 (compact) and R2' (discrete) are the finite ones;
# R3'ext records that the third discrete region is classified by the stronger
# claim (all 1/p < 1/2) rather than by its printed [0,1]^2 statement.
R1, R2, R3 = "R1", "R2", "R3"
R1P, R2P, R3PEXT = "R1'", "R2'", "R3'ext"

FINITE_LABELS = {R1, R2P}


def recip(p: float) -> float:
    """1/p with p = inf mapping to exactly 0; rejects p <= 0."""
    if p == INF:
        return 0.0
    if not (p > 0 and math.isfinite(p)):
        raise ValueError(f"exponent must be in (0, inf], got {p}")
    return 1.0 / p


def exponent_value(u: float) -> float:
    if u < 0 or not math.isfinite(u):
        raise ValueError(f"reciprocal exponent must be in [0, inf), got {u}")
    return INF if u == 0 else 1.0 / u


@dataclass(frozen=True)
class Exponent:
    """An extended exponent p in (0, inf] stored via its reciprocal."""

    reciprocal: float

    def __post_init__(self):
        if self.reciprocal < 0 or not math.isfinite(self.reciprocal):
            raise ValueError("reciprocal must be finite and >= 0")

    @classmethod
    def of(cls, p: float) -> "Exponent":
        return cls(recip(p))

    @property
    def value(self) -> float:
        return exponent_value(self.reciprocal)

    @property
    def is_infinite(self) -> bool:
        return self.reciprocal == 0.0


def holder_conjugate(p: float) -> float:
    """p' with 1/p + 1/p' = 1, for p in [1, inf]."""
    u = recip(p)
    if u > 1:
        raise ValueError("Holder conjugate needs p >= 1")
    return exponent_value(1.0 - u)


def lp_norm(f: MeasuredFunction, p) -> float:
    """(sum |f|^p atom)^(1/p) for finite p; max |f| for p = inf.

    For 0 < p < 1 this is the usual quasi-norm; it is absolutely homogeneous
    but not subadditive.
    """
    if isinstance(p, Exponent):
        u = p.reciprocal
        p = p.value
    else:
        u = recip(p)
    mags = np.abs(f.values)
    if u == 0.0:
        return float(mags.max()) if mags.size else 0.0
    return float((np.sum(mags**p) * f.atom) ** u)


@dataclass(frozen=True)
class RegionVerdict:
    """Classification of a point (1/p, 1/q) for one measure view."""

    side: str
    label: str
    finite: bool
    value: float | None = None


def classify(side: str, u: float, v: float, spec: GroupSpec | None = None) -> RegionVerdict:
    """Total partition of the quadrant [0, inf)^2 into the norm regions.

    Compact: finite exactly on {u + v <= 1, v <= 1/2}; every point with
    u + v > 1 is infinite, and so is the remaining strip v > 1/2.
    Discrete: finite exactly on {u + v >= 1, u >= 1/2}; infinite on
    {u + v < 1, v < 1/2} and on the whole remaining region u < 1/2.

    When ``spec`` is given (its view must match ``side``), the closed-form
    value is filled in for finite points.
    """
    if not (u >= 0 and v >= 0 and math.isfinite(u) and math.isfinite(v)):
        raise ValueError("reciprocal exponents must be finite and >= 0")
    if side == COMPACT:
        if u + v <= 1 and v <= 0.5:
            label, finite = R1, True
        elif u + v > 1:
            label, finite = R2, False
        else:
            label, finite = R3, False
    elif side == DISCRETE:
        if u + v >= 1 and u >= 0.5:
            label, finite = R2P, True
        elif u + v < 1 and v < 0.5:
            label, finite = R1P, False
        else:
            label, finite = R3PEXT, False
    else:
        raise ValueError(f"unknown side {side!r}")

    value = None
    if finite and spec is not None:
        if spec.view != side:
            raise ValueError(f"spec view {spec.view!r} does not match side {side!r}")
        if side == COMPACT:
            value = spec.primal_total ** (1.0 - u - v)
        else:
            value = spec.dual_total ** (u + v - 1.0)
    return RegionVerdict(side=side, label=label, finite=finite, value=value)


def closed_form_cpq(spec: GroupSpec, p: float, q: float) -> float:
    """The operator norm on the finite region of spec's view; inf elsewhere.

    Compact view: alpha(X)^(1 - 1/p - 1/q) on R1.  Discrete view:
    dual total mass^(1/p + 1/q - 1) on R2'.
    """
    verdict = classify(spec.view, recip(p), recip(q), spec=spec)
    return verdict.value if verdict.finite else INF


def hausdorff_young_check(f: MeasuredFunction, p: float) -> float:
    """Margin ||f||_p - ||fhat||_p' for 1 <= p <= 2 on a compact mass-1 group.

    Nonnegative up to roundoff since the sharp constant on this segment is 1.
    """
    if f.spec.view != COMPACT or abs(f.spec.mass - 1.0) > 1e-12:
        raise ValueError("Hausdorff-Young check needs the compact view with mass 1")
    if not (1.0 <= p <= 2.0):
        raise ValueError("p must lie in [1, 2]")
    return lp_norm(f, p) - lp_norm(forward(f), holder_conjugate(p))
