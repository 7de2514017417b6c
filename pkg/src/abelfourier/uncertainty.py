"""Renyi entropies and the entropic uncertainty principles tied to the
Fourier operator norm: the weighted inequality on its validity regions, its
explicit failure (violators) outside them, the unweighted group inequality,
and support-size bounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .groups import COMPACT, DISCRETE, EXHAUSTIVE_CAP, GroupSpec
from .norms import closed_form_cpq, recip
from .transform import MeasuredFunction, TIME, forward

#: Relative threshold deciding "nonzero" for support counting.
SUPPORT_RTOL = 1e-12


@dataclass
class Density:
    """A probability density: nonnegative values integrating to 1."""

    base: MeasuredFunction

    def __post_init__(self):
        vals = self.base.values
        if np.any(vals.imag != 0.0) or np.any(vals.real < 0.0):
            raise ValueError("density values must be nonnegative reals")
        total = float(vals.real.sum() * self.base.atom)
        if abs(total - 1.0) > 1e-10:
            raise ValueError(f"density mass {total} is not 1 within 1e-10")

    @property
    def values(self) -> np.ndarray:
        return self.base.values.real

    @property
    def atom(self) -> float:
        return self.base.atom

    @classmethod
    def from_wavefunction(cls, psi: MeasuredFunction, normalize: bool = False) -> "Density":
        vals = np.abs(psi.values) ** 2
        if normalize:
            total = vals.sum() * psi.atom
            if total == 0.0:
                raise ValueError("cannot normalize the zero function")
            vals = vals / total
        return cls(MeasuredFunction(psi.spec, psi.side, vals.astype(np.complex128)))


def _support_count(values: np.ndarray) -> int:
    mags = np.abs(values)
    peak = mags.max()
    if peak == 0.0:
        return 0
    return int(np.count_nonzero(mags > SUPPORT_RTOL * peak))


def renyi_entropy(density: Density, order: float, limits: bool = True) -> float:
    """(1/(1-order)) log sum f^order atom.

    Orders 0, 1 and infinity are limit extensions (log support measure,
    Shannon, -log max) and are only accepted with ``limits=True``; the base
    definition covers order in (0,1) union (1,inf).
    """
    if order in (0.0, 1.0, math.inf) and not limits:
        raise ValueError(f"order {order} requires the limit extension")
    if order < 0 or math.isnan(order):
        raise ValueError(f"entropy order must be >= 0, got {order}")
    vals = density.values
    atom = density.atom
    if order == math.inf:
        return -math.log(float(vals.max()))
    if order == 0.0:
        return math.log(_support_count(vals) * atom)
    if order == 1.0:
        positive = vals[vals > 0.0]
        return float(-np.sum(positive * np.log(positive)) * atom)
    return float(math.log(np.sum(vals**order) * atom) / (1.0 - order))


@dataclass(frozen=True)
class UPReport:
    lhs: float
    rhs: float
    margin: float
    satisfied: bool


def _unit_l2(psi: MeasuredFunction, tol: float = 1e-8):
    total = float(np.sum(np.abs(psi.values) ** 2) * psi.atom)
    if abs(total - 1.0) > tol:
        raise ValueError(f"psi must have unit L2 norm; got squared mass {total}")


def weighted_entropy_sum(psi: MeasuredFunction, p: float, q: float) -> float:
    """(1/p - 1/2) h_{p/2}(|psi|^2) + (1/2 - 1/q) h_{q/2}(|psihat|^2)."""
    u, v = recip(p), recip(q)
    dens_time = Density.from_wavefunction(psi)
    dens_freq = Density.from_wavefunction(forward(psi))
    h_time = renyi_entropy(dens_time, p / 2.0 if p != math.inf else math.inf)
    h_freq = renyi_entropy(dens_freq, q / 2.0 if q != math.inf else math.inf)
    return (u - 0.5) * h_time + (0.5 - v) * h_freq


def in_weighted_region(view: str, u: float, v: float) -> bool:
    """U_C (compact: u+v <= 1, u > 1/2) or U_D (discrete: u+v >= 1, v < 1/2)."""
    if view == COMPACT:
        return u + v <= 1.0 and u > 0.5
    if view == DISCRETE:
        return u + v >= 1.0 and v < 0.5
    raise ValueError(f"unknown view {view!r}")


def in_violation_region(view: str, u: float, v: float) -> bool:
    """U_CN (compact: u+v > 1, v <= 1/2) or U_DN (discrete: u+v < 1, u >= 1/2)."""
    if view == COMPACT:
        return u + v > 1.0 and v <= 0.5
    if view == DISCRETE:
        return u + v < 1.0 and u >= 0.5
    raise ValueError(f"unknown view {view!r}")


def weighted_up_margin(psi: MeasuredFunction, p: float, q: float) -> UPReport:
    """The weighted uncertainty inequality at a point of its validity region:
    weighted entropy sum >= -log C_{p,q}."""
    _unit_l2(psi)
    u, v = recip(p), recip(q)
    if not in_weighted_region(psi.spec.view, u, v):
        raise ValueError(
            f"(1/p, 1/q) = ({u}, {v}) is outside the weighted validity region "
            f"for the {psi.spec.view} view"
        )
    lhs = weighted_entropy_sum(psi, p, q)
    rhs = -math.log(closed_form_cpq(psi.spec, p, q))
    margin = lhs - rhs
    return UPReport(lhs=lhs, rhs=rhs, margin=margin, satisfied=margin >= -1e-9)


@dataclass(frozen=True)
class ViolatorResult:
    side: str
    family: str
    param_n: int
    group_descr: str
    value: float
    target: float
    achieved: bool
    psi: MeasuredFunction | None  # materialized only up to the exhaustive cap


def weighted_up_violator(
    target: float, p: float, q: float, side: str, max_param: int = 10**6
) -> ViolatorResult:
    """A unit-L2 function whose weighted entropy sum drops below ``target``.

    Compact side: the scaled point mass sqrt(N) delta_0 on (Z/2)^n, whose
    weighted sum is exactly (1 - 1/p - 1/q) n log 2.  Discrete side: the
    normalized all-ones function on Z/2^n, weighted sum (1/p + 1/q - 1) n
    log 2.  The parameter is advanced until the closed-form value passes the
    target; the witness is materialized when the group fits under the
    exhaustive cap and described symbolically otherwise.
    """
    u, v = recip(p), recip(q)
    if not in_violation_region(side, u, v):
        raise ValueError(
            f"(1/p, 1/q) = ({u}, {v}) is outside the violation region for {side}"
        )
    slope = (1.0 - u - v) * math.log(2.0) if side == COMPACT else (u + v - 1.0) * math.log(2.0)
    # slope < 0 in both violation regions, except on the boundary u+v=1 which
    # both region definitions exclude.
    n = 1
    while slope * n > target and n < max_param:
        n += 1
    value = slope * n
    achieved = value <= target
    if side == COMPACT:
        family = "subgroup_indicator"
        spec = GroupSpec(orders=(2,) * n, view=COMPACT, mass=1.0)
        psi = None
        if spec.size <= EXHAUSTIVE_CAP:
            vals = np.zeros(spec.size, dtype=np.complex128)
            vals[0] = math.sqrt(spec.size)
            psi = MeasuredFunction(spec, TIME, vals)
    else:
        family = "full_orbit"
        spec = GroupSpec(orders=(2**n,), view=DISCRETE, mass=1.0)
        psi = None
        if spec.size <= EXHAUSTIVE_CAP:
            vals = np.full(spec.size, 1.0 / math.sqrt(spec.size), dtype=np.complex128)
            psi = MeasuredFunction(spec, TIME, vals)
    return ViolatorResult(
        side=side,
        family=family,
        param_n=n,
        group_descr=spec.describe(),
        value=value,
        target=target,
        achieved=achieved,
        psi=psi,
    )


def unweighted_up_margin(psi: MeasuredFunction, p: float, q: float) -> UPReport:
    """h_{p/2}(|psi|^2) + h_{q/2}(|psihat|^2) >= 0 whenever 1/p + 1/q >= 1."""
    _unit_l2(psi)
    u, v = recip(p), recip(q)
    if u + v < 1.0:
        raise ValueError("the unweighted inequality needs 1/p + 1/q >= 1")
    dens_time = Density.from_wavefunction(psi)
    dens_freq = Density.from_wavefunction(forward(psi))
    lhs = renyi_entropy(dens_time, p / 2.0 if p != math.inf else math.inf) + renyi_entropy(
        dens_freq, q / 2.0 if q != math.inf else math.inf
    )
    margin = lhs - 0.0
    return UPReport(lhs=lhs, rhs=0.0, margin=margin, satisfied=margin >= -1e-9)


def support_product(psi: MeasuredFunction) -> float:
    """alpha(supp psi) * alphahat(supp psihat); at least 1 for psi != 0."""
    if psi.side != TIME:
        raise ValueError("support_product expects a time-side function")
    n_t = _support_count(psi.values)
    if n_t == 0:
        raise ValueError("support_product is undefined for the zero function")
    fhat = forward(psi)
    n_w = _support_count(fhat.values)
    return n_t * psi.atom * n_w * fhat.atom


def donoho_stark_check(psi: MeasuredFunction) -> tuple[int, int, int]:
    """Support counts (N_t, N_w, N_t * N_w); the product is at least N.

    The counts are normalization-free, so this matches the self-dual
    convention with both Haar atoms equal to 1/sqrt(N)."""
    if psi.side != TIME:
        raise ValueError("donoho_stark_check expects a time-side function")
    n_t = _support_count(psi.values)
    if n_t == 0:
        raise ValueError("undefined for the zero function")
    n_w = _support_count(forward(psi).values)
    return n_t, n_w, n_t * n_w
