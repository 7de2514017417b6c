"""Witness families: the concrete extremal functions whose norm ratios grow
without bound in the infinite regions, realized at finite scale.

Each constructor returns a :class:`WitnessPoint` carrying the measured norms,
the ratio, and the predicted value for the ratio -- exact for families whose
ratio has a closed form (subgroup indicators, full orbits, chirps), a proven
lower bound otherwise.  Truncation choices (torus modeled by Z/m, the
integers modeled by a sparse support with circle quadrature) follow the
adequacy rules noted on each constructor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .groups import COMPACT, DISCRETE, CapacityError, EXHAUSTIVE_CAP, GroupSpec
from .norms import lp_norm, recip
from .transform import FREQUENCY, MeasuredFunction, TIME, forward, inverse


@dataclass(frozen=True)
class WitnessPoint:
    family: str
    param_n: int
    group_descr: str
    p: float
    q: float
    norm_f: float
    norm_fhat: float
    ratio: float
    prediction: float | None = None
    prediction_kind: str | None = None  # "exact" | "lower_bound"

    @property
    def group_size(self) -> int:
        return GroupSpec.parse(self.group_descr).size


@dataclass(frozen=True)
class TrigPolynomial:
    """A sparse trigonometric polynomial sum_k coef_k e^{i freq_k theta}."""

    terms: tuple[tuple[int, complex], ...]

    def __post_init__(self):
        freqs = [f for f, _ in self.terms]
        if len(set(freqs)) != len(freqs):
            raise ValueError("frequencies must be distinct")

    @property
    def max_frequency(self) -> int:
        return max((abs(f) for f, _ in self.terms), default=0)

    def evaluate(self, theta: np.ndarray) -> np.ndarray:
        out = np.zeros_like(theta, dtype=np.complex128)
        for freq, coef in self.terms:
            out = out + coef * np.exp(1j * freq * theta)
        return out

    def quadrature_lq(self, q: float, points: int) -> float:
        """L^q norm on the circle with probability measure, by an M-point
        uniform Riemann sum.  Exact for trig-polynomial moments of degree
        below M, so oversampling past the max frequency controls aliasing."""
        theta = 2.0 * np.pi * np.arange(points) / points
        mags = np.abs(self.evaluate(theta))
        u = recip(q)
        if u == 0.0:
            return float(mags.max())
        return float(np.mean(mags**q) ** u)


@dataclass(frozen=True)
class GrowthFit:
    slope: float
    intercept: float
    r_squared: float


@dataclass(frozen=True)
class CltWitness:
    point: WitnessPoint
    tail_probability: float
    threshold: float
    sigma_sq: float


def _is_prime(r: int) -> bool:
    if r < 2:
        return False
    f = 2
    while f * f <= r:
        if r % f == 0:
            return False
        f += 1
    return True


def _measured_point(family, param_n, spec, f, p, q, prediction, kind) -> WitnessPoint:
    norm_f = lp_norm(f, p)
    norm_fhat = lp_norm(forward(f), q)
    return WitnessPoint(
        family=family,
        param_n=param_n,
        group_descr=spec.describe(),
        p=p,
        q=q,
        norm_f=norm_f,
        norm_fhat=norm_fhat,
        ratio=norm_fhat / norm_f,
        prediction=prediction,
        prediction_kind=kind,
    )


def arc_indicator_witness(k: int, m: int, p: float, q: float) -> WitnessPoint:
    """Normalized indicator of the arc preimage {x : angle(x/m) < pi/(3k)}
    under the order-m character on Z/m with probability mass.

    The ratio is bounded below by (3^(1/p-1)/2) * k^(1/p+1/q-1); the bound
    needs the arc to resolve on the grid, hence the adequacy rule m >= 100k.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if m < 100 * k:
        raise ValueError(f"m={m} too small: need m >= 100k = {100 * k}")
    spec = GroupSpec(orders=(m,), view=COMPACT, mass=1.0)
    x = np.arange(m)
    dist = np.minimum(x, m - x)
    indicator = (dist * 6 * k < m).astype(np.complex128)
    prob = indicator.real.sum() / m
    f = MeasuredFunction(spec, TIME, indicator / prob)
    u, v = recip(p), recip(q)
    prediction = (3.0 ** (u - 1.0) / 2.0) * k ** (u + v - 1.0)
    return _measured_point("arc_indicator", k, spec, f, p, q, prediction, "lower_bound")


def subgroup_indicator_witness(r: int, n: int, p: float, q: float) -> WitnessPoint:
    """Scaled point mass N*delta_0 on (Z/r)^n with probability mass: the
    trivial-subgroup member of the subgroup-indicator family.  Its transform
    is identically 1, so the ratio is exactly N^(1/p+1/q-1)."""
    if not _is_prime(r):
        raise ValueError(f"r={r} must be prime")
    if r**n > EXHAUSTIVE_CAP:
        raise CapacityError(f"r^n = {r**n} exceeds cap {EXHAUSTIVE_CAP}")
    spec = GroupSpec(orders=(r,) * n, view=COMPACT, mass=1.0)
    vals = np.zeros(spec.size, dtype=np.complex128)
    vals[0] = spec.size
    f = MeasuredFunction(spec, TIME, vals)
    u, v = recip(p), recip(q)
    prediction = float(spec.size) ** (u + v - 1.0)
    return _measured_point("subgroup_indicator", n, spec, f, p, q, prediction, "exact")


def full_orbit_witness(m: int, p: float, q: float) -> WitnessPoint:
    """The all-ones function (sum of deltas over a full generator orbit) on
    discrete Z/m with unit atoms; ratio exactly m^(1-1/p-1/q)."""
    if m < 2:
        raise ValueError("m must be >= 2")
    spec = GroupSpec(orders=(m,), view=DISCRETE, mass=1.0)
    f = MeasuredFunction(spec, TIME, np.ones(m, dtype=np.complex128))
    u, v = recip(p), recip(q)
    prediction = float(m) ** (1.0 - u - v)
    return _measured_point("full_orbit", m, spec, f, p, q, prediction, "exact")


def chirp_witness(r: int, n: int, q: float, p: float = 1.0) -> WitnessPoint:
    """The chirp f(a, b) = omega^(a.b) on (Z/r)^2n with probability mass.

    |f| = 1 everywhere (so every L^p norm is 1) while |fhat| = r^-n
    everywhere, giving ratio exactly r^(n(2-q)/q)."""
    if not _is_prime(r):
        raise ValueError(f"r={r} must be prime")
    if r ** (2 * n) > EXHAUSTIVE_CAP:
        raise CapacityError(f"r^2n = {r ** (2 * n)} exceeds cap {EXHAUSTIVE_CAP}")
    spec = GroupSpec(orders=(r,) * (2 * n), view=COMPACT, mass=1.0)
    half = r**n
    idx = np.arange(half)
    digits = np.empty((half, n), dtype=np.int64)
    rem = idx.copy()
    for j in range(n - 1, -1, -1):
        digits[:, j] = rem % r
        rem //= r
    dots = (digits @ digits.T) % r
    vals = np.exp(2j * np.pi * dots / r).ravel()
    f = MeasuredFunction(spec, TIME, vals)
    v = recip(q)
    prediction = float(r) ** (n * (2.0 * v - 1.0))
    return _measured_point("chirp", n, spec, f, p, q, prediction, "exact")


def lacunary_coefficients(count: int, beta: float, c: float) -> np.ndarray:
    """Coefficients a_n = e^{i c n log n} / (n^(1/2) (log n)^beta), n = 2..count.

    beta > 1 is required: it is what makes the series converge uniformly
    while its coefficient l^q sums still diverge for every q < 2."""
    if count < 3:
        raise ValueError("need at least indices 2..3")
    if not beta > 1:
        raise ValueError("beta must be > 1")
    if not c > 0:
        raise ValueError("c must be positive")
    n = np.arange(2, count + 1, dtype=np.float64)
    return np.exp(1j * c * n * np.log(n)) / (np.sqrt(n) * np.log(n) ** beta)


def lacunary_compact_witness(
    m: int, p: float, q: float, beta: float = 1.5, c: float = 1.0
) -> WitnessPoint:
    """Partial sum f = sum_{k=2}^{m-1} a_k chi^k on Z/m with probability
    mass, a_k the lacunary coefficients.  ||fhat||_q equals the coefficient
    l^q sum exactly; that sum is the stored prediction (a lower bound on
    ||fhat||_q that diverges for q < 2 while ||f||_p stays bounded)."""
    if m < 4:
        raise ValueError("m must be >= 4")
    coeffs = lacunary_coefficients(m - 1, beta, c)
    spec = GroupSpec(orders=(m,), view=COMPACT, mass=1.0)
    freq = np.zeros(m, dtype=np.complex128)
    freq[2:m] = coeffs
    f = inverse(MeasuredFunction(spec, FREQUENCY, freq))
    u, v = recip(p), recip(q)
    if v == 0.0:
        prediction = float(np.abs(coeffs).max())
    else:
        prediction = float(np.sum(np.abs(coeffs) ** q) ** v)
    return _measured_point("lacunary_compact", m, spec, f, p, q, prediction, "lower_bound")


def lacunary_trig_polynomial(n: int) -> TrigPolynomial:
    """sum_{k=1}^{n} (1/sqrt(k)) e^{i 2^k theta}: the transform of the sparse
    geometric-support function on the integers."""
    return TrigPolynomial(
        terms=tuple((2**k, complex(1.0 / math.sqrt(k))) for k in range(1, n + 1))
    )


@dataclass(frozen=True)
class LacunaryDiscreteWitness:
    """Witness on the integers: f = sum (1/sqrt k) delta_{-2^k} with unit
    atoms; the transform lives on the circle and is evaluated by quadrature."""

    param_n: int
    p: float
    q: float
    norm_f: float
    norm_fhat: float
    norm_fhat_l2: float
    parseval_l2: float
    polynomial: TrigPolynomial

    @property
    def ratio(self) -> float:
        return self.norm_fhat / self.norm_f


def lacunary_discrete_witness(
    n: int, p: float, q: float, grid_points: int | None = None
) -> LacunaryDiscreteWitness:
    if n < 1:
        raise ValueError("n must be >= 1")
    if not p > 2:
        raise ValueError("p must be > 2 (the time norms are summable only there)")
    min_grid = 8 * 2**n
    if grid_points is None:
        grid_points = min_grid
    if grid_points < min_grid:
        raise ValueError(f"grid too coarse: need at least {min_grid} points")
    k = np.arange(1, n + 1, dtype=np.float64)
    norm_f = float(np.sum(k ** (-p / 2.0)) ** (1.0 / p))
    poly = lacunary_trig_polynomial(n)
    norm_fhat = poly.quadrature_lq(q, grid_points)
    l2 = poly.quadrature_lq(2.0, grid_points)
    parseval = float(math.sqrt(np.sum(1.0 / k)))
    if abs(l2 - parseval) > 1e-6:
        raise ArithmeticError(
            f"quadrature L2 {l2} disagrees with Parseval value {parseval}"
        )
    return LacunaryDiscreteWitness(
        param_n=n,
        p=p,
        q=q,
        norm_f=norm_f,
        norm_fhat=norm_fhat,
        norm_fhat_l2=l2,
        parseval_l2=parseval,
        polynomial=poly,
    )


def clt_delta_witness(r: int, n: int, p: float, q: float) -> CltWitness:
    """f = sum_k (1/sqrt k) delta_{-e_k} on discrete (Z/r)^n with unit atoms.

    The transform is enumerated exactly over all r^n dual points; the tail
    probability P(Re fhat >= h(n)) with h(n)^2 = sigma^2 sum 1/k is the
    finite-scale version of the central-limit lower bound (asymptotically
    P(N(0,1) >= 1) ~ 0.1587)."""
    if not _is_prime(r):
        raise ValueError(f"r={r} must be prime")
    if r**n > EXHAUSTIVE_CAP:
        raise CapacityError(f"r^n = {r**n} exceeds cap {EXHAUSTIVE_CAP}")
    spec = GroupSpec(orders=(r,) * n, view=DISCRETE, mass=1.0)
    vals = np.zeros(spec.size, dtype=np.complex128)
    for k in range(1, n + 1):
        e_k = tuple(1 if j == k - 1 else 0 for j in range(n))
        vals[spec.index_of(spec.negate(e_k))] += 1.0 / math.sqrt(k)
    f = MeasuredFunction(spec, TIME, vals)
    fhat = forward(f)
    # Var(cos(2 pi U/r)) over a uniform r-th root: 1 for r=2, 1/2 for odd prime r.
    sigma_sq = 1.0 if r == 2 else 0.5
    harmonic = sum(1.0 / k for k in range(1, n + 1))
    threshold = math.sqrt(sigma_sq * harmonic)
    tail = float(np.count_nonzero(fhat.values.real >= threshold)) / spec.size
    point = WitnessPoint(
        family="clt_delta",
        param_n=n,
        group_descr=spec.describe(),
        p=p,
        q=q,
        norm_f=lp_norm(f, p),
        norm_fhat=lp_norm(fhat, q),
        ratio=lp_norm(fhat, q) / lp_norm(f, p),
        prediction=None,
        prediction_kind=None,
    )
    return CltWitness(
        point=point, tail_probability=tail, threshold=threshold, sigma_sq=sigma_sq
    )


def fit_growth(points, use_tail: bool = True) -> GrowthFit:
    """Least-squares slope of log ratio against log group size.

    With ``use_tail`` the first third of the points is dropped to suppress
    small-parameter transients; exact families are affine so either setting
    recovers the closed-form exponent."""
    if len(points) < 3:
        raise ValueError("need at least 3 witness points")
    sizes = [pt.group_size for pt in points]
    if any(b <= a for a, b in zip(sizes, sizes[1:])):
        raise ValueError("group sizes must be strictly increasing")
    if use_tail:
        start = len(points) // 3
        pts = points[start:] if len(points) - start >= 3 else points
    else:
        pts = points
    xs = np.log([pt.group_size for pt in pts])
    ys = np.log([pt.ratio for pt in pts])
    slope, intercept = np.polyfit(xs, ys, 1)
    fitted = slope * xs + intercept
    ss_res = float(np.sum((ys - fitted) ** 2))
    ss_tot = float(np.sum((ys - ys.mean()) ** 2))
    r_squared = 1.0 if ss_tot == 0.0 else max(0.0, 1.0 - ss_res / ss_tot)
    return GrowthFit(slope=float(slope), intercept=float(intercept), r_squared=r_squared)
