"""Numerical estimation of the (p, q)-norm of the Fourier operator on a
finite group: a structured candidate search (characters, deltas, subgroup
indicators, chirps, constants) plus multi-start gradient ascent on the
scale-invariant ratio ||fhat||_q / ||f||_p.

Every estimate is achieved by its stored witness, so estimates are always
valid lower bounds for the true norm.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .groups import GroupSpec, all_subgroups
from .norms import lp_norm, recip
from .transform import (
    MeasuredFunction,
    TIME,
    character_function,
    delta,
    forward,
)


@dataclass(frozen=True)
class EstimatorConfig:
    restarts: int = 32
    max_iters: int = 5000
    step_shrink: float = 0.5
    rel_tol: float = 1e-10
    smoothing_eps: float = 1e-12
    seed: int = 0

    def __post_init__(self):
        if self.restarts < 1 or self.max_iters < 1:
            raise ValueError("restarts and max_iters must be >= 1")
        if not (0 < self.step_shrink < 1):
            raise ValueError("step_shrink must lie in (0, 1)")
        if self.rel_tol <= 0 or self.smoothing_eps <= 0:
            raise ValueError("tolerances must be positive")


@dataclass
class NormEstimate:
    value: float
    witness: MeasuredFunction
    iterations: int
    converged: bool


def ratio(f: MeasuredFunction, p: float, q: float) -> float:
    """The unsmoothed objective ||fhat||_q / ||f||_p."""
    nf = lp_norm(f, p)
    if nf == 0.0:
        return 0.0
    return lp_norm(forward(f), q) / nf


def _chirp_values(spec: GroupSpec) -> np.ndarray | None:
    orders = spec.orders
    k = len(orders)
    if k < 2 or k % 2 != 0:
        return None
    r = orders[0]
    if any(m != r for m in orders):
        return None
    f = 2
    while f * f <= r:
        if r % f == 0:
            return None
        f += 1
    if r < 2:
        return None
    n = k // 2
    half = r**n
    idx = np.arange(half)
    digits = np.empty((half, n), dtype=np.int64)
    rem = idx.copy()
    for j in range(n - 1, -1, -1):
        digits[:, j] = rem % r
        rem //= r
    dots = (digits @ digits.T) % r
    return np.exp(2j * np.pi * dots / r).ravel()


def _structured_candidates(spec: GroupSpec):
    for chi in spec.elements():
        yield character_function(spec, chi)
    for x in spec.elements():
        yield delta(spec, at=x)
    if spec.size <= 256:
        for sub in all_subgroups(spec, max_generators=2):
            vals = np.zeros(spec.size, dtype=np.complex128)
            for member in sub.members:
                vals[spec.index_of(member)] = 1.0
            yield MeasuredFunction(spec, TIME, vals)
    chirp = _chirp_values(spec)
    if chirp is not None:
        yield MeasuredFunction(spec, TIME, chirp)
    yield MeasuredFunction(spec, TIME, np.ones(spec.size, dtype=np.complex128))


def structured_search(spec: GroupSpec, p: float, q: float) -> NormEstimate:
    """Best ratio over the structured candidate library."""
    best_val = -math.inf
    best = None
    for cand in _structured_candidates(spec):
        val = ratio(cand, p, q)
        if val > best_val:
            best_val = val
            best = cand
    return NormEstimate(value=best_val, witness=best, iterations=0, converged=True)


# -- smoothed ascent ---------------------------------------------------------

def _forward_values(vals: np.ndarray, spec: GroupSpec) -> np.ndarray:
    return spec.primal_atom * np.fft.fftn(vals.reshape(spec.orders)).ravel()


def _adjoint_values(vals: np.ndarray, spec: GroupSpec) -> np.ndarray:
    return spec.primal_atom * spec.size * np.fft.ifftn(vals.reshape(spec.orders)).ravel()


def log_ratio_and_grad(vals, spec: GroupSpec, p: float, q: float, eps: float):
    """log of the eps-smoothed ratio and its Wirtinger gradient d/d(conj f).

    The gradient with respect to the real parameterization (Re f, Im f) is
    (2 Re g, 2 Im g) for the returned g.  Requires finite p and q.
    """
    vals = np.asarray(vals, dtype=np.complex128)
    fhat = _forward_values(vals, spec)
    wp, wq = spec.primal_atom, spec.dual_atom
    mp = np.abs(vals) ** 2 + eps * eps
    mq = np.abs(fhat) ** 2 + eps * eps
    sp = wp * float(np.sum(mp ** (p / 2.0)))
    sq = wq * float(np.sum(mq ** (q / 2.0)))
    value = math.log(sq) / q - math.log(sp) / p
    dual_weight = wq * mq ** (q / 2.0 - 1.0) * fhat / (2.0 * sq)
    grad = _adjoint_values(dual_weight, spec) - wp * mp ** (p / 2.0 - 1.0) * vals / (
        2.0 * sp
    )
    return value, grad


def _ascend_from(start, spec, p, q, config):
    vals = start / np.linalg.norm(start)
    obj, grad = log_ratio_and_grad(vals, spec, p, q, config.smoothing_eps)
    step = 1.0
    iters = 0
    converged = False
    for _ in range(config.max_iters):
        iters += 1
        gnorm = np.linalg.norm(grad)
        if gnorm == 0.0:
            converged = True
            break
        direction = grad / gnorm
        improved = False
        while step > 1e-18:
            trial = vals + step * direction
            tnorm = np.linalg.norm(trial)
            if tnorm == 0.0:
                step *= config.step_shrink
                continue
            trial /= tnorm
            tobj, tgrad = log_ratio_and_grad(trial, spec, p, q, config.smoothing_eps)
            if tobj > obj:
                improvement = tobj - obj
                vals, obj, grad = trial, tobj, tgrad
                step = min(step / config.step_shrink, 1.0)  # let the step grow back
                improved = True
                if improvement <= config.rel_tol * max(1.0, abs(obj)):
                    converged = True
                break
            step *= config.step_shrink
        if not improved:
            converged = True  # no ascent direction at the smallest step
            break
        if converged:
            break
    return vals, iters, converged


def ascent_estimate(
    spec: GroupSpec, p: float, q: float, config: EstimatorConfig | None = None
) -> NormEstimate:
    """Multi-start gradient ascent on the smoothed log-ratio.

    Starting points are characters, then deltas, then complex Gaussian noise,
    up to ``config.restarts`` starts; the returned value is recomputed
    unsmoothed at the best witness.  For p or q infinite there is no smooth
    objective; the structured library is scanned instead (reported with
    iterations = 0).
    """
    config = config or EstimatorConfig()
    u, v = recip(p), recip(q)
    if u == 0.0 or v == 0.0:
        return structured_search(spec, p, q)

    starts: list[np.ndarray] = []
    for chi in spec.elements():
        if len(starts) >= config.restarts:
            break
        starts.append(character_function(spec, chi).values)
    for x in spec.elements():
        if len(starts) >= config.restarts:
            break
        starts.append(delta(spec, at=x).values)
    rng = np.random.default_rng(config.seed)
    while len(starts) < config.restarts:
        noise = rng.standard_normal(spec.size) + 1j * rng.standard_normal(spec.size)
        starts.append(noise)

    best_val = -math.inf
    best_witness = None
    total_iters = 0
    all_converged = True
    for start in starts:
        vals, iters, converged = _ascend_from(start, spec, p, q, config)
        total_iters += iters
        all_converged = all_converged and converged
        witness = MeasuredFunction(spec, TIME, vals)
        val = ratio(witness, p, q)
        if val > best_val:  # strict: deterministic lowest-index tie-break
            best_val = val
            best_witness = witness
    return NormEstimate(
        value=best_val,
        witness=best_witness,
        iterations=total_iters,
        converged=all_converged,
    )


def estimate_norm(
    spec: GroupSpec, p: float, q: float, config: EstimatorConfig | None = None
) -> NormEstimate:
    """Best of the structured search and the ascent estimate."""
    structured = structured_search(spec, p, q)
    ascended = ascent_estimate(spec, p, q, config)
    if ascended.value > structured.value:
        return ascended
    return replace(structured, iterations=ascended.iterations, converged=ascended.converged)


def log_convexity_check(points) -> float:
    """Max midpoint convexity defect along a collinear set of exponent points.

    ``points`` are (u, v, log_value) triples on one line in the (1/p, 1/q)
    plane.  For each interior point the defect is log K there minus the
    linear interpolation of its neighbors; convexity of log K makes every
    defect nonpositive up to numerical error.
    """
    pts = []
    for u, v, logval in points:
        if not (math.isfinite(u) and math.isfinite(v) and math.isfinite(logval)):
            raise ValueError("points must be finite")
        pts.append((float(u), float(v), float(logval)))
    if len(pts) < 3:
        raise ValueError("need at least 3 points")
    # Deduplicate identical exponent points (defect 0 by convention).
    unique = {}
    for u, v, logval in pts:
        unique[(u, v)] = logval
    pts = [(u, v, val) for (u, v), val in unique.items()]
    if len(pts) < 3:
        return 0.0
    u0, v0, _ = pts[0]
    du = max(pts, key=lambda t: (t[0] - u0) ** 2 + (t[1] - v0) ** 2)
    dx, dy = du[0] - u0, du[1] - v0
    scale = math.hypot(dx, dy)
    if scale == 0.0:
        return 0.0
    dx, dy = dx / scale, dy / scale
    for u, v, _ in pts:
        cross = (u - u0) * dy - (v - v0) * dx
        if abs(cross) > 1e-9:
            raise ValueError("exponent points are not collinear")
    param = sorted(((u - u0) * dx + (v - v0) * dy, val) for u, v, val in pts)
    worst = 0.0
    for (tl, yl), (tm, ym), (tr, yr) in zip(param, param[1:], param[2:]):
        lam = (tm - tl) / (tr - tl)
        defect = ym - ((1.0 - lam) * yl + lam * yr)
        worst = max(worst, defect)
    return worst
