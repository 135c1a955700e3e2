"""Exact solution generators for the two equations in play.

Helmholtz (laplacian u + lambda^2 u = 0): plane waves, the radial field
a_norm(m-2, lambda|x - c|), and the square-membrane eigenfunctions.
Modified Helmholtz (laplacian u - mu^2 u = 0): the monotone radial field
b_norm(m-2, mu|x - c|).

Every generator returns a SolutionField that evaluates on single points
or (n, m) batches and is an entire function of R^m, so it satisfies its
equation on any dilated copy of a bounded domain without clipping.
helmholtz_residual provides the finite-difference self-check.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .geometry import EstimationError
from .specfun import a_norm, b_norm, gamma_fn

HELMHOLTZ = "helmholtz"
MODIFIED_HELMHOLTZ = "modified_helmholtz"

__all__ = [
    "SolutionField",
    "plane_wave",
    "radial_solution",
    "modified_radial_solution",
    "membrane_eigenfunction",
    "poisson_eval",
    "helmholtz_residual",
    "solution_to_json",
    "solution_from_json",
    "HELMHOLTZ",
    "MODIFIED_HELMHOLTZ",
]


@dataclass(frozen=True, eq=False)
class SolutionField:
    dimension: int
    wavenumber: float
    equation: str  # HELMHOLTZ or MODIFIED_HELMHOLTZ
    evaluate: Callable[[np.ndarray], np.ndarray]
    kind: str
    params: dict = field(default_factory=dict)

    def __call__(self, points):
        pts = np.asarray(points, dtype=float)
        single = pts.ndim == 1
        pts = np.atleast_2d(pts)
        if pts.shape[-1] != self.dimension:
            raise ValueError(
                f"field is {self.dimension}-d, points are {pts.shape[-1]}-d"
            )
        out = self.evaluate(pts)
        return float(out[0]) if single else out


def _check_wavenumber(k: float, name: str) -> float:
    k = float(k)
    if not np.isfinite(k) or k <= 0.0:
        raise ValueError(f"{name} must be positive, got {k}")
    return k


def plane_wave(m: int, lam: float, direction, phase: float = 0.0) -> SolutionField:
    """u(x) = cos(lam <d, x> + phase) for a unit vector d."""
    lam = _check_wavenumber(lam, "lambda")
    d = np.asarray(direction, dtype=float)
    if d.shape != (m,):
        raise ValueError(f"direction must have shape ({m},), got {d.shape}")
    if abs(float(d @ d) - 1.0) > 1e-12:
        raise ValueError("direction must be a unit vector (|d| = 1 within 1e-12)")
    phase = float(phase)

    def evaluate(pts):
        return np.cos(lam * (pts @ d) + phase)

    return SolutionField(
        dimension=m,
        wavenumber=lam,
        equation=HELMHOLTZ,
        evaluate=evaluate,
        kind="plane_wave",
        params={"lambda": lam, "direction": [float(v) for v in d], "phase": phase},
    )


def radial_solution(m: int, lam: float, center) -> SolutionField:
    """U(x) = a_norm(m-2, lam |x - center|); U(center) = 1.

    Solves the Helmholtz equation on all of R^m; decreasing while
    lam |x - center| stays below the first zero of J_{m/2}.
    """
    lam = _check_wavenumber(lam, "lambda")
    c = np.asarray(center, dtype=float)
    if c.shape != (m,):
        raise ValueError(f"center must have shape ({m},), got {c.shape}")
    if m < 2:
        raise ValueError(f"dimension must be >= 2, got {m}")

    def evaluate(pts):
        d = pts - c
        rho = np.sqrt(np.einsum("ij,ij->i", d, d))
        return a_norm(m - 2, lam * rho)

    return SolutionField(
        dimension=m,
        wavenumber=lam,
        equation=HELMHOLTZ,
        evaluate=evaluate,
        kind="radial",
        params={"lambda": lam, "center": [float(v) for v in c]},
    )


def modified_radial_solution(m: int, mu: float, center) -> SolutionField:
    """u(x) = b_norm(m-2, mu |x - center|): positive, radially increasing,
    solves the modified equation on all of R^m."""
    mu = _check_wavenumber(mu, "mu")
    c = np.asarray(center, dtype=float)
    if c.shape != (m,):
        raise ValueError(f"center must have shape ({m},), got {c.shape}")
    if m < 2:
        raise ValueError(f"dimension must be >= 2, got {m}")

    def evaluate(pts):
        d = pts - c
        rho = np.sqrt(np.einsum("ij,ij->i", d, d))
        return b_norm(m - 2, mu * rho)

    return SolutionField(
        dimension=m,
        wavenumber=mu,
        equation=MODIFIED_HELMHOLTZ,
        evaluate=evaluate,
        kind="modified_radial",
        params={"mu": mu, "center": [float(v) for v in c]},
    )


def _sinpi(y: np.ndarray) -> np.ndarray:
    # sin(pi*y) with exact zeros at integer y; plain sin(pi*y) would
    # leave ~1e-16 residue exactly where the membrane modes must vanish.
    n = np.round(y)
    r = y - n
    sign = 1.0 - 2.0 * (np.asarray(n, dtype=np.int64) & 1)
    return sign * np.sin(np.pi * r)


def membrane_eigenfunction(i: int, j: int, a: float = 1.0) -> SolutionField:
    """Dirichlet eigenfunction sin(i pi x1 / a) sin(j pi x2 / a) of the
    square (0, a)^2, with wavenumber (pi / a) sqrt(i^2 + j^2)."""
    i, j = int(i), int(j)
    if i < 1 or j < 1:
        raise ValueError(f"mode indices must be >= 1, got ({i}, {j})")
    a = float(a)
    if a <= 0.0:
        raise ValueError(f"side length must be > 0, got {a}")
    lam = (np.pi / a) * np.sqrt(float(i * i + j * j))

    def evaluate(pts):
        return _sinpi(i * pts[:, 0] / a) * _sinpi(j * pts[:, 1] / a)

    return SolutionField(
        dimension=2,
        wavenumber=float(lam),
        equation=HELMHOLTZ,
        evaluate=evaluate,
        kind="membrane",
        params={"i": i, "j": j, "a": a},
    )


_PEVAL_NODES, _PEVAL_WEIGHTS = np.polynomial.legendre.leggauss(160)
_PEVAL_THETA = 0.25 * np.pi * (_PEVAL_NODES + 1.0)
_PEVAL_W = 0.25 * np.pi * _PEVAL_WEIGHTS


def poisson_eval(m: int, lam: float, rho, nodes: int = 160):
    """Radial field value at radius rho via the Poisson-type integral

        c_m * int_0^1 (1 - s^2)^{(m-3)/2} cos(lam rho s) ds,
        c_m = 2 Gamma(m/2) / (sqrt(pi) Gamma((m-1)/2)).

    The substitution s = sin(theta) removes the m = 2 endpoint
    singularity and makes the integrand entire, so Gauss-Legendre in
    theta converges spectrally.  This is a Bessel-series-free route to
    the same function as radial_solution and is used to cross-validate
    it.
    """
    if m < 2:
        raise ValueError(f"dimension must be >= 2, got {m}")
    lam = _check_wavenumber(lam, "lambda")
    rho_arr = np.asarray(rho, dtype=float)
    if np.any(rho_arr < 0.0):
        raise ValueError("rho must be >= 0")
    scalar = rho_arr.ndim == 0
    rho_arr = np.atleast_1d(rho_arr)
    c_m = 2.0 * gamma_fn(0.5 * m) / (np.sqrt(np.pi) * gamma_fn(0.5 * (m - 1)))

    def rule(n):
        # int_0^1 (1-s^2)^{(m-3)/2} f(s) ds
        #   = int_0^{pi/2} cos(theta)^{m-2} f(sin theta) d(theta)
        if n == 160:
            theta, w = _PEVAL_THETA, _PEVAL_W
        else:
            x, wx = np.polynomial.legendre.leggauss(int(n))
            theta = 0.25 * np.pi * (x + 1.0)
            w = 0.25 * np.pi * wx
        ct = np.cos(theta) ** (m - 2)
        st = np.sin(theta)
        return c_m * ((w * ct) @ np.cos(lam * np.outer(st, rho_arr)))

    vals = rule(nodes)
    check = rule(max(int(nodes) // 2, 8))
    gap = float(np.max(np.abs(vals - check)))
    if gap > 1e-9:
        raise EstimationError(
            f"Poisson-integral quadrature not converged at {nodes} nodes "
            f"(refinement gap {gap:.1e}); raise `nodes` for this lam*rho"
        )
    return float(vals[0]) if scalar else vals


def helmholtz_residual(u: SolutionField, x, h: float = 1e-4) -> float:
    """Second-difference check of the field's PDE at a point.

    Returns laplacian(u) + k^2 u (Helmholtz) or laplacian(u) - k^2 u
    (modified); O(h^2) small for exact solutions.
    """
    if h <= 0.0:
        raise ValueError(f"step must be > 0, got {h}")
    x = np.asarray(x, dtype=float)
    m = u.dimension
    if x.shape != (m,):
        raise ValueError(f"point must have shape ({m},), got {x.shape}")
    pts = np.tile(x, (2 * m + 1, 1))
    for i in range(m):
        pts[2 * i, i] += h
        pts[2 * i + 1, i] -= h
    vals = u(pts)
    center = vals[-1]
    lap = (np.sum(vals[:-1]) - 2.0 * m * center) / (h * h)
    sign = 1.0 if u.equation == HELMHOLTZ else -1.0
    return float(lap + sign * u.wavenumber**2 * center)


def solution_to_json(u: SolutionField) -> dict:
    return {"kind": u.kind, **u.params}


def _require_keys(obj: dict, keys: set[str]):
    extra = set(obj) - keys
    if extra:
        raise ValueError(f"unknown fields in solution description: {sorted(extra)}")
    missing = keys - set(obj)
    if missing:
        raise ValueError(f"missing fields in solution description: {sorted(missing)}")


def solution_from_json(obj: dict) -> SolutionField:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise ValueError("solution description must be an object with a 'kind' field")
    kind = obj["kind"]
    if kind == "plane_wave":
        _require_keys(obj, {"kind", "lambda", "direction", "phase"})
        d = np.asarray(obj["direction"], dtype=float)
        return plane_wave(d.size, obj["lambda"], d, obj["phase"])
    if kind == "radial":
        _require_keys(obj, {"kind", "lambda", "center"})
        c = np.asarray(obj["center"], dtype=float)
        return radial_solution(c.size, obj["lambda"], c)
    if kind == "modified_radial":
        _require_keys(obj, {"kind", "mu", "center"})
        c = np.asarray(obj["center"], dtype=float)
        return modified_radial_solution(c.size, obj["mu"], c)
    if kind == "membrane":
        _require_keys(obj, {"kind", "i", "j", "a"})
        return membrane_eigenfunction(obj["i"], obj["j"], obj["a"])
    raise ValueError(f"unknown solution kind: {kind!r}")
