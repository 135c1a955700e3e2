"""Implicit bounded regions of R^m: balls, boxes, differences, translates.

A Domain is an indicator function plus a bounding box; boundaries are
measure zero and may be classified either way.  Composite volumes are
estimated by seeded Monte Carlo, analytic volumes are attached where
known.  The JSON grammar mirrors the constructors:

    {"kind": "ball", "center": [...], "r": ...}
    {"kind": "box", "low": [...], "high": [...]}
    {"kind": "difference", "a": {...}, "b": {...}}
    {"kind": "translate", "of": {...}, "by": [...]}
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .specfun import gamma_fn

__all__ = [
    "Domain",
    "DilatedCopy",
    "EstimationError",
    "ball",
    "box",
    "difference",
    "translate",
    "custom_domain",
    "unit_ball_volume",
    "volume",
    "equivalent_radius",
    "circumradius_about",
    "exact_circumradius",
    "domain_to_json",
    "domain_from_json",
]


class EstimationError(RuntimeError):
    """A sampling-based estimate could not be formed."""


def _vec(x, m: int | None = None) -> np.ndarray:
    v = np.asarray(x, dtype=float)
    if v.ndim != 1:
        raise ValueError(f"expected a coordinate vector, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError("coordinates must be finite")
    if m is not None and v.size != m:
        raise ValueError(f"dimension mismatch: expected {m}, got {v.size}")
    return v


@dataclass(frozen=True, eq=False)
class Domain:
    """Bounded implicit region of R^m.

    indicator maps an (n, m) array of points to an (n,) boolean array; it
    is False everywhere outside bounding_box.
    """

    dimension: int
    indicator: Callable[[np.ndarray], np.ndarray]
    bounding_box: tuple[np.ndarray, np.ndarray]
    analytic_volume: float | None
    kind: str
    description: dict | None = field(default=None, repr=False)

    def contains(self, points) -> np.ndarray | bool:
        pts = np.asarray(points, dtype=float)
        single = pts.ndim == 1
        pts = np.atleast_2d(pts)
        if pts.shape[-1] != self.dimension:
            raise ValueError(
                f"dimension mismatch: domain is {self.dimension}-d, points are {pts.shape[-1]}-d"
            )
        inside = np.asarray(self.indicator(pts), dtype=bool)
        return bool(inside[0]) if single else inside


def unit_ball_volume(m: int) -> float:
    """Volume of the unit ball, 2 pi^{m/2} / (m Gamma(m/2))."""
    if m < 1:
        raise ValueError(f"dimension must be >= 1, got {m}")
    return 2.0 * math.pi ** (0.5 * m) / (m * gamma_fn(0.5 * m))


def ball(center, r: float) -> Domain:
    """Open ball of radius r; analytic volume unit_ball_volume(m) * r^m."""
    c = _vec(center)
    r = float(r)
    if r <= 0.0:
        raise ValueError(f"ball radius must be > 0, got {r}")
    m = c.size

    def inside(pts):
        d = pts - c
        return np.einsum("ij,ij->i", d, d) < r * r

    return Domain(
        dimension=m,
        indicator=inside,
        bounding_box=(c - r, c + r),
        analytic_volume=unit_ball_volume(m) * r**m,
        kind="ball",
        description={"kind": "ball", "center": [float(v) for v in c], "r": r},
    )


def box(low, high) -> Domain:
    """Open axis-aligned box with low < high componentwise."""
    lo = _vec(low)
    hi = _vec(high, lo.size)
    if not np.all(hi > lo):
        raise ValueError("box requires low < high componentwise")

    def inside(pts):
        return np.all((pts > lo) & (pts < hi), axis=1)

    return Domain(
        dimension=lo.size,
        indicator=inside,
        bounding_box=(lo.copy(), hi.copy()),
        analytic_volume=float(np.prod(hi - lo)),
        kind="box",
        description={"kind": "box", "low": [float(v) for v in lo], "high": [float(v) for v in hi]},
    )


def difference(a: Domain, b: Domain) -> Domain:
    """Set difference a \\ b; volume is estimated on demand."""
    if a.dimension != b.dimension:
        raise ValueError(
            f"dimension mismatch: {a.dimension} vs {b.dimension}"
        )

    def inside(pts):
        return a.indicator(pts) & ~b.indicator(pts)

    desc = None
    if a.description is not None and b.description is not None:
        desc = {"kind": "difference", "a": a.description, "b": b.description}
    return Domain(
        dimension=a.dimension,
        indicator=inside,
        bounding_box=(a.bounding_box[0].copy(), a.bounding_box[1].copy()),
        analytic_volume=None,
        kind="difference",
        description=desc,
    )


def translate(d: Domain, by) -> Domain:
    shift = _vec(by, d.dimension)

    def inside(pts):
        return d.indicator(pts - shift)

    desc = None
    if d.description is not None:
        desc = {"kind": "translate", "of": d.description, "by": [float(v) for v in shift]}
    return Domain(
        dimension=d.dimension,
        indicator=inside,
        bounding_box=(d.bounding_box[0] + shift, d.bounding_box[1] + shift),
        analytic_volume=d.analytic_volume,
        kind="translate",
        description=desc,
    )


def custom_domain(dimension, indicator, bounding_box, analytic_volume=None) -> Domain:
    lo = _vec(bounding_box[0], dimension)
    hi = _vec(bounding_box[1], dimension)
    if not np.all(hi > lo):
        raise ValueError("bounding box must be nondegenerate")
    return Domain(
        dimension=int(dimension),
        indicator=indicator,
        bounding_box=(lo, hi),
        analytic_volume=analytic_volume,
        kind="custom",
        description=None,
    )


def volume(d: Domain, samples: int = 2_000_000, seed: int = 0) -> tuple[float, float]:
    """(volume, error bar): analytic when available, else seeded Monte
    Carlo over the bounding box with a 3-sigma error bar."""
    if d.analytic_volume is not None:
        return float(d.analytic_volume), 0.0
    lo, hi = d.bounding_box
    vbox = float(np.prod(hi - lo))
    rng = np.random.default_rng(seed)
    pts = rng.uniform(lo, hi, size=(int(samples), d.dimension))
    hits = d.indicator(pts)
    p = float(np.mean(hits))
    err3 = 3.0 * vbox * math.sqrt(max(p * (1.0 - p), 0.0) / samples)
    return vbox * p, err3


def equivalent_radius(d: Domain, samples: int = 2_000_000, seed: int = 0) -> float:
    """Radius r with |B_r| = |D|, i.e. (|D| / omega_m)^(1/m)."""
    v, _ = volume(d, samples=samples, seed=seed)
    if v <= 0.0:
        raise ValueError(f"domain volume must be positive, got {v}")
    return (v / unit_ball_volume(d.dimension)) ** (1.0 / d.dimension)


def circumradius_about(d: Domain, x0, budget: int = 1_000_000, seed: int = 0) -> float:
    """Sampled sup of |y - x0| over inside points.

    Converges to the true enclosing radius from below; deterministic for
    a fixed seed, and monotone in budget under the same seed (growing the
    budget extends the same sample stream).
    """
    x0 = _vec(x0, d.dimension)
    lo, hi = d.bounding_box
    rng = np.random.default_rng(seed)
    best = -1.0
    remaining = int(budget)
    found = False
    while remaining > 0:
        n = min(remaining, 500_000)
        pts = rng.uniform(lo, hi, size=(n, d.dimension))
        hits = d.indicator(pts)
        if np.any(hits):
            found = True
            dist2 = np.einsum("ij,ij->i", pts[hits] - x0, pts[hits] - x0)
            best = max(best, float(np.max(dist2)))
        remaining -= n
    if not found:
        raise EstimationError(
            f"no inside point found in {budget} samples; bounding box may be too loose"
        )
    return math.sqrt(best)


def exact_circumradius(d: Domain, x0) -> float | None:
    """Exact sup of |y - x0| over the closure, for shapes where corner /
    center arithmetic gives it; None when only sampling can answer."""
    x0 = _vec(x0, d.dimension)
    if d.kind == "ball":
        c = np.asarray(d.description["center"], dtype=float)
        return float(np.linalg.norm(c - x0)) + float(d.description["r"])
    if d.kind == "box":
        lo, hi = d.bounding_box
        corners = np.maximum(np.abs(lo - x0), np.abs(hi - x0))
        return float(np.linalg.norm(corners))
    if d.kind == "translate" and d.description is not None:
        inner = domain_from_json(d.description["of"])
        return exact_circumradius(inner, x0 - np.asarray(d.description["by"], dtype=float))
    return None


@dataclass(frozen=True, eq=False)
class DilatedCopy:
    """The base domain together with every ball of radius r centered on
    its boundary.  Solution generators in this package are entire, so
    membership here is only offered for commentary / admissibility
    reporting, decided by distance-to-base sampling."""

    base: Domain
    r: float

    def __post_init__(self):
        if self.r <= 0.0:
            raise ValueError(f"dilation radius must be > 0, got {self.r}")

    @property
    def bounding_box(self) -> tuple[np.ndarray, np.ndarray]:
        lo, hi = self.base.bounding_box
        return lo - self.r, hi + self.r

    def contains(self, point, samples: int = 20_000, seed: int = 0) -> bool:
        p = _vec(point, self.base.dimension)
        if self.base.contains(p):
            return True
        lo, hi = self.base.bounding_box
        rng = np.random.default_rng(seed)
        pts = rng.uniform(lo, hi, size=(samples, self.base.dimension))
        pts = pts[self.base.indicator(pts)]
        if pts.shape[0] == 0:
            raise EstimationError("no inside point of the base found while sampling")
        d2 = np.einsum("ij,ij->i", pts - p, pts - p)
        return bool(np.min(d2) < self.r * self.r)


def domain_to_json(d: Domain) -> dict:
    if d.description is None:
        raise ValueError(f"domain of kind {d.kind!r} has no JSON description")
    return d.description


def _require_keys(obj: dict, keys: set[str]):
    extra = set(obj) - keys
    if extra:
        raise ValueError(f"unknown fields in domain description: {sorted(extra)}")
    missing = keys - set(obj)
    if missing:
        raise ValueError(f"missing fields in domain description: {sorted(missing)}")


def domain_from_json(obj: dict) -> Domain:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise ValueError("domain description must be an object with a 'kind' field")
    kind = obj["kind"]
    if kind == "ball":
        _require_keys(obj, {"kind", "center", "r"})
        return ball(obj["center"], obj["r"])
    if kind == "box":
        _require_keys(obj, {"kind", "low", "high"})
        return box(obj["low"], obj["high"])
    if kind == "difference":
        _require_keys(obj, {"kind", "a", "b"})
        return difference(domain_from_json(obj["a"]), domain_from_json(obj["b"]))
    if kind == "translate":
        _require_keys(obj, {"kind", "of", "by"})
        return translate(domain_from_json(obj["of"]), obj["by"])
    raise ValueError(f"unknown domain kind: {kind!r}")
