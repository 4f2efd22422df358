"""Reconstruct oriented cylinder axes from coordinate tables.

Tables parameterize each cylinder against a pivot: the pivot cylinder has
radius 1 and its axis is the z-axis.  Every other cylinder i is given by two
direction angles (t, p), the height z of its contact with the pivot, its
radius r, and a placement side sigma.  The axis is placed on the common
perpendicular through (0, 0, z):

    a_i = (0, 0, z_i) + (1 + r_i) * sigma_i * unit(zhat x n_i)

so the pivot contact is exact by construction and sigma_i equals the
pivot-row chirality entry.

The tables do not state how (t, p) map to the direction vector, and the
angle ranges rule out reading it off the names; the mapping is calibrated
against a reference configuration whose mutual tangency is known.  Four
candidate conventions are tried; exactly one fits the published tables
(polar angle from +z with clockwise azimuth).
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Mapping, Sequence

import numpy as np

from .invariants import RingMatrix
from .seidel import ChiralityMatrix, validate

PARALLEL_TOL = 1e-12
SIGN_TOL = 1e-9
TANGENCY_TOL = 1e-5

ZHAT = np.array([0.0, 0.0, 1.0])


class GeometryError(ValueError):
    pass


class DirectionParallelToPivot(GeometryError):
    pass


class ParallelLines(GeometryError):
    pass


class ParallelPair(GeometryError):
    def __init__(self, i: int, k: int):
        super().__init__(f"lines {i} and {k} are parallel; chirality undefined")
        self.pair = (i, k)


class DegenerateSign(GeometryError):
    """An encaging dot product fell below the sign tolerance."""

    def __init__(self, i: int, triple: tuple[int, int, int], value: float):
        super().__init__(
            f"encaging sign for line {i}, ring {triple} is degenerate ({value:.3e})"
        )
        self.line = i
        self.triple = triple
        self.value = value


class NoConventionFits(GeometryError):
    pass


class Ambiguous(GeometryError):
    pass


class AngleConvention(enum.Enum):
    """Closed candidate set for the (t, p) -> direction mapping."""

    POLAR = "polar"
    POLAR_CW = "polar_cw"
    LATITUDE = "latitude"
    LATITUDE_CW = "latitude_cw"

    def direction(self, t: float, p: float) -> np.ndarray:
        st, ct = math.sin(t), math.cos(t)
        sp, cp = math.sin(p), math.cos(p)
        if self is AngleConvention.POLAR:
            return np.array([st * cp, st * sp, ct])
        if self is AngleConvention.POLAR_CW:
            return np.array([st * cp, -st * sp, ct])
        if self is AngleConvention.LATITUDE:
            return np.array([ct * cp, ct * sp, st])
        return np.array([ct * cp, -ct * sp, st])


#: The convention the published coordinate tables turn out to use; recover it
#: from data with calibrate_convention.
DEFAULT_CONVENTION = AngleConvention.POLAR_CW


@dataclass(frozen=True)
class LineSpec:
    t: float
    p: float
    z: float
    r: float
    sigma: int = 1

    def __post_init__(self):
        if self.r <= 0:
            raise GeometryError(f"radius must be positive, got {self.r}")
        if self.sigma not in (-1, 1):
            raise GeometryError(f"sigma must be +1 or -1, got {self.sigma}")


@dataclass(frozen=True)
class LineConfiguration:
    """Pivot cylinder (radius 1, z-axis) plus n-1 parameterized lines."""

    lines: tuple[LineSpec, ...]
    pivot_radius: float = 1.0

    @property
    def n(self) -> int:
        return len(self.lines) + 1

    def radii(self) -> list[float]:
        return [self.pivot_radius] + [s.r for s in self.lines]


@dataclass(frozen=True)
class OrientedLine:
    point: np.ndarray
    direction: np.ndarray

    def __post_init__(self):
        if abs(float(np.linalg.norm(self.direction)) - 1.0) > 1e-12:
            raise GeometryError("direction must be a unit vector")


def realize(config: LineConfiguration, conv: AngleConvention) -> list[OrientedLine]:
    """Oriented axes for the pivot and every parameterized line."""
    out = [OrientedLine(np.zeros(3), ZHAT.copy())]
    for idx, s in enumerate(config.lines, start=1):
        n = conv.direction(s.t, s.p)
        cr = np.cross(ZHAT, n)
        norm = float(np.linalg.norm(cr))
        if norm < PARALLEL_TOL:
            raise DirectionParallelToPivot(f"line {idx} is parallel to the pivot axis")
        a = np.array([0.0, 0.0, s.z]) + (config.pivot_radius + s.r) * s.sigma * cr / norm
        out.append(OrientedLine(a, n))
    return out


def pair_distance(A: OrientedLine, B: OrientedLine) -> float:
    """Shortest distance between two skew lines."""
    cr = np.cross(A.direction, B.direction)
    norm = float(np.linalg.norm(cr))
    if norm < PARALLEL_TOL:
        raise ParallelLines("lines are parallel")
    return abs(float(np.dot(B.point - A.point, cr))) / norm


def axis_distance_parallel(A: OrientedLine, B: OrientedLine) -> float:
    """Perpendicular distance between parallel axes."""
    d = B.point - A.point
    d = d - np.dot(d, A.direction) * A.direction
    return float(np.linalg.norm(d))


@dataclass(frozen=True)
class PairResidual:
    i: int
    k: int
    distance: float
    residual: float
    parallel: bool


@dataclass(frozen=True)
class TangencyReport:
    residuals: tuple[PairResidual, ...]
    max_residual: float
    tol: float
    passed: bool


def verify_tangency(
    config: LineConfiguration,
    conv: AngleConvention,
    tol: float = TANGENCY_TOL,
) -> TangencyReport:
    """Check |pairwise distance - (r_i + r_k)| <= tol for every pair.

    Parallel pairs are legal (parallel cylinders can touch) and are measured
    by the perpendicular distance between axes.
    """
    lines = realize(config, conv)
    radii = config.radii()
    rows = []
    worst = 0.0
    for i, k in combinations(range(len(lines)), 2):
        try:
            d = pair_distance(lines[i], lines[k])
            par = False
        except ParallelLines:
            d = axis_distance_parallel(lines[i], lines[k])
            par = True
        resid = abs(d - (radii[i] + radii[k]))
        worst = max(worst, resid)
        rows.append(PairResidual(i, k, d, resid, par))
    return TangencyReport(tuple(rows), worst, tol, worst <= tol)


def calibrate_convention(
    reference: LineConfiguration, tol: float = TANGENCY_TOL
) -> AngleConvention:
    """Select the unique angle convention under which the reference
    configuration is mutually tangent."""
    if not reference.lines:
        raise NoConventionFits("reference configuration has no lines to constrain")
    fits = []
    for conv in AngleConvention:
        try:
            report = verify_tangency(reference, conv, tol)
        except DirectionParallelToPivot:
            continue
        if report.passed:
            fits.append(conv)
    if not fits:
        raise NoConventionFits(f"no candidate convention fits at tol={tol}")
    if len(fits) > 1:
        raise Ambiguous(f"multiple conventions fit: {[c.value for c in fits]}")
    return fits[0]


def chirality_from_geometry(
    lines: Sequence[OrientedLine],
    parallel_entries: Mapping[tuple[int, int], int] | None = None,
) -> ChiralityMatrix:
    """Sign of (a_k - a_i) . (n_i x n_k) for every pair.

    The sign is undefined for parallel pairs; those entries must be supplied
    via parallel_entries (keyed (i, k) with i < k), otherwise ParallelPair is
    raised.
    """
    m = len(lines)
    rows = [[0] * m for _ in range(m)]
    for i, k in combinations(range(m), 2):
        cr = np.cross(lines[i].direction, lines[k].direction)
        if float(np.linalg.norm(cr)) < PARALLEL_TOL:
            if parallel_entries and (i, k) in parallel_entries:
                s = parallel_entries[(i, k)]
            else:
                raise ParallelPair(i, k)
        else:
            s = 1 if float(np.dot(lines[k].point - lines[i].point, cr)) > 0 else -1
        rows[i][k] = rows[k][i] = s
    return validate(rows)


def shortest_unit_vectors(
    lines: Sequence[OrientedLine], i: int
) -> dict[int, np.ndarray]:
    """Unit vectors from line i toward each other line, along the common
    perpendicular (so each is orthogonal to line i's direction)."""
    out = {}
    for k in range(len(lines)):
        if k == i:
            continue
        cr = np.cross(lines[i].direction, lines[k].direction)
        norm = float(np.linalg.norm(cr))
        if norm < PARALLEL_TOL:
            raise ParallelPair(*sorted((i, k)))
        s = 1.0 if float(np.dot(lines[k].point - lines[i].point, cr)) > 0 else -1.0
        out[k] = s * cr / norm
    return out


def encages(
    lines: Sequence[OrientedLine], i: int, triple: tuple[int, int, int]
) -> bool:
    """Does the ring of three lines encage line i?

    Viewed along line i, the contact directions r_ij, r_im, r_is are unit
    vectors in a plane.  The ring encages i exactly when the three do not fit
    in a half-plane, i.e. for each one of them the other two straddle the
    line it spans.  The straddle test for vectors u, v against axis w is the
    sign of the dot product of the projections of u and v orthogonal to w,
    which reduces to u.v - (u.w)(v.w); encaged means all three signs are -1.
    """
    j, m, s = triple
    if len({i, j, m, s}) != 4:
        raise GeometryError("line and ring indices must be distinct")
    r = shortest_unit_vectors(lines, i)

    def straddle(a: int, b: int, axis: int) -> int:
        g = float(
            np.dot(r[a], r[b]) - np.dot(r[a], r[axis]) * np.dot(r[b], r[axis])
        )
        if abs(g) < SIGN_TOL:
            raise DegenerateSign(i, triple, g)
        return 1 if g > 0 else -1

    total = straddle(j, s, m) + straddle(m, s, j) + straddle(j, m, s)
    return total == -3


def ring_matrix_from_geometry(lines: Sequence[OrientedLine]) -> RingMatrix:
    """Entry (i, k): number of rings encaging line i that contain line k."""
    m = len(lines)
    rows = [[0] * m for _ in range(m)]
    for i in range(m):
        others = [k for k in range(m) if k != i]
        for triple in combinations(others, 3):
            if encages(lines, i, triple):
                for k in triple:
                    rows[i][k] += 1
    return RingMatrix(tuple(tuple(r) for r in rows))


def axis_segments(
    lines: Sequence[OrientedLine], half_length: float
) -> list[tuple[int, np.ndarray, np.ndarray]]:
    """Finite segments a_i -+ L n_i for exporting geometry to plotting tools."""
    return [
        (i, ln.point - half_length * ln.direction, ln.point + half_length * ln.direction)
        for i, ln in enumerate(lines)
    ]
