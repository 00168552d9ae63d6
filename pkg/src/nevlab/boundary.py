"""Closed sets on the unit circle stored through their complementary arcs.

A closed set E on the torus is represented by the sorted list of open arcs
(gaps) composing its complement.  Everything downstream needs only a handful
of primitives: euclidean distance from a disc point to E, the arc-length
measure of chordal neighborhoods of E, a windowed estimate of the boundary
growth exponent of those neighborhoods, and the dyadic far-set / corona cells
used by the summability bounds.

Angles are radians.  Gap starts are normalized to [0, 2*pi); a gap's end may
exceed 2*pi when it wraps.  Total gap length up to and including 2*pi is
legal: coincident endpoints encode one-point components of E (the canonical
single-point set is one gap of length 2*pi).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

TWO_PI = 2.0 * np.pi
_EPS = 1e-12


class InvalidArcSet(ValueError):
    """Gap list does not describe a nonempty closed set."""


def _norm_angle(a: float) -> float:
    return float(np.mod(a, TWO_PI))


@dataclass(frozen=True)
class ArcSet:
    """Closed subset of the circle, given by its complementary open arcs.

    ``gaps`` is a sorted tuple of (start, end) with start in [0, 2*pi) and
    0 < end - start <= 2*pi.  Use :func:`make_arc_set` to build one from raw
    angle pairs.
    """

    gaps: tuple[tuple[float, float], ...]

    # -- derived geometry ---------------------------------------------------

    @property
    def is_full_circle(self) -> bool:
        return len(self.gaps) == 0

    @property
    def gap_lengths(self) -> np.ndarray:
        return np.array([b - a for a, b in self.gaps])

    @property
    def total_gap_length(self) -> float:
        return float(self.gap_lengths.sum()) if self.gaps else 0.0

    def gap_endpoints(self, j: int) -> tuple[complex, complex]:
        """Unit-modulus endpoints (a_j, b_j) of gap j."""
        a, b = self.gaps[j]
        return complex(np.exp(1j * a)), complex(np.exp(1j * b))

    def gap_half_length(self, j: int) -> float:
        """delta_j: half the arc length of gap j."""
        a, b = self.gaps[j]
        return 0.5 * (b - a)

    def arcs(self) -> list[tuple[float, float]]:
        """Closed arcs [u, v] composing E (v >= u; v - u = 0 is a point).

        For the full circle returns [(0, 2*pi)].
        """
        if self.is_full_circle:
            return [(0.0, TWO_PI)]
        out = []
        n = len(self.gaps)
        for i in range(n):
            _, v_end = self.gaps[i]
            u_next = self.gaps[(i + 1) % n][0]
            start = _norm_angle(v_end)
            length = np.mod(u_next - v_end, TWO_PI)
            if abs(self.total_gap_length - TWO_PI) < _EPS and n == 1:
                length = 0.0
            out.append((start, start + float(length)))
        return out

    @property
    def measure(self) -> float:
        """Arc-length (Lebesgue) measure of E."""
        return max(0.0, TWO_PI - self.total_gap_length)

    # -- core operations -----------------------------------------------------

    def gap_index_of_angle(self, theta) -> np.ndarray:
        """Index of the gap containing each angle, -1 where the angle is in E."""
        theta = np.mod(np.asarray(theta, dtype=float), TWO_PI)
        if self.is_full_circle:
            return np.full(theta.shape, -1, dtype=int)
        starts = np.array([a for a, _ in self.gaps])
        ends = np.array([b for _, b in self.gaps])
        idx = np.searchsorted(starts, theta, side="right") - 1
        # angles before the first start may sit in the wrapped tail of the
        # last gap
        idx = np.where(idx < 0, len(starts) - 1, idx)
        inside = (np.mod(theta - starts[idx], TWO_PI) < (ends - starts)[idx] - 0.0)
        # boundary angles (exactly an endpoint) belong to E
        on_start = np.isclose(np.mod(theta - starts[idx], TWO_PI), 0.0, atol=1e-15)
        on_end = np.isclose(np.mod(theta - ends[idx], TWO_PI), 0.0, atol=1e-15)
        inside &= ~(on_start | on_end)
        return np.where(inside, idx, -1)

    def distance(self, z) -> np.ndarray:
        """Euclidean distance from z (|z| <= 1, scalars or arrays) to E.

        Exact: an angle inside E projects radially; an angle inside a gap is
        closest to one of that gap's two endpoints.
        """
        z_in = np.asarray(z, dtype=complex)
        z1 = np.atleast_1d(z_in)
        r = np.abs(z1)
        if self.is_full_circle:
            d = np.abs(1.0 - r)
            return d.reshape(z_in.shape) if z_in.shape else d[0]
        theta = np.angle(z1)
        idx = self.gap_index_of_angle(theta)
        d = np.abs(1.0 - r)  # value where arg z lies in E
        in_gap = idx >= 0
        if np.any(in_gap):
            gi = idx[in_gap]
            starts = np.array([a for a, _ in self.gaps])[gi]
            ends = np.array([b for _, b in self.gaps])[gi]
            zz = z1[in_gap]
            da = np.abs(zz - np.exp(1j * starts))
            db = np.abs(zz - np.exp(1j * ends))
            d[in_gap] = np.minimum(da, db)
        return d.reshape(z_in.shape) if z_in.shape else float(d[0])

    def gap_distance(self, j: int, z) -> np.ndarray:
        """Distance to the two endpoints of gap j (equals d(z, E) inside cone j)."""
        a, b = self.gap_endpoints(j)
        z = np.asarray(z, dtype=complex)
        return np.minimum(np.abs(z - a), np.abs(z - b))

    def neighborhood_measure(self, x: float) -> float:
        """Arc length of the chordal x-neighborhood {t : d(e^it, E) < x}.

        Exact: each closed arc of E is fattened by the angular radius
        2*arcsin(min(x, 2)/2); overlaps are merged on the circle.
        """
        if x <= 0.0:
            return 0.0
        if self.is_full_circle:
            return TWO_PI
        h = 2.0 * np.arcsin(min(x, 2.0) / 2.0)
        intervals = []
        for u, v in self.arcs():
            lo, hi = u - h, v + h
            if hi - lo >= TWO_PI:
                return TWO_PI
            lo_n = _norm_angle(lo)
            intervals.append((lo_n, lo_n + (hi - lo)))
        return _merged_length(intervals)

    def fattened(self, x: float) -> "ArcSet | None":
        """The closed x-neighborhood of E as an ArcSet, or None if it is all of T."""
        if self.is_full_circle:
            return self
        h = 2.0 * np.arcsin(min(x, 2.0) / 2.0)
        intervals = []
        for u, v in self.arcs():
            lo, hi = u - h, v + h
            if hi - lo >= TWO_PI:
                return None
            lo_n = _norm_angle(lo)
            intervals.append((lo_n, lo_n + (hi - lo)))
        merged = _merge_circle_intervals(intervals)
        if not merged:
            return None
        gaps = _complement_intervals(merged)
        if not gaps:
            return None
        return ArcSet(gaps=tuple(gaps))

    def far_set(self, x: float) -> "ArcSet | None":
        """{t in T : d(e^it, E) >= x} as an ArcSet, or None when empty.

        The far set's complement is the open x-neighborhood of E, so the
        neighborhood intervals become the gaps.
        """
        if self.is_full_circle:
            return None
        h = 2.0 * np.arcsin(min(x, 2.0) / 2.0)
        intervals = []
        for u, v in self.arcs():
            lo, hi = u - h, v + h
            if hi - lo >= TWO_PI:
                return None
            lo_n = _norm_angle(lo)
            intervals.append((lo_n, lo_n + (hi - lo)))
        merged = _merge_circle_intervals(intervals)
        if sum(b - a for a, b in merged) >= TWO_PI - _EPS:
            return None
        return ArcSet(gaps=tuple(merged))

    # -- serialization --------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {"gaps": [[a, b] for a, b in self.gaps]}

    @classmethod
    def from_json_dict(cls, d: dict) -> "ArcSet":
        return make_arc_set(d["gaps"])

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())

    @classmethod
    def from_json(cls, s: str) -> "ArcSet":
        return cls.from_json_dict(json.loads(s))


def make_arc_set(pairs: Sequence[Sequence[float]]) -> ArcSet:
    """Build a canonical ArcSet from raw (start, end) angle pairs.

    Raises InvalidArcSet on gaps of zero length, overlapping gaps, or total
    gap length exceeding 2*pi (which would leave E empty).
    """
    norm = []
    for a, b in pairs:
        raw = float(b) - float(a)
        if raw <= 0.0:
            length = float(np.mod(raw, TWO_PI))
        elif raw >= TWO_PI:
            length = TWO_PI if abs(raw - TWO_PI) < _EPS else raw  # > 2*pi is invalid
        else:
            length = raw
        if length < _EPS:
            raise InvalidArcSet(f"gap ({a}, {b}) has zero length")
        if length > TWO_PI + _EPS:
            raise InvalidArcSet(f"gap ({a}, {b}) longer than the full circle")
        norm.append((_norm_angle(a), min(length, TWO_PI)))
    norm.sort()
    total = sum(l for _, l in norm)
    if total > TWO_PI + 1e-9:
        raise InvalidArcSet(f"total gap length {total:.6f} exceeds 2*pi; E would be empty")
    # pairwise disjointness on the circle (touching endpoints are fine)
    for i, (a, la) in enumerate(norm):
        for b, lb in norm[i + 1:]:
            if _circle_overlap(a, la, b, lb) > 1e-12:
                raise InvalidArcSet("gaps overlap")
    return ArcSet(gaps=tuple((a, a + l) for a, l in norm))


def _circle_overlap(a: float, la: float, b: float, lb: float) -> float:
    """Overlap length of two arcs (a, a+la), (b, b+lb) on the circle."""
    overlap = 0.0
    for shift in (-TWO_PI, 0.0, TWO_PI):
        lo = max(a, b + shift)
        hi = min(a + la, b + shift + lb)
        overlap = max(overlap, hi - lo)
    return overlap


def _merge_circle_intervals(intervals: list[tuple[float, float]]) -> list[tuple[float, float]]:
    """Merge (start, end) intervals on the circle (start in [0, 2pi)).

    Wrapping intervals are split at 2*pi, merged linearly, and a residual
    wrap-around pair (one touching 0, one touching 2*pi) is rejoined into a
    single wrapping interval.  Returns intervals sorted by start.
    """
    if not intervals:
        return []
    segs: list[list[float]] = []
    for a, b in intervals:
        if b - a >= TWO_PI - _EPS:
            return [(0.0, TWO_PI)]
        if b > TWO_PI + _EPS:
            segs.append([a, TWO_PI])
            segs.append([0.0, b - TWO_PI])
        else:
            segs.append([a, min(b, TWO_PI)])
    segs.sort()
    merged = [segs[0]]
    for a, b in segs[1:]:
        if a <= merged[-1][1] + _EPS:
            merged[-1][1] = max(merged[-1][1], b)
        else:
            merged.append([a, b])
    if (
        len(merged) > 1
        and merged[0][0] <= _EPS
        and merged[-1][1] >= TWO_PI - _EPS
    ):
        start = merged[-1][0]
        end = start + (TWO_PI - merged[-1][0]) + merged[0][1]
        merged = merged[1:-1] + [[start, end]]
        merged.sort()
    return [(a, b) for a, b in merged]


def _merged_length(intervals: list[tuple[float, float]]) -> float:
    merged = _merge_circle_intervals(intervals)
    return min(TWO_PI, float(sum(b - a for a, b in merged)))


def _complement_intervals(intervals: list[tuple[float, float]]) -> list[tuple[float, float]]:
    """Complement of a merged interval list, as (start, end) gaps."""
    if not intervals:
        return [(0.0, TWO_PI)]
    out = []
    n = len(intervals)
    for i in range(n):
        _, hi = intervals[i]
        lo_next = intervals[(i + 1) % n][0]
        start = _norm_angle(hi)
        length = float(np.mod(lo_next - hi, TWO_PI))
        if length > _EPS:
            out.append((start, start + length))
    out.sort()
    return out


# ---------------------------------------------------------------------------
# neighborhood growth exponent
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NeighborhoodProfile:
    """Dyadic ladder of neighborhood measures with a windowed slope fit.

    ``levels`` holds (n, x=2^-n, measure); ``alpha_hat`` is the least-squares
    slope of log(measure) against log(x) over ``fit_window`` (index range into
    levels, saturated entries excluded), clamped to [0, 1].  ``degenerate`` is
    set when every level is saturated at 2*pi, in which case alpha_hat = 0.
    """

    levels: tuple[tuple[int, float, float], ...]
    alpha_hat: float
    fit_window: tuple[int, int]
    degenerate: bool = False

    def to_csv(self) -> str:
        lines = ["n,x,measure"]
        for n, x, m in self.levels:
            lines.append(f"{n},{x!r},{m!r}")
        return "\n".join(lines) + "\n"


def estimate_alpha(E: ArcSet, n_min: int, n_max: int) -> NeighborhoodProfile:
    """Windowed estimate of the neighborhood growth exponent of E.

    Measures |{t : d(e^it, E) < 2^-n}| for n in [n_min, n_max] and fits the
    log-log slope.  The exponent of a finite set is 1; thick sets give 0.
    """
    if n_min >= n_max:
        raise ValueError("need n_min < n_max")
    levels = []
    for n in range(n_min, n_max + 1):
        x = 2.0**-n
        levels.append((n, x, E.neighborhood_measure(x)))
    sat = [abs(m - TWO_PI) < 1e-12 for _, _, m in levels]
    usable = [i for i, s in enumerate(sat) if not s]
    if not usable:
        return NeighborhoodProfile(tuple(levels), 0.0, (0, len(levels) - 1), degenerate=True)
    lo, hi = usable[0], usable[-1]
    xs = np.log([levels[i][1] for i in usable])
    ys = np.log([levels[i][2] for i in usable])
    if len(usable) == 1:
        slope = 0.0
    else:
        slope = float(np.polyfit(xs, ys, 1)[0])
    return NeighborhoodProfile(tuple(levels), float(np.clip(slope, 0.0, 1.0)), (lo, hi))


# ---------------------------------------------------------------------------
# dyadic far sets and corona cells
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DyadicCell:
    """Level-n data of the dyadic decomposition near the boundary.

    ``far_set`` is E_n = {t : d(e^it, E) >= 2^-n} (None when empty); the
    rectangle over it with radial interval (1 - 2^-n, 1) grows with n, and the
    corona cell gamma_n is the set difference of consecutive rectangles:
    gamma_n = (E_{n+1} \\ E_n) x (1 - 2^-(n+1), 1).  The cells are pairwise
    disjoint and their shell bases have measure at most the 2^-n-neighborhood
    of E, which is what the growth exponent controls.
    """

    n: int
    far_set: ArcSet | None
    annulus: tuple[float, float]
    far_measure: float
    shell_base_measure: float
    cell_area: float


def dyadic_cells(E: ArcSet, n_max: int) -> list[DyadicCell]:
    """Far sets and corona cells for levels 0..n_max."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    far = []
    for n in range(n_max + 2):
        F = E.far_set(2.0**-n)
        far.append(F)
    out = []
    for n in range(n_max + 1):
        F = far[n]
        Fm = F.measure if F is not None else 0.0
        Fm_next = far[n + 1].measure if far[n + 1] is not None else 0.0
        shell = max(0.0, Fm_next - Fm)
        r_lo = 1.0 - 2.0 ** -(n + 1)
        cell_area = shell * 0.5 * (1.0 - r_lo**2)
        out.append(
            DyadicCell(
                n=n,
                far_set=F,
                annulus=(1.0 - 2.0**-n, 1.0),
                far_measure=Fm,
                shell_base_measure=shell,
                cell_area=cell_area,
            )
        )
    return out


def geometric_constant(eps: float, n_terms: int = 10_000) -> float:
    """Sum of 2^(-eps*n) over n >= 0; infinite for eps <= 0."""
    if eps <= 0.0:
        return float("inf")
    return 1.0 / (1.0 - 2.0**-eps)


def cantor_arcs(depth: int, span: tuple[float, float] = (0.0, np.pi)) -> ArcSet:
    """Middle-thirds construction on an arc of the circle, to a finite depth.

    Removes open middle thirds ``depth`` times; the result is the ArcSet whose
    E is the union of the remaining 2^depth closed arcs.
    """
    lo, hi = span
    if not 0.0 < hi - lo < TWO_PI:
        raise ValueError("span must be a proper sub-arc of the circle")
    segments = [(lo, hi)]
    gaps = [(hi, lo + TWO_PI)]  # complement of the initial span
    for _ in range(depth):
        nxt = []
        for a, b in segments:
            third = (b - a) / 3.0
            nxt.append((a, a + third))
            nxt.append((b - third, b))
            gaps.append((a + third, b - third))
        segments = nxt
    return make_arc_set(gaps)
