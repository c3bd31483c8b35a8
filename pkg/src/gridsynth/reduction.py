"""Backbone reduction: geographic K-medoids clustering and topology aggregation.

The clustering alternates two steps until the medoid set is stable: assign
every bus to its nearest medoid, then move each cluster's medoid to the
member with the smallest total distance to the rest of the cluster.  The
total assignment distance never increases across iterations; a seeded
multi-restart keeps the best result.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Iterable, Sequence

import numpy as np

from .model import CaseError, GridCase, Line, connected_components

EARTH_RADIUS_KM = 6371.0


@dataclass(frozen=True)
class GeoPoint:
    latitude: float  # degrees
    longitude: float  # degrees

    def __post_init__(self) -> None:
        if not -90.0 <= self.latitude <= 90.0:
            raise ValueError(f"latitude {self.latitude} outside [-90, 90]")
        if not -180.0 <= self.longitude <= 180.0:
            raise ValueError(f"longitude {self.longitude} outside [-180, 180]")


def haversine(a: GeoPoint, b: GeoPoint, earth_radius: float = EARTH_RADIUS_KM) -> float:
    """Great-circle distance in km between two latitude/longitude points."""
    phi1, phi2 = math.radians(a.latitude), math.radians(b.latitude)
    lam1, lam2 = math.radians(a.longitude), math.radians(b.longitude)
    h = (math.sin((phi1 - phi2) / 2.0) ** 2
         + math.cos(phi1) * math.cos(phi2) * math.sin((lam1 - lam2) / 2.0) ** 2)
    c = 2.0 * math.atan2(math.sqrt(h), math.sqrt(1.0 - h))
    return earth_radius * c


def distance_matrix(points: Sequence[GeoPoint],
                    earth_radius: float = EARTH_RADIUS_KM) -> np.ndarray:
    """Pairwise haversine distances (km), symmetric with zero diagonal."""
    lat = np.radians([p.latitude for p in points])
    lon = np.radians([p.longitude for p in points])
    dphi = 0.5 * (lat[:, None] - lat[None, :])
    dlam = 0.5 * (lon[:, None] - lon[None, :])
    h = np.sin(dphi) ** 2 + np.cos(lat)[:, None] * np.cos(lat)[None, :] * np.sin(dlam) ** 2
    h = np.clip(h, 0.0, 1.0)
    return earth_radius * 2.0 * np.arctan2(np.sqrt(h), np.sqrt(1.0 - h))


@dataclass(frozen=True)
class Clustering:
    """Result of a K-medoids run over bus locations."""

    k: int
    medoids: tuple[int, ...]  # bus ids, sorted
    assignment: dict[int, int]  # bus id -> medoid bus id
    total_distance: float  # km

    def members(self, medoid: int) -> tuple[int, ...]:
        return tuple(sorted(b for b, m in self.assignment.items() if m == medoid))


def _assign(dist: np.ndarray, medoid_idx: np.ndarray) -> tuple[np.ndarray, float]:
    # columns ordered by ascending medoid index so argmin ties pick the lower id
    sub = dist[:, medoid_idx]
    choice = np.argmin(sub, axis=1)
    total = float(sub[np.arange(dist.shape[0]), choice].sum())
    return medoid_idx[choice], total


def _update_medoids(dist: np.ndarray, assigned: np.ndarray,
                    medoid_idx: np.ndarray) -> np.ndarray:
    new = []
    for m in medoid_idx:
        members = np.flatnonzero(assigned == m)
        within = dist[np.ix_(members, members)].sum(axis=0)
        new.append(int(members[int(np.argmin(within))]))
    return np.array(sorted(new), dtype=int)


def kmedoids(points: Sequence[tuple[int, GeoPoint]], k: int, seed: int = 0,
             restarts: int = 16,
             earth_radius: float = EARTH_RADIUS_KM) -> Clustering:
    """Cluster (bus id, location) pairs into k groups around actual buses.

    Heuristic: the alternating iteration is run from `restarts` seeded random
    initializations and the lowest-total-distance fixed point wins (ties by
    lexicographically smallest medoid id set).
    """
    n = len(points)
    if not 1 <= k <= n:
        raise ValueError(f"k={k} out of range [1, {n}]")
    order = sorted(range(n), key=lambda i: points[i][0])
    ids = [points[i][0] for i in order]
    if len(set(ids)) != n:
        raise ValueError("duplicate bus ids in points")
    dist = distance_matrix([points[i][1] for i in order], earth_radius)

    rng = np.random.default_rng(seed)
    best: tuple[float, tuple[int, ...], np.ndarray] | None = None
    for _ in range(max(1, restarts)):
        medoid_idx = np.sort(rng.choice(n, size=k, replace=False))
        assigned, total = _assign(dist, medoid_idx)
        seen = {tuple(medoid_idx)}
        while True:
            new_idx = _update_medoids(dist, assigned, medoid_idx)
            new_assigned, new_total = _assign(dist, new_idx)
            if new_total > total + 1e-9:
                raise AssertionError(
                    f"k-medoids objective increased: {total} -> {new_total}"
                )
            if np.array_equal(new_idx, medoid_idx) or tuple(new_idx) in seen:
                break
            seen.add(tuple(new_idx))
            medoid_idx, assigned, total = new_idx, new_assigned, new_total
        med_ids = tuple(sorted(ids[i] for i in medoid_idx))
        cand = (total, med_ids, assigned)
        if best is None or (cand[0], cand[1]) < (best[0], best[1]):
            best = cand
    total, med_ids, assigned = best
    assignment = {ids[i]: ids[int(assigned[i])] for i in range(n)}
    return Clustering(k=k, medoids=med_ids, assignment=assignment,
                      total_distance=total)


def bus_mapping(clustering: Clustering, keep: Iterable[int] = ()) -> dict[int, int]:
    """Original bus id -> representative bus id (kept buses map to themselves)."""
    keep = set(keep)
    return {b: (b if b in keep or b in clustering.medoids else m)
            for b, m in clustering.assignment.items()}


def aggregate(case: GridCase, clustering: Clustering,
              keep: Iterable[int] = ()) -> GridCase:
    """Collapse a case onto its cluster representatives plus explicitly kept buses.

    Inter-cluster lines become lines between representatives; parallel lines
    between the same representative pair merge (parallel reactance, summed
    ratings); intra-cluster lines are dropped.  Generators move to their
    bus's representative.
    """
    keep = sorted(set(keep))
    case_ids = {b.id for b in case.buses}
    missing = sorted(case_ids - set(clustering.assignment))
    if missing:
        raise CaseError(f"clustering does not cover buses {missing}")
    stray = [b for b in keep if b not in case_ids]
    if stray:
        raise CaseError(f"keep list references missing buses {stray}")

    mapping = bus_mapping(clustering, keep)
    rep_ids = sorted(set(clustering.medoids) | set(keep))
    buses = tuple(b for b in case.buses if b.id in set(rep_ids))

    groups: dict[tuple[int, int], list[Line]] = {}
    for ln in case.lines:
        a, b = mapping[ln.from_bus], mapping[ln.to_bus]
        if a == b:
            continue
        groups.setdefault((min(a, b), max(a, b)), []).append(ln)

    lines = []
    for (a, b), members in sorted(groups.items()):
        if len(members) == 1:
            ln = members[0]
            lines.append(replace(ln, from_bus=mapping[ln.from_bus],
                                 to_bus=mapping[ln.to_bus]))
            continue
        members.sort(key=lambda l: (l.reactance, l.id))
        rep = members[0]
        x_parallel = 1.0 / sum(1.0 / l.reactance for l in members)
        lines.append(Line(
            id=min(l.id for l in members),
            from_bus=a, to_bus=b,
            reactance=x_parallel,
            conductor=rep.conductor,
            length=rep.length,
            voltage=rep.voltage,
            static_rating=sum(l.static_rating for l in members),
        ))
    lines.sort(key=lambda l: l.id)

    generators = tuple(replace(g, bus=mapping[g.bus]) for g in case.generators)

    islands = connected_components(set(rep_ids),
                                   [(l.from_bus, l.to_bus) for l in lines])
    if len(islands) > 1:
        isolated = sorted(set(rep_ids) - islands[0])
        raise CaseError(f"aggregation left representatives {isolated} disconnected")

    return GridCase(buses=buses, lines=tuple(lines), generators=generators,
                    reference_bus=mapping[case.reference_bus],
                    base_mva=case.base_mva)
