"""Deterministic 2D coordinates for molecular graphs.

Two phases: (1) initial placement — depth-first chain placement with
alternating 120-degree angles, rings pre-placed as regular polygons;
(2) a fixed number of force-directed relaxation steps (unit-length bond
springs, inverse-square repulsion between non-bonded atoms). No randomness
anywhere, so identical graphs get bit-identical layouts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import networkx as nx
import numpy as np

from linkplot.smiles.parse import MolGraph

RELAX_ITERATIONS = 200
RELAX_STEP = 0.05
SPRING_STRENGTH = 1.0
REPULSION_STRENGTH = 0.02


@dataclass(frozen=True)
class Layout2D:
    """Per-atom coordinates in bond-length units (target length 1.0)."""

    coords: tuple[tuple[float, float], ...]

    def __len__(self):
        return len(self.coords)


def _rings(graph: nx.Graph) -> list[list[int]]:
    # cycle_basis approximates smallest-set-of-smallest-rings well enough
    # for depiction; sort for a deterministic placement order
    cycles = [list(c) for c in nx.cycle_basis(graph)]
    cycles.sort(key=lambda c: (len(c), min(c), c))
    return cycles


def _place_ring(pos, cycle, anchor, angle):
    m = len(cycle)
    radius = 0.5 / math.sin(math.pi / m)
    k = cycle.index(anchor)
    ordered = cycle[k:] + cycle[:k]
    ax, ay = pos[anchor]
    cx = ax + radius * math.cos(angle)
    cy = ay + radius * math.sin(angle)
    theta0 = math.atan2(ay - cy, ax - cx)
    for t, atom in enumerate(ordered):
        if atom not in pos:
            theta = theta0 + 2.0 * math.pi * t / m
            pos[atom] = (
                cx + radius * math.cos(theta),
                cy + radius * math.sin(theta),
            )


def _widest_gap_bisector(angles: list[float]) -> float:
    ordered = sorted(a % (2.0 * math.pi) for a in angles)
    best_gap, best_mid = -1.0, 0.0
    for i, a in enumerate(ordered):
        b = ordered[(i + 1) % len(ordered)]
        gap = (b - a) % (2.0 * math.pi)
        if gap > best_gap:
            best_gap = gap
            best_mid = a + gap / 2.0
    return best_mid


def _initial_placement(g: MolGraph) -> dict[int, tuple[float, float]]:
    n = len(g.atoms)
    graph = nx.Graph()
    graph.add_nodes_from(range(n))
    graph.add_edges_from((b.a, b.b) for b in g.bonds)
    cycles = _rings(graph)
    ring_placed = [False] * len(cycles)

    pos: dict[int, tuple[float, float]] = {0: (0.0, 0.0)}
    visited: set[int] = set()
    # child-angle offsets relative to the incoming direction; the leading
    # +/-60 pair produces the 120-degree zigzag for plain chains
    offsets = [60.0, -60.0, 180.0, 120.0, -120.0, 90.0, -90.0, 0.0]

    stack: list[tuple[int, float, int]] = [(0, 0.0, 0)]
    while stack:
        u, incoming, depth = stack.pop()
        if u in visited:
            continue
        visited.add(u)

        for ci, cycle in enumerate(cycles):
            if not ring_placed[ci] and u in cycle:
                unplaced = [a for a in cycle if a not in pos]
                if unplaced:
                    _place_ring(pos, cycle, u, incoming)
                ring_placed[ci] = True

        ux, uy = pos[u]
        occupied = [
            math.atan2(pos[w][1] - uy, pos[w][0] - ux)
            for w in graph.neighbors(u)
            if w in pos
        ]
        slot = 0
        children = []
        for v in sorted(graph.neighbors(u)):
            if v in visited:
                continue
            if v in pos:
                vx, vy = pos[v]
                children.append((v, math.atan2(vy - uy, vx - ux)))
                continue
            if len(occupied) >= 2:
                # ring member (or branch point): aim into the widest
                # angular gap so substituents point away from the ring
                angle = _widest_gap_bisector(occupied)
            else:
                off = offsets[slot % len(offsets)]
                slot += 1
                if depth % 2:
                    off = -off
                angle = incoming + math.radians(off)
            pos[v] = (ux + math.cos(angle), uy + math.sin(angle))
            occupied.append(angle)
            children.append((v, angle))
        # reversed so the lowest-index child is processed first
        for v, angle in reversed(children):
            stack.append((v, angle, depth + 1))

    # isolated atoms can only appear in degenerate graphs; pin them anyway
    for i in range(n):
        pos.setdefault(i, (float(i), 0.0))
    return pos


def _relax(coords: np.ndarray, bond_pairs: list[tuple[int, int]]) -> np.ndarray:
    n = len(coords)
    if n < 2:
        return coords
    x = coords.copy()
    bonded = np.zeros((n, n), dtype=bool)
    for a, b in bond_pairs:
        bonded[a, b] = bonded[b, a] = True
    np.fill_diagonal(bonded, True)

    for _ in range(RELAX_ITERATIONS):
        force = np.zeros_like(x)
        for a, b in bond_pairs:
            d = x[b] - x[a]
            length = float(np.hypot(d[0], d[1]))
            if length < 1e-9:
                d = np.array([1e-3, 0.0])
                length = 1e-3
            f = SPRING_STRENGTH * (length - 1.0) * d / length
            force[a] += f
            force[b] -= f
        diff = x[:, None, :] - x[None, :, :]
        dist2 = (diff ** 2).sum(axis=2)
        np.maximum(dist2, 1e-6, out=dist2)
        scale = REPULSION_STRENGTH / (dist2 * np.sqrt(dist2))
        scale[bonded] = 0.0
        force += (diff * scale[:, :, None]).sum(axis=1)
        x += RELAX_STEP * force
    return x


def layout2d(g: MolGraph) -> Layout2D:
    """Compute normalized 2D coordinates: centroid at the origin, first
    atom at nonnegative x."""
    n = len(g.atoms)
    if n == 0:
        return Layout2D(coords=())
    pos = _initial_placement(g)
    coords = np.array([pos[i] for i in range(n)], dtype=np.float64)
    coords = _relax(coords, [(b.a, b.b) for b in g.bonds])
    coords -= coords.mean(axis=0)
    if coords[0, 0] < 0:
        coords = -coords
    return Layout2D(coords=tuple((float(p[0]), float(p[1])) for p in coords))
