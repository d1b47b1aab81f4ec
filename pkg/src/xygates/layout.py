"""Physical layouts as adjacency graphs, and legality checks for schedules.

Blocks sit on consecutive sites, block ``k`` on ``(3k, 3k+1, 3k+2)``, so the
compiler's default placements drop straight onto these graphs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from xygates.pulse import Schedule


def _edge(a: int, b: int) -> tuple[int, int]:
    if a == b:
        raise ValueError(f"self-loop on site {a}")
    return (a, b) if a < b else (b, a)


@dataclass(frozen=True)
class LayoutGraph:
    """Undirected coupling graph over physical sites.

    ``mobile_ancilla`` marks a layout whose single ancilla site is carried
    to whichever block needs it; its edges to every code pair are then legal
    but each change of host block costs one relocation.
    """

    sites: int
    edges: frozenset[tuple[int, int]]
    blocks: tuple[tuple[int, ...], ...] = ()
    ancilla_sites: frozenset[int] = field(default_factory=frozenset)
    mobile_ancilla: bool = False

    def __post_init__(self):
        edges = frozenset(_edge(a, b) for a, b in self.edges)
        for a, b in edges:
            if not (0 <= a < self.sites and 0 <= b < self.sites):
                raise ValueError(f"edge ({a}, {b}) outside {self.sites} sites")
        for block in self.blocks:
            if len(set(block)) != len(block):
                raise ValueError(f"block {block} repeats a site")
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "ancilla_sites", frozenset(self.ancilla_sites))

    def connected(self, a: int, b: int) -> bool:
        return _edge(a, b) in self.edges

    def neighbours(self, site: int) -> set[int]:
        return {b if a == site else a for a, b in self.edges if site in (a, b)}

    def supports_triangle(self, a: int, b: int, c: int) -> bool:
        """Whether a P3 on ``(a, b, c)`` only uses edges of this graph."""
        return self.connected(a, b) and self.connected(b, c) and self.connected(a, c)


@dataclass(frozen=True)
class Violation:
    gate_index: int
    pair: tuple[int, int]

    def __str__(self) -> str:
        return f"gate {self.gate_index}: no coupling between sites {self.pair[0]} and {self.pair[1]}"


def _triangle(a: int, b: int, c: int) -> list[tuple[int, int]]:
    return [_edge(a, b), _edge(b, c), _edge(a, c)]


def triangular_layout(num_blocks: int, kind: str = "qutrit") -> LayoutGraph:
    """Two staggered rows of triangles, one triangle per block.

    Consecutive blocks share the triangle formed by the first two sites of one
    block and the first site of the next, which is exactly what a P3 reaching
    into the neighbouring block touches.
    """
    if num_blocks < 1:
        raise ValueError("need at least one block")
    if kind not in ("qutrit", "truncated"):
        raise ValueError(f"unknown block kind {kind!r}")
    blocks = tuple((3 * k, 3 * k + 1, 3 * k + 2) for k in range(num_blocks))
    edges: list[tuple[int, int]] = []
    for block in blocks:
        edges += _triangle(*block)
    for left, right in zip(blocks, blocks[1:]):
        edges += _triangle(left[0], left[1], right[0])
    ancillas = frozenset(b[2] for b in blocks) if kind == "truncated" else frozenset()
    return LayoutGraph(3 * num_blocks, frozenset(edges), blocks, ancillas)


def linear_layout(n: int, next_nearest: bool = False) -> LayoutGraph:
    if n < 2:
        raise ValueError("a line needs at least two sites")
    edges = {(i, i + 1) for i in range(n - 1)}
    if next_nearest:
        edges |= {(i, i + 2) for i in range(n - 2)}
    return LayoutGraph(n, frozenset(edges))


def two_plane_layout(num_pairs: int, ancilla_mode: str = "static_row") -> LayoutGraph:
    """Code pairs in a lower plane, ancillas in the plane above.

    ``static_row`` gives every pair its own ancilla, placed as site
    ``3k + 2`` so pair ``k`` and its ancilla form block ``(3k, 3k+1, 3k+2)``.
    ``mobile`` packs the pairs as ``(2k, 2k+1)`` and adds one ancilla site at
    the end, coupled to every pair member. In-plane couplings between
    neighbouring pairs mirror the triangular layout.
    """
    if num_pairs < 1:
        raise ValueError("need at least one pair")
    edges: list[tuple[int, int]] = []
    if ancilla_mode == "static_row":
        blocks = tuple((3 * k, 3 * k + 1, 3 * k + 2) for k in range(num_pairs))
        for q0, q1, anc in blocks:
            edges += _triangle(q0, q1, anc)
        sites = 3 * num_pairs
        ancillas = frozenset(b[2] for b in blocks)
        mobile = False
    elif ancilla_mode == "mobile":
        anc = 2 * num_pairs
        blocks = tuple((2 * k, 2 * k + 1, anc) for k in range(num_pairs))
        for q0, q1, _ in blocks:
            edges += _triangle(q0, q1, anc)
        sites = anc + 1
        ancillas = frozenset({anc})
        mobile = True
    else:
        raise ValueError(f"unknown ancilla mode {ancilla_mode!r}")
    for left, right in zip(blocks, blocks[1:]):
        edges += _triangle(left[0], left[1], right[0])
    return LayoutGraph(sites, frozenset(edges), blocks, ancillas, mobile)


def validate_schedule(schedule: Schedule, layout: LayoutGraph) -> list[Violation]:
    """Every pulse whose pair is not an edge of ``layout``."""
    if schedule.num_qubits > layout.sites:
        raise ValueError(
            f"schedule on {schedule.num_qubits} qubits does not fit {layout.sites} sites"
        )
    return [Violation(k, g.pair) for k, g in enumerate(schedule) if not layout.connected(*g.pair)]


def ancilla_hosts(schedule: Schedule, layout: LayoutGraph) -> list[int]:
    """Block index served by an ancilla for each pulse that touches one, in order."""
    site_block = {}
    for k, block in enumerate(layout.blocks):
        for s in block:
            if s not in layout.ancilla_sites:
                site_block[s] = k
    hosts = []
    for g in schedule:
        touched = [a for a in g.pair if a in layout.ancilla_sites]
        if not touched:
            continue
        other = g.j if g.i in touched else g.i
        if other in site_block:
            hosts.append(site_block[other])
    return hosts


def ancilla_relocations(schedule: Schedule, layout: LayoutGraph) -> int:
    """Unit-cost moves the mobile ancilla needs to serve the schedule."""
    if not layout.mobile_ancilla:
        return 0
    hosts = ancilla_hosts(schedule, layout)
    return sum(1 for prev, cur in zip(hosts, hosts[1:]) if prev != cur)


def violation_multiset(violations: Iterable[Violation]) -> list[tuple[int, int]]:
    return sorted(v.pair for v in violations)
