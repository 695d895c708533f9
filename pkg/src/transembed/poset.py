"""Directed acyclic partial orders and their transitive closures.

An edge (x, y) means x precedes y: x is the more specific item (the hyponym
or instance), y the more general one. Reachability is stored as one big
integer bitmask per source node, so membership tests are O(1) and closure
construction is a single reverse-topological sweep of bitwise ORs.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .errors import CycleError, EdgeParseError, SelfLoopError

TYPE = "type"
ENTITY = "entity"

CHILD_FIRST = "child_first"
PARENT_FIRST = "parent_first"


class PartialOrder:
    """Node vocabulary plus deduplicated directed edges x -> y."""

    def __init__(self, names: Sequence[str], edges: Sequence[tuple[int, int]],
                 kinds: Sequence[str] | None = None):
        self.names = list(names)
        self._index = {n: i for i, n in enumerate(self.names)}
        if len(self._index) != len(self.names):
            raise ValueError("duplicate node names")
        self.edges = [(int(x), int(y)) for x, y in edges]
        if kinds is None:
            kinds = [TYPE] * len(self.names)
        self.kinds = list(kinds)
        if len(self.kinds) != len(self.names):
            raise ValueError("kinds length does not match vocabulary")

    @property
    def num_nodes(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        return self._index[name]

    def name(self, i: int) -> str:
        return self.names[i]

    def set_kind(self, name: str, kind: str) -> None:
        if kind not in (TYPE, ENTITY):
            raise ValueError(f"unknown node kind {kind!r}")
        self.kinds[self._index[name]] = kind

    def entity_mask(self) -> np.ndarray:
        return np.array([k == ENTITY for k in self.kinds], dtype=bool)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]],
                   num_nodes: int | None = None,
                   names: Sequence[str] | None = None) -> "PartialOrder":
        """Build directly from integer id pairs (handy for synthetic DAGs)."""
        pairs = [(int(x), int(y)) for x, y in pairs]
        if names is None:
            if num_nodes is None:
                num_nodes = 1 + max((max(p) for p in pairs), default=-1)
            names = [f"n{i}" for i in range(num_nodes)]
        seen, edges = set(), []
        for p in pairs:
            if p[0] == p[1]:
                raise ValueError(f"self-loop pair {p}")
            if p not in seen:
                seen.add(p)
                edges.append(p)
        order = cls(names, edges)
        cyc = _find_cycle(order.edges, order.num_nodes)
        if cyc is not None:
            raise CycleError([order.names[i] for i in cyc])
        return order


def load_edges(lines: Iterable[str], column_order: str = CHILD_FIRST) -> PartialOrder:
    """Parse a tab-separated edge list into a PartialOrder.

    One edge per line, two columns, '#'-prefixed lines ignored. Names are
    opaque strings; vocabulary ids follow first appearance. With
    column_order=parent_first the columns are (general, specific), as in
    hypernym pair files, and get flipped into the stored x -> y direction.
    """
    if column_order not in (CHILD_FIRST, PARENT_FIRST):
        raise ValueError(f"unknown column_order {column_order!r}")
    names: list[str] = []
    index: dict[str, int] = {}
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for line_no, raw in enumerate(lines, start=1):
        line = raw
        if line.endswith("\n"):
            line = line[:-1]
        if line.endswith("\r"):
            line = line[:-1]
        if not line or line.startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) != 2:
            raise EdgeParseError(
                line_no, f"expected 2 tab-separated columns, got {len(cols)}")
        if column_order == CHILD_FIRST:
            xn, yn = cols[0], cols[1]
        else:
            xn, yn = cols[1], cols[0]
        if xn == yn:
            raise SelfLoopError(line_no, xn)
        for nm in (xn, yn):
            if nm not in index:
                index[nm] = len(names)
                names.append(nm)
        e = (index[xn], index[yn])
        if e not in seen:
            seen.add(e)
            edges.append(e)
    order = PartialOrder(names, edges)
    cyc = _find_cycle(order.edges, order.num_nodes)
    if cyc is not None:
        raise CycleError([names[i] for i in cyc])
    return order


def load_edges_path(path, column_order: str = CHILD_FIRST) -> PartialOrder:
    with open(path, "r", encoding="utf-8") as fh:
        return load_edges(fh, column_order)


def _successors(pairs: Iterable[tuple[int, int]], num_nodes: int):
    succ: list[list[int]] = [[] for _ in range(num_nodes)]
    indeg = [0] * num_nodes
    seen = set()
    for x, y in pairs:
        if not (0 <= x < num_nodes and 0 <= y < num_nodes):
            raise IndexError(f"pair ({x}, {y}) out of range for {num_nodes} nodes")
        if (x, y) in seen:
            continue
        seen.add((x, y))
        succ[x].append(y)
        indeg[y] += 1
    return succ, indeg


def _topo_order(succ, indeg):
    """Kahn's algorithm; returns (order, leftover-node list)."""
    indeg = list(indeg)
    queue = [i for i, d in enumerate(indeg) if d == 0]
    order = []
    head = 0
    while head < len(queue):
        x = queue[head]
        head += 1
        order.append(x)
        for y in succ[x]:
            indeg[y] -= 1
            if indeg[y] == 0:
                queue.append(y)
    leftover = [i for i, d in enumerate(indeg) if d > 0]
    return order, leftover


def _find_cycle(pairs, num_nodes):
    """Return one id cycle as [a, b, ..., a], or None if the graph is acyclic."""
    succ, indeg = _successors(pairs, num_nodes)
    _, leftover = _topo_order(succ, indeg)
    if not leftover:
        return None
    remaining = set(leftover)
    # every leftover node has a successor inside the leftover set, so a walk
    # restricted to it must revisit a node
    start = leftover[0]
    path, pos = [], {}
    node = start
    while node not in pos:
        pos[node] = len(path)
        path.append(node)
        node = next(s for s in succ[node] if s in remaining)
    cycle = path[pos[node]:] + [node]
    return cycle


class Closure:
    """Transitively closed reachability over a fixed node universe.

    reach[x] is a bitmask of every y with x -> ... -> y; the relation is
    irreflexive, so bit x of reach[x] is never set.
    """

    __slots__ = ("reach", "num_nodes")

    def __init__(self, reach: list[int], num_nodes: int):
        self.reach = reach
        self.num_nodes = num_nodes

    def contains(self, x: int, y: int) -> bool:
        if not (0 <= x < self.num_nodes and 0 <= y < self.num_nodes):
            raise IndexError(f"node pair ({x}, {y}) out of range")
        return bool((self.reach[x] >> y) & 1)

    def pair_count(self) -> int:
        return sum(r.bit_count() for r in self.reach)

    def reachable_from(self, x: int) -> np.ndarray:
        if not 0 <= x < self.num_nodes:
            raise IndexError(f"node {x} out of range")
        return _bit_indices(self.reach[x])

    def pairs(self) -> np.ndarray:
        """All closed pairs as an (M, 2) int64 array, sorted by (x, y)."""
        xs, ys = [], []
        for x, bits in enumerate(self.reach):
            if bits:
                tgt = _bit_indices(bits)
                xs.append(np.full(len(tgt), x, dtype=np.int64))
                ys.append(tgt)
        if not xs:
            return np.empty((0, 2), dtype=np.int64)
        return np.stack([np.concatenate(xs), np.concatenate(ys)], axis=1)


def _bit_indices(bits: int) -> np.ndarray:
    if bits == 0:
        return np.empty(0, dtype=np.int64)
    nbytes = (bits.bit_length() + 7) // 8
    u8 = np.frombuffer(bits.to_bytes(nbytes, "little"), dtype=np.uint8)
    return np.nonzero(np.unpackbits(u8, bitorder="little"))[0].astype(np.int64)


def transitive_closure(pairs: Iterable[tuple[int, int]], num_nodes: int) -> Closure:
    """Close an arbitrary pair set under transitivity.

    Works for the raw edge set as well as for sampled positive folds treated
    as edges. Raises CycleError if the pair graph is not a DAG.
    """
    pairs = [(int(x), int(y)) for x, y in pairs]
    succ, indeg = _successors(pairs, num_nodes)
    order, leftover = _topo_order(succ, indeg)
    if leftover:
        cyc = _find_cycle(pairs, num_nodes)
        raise CycleError(cyc)
    reach = [0] * num_nodes
    for x in reversed(order):
        bits = 0
        for s in succ[x]:
            bits |= reach[s] | (1 << s)
        reach[x] = bits
    return Closure(reach, num_nodes)
