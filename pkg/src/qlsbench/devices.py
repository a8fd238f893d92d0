"""Physical device connectivity graphs.

Contains:
- DeviceGraph: immutable qubit-connectivity graph with adjacency helpers
- load_device / save_device: plain-text edge-list round trip
- make_grid: rows x cols lattice builder
- matching_bound: size of the smallest maximal matching, exact when the
  branch-and-bound finishes within budget
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property, lru_cache
from importlib import resources
from pathlib import Path

__all__ = [
    "DeviceGraph",
    "MatchingBound",
    "load_device",
    "save_device",
    "make_grid",
    "matching_bound",
    "bundled_device_names",
    "load_bundled_device",
    "resolve_device",
]

_NAME_RE = re.compile(r"^[A-Za-z0-9][A-Za-z0-9_.:x-]*$")


@dataclass(frozen=True)
class DeviceGraph:
    """Qubit connectivity of a physical device.

    Qubits are integers 0..num_qubits-1. Undirected edges are stored with
    endpoints sorted so (a, b) and (b, a) are the same edge; directed edges
    keep their orientation.
    """

    name: str
    num_qubits: int
    edges: frozenset[tuple[int, int]]
    directed: bool = False

    def __init__(
        self,
        name: str,
        num_qubits: int,
        edges: object,
        directed: bool = False,
    ) -> None:
        if not _NAME_RE.match(name):
            raise ValueError(f"bad device name {name!r}")
        if num_qubits < 1:
            raise ValueError(f"device needs at least one qubit, got {num_qubits}")
        canon = set()
        for a, b in edges:  # type: ignore[attr-defined]
            if a == b:
                raise ValueError(f"self-loop on qubit {a}")
            if not (0 <= a < num_qubits and 0 <= b < num_qubits):
                raise ValueError(f"edge ({a}, {b}) out of range for {num_qubits} qubits")
            pair = (a, b) if directed else (min(a, b), max(a, b))
            if pair in canon:
                raise ValueError(f"duplicate edge ({a}, {b})")
            canon.add(pair)
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "num_qubits", num_qubits)
        object.__setattr__(self, "edges", frozenset(canon))
        object.__setattr__(self, "directed", directed)

    @cached_property
    def _adjacency(self) -> tuple[tuple[int, ...], ...]:
        nbrs: list[set[int]] = [set() for _ in range(self.num_qubits)]
        for a, b in self.edges:
            nbrs[a].add(b)
            if not self.directed:
                nbrs[b].add(a)
        # pre-sorted for deterministic iteration
        return tuple(tuple(sorted(s)) for s in nbrs)

    def neighbors(self, p: int) -> tuple[int, ...]:
        """Adjacent qubits of p (out-neighbors on a directed device)."""
        return self._adjacency[p]

    def degree(self, p: int) -> int:
        return len(self._adjacency[p])

    def has_edge(self, a: int, b: int) -> bool:
        if self.directed:
            return (a, b) in self.edges
        return (min(a, b), max(a, b)) in self.edges

    def undirected_edges(self) -> list[tuple[int, int]]:
        """Sorted underlying undirected edge list (orientation dropped)."""
        return sorted({(min(a, b), max(a, b)) for a, b in self.edges})

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def distances_from(self, src: int) -> list[int]:
        """BFS hop counts from src over the underlying undirected graph.

        Unreachable qubits get -1.
        """
        und: list[set[int]] = [set() for _ in range(self.num_qubits)]
        for a, b in self.edges:
            und[a].add(b)
            und[b].add(a)
        dist = [-1] * self.num_qubits
        dist[src] = 0
        frontier = [src]
        while frontier:
            nxt = []
            for v in frontier:
                for w in und[v]:
                    if dist[w] < 0:
                        dist[w] = dist[v] + 1
                        nxt.append(w)
            frontier = nxt
        return dist


def load_device(path: str | Path) -> DeviceGraph:
    """Read a device from an edge-list file.

    Format: a header line ``device <name> <qubits> <directed|undirected>``
    followed by one ``a b`` pair per line. ``#`` starts a comment.
    """
    text = Path(path).read_text()
    header: tuple[str, int, bool] | None = None
    pairs: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if header is None:
            if len(tokens) != 4 or tokens[0] != "device":
                raise ValueError(
                    f"line {lineno}: expected 'device <name> <qubits> "
                    f"<directed|undirected>', got {raw.strip()!r}"
                )
            if tokens[3] not in ("directed", "undirected"):
                raise ValueError(f"line {lineno}: bad orientation {tokens[3]!r}")
            try:
                n = int(tokens[2])
            except ValueError:
                raise ValueError(f"line {lineno}: bad qubit count {tokens[2]!r}") from None
            header = (tokens[1], n, tokens[3] == "directed")
            continue
        if len(tokens) != 2:
            raise ValueError(f"line {lineno}: expected 'a b', got {raw.strip()!r}")
        try:
            pairs.append((int(tokens[0]), int(tokens[1])))
        except ValueError:
            raise ValueError(f"line {lineno}: non-integer endpoint in {raw.strip()!r}") from None
    if header is None:
        raise ValueError("empty device file: missing header line")
    name, n, directed = header
    try:
        return DeviceGraph(name, n, pairs, directed=directed)
    except ValueError as exc:
        raise ValueError(f"{path}: {exc}") from None


def save_device(g: DeviceGraph, path: str | Path) -> None:
    """Write g in the edge-list format accepted by load_device."""
    kind = "directed" if g.directed else "undirected"
    lines = [f"device {g.name} {g.num_qubits} {kind}"]
    lines += [f"{a} {b}" for a, b in g.sorted_edges()]
    Path(path).write_text("\n".join(lines) + "\n")


def bundled_device_names() -> list[str]:
    """Names of the device files shipped with the package."""
    data = resources.files(__package__) / "data"
    return sorted(p.name[: -len(".edges")] for p in data.iterdir() if p.name.endswith(".edges"))


def load_bundled_device(name: str) -> DeviceGraph:
    data = resources.files(__package__) / "data" / f"{name}.edges"
    if not data.is_file():
        known = ", ".join(bundled_device_names())
        raise ValueError(f"unknown device {name!r}; bundled devices: {known}")
    with resources.as_file(data) as path:
        return load_device(path)


_GRID_NAME_RE = re.compile(r"^grid:?(\d+)x(\d+)$")


def resolve_device(name: str) -> DeviceGraph:
    """Device from a bundled name or a grid spec like grid4x4 / grid:4x4."""
    m = _GRID_NAME_RE.match(name)
    if m:
        return make_grid(int(m.group(1)), int(m.group(2)))
    return load_bundled_device(name)


def make_grid(rows: int, cols: int) -> DeviceGraph:
    """Rows x cols lattice; qubit (r, c) is r * cols + c."""
    if rows < 1 or cols < 1:
        raise ValueError(f"grid needs positive dimensions, got {rows}x{cols}")
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    return DeviceGraph(f"grid{rows}x{cols}", rows * cols, edges)


@dataclass(frozen=True)
class MatchingBound:
    """Smallest maximal-matching size, or a safe lower bound.

    exact is False only when the search budget ran out; the fallback value 1
    (0 for an edgeless graph) never admits an instance the true bound would
    reject.
    """

    value: int
    exact: bool


class _BudgetExceeded(Exception):
    pass


@lru_cache(maxsize=128)
def matching_bound(g: DeviceGraph, budget: int = 2_000_000) -> MatchingBound:
    """Minimum cardinality over all maximal matchings of g.

    Directed graphs are matched on their underlying undirected edges.
    Branch and bound over edge choices: an undominated edge must be covered
    by some incident matching edge, so branching on its addable incident
    edges visits every maximal matching. States are pruned by a packing
    lower bound and by memoized best-known prefix sizes. Results are cached
    per (graph, budget) because callers recompute the bound per instance.
    """
    edges = g.undirected_edges()
    m = len(edges)
    if m == 0:
        return MatchingBound(0, True)

    inc = [0] * g.num_qubits  # node -> bitmask of incident edge indices
    for i, (a, b) in enumerate(edges):
        inc[a] |= 1 << i
        inc[b] |= 1 << i
    dom = [inc[a] | inc[b] for a, b in edges]  # edge -> edges it dominates
    # dom2[i]: edges whose domination set overlaps dom[i]; two edges outside
    # each other's dom2 can never be covered by one common matching edge
    dom2 = []
    for i in range(m):
        mask = 0
        rest = dom[i]
        while rest:
            j = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            mask |= dom[j]
        dom2.append(mask)

    def greedy(order: list[int]) -> int:
        undom = (1 << m) - 1
        size = 0
        for i in order:
            if undom >> i & 1:
                undom &= ~dom[i]
                size += 1
        return size

    by_coverage = sorted(range(m), key=lambda i: -dom[i].bit_count())
    best = min(greedy(list(range(m))), greedy(by_coverage))

    memo: dict[int, int] = {}
    nodes = 0

    def packing_bound(undom: int) -> int:
        # edges pairwise outside each other's dom2 need one cover edge each
        count = 0
        rest = undom
        while rest:
            i = (rest & -rest).bit_length() - 1
            rest &= ~dom2[i]
            count += 1
        return count

    def search(undom: int, chosen: int) -> None:
        nonlocal best, nodes
        if undom == 0:
            if chosen < best:
                best = chosen
            return
        nodes += 1
        if nodes > budget:
            raise _BudgetExceeded
        if chosen + 1 >= best:
            return
        seen = memo.get(undom)
        if seen is not None and seen <= chosen:
            return
        memo[undom] = chosen
        # fail-first: branch on the undominated edge with fewest addable
        # covers; the same sweep yields the best single-edge coverage for
        # the pigeonhole bound below
        pick_cands = 0
        fewest = m + 1
        maxcov = 1
        rest = undom
        while rest:
            i = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            cands = undom & dom[i]
            k = cands.bit_count()
            if k < fewest:
                fewest, pick_cands = k, cands
            if k > maxcov:
                maxcov = k
        need = -(-undom.bit_count() // maxcov)
        if need < packing_bound(undom):
            need = packing_bound(undom)
        if chosen + need >= best:
            return
        order = []
        rest = pick_cands
        while rest:
            i = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            order.append(i)
        order.sort(key=lambda i: -(undom & dom[i]).bit_count())
        for i in order:
            search(undom & ~dom[i], chosen + 1)

    try:
        search((1 << m) - 1, 0)
    except _BudgetExceeded:
        return MatchingBound(1, False)
    return MatchingBound(best, True)
