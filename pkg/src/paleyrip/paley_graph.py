"""Paley graph adjacency, exact cliques, and the independent-set spectrum.

Vertices are F_p with an edge where the difference is a nonzero square.
The graph is (p-1)/2-regular, self-complementary and vertex-transitive;
the clique solver exploits transitivity by rooting every search at
vertex 0.  Multiplying a clique by a non-residue turns it into an
independent set of the same size, whose Gram spectrum has a closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from io import StringIO

import numpy as np

from paleyrip.character_sums import Subset, get_table
from paleyrip.finite_field import validate_prime_1mod4
from paleyrip.paley_matrix import build
from paleyrip.rip_analysis import hermitian_eigs

CLIQUE_P_CAP = 10_000


@dataclass(frozen=True)
class PaleyGraph:
    """Adjacency stored as one bitmask int per vertex."""

    p: int
    adjacency: tuple[int, ...] = field(repr=False)

    def degree(self, v: int) -> int:
        return self.adjacency[v].bit_count()

    def has_edge(self, x: int, y: int) -> bool:
        return bool(self.adjacency[x] >> y & 1)


@dataclass
class CliqueReport:
    p: int
    omega: int
    witness_clique: tuple[int, ...]
    independent_witness: tuple[int, ...]
    nonresidue: int
    nodes_explored: int
    runtime_ms: float | None = None

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "omega": self.omega,
            "witness": list(self.witness_clique),
            "independent_witness": list(self.independent_witness),
            "nonresidue": self.nonresidue,
            "nodes_explored": self.nodes_explored,
            "runtime_ms": self.runtime_ms,
        }


@dataclass
class CliqueRipReport:
    """Clique number against the eigenvalue bound implied by a RIP constant.

    Two readings of the smallest independent-set Gram eigenvalue:
    the exact value 1 - (omega-1)/sqrt(p) gives omega <= delta*sqrt(p) + 1
    (`bound`); reading it as 1 - omega/sqrt(p) gives the stronger
    omega <= delta*sqrt(p) (`bound_strict`).  `holds` refers to `bound`.
    """

    p: int
    k: int
    delta: float
    omega: int
    bound: float
    bound_strict: float
    holds: bool
    holds_strict: bool

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "K": self.k,
            "delta": self.delta,
            "omega": self.omega,
            "bound": self.bound,
            "bound_strict": self.bound_strict,
            "holds": self.holds,
            "holds_strict": self.holds_strict,
        }


@lru_cache(maxsize=8)
def build_graph(p: int) -> PaleyGraph:
    p = validate_prime_1mod4(p)
    table = get_table(p)
    idx = np.arange(p, dtype=np.int64)
    rows = []
    for x in range(p):
        bits = np.packbits(table.chi[(idx - x) % p] == 1, bitorder="little")
        rows.append(int.from_bytes(bits.tobytes(), "little"))
    return PaleyGraph(p=p, adjacency=tuple(rows))


def induced_edges(subset: Subset) -> int:
    """Number of unordered pairs {a, b} in S with chi(a - b) = 1."""
    graph = build_graph(subset.p)
    mask = 0
    for x in subset.elems:
        mask |= 1 << x
    return sum((graph.adjacency[x] & mask).bit_count() for x in subset.elems) // 2


def _color_sort(adj: tuple[int, ...], cand: int) -> tuple[list[int], list[int]]:
    """Greedy coloring of the candidate set in ascending vertex order.

    Returns vertices grouped by color class (ascending color) and the
    color number of each position; color is an upper bound on the size of
    any clique inside the remaining candidates.
    """
    order: list[int] = []
    colors: list[int] = []
    color = 0
    remaining = cand
    while remaining:
        color += 1
        available = remaining
        while available:
            v = (available & -available).bit_length() - 1
            order.append(v)
            colors.append(color)
            remaining &= ~(1 << v)
            available &= ~(1 << v) & ~adj[v]
    return order, colors


def clique_number_exact(p: int, cap: int = CLIQUE_P_CAP) -> CliqueReport:
    """Exact clique number by branch and bound with coloring bounds.

    Vertex transitivity lets the search fix vertex 0: any maximum clique
    translates to one through 0.  The witness is verified before it is
    returned, as is the independent set obtained by multiplying with the
    smallest non-residue.
    """
    p = validate_prime_1mod4(p)
    if p > cap:
        raise ValueError(f"exact clique search capped at p <= {cap}")
    graph = build_graph(p)
    adj = graph.adjacency

    best_size = 1
    best: tuple[int, ...] = (0,)
    nodes = 0
    current = [0]

    def expand(cand: int) -> None:
        nonlocal best_size, best, nodes
        nodes += 1
        if cand == 0:
            if len(current) > best_size:
                best_size = len(current)
                best = tuple(current)
            return
        order, colors = _color_sort(adj, cand)
        for pos in range(len(order) - 1, -1, -1):
            if len(current) + colors[pos] <= best_size:
                return
            v = order[pos]
            current.append(v)
            expand(cand & adj[v])
            current.pop()
            cand &= ~(1 << v)

    expand(adj[0])

    witness = tuple(sorted(best))
    table = get_table(p)
    _require_clique(table, witness)
    a = table.smallest_nonresidue()
    independent = tuple(sorted(a * v % p for v in witness))
    _require_independent(table, independent)

    return CliqueReport(
        p=p,
        omega=best_size,
        witness_clique=witness,
        independent_witness=independent,
        nonresidue=a,
        nodes_explored=nodes,
    )


def _require_clique(table, vertices: tuple[int, ...]) -> None:
    for n, x in enumerate(vertices):
        for y in vertices[n + 1:]:
            if table.chi[(x - y) % table.p] != 1:
                raise ArithmeticError(f"witness {vertices} is not a clique at ({x},{y})")


def _require_independent(table, vertices: tuple[int, ...]) -> None:
    for n, x in enumerate(vertices):
        for y in vertices[n + 1:]:
            if table.chi[(x - y) % table.p] != -1:
                raise ArithmeticError(f"witness {vertices} is not independent at ({x},{y})")


def independent_gram_eigs(
    omega: int, p: int, witness: tuple[int, ...] | None = None
) -> tuple[np.ndarray, np.ndarray]:
    """Closed-form vs numerically computed Gram spectrum of an independent set.

    The Gram of omega pairwise non-adjacent columns is
    (1 + 1/sqrt(p)) I - (1/sqrt(p)) J, whose spectrum is
    1 - (omega-1)/sqrt(p) once and 1 + 1/sqrt(p) with multiplicity
    omega - 1.  The numeric side diagonalizes the actual Gram submatrix
    of the constructed matrix.  Both are returned ascending.
    """
    p = validate_prime_1mod4(p)
    if omega < 1:
        raise ValueError("omega must be >= 1")
    if witness is None:
        rep = clique_number_exact(p)
        if omega > rep.omega:
            raise ValueError(
                f"no independent set of size {omega} available (clique search found {rep.omega})"
            )
        witness = rep.independent_witness[:omega]
    else:
        witness = tuple(sorted(int(v) for v in witness))
        if len(witness) != omega:
            raise ValueError("witness size does not match omega")
        _require_independent(get_table(p), witness)

    s = 1.0 / math.sqrt(p)
    analytic = np.asarray([1.0 - (omega - 1) * s] + [1.0 + s] * (omega - 1))

    phi = build(p)
    cols = phi.entries[:, list(witness)]
    sub = cols.T @ np.conj(cols)
    numeric = np.asarray(hermitian_eigs(sub, tol=1e-9))
    return analytic, numeric


def clique_rip_consistency(p: int, k: int, delta: float) -> CliqueRipReport:
    """Check omega <= delta*sqrt(p) + 1 for a RIP constant delta at sparsity K.

    Valid only when K >= omega, so the independent set fits inside a
    sparsity-K support.  A 1e-9 slack absorbs roundoff at exact equality
    (delta = 1/sqrt(p) makes the bound land exactly on omega = 2).
    """
    p = validate_prime_1mod4(p)
    if delta < 0:
        raise ValueError("delta must be nonnegative")
    rep = clique_number_exact(p)
    if k < rep.omega:
        raise ValueError(f"K={k} below the clique number {rep.omega}; bound does not apply")
    root = math.sqrt(p)
    bound = delta * root + 1.0
    bound_strict = delta * root
    tol = 1e-9
    return CliqueRipReport(
        p=p,
        k=k,
        delta=delta,
        omega=rep.omega,
        bound=bound,
        bound_strict=bound_strict,
        holds=rep.omega <= bound + tol,
        holds_strict=rep.omega <= bound_strict + tol,
    )


def edges_to_csv(graph: PaleyGraph) -> str:
    """Edge list `u,v` with u < v, ascending."""
    out = StringIO()
    out.write("u,v\n")
    for u in range(graph.p):
        row = graph.adjacency[u] >> (u + 1)
        v = u + 1
        while row:
            if row & 1:
                out.write(f"{u},{v}\n")
            row >>= 1
            v += 1
    return out.getvalue()
