"""Brute-force engines: edge-coloring sums, interpolation, and root finding.

The core enumerator walks every coloring of a chosen edge set and multiplies
per-vertex weights as vertices complete.  Two interchangeable paths exist:
a depth-first fold that adds leaf terms in lexicographic coloring order and
prunes subtrees whose running product is exactly zero, and a chunked
vectorized path that evaluates the same sum with a deterministic pairwise
reduction (the two agree to floating-point reshuffling, and reruns of either
are bit-for-bit stable).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import BudgetExceededError, RootFindingError
from .graphs import Multigraph
from .models import EdgeColoringModel, TensorAssignment, compositions

DEFAULT_BUDGET = 10 ** 8

_VECTOR_MIN = 2048
_CHUNK = 1 << 19


# ---------------------------------------------------------------------------
# polynomials


@dataclass(frozen=True)
class ComplexPoly:
    """Dense univariate polynomial, coefficients in ascending degree order."""

    coeffs: tuple[complex, ...]

    def __post_init__(self):
        cs = tuple(complex(c) for c in self.coeffs)
        while len(cs) > 1 and cs[-1] == 0:
            cs = cs[:-1]
        if not cs:
            cs = (0j,)
        object.__setattr__(self, "coeffs", cs)

    @classmethod
    def from_coefficients(cls, coeffs, rel_tol: float = 0.0) -> "ComplexPoly":
        cs = [complex(c) for c in coeffs]
        if rel_tol > 0 and cs:
            top = max(abs(c) for c in cs)
            cut = rel_tol * top
            while len(cs) > 1 and abs(cs[-1]) <= cut:
                cs.pop()
        return cls(tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, z: complex) -> complex:
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)


# ---------------------------------------------------------------------------
# restriction spec


@dataclass(frozen=True)
class RestrictedSpec:
    """Partial edge coloring: a map from edge index to a fixed color."""

    fixed: tuple[tuple[int, int], ...]

    @classmethod
    def from_dict(cls, mapping) -> "RestrictedSpec":
        return cls(tuple(sorted((int(e), int(c)) for e, c in dict(mapping).items())))

    def as_dict(self) -> dict[int, int]:
        return dict(self.fixed)

    def validate(self, g: Multigraph, k: int) -> None:
        seen = set()
        for e, c in self.fixed:
            if not 0 <= e < g.m:
                raise ValueError(f"edge index {e} out of range")
            if e in seen:
                raise ValueError(f"edge index {e} fixed twice")
            if not 0 <= c < k:
                raise ValueError(f"color {c} out of range(k={k})")
            seen.add(e)


# ---------------------------------------------------------------------------
# table construction

def _model_tables(g: Multigraph, h: EdgeColoringModel, vertices=None):
    """Dense per-vertex weight tables: vertex -> (base, flat list by packed index)."""
    vertices = range(g.n) if vertices is None else vertices
    tables = {}
    for v in vertices:
        d = g.degree(v)
        base = d + 1
        dense = [0j] * (base ** h.k)
        for alpha in compositions(d, h.k):
            dense[_pack(alpha, base)] = h.value(alpha)
        tables[v] = (base, dense)
    return tables


def _tensor_tables(t: TensorAssignment):
    tables = {}
    for v in range(t.graph.n):
        d = t.graph.degree(v)
        base = d + 1
        dense = [0j] * (base ** t.k)
        for alpha in compositions(d, t.k):
            dense[_pack(alpha, base)] = t.value(v, alpha)  # raises if the tensor is incomplete
        tables[v] = (base, dense)
    return tables


def _pack(alpha, base: int) -> int:
    packed = 0
    for c in reversed(alpha):
        packed = packed * base + c
    return packed


# ---------------------------------------------------------------------------
# the enumerator


def _colored_sum(g: Multigraph, k: int, edge_indices, fixed: dict[int, int],
                 tables, budget: float, method: str = "auto") -> complex:
    """Sum over colorings of ``edge_indices`` of the product of vertex weights.

    ``tables`` maps each participating vertex to its ``(base, dense)`` weight
    table; vertices absent from ``tables`` contribute no factor.  ``fixed``
    pins colors of individual edges.  Enumeration cost is ``k ** #free``.
    """
    if method not in ("auto", "vector", "dfs"):
        raise ValueError(f"unknown method {method!r}; expected auto, vector, or dfs")
    edge_indices = sorted(edge_indices)
    free = [e for e in edge_indices if e not in fixed]
    if budget is not None and len(free) * math.log(k) > math.log(max(budget, 1.0)) + 1e-9:
        raise BudgetExceededError(
            f"{k}^{len(free)} colorings exceed the budget of {budget:g} terms"
        )
    total = k ** len(free)

    # per-vertex incidence counts within edge_indices
    rem = {v: 0 for v in tables}
    for e in edge_indices:
        u, w = g.edges[e]
        if u in rem:
            rem[u] += 1
        if w in rem and w != u:
            rem[w] += 1

    # constant factor from vertices never touched by these edges
    const = 1.0 + 0j
    packed0 = {}
    for v, (base, dense) in tables.items():
        packed0[v] = 0
        if rem[v] == 0:
            const *= dense[0]

    # apply fixed colors up front
    for e, c in fixed.items():
        if e not in edge_indices:
            continue
        u, w = g.edges[e]
        for v in ((u,) if u == w else (u, w)):
            if v in tables:
                base = tables[v][0]
                packed0[v] += (2 if u == w else 1) * base ** c
                rem[v] -= 1
                if rem[v] == 0:
                    const *= tables[v][1][packed0[v]]
    if const == 0:
        return 0j

    if not free:
        return const

    plan = []
    for e in free:
        u, w = g.edges[e]
        ends = []
        for v, mult in (((u, 2),) if u == w else ((u, 1), (w, 1))):
            if v in tables:
                base = tables[v][0]
                ends.append((v, tuple(mult * base ** c for c in range(k))))
        plan.append(tuple(ends))

    if method == "auto":
        has_zero = any(any(val == 0 for val in dense) for _, dense in tables.values())
        method = "vector" if (total >= _VECTOR_MIN and not has_zero) else "dfs"

    if method == "vector":
        return const * _sum_vectorized(plan, tables, packed0, k, total)
    return const * _sum_dfs(plan, tables, packed0, rem, k)


def _sum_dfs(plan, tables, packed0, rem0, k) -> complex:
    ne = len(plan)
    packed = dict(packed0)
    rem = dict(rem0)
    dense = {v: t[1] for v, t in tables.items()}
    acc = 0j
    colors = range(k)

    def rec(i, prod):
        nonlocal acc
        if i == ne:
            acc += prod
            return
        ends = plan[i]
        for c in colors:
            p = prod
            for v, incs in ends:
                packed[v] += incs[c]
                rem[v] -= 1
                if rem[v] == 0:
                    p = p * dense[v][packed[v]]
            if p != 0:
                rec(i + 1, p)
            for v, incs in ends:
                packed[v] -= incs[c]
                rem[v] += 1

    rec(0, 1.0 + 0j)
    return acc


def _sum_vectorized(plan, tables, packed0, k, total) -> complex:
    npos = len(plan)
    touched = sorted({v for ends in plan for v, _ in ends})
    inc_arrays = [[(v, np.array(incs, dtype=np.int64)) for v, incs in ends] for ends in plan]
    dense_arrays = {v: np.array(tables[v][1], dtype=complex) for v in touched}
    chunk_sums = []
    for lo in range(0, total, _CHUNK):
        hi = min(lo + _CHUNK, total)
        idx = np.arange(lo, hi, dtype=np.int64)
        packed = {v: np.full(hi - lo, packed0[v], dtype=np.int64) for v in touched}
        for pos in range(npos):
            div = k ** (npos - 1 - pos)
            digit = (idx // div) % k
            for v, incs in inc_arrays[pos]:
                packed[v] += incs[digit]
        prod = np.ones(hi - lo, dtype=complex)
        for v in touched:
            prod *= dense_arrays[v][packed[v]]
        chunk_sums.append(complex(prod.sum()))
    out = 0j
    for s in chunk_sums:
        out += s
    return out


# ---------------------------------------------------------------------------
# public operations


def exact_partition(g: Multigraph, h: EdgeColoringModel, budget: float | None = None,
                    method: str = "auto") -> complex:
    """Partition function of ``h`` on ``g`` by full edge-coloring enumeration."""
    budget = DEFAULT_BUDGET if budget is None else budget
    tables = _model_tables(g, h)
    return _colored_sum(g, h.k, range(g.m), {}, tables, budget, method)


def contract_network(g: Multigraph, t: TensorAssignment, budget: float | None = None,
                     method: str = "auto") -> complex:
    """Contract a per-vertex tensor assignment over all edge colorings."""
    if t.graph != g:
        raise ValueError("tensor assignment was built for a different graph")
    budget = DEFAULT_BUDGET if budget is None else budget
    tables = _tensor_tables(t)
    return _colored_sum(g, t.k, range(g.m), {}, tables, budget, method)


def restricted_partition(g: Multigraph, t: TensorAssignment, restriction: RestrictedSpec,
                         budget: float | None = None, method: str = "auto") -> complex:
    """Contraction with some edge colors pinned by ``restriction``."""
    if t.graph != g:
        raise ValueError("tensor assignment was built for a different graph")
    restriction.validate(g, t.k)
    budget = DEFAULT_BUDGET if budget is None else budget
    tables = _tensor_tables(t)
    return _colored_sum(g, t.k, range(g.m), restriction.as_dict(), tables, budget, method)


def partition_vertex_model(g: Multigraph, a, B, budget: float | None = None) -> complex:
    """Vertex-coloring partition sum: states per vertex, pair weights per edge."""
    a = np.asarray(a, dtype=complex).reshape(-1)
    B = np.asarray(B, dtype=complex)
    n_states = a.shape[0]
    if B.shape != (n_states, n_states):
        raise ValueError("B must be square with side len(a)")
    budget = DEFAULT_BUDGET if budget is None else budget
    if g.n * math.log(max(n_states, 1)) > math.log(max(budget, 1.0)) + 1e-9:
        raise BudgetExceededError(f"{n_states}^{g.n} states exceed the budget")
    edges_at = [[] for _ in range(g.n)]
    for u, x in g.edges:
        edges_at[max(u, x)].append((u, x))

    total = 0j

    def walk(v, weight, states):
        nonlocal total
        if v == g.n:
            total += weight
            return
        for s in range(n_states):
            w = weight * a[s]
            for u, x in edges_at[v]:
                w *= B[states[u] if u != v else s, states[x] if x != v else s]
                if w == 0:
                    break
            if w != 0:
                walk(v + 1, w, states + (s,))

    walk(0, 1.0 + 0j, ())
    return total


def exact_poly_by_interpolation(g: Multigraph, h: EdgeColoringModel,
                                budget: float | None = None) -> ComplexPoly:
    """Coefficients of z -> partition sum of the blend 1 + z*(h - 1).

    Evaluates the blend exactly at the integer nodes 0..|V| and solves the
    Vandermonde system; the polynomial has degree at most |V|.  Raises if the
    solve leaves a relative residual above 1e-8 at any node.
    """
    budget = DEFAULT_BUDGET if budget is None else budget
    n = g.n
    nodes = np.arange(n + 1, dtype=float)
    values = []
    for z in nodes:
        blended = EdgeColoringModel(
            h.k,
            {a: 1.0 + z * (val - 1.0) for a, val in h.entries.items()},
            1.0 + z * (h.default - 1.0),
        )
        values.append(exact_partition(g, blended, budget))
    values = np.array(values, dtype=complex)
    V = np.vander(nodes, n + 1, increasing=True).astype(complex)
    coeffs = np.linalg.solve(V, values)
    resid = np.max(np.abs(V @ coeffs - values))
    tol = 1e-8 * max(1.0, float(np.max(np.abs(values))))
    if resid > tol:
        raise ArithmeticError(f"interpolation residual {resid:.3e} exceeds {tol:.3e}")
    return ComplexPoly.from_coefficients(list(coeffs), rel_tol=1e-12)


# ---------------------------------------------------------------------------
# simultaneous root iteration


def poly_roots(p: ComplexPoly, max_iterations: int = 800, step_tol: float = 1e-13) -> tuple[complex, ...]:
    """All roots of ``p`` (with multiplicity) by Durand-Kerner iteration.

    Starts from a deterministic circle of perturbed initial guesses, iterates
    the simultaneous correction, and validates every root against the
    residual bound |p(root)| <= 1e-9 * max|coeff| * max(1, |root|)^degree.
    Roots are ordered by modulus, then by argument.
    """
    if p.is_zero():
        raise ValueError("the zero polynomial has no well-defined root set")
    coeffs = list(p.coeffs)
    d = len(coeffs) - 1
    if d < 1:
        raise ValueError("constant polynomials have no roots")
    scale = max(abs(c) for c in coeffs)

    lead = coeffs[-1]
    monic = [c / lead for c in coeffs]

    # peel off exact roots at the origin
    origin = 0
    while monic[0] == 0:
        origin += 1
        monic = monic[1:]
    deg = len(monic) - 1

    roots = [0j] * origin
    if deg >= 1:
        cauchy = 1.0 + max(abs(c) for c in monic[:-1])
        geo = abs(monic[0]) ** (1.0 / deg) if monic[0] != 0 else 1.0
        found = None
        for attempt in range(4):
            radius = min(cauchy, max(geo, 1e-3) * (1.6 + 0.9 * attempt))
            if attempt == 3:
                radius = cauchy
            offset = 0.40 + 0.31 * attempt
            zs = [radius * cmath.exp(2j * math.pi * (i + offset) / deg) for i in range(deg)]
            if _durand_kerner(monic, zs, max_iterations, step_tol):
                if _roots_ok(coeffs, zs, scale, d):
                    found = zs
                    break
        if found is None:
            raise RootFindingError("root iteration failed to converge", tuple(roots + zs))
        roots.extend(found)

    roots.sort(key=lambda z: (abs(z), cmath.phase(z)))
    return tuple(roots)


def _horner(coeffs, z):
    acc = 0j
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


def _durand_kerner(monic, zs, max_iterations, step_tol) -> bool:
    deg = len(zs)
    for _ in range(max_iterations):
        worst = 0.0
        for i in range(deg):
            zi = zs[i]
            num = _horner(monic, zi)
            den = 1.0 + 0j
            for j in range(deg):
                if j != i:
                    den *= zi - zs[j]
            if den == 0:
                den = step_tol + 0j
            step = num / den
            zs[i] = zi - step
            rel = abs(step) / (1.0 + abs(zs[i]))
            worst = max(worst, rel)
        if worst < step_tol:
            return True
    return True  # let the residual check decide (clusters converge slowly)


def _roots_ok(coeffs, roots, scale, d) -> bool:
    for z in roots:
        bound = 1e-9 * scale * max(1.0, abs(z)) ** d
        if abs(_horner(coeffs, z)) > bound:
            return False
    return True
