"""Edge-coloring models, vertex-coloring models, and symmetry machinery.

An edge-coloring model with k colors assigns a complex weight to every
color-count vector alpha in N^k; the weight of a graph coloring is the
product over vertices of the model value at the local count vector.  Models
are stored sparsely (finite entry map plus a default) because evaluation
only ever probes vectors with |alpha| up to the maximum degree of the graph
at hand.  Builders therefore materialize entries up to a working degree
bound, 12 by default; using a model on a graph of larger degree silently
falls back to the default value, so pick the bound to cover your graphs.
"""

from __future__ import annotations

import cmath
import itertools
import json
import math
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import DecompositionError
from .graphs import Multigraph

DEFAULT_MAX_DEGREE = 12


def compositions(total: int, parts: int):
    """All tuples of ``parts`` nonnegative ints summing to ``total`` (lex order)."""
    if parts <= 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in compositions(total - head, parts - 1):
            yield (head,) + rest


def vectors_up_to(norm: int, parts: int):
    for d in range(norm + 1):
        yield from compositions(d, parts)


@dataclass
class EdgeColoringModel:
    """Sparse map from color-count vectors to complex weights.

    ``entries`` holds explicit values; every unlisted vector takes ``default``.
    ``k`` is the color count (k >= 1; the single-color case is degenerate but
    legal and occasionally produced by Gram factorizations of 1x1 matrices).
    """

    k: int
    entries: dict[tuple[int, ...], complex]
    default: complex = 0j
    name: str = ""

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("models need at least one color")
        cleaned = {}
        for alpha, val in self.entries.items():
            alpha = tuple(int(a) for a in alpha)
            if len(alpha) != self.k or any(a < 0 for a in alpha):
                raise ValueError(f"bad count vector {alpha!r} for k={self.k}")
            cleaned[alpha] = complex(val)
        self.entries = cleaned
        self.default = complex(self.default)

    def value(self, alpha) -> complex:
        alpha = tuple(alpha)
        if len(alpha) != self.k:
            raise ValueError(f"count vector {alpha!r} has wrong length for k={self.k}")
        if any(a < 0 for a in alpha):
            raise ValueError(f"count vector {alpha!r} has a negative entry")
        return self.entries.get(alpha, self.default)

    @property
    def max_alpha_norm(self) -> int:
        return max((sum(a) for a in self.entries), default=0)

    def shifted(self, offset: complex) -> "EdgeColoringModel":
        """Model with ``offset`` added to every value (entries and default)."""
        return EdgeColoringModel(
            self.k,
            {a: v + offset for a, v in self.entries.items()},
            self.default + offset,
            name=self.name,
        )

    def deviation(self, max_norm: int) -> float:
        """sup |h(alpha) - 1| over all vectors with |alpha| <= max_norm."""
        worst = 0.0
        for alpha in vectors_up_to(max_norm, self.k):
            worst = max(worst, abs(self.value(alpha) - 1.0))
        return worst


def all_ones(k: int) -> EdgeColoringModel:
    return EdgeColoringModel(k, {}, 1.0 + 0j, name="ones")


def model_from_predicate(kind: str, k: int = 2, max_degree: int = DEFAULT_MAX_DEGREE) -> EdgeColoringModel:
    """0/1 models keyed on the count of the first color.

    ``matching``: value 1 when at most one incident edge has color 0 (graph
    edges picked into the matching), else 0.  ``dregular:<d>``: value 1 when
    exactly d incident edges have color 0.  Both use two colors.
    """
    if k != 2:
        raise ValueError("predicate models are two-colored")
    kind = kind.strip().lower()
    entries = {}
    if kind == "matching":
        for alpha in vectors_up_to(max_degree, 2):
            if alpha[0] <= 1:
                entries[alpha] = 1.0 + 0j
        name = "matching"
    elif kind.startswith("dregular:"):
        d = int(kind.split(":", 1)[1])
        if d < 0:
            raise ValueError("dregular needs a nonnegative degree")
        for alpha in vectors_up_to(max_degree, 2):
            if alpha[0] == d:
                entries[alpha] = 1.0 + 0j
        name = f"dregular:{d}"
    else:
        raise ValueError(f"unknown predicate model {kind!r}")
    return EdgeColoringModel(2, entries, 0j, name=name)


def rank_one_model(x, max_degree: int = DEFAULT_MAX_DEGREE) -> EdgeColoringModel:
    """Evaluation model h(alpha) = prod_j x_j^alpha_j for a point x in C^k."""
    x = [complex(v) for v in x]
    k = len(x)
    entries = {}
    for alpha in vectors_up_to(max_degree, k):
        val = 1.0 + 0j
        for xj, aj in zip(x, alpha):
            val *= xj ** aj
        entries[alpha] = val
    return EdgeColoringModel(k, entries, 0j, name="rank-one")


def perturbed_ones(k: int, radius: float, seed: int | None = None,
                   max_degree: int = DEFAULT_MAX_DEGREE) -> EdgeColoringModel:
    """All-ones model with an independent uniform disk perturbation per vector.

    Every materialized entry lies within ``radius`` of 1, so the deviation on
    the covered degree range is at most ``radius``.
    """
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    rng = np.random.default_rng(seed)
    entries = {}
    for alpha in vectors_up_to(max_degree, k):
        rho = radius * math.sqrt(rng.uniform(0.0, 1.0))
        phi = rng.uniform(0.0, 2.0 * math.pi)
        entries[alpha] = 1.0 + rho * cmath.exp(1j * phi)
    return EdgeColoringModel(k, entries, 1.0 + 0j, name=f"ones+uniform:{radius}")


# ---------------------------------------------------------------------------
# vertex-coloring models and the conversion to edge-coloring models


@dataclass
class VertexModel:
    """Vertex weights ``a`` (length n) and symmetric edge matrix ``B`` (n x n)."""

    a: np.ndarray
    B: np.ndarray

    def __post_init__(self):
        self.a = np.asarray(self.a, dtype=complex).reshape(-1)
        self.B = np.asarray(self.B, dtype=complex)
        n = self.a.shape[0]
        if self.B.shape != (n, n):
            raise ValueError("B must be square with side len(a)")
        if not np.allclose(self.B, self.B.T, atol=1e-12):
            raise ValueError("B must be symmetric")

    @property
    def n(self) -> int:
        return self.a.shape[0]


def symmetric_decompose(B) -> np.ndarray:
    """Gram factor U with U^T U = B for a complex symmetric matrix.

    Outer-product elimination with diagonal pivoting; when every remaining
    diagonal entry is negligible next to the off-diagonal mass, a 2x2 block
    pivot is eliminated instead, mixing the two rows through a quarter-turn
    rotation and complex square roots (the same trick that factors
    [[0, b], [b, 0]] into rows proportional to (1, +-i)).  Raises
    ``DecompositionError`` if no usable pivot remains.
    """
    B = np.array(B, dtype=complex)
    if B.ndim != 2 or B.shape[0] != B.shape[1]:
        raise DecompositionError("input must be a square matrix")
    n = B.shape[0]
    if not np.allclose(B, B.T, atol=1e-10):
        raise DecompositionError("input must be symmetric")
    scale = max(np.max(np.abs(B)), 1.0)
    work = B.copy()
    active = list(range(n))
    rows = []
    while active:
        sub = work[np.ix_(active, active)]
        diag = np.abs(np.diag(sub))
        off = np.abs(sub) - np.diag(diag)
        if np.max(np.abs(sub)) <= 1e-13 * scale:
            break
        p_local = int(np.argmax(diag))
        if diag[p_local] >= 1e-2 * np.max(off, initial=0.0):
            p = active[p_local]
            piv = work[p, p]
            row = work[p, :] / cmath.sqrt(piv)
            rows.append(row.copy())
            work = work - np.outer(row, row)
            active.remove(p)
        else:
            flat = int(np.argmax(off))
            i_local, j_local = divmod(flat, len(active))
            if i_local == j_local or off[i_local, j_local] <= 1e-13 * scale:
                raise DecompositionError("no usable pivot (matrix is numerically degenerate)")
            p, q = active[i_local], active[j_local]
            block = np.array([[work[p, p], work[p, q]], [work[q, p], work[q, q]]], dtype=complex)
            # rotate by pi/4 so the block diagonal picks up the off-diagonal mass
            G = np.array([[1.0, -1.0], [1.0, 1.0]], dtype=complex) / math.sqrt(2.0)
            Mr = G @ block @ G.T
            s = cmath.sqrt(Mr[0, 0])
            if abs(s) <= 1e-13 * math.sqrt(scale):
                raise DecompositionError("degenerate 2x2 block pivot")
            l21 = Mr[1, 0] / s
            t = cmath.sqrt(Mr[1, 1] - l21 * l21)
            L = np.array([[s, 0.0], [l21, t]], dtype=complex)
            N = G.T @ L  # N @ N.T == block
            if abs(t) <= 1e-13 * math.sqrt(scale):
                raise DecompositionError("singular 2x2 block pivot")
            Ninv_T = np.linalg.inv(N).T
            X = work[:, [p, q]]
            W = X @ Ninv_T
            rows.append(W[:, 0].copy())
            rows.append(W[:, 1].copy())
            work = work - W @ W.T
            active.remove(p)
            active.remove(q)
    if not rows:
        rows.append(np.zeros(n, dtype=complex))
    U = np.vstack(rows)
    resid = np.max(np.abs(U.T @ U - B))
    if resid > 1e-10 * scale:
        raise DecompositionError(f"factorization residual {resid:.3e} too large")
    return U


def vertex_to_edge(model: VertexModel, U: np.ndarray | None = None,
                   max_degree: int = DEFAULT_MAX_DEGREE) -> EdgeColoringModel:
    """Edge-coloring model with the same partition function as ``model``.

    Uses any U with U^T U = B (computed by ``symmetric_decompose`` when not
    supplied); with columns u_1..u_n of U, the value at alpha is
    sum_i a_i * prod_j u_i(j)^alpha_j, materialized up to ``max_degree``.
    """
    if U is None:
        U = symmetric_decompose(model.B)
    U = np.asarray(U, dtype=complex)
    if U.shape[1] != model.n:
        raise ValueError("U must have one column per vertex-model state")
    resid = np.max(np.abs(U.T @ U - model.B))
    if resid > 1e-8 * max(1.0, np.max(np.abs(model.B))):
        raise ValueError(f"U^T U differs from B by {resid:.3e}")
    k = U.shape[0]
    entries = {}
    for alpha in vectors_up_to(max_degree, k):
        total = 0j
        for i in range(model.n):
            term = model.a[i]
            for j in range(k):
                term *= U[j, i] ** alpha[j]
            total += term
        entries[alpha] = total
    return EdgeColoringModel(k, entries, 0j, name="from-vertex-model")


# ---------------------------------------------------------------------------
# tensor assignments: one symmetric tensor per vertex


@dataclass
class TensorAssignment:
    """Per-vertex weight tables for a specific graph.

    ``tensors[v]`` maps count vectors of norm ``deg(v)`` to complex weights.
    """

    graph: Multigraph
    k: int
    tensors: tuple[dict[tuple[int, ...], complex], ...]

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("tensor assignments need at least one color")
        if len(self.tensors) != self.graph.n:
            raise ValueError("need exactly one tensor per vertex")
        cleaned = []
        for v, t in enumerate(self.tensors):
            d = self.graph.degree(v)
            out = {}
            for alpha, val in t.items():
                alpha = tuple(int(a) for a in alpha)
                if len(alpha) != self.k or any(a < 0 for a in alpha):
                    raise ValueError(f"bad count vector {alpha!r} at vertex {v}")
                if sum(alpha) != d:
                    raise ValueError(
                        f"vertex {v} has degree {d} but tensor key {alpha!r} has norm {sum(alpha)}"
                    )
                out[alpha] = complex(val)
            cleaned.append(out)
        self.tensors = tuple(cleaned)

    def value(self, v: int, alpha) -> complex:
        alpha = tuple(alpha)
        try:
            return self.tensors[v][alpha]
        except KeyError as exc:
            raise KeyError(f"vertex {v} tensor has no value at {alpha}") from exc

    @classmethod
    def from_model(cls, g: Multigraph, h: EdgeColoringModel) -> "TensorAssignment":
        tensors = []
        for v in range(g.n):
            tensors.append({alpha: h.value(alpha) for alpha in compositions(g.degree(v), h.k)})
        return cls(g, h.k, tuple(tensors))

    @classmethod
    def from_function(cls, g: Multigraph, k: int, fn) -> "TensorAssignment":
        """Build tables by calling ``fn(v, alpha)`` on every needed vector."""
        tensors = []
        for v in range(g.n):
            tensors.append({alpha: fn(v, alpha) for alpha in compositions(g.degree(v), k)})
        return cls(g, k, tuple(tensors))


# ---------------------------------------------------------------------------
# orthogonal action


def random_orthogonal(k: int, seed: int | None = None) -> np.ndarray:
    """Complex orthogonal matrix exp(A) with A antisymmetric, entries in the unit disk."""
    from scipy.linalg import expm

    rng = np.random.default_rng(seed)
    re = rng.uniform(-0.5, 0.5, size=(k, k))
    im = rng.uniform(-0.5, 0.5, size=(k, k))
    A = re + 1j * im
    A = A - A.T  # antisymmetric; entries stay within the unit disk
    g = expm(A)
    resid = np.max(np.abs(g.T @ g - np.eye(k)))
    if resid > 1e-9:
        raise RuntimeError(f"orthogonality residual {resid:.3e} too large")
    return g


def _poly_mul(p: dict, q: dict) -> dict:
    out = {}
    for a, ca in p.items():
        for b, cb in q.items():
            key = tuple(x + y for x, y in zip(a, b))
            out[key] = out.get(key, 0j) + ca * cb
    return out


def _transformed_monomial(g: np.ndarray, alpha: tuple[int, ...]) -> dict:
    """Expansion of prod_j (g v)_j^alpha_j as a polynomial in v (dict beta -> coeff)."""
    k = len(alpha)
    zero = tuple(0 for _ in range(k))
    result = {zero: 1.0 + 0j}
    unit = np.eye(k, dtype=int)
    for j in range(k):
        if alpha[j] == 0:
            continue
        linear = {tuple(unit[i]): complex(g[j, i]) for i in range(k) if g[j, i] != 0}
        for _ in range(alpha[j]):
            result = _poly_mul(result, linear)
    return result


def transformed_value(g: np.ndarray, value_fn, alpha) -> complex:
    """Value of the transformed model at ``alpha``: expand the monomial and recombine."""
    total = 0j
    for beta, coeff in _transformed_monomial(g, tuple(alpha)).items():
        total += coeff * value_fn(beta)
    return total


def apply_orthogonal(g: np.ndarray, target, max_degree: int | None = None):
    """Transform a model or tensor assignment by a complex orthogonal matrix.

    For an ``EdgeColoringModel`` the result is materialized for all vectors
    with norm up to ``max_degree`` (default: the model's own maximum listed
    norm); beyond that the original default is kept, which is only faithful
    if evaluation never probes that far.  For a ``TensorAssignment`` the
    transform is exact since each vertex table has a fixed norm.
    """
    g = np.asarray(g, dtype=complex)
    if isinstance(target, EdgeColoringModel):
        if g.shape != (target.k, target.k):
            raise ValueError("matrix size must match the color count")
        bound = target.max_alpha_norm if max_degree is None else max_degree
        entries = {}
        for alpha in vectors_up_to(bound, target.k):
            entries[alpha] = transformed_value(g, target.value, alpha)
        return EdgeColoringModel(target.k, entries, target.default, name=target.name)
    if isinstance(target, TensorAssignment):
        if g.shape != (target.k, target.k):
            raise ValueError("matrix size must match the color count")
        tensors = []
        for v in range(target.graph.n):
            d = target.graph.degree(v)
            tensors.append({
                alpha: transformed_value(g, lambda b, v=v: target.value(v, b), alpha)
                for alpha in compositions(d, target.k)
            })
        return TensorAssignment(target.graph, target.k, tuple(tensors))
    raise TypeError(f"cannot transform {type(target).__name__}")


# ---------------------------------------------------------------------------
# zero-free region parameters


@dataclass(frozen=True)
class RegionParams:
    """Parameters (delta, eta, theta, beta) of the diagonal zero-free region.

    Constraints: 0 < theta < 2*pi/3, eta > 0, delta > 0, and
    beta <= eta * theta * cos(theta / 2).
    """

    delta: float
    eta: float
    theta: float
    beta: float

    def __post_init__(self):
        if not 0.0 < self.theta < 2.0 * math.pi / 3.0:
            raise ValueError("theta must lie in (0, 2*pi/3)")
        if self.eta <= 0.0 or self.delta <= 0.0:
            raise ValueError("eta and delta must be positive")
        cap = self.eta * self.theta * math.cos(self.theta / 2.0)
        if self.beta > cap * (1.0 + 1e-12):
            raise ValueError(f"beta={self.beta} exceeds eta*theta*cos(theta/2)={cap}")
        if self.beta <= 0.0:
            raise ValueError("beta must be positive")

    @classmethod
    def from_theorem(cls, eta: float, theta: float, max_degree: int) -> "RegionParams":
        """Largest admissible beta and the matching delta for graphs of given degree."""
        beta = eta * theta * math.cos(theta / 2.0)
        delta = min(eta, beta / (max_degree + 1))
        return cls(delta=delta, eta=eta, theta=theta, beta=beta)

    def validate_for_degree(self, max_degree: int) -> None:
        cap = min(self.eta, self.beta / (max_degree + 1))
        if self.delta > cap * (1.0 + 1e-12):
            raise ValueError(
                f"delta={self.delta} exceeds min(eta, beta/(Delta+1))={cap} at Delta={max_degree}"
            )


def values_in_region(values, delta: float, eta: float) -> bool:
    """Membership test for one vertex table: pairwise spread < delta, moduli >= eta."""
    vals = list(values)
    if not vals:
        return True
    if any(abs(v) < eta * (1.0 - 1e-12) for v in vals):
        return False
    hi_re = max(v.real for v in vals)
    lo_re = min(v.real for v in vals)
    hi_im = max(v.imag for v in vals)
    lo_im = min(v.imag for v in vals)
    # cheap reject before the quadratic pass
    if math.hypot(hi_re - lo_re, hi_im - lo_im) < delta:
        return True
    return all(abs(x - y) < delta for x, y in itertools.combinations(vals, 2))


def assignment_in_region(t: TensorAssignment, params: RegionParams) -> bool:
    return all(values_in_region(t.tensors[v].values(), params.delta, params.eta)
               for v in range(t.graph.n))


# ---------------------------------------------------------------------------
# JSON serialization


def _c2j(z: complex) -> dict:
    return {"re": float(z.real), "im": float(z.imag)}


def _j2c(obj) -> complex:
    return complex(float(obj["re"]), float(obj["im"]))


def model_to_json_dict(h: EdgeColoringModel) -> dict:
    entries = [{"alpha": list(a), "re": v.real, "im": v.imag}
               for a, v in sorted(h.entries.items())]
    return {"k": h.k, "default": _c2j(h.default), "entries": entries}


def model_from_json_dict(obj) -> EdgeColoringModel:
    try:
        k = int(obj["k"])
        default = _j2c(obj["default"])
        entries = {tuple(int(a) for a in e["alpha"]): complex(float(e["re"]), float(e["im"]))
                   for e in obj["entries"]}
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed model JSON: {exc}") from exc
    return EdgeColoringModel(k, entries, default)


def load_model(path) -> EdgeColoringModel:
    with open(path, "r", encoding="utf-8") as fh:
        return model_from_json_dict(json.load(fh))


def save_model(h: EdgeColoringModel, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(model_to_json_dict(h), fh, indent=1)
        fh.write("\n")


def vertex_model_to_json_dict(vm: VertexModel) -> dict:
    return {
        "a": [_c2j(z) for z in vm.a],
        "B": [[_c2j(z) for z in row] for row in vm.B],
    }


def vertex_model_from_json_dict(obj) -> VertexModel:
    try:
        a = [_j2c(z) for z in obj["a"]]
        B = [[_j2c(z) for z in row] for row in obj["B"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed vertex-model JSON: {exc}") from exc
    return VertexModel(np.array(a), np.array(B))
