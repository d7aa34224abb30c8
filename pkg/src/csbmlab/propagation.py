"""Message-passing operators and exact per-node variance profiles.

All operators act on the left: one random-walk convolution maps H to
(D^-1 A) H.  Matrix powers are evaluated as iterated sparse mat-vecs; dense
operator powers appear only in the small-graph test oracles.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .csbm import Features, Graph

RANDOM_WALK = "random_walk"
SYMMETRIC = "symmetric"
PPNP = "ppnp"
APPNP = "appnp"

_KINDS = (RANDOM_WALK, SYMMETRIC, PPNP, APPNP)

VARIANCE_PROFILE_NODE_CAP = 5000


class DegenerateGraphError(ValueError):
    """The graph has an isolated node, so D^-1 A is undefined."""


class ResourceLimitError(RuntimeError):
    """Exact computation refused; the input exceeds the configured cap."""


@dataclass(frozen=True)
class OperatorSpec:
    """A message-passing scheme plus an optional terminal ReLU.

    kind is one of random_walk, symmetric, ppnp, appnp.  alpha is the
    teleportation probability (ppnp/appnp); truncation is the ppnp series
    length K.
    """

    kind: str
    alpha: float | None = None
    truncation: int | None = None
    terminal_relu: bool = False

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise ValueError(f"unknown operator kind {self.kind!r}; expected one of {_KINDS}")
        if self.kind == PPNP:
            if self.alpha is None or not (0.0 < self.alpha <= 1.0):
                raise ValueError(f"ppnp requires alpha in (0, 1], got {self.alpha}")
            if self.truncation is None or self.truncation < 1:
                raise ValueError(f"ppnp requires truncation K >= 1, got {self.truncation}")
        elif self.kind == APPNP:
            # alpha = 0 collapses the recursion to the plain random walk.
            if self.alpha is None or not (0.0 <= self.alpha <= 1.0):
                raise ValueError(f"appnp requires alpha in [0, 1], got {self.alpha}")
        else:
            if self.alpha is not None or self.truncation is not None:
                raise ValueError(f"{self.kind} takes neither alpha nor truncation")

    @classmethod
    def random_walk(cls, terminal_relu: bool = False) -> "OperatorSpec":
        return cls(RANDOM_WALK, terminal_relu=terminal_relu)

    @classmethod
    def symmetric(cls, terminal_relu: bool = False) -> "OperatorSpec":
        return cls(SYMMETRIC, terminal_relu=terminal_relu)

    @classmethod
    def ppnp(cls, alpha: float, truncation: int, terminal_relu: bool = False) -> "OperatorSpec":
        return cls(PPNP, alpha=alpha, truncation=truncation, terminal_relu=terminal_relu)

    @classmethod
    def appnp(cls, alpha: float, terminal_relu: bool = False) -> "OperatorSpec":
        return cls(APPNP, alpha=alpha, terminal_relu=terminal_relu)

    @property
    def label(self) -> str:
        if self.kind == PPNP:
            base = f"ppnp(alpha={self.alpha:g},K={self.truncation})"
        elif self.kind == APPNP:
            base = f"appnp(alpha={self.alpha:g})"
        else:
            base = self.kind
        return base + "+relu" if self.terminal_relu else base


@dataclass(frozen=True)
class NodeRepresentations:
    """N x d node representations after propagation; depth 0 is the input."""

    matrix: np.ndarray
    depth: int
    operator: OperatorSpec


@dataclass(frozen=True)
class VarianceProfile:
    """Per-node representation variances sigma_i^2(n) = sigma2 * sum_j p_ij^2
    under isotropic feature noise of variance sigma2."""

    per_node: np.ndarray
    depth: int
    sigma2_input: float
    operator: OperatorSpec = field(default_factory=OperatorSpec.random_walk)


def _inverse_degrees(graph: Graph) -> np.ndarray:
    deg = graph.degree_vector
    if (deg == 0).any():
        node = int(np.flatnonzero(deg == 0)[0])
        raise DegenerateGraphError(
            f"node {node} is isolated (degree 0); the propagation operator is undefined"
        )
    return 1.0 / deg


def _as_matrix(h: np.ndarray) -> np.ndarray:
    h = np.asarray(h, dtype=np.float64)
    return h[:, None] if h.ndim == 1 else h


def rw_step(graph: Graph, h: np.ndarray) -> np.ndarray:
    """One random-walk convolution: output row i is the mean of h over i's
    neighbors."""
    inv = _inverse_degrees(graph)
    hm = _as_matrix(h)
    out = graph.adjacency @ hm
    out *= inv[:, None]
    return out if np.asarray(h).ndim > 1 else out[:, 0]


def sym_step(graph: Graph, h: np.ndarray) -> np.ndarray:
    """One symmetric convolution D^-1/2 A D^-1/2 h."""
    inv_sqrt = np.sqrt(_inverse_degrees(graph))
    hm = _as_matrix(h)
    out = graph.adjacency @ (hm * inv_sqrt[:, None])
    out *= inv_sqrt[:, None]
    return out if np.asarray(h).ndim > 1 else out[:, 0]


def appnp_step(graph: Graph, h: np.ndarray, x: np.ndarray, alpha: float) -> np.ndarray:
    """One teleporting convolution: (1-alpha) (D^-1 A) h + alpha x."""
    hm, xm = _as_matrix(h), _as_matrix(x)
    out = (1.0 - alpha) * _as_matrix(rw_step(graph, hm)) + alpha * xm
    return out if np.asarray(h).ndim > 1 else out[:, 0]


def ppnp(graph: Graph, x: np.ndarray, alpha: float, truncation: int) -> tuple[np.ndarray, float]:
    """K-truncated teleportation series alpha * sum_{k=0}^{K} (1-alpha)^k (D^-1 A)^k x,
    accumulated Horner-style (K sparse mat-vecs), plus the neglected-mass
    bound (1-alpha)^{K+1}.

    The truncation error is at most tail_bound * max|x| entrywise, since
    every (D^-1 A)^k is row-stochastic.
    """
    if not (0.0 < alpha <= 1.0):
        raise ValueError(f"ppnp requires alpha in (0, 1], got {alpha}")
    if truncation < 1:
        raise ValueError(f"truncation must be >= 1, got {truncation}")
    xm = _as_matrix(x)
    acc = xm.copy()
    for _ in range(truncation):
        acc = xm + (1.0 - alpha) * _as_matrix(rw_step(graph, acc))
    out = alpha * acc
    tail = (1.0 - alpha) ** (truncation + 1)
    return (out if np.asarray(x).ndim > 1 else out[:, 0]), tail


def propagate(graph: Graph, x: Features | np.ndarray, op: OperatorSpec, n: int) -> NodeRepresentations:
    """Apply the operator n times (ppnp ignores n and returns its K-truncated
    series); a terminal ReLU, if requested, clamps negatives once at the end."""
    if n < 0:
        raise ValueError(f"depth must be >= 0, got {n}")
    xm = x.matrix if isinstance(x, Features) else _as_matrix(x)
    xm = np.asarray(xm, dtype=np.float64)
    if xm.shape[0] != graph.n_nodes:
        raise ValueError(f"feature rows {xm.shape[0]} != graph nodes {graph.n_nodes}")

    if op.kind == PPNP:
        h, _ = ppnp(graph, xm, op.alpha, op.truncation)
        depth = op.truncation
    else:
        h = xm.copy()
        for _ in range(n):
            if op.kind == RANDOM_WALK:
                h = rw_step(graph, h)
            elif op.kind == SYMMETRIC:
                h = sym_step(graph, h)
            else:
                h = appnp_step(graph, h, xm, op.alpha)
        depth = n
    if op.terminal_relu:
        h = np.maximum(h, 0.0)
    h.setflags(write=False)
    return NodeRepresentations(matrix=h, depth=depth, operator=op)


def _kahan_row_sumsq(m: np.ndarray) -> np.ndarray:
    """Compensated (Kahan) per-row sum of squares, vectorized across rows."""
    total = np.zeros(m.shape[0])
    comp = np.zeros(m.shape[0])
    for j in range(m.shape[1]):
        term = m[:, j] * m[:, j] - comp
        new_total = total + term
        comp = (new_total - total) - term
        total = new_total
    return total


def exact_variance_profile(
    graph: Graph,
    op: OperatorSpec,
    n: int,
    sigma2: float,
    node_cap: int = VARIANCE_PROFILE_NODE_CAP,
) -> VarianceProfile:
    """Exact per-node variances sigma2 * sum_j p_ij(n)^2, computed by
    propagating the identity basis (no Monte Carlo).

    The profile describes the linear coefficient rows p_ij; terminal_relu is
    ignored (a rectified Gaussian has no row-norm variance identity).  For
    ppnp the K-truncated row coefficients are used.
    """
    if sigma2 <= 0:
        raise ValueError(f"sigma2 must be positive, got {sigma2}")
    if graph.n_nodes > node_cap:
        raise ResourceLimitError(
            f"exact profile on {graph.n_nodes} nodes exceeds the cap of {node_cap}; "
            "use Monte Carlo moments instead"
        )
    basis = np.eye(graph.n_nodes)
    rows = propagate(graph, basis, OperatorSpec(op.kind, op.alpha, op.truncation), n)
    per_node = sigma2 * _kahan_row_sumsq(rows.matrix)
    per_node.setflags(write=False)
    return VarianceProfile(per_node=per_node, depth=rows.depth, sigma2_input=sigma2, operator=op)
