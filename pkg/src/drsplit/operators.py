"""Maximally monotone operators represented by their resolvents.

An operator A is stored purely through its resolvent J_A = (Id + A)^(-1),
which is single valued, everywhere defined, and firmly nonexpansive. All the
quantities tracked elsewhere (the splitting operator, shadows, solution pairs,
displacement vectors) are resolvent-expressible, so the multivalued map itself
is never materialized. Structural facts that cannot be certified cheaply at
run time (paramonotonicity, being a subdifferential, having a linear graph)
travel as metadata flags declared at construction; combinators propagate them
conservatively.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import MonotonicityError
from .space import (
    AffineSubspace,
    ConvexSet,
    as_point,
    is_affine,
    is_linear_subspace,
)


@dataclass(frozen=True, eq=False)
class MonotoneOperator:
    """A maximally monotone operator given by its resolvent map.

    ``resolvent_map`` must be total on R^dim, deterministic, and firmly
    nonexpansive; the test suite samples these properties for every
    constructor and combinator below.
    """

    resolvent_map: Callable[[np.ndarray], np.ndarray]
    dim: int
    is_linear_relation: bool = False
    is_paramonotone: bool = False
    is_subdifferential: bool = False
    label: str = ""

    def resolvent(self, x) -> np.ndarray:
        """Evaluate J_A at ``x`` (validates dimension and finiteness)."""
        xv = as_point(x, self.dim)
        return np.asarray(self.resolvent_map(xv), dtype=float)

    def __repr__(self):  # keep tracebacks short
        return f"MonotoneOperator({self.label or 'anonymous'}, dim={self.dim})"


@dataclass(frozen=True, eq=False)
class GraphPoint:
    """A pair (point, normal) lying on the graph of an operator."""

    point: np.ndarray
    normal: np.ndarray

    def __post_init__(self):
        p = as_point(self.point)
        n = as_point(self.normal, p.shape[0])
        object.__setattr__(self, "point", p)
        object.__setattr__(self, "normal", n)


def reflected(A: MonotoneOperator, x) -> np.ndarray:
    """Reflected resolvent 2 J_A(x) - x (nonexpansive)."""
    xv = as_point(x, A.dim)
    return 2.0 * A.resolvent_map(xv) - xv


def minty_forward(A: MonotoneOperator, x) -> GraphPoint:
    """Parametrize the graph of A: x -> (J_A x, x - J_A x)."""
    xv = as_point(x, A.dim)
    p = A.resolvent_map(xv)
    return GraphPoint(p, xv - p)


def minty_inverse(g: GraphPoint) -> np.ndarray:
    """Inverse parametrization: (point, normal) -> point + normal."""
    return g.point + g.normal


# ---------------------------------------------------------------------------
# constructors


def normal_cone(S: ConvexSet, label: str = "") -> MonotoneOperator:
    """Normal cone operator of a closed convex set; its resolvent is the projector."""
    return MonotoneOperator(
        resolvent_map=S.project,
        dim=S.dim,
        is_linear_relation=is_linear_subspace(S),
        is_paramonotone=True,
        is_subdifferential=True,
        label=label or f"normal_cone({type(S).__name__})",
    )


def scaled_id_plus_normal_cone(lam: float, C: ConvexSet, label: str = "") -> MonotoneOperator:
    """The operator lam*Id + N_C for an affine set C; resolvent x -> P_C(x/(1+lam)).

    The formula uses that normal cones of affine sets are invariant under
    positive scaling, so (Id + lam*Id + N_C)^(-1) collapses to a projection of
    the shrunk argument.
    """
    if lam <= 0:
        raise ValueError("lam must be positive")
    if not is_affine(C):
        raise TypeError("C must be an affine subspace (or single point)")
    shrink = 1.0 / (1.0 + lam)

    def res(x: np.ndarray) -> np.ndarray:
        return C.project(shrink * x)

    return MonotoneOperator(
        resolvent_map=res,
        dim=C.dim,
        is_linear_relation=is_linear_subspace(C),
        is_paramonotone=True,
        is_subdifferential=True,
        label=label or f"{lam}*id+normal_cone",
    )


def rotator(label: str = "rotator") -> MonotoneOperator:
    """Quarter-turn rotation of the plane as a (skew, non-paramonotone) operator.

    Forward map (x1, x2) -> (-x2, x1); resolvent (x1, x2) -> ((x1+x2)/2, (x2-x1)/2).
    """

    def res(x: np.ndarray) -> np.ndarray:
        return np.array([0.5 * (x[0] + x[1]), 0.5 * (-x[0] + x[1])])

    return MonotoneOperator(
        resolvent_map=res,
        dim=2,
        is_linear_relation=True,
        is_paramonotone=False,
        is_subdifferential=False,
        label=label,
    )


def rotate_quarter(x) -> np.ndarray:
    """The rotator's forward map (x1, x2) -> (-x2, x1)."""
    xv = as_point(x, 2)
    return np.array([-xv[1], xv[0]])


def projector_operator(U: AffineSubspace, label: str = "") -> MonotoneOperator:
    """The projector P_U (U a linear subspace) viewed as a monotone operator.

    Its resolvent is (Id + P_U)^(-1) = (Id + P_complement)/2.
    """
    if not isinstance(U, AffineSubspace) or not U.is_linear:
        raise TypeError("U must be a linear subspace")

    def res(x: np.ndarray) -> np.ndarray:
        return 0.5 * (x + (x - U.project(x)))

    return MonotoneOperator(
        resolvent_map=res,
        dim=U.dim,
        is_linear_relation=True,
        is_paramonotone=True,
        is_subdifferential=True,
        label=label or "projector_operator",
    )


def piecewise_linear_1d(
    breaks: Sequence[tuple[float, float, float]], label: str = ""
) -> MonotoneOperator:
    """Monotone piecewise-linear operator on R from (position, left/right slope) triples.

    The graph is the continuous nondecreasing curve anchored at value 0 on the
    first break position, with the given slopes on each side of each break.
    Interior slopes must agree across consecutive breaks (they describe the
    same segment). An infinite left slope on the first break or right slope on
    the last break encodes a vertical half-line there, i.e. a domain edge; so
    a single break with two infinite slopes is the normal cone of a point.
    The resolvent is evaluated by a closed-form segment scan and is
    nondecreasing and 1-Lipschitz.
    """
    if not breaks:
        raise ValueError("at least one break is required")
    pos = np.array([float(b[0]) for b in breaks])
    left = np.array([float(b[1]) for b in breaks])
    right = np.array([float(b[2]) for b in breaks])
    if np.any(np.diff(pos) <= 0):
        raise MonotonicityError("break positions must be strictly increasing")
    if np.any(left < 0) or np.any(right < 0) or np.any(np.isnan(left)) or np.any(np.isnan(right)):
        raise MonotonicityError("slopes must be nonnegative")
    m = len(breaks)
    interior_left = left[1:]
    interior_right = right[:-1]
    if m > 1 and (np.any(~np.isfinite(interior_right)) or np.any(~np.isfinite(interior_left))):
        raise MonotonicityError("infinite slopes are only allowed at the outermost breaks")
    if m > 1 and np.any(interior_right != interior_left):
        raise MonotonicityError("right slope of each break must match the left slope of the next")

    seg_slopes = right[:-1]  # slope between break i and i+1
    values = np.concatenate(([0.0], np.cumsum(seg_slopes * np.diff(pos))))
    w = pos + values  # knot inputs of Id + A, strictly increasing
    left_slope = left[0]
    right_slope = right[-1]
    vertical_at_singleton = m == 1 and math.isinf(left_slope) and math.isinf(right_slope)

    def res(x: np.ndarray) -> np.ndarray:
        t = float(x[0])
        if vertical_at_singleton:
            return np.array([pos[0]])
        if t <= w[0]:
            if math.isinf(left_slope):
                return np.array([pos[0]])
            return np.array([pos[0] + (t - w[0]) / (1.0 + left_slope)])
        if t >= w[-1]:
            if math.isinf(right_slope):
                return np.array([pos[-1]])
            return np.array([pos[-1] + (t - w[-1]) / (1.0 + right_slope)])
        i = int(np.searchsorted(w, t, side="right")) - 1
        return np.array([pos[i] + (t - w[i]) / (1.0 + seg_slopes[i])])

    if m == 1:
        linear = (math.isinf(left_slope) and math.isinf(right_slope) and pos[0] == 0.0) or (
            left_slope == right_slope and (pos[0] == 0.0 or left_slope == 0.0)
        )
    else:
        linear = False

    return MonotoneOperator(
        resolvent_map=res,
        dim=1,
        is_linear_relation=linear,
        is_paramonotone=True,
        is_subdifferential=True,
        label=label or "piecewise_linear_1d",
    )


# ---------------------------------------------------------------------------
# combinators


def inverse(A: MonotoneOperator) -> MonotoneOperator:
    """A^(-1); its resolvent is Id - J_A."""
    return MonotoneOperator(
        resolvent_map=lambda x: x - A.resolvent_map(x),
        dim=A.dim,
        is_linear_relation=A.is_linear_relation,
        is_paramonotone=A.is_paramonotone,
        is_subdifferential=A.is_subdifferential,
        label=f"inverse({A.label})",
    )


def dual_flip(B: MonotoneOperator) -> MonotoneOperator:
    """Conjugation by -Id (the 'flip' used to form the dual pair); J(x) = -J_B(-x)."""
    return MonotoneOperator(
        resolvent_map=lambda x: -B.resolvent_map(-x),
        dim=B.dim,
        is_linear_relation=B.is_linear_relation,
        is_paramonotone=B.is_paramonotone,
        is_subdifferential=B.is_subdifferential,
        label=f"dual_flip({B.label})",
    )


def outer_shift(A: MonotoneOperator, w) -> MonotoneOperator:
    """The operator x -> A(x) - w; resolvent x -> J_A(x + w)."""
    wv = as_point(w, A.dim)
    shifted_is_linear = A.is_linear_relation and not np.any(wv)
    return MonotoneOperator(
        resolvent_map=lambda x: A.resolvent_map(x + wv),
        dim=A.dim,
        is_linear_relation=shifted_is_linear,
        is_paramonotone=A.is_paramonotone,
        is_subdifferential=A.is_subdifferential,
        label=f"outer_shift({A.label})",
    )


def inner_shift(A: MonotoneOperator, w) -> MonotoneOperator:
    """The operator x -> A(x - w); resolvent x -> w + J_A(x - w)."""
    wv = as_point(w, A.dim)
    shifted_is_linear = A.is_linear_relation and not np.any(wv)
    return MonotoneOperator(
        resolvent_map=lambda x: wv + A.resolvent_map(x - wv),
        dim=A.dim,
        is_linear_relation=shifted_is_linear,
        is_paramonotone=A.is_paramonotone,
        is_subdifferential=A.is_subdifferential,
        label=f"inner_shift({A.label})",
    )


def product(A: MonotoneOperator, B: MonotoneOperator) -> MonotoneOperator:
    """Blockwise product operator on the direct sum of the two spaces."""
    da = A.dim

    def res(x: np.ndarray) -> np.ndarray:
        return np.concatenate([A.resolvent_map(x[:da]), B.resolvent_map(x[da:])])

    return MonotoneOperator(
        resolvent_map=res,
        dim=A.dim + B.dim,
        is_linear_relation=A.is_linear_relation and B.is_linear_relation,
        is_paramonotone=A.is_paramonotone and B.is_paramonotone,
        is_subdifferential=A.is_subdifferential and B.is_subdifferential,
        label=f"product({A.label}, {B.label})",
    )


def zero_operator(dim: int) -> MonotoneOperator:
    """The zero map (resolvent = Id); the neutral element for sums."""
    return MonotoneOperator(
        resolvent_map=lambda x: x.copy(),
        dim=dim,
        is_linear_relation=True,
        is_paramonotone=True,
        is_subdifferential=True,
        label="zero",
    )


def identity_operator(dim: int) -> MonotoneOperator:
    """The identity map (resolvent = Id/2)."""
    return MonotoneOperator(
        resolvent_map=lambda x: 0.5 * x,
        dim=dim,
        is_linear_relation=True,
        is_paramonotone=True,
        is_subdifferential=True,
        label="identity",
    )
