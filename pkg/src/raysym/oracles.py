"""Ray-map oracles and the operators that induce them.

A ray-map oracle is a black-box map from rays of C^n to rays of C^m.  The
reconstruction pipeline only ever talks to this interface, so implementations
cannot leak phase or scale information.  Concrete oracles are induced by
matrices: a symmetry operator acts as x -> U x (linear) or x -> U conj(x)
(antilinear), and a general invertible matrix induces a ray map with no
preservation guarantees, used to exercise the hypothesis-violation
diagnostics.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DimensionMismatch, SingularMatrix
from .rays import (
    DEFAULT_TOLERANCES,
    Ray,
    Tolerances,
    canonical_ray,
    ray_function,
    sample_orthogonal_pair,
    sample_ray,
)

#: Condition number above which a matrix does not induce an invertible ray map.
MAX_CONDITION = 1e12

#: Unitarity defect accepted for operators tagged unitary-valid.
UNITARY_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class SymmetryOperator:
    """An n x n complex matrix plus an antiunitary flag.

    Acts on vectors as x -> U x, or x -> U conj(x) when antiunitary.  The
    matrix is stored read-only; the type itself does not require unitarity
    (diagnostic operators are first-class), see :meth:`is_unitary`.
    """

    matrix: np.ndarray
    antiunitary: bool = False

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=np.complex128)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
            raise ValueError(f"matrix must be square and nonempty, got shape {m.shape}")
        if not np.all(np.isfinite(m)):
            raise ValueError("matrix entries must be finite")
        m = m.copy()
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "antiunitary", bool(self.antiunitary))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def unitarity_defect(self) -> float:
        """Max-norm deviation of U^dagger U from the identity."""
        gram = self.matrix.conj().T @ self.matrix
        return float(np.max(np.abs(gram - np.eye(self.dim))))

    def is_unitary(self, tol: float = UNITARY_TOL) -> bool:
        return self.unitarity_defect() <= tol


class RayMapOracle:
    """Deterministic black-box map between ray sets.

    ``image_fn`` must be total on rays of dimension ``dim_in`` and return a
    canonical :class:`~raysym.rays.Ray` of dimension ``dim_out``.  Oracles
    carry no state, so concurrent image calls are safe.
    """

    __slots__ = ("dim_in", "dim_out", "_image_fn", "label")

    def __init__(
        self,
        dim_in: int,
        dim_out: int,
        image_fn: Callable[[Ray], Ray],
        label: str = "oracle",
    ):
        if dim_in < 1 or dim_out < 1:
            raise ValueError("oracle dimensions must be positive")
        self.dim_in = int(dim_in)
        self.dim_out = int(dim_out)
        self._image_fn = image_fn
        self.label = label

    def image(self, ray: Ray) -> Ray:
        """Image of a ray under the map."""
        if ray.dim != self.dim_in:
            raise DimensionMismatch(
                f"oracle expects rays of dimension {self.dim_in}, got {ray.dim}"
            )
        out = self._image_fn(ray)
        if out.dim != self.dim_out:
            raise DimensionMismatch(
                f"oracle produced a ray of dimension {out.dim}, declared {self.dim_out}"
            )
        return out

    def __repr__(self) -> str:
        return f"RayMapOracle({self.label}, {self.dim_in} -> {self.dim_out})"


@dataclass(frozen=True)
class PreservationReport:
    """Sampled evidence for the orthogonality and transition-probability hypotheses."""

    trials: int
    max_u_violation: float
    max_orth_violation: float
    passed: bool


def _matrix_oracle(matrix: np.ndarray, conjugate_first: bool, label: str) -> RayMapOracle:
    if not np.all(np.isfinite(matrix)):
        raise ValueError("matrix entries must be finite")
    cond = np.linalg.cond(matrix)
    if not np.isfinite(cond) or cond >= MAX_CONDITION:
        raise SingularMatrix(f"matrix condition number {cond:.3e} exceeds {MAX_CONDITION:.0e}")
    m = np.array(matrix, dtype=np.complex128)
    m.flags.writeable = False

    if conjugate_first:
        def image_fn(ray: Ray) -> Ray:
            return canonical_ray(m @ np.conj(ray.rep))
    else:
        def image_fn(ray: Ray) -> Ray:
            return canonical_ray(m @ ray.rep)

    return RayMapOracle(m.shape[0], m.shape[0], image_fn, label=label)


def induced_map(op: SymmetryOperator) -> RayMapOracle:
    """Ray map induced by a symmetry operator: ray(x) -> ray(U x) or ray(U conj(x))."""
    kind = "antilinear" if op.antiunitary else "linear"
    return _matrix_oracle(op.matrix, op.antiunitary, label=f"{kind}[dim={op.dim}]")


def general_induced_map(matrix: np.ndarray, conjugate_first: bool = False) -> RayMapOracle:
    """Ray map induced by an arbitrary invertible matrix; no preservation guarantees."""
    m = np.asarray(matrix, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"matrix must be square, got shape {m.shape}")
    return _matrix_oracle(m, conjugate_first, label=f"general[dim={m.shape[0]}]")


def check_orthogonality_preservation(
    oracle: RayMapOracle,
    trials: int,
    seed: int,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> PreservationReport:
    """Sample evidence that the oracle preserves orthogonality and u-values.

    Each trial draws one random orthogonal ray pair and records the transition
    probability of the images, and one generic random pair and records how far
    the image u-value drifts from the source u-value.  Both worst cases must
    stay below tol.orth_tol for the report to pass.
    """
    if trials < 1:
        raise ValueError(f"trials must be at least 1, got {trials}")
    rng = np.random.default_rng(seed)
    dim = oracle.dim_in
    max_orth = 0.0
    max_u = 0.0
    for _ in range(trials):
        r, s = sample_orthogonal_pair(dim, rng)
        max_orth = max(max_orth, ray_function(oracle.image(r), oracle.image(s)))
        a = sample_ray(dim, rng)
        b = sample_ray(dim, rng)
        drift = abs(ray_function(oracle.image(a), oracle.image(b)) - ray_function(a, b))
        max_u = max(max_u, drift)
    passed = max_orth <= tol.orth_tol and max_u <= tol.orth_tol
    return PreservationReport(
        trials=trials,
        max_u_violation=float(max_u),
        max_orth_violation=float(max_orth),
        passed=bool(passed),
    )


def random_unitary(dim: int, seed: int) -> np.ndarray:
    """Haar-distributed random unitary via QR of a complex Ginibre matrix.

    The R-diagonal phases are folded back into Q so the distribution is
    exactly Haar rather than QR-convention dependent.
    """
    if dim < 1:
        raise ValueError(f"dim must be at least 1, got {dim}")
    rng = np.random.default_rng(seed)
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))
