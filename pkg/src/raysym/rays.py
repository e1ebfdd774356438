"""Complex vectors and rays of C^n.

A ray is a one-dimensional subspace of C^n, stored here as a canonical unit
representative: the vector is normalized and rotated so that its first
component of significant modulus is real and positive.  With that convention
two vectors generate the same ray exactly when their canonical representatives
agree componentwise.

The transition probability between two rays r, s with generators e, f is

    u(r, s) = <e,f><f,e> / (<e,e><f,f>)

which is independent of the choice of generators and always lies in [0, 1].
Orthogonality of rays means u(r, s) = 0 up to tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, ZeroVector

#: Norm below which a vector is considered zero and cannot generate a ray.
ZERO_NORM_TOL = 1e-12

#: Modulus threshold for picking the phase-pivot component of a unit vector.
PIVOT_TOL = 1e-9


@dataclass(frozen=True)
class Tolerances:
    """Numerical tolerances used across the reconstruction pipeline.

    orth_tol bounds transition probabilities that still count as orthogonal,
    recon_tol bounds reconstruction residuals (scales, classification, gauge),
    phase_tol bounds the imaginary part left after phase fixing.
    """

    orth_tol: float = 1e-9
    recon_tol: float = 1e-8
    phase_tol: float = 1e-9

    def __post_init__(self):
        for name in ("orth_tol", "recon_tol", "phase_tol"):
            value = getattr(self, name)
            if not 0.0 < value < 1e-2:
                raise ValueError(f"{name} must lie strictly between 0 and 1e-2, got {value}")


DEFAULT_TOLERANCES = Tolerances()


class Ray:
    """Canonical unit representative of a one-dimensional subspace of C^n.

    Construct rays with :func:`canonical_ray`; the constructor only checks
    that the supplied representative already satisfies the canonical form.
    """

    __slots__ = ("_rep",)

    def __init__(self, rep: np.ndarray):
        rep = np.asarray(rep, dtype=np.complex128)
        if rep.ndim != 1 or rep.size == 0:
            raise ValueError("ray representative must be a nonempty 1-d vector")
        norm = np.linalg.norm(rep)
        if abs(norm - 1.0) > 1e-10:
            raise ValueError(f"ray representative is not unit norm (norm {norm!r})")
        pivot = _pivot_index(rep)
        entry = rep[pivot]
        if not (entry.real > 0.0 and abs(entry.imag) <= PIVOT_TOL):
            raise ValueError("ray representative does not satisfy the canonical phase convention")
        rep = rep.copy()
        rep.flags.writeable = False
        self._rep = rep

    @property
    def rep(self) -> np.ndarray:
        """The canonical representative (read-only array)."""
        return self._rep

    @property
    def dim(self) -> int:
        return self._rep.shape[0]

    def almost_equals(self, other: "Ray", tol: float = 1e-12) -> bool:
        """Componentwise agreement of the canonical representatives."""
        if self.dim != other.dim:
            return False
        return bool(np.max(np.abs(self._rep - other._rep)) <= tol)

    def __repr__(self) -> str:
        return f"Ray({np.array2string(self._rep, precision=6, suppress_small=True)})"


def _pivot_index(unit_rep: np.ndarray) -> int:
    """First index whose modulus exceeds PIVOT_TOL.

    A unit vector of dimension n has a component of modulus >= 1/sqrt(n), so
    the scan cannot fail for any representable dimension.
    """
    moduli = np.abs(unit_rep)
    above = np.nonzero(moduli > PIVOT_TOL)[0]
    if above.size == 0:
        raise ZeroVector("no component of the unit representative exceeds the pivot threshold")
    return int(above[0])


def canonical_ray(v: np.ndarray) -> Ray:
    """Canonicalize a nonzero vector into the ray it generates.

    Normalizes to unit norm, then rotates the global phase so the first
    component of modulus > PIVOT_TOL becomes real and positive.  The result is
    invariant (within 1e-12) under scaling of ``v`` by any nonzero complex
    number, and the map is idempotent at the same tolerance.

    Raises ZeroVector when ||v|| <= 1e-12.
    """
    v = np.asarray(v, dtype=np.complex128)
    if v.ndim != 1 or v.size == 0:
        raise ValueError("expected a nonempty 1-d vector")
    if not np.all(np.isfinite(v)):
        raise ValueError("vector components must be finite")
    norm = np.linalg.norm(v)
    if norm <= ZERO_NORM_TOL:
        raise ZeroVector(f"cannot canonicalize a vector of norm {norm!r}")
    rep = v / norm
    pivot = _pivot_index(rep)
    entry = rep[pivot]
    rep = rep * (entry.conjugate() / abs(entry))
    # Exact by construction; removes the rounding-level imaginary residue.
    rep[pivot] = abs(rep[pivot])
    return Ray(rep)


def ray_function(r: Ray, s: Ray) -> float:
    """Transition probability u(r, s) between two rays.

    Symmetric in its arguments, independent of the representative choice, and
    clipped into [0, 1] to absorb last-bit rounding of the Cauchy-Schwarz
    bound.
    """
    if r.dim != s.dim:
        raise DimensionMismatch(f"rays have dimensions {r.dim} and {s.dim}")
    ip = np.vdot(r.rep, s.rep)
    num = float(ip.real) * float(ip.real) + float(ip.imag) * float(ip.imag)
    den = float(np.vdot(r.rep, r.rep).real) * float(np.vdot(s.rep, s.rep).real)
    return min(max(num / den, 0.0), 1.0)


def is_orthogonal(r: Ray, s: Ray, tol: Tolerances = DEFAULT_TOLERANCES) -> bool:
    """True when the transition probability is below tol.orth_tol."""
    return ray_function(r, s) <= tol.orth_tol


def random_state(dim: int, seed: int) -> np.ndarray:
    """Vector of i.i.d. standard complex normal components; deterministic per seed.

    After canonicalization these generate Haar-uniform random rays.
    """
    if dim < 1:
        raise ValueError(f"dim must be at least 1, got {dim}")
    rng = np.random.default_rng(seed)
    return sample_state(dim, rng)


def sample_state(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Draw one standard-complex-normal vector from an existing generator."""
    return (rng.standard_normal(dim) + 1j * rng.standard_normal(dim)) / np.sqrt(2.0)


def sample_ray(dim: int, rng: np.random.Generator) -> Ray:
    """Haar-uniform random ray."""
    while True:
        v = sample_state(dim, rng)
        if np.linalg.norm(v) > ZERO_NORM_TOL:
            return canonical_ray(v)


def sample_orthogonal_pair(dim: int, rng: np.random.Generator) -> tuple[Ray, Ray]:
    """A random ray and a random ray of its orthogonal complement.

    The second ray is obtained by Gram-Schmidt projection of a fresh random
    vector against the first; degenerate draws are rejected.  Requires
    dim >= 2.
    """
    if dim < 2:
        raise ValueError("orthogonal pairs need dimension at least 2")
    r = sample_ray(dim, rng)
    while True:
        t = sample_state(dim, rng)
        t = t - np.vdot(r.rep, t) * r.rep
        if np.linalg.norm(t) > 1e-6:
            return r, canonical_ray(t)
