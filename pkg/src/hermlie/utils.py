"""Small numeric helpers: sup norms, subspace arithmetic, random unitaries."""

from __future__ import annotations

import numpy as np

#: default absolute comparison tolerance for scalar identities
DEFAULT_TOL = 1e-9
#: default tolerance for structural predicates (admissibility, subspaces)
STRUCTURE_TOL = 1e-8
#: default tolerance for flatness / constant-curvature decisions
FLATNESS_TOL = 1e-9

#: relative singular-value threshold for rank decisions; brackets of unit
#: vectors stay O(1) in all catalog families, so this is scale-appropriate
RANK_RTOL = 1e-8


def sup(a) -> float:
    """Entrywise sup norm; 0.0 for empty arrays."""
    a = np.asarray(a)
    if a.size == 0:
        return 0.0
    return float(np.max(np.abs(a)))


def span_basis(vectors: np.ndarray, rtol: float = RANK_RTOL, floor: float = 0.0) -> np.ndarray:
    """Orthonormal basis (columns) of the column span of ``vectors``.

    Rank is decided by singular values above ``rtol * max(sigma_max, floor)``.
    ``floor`` anchors the threshold to the natural scale of the problem so
    that a matrix of pure floating noise has rank zero.
    """
    vectors = np.atleast_2d(np.asarray(vectors))
    if vectors.shape[1] == 0 or sup(vectors) == 0.0:
        return np.zeros((vectors.shape[0], 0), dtype=vectors.dtype)
    u, s, _ = np.linalg.svd(vectors, full_matrices=False)
    rank = int(np.sum(s > rtol * max(s[0], floor)))
    return u[:, :rank]


def containment_residual(a: np.ndarray, b: np.ndarray) -> float:
    """Sup norm of the part of span(a) sticking out of span(b).

    Both arguments are matrices whose columns span the subspaces; ``b`` need
    not be orthonormal.
    """
    a = np.atleast_2d(np.asarray(a))
    if a.shape[1] == 0:
        return 0.0
    q = span_basis(b)
    return sup(a - q @ (q.conj().T @ a))


def subspaces_equal_residual(a: np.ndarray, b: np.ndarray) -> float:
    """Symmetric containment residual; 0 iff the spans agree."""
    return max(containment_residual(a, b), containment_residual(b, a))


def subspace_dim(vectors: np.ndarray, rtol: float = RANK_RTOL) -> int:
    return span_basis(vectors, rtol).shape[1]


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-ish random unitary via QR of a complex Ginibre matrix."""
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(z)
    # fix phases so the factorization is unique and q is deterministic
    d = np.diagonal(r)
    q = q * (d / np.abs(d))
    return q


def gram_schmidt(vectors, inner, tol: float = 1e-12):
    """Orthonormalize ``vectors`` in order under the inner product ``inner``.

    Vectors that are (numerically) dependent on earlier ones are dropped.
    Runs two projection sweeps for stability.
    """
    basis = []
    for v in vectors:
        w = np.array(v, dtype=complex if np.iscomplexobj(v) else float)
        for _ in range(2):
            for b in basis:
                w = w - inner(b, w) * b
        nrm = np.sqrt(abs(inner(w, w)))
        if nrm > tol:
            basis.append(w / nrm)
    return basis
