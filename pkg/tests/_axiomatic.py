"""Independent curvature oracle: solve for the unique connection on the real
algebra with nabla g = 0, nabla J = 0 and vanishing (1,1)-torsion, then
assemble R(e_i, conj(e_j), e_k, conj(e_l)) directly from its definition.

This path never touches the C/D tensor formulas it is used to check.
"""

import numpy as np

from hermlie.core import Frame, HermitianStructure, RealLieAlgebra


def chern_connection_coefficients(alg: RealLieAlgebra, h: HermitianStructure) -> np.ndarray:
    """G[a, b, c] with nabla_{eps_a} eps_b = sum_c G[a, b, c] eps_c."""
    d = alg.dim
    N = d**3
    I = np.eye(d)
    g, J, f = h.g, h.J, alg.f

    m1 = np.einsum("ax,by,mc->abcxym", I, I, g) + np.einsum("ax,cy,bm->abcxym", I, I, g)
    m2 = np.einsum("ax,yb,cm->abcxym", I, J, I) - np.einsum("ax,by,cm->abcxym", I, I, J)
    m3 = (
        np.einsum("ax,by,cm->abcxym", I, I, I)
        - np.einsum("bx,ay,cm->abcxym", I, I, I)
        + np.einsum("xa,yb,cm->abcxym", J, J, I)
        - np.einsum("ya,xb,cm->abcxym", J, J, I)
    )
    A = np.concatenate(
        [m.reshape(N, N) for m in (m1, m2, m3)], axis=0
    )
    rhs3 = f.transpose(1, 2, 0) + np.einsum("pa,qb,cpq->abc", J, J, f)
    rhs = np.concatenate([np.zeros(2 * N), rhs3.reshape(N)])

    sol, *_ = np.linalg.lstsq(A, rhs, rcond=None)
    residual = np.max(np.abs(A @ sol - rhs))
    if residual > 1e-9:
        raise AssertionError(f"connection solve residual {residual:.3g}")
    return sol.reshape(d, d, d)


def curvature_axiomatic(alg: RealLieAlgebra, h: HermitianStructure, frame: Frame) -> np.ndarray:
    """R[i, j, k, l] = <R(e_i, conj(e_j)) e_k, conj(e_l)> from first principles."""
    G = chern_connection_coefficients(alg, h)
    E = frame.E
    Eb = np.conj(E)
    n = frame.n

    def nabla(direction: np.ndarray) -> np.ndarray:
        return np.einsum("abc,a->cb", G, direction)

    Ne = [nabla(E[:, i]) for i in range(n)]
    Nb = [nabla(Eb[:, j]) for j in range(n)]
    R = np.zeros((n, n, n, n), dtype=complex)
    for i in range(n):
        for j in range(n):
            xy = np.einsum("cab,a,b->c", alg.f, E[:, i], Eb[:, j])
            op = Ne[i] @ Nb[j] - Nb[j] @ Ne[i] - nabla(xy)
            vals = op @ E  # columns: R(e_i, conj(e_j)) e_k
            R[i, j] = (vals.T @ h.g @ Eb).reshape(n, n)
    return R
