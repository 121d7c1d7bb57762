"""Chern torsion, curvature, holomorphic sectional curvature and the
constant-curvature criterion, plus an independent curvature path through the
connection matrix and exterior calculus.

Under a unitary frame the torsion and curvature of the Chern connection are

    T^j_ik = -C^j_ik - D^j_ik + D^j_ki
    R_{i jbar k lbar} = sum_s ( D^s_ki conj(D^s_lj) - D^l_si conj(D^k_sj)
                                - D^j_si conj(D^k_ls) - conj(D^i_sj) D^l_ks ).

The second path builds theta_ij = sum_k ( D^j_ik phi_k - conj(D^i_jk)
conj(phi_k) ), forms Theta = d theta - theta ^ theta, and reads the
coefficient of phi_i ^ conj(phi_j) in Theta_kl as R_{i jbar k lbar}; the
slot and sign convention is pinned by the Kodaira-Thurston fixture.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import ComplexPresentation, CurvatureTensor, TorsionTensor
from .errors import ZeroVector
from .forms import LeftInvariantForm, exterior_d
from .utils import DEFAULT_TOL, sup


def chern_torsion(pres: ComplexPresentation) -> TorsionTensor:
    """Chern torsion components under the presentation's unitary frame."""
    T = -pres.C - pres.D + pres.D.transpose(0, 2, 1)
    return TorsionTensor(T)


def chern_curvature(pres: ComplexPresentation) -> CurvatureTensor:
    """Chern curvature components R_{i jbar k lbar} from the D tensor."""
    D = pres.D
    Dc = np.conj(D)
    R = (
        np.einsum("ski,slj->ijkl", D, Dc)
        - np.einsum("lsi,ksj->ijkl", D, Dc)
        - np.einsum("jsi,kls->ijkl", D, Dc)
        - np.einsum("isj,lks->ijkl", Dc, D)
    )
    return CurvatureTensor(R)


def holomorphic_sectional(R: CurvatureTensor, v: np.ndarray, tol: float = DEFAULT_TOL) -> float:
    """H(v) = R(v, vbar, v, vbar) / |v|^4 for a type-(1,0) direction v.

    The value is real up to floating error as a consequence of the Hermitian
    pair symmetry of R.
    """
    v = np.asarray(v, dtype=complex)
    norm2 = float(np.real(np.vdot(v, v)))
    if norm2 <= 1e-300:
        raise ZeroVector("holomorphic sectional curvature needs a nonzero direction")
    val = np.einsum("ijkl,i,j,k,l->", R.R, v, np.conj(v), v, np.conj(v)) / norm2**2
    return float(np.real(val))


def symmetrize(R: CurvatureTensor) -> CurvatureTensor:
    """Average of the four position swaps; symmetric under i<->k and j<->l."""
    a = R.R
    return CurvatureTensor(
        0.25 * (a + a.transpose(2, 1, 0, 3) + a.transpose(0, 3, 2, 1) + a.transpose(2, 3, 0, 1))
    )


def constant_H_test(R: CurvatureTensor, tol: float = DEFAULT_TOL) -> tuple[bool, float]:
    """Decide whether H is constant, and the candidate constant c.

    c is read off the (1,1,1,1) slot of the symmetrization; H is constant
    with value c iff the symmetrized tensor equals (c/2)(g g + g g) built
    from the unitary-frame metric, which is what the residual tests.
    """
    rhat = symmetrize(R).R
    n = R.n
    c = float(np.real(rhat[0, 0, 0, 0]))
    eye = np.eye(n)
    target = 0.5 * c * (np.einsum("ij,kl->ijkl", eye, eye) + np.einsum("il,kj->ijkl", eye, eye))
    return sup(rhat - target) <= tol, c


@dataclass
class ConnectionMatrix:
    """Chern connection matrix theta as an n x n array of 1-forms."""

    theta: list

    @property
    def n(self) -> int:
        return len(self.theta)


def connection_matrix(pres: ComplexPresentation) -> ConnectionMatrix:
    """theta_ij = sum_k ( D^j_ik phi_k - conj(D^i_jk) conj(phi_k) )."""
    n = pres.n
    theta = []
    for i in range(n):
        row = []
        for j in range(n):
            terms = {}
            for k in range(n):
                a = pres.D[j, i, k]
                if a != 0:
                    terms[(k,)] = terms.get((k,), 0.0) + a
                b = -np.conj(pres.D[i, j, k])
                if b != 0:
                    terms[(n + k,)] = terms.get((n + k,), 0.0) + b
            row.append(LeftInvariantForm(n, 1, terms))
        theta.append(row)
    return ConnectionMatrix(theta)


def curvature_matrix(pres: ComplexPresentation) -> list:
    """Theta = d theta - theta ^ theta as an n x n array of 2-forms."""
    n = pres.n
    theta = connection_matrix(pres).theta
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = exterior_d(pres, theta[i][j])
            for k in range(n):
                acc = acc - theta[i][k].wedge(theta[k][j])
            row.append(acc)
        out.append(row)
    return out


def curvature_via_forms(pres: ComplexPresentation) -> CurvatureTensor:
    """Curvature through Theta = d theta - theta ^ theta.

    Extraction convention: R_{i jbar k lbar} is the coefficient of
    phi_i ^ conj(phi_j) in Theta_kl.
    """
    n = pres.n
    Theta = curvature_matrix(pres)
    R = np.zeros((n, n, n, n), dtype=complex)
    for k in range(n):
        for l in range(n):
            for i in range(n):
                for j in range(n):
                    R[i, j, k, l] = Theta[k][l].coefficient((i, n + j))
    return CurvatureTensor(R)


def curvature_type_residual(pres: ComplexPresentation) -> float:
    """Sup of the (2,0) and (0,2) parts of Theta; zero for valid algebras."""
    n = pres.n
    worst = 0.0
    for row in curvature_matrix(pres):
        for form in row:
            for idx, c in form.terms.items():
                a, b = idx
                mixed = (a < n) != (b < n)
                if not mixed:
                    worst = max(worst, abs(c))
    return worst
