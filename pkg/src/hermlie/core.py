"""Domain types for real and complex presentations of Hermitian Lie algebras.

A real presentation is a structure-constant tensor ``f`` on a 2n-dimensional
real vector space together with a complex structure ``J`` and a compatible
inner product ``g``.  A complex presentation stores the tensors

    C[j, i, k] = C^j_ik = phi_j([e_i, e_k])
    D[j, i, k] = D^j_ik = conj(phi_i)([conj(e_j), e_k])

relative to a unitary (1,0)-frame ``e``, equivalently

    [e_i, e_j] = sum_k C^k_ij e_k
    [e_i, conj(e_j)] = sum_k ( conj(D^i_kj) e_k - D^j_ki conj(e_k) ).

Note the unusual placement of the superscript of D: it labels the conjugated
bracket slot.  All index storage is 0-based; reports render 1-based.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import (
    FlagNotJInvariant,
    FrameNotUnitary,
    MetricNotSPD,
    NotUnitary,
    TypeMismatch,
    ValidationError,
)
from .utils import DEFAULT_TOL, containment_residual, sup

_EXACT = 1e-12  # slack for invariants that hold by construction


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.array(a)
    a.setflags(write=False)
    return a


@dataclass
class RealLieAlgebra:
    """A real anticommutative algebra of even dimension 2n.

    ``f[c, a, b]`` is the coefficient of basis vector c in the bracket of
    basis vectors a and b.  Antisymmetry in (a, b) is enforced here; the
    Jacobi identity is checked by :func:`hermlie.checks.jacobi_defect`, not
    assumed.
    """

    dim: int
    basis_labels: list
    f: np.ndarray

    def __post_init__(self):
        if self.dim <= 0 or self.dim % 2 != 0:
            raise ValidationError(f"dim must be a positive even integer, got {self.dim}", "dim")
        if len(self.basis_labels) != self.dim:
            raise ValidationError(
                f"{len(self.basis_labels)} labels for dimension {self.dim}", "basis_labels"
            )
        f = np.asarray(self.f, dtype=float)
        if f.shape != (self.dim,) * 3:
            raise TypeMismatch(f"f has shape {f.shape}, expected {(self.dim,) * 3}")
        if sup(f + f.transpose(0, 2, 1)) > _EXACT:
            raise ValidationError("structure constants are not antisymmetric in (a, b)", "f")
        self.f = _readonly(f)

    @property
    def n(self) -> int:
        return self.dim // 2

    def bracket(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        """Coordinate bracket, bilinear over complex scalars."""
        return np.einsum("cab,a,b->c", self.f, u, v)


@dataclass
class HermitianStructure:
    """An almost complex structure J and a J-compatible inner product g."""

    J: np.ndarray
    g: np.ndarray
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        J = np.asarray(self.J, dtype=float)
        g = np.asarray(self.g, dtype=float)
        if J.ndim != 2 or J.shape[0] != J.shape[1] or J.shape != g.shape:
            raise TypeMismatch(f"J shape {J.shape} and g shape {g.shape} must match and be square")
        dim = J.shape[0]
        if sup(J @ J + np.eye(dim)) > self.tol:
            raise ValidationError("J*J differs from -identity", "J")
        if sup(g - g.T) > self.tol:
            raise ValidationError("metric is not symmetric", "g")
        try:
            np.linalg.cholesky(g)
        except np.linalg.LinAlgError:
            raise MetricNotSPD("metric is not positive definite") from None
        if sup(J.T @ g @ J - g) > self.tol:
            raise ValidationError("metric is not J-compatible (J^T g J != g)", "g")
        self.J = _readonly(J)
        self.g = _readonly(g)

    @property
    def dim(self) -> int:
        return self.J.shape[0]


@dataclass
class Frame:
    """A basis of the (1,0)-space, stored as a complex 2n x n matrix.

    Column i holds the real-basis coordinates of e_i = (x - i Jx)/sqrt(2).
    Unitarity is relative to a metric and is checked by the operations that
    need it, see :func:`frame_residuals`.
    """

    E: np.ndarray

    def __post_init__(self):
        E = np.asarray(self.E, dtype=complex)
        if E.ndim != 2 or E.shape[0] != 2 * E.shape[1]:
            raise TypeMismatch(f"frame matrix has shape {E.shape}, expected (2n, n)")
        self.E = _readonly(E)

    @property
    def n(self) -> int:
        return self.E.shape[1]


@dataclass
class ComplexPresentation:
    """Structure constants C, D of a Hermitian Lie algebra in a unitary frame."""

    n: int
    C: np.ndarray
    D: np.ndarray
    frame: Optional[Frame] = None
    tolerance: float = DEFAULT_TOL

    def __post_init__(self):
        C = np.asarray(self.C, dtype=complex)
        D = np.asarray(self.D, dtype=complex)
        shape = (self.n,) * 3
        if C.shape != shape or D.shape != shape:
            raise TypeMismatch(f"C shape {C.shape}, D shape {D.shape}, expected {shape}")
        if sup(C + C.transpose(0, 2, 1)) > _EXACT:
            raise ValidationError("C is not antisymmetric in its subscript pair", "C")
        self.C = _readonly(C)
        self.D = _readonly(D)


@dataclass
class TorsionTensor:
    """Chern torsion components T[j, i, k] = T^j_ik, antisymmetric in (i, k)."""

    T: np.ndarray

    def __post_init__(self):
        T = np.asarray(self.T, dtype=complex)
        if T.ndim != 3 or len(set(T.shape)) != 1:
            raise TypeMismatch(f"torsion tensor has shape {T.shape}")
        self.T = _readonly(T)

    @property
    def n(self) -> int:
        return self.T.shape[0]

    def antisymmetry_residual(self) -> float:
        return sup(self.T + self.T.transpose(0, 2, 1))


@dataclass
class CurvatureTensor:
    """Chern curvature components R[i, j, k, l] = R_{i jbar k lbar}."""

    R: np.ndarray

    def __post_init__(self):
        R = np.asarray(self.R, dtype=complex)
        if R.ndim != 4 or len(set(R.shape)) != 1:
            raise TypeMismatch(f"curvature tensor has shape {R.shape}")
        self.R = _readonly(R)

    @property
    def n(self) -> int:
        return self.R.shape[0]

    def pair_symmetry_residual(self) -> float:
        """Residual of R_{i jbar k lbar} = conj(R_{j ibar l kbar})."""
        return sup(self.R - np.conj(self.R.transpose(1, 0, 3, 2)))


# ---------------------------------------------------------------------------
# frame machinery
# ---------------------------------------------------------------------------

def frame_residuals(h: HermitianStructure, frame: Frame) -> tuple[float, float]:
    """(unitarity, type-(1,0)) residuals of ``frame`` for the structure ``h``.

    Unitarity means <e_i, conj(e_j)> = delta_ij under the bilinear extension
    of g; the type condition means J e_i = i e_i.
    """
    E = frame.E
    gram = E.T @ h.g @ np.conj(E)
    unit = sup(gram - np.eye(frame.n))
    typ = sup(h.J @ E - 1j * E)
    return unit, typ


def build_unitary_frame(
    h: HermitianStructure,
    flag: Optional[Sequence[np.ndarray]] = None,
    tol: float = DEFAULT_TOL,
) -> Frame:
    """Unitary frame via J-compatible Gram-Schmidt.

    Parameters
    ----------
    h : HermitianStructure
        Validated complex structure and metric on a 2n-dimensional space.
    flag : sequence of arrays, optional
        Ordered J-invariant subspaces (columns span each member).  The
        leading frame vectors are chosen inside the flag members in order,
        so the first dim/2 columns span the (1,0)-part of each member.
    tol : float
        Tolerance for the J-invariance test on flag members.

    Returns
    -------
    Frame
        Columns e_i = (x_i - i J x_i)/sqrt(2) with {x_i, J x_i} g-orthonormal.
    """
    dim = h.dim
    n = dim // 2
    g = h.g
    J = h.J

    def inner(u, v):
        return u @ g @ v

    chosen: list[np.ndarray] = []  # real g-orthonormal vectors, J-closed in pairs

    def admit(candidates):
        for v in candidates:
            if len(chosen) >= dim:
                return
            w = np.asarray(v, dtype=float)
            for _ in range(2):
                for b in chosen:
                    w = w - inner(b, w) * b
            nrm = np.sqrt(max(inner(w, w), 0.0))
            if nrm <= 1e-10:
                continue
            x = w / nrm
            chosen.append(x)
            chosen.append(J @ x)

    for k, member in enumerate(flag or []):
        m = np.atleast_2d(np.asarray(member, dtype=float))
        if m.shape[0] != dim:
            raise TypeMismatch(f"flag member {k} lives in dimension {m.shape[0]}, expected {dim}")
        if containment_residual(J @ m, m) > tol:
            raise FlagNotJInvariant(f"flag member {k} is not J-invariant")
        admit(m.T)
    admit(np.eye(dim))

    if len(chosen) != dim:
        raise ValidationError("Gram-Schmidt failed to produce a full basis")
    xs = chosen[0::2]
    E = np.stack([(x - 1j * (J @ x)) / np.sqrt(2.0) for x in xs], axis=1)
    return Frame(E)


def complexify(
    alg: RealLieAlgebra,
    h: HermitianStructure,
    frame: Frame,
    tol: float = DEFAULT_TOL,
) -> ComplexPresentation:
    """Structure constants C, D of (alg, h) relative to a unitary frame.

    Raises
    ------
    TypeMismatch
        If the dimensions of ``alg``, ``h`` and ``frame`` disagree.
    FrameNotUnitary
        If the frame fails unitarity or the type-(1,0) condition beyond
        ``tol``.
    """
    if h.dim != alg.dim or frame.E.shape[0] != alg.dim:
        raise TypeMismatch(
            f"algebra dim {alg.dim}, structure dim {h.dim}, frame rows {frame.E.shape[0]}"
        )
    unit, typ = frame_residuals(h, frame)
    if max(unit, typ) > tol:
        raise FrameNotUnitary(f"unitarity residual {unit:.3g}, type-(1,0) residual {typ:.3g}")

    E = frame.E
    g = h.g
    Ebar = np.conj(E)
    # brackets of frame vectors, coordinates in the real basis
    Wee = np.einsum("cab,ai,bj->cij", alg.f, E, E)       # [e_i, e_j]
    Web = np.einsum("cab,ai,bj->cij", alg.f, E, Ebar)    # [e_i, conj(e_j)]
    # <w, conj(e_k)> extracts the e_k coefficient for a unitary frame
    C = np.einsum("cij,cd,dk->kij", Wee, g, Ebar)
    P = np.einsum("cij,cd,dk->kij", Web, g, Ebar)        # e-part of [e_i, conj(e_j)]
    D = np.conj(P.transpose(1, 0, 2))                    # conj(D^i_kj) = P[k, i, j]
    C = 0.5 * (C - C.transpose(0, 2, 1))  # strip floating asymmetry
    return ComplexPresentation(frame.n, C, D, frame, tolerance=tol)


def complex_bracket_tensor(pres: ComplexPresentation) -> np.ndarray:
    """Bracket tensor over the basis (e_1..e_n, conj(e_1)..conj(e_n)).

    ``B[w, u, v]`` is the coefficient of basis vector w in [u, v]; the
    conjugate blocks are filled so brackets of conjugates are conjugates of
    brackets.
    """
    n = pres.n
    dim = 2 * n
    C, D = pres.C, pres.D
    B = np.zeros((dim, dim, dim), dtype=complex)
    B[:n, :n, :n] = C
    B[n:, n:, n:] = np.conj(C)
    B[:n, :n, n:] = np.conj(D.transpose(1, 0, 2))            # e-part of [e_i, conj(e_j)]
    B[n:, :n, n:] = -D.transpose(1, 2, 0)                    # conj(e)-part: -D^j_ki
    B[:n, n:, :n] = -np.conj(D.transpose(1, 2, 0))           # [conj(e_i), e_j] = -[e_j, conj(e_i)]
    B[n:, n:, :n] = D.transpose(1, 0, 2)
    return B


def realify(pres: ComplexPresentation) -> tuple[RealLieAlgebra, HermitianStructure, Frame]:
    """Reconstruct a real algebra whose complexification reproduces C, D.

    The real basis is the interleaved family x_1, y_1, ..., x_n, y_n with
    x_i = (e_i + conj(e_i))/sqrt(2) and y_i = J x_i, the metric is the
    identity and J is the standard block rotation on each (x_i, y_i) pair.
    Brackets of conjugates are conjugates of brackets by construction, so
    the output is a genuine real algebra for any antisymmetric C and any D.
    """
    n = pres.n
    dim = 2 * n
    B = complex_bracket_tensor(pres)

    # columns: complex-basis coordinates of the real basis vectors
    T = np.zeros((dim, dim), dtype=complex)
    s = 1.0 / np.sqrt(2.0)
    for i in range(n):
        T[i, 2 * i] = s
        T[n + i, 2 * i] = s
        T[i, 2 * i + 1] = 1j * s
        T[n + i, 2 * i + 1] = -1j * s
    Tinv = T.conj().T  # T is unitary

    f_complex = np.einsum("cw,wuv,ua,vb->cab", Tinv, B, T, T)
    if sup(f_complex.imag) > 1e-10:
        raise ValidationError("reconstructed brackets are not real")
    f = f_complex.real
    f = 0.5 * (f - f.transpose(0, 2, 1))

    J = np.zeros((dim, dim))
    for i in range(n):
        J[2 * i + 1, 2 * i] = 1.0
        J[2 * i, 2 * i + 1] = -1.0
    labels = []
    for i in range(n):
        labels += [f"X{i + 1}", f"Y{i + 1}"]
    alg = RealLieAlgebra(dim, labels, f)
    h = HermitianStructure(J, np.eye(dim))

    E = np.zeros((dim, n), dtype=complex)
    for i in range(n):
        E[2 * i, i] = s
        E[2 * i + 1, i] = -1j * s
    return alg, h, Frame(E)


def change_frame(pres: ComplexPresentation, U: np.ndarray, tol: float = DEFAULT_TOL) -> ComplexPresentation:
    """Presentation of the same algebra in the frame e'_i = sum_j U[i, j] e_j.

    Raises ``NotUnitary`` if U fails U^H U = I beyond ``tol``.
    """
    U = np.asarray(U, dtype=complex)
    if U.shape != (pres.n, pres.n):
        raise TypeMismatch(f"U has shape {U.shape}, expected {(pres.n, pres.n)}")
    if sup(U.conj().T @ U - np.eye(pres.n)) > tol:
        raise NotUnitary("frame change matrix is not unitary")
    Ub = np.conj(U)
    C = np.einsum("ia,kb,jc,cab->jik", U, U, Ub, pres.C)
    D = np.einsum("ia,jb,kc,bac->jik", U, Ub, U, pres.D)
    C = 0.5 * (C - C.transpose(0, 2, 1))
    frame = Frame(pres.frame.E @ U.T) if pres.frame is not None else None
    return ComplexPresentation(pres.n, C, D, frame, tolerance=pres.tolerance)


def standard_presentation(
    alg: RealLieAlgebra,
    h: HermitianStructure,
    flag: Optional[Sequence[np.ndarray]] = None,
    tol: float = DEFAULT_TOL,
) -> ComplexPresentation:
    """Convenience: build a unitary frame and complexify in one step."""
    return complexify(alg, h, build_unitary_frame(h, flag, tol), tol)
