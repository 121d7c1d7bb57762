"""Constructors for the example families, the Kodaira-Thurston fixture, and
seeded randomized instances.

Every constructor returns data whose complexification reproduces displayed
structure constants verbatim, so regression tests can compare tensors
entrywise rather than up to isomorphism.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .checks import jacobi_defect
from .core import (
    ComplexPresentation,
    Frame,
    HermitianStructure,
    RealLieAlgebra,
    complex_bracket_tensor,
    realify,
)
from .errors import (
    DegenerateRow,
    JacobiViolation,
    ValidationError,
    ZeroParameter,
)
from .utils import random_unitary, sup

_S2 = np.sqrt(2.0)


def _set_bracket(f: np.ndarray, c: int, a: int, b: int, value: float) -> None:
    f[c, a, b] += value
    f[c, b, a] -= value


def heisenberg_example(lam) -> tuple[RealLieAlgebra, HermitianStructure, Frame]:
    """Almost-abelian family on basis X_1, Y_1, ..., X_r, Y_r, W, Z.

    With lambda_i = -(b_i + i a_i) != 0, the brackets are

        [X_i, Z] = sqrt(2) (a_i X_i + b_i Y_i)
        [Y_i, Z] = sqrt(2) (-b_i X_i + a_i Y_i)

    and J X_i = Y_i, J W = Z with the identity metric.  The sqrt(2) scale on
    the W, Z axes is chosen so that the frame e_i = (X_i - i Y_i)/sqrt(2),
    e_0 = (W - i Z)/sqrt(2) (listed last) reproduces the structure constants

        C^i_{i0} = -conj(lambda_i),   D^i_{i0} = lambda_i

    literally.  The commutator is span{X_i, Y_i}: J-invariant and abelian,
    so the family is 2-step solvable of pure type II, and the Chern
    curvature vanishes identically.
    """
    lam = np.asarray(lam, dtype=complex).ravel()
    r = lam.size
    if r == 0 or np.any(np.abs(lam) == 0.0):
        raise ZeroParameter("every lambda_i must be nonzero")
    a = -lam.imag
    b = -lam.real
    dim = 2 * r + 2
    f = np.zeros((dim, dim, dim))
    w_idx, z_idx = 2 * r, 2 * r + 1
    for i in range(r):
        xi, yi = 2 * i, 2 * i + 1
        _set_bracket(f, xi, xi, z_idx, _S2 * a[i])
        _set_bracket(f, yi, xi, z_idx, _S2 * b[i])
        _set_bracket(f, xi, yi, z_idx, -_S2 * b[i])
        _set_bracket(f, yi, yi, z_idx, _S2 * a[i])
    J = np.zeros((dim, dim))
    for i in range(r + 1):
        J[2 * i + 1, 2 * i] = 1.0
        J[2 * i, 2 * i + 1] = -1.0
    labels = []
    for i in range(r):
        labels += [f"X{i + 1}", f"Y{i + 1}"]
    labels += ["W", "Z"]
    alg = RealLieAlgebra(dim, labels, f)
    h = HermitianStructure(J, np.eye(dim))
    n = r + 1
    E = np.zeros((dim, n), dtype=complex)
    s = 1.0 / _S2
    for i in range(r):
        E[2 * i, i] = s
        E[2 * i + 1, i] = -1j * s
    E[w_idx, r] = s
    E[z_idx, r] = -1j * s
    return alg, h, Frame(E)


def complex_lie_instance(C, n: int, tol: float = 1e-10) -> ComplexPresentation:
    """Presentation of a complex Lie algebra: D = 0 and C its constants.

    C must satisfy the complex Jacobi identity (checked; ``JacobiViolation``
    otherwise).  Every curvature term carries a D factor, so any compatible
    metric is Chern flat.
    """
    C = np.asarray(C, dtype=complex)
    pres = ComplexPresentation(n, C, np.zeros((n, n, n), dtype=complex))
    jac = (
        np.einsum("rij,lrk->ijkl", C, C)
        + np.einsum("rjk,lri->ijkl", C, C)
        + np.einsum("rki,lrj->ijkl", C, C)
    )
    if sup(jac) > tol:
        raise JacobiViolation(
            f"complex structure constants violate the Jacobi identity by {sup(jac):.3g}",
            defect=sup(jac),
        )
    return pres


def pure_typeII_instance(
    x, y, u, v, r: int, n: int
) -> tuple[RealLieAlgebra, HermitianStructure, Frame]:
    """2-step solvable pure-type-II family on basis eps_1..eps_n, eps_1*..eps_n*.

    For 1 <= i <= r < alpha <= n the brackets are

        [eps_i,  eps_alpha ] =  x eps_i + y eps_i*
        [eps_i*, eps_alpha ] = -y eps_i + x eps_i*
        [eps_i,  eps_alpha*] =  v eps_i - u eps_i*
        [eps_i*, eps_alpha*] =  u eps_i + v eps_i*

    with J eps_i = eps_{n+i} = eps_i* and the identity metric.  Each
    eps_alpha, eps_alpha* acts on span{eps_i, eps_i*} by commuting conformal
    2x2 matrices, so the Jacobi identity holds for every parameter choice,
    and J is integrable.  In the frame e_i = (eps_i - i eps_i*)/sqrt(2) the
    only nonzero brackets are [e_i, e_alpha] = Z e_i and
    [conj(e_i), e_alpha] = Y conj(e_i) with

        Y = ((x + u) - i (y + v))/sqrt(2),   Z = ((x - u) + i (y - v))/sqrt(2).

    Raises ``DegenerateRow`` if some row i has (Y, Z) = (0, 0) for every
    alpha, since the commutator would then be smaller than declared.
    """
    if not (1 <= r < n):
        raise ValidationError(f"need 1 <= r < n, got r={r}, n={n}")
    shape = (r, n - r)
    x, y, u, v = (np.asarray(t, dtype=float).reshape(shape) for t in (x, y, u, v))
    row_mass = np.abs(x) + np.abs(y) + np.abs(u) + np.abs(v)
    dead = np.where(row_mass.sum(axis=1) == 0.0)[0]
    if dead.size:
        raise DegenerateRow(f"rows {[int(d) + 1 for d in dead]} have all parameters zero")
    dim = 2 * n
    f = np.zeros((dim, dim, dim))
    for i in range(r):
        for a in range(n - r):
            al = r + a
            _set_bracket(f, i, i, al, x[i, a])
            _set_bracket(f, n + i, i, al, y[i, a])
            _set_bracket(f, i, n + i, al, -y[i, a])
            _set_bracket(f, n + i, n + i, al, x[i, a])
            _set_bracket(f, i, i, n + al, v[i, a])
            _set_bracket(f, n + i, i, n + al, -u[i, a])
            _set_bracket(f, i, n + i, n + al, u[i, a])
            _set_bracket(f, n + i, n + i, n + al, v[i, a])
    J = np.zeros((dim, dim))
    J[n:, :n] = np.eye(n)
    J[:n, n:] = -np.eye(n)
    labels = [f"e{i + 1}" for i in range(n)] + [f"e{i + 1}*" for i in range(n)]
    alg = RealLieAlgebra(dim, labels, f)
    h = HermitianStructure(J, np.eye(dim))
    E = np.zeros((dim, n), dtype=complex)
    s = 1.0 / _S2
    for i in range(n):
        E[i, i] = s
        E[n + i, i] = -1j * s
    return alg, h, Frame(E)


def typeII_YZ(x, y, u, v, r: int, n: int) -> tuple[np.ndarray, np.ndarray]:
    """The (Y, Z) complex parameters induced by (x, y, u, v)."""
    shape = (r, n - r)
    x, y, u, v = (np.asarray(t, dtype=float).reshape(shape) for t in (x, y, u, v))
    Y = ((x + u) - 1j * (y + v)) / _S2
    Z = ((x - u) + 1j * (y - v)) / _S2
    return Y, Z


@dataclass
class ConstraintReport:
    """Jacobi-gate analysis of the six-dimensional family.

    ``violated_triples`` maps bracket-triple labels to the sup norm of the
    cyclic-sum residual; ``constraints`` lists the parameter values that the
    closure condition forces to vanish.
    """

    defect: float
    violated_triples: list
    constraints: dict
    note: str

    @property
    def passes(self) -> bool:
        return not self.violated_triples


_SIX_DIM_NOTE = (
    "closure forces Z2 = 0 and Y2 = 0: the cyclic sums on (e1, e2, e3) and "
    "(e1, e2, conj(e3)) equal -Z2 e1 and -conj(Y2) e1.  A nonzero second "
    "pair (Y2, Z2) is therefore unrealizable, and with the forced zeros the "
    "commutator span{e1, conj(e1)} is abelian, contrary to the stated "
    "non-2-step intent of this family."
)


def _six_dim_presentation(Y1, Z1, Y2, Z2) -> ComplexPresentation:
    C = np.zeros((3, 3, 3), dtype=complex)
    D = np.zeros((3, 3, 3), dtype=complex)
    C[0, 0, 1], C[0, 1, 0] = 1.0, -1.0
    for i, z in enumerate((Z1, Z2)):
        C[i, i, 2] += z
        C[i, 2, i] -= z
    for i, yv in enumerate((Y1, Y2)):
        D[i, i, 2] = yv
    return ComplexPresentation(3, C, D)


def six_dim_constraints(Y1, Z1, Y2, Z2, tol: float = 1e-10) -> ConstraintReport:
    """Evaluate the Jacobi gate for the six-dimensional bracket pattern

        [e_1, e_2] = e_1,  [e_i, e_3] = Z_i e_i,  [conj(e_i), e_3] = Y_i conj(e_i)

    without constructing the instance.  The residuals are computed from the
    cyclic sums over all complexified basis triples.
    """
    pres = _six_dim_presentation(Y1, Z1, Y2, Z2)
    B = complex_bracket_tensor(pres)
    dim = 6
    labels = ["e1", "e2", "e3", "conj(e1)", "conj(e2)", "conj(e3)"]
    b1 = np.einsum("mdc,dab->mabc", B, B)
    total = b1 + b1.transpose(0, 2, 3, 1) + b1.transpose(0, 3, 1, 2)
    violated = []
    for a in range(dim):
        for b in range(a + 1, dim):
            for c in range(b + 1, dim):
                res = sup(total[:, a, b, c])
                if res > tol:
                    violated.append((f"({labels[a]}, {labels[b]}, {labels[c]})", res))
    return ConstraintReport(
        defect=sup(total),
        violated_triples=violated,
        constraints={"Z2": complex(Z2), "Y2": complex(Y2)},
        note=_SIX_DIM_NOTE,
    )


def six_dim_instance(
    Y1, Z1, Y2, Z2, tol: float = 1e-10
) -> tuple[RealLieAlgebra, HermitianStructure, Frame]:
    """Build the six-dimensional family instance, gated by the Jacobi check.

    Raises ``JacobiViolation`` carrying the defect, the offending triples
    and the full :class:`ConstraintReport` when closure fails; by the
    constraint analysis this happens exactly when Z2 or Y2 is nonzero.
    """
    report = six_dim_constraints(Y1, Z1, Y2, Z2, tol)
    if not report.passes:
        raise JacobiViolation(
            f"bracket pattern does not close: defect {report.defect:.3g}; " + report.note,
            defect=report.defect,
            triples=report.violated_triples,
            report=report,
        )
    alg, h, frame = realify(_six_dim_presentation(Y1, Z1, Y2, Z2))
    assert jacobi_defect(alg) <= 10 * tol
    return alg, h, frame


def kodaira_thurston() -> tuple[RealLieAlgebra, HermitianStructure, Frame]:
    """Nilpotent fixture with non-constant holomorphic sectional curvature.

    Basis X, Y, Z, W with [X, Y] = Z, JX = Y, JZ = W, identity metric, and
    frame e_1 = (X - iY)/sqrt(2), e_2 = (Z - iW)/sqrt(2).  Its sole complex
    structure constant is D^1_{21} = -i/sqrt(2); the commutator span{Z} is
    not J-invariant, so the main theorem does not apply to it.
    """
    f = np.zeros((4, 4, 4))
    _set_bracket(f, 2, 0, 1, 1.0)
    alg = RealLieAlgebra(4, ["X", "Y", "Z", "W"], f)
    J = np.zeros((4, 4))
    J[1, 0], J[0, 1] = 1.0, -1.0
    J[3, 2], J[2, 3] = 1.0, -1.0
    h = HermitianStructure(J, np.eye(4))
    E = np.zeros((4, 2), dtype=complex)
    s = 1.0 / _S2
    E[0, 0], E[1, 0] = s, -1j * s
    E[2, 1], E[3, 1] = s, -1j * s
    return alg, h, Frame(E)


def random_scramble(
    instance: tuple[RealLieAlgebra, HermitianStructure, Frame],
    seed: int,
    basis_change: bool = False,
) -> tuple[RealLieAlgebra, HermitianStructure, Frame]:
    """Seeded random unitary frame change, optionally composed with a random
    J-commuting orthogonal change of the real basis.

    All scalar invariants (verdicts, curvature magnitudes, H values at
    corresponding directions) are preserved.
    """
    alg, h, frame = instance
    rng = np.random.default_rng(seed)
    n = frame.n
    U = random_unitary(n, rng)
    E = frame.E @ U.T
    if not basis_change:
        return alg, h, Frame(E)
    G = random_unitary(n, rng)
    S = np.hstack([E, np.conj(E)])
    block = np.zeros((2 * n, 2 * n), dtype=complex)
    block[:n, :n] = G
    block[n:, n:] = np.conj(G)
    Q = S @ block @ np.linalg.inv(S)
    if sup(Q.imag) > 1e-10:
        raise ValidationError("basis-change operator failed to be real")
    Q = Q.real
    Qinv = np.linalg.inv(Q)
    f = np.einsum("cm,mpq,pa,qb->cab", Qinv, alg.f, Q, Q)
    f = 0.5 * (f - f.transpose(0, 2, 1))
    alg2 = RealLieAlgebra(alg.dim, list(alg.basis_labels), f)
    return alg2, h, Frame(Qinv @ E)


# ---------------------------------------------------------------------------
# seeded parameter draws
# ---------------------------------------------------------------------------

@dataclass
class CatalogParams:
    """Parameters of a named catalog family plus the seed that produced them."""

    family: str
    seed: int
    lam: Optional[np.ndarray] = None
    xyuv: Optional[tuple] = None
    yz: Optional[tuple] = None
    r: Optional[int] = None
    n: Optional[int] = None

    @classmethod
    def random(cls, family: str, seed: int, r: int = 2, n: int = 3) -> "CatalogParams":
        """Uniform draws from [-2, 2] per real component, rejecting the
        degenerate configurations each family excludes."""
        rng = np.random.default_rng(seed)
        if family == "heisenberg":
            while True:
                lam = rng.uniform(-2, 2, r) + 1j * rng.uniform(-2, 2, r)
                if np.all(np.abs(lam) > 0.05):
                    return cls(family, seed, lam=lam, r=r, n=r + 1)
        if family == "pure_type2":
            while True:
                xyuv = tuple(rng.uniform(-2, 2, (r, n - r)) for _ in range(4))
                mass = sum(np.abs(t) for t in xyuv).sum(axis=1)
                if np.all(mass > 0.05):
                    return cls(family, seed, xyuv=xyuv, r=r, n=n)
        if family == "six_dim":
            yz = (rng.uniform(-2, 2) + 1j * rng.uniform(-2, 2), rng.uniform(-2, 2) + 1j * rng.uniform(-2, 2))
            return cls(family, seed, yz=(yz[0], yz[1], 0.0, 0.0), r=1, n=3)
        raise ValidationError(f"unknown family {family!r}", "family")

    def build(self) -> tuple[RealLieAlgebra, HermitianStructure, Frame]:
        if self.family == "heisenberg":
            return heisenberg_example(self.lam)
        if self.family == "pure_type2":
            return pure_typeII_instance(*self.xyuv, self.r, self.n)
        if self.family == "six_dim":
            return six_dim_instance(*self.yz)
        raise ValidationError(f"unknown family {self.family!r}", "family")
