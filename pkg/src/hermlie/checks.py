"""Lie-algebraic and Hermitian axiom checks.

Defect functions return sup-norm residuals in coordinates; a value of zero
(within tolerance) certifies the corresponding axiom.  Series and pure-type
reports use singular-value rank decisions, see :mod:`hermlie.utils`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .core import ComplexPresentation, HermitianStructure, RealLieAlgebra
from .errors import NotALieAlgebra, NotIntegrable
from .utils import (
    STRUCTURE_TOL,
    span_basis,
    subspace_dim,
    subspaces_equal_residual,
    sup,
)


def jacobi_defect(alg: RealLieAlgebra) -> float:
    """Max over basis triples of |[[x,y],z] + [[y,z],x] + [[z,x],y]|.

    The norm is the metric-free sup norm of coordinates; zero iff the
    structure constants define a Lie algebra.
    """
    f = alg.f
    b1 = np.einsum("mdc,dab->mabc", f, f)
    total = b1 + b1.transpose(0, 2, 3, 1) + b1.transpose(0, 3, 1, 2)
    return sup(total)


def nijenhuis_defect(alg: RealLieAlgebra, h: HermitianStructure) -> float:
    """Max over basis pairs of |[x,y] - [Jx,Jy] + J[Jx,y] + J[x,Jy]|."""
    f, J = alg.f, h.J
    t = (
        f
        - np.einsum("pa,qb,mpq->mab", J, J, f)
        + np.einsum("md,pa,dpb->mab", J, J, f)
        + np.einsum("md,qb,daq->mab", J, J, f)
    )
    return sup(t)


def bianchi_defect(pres: ComplexPresentation) -> tuple[float, float, float]:
    """Max residuals of the three first-Bianchi families.

    Family 1 is the complex Jacobi identity on C alone; families 2 and 3 mix
    C and D.  All three vanish iff the presentation comes from a Lie algebra
    with integrable complex structure.
    """
    C, D = pres.C, pres.D
    Dc = np.conj(D)
    f1 = (
        np.einsum("rij,lrk->ijkl", C, C)
        + np.einsum("rjk,lri->ijkl", C, C)
        + np.einsum("rki,lrj->ijkl", C, C)
    )
    f2 = (
        np.einsum("rik,ljr->ijkl", C, D)
        + np.einsum("rji,lrk->ijkl", D, D)
        - np.einsum("rjk,lri->ijkl", D, D)
    )
    f3 = (
        np.einsum("rik,rjl->ijkl", C, Dc)
        - np.einsum("jrk,irl->ijkl", C, Dc)
        + np.einsum("jri,krl->ijkl", C, Dc)
        - np.einsum("lri,kjr->ijkl", D, Dc)
        + np.einsum("lrk,ijr->ijkl", D, Dc)
    )
    return sup(f1), sup(f2), sup(f3)


def unimodular_defect(pres: ComplexPresentation) -> float:
    """Max over i of |sum_s (C^s_si + D^s_si)|; zero iff unimodular.

    The companion real oracle is :func:`adjoint_trace_defect`; the two are
    reported separately and their equality is not asserted (it depends on
    basis normalization).
    """
    t = np.einsum("ssi->i", pres.C) + np.einsum("ssi->i", pres.D)
    return sup(t)


def adjoint_trace_defect(alg: RealLieAlgebra) -> float:
    """Max over real basis vectors of |trace(ad_x)|."""
    traces = np.einsum("cac->a", alg.f)
    return sup(traces)


def commutator_subalgebra(alg: RealLieAlgebra) -> np.ndarray:
    """Orthonormal basis (columns) of the commutator ideal [g, g]."""
    flat = alg.f.reshape(alg.dim, -1)
    return span_basis(flat, floor=sup(alg.f))


@dataclass
class SeriesReport:
    """Derived and lower-central series data of a real Lie algebra."""

    derived_series: list
    lower_central_series: list
    is_solvable: bool
    is_nilpotent: bool
    solv_steps: Optional[int]
    nilp_steps: Optional[int]
    commutator_basis: np.ndarray


def _bracket_span(alg: RealLieAlgebra, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    if A.shape[1] == 0 or B.shape[1] == 0:
        return np.zeros((alg.dim, 0))
    w = np.einsum("cab,ai,bj->cij", alg.f, A, B).reshape(alg.dim, -1)
    # anchor the rank threshold at the bracket scale of the whole algebra so
    # spans of numerically-zero brackets come out empty
    return span_basis(w, floor=sup(alg.f))


def series_report(alg: RealLieAlgebra, tol: float = STRUCTURE_TOL) -> SeriesReport:
    """Derived series, lower central series and solvability/nilpotency flags.

    Raises ``NotALieAlgebra`` when the Jacobi defect exceeds ``tol``.
    """
    if jacobi_defect(alg) > tol:
        raise NotALieAlgebra(f"jacobi defect {jacobi_defect(alg):.3g} exceeds {tol:.3g}")
    full = np.eye(alg.dim)

    derived_dims = [alg.dim]
    cur = full
    commutator = None
    while True:
        nxt = _bracket_span(alg, cur, cur)
        if commutator is None:
            commutator = nxt
        d = nxt.shape[1]
        derived_dims.append(d)
        if d == 0 or d >= cur.shape[1]:
            break
        cur = nxt

    lower_dims = [alg.dim]
    cur = full
    while True:
        nxt = _bracket_span(alg, full, cur)
        d = nxt.shape[1]
        lower_dims.append(d)
        if d == 0 or d >= cur.shape[1]:
            break
        cur = nxt

    is_solvable = derived_dims[-1] == 0
    is_nilpotent = lower_dims[-1] == 0
    return SeriesReport(
        derived_series=derived_dims,
        lower_central_series=lower_dims,
        is_solvable=is_solvable,
        is_nilpotent=is_nilpotent,
        solv_steps=len(derived_dims) - 1 if is_solvable else None,
        nilp_steps=len(lower_dims) - 1 if is_nilpotent else None,
        commutator_basis=commutator,
    )


@dataclass
class PureTypeReport:
    """How J interacts with the commutator ideal g' = [g, g].

    ``types`` is a subset of {"I", "II", "III"}; it is empty and
    ``degenerate`` is set when g' = 0, where the type predicates are vacuous.
    """

    dim_intersection: int
    dim_V: int
    dim_W: int
    types: set
    commutator_is_complex: bool
    degenerate: bool = False
    note: str = ""


def commutator_complex_residual(alg: RealLieAlgebra, h: HermitianStructure) -> float:
    """Subspace residual of J g' = g'; zero iff the commutator is complex."""
    gp = commutator_subalgebra(alg)
    if gp.shape[1] == 0:
        return 0.0
    return subspaces_equal_residual(h.J @ gp, gp)


def classify_pure_type(
    alg: RealLieAlgebra, h: HermitianStructure, tol: float = STRUCTURE_TOL
) -> PureTypeReport:
    """Pure-type classification of (g, J) through the decomposition

        g = (g' inter Jg') + (V + JV) + W

    with V a complement of the intersection inside g' and W a J-invariant
    complement of g' + Jg'.  Complements are chosen g-orthogonally; the type
    flags depend only on dimensions, so any complement gives the same answer.
    """
    if jacobi_defect(alg) > tol:
        raise NotALieAlgebra("jacobi defect exceeds tolerance")
    if nijenhuis_defect(alg, h) > tol:
        raise NotIntegrable("nijenhuis defect exceeds tolerance")

    gp = commutator_subalgebra(alg)
    dgp = gp.shape[1]
    if dgp == 0:
        return PureTypeReport(
            dim_intersection=0,
            dim_V=0,
            dim_W=alg.dim,
            types=set(),
            commutator_is_complex=True,
            degenerate=True,
            note="abelian: all pure-type predicates vacuous",
        )
    jgp = h.J @ gp
    dsum = subspace_dim(np.hstack([gp, jgp]))
    dinter = dgp + subspace_dim(jgp) - dsum
    dim_V = dgp - dinter
    dim_W = alg.dim - dsum
    commutator_is_complex = subspaces_equal_residual(jgp, gp) <= tol
    types = set()
    if dinter == 0:
        types.add("I")
    if dim_V == 0:
        types.add("II")
    if dim_W == 0:
        types.add("III")
    return PureTypeReport(
        dim_intersection=dinter,
        dim_V=dim_V,
        dim_W=dim_W,
        types=types,
        commutator_is_complex=commutator_is_complex,
    )
