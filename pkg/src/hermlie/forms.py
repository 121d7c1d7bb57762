"""Sparse left-invariant forms on the complexified dual and their calculus.

Generators are indexed 0..2n-1: index i < n is phi_i (dual to e_{i+1}),
index n + i is conj(phi_i).  A form stores a dict mapping strictly
increasing generator tuples to complex coefficients; all antisymmetry
bookkeeping happens in the sorting sign.

The wedge convention for 1-forms is (a ^ b)(x, y) = a(x) b(y) - a(y) b(x),
matching the 1/2 factor in the structure equation

    d phi_i = -1/2 sum C^i_jk phi_j ^ phi_k - sum conj(D^j_ik) phi_j ^ conj(phi_k).
"""

from __future__ import annotations

from typing import Iterable

import numpy as np

from .core import ComplexPresentation
from .errors import TypeMismatch

_PRUNE = 0.0  # keep exact zeros out of the dict, nothing else


def _normalize(index: tuple[int, ...]) -> tuple[tuple[int, ...], int] | None:
    """Sort a generator tuple, returning (sorted, sign) or None on repeats."""
    idx = list(index)
    sign = 1
    # insertion sort, counting transpositions
    for i in range(1, len(idx)):
        j = i
        while j > 0 and idx[j - 1] > idx[j]:
            idx[j - 1], idx[j] = idx[j], idx[j - 1]
            sign = -sign
            j -= 1
    for a, b in zip(idx, idx[1:]):
        if a == b:
            return None
    return tuple(idx), sign


class LeftInvariantForm:
    """A complex multilinear alternating form with constant coefficients."""

    __slots__ = ("n", "degree", "terms")

    def __init__(self, n: int, degree: int, terms: dict | None = None):
        self.n = n
        self.degree = degree
        self.terms: dict[tuple[int, ...], complex] = {}
        for idx, c in (terms or {}).items():
            self._accumulate(tuple(idx), complex(c))

    def _accumulate(self, index: tuple[int, ...], c: complex) -> None:
        if c == 0:
            return
        norm = _normalize(index)
        if norm is None:
            return
        idx, sign = norm
        if len(idx) != self.degree:
            raise TypeMismatch(f"index {index} has length {len(idx)}, degree is {self.degree}")
        new = self.terms.get(idx, 0.0) + sign * c
        if new == 0:
            self.terms.pop(idx, None)
        else:
            self.terms[idx] = new

    # -- constructors -------------------------------------------------------
    @classmethod
    def zero(cls, n: int, degree: int) -> "LeftInvariantForm":
        return cls(n, degree)

    @classmethod
    def generator(cls, n: int, index: int) -> "LeftInvariantForm":
        return cls(n, 1, {(index,): 1.0})

    @classmethod
    def phi(cls, n: int, i: int) -> "LeftInvariantForm":
        return cls.generator(n, i)

    @classmethod
    def phi_bar(cls, n: int, i: int) -> "LeftInvariantForm":
        return cls.generator(n, n + i)

    # -- algebra ------------------------------------------------------------
    def __add__(self, other: "LeftInvariantForm") -> "LeftInvariantForm":
        if other.degree != self.degree or other.n != self.n:
            raise TypeMismatch("cannot add forms of different degree or rank")
        out = LeftInvariantForm(self.n, self.degree, self.terms)
        for idx, c in other.terms.items():
            out._accumulate(idx, c)
        return out

    def __sub__(self, other: "LeftInvariantForm") -> "LeftInvariantForm":
        return self + (other * (-1.0))

    def __mul__(self, scalar) -> "LeftInvariantForm":
        return LeftInvariantForm(
            self.n, self.degree, {idx: scalar * c for idx, c in self.terms.items()}
        )

    __rmul__ = __mul__

    def wedge(self, other: "LeftInvariantForm") -> "LeftInvariantForm":
        if other.n != self.n:
            raise TypeMismatch("forms live on different algebras")
        out = LeftInvariantForm(self.n, self.degree + other.degree)
        for ia, ca in self.terms.items():
            for ib, cb in other.terms.items():
                out._accumulate(ia + ib, ca * cb)
        return out

    def conjugate(self) -> "LeftInvariantForm":
        """Complex conjugation: swaps phi and conj(phi) slots."""
        out = LeftInvariantForm(self.n, self.degree)
        for idx, c in self.terms.items():
            swapped = tuple((g + self.n) % (2 * self.n) for g in idx)
            out._accumulate(swapped, np.conj(c))
        return out

    # -- inspection ---------------------------------------------------------
    def coefficient(self, index: Iterable[int]) -> complex:
        norm = _normalize(tuple(index))
        if norm is None:
            return 0.0
        idx, sign = norm
        return sign * self.terms.get(idx, 0.0)

    def sup(self) -> float:
        if not self.terms:
            return 0.0
        return float(max(abs(c) for c in self.terms.values()))

    def is_zero(self, tol: float = 0.0) -> bool:
        return self.sup() <= tol

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        if not self.terms:
            return "0"

        def name(g):
            return f"phi{g + 1}" if g < self.n else f"phibar{g - self.n + 1}"

        parts = [f"({c:.4g})*" + "^".join(name(g) for g in idx) for idx, c in sorted(self.terms.items())]
        return " + ".join(parts)


def d_generator(pres: ComplexPresentation, index: int) -> LeftInvariantForm:
    """Exterior differential of a coframe generator from the structure equation."""
    n = pres.n
    out = LeftInvariantForm(n, 2)
    if index < n:
        i = index
        for j in range(n):
            for k in range(n):
                c = pres.C[i, j, k]
                if c != 0:
                    out._accumulate((j, k), -0.5 * c)
                dcoef = np.conj(pres.D[j, i, k])
                if dcoef != 0:
                    out._accumulate((j, n + k), -dcoef)
        return out
    return d_generator(pres, index - n).conjugate()


def exterior_d(pres: ComplexPresentation, form: LeftInvariantForm) -> LeftInvariantForm:
    """d extended as an antiderivation from the generator differentials."""
    n = pres.n
    if form.n != n:
        raise TypeMismatch("form rank does not match presentation")
    out = LeftInvariantForm(n, form.degree + 1)
    dgen = {}
    for idx, c in form.terms.items():
        for t, g in enumerate(idx):
            if g not in dgen:
                dgen[g] = d_generator(pres, g)
            sign = -1.0 if t % 2 else 1.0
            for didx, dc in dgen[g].terms.items():
                out._accumulate(idx[:t] + didx + idx[t + 1 :], sign * c * dc)
    return out
