import numpy as np
import pytest

from hermlie import (
    ComplexPresentation,
    Frame,
    HermitianStructure,
    RealLieAlgebra,
    complexify,
    heisenberg_example,
    kodaira_thurston,
    pure_typeII_instance,
    realify,
    six_dim_instance,
)
from hermlie.catalog import complex_lie_instance


@pytest.fixture
def kt_instance():
    return kodaira_thurston()


@pytest.fixture
def kt_presentation(kt_instance):
    return complexify(*kt_instance)


@pytest.fixture
def heis_instance():
    return heisenberg_example([1j, 2j])


@pytest.fixture
def heis_presentation(heis_instance):
    return complexify(*heis_instance)


@pytest.fixture
def abelian_presentation():
    z = np.zeros((2, 2, 2), dtype=complex)
    return ComplexPresentation(2, z.copy(), z.copy())


def set_complex(C, j, i, k, v):
    C[j, i, k] += v
    C[j, k, i] -= v


def complex_heisenberg(n=3):
    C = np.zeros((n, n, n), dtype=complex)
    set_complex(C, 2, 0, 1, 1.0)
    return complex_lie_instance(C, n)


def complex_solvable_nonabelian(w1=1.0, w2=-1.0):
    """Complex solvable algebra with nonabelian 3-complex-dimensional
    commutator: Heisenberg e_1, e_2, e_3 extended by a diagonal derivation
    e_4 with weights (w1, w2, w1 + w2)."""
    C = np.zeros((4, 4, 4), dtype=complex)
    set_complex(C, 2, 0, 1, 1.0)
    set_complex(C, 0, 3, 0, w1)
    set_complex(C, 1, 3, 1, w2)
    set_complex(C, 2, 3, 2, w1 + w2)
    return complex_lie_instance(C, 4)


def deformed_metric(h, frame, seed, scale=0.3):
    """Random J-compatible metric built from a J-commuting deformation."""
    rng = np.random.default_rng(seed)
    n = frame.n
    G = np.eye(n) + scale * (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))
    S = np.hstack([frame.E, np.conj(frame.E)])
    block = np.zeros((2 * n, 2 * n), dtype=complex)
    block[:n, :n] = G
    block[n:, n:] = np.conj(G)
    A = (S @ block @ np.linalg.inv(S)).real
    g = A.T @ h.g @ A
    return HermitianStructure(h.J, g)


def catalog_sweep():
    """A spread of valid instances across every family, as (name, triple)."""
    out = [
        ("kodaira_thurston", kodaira_thurston()),
        ("heisenberg_r1", heisenberg_example([1.0 + 0.5j])),
        ("heisenberg_r2", heisenberg_example([1j, 2j])),
        ("heisenberg_r3", heisenberg_example([0.3 - 1j, 2.0, 1j])),
        ("six_dim", six_dim_instance(2j, 0.5, 0.0, 0.0)),
        ("complex_heisenberg", realify(complex_heisenberg())),
        ("complex_solvable", realify(complex_solvable_nonabelian())),
        ("abelian", realify(ComplexPresentation(2, np.zeros((2, 2, 2), complex), np.zeros((2, 2, 2), complex)))),
    ]
    rng = np.random.default_rng(20240817)
    shapes = [(1, 2), (2, 3), (2, 4)]
    for t, (r, n) in enumerate(shapes):
        xyuv = tuple(rng.uniform(-2, 2, (r, n - r)) for _ in range(4))
        out.append((f"pure_type2_{r}_{n}", pure_typeII_instance(*xyuv, r, n)))
    for t in range(3):
        alg, h, fr = heisenberg_example(rng.uniform(-2, 2, 2) + 1j * rng.uniform(-2, 2, 2))
        out.append((f"heisenberg_seeded_{t}", (alg, h, fr)))
    return out
