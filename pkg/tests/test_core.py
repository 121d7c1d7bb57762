import numpy as np
import pytest

from hermlie import (
    ComplexPresentation,
    Frame,
    HermitianStructure,
    RealLieAlgebra,
    build_unitary_frame,
    change_frame,
    chern_curvature,
    complexify,
    holomorphic_sectional,
    realify,
)
from hermlie.errors import (
    FlagNotJInvariant,
    FrameNotUnitary,
    MetricNotSPD,
    NotUnitary,
    TypeMismatch,
    ValidationError,
)
from hermlie.utils import random_unitary, sup
from conftest import catalog_sweep

S2 = np.sqrt(2.0)


def standard_J(n):
    J = np.zeros((2 * n, 2 * n))
    for i in range(n):
        J[2 * i + 1, 2 * i] = 1.0
        J[2 * i, 2 * i + 1] = -1.0
    return J


def test_real_algebra_rejects_asymmetric_constants():
    f = np.zeros((2, 2, 2))
    f[0, 0, 1] = 1.0  # missing the mirrored entry
    with pytest.raises(ValidationError):
        RealLieAlgebra(2, ["a", "b"], f)


def test_hermitian_structure_rejects_bad_J_and_metric():
    with pytest.raises(ValidationError):
        HermitianStructure(np.eye(2), np.eye(2))
    with pytest.raises(MetricNotSPD):
        HermitianStructure(standard_J(1), np.diag([1.0, -1.0]))
    # J-compatibility failure: SPD metric not preserved by J
    with pytest.raises(ValidationError):
        HermitianStructure(standard_J(1), np.diag([1.0, 2.0]))


def test_complexify_kodaira_thurston_pins_d_convention(kt_instance):
    pres = complexify(*kt_instance)
    assert sup(pres.C) == 0.0
    expected = np.zeros((2, 2, 2), dtype=complex)
    expected[0, 1, 0] = -1j / S2  # D^1_{21}; superscript labels the conjugated slot
    assert sup(pres.D - expected) < 1e-14
    # the transposed slot stays empty: a silent index swap would move it here
    assert pres.D[0, 0, 1] == 0.0


def test_complexify_abelian_is_zero():
    n = 3
    alg = RealLieAlgebra(2 * n, [f"b{i}" for i in range(2 * n)], np.zeros((2 * n,) * 3))
    h = HermitianStructure(standard_J(n), np.eye(2 * n))
    pres = complexify(alg, h, build_unitary_frame(h))
    assert sup(pres.C) == 0.0 and sup(pres.D) == 0.0


def test_complexify_rejects_bad_frames(kt_instance):
    alg, h, frame = kt_instance
    with pytest.raises(FrameNotUnitary):
        complexify(alg, h, Frame(2.0 * frame.E))
    small = HermitianStructure(standard_J(1), np.eye(2))
    with pytest.raises(TypeMismatch):
        complexify(alg, small, frame)


@pytest.mark.parametrize("name,instance", catalog_sweep())
def test_roundtrip_realify_complexify(name, instance):
    pres = complexify(*instance)
    alg2, h2, frame2 = realify(pres)
    back = complexify(alg2, h2, frame2)
    assert sup(back.C - pres.C) < 1e-12
    assert sup(back.D - pres.D) < 1e-12


def test_realify_abelian_gives_abelian():
    z = np.zeros((3, 3, 3), dtype=complex)
    alg, h, frame = realify(ComplexPresentation(3, z, z))
    assert alg.dim == 6
    assert sup(alg.f) == 0.0


def test_realify_kodaira_thurston_brackets(kt_presentation):
    alg, h, frame = realify(kt_presentation)
    # the only bracket is [x_1, y_1] = x_2 up to the interleaved labels
    nz = np.argwhere(np.abs(alg.f) > 1e-12)
    assert {tuple(ix) for ix in nz} == {(2, 0, 1), (2, 1, 0)}
    assert alg.f[2, 0, 1] == pytest.approx(1.0)


def test_realness_brackets_of_conjugates(kt_presentation):
    # [conj(u), conj(v)] must be the conjugate of [u, v] in the realified algebra
    alg, h, frame = realify(kt_presentation)
    E = frame.E
    rng = np.random.default_rng(11)
    for _ in range(10):
        a = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        b = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        u, v = E @ a, E @ b
        lhs = alg.bracket(np.conj(u), np.conj(v))
        rhs = np.conj(alg.bracket(u, v))
        assert sup(lhs - rhs) < 1e-12


def test_build_unitary_frame_standard_and_scaled(kt_instance):
    alg, h, frame = kt_instance
    built = build_unitary_frame(h)
    assert sup(built.E - frame.E) < 1e-14
    stretched = HermitianStructure(h.J, np.diag([4.0, 4.0, 1.0, 1.0]))
    e1 = build_unitary_frame(stretched).E[:, 0]
    expected = np.array([1.0, -1j, 0.0, 0.0]) / (2 * S2)
    assert sup(e1 - expected) < 1e-14


def test_build_unitary_frame_rejects_bad_inputs(kt_instance):
    alg, h, _ = kt_instance
    with pytest.raises(MetricNotSPD):
        HermitianStructure(h.J, -np.eye(4))
    flag = [np.array([[1.0], [0.0], [0.0], [0.0]])]  # span{X} is not J-invariant
    with pytest.raises(FlagNotJInvariant):
        build_unitary_frame(h, flag=flag)


def test_build_unitary_frame_respects_flag(kt_instance):
    alg, h, _ = kt_instance
    flag = [np.array([[0.0, 0.0], [0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])]  # span{Z, W}
    frame = build_unitary_frame(h, flag=flag)
    assert sup(frame.E[:2, 0]) < 1e-14  # first vector sits inside the flag member


def test_change_frame_identity(heis_presentation):
    out = change_frame(heis_presentation, np.eye(3))
    assert sup(out.C - heis_presentation.C) < 1e-14
    assert sup(out.D - heis_presentation.D) < 1e-14


def test_change_frame_swap_example():
    C = np.zeros((2, 2, 2), dtype=complex)
    C[0, 0, 1], C[0, 1, 0] = 1.0, -1.0  # [e_1, e_2] = e_1
    pres = ComplexPresentation(2, C, np.zeros((2, 2, 2), complex))
    out = change_frame(pres, np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex))
    assert out.C[1, 0, 1] == pytest.approx(-1.0)
    assert abs(out.C[0, 0, 1]) < 1e-14


def test_change_frame_diagonal_phase_preserves_moduli_and_H(kt_presentation):
    phases = np.exp(1j * np.array([0.3, -1.2]))
    out = change_frame(kt_presentation, np.diag(phases))
    assert sup(np.abs(out.C) - np.abs(kt_presentation.C)) < 1e-12
    assert sup(np.abs(out.D) - np.abs(kt_presentation.D)) < 1e-12
    R0 = chern_curvature(kt_presentation)
    R1 = chern_curvature(out)
    for i in range(2):
        v = np.eye(2, dtype=complex)[i]
        assert holomorphic_sectional(R1, v) == pytest.approx(
            holomorphic_sectional(R0, v), abs=1e-12
        )


def test_change_frame_rejects_non_unitary(kt_presentation):
    with pytest.raises(NotUnitary):
        change_frame(kt_presentation, 2.0 * np.eye(2))


@pytest.mark.parametrize("seed", range(5))
def test_frame_covariance_of_curvature_and_H(seed, heis_presentation):
    rng = np.random.default_rng(seed)
    U = random_unitary(3, rng)
    moved = change_frame(heis_presentation, U)
    R = chern_curvature(heis_presentation).R
    R2 = chern_curvature(moved).R
    expected = np.einsum("ia,jb,kc,ld,abcd->ijkl", U, np.conj(U), U, np.conj(U), R)
    assert sup(R2 - expected) < 1e-9
    # C antisymmetry is preserved exactly up to floating error
    assert sup(moved.C + moved.C.transpose(0, 2, 1)) < 1e-12


@pytest.mark.parametrize("seed", range(3))
def test_frame_covariance_H_correspondence(seed, kt_presentation):
    # a vector with new-frame coordinates conj(U) v is the old vector v
    rng = np.random.default_rng(100 + seed)
    U = random_unitary(2, rng)
    moved = change_frame(kt_presentation, U)
    R = chern_curvature(kt_presentation)
    R2 = chern_curvature(moved)
    for _ in range(5):
        v = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        h_old = holomorphic_sectional(R, v)
        h_new = holomorphic_sectional(R2, np.conj(U) @ v)
        assert h_new == pytest.approx(h_old, abs=1e-9)
