"""Dense complex matrix kernels.

Matrices are plain ``numpy.ndarray`` values with dtype ``complex128``;
products, sums and scalar multiples are ordinary numpy arithmetic.  This
module adds the operator-theoretic helpers the rest of the package is built
on: adjoints, Cartesian (real/imaginary) parts, phase rotations, Hermitian
eigendecompositions with an explicit residual contract, spectral and
Frobenius norms, and the Cayley-style unitary completion of a Hermitian
contraction.

Hermitian-only routines accept inputs within a relative hermiticity
tolerance and symmetrize before use, so downstream math stays exact on the
Hermitian subspace.  Everything here is pure: no function mutates its
arguments and there is no module state.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Acceptance tolerance for Hermitian-only routines (relative to max(1, ||A||_F)).
HERMITIAN_RTOL = 1e-10
# Allowed overshoot of ||S|| beyond 1 for contraction-only routines.
CONTRACTION_RTOL = 1e-9
# Residual contract for the Hermitian eigensolver, relative to max(1, ||A||_F).
EIGEN_RESIDUAL_RTOL = 1e-12


class MatrixShapeError(ValueError):
    """Input is not a matrix of the required shape."""


class NonFiniteEntry(ValueError):
    """A matrix entry is NaN or infinite."""


class NonHermitianInput(ValueError):
    """Input is farther from Hermitian than the acceptance tolerance."""


class NotAContraction(ValueError):
    """Hermitian input has spectral norm beyond 1 + CONTRACTION_RTOL."""


def as_matrix(a, *, square: bool = False) -> np.ndarray:
    """Coerce `a` to a finite complex128 matrix, optionally requiring squareness."""
    arr = np.array(a, dtype=np.complex128, copy=True, order="C")
    if arr.ndim != 2 or arr.shape[0] == 0 or arr.shape[1] == 0:
        raise MatrixShapeError(f"expected a nonempty 2-d matrix, got shape {arr.shape}")
    if square and arr.shape[0] != arr.shape[1]:
        raise MatrixShapeError(f"expected a square matrix, got shape {arr.shape}")
    if not np.isfinite(arr).all():
        raise NonFiniteEntry("matrix entries must be finite (no NaN/Inf)")
    return arr


def adjoint(a: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return np.conj(np.asarray(a)).T.copy()


def re_part(a) -> np.ndarray:
    """Hermitian real part (A + A*) / 2 of a square matrix."""
    arr = as_matrix(a, square=True)
    return (arr + adjoint(arr)) / 2


def im_part(a) -> np.ndarray:
    """Hermitian imaginary part (A - A*) / (2i) of a square matrix."""
    arr = as_matrix(a, square=True)
    return (arr - adjoint(arr)) / 2j


def rotate(a, theta: float) -> np.ndarray:
    """Multiply by the unit phase exp(i*theta)."""
    if theta == 0.0:
        return np.array(a, dtype=np.complex128, copy=True)
    return np.exp(1j * theta) * np.asarray(a, dtype=np.complex128)


def frobenius_norm(a) -> float:
    return float(np.linalg.norm(np.asarray(a, dtype=np.complex128), "fro"))


def trace(a) -> complex:
    arr = as_matrix(a, square=True)
    return complex(np.trace(arr))


def hermitian_defect(a: np.ndarray) -> float:
    """Frobenius distance from A to its Hermitian part's symmetrization, ||A - A*||_F."""
    arr = np.asarray(a, dtype=np.complex128)
    return float(np.linalg.norm(arr - adjoint(arr), "fro"))


def require_hermitian(a, tol: float = HERMITIAN_RTOL) -> np.ndarray:
    """Return the symmetrized copy (A + A*)/2, or raise NonHermitianInput.

    Inputs whose defect ||A - A*||_F exceeds tol * max(1, ||A||_F) are
    rejected; anything inside the tolerance is symmetrized so downstream
    Hermitian-only math is exact.
    """
    arr = as_matrix(a, square=True)
    scale = max(1.0, frobenius_norm(arr))
    if hermitian_defect(arr) > tol * scale:
        raise NonHermitianInput(
            f"matrix is not Hermitian within tolerance {tol:g} (defect "
            f"{hermitian_defect(arr):.3e}, scale {scale:.3e})"
        )
    return (arr + adjoint(arr)) / 2


@dataclass(frozen=True)
class EigenResult:
    """Full Hermitian spectrum: ascending eigenvalues, orthonormal column
    eigenvectors, and the residual max_j ||A v_j - lambda_j v_j||."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    residual: float


def hermitian_eigs(a, tol: float = HERMITIAN_RTOL) -> EigenResult:
    """Eigendecomposition of a Hermitian matrix with a residual contract.

    The input must be Hermitian to `tol` (relative); it is symmetrized
    before solving.  Eigenvalues come back ascending with orthonormal
    eigenvectors, and the returned residual is guaranteed below
    EIGEN_RESIDUAL_RTOL * max(1, ||A||_F).
    """
    h = require_hermitian(a, tol)
    vals, vecs = np.linalg.eigh(h)
    residual = float(np.max(np.linalg.norm(h @ vecs - vecs * vals[None, :], axis=0)))
    bound = EIGEN_RESIDUAL_RTOL * max(1.0, frobenius_norm(h))
    if residual > bound:
        raise ArithmeticError(
            f"eigensolver residual {residual:.3e} exceeds contract {bound:.3e}"
        )
    return EigenResult(eigenvalues=vals, eigenvectors=vecs, residual=residual)


def singular_values(a) -> np.ndarray:
    """Singular values in descending order (via LAPACK bidiagonalization)."""
    arr = as_matrix(a)
    return np.linalg.svd(arr, compute_uv=False)


def spectral_norm(a) -> float:
    """Largest singular value, computed as sqrt(lambda_max(A* A))."""
    arr = as_matrix(a)
    gram = adjoint(arr) @ arr
    top = np.linalg.eigvalsh(gram)[-1]
    return float(np.sqrt(max(top, 0.0)))


def spectral_norm_many(stack: np.ndarray) -> np.ndarray:
    """Spectral norms of a stack of matrices, batched through eigvalsh."""
    arr = np.asarray(stack, dtype=np.complex128)
    gram = np.matmul(np.conj(np.swapaxes(arr, -2, -1)), arr)
    tops = np.linalg.eigvalsh(gram)[..., -1]
    return np.sqrt(np.maximum(tops, 0.0))


def abs_eigenvalues_many(stack: np.ndarray) -> np.ndarray:
    """|eigenvalues| of a stack of Hermitian matrices, ascending per matrix."""
    return np.abs(np.linalg.eigvalsh(np.asarray(stack, dtype=np.complex128)))


def hermitian_sqrt_defect(s, tol: float = HERMITIAN_RTOL) -> np.ndarray:
    """(I - S^2)^(1/2) for a Hermitian contraction S.

    Computed on the eigenbasis of S with eigenvalues clamped into [-1, 1],
    so rounding-level overshoot of the contraction bound is absorbed.
    """
    h = require_hermitian(s, tol)
    eig = hermitian_eigs(h, tol)
    top = float(np.max(np.abs(eig.eigenvalues))) if eig.eigenvalues.size else 0.0
    if top > 1.0 + CONTRACTION_RTOL:
        raise NotAContraction(f"spectral norm {top:.12g} exceeds 1 + {CONTRACTION_RTOL:g}")
    lam = np.clip(eig.eigenvalues, -1.0, 1.0)
    roots = np.sqrt(1.0 - lam * lam)
    v = eig.eigenvectors
    return (v * roots[None, :]) @ adjoint(v)


def cayley_unitary(s, tol: float = HERMITIAN_RTOL) -> np.ndarray:
    """U = S + i (I - S^2)^(1/2) for a Hermitian contraction S.

    U is unitary with Re(U) = S; both postconditions are verified to 1e-10
    on the symmetrized operand before returning.
    """
    h = require_hermitian(s, tol)
    eig = hermitian_eigs(h, tol)
    top = float(np.max(np.abs(eig.eigenvalues))) if eig.eigenvalues.size else 0.0
    if top > 1.0 + CONTRACTION_RTOL:
        raise NotAContraction(f"spectral norm {top:.12g} exceeds 1 + {CONTRACTION_RTOL:g}")
    lam = np.clip(eig.eigenvalues, -1.0, 1.0)
    phases = lam + 1j * np.sqrt(1.0 - lam * lam)
    v = eig.eigenvectors
    u = (v * phases[None, :]) @ adjoint(v)
    n = u.shape[0]
    unitary_defect = float(np.linalg.norm(adjoint(u) @ u - np.eye(n), "fro"))
    real_defect = float(np.linalg.norm(re_part(u) - h, "fro"))
    if unitary_defect > 1e-10 or real_defect > 1e-10:
        raise ArithmeticError(
            f"cayley_unitary postcondition failed: ||U*U - I||={unitary_defect:.3e}, "
            f"||Re U - S||={real_defect:.3e}"
        )
    return u
