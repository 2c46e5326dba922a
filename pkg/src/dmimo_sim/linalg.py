"""Complex-matrix primitives for the capacity math.

Channel matrices are plain 2-D complex numpy arrays. The three operations
here are the only linear algebra the capacity expressions need: the Hermitian
Gram product H H^H, the log-determinant capacity log2|s*A + I|, and the
Moore-Penrose pseudo-inverse used for zero-forcing precoders.
"""

import numpy as np

from .errors import DimensionError, NumericalDomainError, SingularMatrixError

# Relative singular-value cutoff below which a matrix counts as rank deficient.
RANK_TOLERANCE = 1e-10

# A Hermitian input whose most negative eigenvalue is beyond -PSD_TOLERANCE
# times its trace is rejected as not positive semi-definite.
PSD_TOLERANCE = 1e-9


def validate_matrix(h: np.ndarray, name: str = "matrix") -> np.ndarray:
    """Check the channel-matrix invariants: 2-D, at least 1x1, finite entries.

    Returns the input as a complex128 array.
    """
    h = np.asarray(h, dtype=np.complex128)
    if h.ndim != 2:
        raise DimensionError(f"{name} must be 2-D, got ndim={h.ndim}")
    if h.shape[0] < 1 or h.shape[1] < 1:
        raise DimensionError(f"{name} must be at least 1x1, got shape {h.shape}")
    if not np.all(np.isfinite(h.real)) or not np.all(np.isfinite(h.imag)):
        raise NumericalDomainError(f"{name} contains non-finite entries")
    return h


def hermitian_gram(h: np.ndarray) -> np.ndarray:
    """Return the Gram product H H^H (Hermitian positive semi-definite)."""
    h = validate_matrix(h, "H")
    return h @ h.conj().T


def log_det_capacity(a: np.ndarray, scale: float) -> float:
    """Return log2 det(scale*A + I) for Hermitian PSD A, in b/s/Hz.

    The determinant is evaluated through a Cholesky factorization in
    log-space, never by naive expansion, so arguments with determinants of
    1e12 and beyond stay exact to machine precision. A is symmetrized
    defensively as (A + A^H)/2 before use.

    Raises DimensionError for non-square A and NumericalDomainError when A
    has an eigenvalue below -PSD_TOLERANCE times its trace.
    """
    a = validate_matrix(a, "A")
    if a.shape[0] != a.shape[1]:
        raise DimensionError(f"A must be square, got shape {a.shape}")
    if scale < 0:
        raise NumericalDomainError(f"scale must be >= 0, got {scale}")

    a_sym = (a + a.conj().T) / 2.0
    eigs = np.linalg.eigvalsh(a_sym)
    trace = float(np.real(np.trace(a_sym)))
    if eigs[0] < -PSD_TOLERANCE * max(trace, 0.0):
        raise NumericalDomainError(
            f"A is not PSD: min eigenvalue {eigs[0]:.3e} below tolerance "
            f"{-PSD_TOLERANCE * max(trace, 0.0):.3e}"
        )

    m = scale * a_sym + np.eye(a.shape[0], dtype=np.complex128)
    try:
        chol = np.linalg.cholesky(m)
        return float(2.0 * np.sum(np.log2(np.abs(np.diag(chol)))))
    except np.linalg.LinAlgError:
        # Borderline PSD input (tiny negative eigenvalues within tolerance)
        # combined with a large scale can defeat Cholesky; clamp and sum.
        return float(np.sum(np.log2(1.0 + scale * np.clip(eigs, 0.0, None))))


def pseudo_inverse(h: np.ndarray) -> np.ndarray:
    """Return the Moore-Penrose pseudo-inverse H^+ of a full-row-rank H.

    Computed by SVD; H must satisfy rows <= cols and have all singular
    values above RANK_TOLERANCE times the largest one, so that H H^+ = I.

    Raises DimensionError when rows > cols and SingularMatrixError (carrying
    the offending singular-value ratio) when rank deficient.
    """
    h = validate_matrix(h, "H")
    rows, cols = h.shape
    if rows > cols:
        raise DimensionError(
            f"pseudo-inverse precoder needs rows <= cols, got {rows}x{cols}"
        )
    u, s, vh = np.linalg.svd(h, full_matrices=False)
    ratio = float(s[-1] / s[0]) if s[0] > 0 else 0.0
    if ratio <= RANK_TOLERANCE:
        raise SingularMatrixError(
            f"matrix is rank deficient (singular-value ratio {ratio:.3e})",
            sv_ratio=ratio,
        )
    return (vh.conj().T * (1.0 / s)) @ u.conj().T
