"""Dense linear-operator core for frame verification.

All operators are plain numpy matrices over float64 or complex128.  The
module provides adjoints, Hermitian spectral decompositions, operator powers
of positive-definite matrices, orthonormal subspace bases with their
projections, Loewner-order interval tests, and two small operator lemmas the
verification checks lean on.  Every function is pure and never mutates its
arguments.
"""

from __future__ import annotations

import enum
from typing import NamedTuple

import numpy as np

__all__ = [
    "RTOL",
    "HTOL",
    "PDTOL",
    "RKTOL",
    "PARSEVAL_TOL",
    "Field",
    "NotSquare",
    "NotHermitian",
    "NotPositiveDefinite",
    "NotOrthonormal",
    "ZeroSubspace",
    "ShapeMismatch",
    "ZeroLeadingCoefficient",
    "SpectralDecomposition",
    "LoewnerMargin",
    "as_operator",
    "as_vector",
    "adjoint",
    "inner",
    "operator_norm",
    "symmetrize",
    "hermitian_violation",
    "identity_like",
    "hermitian_eig",
    "psd_power",
    "orthonormal_basis",
    "projection",
    "loewner_check",
    "quad_bound",
    "projected_adjoint_residual",
    "complement_identity_residual",
]

# Default tolerances.  Double precision at dimensions <= 64 keeps rounding
# error orders of magnitude below all of these; every consumer may override
# them per call.
RTOL = 1e-9  # relative residual tolerance
HTOL = 1e-10  # Hermitian-symmetry gate, relative to the operator norm
PDTOL = 1e-10  # eigenvalue floor for positive definiteness
RKTOL = 1e-10  # numerical-rank threshold, relative to the largest singular value
PARSEVAL_TOL = 1e-8  # ||S - I|| threshold classifying a frame as Parseval


class Field(enum.Enum):
    """Scalar field of the underlying inner-product spaces."""

    REAL = "real"
    COMPLEX = "complex"

    @property
    def dtype(self) -> np.dtype:
        return np.dtype(np.float64 if self is Field.REAL else np.complex128)


class NotSquare(ValueError):
    """Operation requires a square operator."""


class NotHermitian(ValueError):
    """Operator fails the Hermitian-symmetry gate."""


class NotPositiveDefinite(ValueError):
    """Hermitian operator has an eigenvalue at or below the positivity floor."""


class NotOrthonormal(ValueError):
    """Matrix columns are not orthonormal."""


class ZeroSubspace(ValueError):
    """All spanning vectors are numerically zero."""


class ShapeMismatch(ValueError):
    """Operands have incompatible shapes."""


class ZeroLeadingCoefficient(ValueError):
    """Quadratic bound needs a nonzero leading coefficient."""


class SpectralDecomposition(NamedTuple):
    """Ascending real eigenvalues and the matching orthonormal eigenvectors."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


class LoewnerMargin(NamedTuple):
    """Smallest eigenvalues of T - L and U - T plus the interval verdict."""

    lower_margin: float
    upper_margin: float
    passed: bool


_DTYPES = (np.dtype(np.float64), np.dtype(np.complex128))


def _coerce(a) -> np.ndarray:
    m = np.asarray(a)
    if m.dtype not in _DTYPES:
        m = m.astype(np.complex128 if np.iscomplexobj(m) else np.float64)
    return m


def as_operator(a) -> np.ndarray:
    """Validate ``a`` as a dense 2-D operator with finite entries."""
    m = _coerce(a)
    if m.ndim != 2 or m.shape[0] < 1 or m.shape[1] < 1:
        raise ShapeMismatch(f"expected a 2-D operator, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("operator entries must be finite")
    return m


def as_vector(f, dim: int | None = None) -> np.ndarray:
    """Validate ``f`` as a finite 1-D vector, optionally of length ``dim``."""
    v = _coerce(f)
    if v.ndim != 1:
        raise ShapeMismatch(f"expected a 1-D vector, got shape {v.shape}")
    if dim is not None and v.shape[0] != dim:
        raise ShapeMismatch(f"expected a vector of length {dim}, got {v.shape[0]}")
    if not np.all(np.isfinite(v)):
        raise ValueError("vector entries must be finite")
    return v


def adjoint(a: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return np.conjugate(np.asarray(a)).T


def inner(x: np.ndarray, y: np.ndarray) -> complex:
    """Inner product <x, y>, linear in ``x`` and conjugate-linear in ``y``."""
    return complex(np.vdot(y, x))


def operator_norm(a: np.ndarray) -> float:
    """Spectral norm (largest singular value)."""
    return float(np.linalg.norm(np.asarray(a), 2))


def symmetrize(a: np.ndarray) -> np.ndarray:
    """Hermitian part (A + A*) / 2."""
    return 0.5 * (a + adjoint(a))


def hermitian_violation(a: np.ndarray) -> float:
    """Spectral norm of A - A*."""
    return operator_norm(a - adjoint(a))


def identity_like(a: np.ndarray) -> np.ndarray:
    return np.eye(a.shape[0], dtype=a.dtype)


def hermitian_eig(a, htol: float = HTOL) -> SpectralDecomposition:
    """Spectral decomposition of a Hermitian operator.

    The input is gated by ``||A - A*|| <= htol * ||A||`` and symmetrized
    before decomposition so rounding noise cannot change the code path.
    Eigenvalues come back ascending with orthonormal eigenvectors.
    """
    a = as_operator(a)
    if a.shape[0] != a.shape[1]:
        raise NotSquare(f"expected a square operator, got shape {a.shape}")
    if hermitian_violation(a) > htol * operator_norm(a):
        raise NotHermitian("operator is not Hermitian within tolerance")
    w, u = np.linalg.eigh(symmetrize(a))
    return SpectralDecomposition(w, u)


def psd_power(a, p: float, pdtol: float = PDTOL, htol: float = HTOL) -> np.ndarray:
    """Real power of a Hermitian positive-definite operator.

    Computed spectrally as U diag(w**p) U*; the result is Hermitian.  Raises
    ``NotPositiveDefinite`` when the smallest eigenvalue is at or below
    ``pdtol``.
    """
    dec = hermitian_eig(a, htol=htol)
    if dec.eigenvalues[0] <= pdtol:
        raise NotPositiveDefinite(
            f"smallest eigenvalue {dec.eigenvalues[0]:.3e} is not above {pdtol:.1e}"
        )
    u = dec.eigenvectors
    return (u * dec.eigenvalues**p) @ adjoint(u)


def orthonormal_basis(vectors, rktol: float = RKTOL) -> np.ndarray:
    """Orthonormal columns spanning the same subspace as ``vectors``.

    ``vectors`` is either a matrix whose columns span the subspace or a
    sequence of 1-D vectors.  Rank-deficient input is compressed to its
    numerical rank (singular values above ``rktol`` times the largest).
    """
    if isinstance(vectors, np.ndarray) and vectors.ndim == 2:
        m = as_operator(vectors)
    else:
        cols = [as_vector(v) for v in vectors]
        if not cols:
            raise ZeroSubspace("no spanning vectors given")
        m = np.column_stack(cols)
    u, s, _ = np.linalg.svd(m, full_matrices=False)
    if s.size == 0 or s[0] <= np.finfo(np.float64).tiny:
        raise ZeroSubspace("all spanning vectors are numerically zero")
    rank = int(np.count_nonzero(s > rktol * s[0]))
    return u[:, :rank]


def projection(basis, rtol: float = RTOL) -> np.ndarray:
    """Orthogonal projection onto the column span of an orthonormal basis."""
    b = as_operator(basis)
    gram = adjoint(b) @ b
    if operator_norm(gram - identity_like(gram)) > rtol:
        raise NotOrthonormal("basis columns are not orthonormal within tolerance")
    return b @ adjoint(b)


def _as_bound(x, like: np.ndarray) -> np.ndarray:
    if np.isscalar(x) or (isinstance(x, np.ndarray) and x.ndim == 0):
        return complex(x).real * identity_like(like) if np.iscomplexobj(like) else float(x) * identity_like(like)
    return as_operator(x)


def loewner_check(t, lower, upper, tol: float, htol: float = HTOL) -> LoewnerMargin:
    """Test the operator interval L <= T <= U in the Loewner order.

    ``lower``/``upper`` may be operators or scalars (taken as multiples of
    the identity).  Margins are the smallest eigenvalues of T - L and U - T;
    the verdict passes iff both are >= -tol.  Hermitian symmetry of the
    inputs is gated relative to the largest operand norm so that nearly-zero
    operands do not trip a relative test against their own size.
    """
    t = as_operator(t)
    if t.shape[0] != t.shape[1]:
        raise ShapeMismatch(f"expected a square operator, got shape {t.shape}")
    lo = _as_bound(lower, t)
    up = _as_bound(upper, t)
    if lo.shape != t.shape or up.shape != t.shape:
        raise ShapeMismatch("interval operands must share the operator's shape")
    scale = max(operator_norm(t), operator_norm(lo), operator_norm(up), 1.0)
    for x in (t, lo, up):
        if hermitian_violation(x) > htol * scale:
            raise NotHermitian("interval operands must be Hermitian within tolerance")
    lower_margin = float(np.linalg.eigvalsh(symmetrize(t - lo))[0])
    upper_margin = float(np.linalg.eigvalsh(symmetrize(up - t))[0])
    return LoewnerMargin(lower_margin, upper_margin, lower_margin >= -tol and upper_margin >= -tol)


def quad_bound(a: float, b: float, c: float) -> float:
    """Extremal value (4ac - b^2) / (4a) of the real quadratic a t^2 + b t + c.

    For any self-adjoint ``u`` this bounds the quadratic form of
    a u^2 + b u + c over unit vectors: from below when ``a > 0`` and from
    above when ``a < 0``.
    """
    if a == 0:
        raise ZeroLeadingCoefficient("leading coefficient must be nonzero")
    return (4.0 * a * c - b * b) / (4.0 * a)


def projected_adjoint_residual(v_basis, t, rktol: float = RKTOL, rtol: float = RTOL) -> float:
    """Residual of the absorption identity P_V T* = P_V T* P_{TV}.

    ``v_basis`` holds orthonormal columns spanning V; TV is the image of V
    under ``t``, re-orthonormalized.  A numerically zero image leaves the
    projection onto TV as the zero operator.
    """
    t = as_operator(t)
    if t.shape[0] != t.shape[1]:
        raise ShapeMismatch(f"expected a square operator, got shape {t.shape}")
    b = as_operator(v_basis)
    if b.shape[0] != t.shape[0]:
        raise ShapeMismatch("basis and operator dimensions differ")
    p_v = projection(b, rtol=rtol)
    lhs = p_v @ adjoint(t)
    try:
        p_tv = projection(orthonormal_basis(t @ b, rktol=rktol), rtol=rtol)
    except ZeroSubspace:
        return operator_norm(lhs)
    return operator_norm(lhs - lhs @ p_tv)


def complement_identity_residual(u) -> float:
    """Residual of u - v = u^2 - v^2 for the complement v = I - u."""
    u = as_operator(u)
    if u.shape[0] != u.shape[1]:
        raise NotSquare(f"expected a square operator, got shape {u.shape}")
    v = identity_like(u) - u
    return operator_norm((u - v) - (u @ u - v @ v))
