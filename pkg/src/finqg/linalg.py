"""Dense complex linear algebra underneath everything else.

All matrices here are small (n up to a couple hundred), dense, complex
double precision.  Functions are pure and never mutate their arguments.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotPowerBounded, SingularSystem


@dataclass(frozen=True)
class Tolerance:
    """Relative thresholds for all numerical comparisons.

    eps_eq bounds relative equality residuals; eps_psd is the relative
    eigenvalue floor for positive-semidefiniteness tests.
    """

    eps_eq: float = 1e-9
    eps_psd: float = 1e-9

    def __post_init__(self):
        if self.eps_eq <= 0.0 or self.eps_psd <= 0.0:
            raise ValueError("tolerances must be strictly positive")


DEFAULT_TOL = Tolerance()


def sup_norm(x) -> float:
    x = np.asarray(x)
    return 0.0 if x.size == 0 else float(np.max(np.abs(x)))


def rel_residual(x, y) -> float:
    """Sup-norm of x - y relative to max(1, |x|, |y|)."""
    scale = max(1.0, sup_norm(x), sup_norm(y))
    return sup_norm(np.asarray(x) - np.asarray(y)) / scale


def close(x, y, tol: Tolerance = DEFAULT_TOL) -> bool:
    return rel_residual(x, y) <= tol.eps_eq


def solve_linear(a, b, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Solve a x = b, exactly or in the least-squares sense.

    Raises SingularSystem if the best solution leaves a residual above
    eps_eq * (|a| |x| + |b|), i.e. the system is inconsistent on a
    rank-deficient matrix.
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    x, _, _, _ = np.linalg.lstsq(a, b, rcond=None)
    residual = np.linalg.norm(a @ x - b)
    bound = tol.eps_eq * (np.linalg.norm(a, 2) * np.linalg.norm(x) + np.linalg.norm(b))
    if residual > max(bound, tol.eps_eq * 1e-6):
        raise SingularSystem(
            f"residual {residual:.3e} exceeds tolerance {bound:.3e}"
        )
    return x


def psd_check(g, tol: Tolerance = DEFAULT_TOL) -> bool:
    """True iff g is Hermitian within eps_eq and min eigenvalue >= -eps_psd*|g|."""
    g = np.asarray(g, dtype=complex)
    if g.ndim != 2 or g.shape[0] != g.shape[1]:
        raise ValueError("psd_check needs a square matrix")
    if g.size == 0:
        return True
    scale = float(np.linalg.norm(g, 2))
    if sup_norm(g - g.conj().T) > tol.eps_eq * max(1.0, scale):
        return False
    eigs = np.linalg.eigvalsh(0.5 * (g + g.conj().T))
    return bool(eigs[0] >= -tol.eps_psd * scale)


def kernel_basis(a, tol: Tolerance = DEFAULT_TOL) -> list[np.ndarray]:
    """Orthonormal basis of the numerical kernel (sigma <= eps_eq * sigma_max)."""
    a = np.asarray(a, dtype=complex)
    _, s, vh = np.linalg.svd(a)
    cutoff = tol.eps_eq * (s[0] if s.size else 0.0)
    rank = int(np.sum(s > cutoff))
    return [vh[i].conj() for i in range(rank, a.shape[1])]


def cesaro_projection(t, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Cesaro limit of the powers of t, as a spectral projection.

    Computed exactly as the projection onto ker(t - I) along ran(t - I);
    for power-bounded t this equals lim (1/n) sum_{k<n} t^k.  Raises
    NotPowerBounded when kernel and range fail to span, or when the
    resulting P does not satisfy P^2 = P, PT = TP = P within tolerance.
    """
    t = np.asarray(t, dtype=complex)
    n = t.shape[0]
    if t.shape != (n, n):
        raise ValueError("cesaro_projection needs a square matrix")
    a = t - np.eye(n)
    u, s, vh = np.linalg.svd(a)
    cutoff = tol.eps_eq * (s[0] if s.size and s[0] > 0 else 1.0)
    rank = int(np.sum(s > cutoff))
    kernel = vh[rank:].conj().T          # (n, n - rank)
    rng = u[:, :rank]                    # (n, rank)
    basis = np.hstack([kernel, rng])
    sb = np.linalg.svd(basis, compute_uv=False)
    if sb.size and sb[-1] <= 1e-6 * sb[0]:
        raise NotPowerBounded("ker(T-I) and ran(T-I) are not complementary")
    diag = np.zeros(n)
    diag[: n - rank] = 1.0
    p = (basis * diag) @ np.linalg.inv(basis)
    for name, lhs in (("P^2=P", p @ p), ("PT=P", p @ t), ("TP=P", t @ p)):
        if rel_residual(lhs, p) > tol.eps_eq:
            raise NotPowerBounded(f"projection check {name} failed")
    return p


def cesaro_average(t, tol: Tolerance = DEFAULT_TOL, max_doublings: int = 60) -> np.ndarray:
    """Iterative Cesaro averaging via the doubling identity.

    C_1 = I and C_{2n} = (C_n + T^n C_n)/2, with T^n kept by repeated
    squaring, so max_doublings=60 reaches 2^60 effective terms.  Stops when
    a doubling step changes the average by less than eps_eq.  Cross-check
    companion to cesaro_projection, not a replacement.
    """
    t = np.asarray(t, dtype=complex)
    n = t.shape[0]
    c = np.eye(n, dtype=complex)
    tpow = t.copy()
    for _ in range(max_doublings):
        nxt = 0.5 * (c + tpow @ c)
        if rel_residual(nxt, c) <= tol.eps_eq:
            return nxt
        c = nxt
        tpow = tpow @ tpow
    return c


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-ish random unitary from the QR of a complex Gaussian matrix."""
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))
