"""Calculus of linear functionals on a finite quantum group.

Functionals are stored by their values on the basis, phi(b_i) = coeffs[i].
Convolution is (phi * psi) = (phi (x) psi) o Delta; the box product is the
dual multiplication transported through the inverse Fourier transform.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    CrossCheckFailed,
    HostMismatch,
    InconsistentClassification,
    NotIdempotent,
    VerificationFailed,
)
from .linalg import DEFAULT_TOL, Tolerance, cesaro_projection, kernel_basis, psd_check, rel_residual, sup_norm
from .qgroup import FiniteQuantumHypergroup, _as_coeffs


@dataclass(eq=False)
class Functional:
    """A linear functional phi on the host, phi(b_i) = coeffs[i]."""

    host: FiniteQuantumHypergroup
    coeffs: np.ndarray

    def __post_init__(self):
        self.coeffs = _as_coeffs(self.coeffs, self.host.dim)

    def __call__(self, element) -> complex:
        return complex(np.dot(self.coeffs, _as_coeffs(element, self.host.dim)))

    def compose_antipode(self) -> "Functional":
        return Functional(self.host, self.host.antipode.T @ self.coeffs)

    def distance(self, other: "Functional") -> float:
        _require_same_host(self, other)
        return sup_norm(self.coeffs - other.coeffs)


def _require_same_host(*fs: Functional) -> FiniteQuantumHypergroup:
    host = fs[0].host
    for f in fs[1:]:
        if not host.same_host(f.host):
            raise HostMismatch("functionals live on different host algebras")
    return host


def counit_functional(host: FiniteQuantumHypergroup) -> Functional:
    return Functional(host, host.counit.copy())


def haar_functional(host: FiniteQuantumHypergroup) -> Functional:
    return Functional(host, host.haar.copy())


def convolve(phi: Functional, psi: Functional) -> Functional:
    """(phi * psi)(b_i) = sum_{j,k} coproduct[i,j,k] phi(b_j) psi(b_k)."""
    host = _require_same_host(phi, psi)
    out = np.einsum("ijk,j,k->i", host.coproduct, phi.coeffs, psi.coeffs)
    return Functional(host, out)


def convolution_matrix(phi: Functional) -> np.ndarray:
    """Matrix of psi -> phi * psi on functional coefficient vectors."""
    return np.tensordot(phi.host.coproduct, phi.coeffs, axes=([1], [0]))


def convolution_power(phi: Functional, n: int) -> Functional:
    """n-fold star power, with the counit as the zeroth power."""
    host = phi.host
    out = counit_functional(host)
    for _ in range(n):
        out = convolve(phi, out)
    return out


def gram_of(phi: Functional) -> np.ndarray:
    """Gram matrix [phi(b_i^* b_j)], PSD exactly when phi is positive."""
    host = phi.host
    vals = np.tensordot(host.mult, phi.coeffs, axes=([2], [0]))  # [l, j] = phi(b_l b_j)
    return host.invol @ vals


def is_state(phi: Functional, tol: Tolerance = DEFAULT_TOL) -> bool:
    """phi(1) = 1 within tolerance and the Gram matrix [phi(b_i^* b_j)] is PSD."""
    host = phi.host
    one = complex(np.dot(host.unit, phi.coeffs))
    if abs(one - 1.0) > tol.eps_eq * max(1.0, abs(one)):
        return False
    return psd_check(gram_of(phi), tol)


def is_idempotent_state(phi: Functional, tol: Tolerance = DEFAULT_TOL) -> bool:
    if not is_state(phi, tol):
        return False
    return rel_residual(convolve(phi, phi).coeffs, phi.coeffs) <= tol.eps_eq


def inverse_fourier(phi: Functional) -> np.ndarray:
    """The unique element X with phi(a) = h(a X); raises SingularGram if h is degenerate."""
    host = phi.host
    return host._gram_solver @ phi.coeffs


def forward_fourier(host: FiniteQuantumHypergroup, a) -> Functional:
    """The functional b -> h(b a)."""
    return Functional(host, host.bilinear_gram @ _as_coeffs(a, host.dim))


def extended_projection(phi: Functional) -> np.ndarray:
    """F^{-1}(phi) rescaled so the counit takes value 1.

    For idempotent states this is the associated group-like projection; the
    same normalisation extends the assignment to any functional with
    counit(F^{-1} phi) != 0.
    """
    host = phi.host
    x = inverse_fourier(phi)
    scale = complex(np.dot(host.counit, x))
    if abs(scale) < 1e-12:
        raise VerificationFailed("counit of the inverse Fourier transform vanishes")
    return x / scale


def associated_projection(phi: Functional, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Group-like projection p with phi(a) = h(p a p)/h(p), post-verified."""
    if not is_idempotent_state(phi, tol):
        raise NotIdempotent("associated projection needs an idempotent state")
    host = phi.host
    p = extended_projection(phi)
    checks = {
        "selfadjoint": rel_residual(host.adjoint(p), p),
        "idempotent": rel_residual(host.multiply(p, p), p),
    }
    hp = host.haar_of(p)
    if abs(hp) < 1e-12:
        raise VerificationFailed("haar value of the projection vanishes")
    sandwich = np.array([
        host.haar_of(host.multiply(p, host.multiply(host.basis_element(i), p))) / hp
        for i in range(host.dim)
    ])
    checks["represents_phi"] = rel_residual(sandwich, phi.coeffs)
    checks["fourier_relation"] = rel_residual(inverse_fourier(phi), p / hp)
    bad = {k: v for k, v in checks.items() if v > tol.eps_eq}
    if bad:
        raise VerificationFailed(f"projection identities failed: {bad}")
    return p


@dataclass
class NullSpaceResult:
    vectors: list[np.ndarray]
    selfadjoint: bool

    @property
    def dim(self) -> int:
        return len(self.vectors)


def null_space(phi: Functional, tol: Tolerance = DEFAULT_TOL) -> NullSpaceResult:
    """Basis of N_phi = {a : a p_phi = 0}, plus selfadjointness of its span."""
    host = phi.host
    p = associated_projection(phi, tol)
    vectors = kernel_basis(host.right_mult_matrix(p), tol)
    selfadjoint = True
    if vectors:
        k = np.column_stack(vectors)
        proj = k @ k.conj().T
        for v in vectors:
            vstar = host.adjoint(v)
            if sup_norm(vstar - proj @ vstar) > tol.eps_eq * max(1.0, sup_norm(vstar)):
                selfadjoint = False
                break
    return NullSpaceResult(vectors, selfadjoint)


def s_invariance_check(phi: Functional, tol: Tolerance = DEFAULT_TOL) -> bool:
    return rel_residual(phi.compose_antipode().coeffs, phi.coeffs) <= tol.eps_eq


@dataclass
class IdempotentClassification:
    is_idempotent: bool
    is_state: bool
    projection: np.ndarray | None
    is_haar: bool | None
    null_space_dim: int
    null_space_selfadjoint: bool | None


def classify_idempotent(phi: Functional, tol: Tolerance = DEFAULT_TOL) -> IdempotentClassification:
    """Classify an idempotent state as Haar/non-Haar by two independent routes.

    Haar means "arises from a quantum subgroup": equivalent to the associated
    projection being central, and to the null space being selfadjoint.  Both
    routes are computed and must agree.
    """
    state = is_state(phi, tol)
    idem = state and rel_residual(convolve(phi, phi).coeffs, phi.coeffs) <= tol.eps_eq
    if not idem:
        return IdempotentClassification(False, state, None, None, 0, None)
    host = phi.host
    p = associated_projection(phi, tol)
    lp = host.left_mult_matrix(p)
    rp = host.right_mult_matrix(p)
    central = rel_residual(lp, rp) <= tol.eps_eq
    ns = null_space(phi, tol)
    if central != ns.selfadjoint:
        raise InconsistentClassification(
            f"centrality says haar={central}, null space says haar={ns.selfadjoint}"
        )
    return IdempotentClassification(True, True, p, central, ns.dim, ns.selfadjoint)


def box_product(phi: Functional, psi: Functional, tol: Tolerance = DEFAULT_TOL) -> Functional:
    """The product transported from the algebra by the inverse Fourier transform.

    Primary route: F^{-1}(phi (*) psi) = (F^{-1}phi)(F^{-1}psi).  Cross-checked
    against the direct Sweedler-style formula
    (phi (*) psi)(x) = (1/h(eta)) sum phi(S(eta_(2)) x) psi(eta_(1))
    evaluated through the coproduct of the Haar element (S^{-1} = S here).
    """
    host = _require_same_host(phi, psi)
    a = inverse_fourier(phi)
    b = inverse_fourier(psi)
    fourier_route = forward_fourier(host, host.multiply(a, b))

    eta = host.haar_element
    h_eta = host.haar_of(eta)
    t_eta = host.comultiply(eta).mat                       # eta_(1) on rows, eta_(2) on cols
    # v[k, i] = phi(S(b_k) b_i)
    sviaM = np.einsum("ak,aim->kim", host.antipode, host.mult)
    v = np.tensordot(sviaM, phi.coeffs, axes=([2], [0]))
    direct = np.einsum("jk,ki,j->i", t_eta, v, psi.coeffs) / h_eta
    if rel_residual(fourier_route.coeffs, direct) > tol.eps_eq:
        raise CrossCheckFailed("box product: Fourier route and Sweedler route disagree")
    return fourier_route


def dual_idempotent(phi: Functional, dual_host: FiniteQuantumHypergroup | None = None,
                    tol: Tolerance = DEFAULT_TOL) -> Functional:
    """The evaluation functional omega -> omega(p_phi) on the dual quantum group.

    Pass dual_host to keep several idempotents on one shared dual instance.
    """
    p = associated_projection(phi, tol)
    if dual_host is None:
        from .qgroup import dual as _dual
        dual_host = _dual(phi.host, tol)
    out = Functional(dual_host, p.copy())
    if not is_idempotent_state(out, tol):
        raise VerificationFailed("dual functional is not an idempotent state on the dual")
    return out


@dataclass
class DiscoveryResult:
    idempotents: list[Functional]
    dropped: int


def random_state(host: FiniteQuantumHypergroup, rng: np.random.Generator,
                 sparse: bool = True) -> Functional:
    """State a -> h(c^* a c)/h(c^* c) for a random element c.

    With sparse=True the support of c is a Bernoulli(1/2) mask over the
    basis, so repeated draws explore corners of the algebra instead of only
    faithful states (whose Cesaro limit is always the Haar state).
    """
    n = host.dim
    while True:
        c = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        if sparse:
            mask = rng.random(n) < 0.5
            if not mask.any():
                continue
            c = c * mask
        cstar = host.adjoint(c)
        sandwich = host.right_mult_matrix(c) @ host.left_mult_matrix(cstar)
        coeffs = sandwich.T @ host.haar
        total = complex(np.dot(host.unit, coeffs))      # h(c^* c) > 0 for c != 0
        if abs(total) > 1e-12:
            return Functional(host, coeffs / total)


def cesaro_limit(phi: Functional, tol: Tolerance = DEFAULT_TOL) -> Functional:
    """Cesaro limit of the convolution powers of phi, via the spectral projection."""
    host = phi.host
    p = cesaro_projection(convolution_matrix(phi), tol)
    return Functional(host, p @ host.counit)


def discover_idempotents(host: FiniteQuantumHypergroup, seeds: int,
                         tol: Tolerance = DEFAULT_TOL, rng_seed: int = 0,
                         cluster_radius: float = 1e-6) -> DiscoveryResult:
    """Heuristic search for idempotent states by Cesaro limits of random states.

    Each seed state is averaged to its limiting idempotent, post-verified,
    and clustered within cluster_radius.  Non-convergent or non-verifying
    seeds are dropped and counted.  No completeness claim beyond cases where
    the literature provides one.
    """
    from .errors import NotPowerBounded

    rng = np.random.default_rng(rng_seed)
    found: list[Functional] = []
    dropped = 0
    for _ in range(seeds):
        phi = random_state(host, rng)
        try:
            omega = cesaro_limit(phi, tol)
        except NotPowerBounded:
            dropped += 1
            continue
        if not is_idempotent_state(omega, tol):
            dropped += 1
            continue
        for known in found:
            if sup_norm(known.coeffs - omega.coeffs) <= cluster_radius:
                break
        else:
            found.append(omega)
    found.sort(key=lambda f: tuple(
        (round(z.real, 9), round(z.imag, 9)) for z in f.coeffs))
    return DiscoveryResult(found, dropped)
