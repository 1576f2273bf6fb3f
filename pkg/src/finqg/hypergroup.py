"""Group-like projections and the compression to quantum subhypergroups.

A group-like projection p gives the corner A0 = pAp a hypergroup structure
through Delta0(b) = (p (x) p) Delta(b) (p (x) p), with counit, antipode and
Haar state inherited by restriction (h0 = h|_{A0} / h(p)).  Every idempotent
state is the Haar state of such a compression via its associated projection.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotGood, VerificationFailed
from .linalg import DEFAULT_TOL, Tolerance, psd_check, rel_residual, sup_norm
from .qgroup import (
    AxiomCheck,
    AxiomReport,
    FiniteQuantumHypergroup,
    _as_coeffs,
    _associativity_residual,
    _coassociativity_residual,
    _comult_multiplicative_exact,
    outer_pair,
)
from .states import Functional, IdempotentClassification, classify_idempotent


def group_like_residuals(host: FiniteQuantumHypergroup, p) -> dict[str, float]:
    """Residuals of all defining identities; left and right sandwiches are
    checked independently rather than derived from one another."""
    p = _as_coeffs(p, host.dim)
    dp = host.comultiply(p)
    pp = outer_pair(host, p, p).mat
    one = host.unit
    res = {
        "nonzero": 0.0 if sup_norm(p) > 1e-12 else 1.0,
        "selfadjoint": rel_residual(host.adjoint(p), p),
        "idempotent": rel_residual(host.multiply(p, p), p),
        "sandwich_right": rel_residual(dp.mul_right((one, p)).mat, pp),
        "sandwich_right_flipped": rel_residual(dp.mul_left((one, p)).mat, pp),
        "sandwich_left": rel_residual(dp.mul_right((p, one)).mat, pp),
        "sandwich_left_flipped": rel_residual(dp.mul_left((p, one)).mat, pp),
        "antipode_fixed": rel_residual(host.apply_antipode(p), p),
        "counit_one": abs(host.counit_of(p) - 1.0),
    }
    return res


def is_group_like(host: FiniteQuantumHypergroup, p, tol: Tolerance = DEFAULT_TOL) -> bool:
    """p = p^*, p^2 = p and Delta(p)(1 (x) p) = p (x) p."""
    r = group_like_residuals(host, p)
    keys = ("nonzero", "selfadjoint", "idempotent", "sandwich_right")
    return all(r[k] <= tol.eps_eq for k in keys)


def is_good_group_like(host: FiniteQuantumHypergroup, p, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Group-like with additionally Delta(p)(p (x) 1) = p (x) p and S(p) = p."""
    r = group_like_residuals(host, p)
    return all(v <= tol.eps_eq for v in r.values())


@dataclass
class CompressionResult:
    """Corner hypergroup pAp with the compression map pi(a) = p a p.

    corner_basis rows are the coefficients (in the ambient algebra) of the
    h-orthonormal basis chosen for the corner; pi maps ambient coefficient
    vectors to corner coefficients.
    """

    hypergroup: FiniteQuantumHypergroup
    pi: np.ndarray              # (m, n)
    corner_basis: np.ndarray    # (m, n)
    projection: np.ndarray      # (n,)

    @property
    def dim(self) -> int:
        return self.hypergroup.dim

    def compress_element(self, a) -> np.ndarray:
        return self.pi @ _as_coeffs(a, self.pi.shape[1])

    def embed_element(self, x) -> np.ndarray:
        return _as_coeffs(x, self.dim) @ self.corner_basis


def compress(host: FiniteQuantumHypergroup, p, tol: Tolerance = DEFAULT_TOL,
             labels: list[str] | None = None) -> CompressionResult:
    """Build the quantum hypergroup pAp for a good group-like projection p.

    The corner basis comes from pivoted Gram-Schmidt of the compressed basis
    elements p b_i p against the inner product <a, b> = h(a^* b) (pivot order
    = input order, so the construction is deterministic).  Structure
    constants are re-expanded in that basis; every re-expansion is verified
    to reproduce its element, which certifies that multiplication and the
    compressed coproduct stay inside the corner.
    """
    p = _as_coeffs(p, host.dim)
    if not is_good_group_like(host, p, tol):
        raise NotGood("compression requires a good group-like projection")
    n = host.dim
    herm = host.invol @ host.bilinear_gram          # <a, b> = conj(a) . herm . b

    def inner(a, b) -> complex:
        return complex(a.conj() @ herm @ b)

    sandwich = host.left_mult_matrix(p) @ host.right_mult_matrix(p)
    basis: list[np.ndarray] = []
    candidate_scale = max(
        np.sqrt(max(inner(sandwich[:, i], sandwich[:, i]).real, 0.0)) for i in range(n)
    )
    for i in range(n):
        v = sandwich[:, i].copy()
        for _ in range(2):                          # re-orthogonalise once for stability
            for f in basis:
                v = v - inner(f, v) * f
        norm = np.sqrt(max(inner(v, v).real, 0.0))
        if norm > 1e-9 * max(candidate_scale, 1.0):
            basis.append(v / norm)
    m = len(basis)
    f = np.array(basis)                              # (m, n) rows
    expand_mat = f.conj() @ herm                     # (m, n): x -> corner coefficients

    def expand(x, what: str) -> np.ndarray:
        coef = expand_mat @ x
        if rel_residual(coef @ f, x) > tol.eps_eq:
            raise VerificationFailed(f"{what} does not lie in the corner pAp")
        return coef

    mult0 = np.zeros((m, m, m), dtype=complex)
    for a in range(m):
        for b in range(m):
            mult0[a, b] = expand(host.multiply(f[a], f[b]), "corner product")
    unit0 = expand(p, "corner unit")
    invol0 = np.array([expand(host.adjoint(f[a]), "corner adjoint") for a in range(m)])
    cop0 = np.zeros((m, m, m), dtype=complex)
    for a in range(m):
        v = sandwich @ host.comultiply(f[a]).mat @ sandwich.T
        tau = expand_mat @ v @ expand_mat.T
        if rel_residual(f.T @ tau @ f, v) > tol.eps_eq:
            raise VerificationFailed("compressed coproduct does not lie in the corner")
        cop0[a] = tau
    counit0 = f @ host.counit
    antipode0 = np.array([expand(host.apply_antipode(f[a]), "corner antipode")
                          for a in range(m)]).T
    haar_p = host.haar_of(p)
    if haar_p.real <= 0:
        raise VerificationFailed("h(p) must be positive")
    haar0 = (f @ host.haar) / haar_p
    eta0 = expand(host.haar_element, "Haar element")

    if labels is None:
        labels = [f"f{a}" for a in range(m)]
    hyper = FiniteQuantumHypergroup(
        dim=m, basis_labels=labels, mult=mult0, unit=unit0, invol=invol0,
        coproduct=cop0, counit=counit0, antipode=antipode0, haar=haar0,
        haar_element=eta0,
    )
    pi = expand_mat @ sandwich
    return CompressionResult(hyper, pi, f, p)


def coproduct_positivity_residual(h: FiniteQuantumHypergroup, samples: int = 50,
                                  rng_seed: int = 0, tol: Tolerance = DEFAULT_TOL) -> float:
    """Worst PSD defect of Delta(c^* c) over random c, in the GNS picture.

    Delta of a positive element must have a PSD Gram representation
    Q[(c,d),(c',d')] = (h (x) h)((f_c (x) f_d)^* z (f_{c'} (x) f_{d'})).
    Returns the most negative scaled eigenvalue seen (0.0 when all PSD).
    """
    rng = np.random.default_rng(rng_seed)
    n = h.dim
    gram = h.bilinear_gram
    t3 = np.einsum("jal,lkm,m->jak", h.mult, h.mult, h.haar)   # h(b_j b_a b_k)
    u = np.einsum("cj,jak->cak", h.invol, t3)                  # h(f_c^* b_a f_k)
    worst = 0.0
    for _ in range(samples):
        c = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        pos = h.multiply(h.adjoint(c), c)
        z = h.comultiply(pos).mat
        q = np.einsum("ab,cak,dbl->cdkl", z, u, u).reshape(n * n, n * n)
        q = 0.5 * (q + q.conj().T)
        eigs = np.linalg.eigvalsh(q)
        scale = max(1.0, float(np.max(np.abs(eigs))))
        worst = max(worst, max(0.0, -float(eigs[0])) / scale)
    return worst


def verify_hypergroup(h: FiniteQuantumHypergroup, tol: Tolerance = DEFAULT_TOL,
                      positivity_samples: int = 50, rng_seed: int = 0) -> AxiomReport:
    """Residual report for every finite-quantum-hypergroup invariant.

    Same carrier checks as a quantum group minus multiplicativity of the
    coproduct, plus complete-positivity spot checks of Delta on random
    positive elements.
    """
    from .qgroup import _shared_checks

    checks = _shared_checks(h, tol)
    pos = coproduct_positivity_residual(h, positivity_samples, rng_seed, tol)
    checks.append(AxiomCheck("coproduct_positive", pos, pos <= tol.eps_psd,
                             note=f"{positivity_samples} random positive elements"))
    n = h.dim
    twist = rel_residual(
        np.array([h.adjoint(h.apply_antipode(h.adjoint(h.apply_antipode(h.basis_element(i)))))
                  for i in range(n)]).T,
        np.eye(n),
    )
    checks.append(AxiomCheck("antipode_star_twisted_involutive", twist, twist <= tol.eps_eq,
                             note="S(S(a)^*)^* = a"))
    s_ranks = np.linalg.svd(h.antipode, compute_uv=False)
    bij = 0.0 if s_ranks[-1] > 1e-9 * s_ranks[0] else 1.0
    checks.append(AxiomCheck("antipode_bijective", bij, bij == 0.0))
    return AxiomReport(checks)


def coproduct_multiplicativity_residual(h: FiniteQuantumHypergroup) -> float:
    """Exact residual of Delta being an algebra map (all basis pairs)."""
    return _comult_multiplicative_exact(h.mult, h.coproduct)


@dataclass
class CanonicalSubhypergroup:
    """Output of the canonical-subhypergroup pipeline for an idempotent state."""

    compression: CompressionResult
    classification: IdempotentClassification
    report: AxiomReport
    haar_factorisation_residual: float
    coproduct_mult_residual: float

    @property
    def hypergroup(self) -> FiniteQuantumHypergroup:
        return self.compression.hypergroup

    @property
    def pi(self) -> np.ndarray:
        return self.compression.pi

    @property
    def is_quantum_group(self) -> bool:
        return self.classification.is_haar


def canonical_subhypergroup(phi: Functional, tol: Tolerance = DEFAULT_TOL,
                            positivity_samples: int = 20) -> CanonicalSubhypergroup:
    """Realise an idempotent state as the Haar state on a compression.

    Computes the associated projection, compresses, verifies the hypergroup
    axioms and checks phi = h0 o pi on all basis elements; when phi is a
    Haar idempotent the compressed coproduct must be multiplicative (the
    compression is then a quantum group).
    """
    host = phi.host
    cls = classify_idempotent(phi, tol)
    if not cls.is_idempotent:
        from .errors import NotIdempotent
        raise NotIdempotent("canonical subhypergroup needs an idempotent state")
    comp = compress(host, cls.projection, tol)
    report = verify_hypergroup(comp.hypergroup, tol, positivity_samples)
    if not report.ok:
        raise VerificationFailed("compressed hypergroup fails axiom verification:\n" + str(report))
    h0_pi = comp.hypergroup.haar @ comp.pi
    fact = rel_residual(h0_pi, phi.coeffs)
    if fact > tol.eps_eq:
        raise VerificationFailed("phi does not factor as h0 o pi")
    mult_res = coproduct_multiplicativity_residual(comp.hypergroup)
    if cls.is_haar and mult_res > tol.eps_eq:
        raise VerificationFailed(
            "Haar idempotent must compress to a quantum group "
            f"(multiplicativity residual {mult_res:.2e})")
    return CanonicalSubhypergroup(comp, cls, report, fact, mult_res)
