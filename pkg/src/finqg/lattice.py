"""Partial order, supremum and infimum on idempotent states.

phi1 < phi2 means phi1 * phi2 = phi2 (the Haar state is the top, the counit
the bottom).  The supremum is the Cesaro limit of star powers of phi1*phi2.
The infimum lives on the Fourier side: multiplying the associated group-like
projections and Cesaro-projecting recovers the largest idempotent below
both; this is the box-product Cesaro limit with the non-unital scalar
divided out (the box product of two states is only a positive multiple of a
state, so its literal power sequence is not normalised).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ClosureExplosion, CrossCheckFailed, VerificationFailed
from .linalg import DEFAULT_TOL, Tolerance, cesaro_projection, rel_residual, sup_norm
from .states import (
    Functional,
    _require_same_host,
    associated_projection,
    convolution_matrix,
    convolve,
    forward_fourier,
    is_idempotent_state,
)


def precedes(phi1: Functional, phi2: Functional, tol: Tolerance = DEFAULT_TOL) -> bool:
    """phi1 < phi2, cross-checked three ways.

    Primary test phi1*phi2 = phi2; equivalent forms phi2*phi1 = phi2 and,
    on the Fourier side, p1 p2 = p1 (the projection form of the box-product
    criterion).  Raises CrossCheckFailed if the routes disagree.
    """
    host = _require_same_host(phi1, phi2)
    r1 = rel_residual(convolve(phi1, phi2).coeffs, phi2.coeffs)
    r2 = rel_residual(convolve(phi2, phi1).coeffs, phi2.coeffs)
    p1 = associated_projection(phi1, tol)
    p2 = associated_projection(phi2, tol)
    r3 = rel_residual(host.multiply(p1, p2), p1)
    verdicts = [r <= tol.eps_eq for r in (r1, r2, r3)]
    if len(set(verdicts)) != 1:
        raise CrossCheckFailed(
            f"order cross-check disagrees: star {r1:.2e}, reversed {r2:.2e}, projection {r3:.2e}"
        )
    return verdicts[0]


def sup(phi1: Functional, phi2: Functional, tol: Tolerance = DEFAULT_TOL) -> Functional:
    """Supremum: Cesaro limit of (phi1*phi2)^{*k}, evaluated at the counit."""
    host = _require_same_host(phi1, phi2)
    both = convolve(phi1, phi2)
    proj = cesaro_projection(convolution_matrix(both), tol)
    result = Functional(host, proj @ host.counit)
    _post_verify_bound(result, (phi1, phi2), upper=True, tol=tol)
    return result


def inf(phi1: Functional, phi2: Functional, tol: Tolerance = DEFAULT_TOL) -> Functional:
    """Infimum via the projection product p1 p2, Cesaro-projected.

    Equals the box-product Cesaro limit after dividing out the scalar that
    the box product attaches to states; post-verified below both arguments.
    """
    host = _require_same_host(phi1, phi2)
    p1 = associated_projection(phi1, tol)
    p2 = associated_projection(phi2, tol)
    q = host.multiply(p1, p2)
    proj = cesaro_projection(host.left_mult_matrix(q), tol)
    p = proj @ host.unit
    hp = host.haar_of(p)
    if abs(hp) < 1e-12:
        raise VerificationFailed("infimum projection has vanishing Haar value")
    result = Functional(host, forward_fourier(host, p).coeffs / hp)
    _post_verify_bound(result, (phi1, phi2), upper=False, tol=tol)
    if rel_residual(associated_projection(result, tol), p) > tol.eps_eq:
        raise VerificationFailed("infimum projection does not match its idempotent")
    return result


def _post_verify_bound(result: Functional, pair, upper: bool, tol: Tolerance) -> None:
    if not is_idempotent_state(result, tol):
        raise VerificationFailed("lattice operation did not return an idempotent state")
    for phi in pair:
        ok = precedes(phi, result, tol) if upper else precedes(result, phi, tol)
        if not ok:
            kind = "supremum" if upper else "infimum"
            raise VerificationFailed(f"{kind} is not comparable with its arguments")


@dataclass
class IdempotentLattice:
    """Finite lattice of idempotent states with order and operation tables."""

    elements: list[Functional]
    order: np.ndarray       # order[i, j] True iff phi_i < phi_j
    joins: np.ndarray       # joins[i, j] = index of phi_i v phi_j
    meets: np.ndarray       # meets[i, j] = index of phi_i ^ phi_j
    labels: list[str] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.elements)

    def index_of(self, phi: Functional, radius: float = 1e-6) -> int:
        for i, el in enumerate(self.elements):
            if sup_norm(el.coeffs - phi.coeffs) <= radius:
                return i
        raise KeyError("functional is not an element of the lattice")

    def bottom(self) -> int:
        return int(np.nonzero(self.order.all(axis=1))[0][0])

    def top(self) -> int:
        return int(np.nonzero(self.order.all(axis=0))[0][0])


def build_lattice(idempotents: list[Functional], tol: Tolerance = DEFAULT_TOL,
                  max_closure: int = 512, match_radius: float = 1e-6,
                  labels: list[str] | None = None) -> IdempotentLattice:
    """Close a set of idempotent states under sup/inf and tabulate the order.

    New joins and meets are appended until the set is closed or max_closure
    is exceeded (ClosureExplosion).  The order matrix is checked to be a
    genuine partial order.
    """
    elements: list[Functional] = []
    names: list[str] = []
    for k, phi in enumerate(idempotents):
        if not is_idempotent_state(phi, tol):
            raise VerificationFailed(f"input {k} is not an idempotent state")
        if all(sup_norm(phi.coeffs - e.coeffs) > match_radius for e in elements):
            elements.append(phi)
            names.append(labels[k] if labels and k < len(labels) else f"phi{len(elements) - 1}")

    def locate(phi: Functional) -> int | None:
        for i, el in enumerate(elements):
            if sup_norm(el.coeffs - phi.coeffs) <= match_radius:
                return i
        return None

    frontier = True
    while frontier:
        frontier = False
        m = len(elements)
        for i in range(m):
            for j in range(i, m):
                for op in (sup, inf):
                    res = op(elements[i], elements[j], tol)
                    if locate(res) is None:
                        if len(elements) >= max_closure:
                            raise ClosureExplosion(
                                f"lattice closure exceeded {max_closure} elements")
                        elements.append(res)
                        names.append(f"phi{len(elements) - 1}")
                        frontier = True

    m = len(elements)
    order = np.zeros((m, m), dtype=bool)
    for i in range(m):
        for j in range(m):
            order[i, j] = precedes(elements[i], elements[j], tol)
    if not all(order[i, i] for i in range(m)):
        raise VerificationFailed("order is not reflexive")
    for i in range(m):
        for j in range(m):
            if i != j and order[i, j] and order[j, i]:
                raise VerificationFailed("order is not antisymmetric")
            for k in range(m):
                if order[i, j] and order[j, k] and not order[i, k]:
                    raise VerificationFailed("order is not transitive")

    joins = np.zeros((m, m), dtype=int)
    meets = np.zeros((m, m), dtype=int)
    for i in range(m):
        for j in range(i, m):
            ij = locate(sup(elements[i], elements[j], tol))
            ji = locate(inf(elements[i], elements[j], tol))
            if ij is None or ji is None:
                raise VerificationFailed("closure is not closed under sup/inf")
            joins[i, j] = joins[j, i] = ij
            meets[i, j] = meets[j, i] = ji
    return IdempotentLattice(elements, order, joins, meets, names)


@dataclass
class DistributivityViolation:
    triple: tuple[int, int, int]
    law: str        # "join-over-meet" or "meet-over-join"


def check_distributivity(lat: IdempotentLattice) -> list[DistributivityViolation]:
    """All triples violating either distributive law (empty iff distributive)."""
    m = len(lat)
    out: list[DistributivityViolation] = []
    for i in range(m):
        for j in range(m):
            for k in range(m):
                if lat.joins[i, lat.meets[j, k]] != lat.meets[lat.joins[i, j], lat.joins[i, k]]:
                    out.append(DistributivityViolation((i, j, k), "join-over-meet"))
                if lat.meets[i, lat.joins[j, k]] != lat.joins[lat.meets[i, j], lat.meets[i, k]]:
                    out.append(DistributivityViolation((i, j, k), "meet-over-join"))
    return out


def covering_pairs(lat: IdempotentLattice) -> list[tuple[int, int]]:
    m = len(lat)
    pairs = []
    for i in range(m):
        for j in range(m):
            if i == j or not lat.order[i, j]:
                continue
            if any(lat.order[i, k] and lat.order[k, j] for k in range(m) if k not in (i, j)):
                continue
            pairs.append((i, j))
    return pairs


def hasse_dot(lat: IdempotentLattice) -> str:
    """Hasse diagram of the lattice as a DOT digraph (edges point upward)."""
    lines = ["digraph idempotent_lattice {", "  rankdir=BT;"]
    for i, name in enumerate(lat.labels):
        lines.append(f'  n{i} [label="{name}"];')
    for i, j in covering_pairs(lat):
        lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def order_csv(lat: IdempotentLattice) -> str:
    """Order matrix as CSV; entry (i, j) is 1 iff phi_i < phi_j."""
    header = "," + ",".join(lat.labels)
    rows = [header]
    for i, name in enumerate(lat.labels):
        rows.append(name + "," + ",".join("1" if lat.order[i, j] else "0"
                                          for j in range(len(lat))))
    return "\n".join(rows) + "\n"
