"""Duality pairing between bounded cochains and summable equivariant chains.

The pairing sums, over the finitely supported slice of the chain, the
evaluation pairing of the cochain value against the chain value. It is
well defined on classes because the coboundary is adjoint to the boundary;
`adjointness_check` verifies that identity instance by instance through
two independent computation routes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .complexes import BoundedCochain, EquivariantChain, _key_sort
from .functions import frac_str, pair_eval


def pair(phi: BoundedCochain, c: EquivariantChain) -> Fraction:
    """<phi, c> = sum over supported slice keys of <phi(key), c(key)>."""
    if phi.group != c.group:
        raise ValueError("pairing requires a cochain and a chain over the same group")
    if phi.degree != c.degree:
        raise ValueError(f"degree mismatch: cochain {phi.degree}, chain {c.degree}")
    total = Fraction(0)
    for key in sorted(c.slice, key=lambda k: _key_sort(c.group, k)):
        total += pair_eval(phi.value_at(key), c.slice[key])
    return total


def adjointness_check(phi: BoundedCochain, c: EquivariantChain) -> bool:
    """pair(d phi, c) == pair(phi, boundary c), computed independently."""
    left, right = adjointness_values(phi, c)
    return left == right


def adjointness_values(phi: BoundedCochain, c: EquivariantChain) -> tuple[Fraction, Fraction]:
    if c.degree != phi.degree + 1:
        raise ValueError("adjointness needs chain degree = cochain degree + 1")
    return pair(phi.coboundary(), c), pair(phi, c.boundary())


@dataclass
class PairingCertificate:
    """Serializable record of one pairing computation."""

    cochain_id: str
    cycle_id: str
    truncation_radius: int
    value: Fraction
    group_hash: str
    adjointness: dict | None = None

    def to_json(self) -> dict:
        out = {
            "type": "pairing-certificate",
            "cochain": self.cochain_id,
            "cycle": self.cycle_id,
            "truncation-radius": self.truncation_radius,
            "value": frac_str(self.value),
            "group-hash": self.group_hash,
        }
        if self.adjointness is not None:
            out["adjointness-witness"] = self.adjointness
        return out


def make_pairing_certificate(
    phi: BoundedCochain,
    c: EquivariantChain,
    cochain_id: str | None = None,
    cycle_id: str | None = None,
    adjoint_of: BoundedCochain | None = None,
) -> PairingCertificate:
    """Pair and certify; optionally cross-check through a lower cochain.

    When `adjoint_of` is a degree m-1 cochain whose coboundary has the same
    values as `phi` on the chain's support, the certificate records both
    routes pair(phi, c) and pair(adjoint_of, boundary c) as an adjointness
    witness.
    """
    value = pair(phi, c)
    adjointness = None
    if adjoint_of is not None:
        via_cochain = pair(adjoint_of.coboundary(), c)
        via_chain = pair(adjoint_of, c.boundary())
        adjointness = {
            "cochain-route": frac_str(via_cochain),
            "chain-route": frac_str(via_chain),
            "equal": via_cochain == value == via_chain,
        }
    return PairingCertificate(
        cochain_id=cochain_id or phi.label or "cochain",
        cycle_id=cycle_id or "cycle",
        truncation_radius=c.support_radius(),
        value=value,
        group_hash=c.group.spec_hash(),
        adjointness=adjointness,
    )
