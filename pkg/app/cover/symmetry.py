"""
Relations obtained from the reversing symmetry S(u, v, pu, pv) = (u, -v, -pu, pv).

If P maps Sigma_1 to Sigma_2 and P^S maps S Sigma_2 to S Sigma_1, then
S o P = (P^S)^-1 o S, so
  N1 =>(P) N2   gives   S N2 <=(P^S) S N1
  N1 <=(P) N2   gives   S N2 =>(P^S) S N1
without integrating anything. A self-S-symmetric h-set N may stand in
for S N on either side of a relation.
"""

import logging
from dataclasses import replace

import numpy as np

from core.exceptions import HypothesisUnverified
from cover.certificates import CertificateKind, relation_id
from cover.hsets import mirror_label
from ivl import Interval
from model.arith import assemble
from model.pcr3bp import symmetry_S

logger = logging.getLogger(__name__)

HYPOTHESIS_SAMPLES = 64


def check_self_symmetric(N):
    """S o psi o c_{N^T} = psi o c_N.

    Holds when psi is S-reversing (S psi j = psi) and c_N commutes with the
    swap j; both are compared exactly.
    """
    chart = N.chart
    ok = bool(chart.satisfies_reversing_symmetry()) and N.hset.commutes_with_swap()
    logger.debug("%s self-S-symmetric: %s", N.label, ok)
    return ok


def check_symmetry_hypotheses(energy, h, rng=None, samples=HYPOTHESIS_SAMPLES, radius=1.0):
    """Spot-check Gamma o S = Gamma and J grad Gamma o S = -S J grad Gamma on random boxes.

    Both sides are enclosed on S-images of the same box; disjoint
    enclosures refute the hypothesis.
    """
    rng = rng or np.random.default_rng(0)
    for _ in range(samples):
        center = rng.uniform(-radius, radius, 4)
        center[:2] += 0.1 * np.sign(center[:2])
        box = Interval(center).inflate(1e-12)
        mirrored = Interval.coerce(symmetry_S(box))

        gamma = Interval.coerce(energy.value(box, h))
        gamma_mirrored = Interval.coerce(energy.value(mirrored, h))
        if gamma.intersect(gamma_mirrored) is None:
            raise HypothesisUnverified(f"Gamma(S w) differs from Gamma(w) near {center}")

        grad = Interval.coerce(energy.gradient(box, h))
        grad_mirrored = Interval.coerce(energy.gradient(mirrored, h))
        field = _hamiltonian_field(grad)
        field_mirrored = _hamiltonian_field(grad_mirrored)
        if field_mirrored.intersect(-Interval.coerce(symmetry_S(field))) is None:
            raise HypothesisUnverified(f"field(S w) differs from -S field(w) near {center}")
    logger.info("reversing symmetry hypotheses hold on %d sample boxes", samples)
    return True


def _hamiltonian_field(grad):
    return Interval.coerce(assemble([grad[2], grad[3], -grad[0], -grad[1]]))


def _leg_mirror(leg, aliases):
    """P_k <-> PS_k, then any alias naming the mirrored leg (e.g. PS1 = P0)."""
    if leg.startswith("PS"):
        mirrored = f"P{leg[2:]}"
    elif leg.startswith("P"):
        mirrored = f"PS{leg[1:]}"
    else:
        mirrored = leg
    return aliases.get(mirrored, mirrored)


def _resolve(label, self_symmetric, aliases):
    """Apply identities S N = N for self-symmetric N and named aliases like S N1 = N3."""
    if label in aliases:
        return aliases[label]
    base = mirror_label(label)
    if label.startswith("S") and base in self_symmetric:
        if not self_symmetric[base]:
            raise HypothesisUnverified(f"{base} is not verified self-S-symmetric")
        return base
    return label


def derive_symmetric(cert, self_symmetric=None, aliases=None, leg_aliases=None, hypotheses=True):
    """The S-mirrored relation of a covering certificate, with no integration.

    `self_symmetric` maps labels to their check_self_symmetric result;
    `aliases` rewrites labels that name the same h-set on section
    (e.g. {'SN1': 'N3'}).
    """
    if not hypotheses:
        raise HypothesisUnverified("reversing symmetry of the system has not been checked")
    self_symmetric = self_symmetric or {}
    aliases = aliases or {}
    source = _resolve(mirror_label(cert.target), self_symmetric, aliases)
    target = _resolve(mirror_label(cert.source), self_symmetric, aliases)
    direction = cert.direction.flipped()
    identifier = relation_id(source, target, direction)
    kind = CertificateKind.DERIVED
    restored = cert.kind is CertificateKind.DERIVED and cert.premises[:1] == (identifier,)
    provenance = "symmetry"
    if restored and cert.details.get("mirrored_kind"):
        kind = CertificateKind(cert.details["mirrored_kind"])
        provenance = cert.details.get("mirrored_provenance", cert.provenance)

    derived = replace(
        cert,
        relation_id=identifier,
        kind=kind,
        source=source,
        target=target,
        direction=direction,
        leg=_leg_mirror(cert.leg, leg_aliases or {}),
        provenance=provenance,
        premises=(cert.relation_id,),
        details={
            **cert.details,
            "mirrored_kind": CertificateKind(cert.kind).value,
            "mirrored_provenance": cert.provenance,
        },
    )
    logger.debug("%s derived from %s", derived.relation_id, cert.relation_id)
    return derived


def substitute_self_symmetric(cert, label, self_symmetric):
    """Replace `label` or its S-image on either side by the other, given N is self-S-symmetric."""
    base = label[1:] if label.startswith("S") else label
    if not self_symmetric.get(base):
        raise HypothesisUnverified(f"{base} is not verified self-S-symmetric")
    swap = {base: f"S{base}", f"S{base}": base}
    source = swap.get(cert.source, cert.source)
    target = swap.get(cert.target, cert.target)
    return replace(
        cert,
        relation_id=relation_id(source, target, cert.direction),
        source=source,
        target=target,
        kind=CertificateKind.DERIVED,
        provenance="self-symmetry",
        premises=(cert.relation_id,),
        details={**cert.details, "mirrored_kind": CertificateKind(cert.kind).value},
    )
