"""
Proof scenarios: covering sequences, collision avoidance and the approach family.

Legs are integrated in a process pool; each job only carries the dataset,
the integrator config and a leg index so it pickles cheaply.
"""

import logging
from dataclasses import dataclass, field
from multiprocessing import Pool

import numpy as np

from django.conf import settings

from core.exceptions import AvoidanceFailed, ConditionFailed, ConfigurationError, HypothesisUnverified
from cover import (
    Certificate,
    CertificateKind,
    HSetOnSection,
    approach_family,
    check_backcovering,
    check_cone_bounds,
    enclose_anchors,
    check_covering,
    check_self_symmetric,
    check_symmetry_hypotheses,
    cone_certificate,
    derive_symmetric,
    excludes_collision_line,
)
from cover.hsets import UNIT_SQUARE
from flow import IntegratorConfig
from ivl import Interval
from model import ExtendedRegularizedField, collision_residual
from section import ChartPatch, crossing_map, local_poincare
from section.eta import eta_matrix, exact_shear

logger = logging.getLogger(__name__)

# S N1 = N3 and S N3 = N1 as h-sets on section
MIRROR_ALIASES = {"SN1": "N3", "SN3": "N1"}
# P^S_k named by the forward leg between the mirrored sections
LEG_ALIASES = {"PS0": "P1", "PS1": "P0", "PS2": "P3", "PS3": "P2"}
APPROACH_DEPTH = 8
GLUING = "SR1<=N4"
FAMILY = "family:R"
CHART_AVOIDANCE = "avoid:chart"


def _run(job, items, workers):
    if workers and workers > 1 and len(items) > 1:
        with Pool(min(workers, len(items))) as pool:
            return pool.map(job, items)
    return [job(item) for item in items]


def _options(config, grid, depth, workers):
    proof = settings.PROOF
    return (
        config or IntegratorConfig.from_settings(),
        proof["GRID"] if grid is None else grid,
        proof["DEPTH"] if depth is None else depth,
        proof["WORKERS"] if workers is None else workers,
    )


def _field(dataset, backward=False):
    field = ExtendedRegularizedField(dataset.params, dataset.primary)
    return field.reversed() if backward else field


def _with_energy(box, h):
    return Interval.concatenate([Interval.coerce(box)[:4], Interval.coerce(h).reshape(1)])


# sequences


def integrated_legs(K):
    """(source, target, leg) for every relation verified by integration."""
    legs = [(0, 1), (1, 2)] + [(k - 1, k) for k in range(4, K + 1)]
    return [(i, j, f"P{j}") for i, j in legs]


def expected_sequences(K):
    """Relation ids of the four covering sequences, as the symmetric derivation names them."""
    c1 = ["N0=>N1", "N1=>N2"]
    c2 = ["N2<=N3", "N3<=N0"]
    tail = [f"N{k - 1}=>N{k}" for k in range(4, K + 1)]
    o1 = c1 + ["N2<=N3"] + tail
    o2 = (
        [f"N{K}<=SN{K - 1}"]
        + [f"SN{k}<=SN{k - 1}" for k in range(K - 1, 3, -1)]
        + ["SN3=>SN2", "SN2<=SN1", "SN1<=N0"]
    )
    return {"c1": c1, "c2": c2, "o1": o1, "o2": o2}


class CoveringJob:
    """Integrates one forward leg N_i => N_j at a given h-set scale."""

    def __init__(self, dataset, config, grid, depth, scale):
        self.dataset = dataset
        self.config = config
        self.grid = grid
        self.depth = depth
        self.scale = scale

    def __call__(self, leg):
        i, j, name = leg
        h = self.dataset.energy
        N = self.dataset.hset(i, h, self.scale)
        M = self.dataset.hset(j, h, self.scale)
        f = local_poincare(N.chart, M.chart, h, box=N.hset.support_box(), config=self.config)
        return check_covering(
            f,
            N,
            M,
            grid=self.grid,
            depth=self.depth,
            leg=name,
            config_hash=self.config.config_hash(),
            scale=self.scale,
        )


def backcovering_leg(dataset, i, j, leg, config, grid, depth, scale=1.0):
    """N_i <= N_j by integrating backward from Sigma_j to Sigma_i."""
    h = dataset.energy
    N = dataset.hset(i, h, scale)
    M = dataset.hset(j, h, scale)
    f_inverse = local_poincare(
        M.chart, N.chart, h, box=M.hset.support_box(), field=_field(dataset, backward=True), config=config
    )
    return check_backcovering(
        f_inverse, N, M, grid=grid, depth=depth, leg=leg, config_hash=config.config_hash(), scale=scale
    )


def scale_factors(start, maximum):
    """start, 2 start, 4 start, ... capped at maximum."""
    if start > maximum:
        raise ConfigurationError(f"h-set scale {start} exceeds the cap {maximum}")
    factors = [float(start)]
    while factors[-1] * 2 < maximum:
        factors.append(factors[-1] * 2)
    if factors[-1] < maximum:
        factors.append(float(maximum))
    return factors


def self_symmetry_flags(dataset, scale=1.0):
    """check_self_symmetric for N0, N2, NK and the identity N3 = S N1."""
    K = dataset.K
    flags = {f"N{k}": check_self_symmetric(dataset.hset(k, scale=scale)) for k in (0, 2, K)}
    N1, N3 = dataset.hset(1, scale=scale), dataset.hset(3, scale=scale)
    mirrored = N1.mirror()
    flags["N3=SN1"] = bool(
        N3.chart.label == mirrored.chart.label
        and np.array_equal(N3.hset.matrix.lo, mirrored.hset.matrix.lo)
        and np.array_equal(N3.hset.matrix.hi, mirrored.hset.matrix.hi)
        and np.array_equal(N3.hset.center.lo, mirrored.hset.center.lo)
        and np.array_equal(N3.hset.center.hi, mirrored.hset.center.hi)
    )
    return flags


@dataclass
class SequenceResult:
    sequences: dict
    certificates: list
    flags: dict
    scale: float
    cross_checks: list = field(default_factory=list)


def derive_sequences(integrated, flags, K, hypotheses=True):
    """Assemble c1, c2, o1, o2 from the integrated certificates by symmetry."""
    by_id = {cert.relation_id: cert for cert in integrated}
    c1 = [by_id["N0=>N1"], by_id["N1=>N2"]]
    tail = [by_id[f"N{k - 1}=>N{k}"] for k in range(4, K + 1)]

    if not flags.get("N3=SN1"):
        raise HypothesisUnverified("N3 is not verified to be S N1")
    loop = {label: flags[label] for label in ("N0", "N2")}
    c2 = [
        derive_symmetric(cert, loop, MIRROR_ALIASES, LEG_ALIASES, hypotheses)
        for cert in reversed(c1)
    ]
    o1 = c1 + [c2[0]] + tail
    ends = {"N0": flags["N0"], f"N{K}": flags[f"N{K}"]}
    o2 = [derive_symmetric(cert, ends, hypotheses=hypotheses) for cert in reversed(o1)]
    return {"c1": c1, "c2": c2, "o1": o1, "o2": o2}


def verify_sequences(
    dataset,
    config=None,
    grid=None,
    depth=None,
    workers=None,
    scale=None,
    max_scale=None,
    cross_check=True,
):
    """Integrate c1 and N3 => ... => NK, derive c2 and o2 by symmetry.

    All integrated legs share one h-set scale; when a leg fails the whole
    set is retried at the next factor up to the cap.
    """
    config, grid, depth, workers = _options(config, grid, depth, workers)
    proof = settings.PROOF
    scale = proof["SCALE"] if scale is None else scale
    max_scale = proof["MAX_SCALE"] if max_scale is None else max_scale
    K = dataset.K

    hypotheses = check_symmetry_hypotheses(dataset.chart(0).energy, float(Interval.coerce(dataset.energy).mid()))
    legs = integrated_legs(K)
    failure = None
    for factor in scale_factors(scale, max_scale):
        job = CoveringJob(dataset, config, grid, depth, factor)
        try:
            integrated = _run(job, legs, workers)
        except ConditionFailed as exc:
            failure = exc
            logger.warning("coverings fail at scale %g (%s), enlarging", factor, exc)
            continue
        break
    else:
        raise failure

    flags = self_symmetry_flags(dataset, factor)
    sequences = derive_sequences(integrated, flags, K, hypotheses)
    checks = []
    if cross_check:
        direct = backcovering_leg(dataset, 2, 3, "P3", config, grid, depth, factor)
        derived = sequences["c2"][0]
        if direct.relation_id != derived.relation_id:
            raise ConditionFailed(None, "symmetry cross-check", f"{direct.relation_id} != {derived.relation_id}")
        checks.append(direct)
        logger.info("%s holds both by integration and by symmetry", direct.relation_id)

    certificates = list(integrated)
    seen = {cert.relation_id for cert in certificates}
    for name in ("c2", "o2"):
        for cert in sequences[name]:
            if cert.relation_id not in seen:
                certificates.append(cert)
                seen.add(cert.relation_id)
    logger.info(
        "covering sequences verified: %d integrated, %d derived, scale %g",
        len(integrated), len(certificates) - len(integrated), factor,
    )
    return SequenceResult(
        sequences={name: [cert.relation_id for cert in certs] for name, certs in sequences.items()},
        certificates=certificates,
        flags=flags,
        scale=factor,
        cross_checks=checks,
    )


# avoidance


def collision_free(box):
    """C(w) = (u, v, |p|^2 - 8 mu2) excludes zero on the box."""
    residual = Interval.coerce(collision_residual(box[:4]))
    return not bool(np.all(residual.contains_zero()))


class AvoidanceJob:
    """Tube from psi_k(N_k) to Sigma_{k+1}; every segment must exclude C = 0."""

    def __init__(self, dataset, config):
        self.dataset = dataset
        self.config = config

    def tube(self, k):
        h = self.dataset.energy
        N = self.dataset.hset(k, h)
        target = self.dataset.chart(k + 1, h)
        W = _with_energy(N.phase_box(), h)
        crossing = crossing_map(
            _field(self.dataset),
            W,
            target.section,
            config=self.config,
            want_derivative=False,
            record_tube=True,
            region=target.region(),
        )
        return crossing.tube

    def __call__(self, k):
        leg = f"P{k + 1}"
        tube = self.tube(k)
        start = 0
        if k == 0:
            start = self.departure(tube, leg)
        for index in range(start, len(tube)):
            if not collision_free(tube[index].box):
                raise AvoidanceFailed(leg, index)
        logger.debug("leg %s: %d tube segments avoid collision", leg, len(tube))
        return Certificate(
            relation_id=f"avoid:{leg}",
            kind=CertificateKind.AVOIDANCE,
            source=f"N{k}",
            target=f"Sigma{k + 1}",
            leg=leg,
            config_hash=self.config.config_hash(),
            details={"segments": len(tube), "departure_segments": start},
        )

    def departure(self, tube, leg):
        """Segments still touching {v = 0} must move v monotonically, so they meet it only at t = 0."""
        field = _field(self.dataset)
        index = 0
        while index < len(tube) and bool(tube[index].box[1].contains_zero()):
            rate = Interval.coerce(field(tube[index].box))[1]
            if bool(rate.contains_zero()):
                raise AvoidanceFailed(leg, index, f"leg {leg}: segment {index} may return to Sigma0")
            index += 1
        return index


def chart_avoidance(dataset, k_max=APPROACH_DEPTH, anchors=None):
    """(psi0 o eta_L)^-1 {C = 0} meets [0, 1]^2 only at the origin, and no R_4k, Q_4k touches it."""
    L = exact_shear(dataset.shear)
    # z1 + z2 of eta_L(z) is (1 - L) / (1 + L) (z1 + z2)
    column_sums = [(1 - L) / (1 + L)] * 2
    if not all(value > 0 for value in column_sums):
        raise AvoidanceFailed("psi0", -1, f"eta_L column sums {column_sums} are not positive")
    bounds = dataset.cone_bounds()
    levels = approach_family(bounds, dataset.cone["a"], dataset.cone["b"], L, k_max, anchors=anchors)
    for level in levels:
        if level.k % 4:
            continue
        for hset in (level.rectangle, level.square):
            if not excludes_collision_line(hset):
                raise AvoidanceFailed("psi0", level.k, f"{hset.label} meets the collision line")
    return Certificate(
        relation_id=CHART_AVOIDANCE,
        kind=CertificateKind.AVOIDANCE,
        source="N0",
        target="N0",
        provenance="construction",
        details={
            "L": str(L),
            "column_sums": [str(value) for value in column_sums],
            "levels": [level.k for level in levels if level.k % 4 == 0],
        },
    )


def verify_avoidance(dataset, config=None, workers=None):
    """Collision avoidance on every integrated leg and in the psi0 chart."""
    config, _, _, workers = _options(config, None, None, workers)
    certificates = _run(AvoidanceJob(dataset, config), list(range(dataset.K)), workers)
    certificates.append(chart_avoidance(dataset))
    logger.info("collision avoidance verified on %d legs", dataset.K)
    return certificates


# approach family


def cone_patch_box(L):
    """eta_L(N_c) enlarged by one percent, the domain of the cone bounds."""
    return (eta_matrix(L) @ UNIT_SQUARE).inflate(relative=0.01)


def cone_leg(dataset, i, config):
    """g_i = psi_i^-1 o P o psi_{i-1 mod 4} over eta_L(N_c)."""
    h = dataset.energy
    source = dataset.chart((i - 1) % 4, h)
    target = dataset.chart(i, h)
    patch = ChartPatch(source, cone_patch_box(dataset.shear), center=np.zeros(2))
    return local_poincare(patch, target, h, config=config)


class ConeJob:
    def __init__(self, dataset, config):
        self.dataset = dataset
        self.config = config

    def __call__(self, i):
        return cone_leg(self.dataset, i, self.config)


def cone_certificates(dataset, maps, config):
    """Anchors q_0..q_3 of the cycle of g0..g3 and the cone certificate of each leg around them."""
    anchors = enclose_anchors(maps, dataset.shear)
    c = dataset.cone
    certificates = []
    for i, g in enumerate(maps):
        bounds = check_cone_bounds(
            g,
            dataset.shear,
            alpha=c["alpha"],
            beta=c["beta"],
            rho=c["rho"],
            c=c["c"],
            anchor=anchors[(i - 1) % len(maps)],
        )
        certificates.append(cone_certificate(bounds, f"g{i}", leg=f"P{i}", config_hash=config.config_hash()))
    return anchors, certificates


def gluing(dataset, config, grid, depth, anchors):
    """S R1 <= N4 under P4, integrating backward from Sigma4 to Sigma3 = S Sigma1."""
    h = dataset.energy
    levels = approach_family(
        dataset.cone_bounds(), dataset.cone["a"], dataset.cone["b"], dataset.shear, 1, anchors=anchors
    )
    R1 = HSetOnSection(levels[0].rectangle, dataset.chart(1, h))
    SR1 = R1.mirror()
    N4 = dataset.hset(4, h)
    f_inverse = local_poincare(
        N4.chart, SR1.chart, h, box=N4.hset.support_box(), field=_field(dataset, backward=True), config=config
    )
    return check_backcovering(
        f_inverse, SR1, N4, grid=grid, depth=depth, leg="P4", config_hash=config.config_hash()
    )


def family_certificate(dataset, cones, anchors, k_max=APPROACH_DEPTH):
    bounds = dataset.cone_bounds()
    bounds.check_inequalities()
    levels = approach_family(
        bounds, dataset.cone["a"], dataset.cone["b"], dataset.shear, k_max, anchors=anchors
    )
    return Certificate(
        relation_id=FAMILY,
        kind=CertificateKind.DERIVED,
        source="R_k",
        target="R_k+1, Q_k+1",
        provenance="cone-lemma",
        premises=tuple(cert.relation_id for cert in cones),
        details={
            "a": str(dataset.cone["a"]),
            "b": str(dataset.cone["b"]),
            "decay": str(bounds.decay),
            "beta": str(bounds.beta),
            "L": str(dataset.shear),
            "k_max": k_max,
            "anchors": [Interval.coerce(q).to_pairs() for q in anchors],
            "levels": [
                {"k": level.k, "a": str(level.a), "b": str(level.b), "chart": f"psi{level.k % 4}"}
                for level in levels
            ],
            "statement": "R_k => R_k+1 and R_k => Q_k+1 for every k >= 1, centred on the enclosed cycle",
        },
    )


def half_sequence(k, K):
    """Q_4k <= S R_4k-1 <= ... <= S R_1 <= N4 => ... => NK, as labels."""
    labels = [f"Q{4 * k}"] + [f"SR{j}" for j in range(4 * k - 1, 0, -1)] + [f"N{j}" for j in range(4, K + 1)]
    approach = [label for label in labels if label.startswith("SR")]
    return labels, approach


def verify_approach(dataset, config=None, grid=None, depth=None, workers=None):
    """Cone bounds for g0..g3 around their cycle, the gluing back-covering and the family certificate."""
    config, grid, depth, workers = _options(config, grid, depth, workers)
    maps = _run(ConeJob(dataset, config), [0, 1, 2, 3], workers)
    anchors, cones = cone_certificates(dataset, maps, config)
    glue = gluing(dataset, config, grid, depth, anchors)
    avoidance = chart_avoidance(dataset, anchors=anchors)
    family = family_certificate(dataset, cones, anchors)
    logger.info("approach family verified with decay %s per step", family.details["decay"])
    return cones + [glue, avoidance, family]


def approach_premises(K):
    return [f"cone:g{i}" for i in range(4)] + [GLUING, FAMILY] + [f"N{k - 1}=>N{k}" for k in range(5, K + 1)]