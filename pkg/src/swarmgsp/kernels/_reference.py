"""Vectorized numpy implementations of the per-step interaction kernels.

These are the fallback backend when the compiled extension is unavailable;
signatures and semantics match ``_core`` exactly (floating-point results may
differ in the last bits because summation order differs).
"""

import numpy as np

_EPS = 1e-12


def couzin_desired(positions, headings, rr2, ro2, ra2, cos_half):
    """Desired direction for every agent of a zonal-interaction swarm.

    Zones are evaluated against each agent's own squared radii ``rr2`` <=
    ``ro2`` <= ``ra2``; a neighbor is visible when the angle between the
    agent's heading and the bearing to the neighbor is within its field of
    perception (``cos_half`` holds cos(perception/2)). Any visible neighbor
    inside the repulsion radius overrides everything else. The returned
    vectors are unnormalized; callers fall back to the current heading when
    a vector is (numerically) zero.
    """
    diff = positions[None, :, :] - positions[:, None, :]  # diff[i, j] = x_j - x_i
    d2 = np.einsum("ijk,ijk->ij", diff, diff)
    valid = d2 > 0.0  # excludes self and exactly coincident agents
    np.fill_diagonal(valid, False)

    dist = np.sqrt(np.where(valid, d2, 1.0))
    unit = diff / dist[:, :, None]
    unit[~valid] = 0.0

    bearing_cos = np.einsum("ik,ijk->ij", headings, unit)
    visible = valid & (bearing_cos >= cos_half[:, None])

    rep = visible & (d2 <= rr2[:, None])
    ali = visible & (d2 > rr2[:, None]) & (d2 <= ro2[:, None])
    att = visible & (d2 > ro2[:, None]) & (d2 <= ra2[:, None])

    rep_sum = -np.einsum("ij,ijk->ik", rep.astype(float), unit)
    ali_sum = ali.astype(float) @ headings + headings  # own heading included
    att_sum = np.einsum("ij,ijk->ik", att.astype(float), unit)

    ali_norm = np.linalg.norm(ali_sum, axis=1)
    att_norm = np.linalg.norm(att_sum, axis=1)
    ali_unit = np.where(
        ali_norm[:, None] > _EPS, ali_sum / np.maximum(ali_norm, _EPS)[:, None], 0.0
    )
    att_unit = np.where(
        att_norm[:, None] > _EPS, att_sum / np.maximum(att_norm, _EPS)[:, None], 0.0
    )
    social = ali_unit + att_unit
    both_zero = (ali_norm <= _EPS) & (att_norm <= _EPS)
    social[both_zero] = headings[both_zero]

    return np.where(rep.any(axis=1)[:, None], rep_sum, social)


def swarmalator_derivs(positions, phases, attraction, repulsion, phase_attraction,
                       sync_coupling, omega):
    """Position and phase time-derivatives of the phase-coupled swarm.

    Each agent's own coefficients weight its interactions: spatial pull of
    strength ``attraction + phase_attraction * cos(dphase)`` along the unit
    bearing, inverse-distance spatial ``repulsion``, and inverse-distance
    phase coupling of strength ``sync_coupling``. Sums are averaged over the
    population size.
    """
    n = positions.shape[0]
    diff = positions[None, :, :] - positions[:, None, :]  # diff[i, j] = x_j - x_i
    d2 = np.einsum("ijk,ijk->ij", diff, diff)
    valid = d2 > 0.0
    np.fill_diagonal(valid, False)

    safe_d2 = np.where(valid, d2, 1.0)
    inv_dist = np.where(valid, 1.0 / np.sqrt(safe_d2), 0.0)

    dphase = phases[None, :] - phases[:, None]  # dphase[i, j] = theta_j - theta_i
    pull = attraction[:, None] + phase_attraction[:, None] * np.cos(dphase)
    coeff = np.where(valid, pull * inv_dist - repulsion[:, None] / safe_d2, 0.0)

    dxdt = np.einsum("ij,ijk->ik", coeff, diff) / n
    dthetadt = omega + sync_coupling * np.einsum("ij,ij->i", np.sin(dphase), inv_dist) / n
    return dxdt, dthetadt
