# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled per-step interaction kernels (hot O(N^2) inner loops).

Semantics match ``_reference``; see that module for the contract.
"""

import numpy as np

from libc.math cimport cos, sin, sqrt

DEF EPS = 1e-12


def couzin_desired(double[:, ::1] positions, double[:, ::1] headings,
                   double[::1] rr2, double[::1] ro2, double[::1] ra2,
                   double[::1] cos_half):
    cdef Py_ssize_t n = positions.shape[0]
    out = np.empty((n, 3), dtype=np.float64)
    cdef double[:, ::1] desired = out
    cdef Py_ssize_t i, j
    cdef double dx, dy, dz, d2, inv, bearing
    cdef double hx, hy, hz
    cdef double rep_x, rep_y, rep_z
    cdef double ali_x, ali_y, ali_z, ali_n
    cdef double att_x, att_y, att_z, att_n
    cdef bint any_rep

    for i in range(n):
        hx = headings[i, 0]
        hy = headings[i, 1]
        hz = headings[i, 2]
        any_rep = False
        rep_x = rep_y = rep_z = 0.0
        ali_x = hx          # own heading seeds the alignment sum
        ali_y = hy
        ali_z = hz
        att_x = att_y = att_z = 0.0
        for j in range(n):
            if j == i:
                continue
            dx = positions[j, 0] - positions[i, 0]
            dy = positions[j, 1] - positions[i, 1]
            dz = positions[j, 2] - positions[i, 2]
            d2 = dx * dx + dy * dy + dz * dz
            if d2 <= 0.0 or d2 > ra2[i]:
                continue
            inv = 1.0 / sqrt(d2)
            bearing = (hx * dx + hy * dy + hz * dz) * inv
            if bearing < cos_half[i]:
                continue
            if d2 <= rr2[i]:
                any_rep = True
                rep_x -= dx * inv
                rep_y -= dy * inv
                rep_z -= dz * inv
            elif d2 <= ro2[i]:
                ali_x += headings[j, 0]
                ali_y += headings[j, 1]
                ali_z += headings[j, 2]
            else:
                att_x += dx * inv
                att_y += dy * inv
                att_z += dz * inv
        if any_rep:
            desired[i, 0] = rep_x
            desired[i, 1] = rep_y
            desired[i, 2] = rep_z
        else:
            ali_n = sqrt(ali_x * ali_x + ali_y * ali_y + ali_z * ali_z)
            att_n = sqrt(att_x * att_x + att_y * att_y + att_z * att_z)
            if ali_n > EPS and att_n > EPS:
                desired[i, 0] = ali_x / ali_n + att_x / att_n
                desired[i, 1] = ali_y / ali_n + att_y / att_n
                desired[i, 2] = ali_z / ali_n + att_z / att_n
            elif ali_n > EPS:
                desired[i, 0] = ali_x / ali_n
                desired[i, 1] = ali_y / ali_n
                desired[i, 2] = ali_z / ali_n
            elif att_n > EPS:
                desired[i, 0] = att_x / att_n
                desired[i, 1] = att_y / att_n
                desired[i, 2] = att_z / att_n
            else:
                desired[i, 0] = hx
                desired[i, 1] = hy
                desired[i, 2] = hz
    return out


def swarmalator_derivs(double[:, ::1] positions, double[::1] phases,
                       double[::1] attraction, double[::1] repulsion,
                       double[::1] phase_attraction, double[::1] sync_coupling,
                       double[::1] omega):
    cdef Py_ssize_t n = positions.shape[0]
    dxdt_arr = np.empty((n, 2), dtype=np.float64)
    dthetadt_arr = np.empty(n, dtype=np.float64)
    cdef double[:, ::1] dxdt = dxdt_arr
    cdef double[::1] dthetadt = dthetadt_arr
    cdef Py_ssize_t i, j
    cdef double dx, dy, d2, inv, dphase, coeff
    cdef double fx, fy, g

    for i in range(n):
        fx = fy = g = 0.0
        for j in range(n):
            if j == i:
                continue
            dx = positions[j, 0] - positions[i, 0]
            dy = positions[j, 1] - positions[i, 1]
            d2 = dx * dx + dy * dy
            if d2 <= 0.0:
                continue
            inv = 1.0 / sqrt(d2)
            dphase = phases[j] - phases[i]
            coeff = (attraction[i] + phase_attraction[i] * cos(dphase)) * inv \
                - repulsion[i] / d2
            fx += coeff * dx
            fy += coeff * dy
            g += sin(dphase) * inv
        dxdt[i, 0] = fx / n
        dxdt[i, 1] = fy / n
        dthetadt[i] = omega[i] + sync_coupling[i] * g / n
    return dxdt_arr, dthetadt_arr
