# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled pairwise kernels; signatures mirror _fallback exactly."""

from libc.math cimport pow

import numpy as np


def circle_seminorm_block(double[::1] values, double[::1] kern, double h,
                          Py_ssize_t start, Py_ssize_t stop):
    cdef Py_ssize_t M = values.shape[0]
    cdef Py_ssize_t m, i, j
    cdef double acc = 0.0, row, d
    with nogil:
        for m in range(start, stop):
            row = 0.0
            for i in range(M):
                j = i + m
                if j >= M:
                    j -= M
                d = values[i] - values[j]
                row += d * d
            acc += kern[m - 1] * row
    return acc * h * h


def pair_seminorm_block(double[:, ::1] nodes, double[::1] weights,
                        double[::1] values, double p,
                        Py_ssize_t start, Py_ssize_t stop):
    cdef Py_ssize_t N = nodes.shape[0]
    cdef Py_ssize_t dim = nodes.shape[1]
    cdef Py_ssize_t i, j, c
    cdef double acc = 0.0, row, d2, dv, t
    with nogil:
        for i in range(start, stop):
            row = 0.0
            for j in range(N):
                if j == i:
                    continue
                d2 = 0.0
                for c in range(dim):
                    t = nodes[i, c] - nodes[j, c]
                    d2 += t * t
                dv = values[i] - values[j]
                row += weights[j] * dv * dv * pow(d2, -0.5 * p)
            acc += weights[i] * row
    return acc


def circle_radial_q_block(double[::1] rvals, double[::1] chord2, double h,
                          double p, int n, double[::1] gx, double[::1] gw,
                          Py_ssize_t start, Py_ssize_t stop):
    cdef Py_ssize_t M = rvals.shape[0]
    cdef Py_ssize_t G = gx.shape[0]
    cdef Py_ssize_t m, i, j, a, b
    cdef double acc = 0.0, row, dr, ri, rj, th2, ra, rb, prod, den, inner
    with nogil:
        for m in range(start, stop):
            th2 = chord2[m - 1]
            row = 0.0
            for i in range(M):
                j = i + m
                if j >= M:
                    j -= M
                ri = rvals[i]
                rj = rvals[j]
                dr = ri - rj
                inner = 0.0
                for a in range(G):
                    ra = rj + gx[a] * dr
                    for b in range(G):
                        rb = rj + gx[b] * dr
                        prod = ra * rb
                        den = (ra - rb) * (ra - rb) + prod * th2
                        inner += gw[a] * gw[b] * pow(prod, n - 1) * pow(den, -0.5 * p)
                row += dr * dr * inner
            acc += row
    return acc * h * h


def pair_radial_q_block(double[:, ::1] nodes, double[::1] weights,
                        double[::1] rvals, double p, int n,
                        double[::1] gx, double[::1] gw,
                        Py_ssize_t start, Py_ssize_t stop):
    cdef Py_ssize_t N = nodes.shape[0]
    cdef Py_ssize_t dim = nodes.shape[1]
    cdef Py_ssize_t G = gx.shape[0]
    cdef Py_ssize_t i, j, c, a, b
    cdef double acc = 0.0, row, d2, t, dr, ri, rj, ra, rb, prod, den, inner
    with nogil:
        for i in range(start, stop):
            ri = rvals[i]
            row = 0.0
            for j in range(N):
                if j == i:
                    continue
                d2 = 0.0
                for c in range(dim):
                    t = nodes[i, c] - nodes[j, c]
                    d2 += t * t
                rj = rvals[j]
                dr = ri - rj
                inner = 0.0
                for a in range(G):
                    ra = rj + gx[a] * dr
                    for b in range(G):
                        rb = rj + gx[b] * dr
                        prod = ra * rb
                        den = (ra - rb) * (ra - rb) + prod * d2
                        inner += gw[a] * gw[b] * pow(prod, n - 1) * pow(den, -0.5 * p)
                row += weights[j] * dr * dr * inner
            acc += weights[i] * row
    return acc
