# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled sweep kernels: confusion counts over threshold and weight grids.

Counterpart of polarkit._pure; returns identical int64 count arrays. The
mixture expression matches the fallback exactly (compiled with
-ffp-contract=off so no FMA changes the rounding), and the inner loop is
branchless: it accumulates predicted-positives and true-positives, then
derives the remaining confusion cells from the gold totals.
"""

import numpy as np


cdef inline void _sweep_into(const double[::1] probs,
                             const unsigned char[::1] gold,
                             long long pos_gold,
                             const double[::1] taus,
                             long long[:, ::1] out) noexcept nogil:
    cdef Py_ssize_t n = probs.shape[0]
    cdef Py_ssize_t nt = taus.shape[0]
    cdef Py_ssize_t i, j
    cdef long long pp, tp, pred
    cdef double tau
    for j in range(nt):
        tau = taus[j]
        pp = 0
        tp = 0
        for i in range(n):
            pred = probs[i] >= tau
            pp += pred
            tp += pred & gold[i]
        out[j, 0] = tp
        out[j, 1] = pp - tp
        out[j, 2] = pos_gold - tp
        out[j, 3] = n - pp - pos_gold + tp


cdef inline long long _gold_positives(const unsigned char[::1] gold) noexcept nogil:
    cdef Py_ssize_t i
    cdef long long total = 0
    for i in range(gold.shape[0]):
        total += gold[i]
    return total


def threshold_sweep_counts(const double[::1] probs,
                           const unsigned char[::1] gold,
                           const double[::1] taus):
    out = np.empty((taus.shape[0], 4), dtype=np.int64)
    cdef long long[:, ::1] o = out
    with nogil:
        _sweep_into(probs, gold, _gold_positives(gold), taus, o)
    return out


cdef inline void _mix_into(const double[::1] spec,
                           const double[::1] gen,
                           double alpha,
                           double[::1] mix) noexcept nogil:
    cdef Py_ssize_t i
    for i in range(spec.shape[0]):
        mix[i] = alpha * spec[i] + (1.0 - alpha) * gen[i]


def pair_row_counts(const double[::1] spec,
                    const double[::1] gen,
                    const unsigned char[::1] gold,
                    double alpha,
                    const double[::1] taus):
    mix = np.empty(spec.shape[0], dtype=np.float64)
    out = np.empty((taus.shape[0], 4), dtype=np.int64)
    cdef double[::1] m = mix
    cdef long long[:, ::1] o = out
    with nogil:
        _mix_into(spec, gen, alpha, m)
        _sweep_into(m, gold, _gold_positives(gold), taus, o)
    return out


def pair_grid_counts(const double[::1] spec,
                     const double[::1] gen,
                     const unsigned char[::1] gold,
                     const double[::1] alphas,
                     const double[::1] taus):
    cdef Py_ssize_t na = alphas.shape[0]
    mix = np.empty(spec.shape[0], dtype=np.float64)
    out = np.empty((na, taus.shape[0], 4), dtype=np.int64)
    cdef double[::1] m = mix
    cdef long long[:, :, ::1] o = out
    cdef Py_ssize_t k
    cdef long long pos_gold
    with nogil:
        pos_gold = _gold_positives(gold)
        for k in range(na):
            _mix_into(spec, gen, alphas[k], m)
            _sweep_into(m, gold, pos_gold, taus, o[k])
    return out
