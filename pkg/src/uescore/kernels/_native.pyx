# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled numeric kernels.

Operation-for-operation mirror of ``_pyref``: same loop order, same IEEE
double arithmetic, so results are bit-identical across backends. Input
validation lives in the dispatching wrappers, not here.
"""

from libc.math cimport exp, log


def sum_values(double[::1] values):
    cdef double total = 0.0
    cdef Py_ssize_t i
    for i in range(values.shape[0]):
        total += values[i]
    return total


def mean_value(double[::1] values):
    cdef double total = 0.0
    cdef Py_ssize_t i
    for i in range(values.shape[0]):
        total += values[i]
    return total / values.shape[0]


def weighted_sum(double[::1] values, double[::1] weights):
    cdef double total = 0.0
    cdef Py_ssize_t i
    for i in range(values.shape[0]):
        total += weights[i] * values[i]
    return total


def softmax(double[::1] values, double tau):
    cdef Py_ssize_t n = values.shape[0]
    cdef double m = values[0]
    cdef double total = 0.0
    cdef double e
    cdef Py_ssize_t i
    for i in range(n):
        if values[i] > m:
            m = values[i]
    out = [0.0] * n
    exps = [0.0] * n
    for i in range(n):
        e = exp((values[i] - m) / tau)
        exps[i] = e
        total += e
    for i in range(n):
        out[i] = exps[i] / total
    return out


def logsumexp(double[::1] values):
    cdef Py_ssize_t n = values.shape[0]
    cdef double m = values[0]
    cdef double total = 0.0
    cdef Py_ssize_t i
    for i in range(n):
        if values[i] > m:
            m = values[i]
    for i in range(n):
        total += exp(values[i] - m)
    return m + log(total)


def auroc_over_order(double[::1] values, signed char[::1] positives,
                     Py_ssize_t[::1] order):
    cdef Py_ssize_t n = values.shape[0]
    cdef Py_ssize_t n_pos = 0
    cdef Py_ssize_t n_neg
    cdef Py_ssize_t i, j, group_pos
    cdef double rank_sum_pos = 0.0
    cdef double midrank
    for i in range(n):
        if positives[i]:
            n_pos += 1
    n_neg = n - n_pos
    if n_pos == 0 or n_neg == 0:
        raise ValueError("both classes must be present")
    i = 0
    while i < n:
        j = i
        group_pos = 0
        while j < n and values[order[j]] == values[order[i]]:
            if positives[order[j]]:
                group_pos += 1
            j += 1
        midrank = (i + 1 + j) / 2.0
        rank_sum_pos += midrank * group_pos
        i = j
    return (rank_sum_pos - n_pos * (n_pos + 1) / 2.0) / (n_pos * n_neg)
