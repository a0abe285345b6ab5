# Compiled plane-wave field summation: the hot loop of the Monte-Carlo
# estimators.  Mirrors _kernels_numpy.field_sum exactly, including the
# single-cosine form 2 Re[a e^{i phi}] = 2|a| cos(phi + arg a).

import numpy as np

cimport cython
from libc.math cimport atan2, cos, hypot


@cython.boundscheck(False)
@cython.wraparound(False)
def field_sum(double[::1] t, double[:, ::1] xyz, double[:, ::1] kvec,
              double[::1] omega, double[::1] a_re, double[::1] a_im,
              bint half_space):
    cdef Py_ssize_t n_events = t.shape[0]
    cdef Py_ssize_t n_waves = omega.shape[0]
    out_arr = np.empty(n_events)
    amp_arr = np.empty(n_waves)
    theta_arr = np.empty(n_waves)
    cdef double[::1] out = out_arr
    cdef double[::1] amp2 = amp_arr
    cdef double[::1] theta = theta_arr
    cdef Py_ssize_t e, j
    cdef double acc, ph, x, y, z
    with nogil:
        for j in range(n_waves):
            amp2[j] = 2.0 * hypot(a_re[j], a_im[j])
            theta[j] = atan2(a_im[j], a_re[j])
        for e in range(n_events):
            x = xyz[e, 0]
            y = xyz[e, 1]
            z = xyz[e, 2]
            acc = 0.0
            if half_space:
                for j in range(n_waves):
                    ph = kvec[j, 0] * x + kvec[j, 1] * y + kvec[j, 2] * z \
                        - omega[j] * t[e] + theta[j]
                    acc += amp2[j] * (cos(ph) - cos(ph - 2.0 * z * kvec[j, 2]))
            else:
                for j in range(n_waves):
                    ph = kvec[j, 0] * x + kvec[j, 1] * y + kvec[j, 2] * z \
                        - omega[j] * t[e] + theta[j]
                    acc += amp2[j] * cos(ph)
            out[e] = acc
    return out_arr
