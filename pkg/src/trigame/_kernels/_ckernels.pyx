# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled kernels: the forward frequency map and the feasibility sweep.

Scalar-loop twin of ``_pykernels.py``. Both files implement one shared
floating-point expression tree and must stay bit-identical; the build turns
FMA contraction off so the C arithmetic matches numpy's element ops. When
editing either file, mirror the change in the other. See the twin for the
full method commentary.
"""

import numpy as np

from libc.math cimport copysign, fabs, fmax, fmin, sqrt

cdef double THIRD = 1.0 / 3.0
cdef double TWO_THIRDS = 2.0 / 3.0
cdef double TOL = 1e-9
cdef double SINGULAR_TOL = 1e-12
cdef double NEGATIVE_TOL = -1e-12


cdef inline unsigned char _classify_code(double x1, double x2, double x3) nogil:
    cdef int wins0, wins1, wins2, first, third, second
    if x1 == 0.0 or x2 == 0.0 or x3 == 0.0:
        return 8
    if x1 > 0.0 and x2 < 0.0 and x3 > 0.0:
        return 6
    if x1 < 0.0 and x2 > 0.0 and x3 < 0.0:
        return 7
    wins0 = (x3 < 0.0) + (x1 > 0.0)
    wins1 = (x3 > 0.0) + (x2 > 0.0)
    wins2 = (x1 < 0.0) + (x2 < 0.0)
    first = 0 if wins0 == 2 else (1 if wins1 == 2 else 2)
    third = 0 if wins0 == 0 else (1 if wins1 == 0 else 2)
    second = 3 - first - third
    return <unsigned char> (2 * first + (1 if second > third else 0))


def forward_map(const double[::1] p02, const double[::1] p01, const double[::1] p10):
    """Compiled twin of ``_pykernels.forward_map``; same contract."""
    cdef Py_ssize_t n = p02.shape[0]
    cdef Py_ssize_t i
    cdef double a, b, c, dpos, q0r, q1r, q2r, q0c, q1c, q2c, s
    q0_arr = np.empty(n)
    q1_arr = np.empty(n)
    q2_arr = np.empty(n)
    status_arr = np.empty(n, dtype=np.uint8)
    cls_arr = np.empty(n, dtype=np.uint8)
    cdef double[::1] q0 = q0_arr
    cdef double[::1] q1 = q1_arr
    cdef double[::1] q2 = q2_arr
    cdef unsigned char[::1] status = status_arr
    cdef unsigned char[::1] cls = cls_arr
    with nogil:
        for i in range(n):
            a = p02[i]
            b = p01[i]
            c = p10[i]
            cls[i] = _classify_code(2.0 * b - 1.0, 2.0 * c - 1.0, 1.0 - 2.0 * a)
            dpos = a * c * (1.0 - b) + b * (1.0 - a) * (1.0 - c)
            if fabs(dpos) < SINGULAR_TOL:
                status[i] = 1
                q0[i] = 0.0
                q1[i] = 0.0
                q2[i] = 0.0
                continue
            q2r = ((b + c) * THIRD - b * c) / dpos
            q1r = ((a + 1.0 - c) * THIRD - a * (1.0 - c)) / dpos
            q0r = ((2.0 - a - b) * THIRD - (1.0 - a) * (1.0 - b)) / dpos
            if fmin(fmin(q0r, q1r), q2r) < NEGATIVE_TOL:
                status[i] = 2
                q0[i] = q0r
                q1[i] = q1r
                q2[i] = q2r
                continue
            status[i] = 0
            q0c = fmax(q0r, 0.0)
            q1c = fmax(q1r, 0.0)
            q2c = fmax(q2r, 0.0)
            s = q0c + q1c + q2c
            q0[i] = q0c / s
            q1[i] = q1c / s
            q2[i] = q2c / s
    return q0_arr, q1_arr, q2_arr, status_arr, cls_arr


cdef inline int _pattern(double x1, double x2, double x3) nogil:
    # 1: first cycle, 2: second cycle, 3: strict transitive, 0: boundary
    if x1 > 0.0 and x2 < 0.0 and x3 > 0.0:
        return 1
    if x1 < 0.0 and x2 > 0.0 and x3 < 0.0:
        return 2
    if x1 != 0.0 and x2 != 0.0 and x3 != 0.0:
        return 3
    return 0


cdef inline int _segment_class_bits(
    double lo, double hi, double t1, double t2, double t3,
    double alpha1, double beta1, double alpha2, double beta2,
) nogil:
    """Pattern mask over the four knot-gap midpoints of [lo, hi]."""
    cdef double c1 = fmin(fmax(t1, lo), hi)
    cdef double c2 = fmin(fmax(t2, lo), hi)
    cdef double c3 = fmin(fmax(t3, lo), hi)
    cdef double s1 = fmin(fmin(c1, c2), c3)
    cdef double s3 = fmax(fmax(c1, c2), c3)
    cdef double s2 = fmax(fmin(c1, c2), fmin(fmax(c1, c2), c3))
    cdef double m
    cdef int k, pat, out = 0
    for k in range(4):
        if k == 0:
            m = 0.5 * (lo + s1)
        elif k == 1:
            m = 0.5 * (s1 + s2)
        elif k == 2:
            m = 0.5 * (s2 + s3)
        else:
            m = 0.5 * (s3 + hi)
        pat = _pattern(alpha1 + beta1 * m, alpha2 + beta2 * m, 1.0 - 2.0 * m)
        if pat:
            out |= 1 << (pat - 1)
    return out


def oracle_sweep(const double[::1] q0, const double[::1] q1, const double[::1] q2):
    """Compiled twin of ``_pykernels.oracle_sweep``; same contract."""
    cdef Py_ssize_t n = q0.shape[0]
    cdef Py_ssize_t i
    cdef double lo, hi, alpha1, beta1, alpha2, beta2, t1, t2
    cdef double big_a, big_b, big_c, disc, sq, qq, r1, r2, rlo, rhi, mlo, mhi
    cdef int bits, seg, pat
    cdef bint classical_any, has_roots, in1, in2
    bits_arr = np.zeros(n, dtype=np.uint16)
    cdef unsigned short[::1] out = bits_arr
    with nogil:
        for i in range(n):
            lo = fmax(0.0, fmax((THIRD - q1[i]) / q2[i], (q2[i] - THIRD) / q2[i]))
            hi = fmin(1.0, fmin(THIRD / q2[i], (q0[i] + q2[i] - THIRD) / q2[i]))
            classical_any = lo <= hi
            bits = 1 if classical_any else 0

            alpha1 = TWO_THIRDS / q1[i] - 1.0
            beta1 = -2.0 * (q2[i] / q1[i])
            alpha2 = 2.0 * ((THIRD - q2[i]) / q0[i]) - 1.0
            beta2 = 2.0 * (q2[i] / q0[i])
            t1 = (THIRD - 0.5 * q1[i]) / q2[i]
            t2 = (0.5 * q0[i] + q2[i] - THIRD) / q2[i]

            if classical_any:
                seg = _segment_class_bits(lo, hi, t1, t2, 0.5, alpha1, beta1, alpha2, beta2)
                bits |= (seg & 3) << 1        # cycle bits -> 1, 2
                bits |= ((seg >> 2) & 1) << 3

            big_a = beta1 * beta1 + beta2 * beta2 + 4.0
            big_b = 2.0 * (alpha1 * beta1 + alpha2 * beta2 - 2.0)
            big_c = alpha1 * alpha1 + alpha2 * alpha2
            disc = big_b * big_b - 4.0 * (big_a * big_c)
            has_roots = disc >= 0.0
            if classical_any and has_roots:
                sq = sqrt(disc)
                qq = -0.5 * (big_b + copysign(sq, big_b))
                r1 = qq / big_a
                r2 = big_c / qq if qq != 0.0 else 0.0

                in1 = r1 >= lo - TOL and r1 <= hi + TOL
                in2 = r2 >= lo - TOL and r2 <= hi + TOL
                if in1 or in2:
                    bits |= 1 << 4
                if in1:
                    pat = _pattern(alpha1 + beta1 * r1, alpha2 + beta2 * r1, 1.0 - 2.0 * r1)
                    if pat:
                        bits |= 1 << (4 + pat)
                if in2:
                    pat = _pattern(alpha1 + beta1 * r2, alpha2 + beta2 * r2, 1.0 - 2.0 * r2)
                    if pat:
                        bits |= 1 << (4 + pat)

                rlo = fmin(r1, r2)
                rhi = fmax(r1, r2)
                mlo = fmax(lo, rlo)
                mhi = fmin(hi, rhi)
                if mlo <= mhi + TOL:
                    bits |= 1 << 8
                    if mlo > mhi:
                        # tangency within slack: collapse to the touch point
                        mlo = 0.5 * (mlo + mhi)
                        mhi = mlo
                    seg = _segment_class_bits(
                        mlo, mhi, t1, t2, 0.5, alpha1, beta1, alpha2, beta2
                    )
                    bits |= (seg & 3) << 9
                    bits |= ((seg >> 2) & 1) << 11
            out[i] = <unsigned short> bits
    return bits_arr
