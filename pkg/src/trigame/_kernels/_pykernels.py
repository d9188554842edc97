"""Pure-numpy kernels: the forward frequency map and the feasibility sweep.

These are the hot loops of the package. A compiled twin lives in
``_ckernels.pyx``; both are written against the same floating-point
expression tree (identical operation order, multiplication by precomputed
1/3 and 2/3 constants, nested min/max, the cancellation-free quadratic
form), and the test suite asserts their outputs are bit-identical. When
editing either file, mirror the change in the other.

Scalar reference implementations of the same decisions live in
``trigame.game`` and ``trigame.feasibility``; tests compare the routes but
the code paths are intentionally independent.
"""

import numpy as np

THIRD = 1.0 / 3.0
TWO_THIRDS = 2.0 / 3.0
#: Slack for admissible-interval membership of quadratic roots.
TOL = 1e-9
#: Determinant magnitude below which the forward map is singular.
SINGULAR_TOL = 1e-12
#: Solution components above this floor are clamped to zero.
NEGATIVE_TOL = -1e-12

# oracle_sweep bit layout: bit = 4 * model + filter
MODEL_BIT = {"classical": 0, "quantum-pure": 4, "quantum-mixed": 8}
FILTER_BIT = {"any": 0, "intransitive-i": 1, "intransitive-ii": 2, "transitive-any": 3}

# forward_map status codes
OK, SINGULAR, OUT_OF_SIMPLEX = 0, 1, 2


def _classify_code(x1, x2, x3):
    """Class codes from sign patterns: 0..5 strict orders, 6/7 cycles, 8 boundary."""
    boundary = (x1 == 0.0) | (x2 == 0.0) | (x3 == 0.0)
    cyc1 = (x1 > 0.0) & (x2 < 0.0) & (x3 > 0.0)
    cyc2 = (x1 < 0.0) & (x2 > 0.0) & (x3 < 0.0)
    wins0 = (x3 < 0.0).astype(np.int8) + (x1 > 0.0)
    wins1 = (x3 > 0.0).astype(np.int8) + (x2 > 0.0)
    wins2 = (x1 < 0.0).astype(np.int8) + (x2 < 0.0)
    first = np.where(wins0 == 2, 0, np.where(wins1 == 2, 1, 2)).astype(np.int8)
    third = np.where(wins0 == 0, 0, np.where(wins1 == 0, 1, 2)).astype(np.int8)
    second = (3 - first - third).astype(np.int8)
    code = (2 * first + (second > third)).astype(np.uint8)
    code = np.where(cyc1, np.uint8(6), code)
    code = np.where(cyc2, np.uint8(7), code)
    return np.where(boundary, np.uint8(8), code)


def forward_map(p02, p01, p10):
    """Map strategies to the frequency triples they are optimal for.

    Parameters are equal-length float64 arrays. Returns
    ``(q0, q1, q2, status, cls)`` where status is 0 (valid simplex point,
    q renormalized to unit sum), 1 (singular system, q zeroed), or 2
    (solution outside the simplex, q holds the raw triple), and cls is the
    strategy's class code.
    """
    a, b, c = p02, p01, p10
    dpos = a * c * (1.0 - b) + b * (1.0 - a) * (1.0 - c)
    singular = np.abs(dpos) < SINGULAR_TOL
    d_safe = np.where(singular, 1.0, dpos)
    q2r = ((b + c) * THIRD - b * c) / d_safe
    q1r = ((a + 1.0 - c) * THIRD - a * (1.0 - c)) / d_safe
    q0r = ((2.0 - a - b) * THIRD - (1.0 - a) * (1.0 - b)) / d_safe
    out = ~singular & (np.minimum(np.minimum(q0r, q1r), q2r) < NEGATIVE_TOL)
    ok = ~singular & ~out

    q0c = np.maximum(q0r, 0.0)
    q1c = np.maximum(q1r, 0.0)
    q2c = np.maximum(q2r, 0.0)
    s = q0c + q1c + q2c
    s_safe = np.where(ok, s, 1.0)
    q0 = np.where(ok, q0c / s_safe, np.where(out, q0r, 0.0))
    q1 = np.where(ok, q1c / s_safe, np.where(out, q1r, 0.0))
    q2 = np.where(ok, q2c / s_safe, np.where(out, q2r, 0.0))

    status = np.where(singular, np.uint8(SINGULAR), np.uint8(OK))
    status = np.where(out, np.uint8(OUT_OF_SIMPLEX), status)
    x1 = 2.0 * b - 1.0
    x2 = 2.0 * c - 1.0
    x3 = 1.0 - 2.0 * a
    return q0, q1, q2, status, _classify_code(x1, x2, x3)


def _class_bits(lo, hi, t1, t2, t3, alpha1, beta1, alpha2, beta2, live):
    """Strict class reachability on the admissible segment [lo, hi].

    The three sign-change knots are clipped into the segment; between
    consecutive clipped knots the sign pattern is constant, so testing the
    four gap midpoints covers every pattern the segment meets. Returns
    (cycle1, cycle2, transitive) boolean arrays, False outside ``live``.
    """
    c1 = np.minimum(np.maximum(t1, lo), hi)
    c2 = np.minimum(np.maximum(t2, lo), hi)
    c3 = np.minimum(np.maximum(t3, lo), hi)
    s1 = np.minimum(np.minimum(c1, c2), c3)
    s3 = np.maximum(np.maximum(c1, c2), c3)
    s2 = np.maximum(np.minimum(c1, c2), np.minimum(np.maximum(c1, c2), c3))
    b_i = np.zeros(lo.shape, dtype=bool)
    b_ii = np.zeros(lo.shape, dtype=bool)
    b_tr = np.zeros(lo.shape, dtype=bool)
    for left, right in ((lo, s1), (s1, s2), (s2, s3), (s3, hi)):
        m = 0.5 * (left + right)
        x1 = alpha1 + beta1 * m
        x2 = alpha2 + beta2 * m
        x3 = 1.0 - 2.0 * m
        cyc1 = (x1 > 0.0) & (x2 < 0.0) & (x3 > 0.0)
        cyc2 = (x1 < 0.0) & (x2 > 0.0) & (x3 < 0.0)
        nz = (x1 != 0.0) & (x2 != 0.0) & (x3 != 0.0)
        b_i |= cyc1
        b_ii |= cyc2
        b_tr |= nz & ~cyc1 & ~cyc2
    return b_i & live, b_ii & live, b_tr & live


def _root_class_bits(r, inside, alpha1, beta1, alpha2, beta2):
    x1 = alpha1 + beta1 * r
    x2 = alpha2 + beta2 * r
    x3 = 1.0 - 2.0 * r
    cyc1 = (x1 > 0.0) & (x2 < 0.0) & (x3 > 0.0)
    cyc2 = (x1 < 0.0) & (x2 > 0.0) & (x3 < 0.0)
    nz = (x1 != 0.0) & (x2 != 0.0) & (x3 != 0.0)
    return cyc1 & inside, cyc2 & inside, nz & ~cyc1 & ~cyc2 & inside


def oracle_sweep(q0, q1, q2):
    """Feasibility bits for strictly interior frequency triples.

    Parameters are equal-length float64 arrays with every component > 0
    (grid centroids satisfy this; simplex edges take the scalar path in
    ``trigame.feasibility``). The returned uint16 packs, per element, the
    twelve decisions bit = 4*model + filter with models (classical, pure
    sphere, mixed ball) and filters (any, cycle one, cycle two, strict
    transitive).

    Method: optimality pins the strategy line t -> (t, p01(t), p10(t)) with
    t the free probability p02. Classical feasibility is a box-interval
    intersection [lo, hi]; the sphere adds the unit-norm quadratic
    g(t) = 1, solved in the cancellation-free form; the ball needs
    g(t) <= 1 somewhere, i.e. the segment between the roots. Class filters
    test strict sign patterns at segment midpoints between sign-change
    knots (classical box interval and ball segment) or at the admissible
    roots (sphere).

    The ball's any decision is computed from its own segment [mlo, mhi] but
    provably equals the sphere one: at every endpoint of [lo, hi] some
    coordinate sits at +-1, so g >= 1 there and the segment reaches norm 1
    whenever it dips inside. Class decisions do not collapse the same way:
    the segment can cross sign-change knots that neither root reaches, so
    the ball's class regions properly contain the sphere's.
    """
    lo = np.maximum(0.0, np.maximum((THIRD - q1) / q2, (q2 - THIRD) / q2))
    hi = np.minimum(1.0, np.minimum(THIRD / q2, (q0 + q2 - THIRD) / q2))
    classical_any = lo <= hi

    alpha1 = TWO_THIRDS / q1 - 1.0
    beta1 = -2.0 * (q2 / q1)
    alpha2 = 2.0 * ((THIRD - q2) / q0) - 1.0
    beta2 = 2.0 * (q2 / q0)
    t1 = (THIRD - 0.5 * q1) / q2
    t2 = (0.5 * q0 + q2 - THIRD) / q2
    t3 = np.full(q0.shape, 0.5)

    cl_i, cl_ii, cl_tr = _class_bits(
        lo, hi, t1, t2, t3, alpha1, beta1, alpha2, beta2, classical_any
    )

    big_a = beta1 * beta1 + beta2 * beta2 + 4.0
    big_b = 2.0 * (alpha1 * beta1 + alpha2 * beta2 - 2.0)
    big_c = alpha1 * alpha1 + alpha2 * alpha2
    disc = big_b * big_b - 4.0 * (big_a * big_c)
    has_roots = disc >= 0.0
    sq = np.sqrt(np.where(has_roots, disc, 0.0))
    qq = -0.5 * (big_b + np.copysign(sq, big_b))
    r1 = qq / big_a
    r2 = np.where(qq != 0.0, big_c / np.where(qq != 0.0, qq, 1.0), 0.0)

    in1 = (r1 >= lo - TOL) & (r1 <= hi + TOL)
    in2 = (r2 >= lo - TOL) & (r2 <= hi + TOL)
    live = classical_any & has_roots
    pure_any = live & (in1 | in2)
    p1_i, p1_ii, p1_tr = _root_class_bits(r1, live & in1, alpha1, beta1, alpha2, beta2)
    p2_i, p2_ii, p2_tr = _root_class_bits(r2, live & in2, alpha1, beta1, alpha2, beta2)
    pu_i, pu_ii, pu_tr = p1_i | p2_i, p1_ii | p2_ii, p1_tr | p2_tr

    rlo = np.minimum(r1, r2)
    rhi = np.maximum(r1, r2)
    mlo = np.maximum(lo, rlo)
    mhi = np.minimum(hi, rhi)
    mixed_any = live & (mlo <= mhi + TOL)
    # Tangency within slack: collapse the segment to the touch point.
    mid = 0.5 * (mlo + mhi)
    b_lo = np.where(mlo > mhi, mid, mlo)
    b_hi = np.where(mlo > mhi, mid, mhi)
    mx_i, mx_ii, mx_tr = _class_bits(
        b_lo, b_hi, t1, t2, t3, alpha1, beta1, alpha2, beta2, mixed_any
    )

    bits = np.zeros(q0.shape, dtype=np.uint16)
    for shift, flag in (
        (0, classical_any),
        (1, cl_i),
        (2, cl_ii),
        (3, cl_tr),
        (4, pure_any),
        (5, pu_i),
        (6, pu_ii),
        (7, pu_tr),
        (8, mixed_any),
        (9, mx_i),
        (10, mx_ii),
        (11, mx_tr),
    ):
        bits |= flag.astype(np.uint16) << np.uint16(shift)
    return bits
