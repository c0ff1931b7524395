# cython: language_level=3, boundscheck=False, cdivision=True
"""Compiled kernels for the non-central chi-squared power-gain law.

Twin of ``_pure.py``: identical algorithm and operation order, so the
backends agree to the last few ulps (libm vs CPython lgamma).  Keep the
two files in sync when touching either.
"""

from libc.math cimport exp, log, expm1, lgamma, fabs, INFINITY

from leo_cache_sim.errors import ConvergenceError

DEF TERM_EPS = 1e-15
DEF MAX_TERMS = 500_000
DEF MAX_IGAMMA_ITER = 200_000
DEF QUANTILE_CDF_TOL = 1e-9
DEF MAX_BISECT_ITER = 300


cpdef double gammainc_lower(double a, double x) except *:
    """Regularized lower incomplete gamma P(a, x) for a > 0."""
    cdef double ap, term, total, tiny, b, c, d, h, an, delta, q
    cdef long i
    if a <= 0.0:
        raise ValueError("gammainc_lower requires a > 0")
    if x <= 0.0:
        if x < 0.0:
            raise ValueError("gammainc_lower requires x >= 0")
        return 0.0
    if x < a + 1.0:
        ap = a
        term = 1.0 / a
        total = term
        for i in range(MAX_IGAMMA_ITER):
            ap += 1.0
            term *= x / ap
            total += term
            if fabs(term) < fabs(total) * TERM_EPS:
                return total * exp(-x + a * log(x) - lgamma(a))
        raise ConvergenceError("incomplete-gamma series hit iteration cap")
    tiny = 1e-300
    b = x + 1.0 - a
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, MAX_IGAMMA_ITER):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if fabs(d) < tiny:
            d = tiny
        c = b + an / c
        if fabs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if fabs(delta - 1.0) < TERM_EPS:
            q = exp(-x + a * log(x) - lgamma(a)) * h
            return 1.0 - q
    raise ConvergenceError("incomplete-gamma continued fraction hit iteration cap")


cpdef double ncx2_cdf(double x, double noncentrality) except *:
    """CDF of the non-central chi-squared law with 2 degrees of freedom."""
    cdef double hx, hl, p0, d0, g0, total, p, g, d, term, prev
    cdef long j0, j, it
    if noncentrality < 0.0:
        raise ValueError("noncentrality must be >= 0")
    if x <= 0.0:
        return 0.0
    hx = 0.5 * x
    if noncentrality == 0.0:
        return -expm1(-hx)
    hl = 0.5 * noncentrality
    j0 = <long> hl
    p0 = exp(-hl + j0 * log(hl) - lgamma(j0 + 1.0))
    d0 = exp(-hx + j0 * log(hx) - lgamma(j0 + 1.0))
    g0 = gammainc_lower(j0 + 1.0, hx)
    total = p0 * g0

    p = p0
    g = g0
    d = d0
    j = j0
    for it in range(MAX_TERMS):
        j += 1
        p *= hl / j
        d *= hx / j
        g -= d
        if g < 0.0:
            g = 0.0
        term = p * g
        total += term
        if term <= total * TERM_EPS * 0.01:
            break
    else:
        raise ConvergenceError("ncx2_cdf mixture hit iteration cap (upward)")

    p = p0
    g = g0
    d = d0
    j = j0
    prev = INFINITY
    for it in range(MAX_TERMS):
        if j == 0:
            break
        p *= j / hl
        g += d
        d *= j / hx
        j -= 1
        if g > 1.0:
            g = 1.0
        term = p * g
        total += term
        if term <= total * TERM_EPS * 0.01 and term <= prev:
            break
        prev = term
    else:
        raise ConvergenceError("ncx2_cdf mixture hit iteration cap (downward)")

    if total > 1.0:
        return 1.0
    return total


cpdef double marcum_q1(double a, double b) except *:
    """First-order Marcum Q function Q1(a, b) via the mixture CDF."""
    if a < 0.0 or b < 0.0:
        raise ValueError("marcum_q1 requires a >= 0 and b >= 0")
    return 1.0 - ncx2_cdf(b * b, a * a)


cpdef double ncx2_quantile(double p, double noncentrality) except *:
    """Inverse CDF by bisection: x with |ncx2_cdf(x, nc) - p| <= 1e-9."""
    cdef double lo, hi, mid, c
    cdef long i
    if not 0.0 < p < 1.0:
        raise ValueError("quantile level must lie in (0, 1)")
    if noncentrality < 0.0:
        raise ValueError("noncentrality must be >= 0")
    lo = 0.0
    hi = noncentrality + 2.0
    for i in range(MAX_BISECT_ITER):
        if ncx2_cdf(hi, noncentrality) >= p:
            break
        hi *= 2.0
    else:
        raise ConvergenceError("ncx2_quantile failed to bracket the root")
    for i in range(MAX_BISECT_ITER):
        mid = 0.5 * (lo + hi)
        c = ncx2_cdf(mid, noncentrality)
        if fabs(c - p) <= QUANTILE_CDF_TOL:
            return mid
        if c < p:
            lo = mid
        else:
            hi = mid
    raise ConvergenceError(
        "ncx2_quantile bisection did not reach |cdf - p| <= 1e-9 "
        "after %d iterations" % MAX_BISECT_ITER
    )
