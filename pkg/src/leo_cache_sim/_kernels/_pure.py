"""Pure-Python kernels for the non-central chi-squared power-gain law.

These are the hot inner loops of every power inversion: each outage
quantile runs a bisection whose every step evaluates the 2-DOF
non-central chi-squared CDF series.  A compiled twin of this module
lives in ``_ncx2.pyx``; both implement the identical algorithm, so the
backends agree to the last few ulps (CPython ships its own lgamma, so
exact bitwise equality across backends is not guaranteed).

The CDF is the Marcum-Q mixture 1 - Q1(sqrt(nc), sqrt(x)), evaluated as
a Poisson-weighted sum of central chi-squared CDFs.  The sum starts at
the Poisson mode and expands outward so it stays in range for large
noncentrality, and it truncates once a term falls below the running
total times TERM_EPS / 100 (with a hard iteration cap).
"""

import math

from leo_cache_sim.errors import ConvergenceError

TERM_EPS = 1e-15        # relative series truncation threshold
MAX_TERMS = 500_000     # iteration cap for the Poisson mixture
MAX_IGAMMA_ITER = 200_000  # igamma needs ~O(sqrt(a)) terms near x = a
QUANTILE_CDF_TOL = 1e-9
MAX_BISECT_ITER = 300


def gammainc_lower(a, x):
    """Regularized lower incomplete gamma P(a, x) for a > 0.

    Series expansion for x < a + 1, Lentz continued fraction otherwise
    (the classic gser/gcf split).  The exp/lgamma prefactor limits the
    relative accuracy to roughly a * 1e-15 for x near a, so results are
    good to ~1e-14 for moderate shapes and ~1e-9 at a ~ 1e6.
    """
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
        for _ in range(MAX_IGAMMA_ITER):
            ap += 1.0
            term *= x / ap
            total += term
            if abs(term) < abs(total) * TERM_EPS:
                return total * math.exp(-x + a * math.log(x) - math.lgamma(a))
        raise ConvergenceError("incomplete-gamma series hit iteration cap")
    # x >= a + 1 guarantees b0 >= 2, so the CF start is well defined
    tiny = 1e-300
    b = x + 1.0 - a
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, MAX_IGAMMA_ITER):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < TERM_EPS:
            q = math.exp(-x + a * math.log(x) - math.lgamma(a)) * h
            return 1.0 - q
    raise ConvergenceError("incomplete-gamma continued fraction hit iteration cap")


def ncx2_cdf(x, noncentrality):
    """CDF of the non-central chi-squared law with 2 degrees of freedom.

    Equals 1 - Q1(sqrt(noncentrality), sqrt(x)).  The central case
    reduces to the exponential CDF; otherwise the Poisson mixture over
    central chi-squared CDFs is summed outward from the Poisson mode.
    """
    if noncentrality < 0.0:
        raise ValueError("noncentrality must be >= 0")
    if x <= 0.0:
        return 0.0
    hx = 0.5 * x
    if noncentrality == 0.0:
        return -math.expm1(-hx)
    hl = 0.5 * noncentrality
    j0 = int(hl)
    p0 = math.exp(-hl + j0 * math.log(hl) - math.lgamma(j0 + 1.0))
    d0 = math.exp(-hx + j0 * math.log(hx) - math.lgamma(j0 + 1.0))
    g0 = gammainc_lower(j0 + 1.0, hx)
    total = p0 * g0

    # upward from the mode: p_{j+1} = p_j * hl/(j+1), g_{j+1} = g_j - d_{j+1}
    p = p0
    g = g0
    d = d0
    j = j0
    for _ in range(MAX_TERMS):
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

    # downward from the mode: p_{j-1} = p_j * j/hl, g_{j-1} = g_j + d_j.
    # Terms can grow until j ~ hx, so truncate only once they decay.
    p = p0
    g = g0
    d = d0
    j = j0
    prev = math.inf
    for _ in range(MAX_TERMS):
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


def marcum_q1(a, b):
    """First-order Marcum Q function Q1(a, b) via the mixture CDF.

    Accuracy is absolute (series truncation level), not relative in the
    far upper tail.
    """
    if a < 0.0 or b < 0.0:
        raise ValueError("marcum_q1 requires a >= 0 and b >= 0")
    return 1.0 - ncx2_cdf(b * b, a * a)


def ncx2_quantile(p, noncentrality):
    """Inverse CDF by bisection: x with |ncx2_cdf(x, nc) - p| <= 1e-9.

    Brackets the root by doubling from the distribution mean, then
    bisects; raises ConvergenceError at the iteration cap.
    """
    if not 0.0 < p < 1.0:
        raise ValueError("quantile level must lie in (0, 1)")
    if noncentrality < 0.0:
        raise ValueError("noncentrality must be >= 0")
    lo = 0.0
    hi = noncentrality + 2.0
    for _ in range(MAX_BISECT_ITER):
        if ncx2_cdf(hi, noncentrality) >= p:
            break
        hi *= 2.0
    else:
        raise ConvergenceError("ncx2_quantile failed to bracket the root")
    for _ in range(MAX_BISECT_ITER):
        mid = 0.5 * (lo + hi)
        c = ncx2_cdf(mid, noncentrality)
        if abs(c - p) <= QUANTILE_CDF_TOL:
            return mid
        if c < p:
            lo = mid
        else:
            hi = mid
    raise ConvergenceError(
        "ncx2_quantile bisection did not reach |cdf - p| <= 1e-9 "
        f"after {MAX_BISECT_ITER} iterations"
    )
