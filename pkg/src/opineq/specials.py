"""Special functions: Bessel J/Y with derivatives and zeros, gamma,
iterated logarithms/exponentials, and Bessel-type jets.

Bessel evaluation strategy: ascending power series (compensated summation)
for z < 5 where it is cancellation-free, and Steed's CF1/CF2 continued
fractions with Wronskian normalization for z >= 5, which covers all orders
0 <= nu <= 50 uniformly. The two routes and a large-z asymptotic expansion
are cross-checked against each other in the test suite. Range is capped at
z <= 200, nu <= 50: everything this package derives lives far below, and
failing loudly beats quietly extrapolating.
"""

import math

import numpy as np

from .errors import DomainError
from .jets import Jet, compose

EULER = 0.5772156649015328606065
MAX_Z = 200.0
MAX_NU = 50.0
_SERIES_Z = 5.0
_EPS = 1e-15
_FPMIN = 1e-300
_MAXIT = 10000

# Lanczos approximation, g = 7, 9 terms.
_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def gamma(x):
    """Gamma function for real x (poles at nonpositive integers rejected)."""
    if x <= 0.0 and x == math.floor(x):
        raise DomainError(f"gamma pole at x={x}", x=x)
    if x < 0.5:
        return math.pi / (math.sin(math.pi * x) * gamma(1.0 - x))
    x -= 1.0
    acc = _LANCZOS[0]
    for i in range(1, len(_LANCZOS)):
        acc += _LANCZOS[i] / (x + i)
    t = x + _LANCZOS_G + 0.5
    return math.sqrt(2.0 * math.pi) * t ** (x + 0.5) * math.exp(-t) * acc


def _psi_int(m):
    """Digamma at a positive integer: -euler + H_{m-1}."""
    return -EULER + sum(1.0 / i for i in range(1, m))


def _check_range(nu, z, *, positive_z=False):
    if nu < 0.0 or nu > MAX_NU:
        raise DomainError(f"Bessel order nu={nu} outside [0, {MAX_NU}]")
    if z > MAX_Z or z < 0.0 or (positive_z and z == 0.0):
        raise DomainError(f"Bessel argument z={z} outside supported range", x=z)


def _j_series(order, z):
    """Ascending series for J_order(z), any order > -1; Kahan-compensated."""
    if z == 0.0:
        return 1.0 if order == 0.0 else 0.0
    half = 0.5 * z
    prefac = half**order / gamma(order + 1.0)
    term = 1.0
    total = 1.0
    comp = 0.0
    m = -half * half
    for k in range(1, 200):
        term *= m / (k * (order + k))
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
        if abs(term) < 1e-18 * (1.0 + abs(total)):
            break
    return prefac * total


def _jy_steed(nu, x):
    """(J, J', Y, Y') at order nu, argument x >= ~5, via CF1/CF2."""
    nl = max(0, int(nu - x + 1.5))
    mu = nu - nl
    xi = 1.0 / x
    w = 2.0 * xi / math.pi

    # CF1: h = J'_nu / J_nu, with the sign of J_nu tracked in isign.
    isign = 1
    h = max(nu * xi, _FPMIN)
    b = 2.0 * nu * xi
    d = 0.0
    c = h
    for _ in range(_MAXIT):
        b += 2.0 * xi
        d = b - d
        if abs(d) < _FPMIN:
            d = _FPMIN
        c = b - 1.0 / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        delta = c * d
        h *= delta
        if d < 0.0:
            isign = -isign
        if abs(delta - 1.0) < _EPS:
            break
    else:
        raise DomainError(f"Bessel CF1 failed to converge at nu={nu}, z={x}", x=x)

    # unnormalized backward recurrence from nu down to mu
    rjl = isign * _FPMIN
    rjpl = h * rjl
    rjl1, rjp1 = rjl, rjpl
    fact = nu * xi
    for _ in range(nl):
        rjtemp = fact * rjl + rjpl
        fact -= xi
        rjpl = fact * rjtemp - rjl
        rjl = rjtemp
    if rjl == 0.0:
        rjl = _EPS
    f = rjpl / rjl

    # CF2 for (J' + iY')/(J + iY) at order mu, complex modified Lentz.
    mu2 = mu * mu
    cf = complex(-0.5 * xi, 1.0)
    if abs(cf) < _FPMIN:
        cf = complex(_FPMIN, 0.0)
    cc = cf
    dd = 0.0 + 0.0j
    for k in range(1, _MAXIT):
        if k == 1:
            a = complex(0.0, xi) * (0.25 - mu2)
        else:
            a = complex((k - 0.5) ** 2 - mu2, 0.0)
        bb = complex(2.0 * x, 2.0 * k)
        dd = bb + a * dd
        if abs(dd) < _FPMIN:
            dd = complex(_FPMIN, 0.0)
        cc = bb + a / cc
        if abs(cc) < _FPMIN:
            cc = complex(_FPMIN, 0.0)
        dd = 1.0 / dd
        delta = cc * dd
        cf *= delta
        if abs(delta - 1.0) < _EPS:
            break
    else:
        raise DomainError(f"Bessel CF2 failed to converge at nu={nu}, z={x}", x=x)
    p, q = cf.real, cf.imag

    gam = (p - f) / q
    jmu = math.sqrt(w / ((p - f) * gam + q))
    if rjl < 0.0:
        jmu = -jmu
    ymu = jmu * gam
    ymup = ymu * (p + q / gam)

    # upward recurrence mu -> nu for Y; rescale the J ladder.
    y_prev = ymu
    y_curr = (mu * xi) * ymu - ymup
    m = mu + 1.0
    for _ in range(nl - 1):
        y_prev, y_curr = y_curr, (2.0 * m * xi) * y_curr - y_prev
        m += 1.0
    if nl == 0:
        ynu, ynup = ymu, ymup
    else:
        ynu = y_curr
        ynup = y_prev - (nu * xi) * ynu
    scale = jmu / rjl
    jnu = rjl1 * scale
    jnup = rjp1 * scale
    return jnu, jnup, ynu, ynup


def _y_int_small(n, z):
    """Y_n(z) for integer n >= 0, z < ~5, by the logarithmic series."""
    half = 0.5 * z
    x2 = half * half

    def y_series(n):
        # finite part: (z/2)^(-n)/pi * sum_{k<n} (n-k-1)!/k! (z^2/4)^k
        s_fin = 0.0
        pw = half ** (-n) / math.pi
        for k in range(n):
            s_fin += math.factorial(n - k - 1) / math.factorial(k) * pw
            pw *= x2
        # infinite part: (z/2)^n/pi * sum_k (psi(k+1)+psi(n+k+1)) (-z^2/4)^k / (k!(n+k)!)
        s_inf = 0.0
        coef = half**n / (math.pi * math.factorial(n))
        psi1 = -EULER
        psi2 = _psi_int(n + 1)
        for k in range(200):
            if k > 0:
                coef *= -x2 / (k * (n + k))
                psi1 += 1.0 / k
                psi2 += 1.0 / (n + k)
            term = (psi1 + psi2) * coef
            s_inf += term
            if k > 3 and abs(term) < 1e-18 * (1.0 + abs(s_inf)):
                break
        jn = _j_series(float(n), z)
        return (2.0 / math.pi) * math.log(half) * jn - s_fin - s_inf

    if n <= 1:
        return y_series(n)
    y0, y1 = y_series(0), y_series(1)
    for m in range(1, n):
        y0, y1 = y1, (2.0 * m / z) * y1 - y0
    return y1


def _y_small(nu, z):
    """Y_nu(z) for z < ~5: integer series, or reflection for non-integer nu.

    Orders within 1e-6 of an integer are computed at that integer (the
    reflection formula loses all accuracy there); documented in README.
    """
    near = round(nu)
    if abs(nu - near) < 1e-6:
        return _y_int_small(int(near), z)
    s, c = math.sin(math.pi * nu), math.cos(math.pi * nu)
    return (_j_series(nu, z) * c - _j_series(-nu, z)) / s


def bessel_j(nu, z):
    """Bessel function of the first kind, 0 <= nu <= 50, 0 <= z <= 200."""
    _check_range(nu, z)
    if z < _SERIES_Z:
        return _j_series(nu, z)
    return _jy_steed(nu, z)[0]


def bessel_j_prime(nu, z):
    """d/dz J_nu(z); z = 0 allowed only where the derivative is finite."""
    _check_range(nu, z)
    if z < _SERIES_Z:
        if z == 0.0:
            if nu == 0.0:
                return 0.0
            if nu == 1.0:
                return 0.5
            if nu < 1.0:
                raise DomainError(f"J'_nu singular at z=0 for nu={nu}", x=0.0)
            return 0.0
        return (nu / z) * _j_series(nu, z) - _j_series(nu + 1.0, z)
    return _jy_steed(nu, z)[1]


def bessel_y(nu, z):
    """Bessel function of the second kind, 0 <= nu <= 50, 0 < z <= 200."""
    _check_range(nu, z, positive_z=True)
    if z < _SERIES_Z:
        return _y_small(nu, z)
    return _jy_steed(nu, z)[2]


def bessel_y_prime(nu, z):
    _check_range(nu, z, positive_z=True)
    if z < _SERIES_Z:
        return (nu / z) * _y_small(nu, z) - _y_small(nu + 1.0, z)
    return _jy_steed(nu, z)[3]


def _j_asymptotic(nu, z):
    """Hankel large-z expansion; used as an independent cross-check route."""
    mu = 4.0 * nu * nu
    p, q = 1.0, 0.0
    term = 1.0
    sign_p = -1.0
    k = 0
    while True:
        term *= (mu - (2 * k + 1) ** 2) / (8.0 * z * (k + 1))
        if k % 2 == 0:
            q += term if k % 4 == 0 else -term
        else:
            p += sign_p * term
            sign_p = -sign_p
        k += 1
        if abs(term) < 1e-17 or k > 40:
            break
    omega = z - (0.5 * nu + 0.25) * math.pi
    return math.sqrt(2.0 / (math.pi * z)) * (p * math.cos(omega) - q * math.sin(omega))


# --- root finding ----------------------------------------------------------

def brent(f, a, b, xtol=1e-14, rtol=4e-16, maxiter=200):
    """Brent's method on a sign-change bracket [a, b]."""
    fa, fb = f(a), f(b)
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if fa * fb > 0.0:
        raise ValueError(f"no sign change on [{a}, {b}]")
    c, fc = a, fa
    d = e = b - a
    for _ in range(maxiter):
        if fb * fc > 0.0:
            c, fc = a, fa
            d = e = b - a
        if abs(fc) < abs(fb):
            a, b, c = b, c, b
            fa, fb, fc = fb, fc, fb
        tol1 = 2.0 * rtol * abs(b) + 0.5 * xtol
        xm = 0.5 * (c - b)
        if abs(xm) <= tol1 or fb == 0.0:
            return b
        if abs(e) >= tol1 and abs(fa) > abs(fb):
            s = fb / fa
            if a == c:
                p = 2.0 * xm * s
                qd = 1.0 - s
            else:
                qd = fa / fc
                r = fb / fc
                p = s * (2.0 * xm * qd * (qd - r) - (b - a) * (r - 1.0))
                qd = (qd - 1.0) * (r - 1.0) * (s - 1.0)
            if p > 0.0:
                qd = -qd
            p = abs(p)
            if 2.0 * p < min(3.0 * xm * qd - abs(tol1 * qd), abs(e * qd)):
                e = d
                d = p / qd
            else:
                d = xm
                e = d
        else:
            d = xm
            e = d
        a, fa = b, fb
        b += d if abs(d) > tol1 else math.copysign(tol1, xm)
        fb = f(b)
    raise RuntimeError("brent: iteration limit reached")


_SCAN_STEP = 0.05


def _scan_positive_zeros(f, z_start, count):
    """First ``count`` positive zeros of f by coarse scan + Brent refinement.

    Exact 0.0 samples are skipped as sign carriers: near z=0 high orders
    underflow to zero without a root there.
    """
    zeros = []
    z = z_start
    fz = f(z)
    while len(zeros) < count:
        z2 = z + _SCAN_STEP
        if z2 > MAX_Z:
            raise DomainError(f"no further sign change found up to z={MAX_Z}", x=z)
        fz2 = f(z2)
        if fz2 == 0.0 and fz != 0.0:
            zeros.append(z2)
        elif fz != 0.0 and fz * fz2 < 0.0:
            zeros.append(brent(f, z, z2))
        z, fz = z2, fz2
    return zeros


def bessel_zero(nu, k):
    """k-th positive zero j_{nu,k} of J_nu, 1 <= k <= 20."""
    if not 1 <= k <= 20:
        raise ValueError(f"zero index k={k} outside 1..20")
    _check_range(nu, 0.0)
    return _scan_positive_zeros(lambda z: bessel_j(nu, z), 1e-6, k)[-1]


def g_mixed(gamma_, mu, nu, z, form="derivative"):
    """(1-gamma) J_nu(z) + (2+mu-gamma) z J'_nu(z).

    ``form`` selects the route for the derivative term: "derivative" uses
    J'_nu directly; "recurrence" uses (J_{nu-1} - J_{nu+1})/2 with the two
    orders evaluated independently (for nu < 1 the nu-1 term comes from the
    three-term recurrence instead).
    """
    s = 2.0 + mu - gamma_
    if form == "derivative":
        dterm = bessel_j_prime(nu, z)
    elif form == "recurrence":
        jp1 = bessel_j(nu + 1.0, z)
        if nu >= 1.0:
            jm1 = bessel_j(nu - 1.0, z)
        else:
            jm1 = (2.0 * nu / z) * bessel_j(nu, z) - jp1
        dterm = 0.5 * (jm1 - jp1)
    else:
        raise ValueError(f"unknown form {form!r}")
    return (1.0 - gamma_) * bessel_j(nu, z) + s * z * dterm


def g_zero(gamma_, mu, nu, form="derivative"):
    """First positive zero of the mixed-boundary function g_mixed."""
    if 2.0 + mu - gamma_ <= 0.0:
        raise DomainError(f"need 2+mu-gamma > 0, got {2.0 + mu - gamma_}")
    _check_range(nu, 0.0)
    return _scan_positive_zeros(
        lambda z: g_mixed(gamma_, mu, nu, z, form=form), 1e-6, 1
    )[0]


# --- iterated logarithms and exponentials ----------------------------------

def iter_log(p, x):
    """p-fold iterated logarithm ln_p(x) = ln(ln(...ln(x)))."""
    if p < 1:
        raise ValueError("p must be >= 1")
    v = float(x)
    for i in range(p):
        if v <= 0.0:
            raise DomainError(
                f"iter_log: ln_{i + 1} argument {v} is nonpositive (x={x})", x=x
            )
        v = math.log(v)
    return v


def iter_exp(k):
    """Tower e_1 = 1, e_{k+1} = e^{e_k}; overflows float64 for k >= 5."""
    if k < 1:
        raise ValueError("k must be >= 1")
    v = 1.0
    for _ in range(k - 1):
        v = math.exp(v)  # raises OverflowError once the tower leaves float64
    return v


# --- Bessel-type jets -------------------------------------------------------

def cyl_jet(nu, inner, w0, w1):
    """Jet of w(inner(x)) for any solution w of the order-nu Bessel equation.

    ``inner`` is the jet of the argument z(x) (batched or scalar); ``w0``,
    ``w1`` hold w and dw/dz at the argument values. Higher z-derivatives come
    from the differentiated equation z^2 w'' + z w' + (z^2 - nu^2) w = 0,
    so only value and first derivative of the special function are needed.
    Requires the argument values to stay strictly positive.
    """
    order = inner.order
    z0 = np.atleast_1d(inner.value)
    if np.any(z0 <= 0.0):
        raise DomainError("cyl_jet: argument must be strictly positive")
    width = z0.shape[0]
    w = np.zeros((order + 1, width))
    w[0] = w0
    if order >= 1:
        w[1] = w1
    if order >= 2:
        z2 = z0 * z0
        p2 = (z2, 2.0 * z0, 2.0)
        p1 = (z0, 1.0)
        p0 = (z2 - nu * nu, 2.0 * z0, 2.0)
        for k in range(order - 1):
            acc = np.zeros(width)
            for i in range(1, min(k, 2) + 1):
                acc += math.comb(k, i) * p2[i] * w[k - i + 2]
            for i in range(min(k, 1) + 1):
                acc += math.comb(k, i) * p1[i] * w[k - i + 1]
            for i in range(min(k, 2) + 1):
                acc += math.comb(k, i) * p0[i] * w[k - i]
            w[k + 2] = -acc / z2
    return compose(Jet._raw(w), inner)


def bessel_j_jet(nu, inner):
    """Jet of J_nu(z(x)) given the jet of z(x)."""
    z0 = np.atleast_1d(inner.value)
    w0 = np.array([bessel_j(nu, float(z)) for z in z0])
    w1 = np.array([bessel_j_prime(nu, float(z)) for z in z0])
    return cyl_jet(nu, inner, w0, w1)


def bessel_jy_combo_jet(nu, inner, coef_j, coef_y):
    """Jet of coef_j*J_nu(z(x)) + coef_y*Y_nu(z(x))."""
    z0 = np.atleast_1d(inner.value)
    w0 = np.array(
        [coef_j * bessel_j(nu, float(z)) + coef_y * bessel_y(nu, float(z)) for z in z0]
    )
    w1 = np.array(
        [
            coef_j * bessel_j_prime(nu, float(z)) + coef_y * bessel_y_prime(nu, float(z))
            for z in z0
        ]
    )
    return cyl_jet(nu, inner, w0, w1)
