# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels; API mirrors ``stfib._kernels_py``."""

from fractions import Fraction

cdef extern from "complex.h" nogil:
    double complex cexp(double complex)
    double complex clog(double complex)
    double creal(double complex)
    double cimag(double complex)

from libc.math cimport (pow as c_pow, isfinite as c_isfinite, expm1 as c_expm1, exp as c_exp,
                        sin as c_sin, cos as c_cos)

IMPLEMENTATION = "cython"

cdef long _INT_POW_LIMIT = 1 << 20


cdef inline object _norm(object c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def poly_mul(dict p, dict q):
    cdef Py_ssize_t n1, n2, a, b
    cdef long i1, j1
    if len(p) > len(q):
        p, q = q, p
    cdef list pk = list(p.keys()), pv = list(p.values())
    cdef list qk = list(q.keys()), qv = list(q.values())
    n1 = len(pk)
    n2 = len(qk)
    cdef long[:] qi = _exps(qk, 0)
    cdef long[:] qj = _exps(qk, 1)
    cdef dict out = {}
    cdef object c1, key, prev
    for a in range(n1):
        i1 = pk[a][0]
        j1 = pk[a][1]
        c1 = pv[a]
        for b in range(n2):
            key = (i1 + qi[b], j1 + qj[b])
            prev = out.get(key)
            if prev is None:
                out[key] = c1 * qv[b]
            else:
                out[key] = prev + c1 * qv[b]
    return {k: _norm(c) for k, c in out.items() if c}


cdef long[:] _exps(list keys, int pos):
    import array
    arr = array.array("l", [k[pos] for k in keys])
    return arr


def poly_exact_div(dict p, dict q):
    cdef tuple lead = max(q)
    cdef long li = lead[0], lj = lead[1], mi, mj
    cdef object lc = q[lead], c, f, v
    cdef list rest = [(k, c) for k, c in q.items() if k != lead]
    cdef dict rem = dict(p)
    cdef dict quot = {}
    cdef tuple top, k
    while rem:
        top = max(rem)
        if top[0] < li or top[1] < lj:
            return None
        c = rem.pop(top)
        if type(c) is int and type(lc) is int and c % lc == 0:
            f = c // lc
        else:
            f = _norm(Fraction(c) / lc)
        mi = top[0] - li
        mj = top[1] - lj
        quot[(mi, mj)] = f
        for k, qc in rest:
            key = (k[0] + mi, k[1] + mj)
            v = rem.get(key, 0) - f * qc
            if v:
                rem[key] = v
            else:
                rem.pop(key, None)
    return {k: _norm(c) for k, c in quot.items()}


cdef double complex _ipow(double complex z, long n):
    cdef double complex result = 1.0
    cdef bint neg = n < 0
    if neg:
        n = -n
    while n:
        if n & 1:
            result = result * z
        n >>= 1
        if n:
            z = z * z
    if neg:
        return 1.0 / result
    return result


cdef double complex _cpow(double complex z, double complex a):
    cdef double zr = creal(z), zi = cimag(z) + 0.0, ar = creal(a), ai = cimag(a)
    cdef long n
    z = zr + 1j * zi
    if ai == 0.0 and ar == <double>(<long>ar) and (ar if ar > 0 else -ar) <= _INT_POW_LIMIT:
        n = <long>ar
        if zr == 0.0 and zi == 0.0:
            if n == 0:
                return 1.0
            if n > 0:
                return 0.0
            raise ZeroDivisionError("0 raised to a negative power")
        if zi == 0.0:
            return c_pow(zr, <double>n)
        return _ipow(z, n)
    if zr == 0.0 and zi == 0.0:
        if ar > 0:
            return 0.0
        raise ZeroDivisionError("0 raised to a power with nonpositive real part")
    if zi == 0.0 and zr > 0.0 and ai == 0.0:
        return c_pow(zr, ar)
    return cexp(a * clog(z))


def cpow(z, a):
    return complex(_cpow(complex(z), complex(a)))


cdef inline double complex _cexpm1(double complex z):
    cdef double x = creal(z), y = cimag(z), h
    if y == 0.0:
        return c_expm1(x)
    h = c_sin(y / 2)
    return (c_expm1(x) * c_cos(y) - 2 * h * h) + 1j * (c_exp(x) * c_sin(y))


cdef inline double complex _plog(double complex z):
    return clog(creal(z) + 1j * (cimag(z) + 0.0))


cdef inline double complex _fib(double complex beta, double complex phi, double complex phip,
                                bint degenerate, double complex half_s):
    cdef double br = creal(beta)
    cdef double complex d
    if degenerate:
        return beta * _cpow(half_s, beta - 1.0)
    if cimag(beta) == 0.0 and br == <double>(<long>br) and (br if br > 0 else -br) <= _INT_POW_LIMIT:
        return (_cpow(phi, beta) - _cpow(phip, beta)) / (phi - phip)
    d = beta * (_plog(phi) - _plog(phip))
    return _cpow(phip, beta) * _cexpm1(d) / (phi - phip)


def fib_binet(beta, phi, phip, degenerate, half_s):
    return complex(_fib(complex(beta), complex(phi), complex(phip), degenerate, complex(half_s)))


def lucas_binet(beta, phi, phip, degenerate, half_s):
    cdef double complex b = complex(beta)
    if degenerate:
        return complex(2.0 * _cpow(complex(half_s), b))
    return complex(_cpow(complex(phi), b) + _cpow(complex(phip), b))


def fibonomial_row(alpha, long N, phi, phip, bint degenerate, half_s):
    cdef double complex a = complex(alpha), p = complex(phi), pp = complex(phip), h = complex(half_s)
    cdef double complex c = 1.0
    cdef long k
    cdef list row = [1.0 + 0j]
    for k in range(1, N + 1):
        c = c * _fib(a - (k - 1), p, pp, degenerate, h) / _fib(<double complex>k, p, pp, degenerate, h)
        row.append(complex(c))
    return row


def unit_series_coeffs(alpha, long N, v, phi, phip, bint degenerate, half_s):
    cdef double complex a = complex(alpha), p = complex(phi), pp = complex(phip), h = complex(half_s)
    cdef double complex vv = complex(v), c = 1.0, vk = 1.0
    cdef long k
    cdef list out = [1.0 + 0j]
    for k in range(N):
        c = c * _fib(a - k, p, pp, degenerate, h) / _fib(<double complex>(k + 1), p, pp, degenerate, h) * vk
        vk = vk * vv
        out.append(complex(c))
    return out


def horner(coeffs, x):
    cdef double complex acc = 0.0, xx = complex(x)
    cdef Py_ssize_t i
    cdef list cs = list(coeffs)
    for i in range(len(cs) - 1, -1, -1):
        acc = acc * xx + <double complex>complex(cs[i])
    return complex(acc)


def partial_sums(coeffs, x):
    cdef double complex acc = 0.0, xp = 1.0, xx = complex(x)
    cdef list out = []
    for c in coeffs:
        acc = acc + <double complex>complex(c) * xp
        xp = xp * xx
        out.append(complex(acc))
    return out


def isfinite(z):
    z = complex(z)
    return bool(c_isfinite(z.real) and c_isfinite(z.imag))
