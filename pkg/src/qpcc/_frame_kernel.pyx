# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled frame optimizer. Mirrors ``_frame_kernel_py`` operation for operation."""

from libc.math cimport cos, sin, sqrt, fabs

cdef enum:
    MAXD = 6

KIND_FRAME = 0
KIND_SINGLE = 1


cdef inline void _euler_rows(double al, double be, double ga, double r[3][3]) noexcept nogil:
    cdef double ca = cos(al), sa = sin(al)
    cdef double cb = cos(be), sb = sin(be)
    cdef double cg = cos(ga), sg = sin(ga)
    r[0][0] = ca * cb * cg - sa * sg
    r[0][1] = -ca * cb * sg - sa * cg
    r[0][2] = ca * sb
    r[1][0] = sa * cb * cg + ca * sg
    r[1][1] = -sa * cb * sg + ca * cg
    r[1][2] = sa * sb
    r[2][0] = -sb * cg
    r[2][1] = sb * sg
    r[2][2] = cb


cdef inline void _sphere(double th, double ph, double *v) noexcept nogil:
    cdef double st = sin(th)
    v[0] = st * cos(ph)
    v[1] = st * sin(ph)
    v[2] = cos(th)


cdef inline double _pair_term(const double *c, const double *n, const double *s,
                              const double *a, const double *b, double eps) noexcept nogil:
    cdef double num = 0.0, row, an, bs, va, vb
    cdef int k
    for k in range(3):
        row = a[k] * (c[3 * k] * b[0] + c[3 * k + 1] * b[1] + c[3 * k + 2] * b[2])
        num += row
    an = a[0] * n[0] + a[1] * n[1] + a[2] * n[2]
    bs = b[0] * s[0] + b[1] * s[1] + b[2] * s[2]
    va = 1.0 - an * an
    vb = 1.0 - bs * bs
    if va <= eps or vb <= eps:
        return 0.0
    return fabs(num) / sqrt(va * vb)


cdef double _frame(const double *c, const double *n, const double *s, const double *x, double eps) noexcept nogil:
    cdef double ra[3][3]
    cdef double rb[3][3]
    cdef double total = 0.0
    cdef int i
    _euler_rows(x[0], x[1], x[2], ra)
    _euler_rows(x[3], x[4], x[5], rb)
    for i in range(3):
        total += _pair_term(c, n, s, ra[i], rb[i], eps)
    return total


cdef double _single(const double *c, const double *n, const double *s, const double *x, double eps) noexcept nogil:
    cdef double a[3]
    cdef double b[3]
    _sphere(x[0], x[1], a)
    _sphere(x[2], x[3], b)
    return _pair_term(c, n, s, a, b, eps)


cdef inline double _obj(int kind, const double *c, const double *n, const double *s,
                        const double *x, double eps) noexcept nogil:
    if kind == 0:
        return -_frame(c, n, s, x, eps)
    return -_single(c, n, s, x, eps)


cdef void _sort(double sim[MAXD + 1][MAXD], double *fsim, int m, int dim) noexcept nogil:
    cdef int i, j, k
    cdef double fi
    cdef double xi[MAXD]
    for i in range(1, m):
        fi = fsim[i]
        for k in range(dim):
            xi[k] = sim[i][k]
        j = i - 1
        while j >= 0 and fsim[j] > fi:
            fsim[j + 1] = fsim[j]
            for k in range(dim):
                sim[j + 1][k] = sim[j][k]
            j -= 1
        fsim[j + 1] = fi
        for k in range(dim):
            sim[j + 1][k] = xi[k]


cdef int _nelder_mead(int kind, const double *c, const double *n, const double *s,
                      double *x, double *fout, double step, int max_iters,
                      double xtol, double ftol, double eps, int dim, int *converged) noexcept nogil:
    cdef double sim[MAXD + 1][MAXD]
    cdef double fsim[MAXD + 1]
    cdef double xbar[MAXD]
    cdef double xr[MAXD]
    cdef double xe[MAXD]
    cdef double xc[MAXD]
    cdef double fr, fe, fc, fspread, xspread, d
    cdef int i, j, it = 0, shrink

    for i in range(dim):
        sim[0][i] = x[i]
    for j in range(dim):
        for i in range(dim):
            sim[j + 1][i] = x[i]
        sim[j + 1][j] += step
    for j in range(dim + 1):
        fsim[j] = _obj(kind, c, n, s, sim[j], eps)
    _sort(sim, fsim, dim + 1, dim)

    converged[0] = 0
    while it < max_iters:
        fspread = 0.0
        xspread = 0.0
        for j in range(1, dim + 1):
            d = fabs(fsim[j] - fsim[0])
            if d > fspread:
                fspread = d
            for i in range(dim):
                d = fabs(sim[j][i] - sim[0][i])
                if d > xspread:
                    xspread = d
        if fspread <= ftol and xspread <= xtol:
            converged[0] = 1
            break
        it += 1

        for i in range(dim):
            xbar[i] = 0.0
        for j in range(dim):
            for i in range(dim):
                xbar[i] += sim[j][i]
        for i in range(dim):
            xbar[i] /= dim

        for i in range(dim):
            xr[i] = xbar[i] + (xbar[i] - sim[dim][i])
        fr = _obj(kind, c, n, s, xr, eps)
        shrink = 0
        if fr < fsim[0]:
            for i in range(dim):
                xe[i] = xbar[i] + 2.0 * (xbar[i] - sim[dim][i])
            fe = _obj(kind, c, n, s, xe, eps)
            if fe < fr:
                for i in range(dim):
                    sim[dim][i] = xe[i]
                fsim[dim] = fe
            else:
                for i in range(dim):
                    sim[dim][i] = xr[i]
                fsim[dim] = fr
        elif fr < fsim[dim - 1]:
            for i in range(dim):
                sim[dim][i] = xr[i]
            fsim[dim] = fr
        elif fr < fsim[dim]:
            for i in range(dim):
                xc[i] = xbar[i] + 0.5 * (xr[i] - xbar[i])
            fc = _obj(kind, c, n, s, xc, eps)
            if fc <= fr:
                for i in range(dim):
                    sim[dim][i] = xc[i]
                fsim[dim] = fc
            else:
                shrink = 1
        else:
            for i in range(dim):
                xc[i] = xbar[i] + 0.5 * (sim[dim][i] - xbar[i])
            fc = _obj(kind, c, n, s, xc, eps)
            if fc < fsim[dim]:
                for i in range(dim):
                    sim[dim][i] = xc[i]
                fsim[dim] = fc
            else:
                shrink = 1
        if shrink:
            for j in range(1, dim + 1):
                for i in range(dim):
                    sim[j][i] = sim[0][i] + 0.5 * (sim[j][i] - sim[0][i])
                fsim[j] = _obj(kind, c, n, s, sim[j], eps)
        _sort(sim, fsim, dim + 1, dim)

    for i in range(dim):
        x[i] = sim[0][i]
    fout[0] = fsim[0]
    return it


def _vec(seq, int size):
    out = [float(v) for v in seq]
    if len(out) != size:
        raise ValueError(f"expected {size} values, got {len(out)}")
    return out


def frame_value(c, n, s, x, double eps=1e-12):
    cdef double cc[9]
    cdef double nn[3]
    cdef double ss[3]
    cdef double xx[6]
    cdef int i
    for i, v in enumerate(_vec(c, 9)):
        cc[i] = v
    for i, v in enumerate(_vec(n, 3)):
        nn[i] = v
    for i, v in enumerate(_vec(s, 3)):
        ss[i] = v
    for i, v in enumerate(_vec(x, 6)):
        xx[i] = v
    return _frame(cc, nn, ss, xx, eps)


def single_value(c, n, s, x, double eps=1e-12):
    cdef double cc[9]
    cdef double nn[3]
    cdef double ss[3]
    cdef double xx[4]
    cdef int i
    for i, v in enumerate(_vec(c, 9)):
        cc[i] = v
    for i, v in enumerate(_vec(n, 3)):
        nn[i] = v
    for i, v in enumerate(_vec(s, 3)):
        ss[i] = v
    for i, v in enumerate(_vec(x, 4)):
        xx[i] = v
    return _single(cc, nn, ss, xx, eps)


def multistart(int kind, c, n, s, starts, double step, int max_iters, double xtol,
               double ftol, double eps, int polish):
    """Same contract as ``_frame_kernel_py.multistart``."""
    cdef double cc[9]
    cdef double nn[3]
    cdef double ss[3]
    cdef double x[MAXD]
    cdef double x2[MAXD]
    cdef double f, f2
    cdef int dim = 6 if kind == 0 else 4
    cdef int i, p, it, it2, ok, ok2, total
    for i, v in enumerate(_vec(c, 9)):
        cc[i] = v
    for i, v in enumerate(_vec(n, 3)):
        nn[i] = v
    for i, v in enumerate(_vec(s, 3)):
        ss[i] = v

    values, angles, conv, iters = [], [], [], []
    for x0 in starts:
        for i, v in enumerate(_vec(x0, dim)):
            x[i] = v
        with nogil:
            it = _nelder_mead(kind, cc, nn, ss, x, &f, step, max_iters, xtol, ftol, eps, dim, &ok)
            total = it
            for p in range(polish):
                if not ok:
                    break
                for i in range(dim):
                    x2[i] = x[i]
                it2 = _nelder_mead(kind, cc, nn, ss, x2, &f2, step / 8.0, max_iters, xtol, ftol, eps, dim, &ok2)
                total += it2
                if not f2 < f - ftol:
                    if f2 < f:
                        for i in range(dim):
                            x[i] = x2[i]
                        f = f2
                    break
                for i in range(dim):
                    x[i] = x2[i]
                f = f2
                ok = ok2
        values.append(-f)
        angles.append([x[i] for i in range(dim)])
        conv.append(bool(ok))
        iters.append(total)
    return values, angles, conv, iters
