"""Pure-Python frame optimizer (fallback for the compiled ``_frame_kernel``).

Both modules implement the same arithmetic in the same order so that they
return identical results. Inputs: ``c`` is the 3x3 correlation matrix
flattened row-major, ``n`` and ``s`` the local Bloch vectors.

Objectives
----------
frame  (6 angles): sum_i |a_i^T C b_i| / sqrt((1 - (a_i.n)^2)(1 - (b_i.s)^2)),
                   a_i = rows of Rz(x0) Ry(x1) Rz(x2), b_i likewise from x3..x5.
single (4 angles): the same ratio for one pair of unit vectors given in
                   spherical angles (theta_a, phi_a, theta_b, phi_b).

Terms whose variance factor is <= eps contribute 0.
"""

from math import cos, sin, sqrt

KIND_FRAME = 0
KIND_SINGLE = 1
DIMS = {KIND_FRAME: 6, KIND_SINGLE: 4}


def euler_rows(al, be, ga):
    ca, sa = cos(al), sin(al)
    cb, sb = cos(be), sin(be)
    cg, sg = cos(ga), sin(ga)
    return (
        (ca * cb * cg - sa * sg, -ca * cb * sg - sa * cg, ca * sb),
        (sa * cb * cg + ca * sg, -sa * cb * sg + ca * cg, sa * sb),
        (-sb * cg, sb * sg, cb),
    )


def _pair_term(c, n, s, a, b, eps):
    num = 0.0
    for k in range(3):
        row = a[k] * (c[3 * k] * b[0] + c[3 * k + 1] * b[1] + c[3 * k + 2] * b[2])
        num += row
    an = a[0] * n[0] + a[1] * n[1] + a[2] * n[2]
    bs = b[0] * s[0] + b[1] * s[1] + b[2] * s[2]
    va = 1.0 - an * an
    vb = 1.0 - bs * bs
    if va <= eps or vb <= eps:
        return 0.0
    return abs(num) / sqrt(va * vb)


def frame_value(c, n, s, x, eps=1e-12):
    ra = euler_rows(x[0], x[1], x[2])
    rb = euler_rows(x[3], x[4], x[5])
    total = 0.0
    for i in range(3):
        total += _pair_term(c, n, s, ra[i], rb[i], eps)
    return total


def sphere_point(th, ph):
    st = sin(th)
    return (st * cos(ph), st * sin(ph), cos(th))


def single_value(c, n, s, x, eps=1e-12):
    return _pair_term(c, n, s, sphere_point(x[0], x[1]), sphere_point(x[2], x[3]), eps)


def _objective(kind, c, n, s, x, eps):
    if kind == KIND_FRAME:
        return -frame_value(c, n, s, x, eps)
    return -single_value(c, n, s, x, eps)


def _sort(sim, fsim):
    # stable insertion sort on f
    m = len(fsim)
    for i in range(1, m):
        fi, xi = fsim[i], sim[i]
        j = i - 1
        while j >= 0 and fsim[j] > fi:
            fsim[j + 1] = fsim[j]
            sim[j + 1] = sim[j]
            j -= 1
        fsim[j + 1] = fi
        sim[j + 1] = xi


def nelder_mead(kind, c, n, s, x0, step, max_iters, xtol, ftol, eps):
    """Minimize the negated objective from ``x0``. Returns (x, f, iterations, converged)."""
    dim = len(x0)
    sim = [list(x0)]
    for i in range(dim):
        y = list(x0)
        y[i] += step
        sim.append(y)
    fsim = [_objective(kind, c, n, s, y, eps) for y in sim]
    _sort(sim, fsim)

    it = 0
    converged = False
    while it < max_iters:
        fspread = 0.0
        xspread = 0.0
        for j in range(1, dim + 1):
            d = abs(fsim[j] - fsim[0])
            if d > fspread:
                fspread = d
            for i in range(dim):
                d = abs(sim[j][i] - sim[0][i])
                if d > xspread:
                    xspread = d
        if fspread <= ftol and xspread <= xtol:
            converged = True
            break
        it += 1

        xbar = [0.0] * dim
        for j in range(dim):
            for i in range(dim):
                xbar[i] += sim[j][i]
        for i in range(dim):
            xbar[i] /= dim
        worst = sim[dim]

        xr = [xbar[i] + (xbar[i] - worst[i]) for i in range(dim)]
        fr = _objective(kind, c, n, s, xr, eps)
        shrink = False
        if fr < fsim[0]:
            xe = [xbar[i] + 2.0 * (xbar[i] - worst[i]) for i in range(dim)]
            fe = _objective(kind, c, n, s, xe, eps)
            if fe < fr:
                sim[dim], fsim[dim] = xe, fe
            else:
                sim[dim], fsim[dim] = xr, fr
        elif fr < fsim[dim - 1]:
            sim[dim], fsim[dim] = xr, fr
        elif fr < fsim[dim]:
            xc = [xbar[i] + 0.5 * (xr[i] - xbar[i]) for i in range(dim)]
            fc = _objective(kind, c, n, s, xc, eps)
            if fc <= fr:
                sim[dim], fsim[dim] = xc, fc
            else:
                shrink = True
        else:
            xcc = [xbar[i] + 0.5 * (worst[i] - xbar[i]) for i in range(dim)]
            fcc = _objective(kind, c, n, s, xcc, eps)
            if fcc < fsim[dim]:
                sim[dim], fsim[dim] = xcc, fcc
            else:
                shrink = True
        if shrink:
            best = sim[0]
            for j in range(1, dim + 1):
                sim[j] = [best[i] + 0.5 * (sim[j][i] - best[i]) for i in range(dim)]
                fsim[j] = _objective(kind, c, n, s, sim[j], eps)
        _sort(sim, fsim)
    return sim[0], fsim[0], it, converged


def multistart(kind, c, n, s, starts, step, max_iters, xtol, ftol, eps, polish):
    """Run Nelder-Mead from every start (a sequence of angle vectors).

    Each converged run is restarted from its optimum with a fresh simplex of
    size ``step / 8`` up to ``polish`` times while that still improves the value.
    Returns lists (values, angles, converged, iterations) with maximized values.
    """
    c = [float(v) for v in c]
    n = [float(v) for v in n]
    s = [float(v) for v in s]
    values, angles, conv, iters = [], [], [], []
    for x0 in starts:
        x, f, it, ok = nelder_mead(kind, c, n, s, [float(v) for v in x0], step, max_iters, xtol, ftol, eps)
        total = it
        for _ in range(polish):
            if not ok:
                break
            x2, f2, it2, ok2 = nelder_mead(kind, c, n, s, x, step / 8.0, max_iters, xtol, ftol, eps)
            total += it2
            if not f2 < f - ftol:
                if f2 < f:
                    x, f = x2, f2
                break
            x, f, ok = x2, f2, ok2
        values.append(-f)
        angles.append(list(x))
        conv.append(ok)
        iters.append(total)
    return values, angles, conv, iters
