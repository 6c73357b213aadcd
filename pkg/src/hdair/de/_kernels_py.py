"""Pure-Python (numpy) DE kernels; same API as the compiled ``_kernels``."""
import numpy as np


def binom_pmf(xs, logc):
    """Rows of Binomial(len(logc) - 1, x) pmfs for each x in ``xs``."""
    xs = np.asarray(xs, dtype=float)
    m = logc.size - 1
    i = np.arange(m + 1)
    out = np.zeros((xs.size, m + 1))
    for r, x in enumerate(xs):
        if x <= 0.0:
            out[r, 0] = 1.0
        elif x >= 1.0:
            out[r, m] = 1.0
        else:
            out[r] = np.exp(logc + i * np.log(x) + (m - i) * np.log1p(-x))
    return out


def f_eval(xs, ps, P, Pbar, logc):
    g = ps * np.asarray(P) + (1.0 - ps) * np.asarray(Pbar)
    return binom_pmf(xs, logc) @ g


def sc_step(x, lo, hi, w, ps, P, Pbar, logc):
    """One Jacobi update of positions ``[lo, hi)`` in place; returns max change.

    Positions outside ``[0, len(x))`` are held at zero.
    """
    L = x.size
    k0, k1 = lo - w + 1, hi  # check positions feeding the updated VNs
    pad = np.zeros(L + 2 * w)
    pad[w:w + L] = x
    ks = np.arange(k0, k1)
    cn_in = np.zeros(ks.size)
    for j in range(w):
        cn_in += pad[ks + j + w]
    cn_in /= w
    fc = f_eval(cn_in, ps, P, Pbar, logc)
    new = np.zeros(hi - lo)
    for l in range(w):
        new += fc[np.arange(lo, hi) - l - k0]
    new /= w
    diff = float(np.max(np.abs(new - x[lo:hi]))) if hi > lo else 0.0
    x[lo:hi] = new
    return diff


def sc_run(x, lo, hi, w, ps, P, Pbar, logc, max_iters, tol):
    """Iterate ``sc_step`` until the change drops below ``tol``; returns iterations."""
    it = 0
    while it < max_iters:
        it += 1
        if sc_step(x, lo, hi, w, ps, P, Pbar, logc) < tol:
            break
    return it
