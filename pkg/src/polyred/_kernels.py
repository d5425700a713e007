"""Compiled GF(q) kernels for the degree sieve.

Arrays are int64, constant term first, entries in ``range(q)``.  Products
are accumulated without reduction, so ``deg * q**2`` must fit in an int64;
callers keep ``q`` below 2**24 and degrees below a few thousand.
"""

import numpy as np
from numba import njit

UNUSABLE_LEAD = -1
NOT_SQUAREFREE = -2
NOT_EXAMINED = 0


@njit(cache=True)
def _deg(a, top):
    d = top
    while d >= 0 and a[d] == 0:
        d -= 1
    return d


@njit(cache=True)
def _inv(a, q):
    r = 1
    b = a % q
    e = q - 2
    while e > 0:
        if e & 1:
            r = r * b % q
        b = b * b % q
        e >>= 1
    return r


@njit(cache=True)
def _rem_inplace(r, dr, b, db, q):
    """Reduce r (degree dr) modulo b (degree db) in place; returns new degree."""
    if dr < db:
        return dr
    inv = _inv(b[db], q)
    for k in range(dr - db, -1, -1):
        c = r[k + db] % q * inv % q
        if c != 0:
            for j in range(db + 1):
                r[k + j] = (r[k + j] - c * b[j]) % q
    return _deg(r, db - 1)


@njit(cache=True)
def _gcd_deg(a, da, b, db, q, out):
    """Degree of gcd(a, b); the monic gcd is written to ``out``."""
    x = a[: da + 1].copy()
    y = b[: db + 1].copy()
    dx, dy = da, db
    while dy >= 0:
        dx = _rem_inplace(x, dx, y, dy, q)
        x, y = y, x
        dx, dy = dy, dx
    if dx < 0:
        return -1
    inv = _inv(x[dx], q)
    for i in range(dx + 1):
        out[i] = x[i] * inv % q
    return dx


@njit(cache=True)
def _exact_quo(a, da, b, db, q):
    r = a[: da + 1].copy()
    quo = np.zeros(da - db + 1, np.int64)
    inv = _inv(b[db], q)
    for k in range(da - db, -1, -1):
        c = r[k + db] * inv % q
        quo[k] = c
        if c != 0:
            for j in range(db + 1):
                r[k + j] = (r[k + j] - c * b[j]) % q
    return quo


@njit(cache=True)
def _mulmod(a, b, f, n, q, prod):
    """a * b mod monic f (degree n); a, b length n; prod scratch of length 2n-1."""
    for i in range(2 * n - 1):
        prod[i] = 0
    for i in range(n):
        ai = a[i]
        if ai != 0:
            for j in range(n):
                prod[i + j] += ai * b[j]
    for k in range(2 * n - 2, n - 1, -1):
        c = prod[k] % q
        if c != 0:
            base = k - n
            for j in range(n):
                prod[base + j] -= c * f[j]
    out = np.empty(n, np.int64)
    for i in range(n):
        out[i] = prod[i] % q
    return out


@njit(cache=True)
def _x_pow_q(f, n, q, prod):
    """x**q mod f by square-and-multiply."""
    result = np.zeros(n, np.int64)
    result[0] = 1
    base = np.zeros(n, np.int64)
    base[1] = 1
    e = q
    while e > 0:
        if e & 1:
            result = _mulmod(result, base, f, n, q, prod)
        e >>= 1
        if e > 0:
            base = _mulmod(base, base, f, n, q, prod)
    return result


@njit(cache=True)
def _frobenius_matrix(f, n, q, prod):
    """Rows x**(q*i) mod f for i < n."""
    Q = np.zeros((n, n), np.int64)
    Q[0, 0] = 1
    xq = _x_pow_q(f, n, q, prod)
    row = xq.copy()
    for i in range(1, n):
        Q[i, :] = row
        if i + 1 < n:
            row = _mulmod(row, xq, f, n, q, prod)
    return Q


@njit(cache=True)
def _apply(h, Q, n, q):
    out = np.zeros(n, np.int64)
    for i in range(n):
        hi = h[i]
        if hi != 0:
            for j in range(n):
                out[j] += hi * Q[i, j]
    for j in range(n):
        out[j] %= q
    return out


@njit(cache=True)
def ddf_counts(f, q, counts):
    """Distinct-degree factorization of monic f mod q.

    Fills ``counts[k]`` with the number of irreducible factors of degree k
    and returns the total number of factors, or NOT_SQUAREFREE.
    """
    n = _deg(f, f.shape[0] - 1)
    for k in range(counts.shape[0]):
        counts[k] = 0
    if n <= 0:
        return 0
    if n == 1:
        counts[1] = 1
        return 1
    d = np.zeros(n, np.int64)
    for i in range(1, n + 1):
        d[i - 1] = i * f[i] % q
    dd = _deg(d, n - 1)
    if dd < 0:
        return NOT_SQUAREFREE
    g = np.zeros(n + 1, np.int64)
    if _gcd_deg(f, n, d, dd, q, g) > 0:
        return NOT_SQUAREFREE

    prod = np.zeros(2 * n, np.int64)
    Q = _frobenius_matrix(f, n, q, prod)
    fc = f[: n + 1].copy()
    dn = n
    h = np.zeros(n, np.int64)
    h[1] = 1
    total = 0
    i = 0
    while dn >= 2 * (i + 1):
        i += 1
        # Frobenius is linear, so h**q mod f is a matrix product; reduce
        # afterwards by the shrinking cofactor
        h = _apply(h, Q, h.shape[0], q) if h.shape[0] == n else _frob_small(h, Q, n, q, fc, dn)
        hx = h.copy()
        hx[1] = (hx[1] - 1) % q
        dg = _gcd_deg(fc, dn, hx, _deg(hx, hx.shape[0] - 1), q, g)
        if dg > 0:
            counts[i] += dg // i
            total += dg // i
            fc = _exact_quo(fc, dn, g, dg, q)
            dn -= dg
            if dn > 0:
                tmp = h.copy()
                dt = _rem_inplace(tmp, h.shape[0] - 1, fc, dn, q)
                h = np.zeros(dn if dn > 1 else 2, np.int64)
                for k in range(min(dt + 1, h.shape[0])):
                    h[k] = tmp[k]
    if dn > 0:
        counts[dn] += 1
        total += 1
    return total


@njit(cache=True)
def _frob_small(h, Q, n, q, fc, dn):
    """h**q mod fc for a cofactor fc of f: apply Q (mod f) then reduce mod fc."""
    full = np.zeros(n, np.int64)
    for i in range(h.shape[0]):
        hi = h[i]
        if hi != 0:
            for j in range(n):
                full[j] += hi * Q[i, j]
    for j in range(n):
        full[j] %= q
    dt = _rem_inplace(full, n - 1, fc, dn, q)
    out = np.zeros(max(dn, 2), np.int64)
    for k in range(min(dt + 1, out.shape[0])):
        out[k] = full[k]
    return out


@njit(cache=True)
def subset_sums(counts, n):
    reach = np.zeros(n + 1, np.bool_)
    reach[0] = True
    for k in range(1, counts.shape[0]):
        for _ in range(counts[k]):
            for s in range(n, k - 1, -1):
                if reach[s - k]:
                    reach[s] = True
    return reach


@njit(cache=True)
def _sieve_core(rows, coeffs, reduce_here, primes, max_usable):
    P = primes.shape[0]
    n = (coeffs.shape[0] if reduce_here else rows.shape[1]) - 1
    allowed = np.ones(n + 1, np.bool_)
    nfactors = np.zeros(P, np.int64)
    counts = np.zeros(n + 1, np.int64)
    f = np.empty(n + 1, np.int64)
    usable = 0
    for j in range(P):
        q = primes[j]
        if reduce_here:
            for i in range(n + 1):
                f[i] = coeffs[i] % q
        else:
            for i in range(n + 1):
                f[i] = rows[j, i]
        if f[n] == 0:
            nfactors[j] = UNUSABLE_LEAD
            continue
        if f[n] != 1:
            inv = _inv(f[n], q)
            for i in range(n + 1):
                f[i] = f[i] * inv % q
        r = ddf_counts(f, q, counts)
        if r == NOT_SQUAREFREE:
            nfactors[j] = NOT_SQUAREFREE
            continue
        nfactors[j] = r
        usable += 1
        reach = subset_sums(counts, n)
        open_ = 0
        for s in range(n + 1):
            allowed[s] = allowed[s] and reach[s]
            if allowed[s] and 0 < s < n:
                open_ += 1
        if open_ == 0 or usable >= max_usable:
            break
    return allowed, nfactors


@njit(cache=True)
def sieve_int64(coeffs, primes, max_usable):
    """Degree sieve for a polynomial whose coefficients fit in int64.

    Returns ``(allowed, nfactors)``: the intersection over usable primes of
    the achievable factor degrees, and per prime the number of modular
    factors (or UNUSABLE_LEAD / NOT_SQUAREFREE / NOT_EXAMINED).  Stops once
    only 0 and deg f remain, or after ``max_usable`` usable primes.
    """
    dummy = np.zeros((1, 1), np.int64)
    return _sieve_core(dummy, coeffs, True, primes, max_usable)


@njit(cache=True)
def sieve_residues(rows, primes, max_usable):
    """As :func:`sieve_int64`, with ``rows[j]`` = f mod ``primes[j]`` precomputed."""
    dummy = np.zeros(1, np.int64)
    return _sieve_core(rows, dummy, False, primes, max_usable)


@njit(cache=True)
def _powmod_small(a, e, f, n, q, prod):
    result = np.zeros(n, np.int64)
    result[0] = 1
    base = a.copy()
    while e > 0:
        if e & 1:
            result = _mulmod(result, base, f, n, q, prod)
        e >>= 1
        if e > 0:
            base = _mulmod(base, base, f, n, q, prod)
    return result


@njit(cache=True)
def _ddf_products(f, n, q):
    """Equal-degree products of a monic squarefree f: (rows, degrees)."""
    prods = []
    degs = []
    prod = np.zeros(2 * n, np.int64)
    Q = _frobenius_matrix(f, n, q, prod)
    g = np.zeros(n + 1, np.int64)
    fc = f[: n + 1].copy()
    dn = n
    h = np.zeros(n, np.int64)
    h[1] = 1
    i = 0
    while dn >= 2 * (i + 1):
        i += 1
        h = _apply(h, Q, h.shape[0], q) if h.shape[0] == n else _frob_small(h, Q, n, q, fc, dn)
        hx = h.copy()
        hx[1] = (hx[1] - 1) % q
        dg = _gcd_deg(fc, dn, hx, _deg(hx, hx.shape[0] - 1), q, g)
        if dg > 0:
            prods.append(g[: dg + 1].copy())
            degs.append(i)
            fc = _exact_quo(fc, dn, g, dg, q)
            dn -= dg
            if dn > 0:
                tmp = h.copy()
                dt = _rem_inplace(tmp, h.shape[0] - 1, fc, dn, q)
                h = np.zeros(dn if dn > 1 else 2, np.int64)
                for k in range(min(dt + 1, h.shape[0])):
                    h[k] = tmp[k]
    if dn > 0:
        prods.append(fc[: dn + 1].copy())
        degs.append(dn)
    return prods, degs


@njit(cache=True)
def factor_squarefree_odd(f, q, seed):
    """Monic irreducible factors of monic squarefree f mod an odd prime q.

    Returns an (r, deg f + 1) array whose rows are the factors padded with
    zeros.  Equal-degree splitting is Cantor-Zassenhaus seeded by ``seed``.
    """
    np.random.seed(seed)
    n = _deg(f, f.shape[0] - 1)
    out = np.zeros((max(n, 1), n + 1), np.int64)
    r = 0
    if n == 1:
        out[0, :] = f[:2]
        return out[:1]
    prods, degs = _ddf_products(f, n, q)
    half = (q - 1) // 2
    g = np.zeros(n + 1, np.int64)
    for idx in range(len(prods)):
        e = degs[idx]
        stack = [prods[idx]]
        while len(stack) > 0:
            h = stack.pop()
            dh = h.shape[0] - 1
            if dh == e:
                out[r, : dh + 1] = h
                r += 1
                continue
            prod = np.zeros(2 * dh, np.int64)
            Qh = _frobenius_matrix(h, dh, q, prod)
            while True:
                a = np.zeros(dh, np.int64)
                for k in range(dh):
                    a[k] = np.random.randint(0, q)
                if _deg(a, dh - 1) < 1:
                    continue
                # a**((q**e - 1)/2) = (a * a**q * ... * a**(q**(e-1)))**((q-1)/2)
                t = a.copy()
                cur = a.copy()
                for _ in range(e - 1):
                    cur = _apply(cur, Qh, dh, q)
                    t = _mulmod(t, cur, h, dh, q, prod)
                b = _powmod_small(t, half, h, dh, q, prod)
                b[0] = (b[0] - 1) % q
                db = _deg(b, dh - 1)
                if db < 0:
                    continue
                dg = _gcd_deg(h, dh, b, db, q, g)
                if 0 < dg < dh:
                    left = g[: dg + 1].copy()
                    right = _exact_quo(h, dh, left, dg, q)
                    stack.append(left)
                    stack.append(right)
                    break
    return out[:r]


@njit(cache=True)
def _mul_m(a, b, m):
    out = np.zeros(a.shape[0] + b.shape[0] - 1, np.int64)
    for i in range(a.shape[0]):
        ai = a[i]
        if ai == 0:
            continue
        for j in range(b.shape[0]):
            out[i + j] = (out[i + j] + ai * b[j]) % m
    return out


@njit(cache=True)
def _fit(a, size, m):
    out = np.zeros(size, np.int64)
    for i in range(min(size, a.shape[0])):
        out[i] = a[i] % m
    for i in range(size, a.shape[0]):
        if a[i] % m != 0:
            raise ValueError("degree overflow in Hensel step")
    return out


@njit(cache=True)
def _lin3(a, b, sb, c, sc, m):
    """a + sb*b + sc*c modulo m, over a common length."""
    n = max(a.shape[0], b.shape[0], c.shape[0])
    out = np.zeros(n, np.int64)
    out[: a.shape[0]] += a
    out[: b.shape[0]] += sb * b
    out[: c.shape[0]] += sc * c
    return out % m


@njit(cache=True)
def _divmod_monic_m(a, h, m):
    """Quotient and remainder (length deg h) of a by monic h modulo m."""
    dh = h.shape[0] - 1
    r = a % m
    nq = max(r.shape[0] - dh, 1)
    quo = np.zeros(nq, np.int64)
    for k in range(r.shape[0] - 1 - dh, -1, -1):
        c = r[k + dh] % m
        quo[k] = c
        if c != 0:
            for j in range(dh + 1):
                r[k + j] = (r[k + j] - c * h[j]) % m
    return quo, _fit(r[:dh], dh, m)


@njit(cache=True)
def hensel_pair(f, g, h, s, t, q, Q):
    """Lift f = g*h (h monic), s*g + t*h = 1 from mod q to mod Q.

    Requires Q < 2**31 so that every product fits in int64.  Array lengths
    are fixed: g, h are deg+1 long, s has length deg h, t has length deg g.
    """
    dg = g.shape[0] - 1
    dh = h.shape[0] - 1
    m = q
    while m < Q:
        M = min(m * m, Q)
        e = (f % M - _fit(_mul_m(g, h, M), f.shape[0], M)) % M
        quo, r = _divmod_monic_m(_mul_m(s, e, M), h, M)
        g2 = _fit(_lin3(g, _mul_m(t, e, M), 1, _mul_m(quo, g, M), 1, M), dg + 1, M)
        h2 = h.copy()
        for i in range(dh):
            h2[i] = (h[i] + r[i]) % M
        sg = _mul_m(s, g2, M)
        th = _mul_m(t, h2, M)
        b = np.zeros(max(sg.shape[0], th.shape[0]), np.int64)
        b[: sg.shape[0]] += sg
        b[: th.shape[0]] += th
        b[0] -= 1
        b %= M
        c, d = _divmod_monic_m(_mul_m(s, b, M), h2, M)
        s = (s - d) % M
        t = _fit(_lin3(t, _mul_m(t, b, M), -1, _mul_m(c, g2, M), -1, M), dg, M)
        g, h = g2, h2
        m = M
    return g, h


@njit(cache=True)
def certify_batch(polys, primes, max_usable):
    """Per row of ``polys`` (equal-degree int64 coefficient rows), True when
    the degree sieve certifies irreducibility."""
    m = polys.shape[0]
    n = polys.shape[1] - 1
    out = np.zeros(m, np.bool_)
    dummy = np.zeros((1, 1), np.int64)
    for r in range(m):
        if n >= 2:
            if polys[r, 0] == 0:
                continue
            # a root at +1 or -1 means no certificate is possible
            at1 = 0
            atm1 = 0
            for i in range(n + 1):
                at1 += polys[r, i]
                atm1 += polys[r, i] if i % 2 == 0 else -polys[r, i]
            if at1 == 0 or atm1 == 0:
                continue
        allowed, _ = _sieve_core(dummy, polys[r], True, primes, max_usable)
        ok = True
        for s in range(1, n):
            if allowed[s]:
                ok = False
                break
        out[r] = ok
    return out
