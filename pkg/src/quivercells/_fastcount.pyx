# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of quivercells.counting._count_py.

Same contract, same outputs, C inner loops.  Limits: at most 8 edges, 16
vertices, p < 256 (canonical scalars are packed one per byte).  The pure
fallback has no such caps; the dispatcher respects them.
"""

from cpython.bytes cimport PyBytes_FromStringAndSize


cdef inline int _modpow(long long base, int exp, int p):
    cdef long long acc = 1
    cdef long long b = base % p
    while exp:
        if exp & 1:
            acc = acc * b % p
        b = b * b % p
        exp >>= 1
    return <int>acc


def count_stable_canonicals(int n, int p, int[:] tails, int[:] heads, int[:] lam,
                            const unsigned char[:] stab, int[:] plan_offsets,
                            int[:] plan_steps):
    cdef int m = tails.shape[0]
    if n < 1 or n > 16 or m > 8 or p < 2 or p >= 256:
        raise ValueError("kernel limits: 1 <= vertices <= 16, edges <= 8, p < 256")

    cdef int inv[256]
    cdef int x[8]
    cdef int xstar[8]
    cdef int part[8]
    cdef int basis[8][8]
    cdef int combo[8]
    cdef int A[16][9]
    cdef int pivots[8]
    cdef int freecols[8]
    cdef int t[16]
    cdef unsigned char canon[16]
    cdef int i, j, k, c, r, pr, f, d, npiv, mask, v, diff, s, child, par, eidx, code
    cdef long long acc
    cdef bint consistent, done

    inv[0] = 0
    for v in range(1, p):
        inv[v] = _modpow(v, p - 2, p)

    counts = {}
    for j in range(m):
        x[j] = 0

    while True:
        # moment equations are linear in xstar once x is fixed
        for i in range(n):
            for j in range(m):
                diff = 0
                if heads[j] == i:
                    diff += 1
                if tails[j] == i:
                    diff -= 1
                A[i][j] = (x[j] * diff) % p
                if A[i][j] < 0:
                    A[i][j] += p
            A[i][m] = lam[i] % p

        # row reduce the augmented system
        r = 0
        npiv = 0
        for c in range(m):
            pr = -1
            for i in range(r, n):
                if A[i][c]:
                    pr = i
                    break
            if pr < 0:
                continue
            if pr != r:
                for k in range(m + 1):
                    v = A[r][k]
                    A[r][k] = A[pr][k]
                    A[pr][k] = v
            v = inv[A[r][c]]
            for k in range(c, m + 1):
                A[r][k] = A[r][k] * v % p
            for i in range(n):
                if i != r and A[i][c]:
                    f = A[i][c]
                    for k in range(c, m + 1):
                        A[i][k] = (A[i][k] - f * A[r][k]) % p
                        if A[i][k] < 0:
                            A[i][k] += p
            pivots[npiv] = c
            npiv += 1
            r += 1
            if r == n:
                break
        consistent = True
        for i in range(r, n):
            if A[i][m]:
                consistent = False
                break

        if consistent:
            d = 0
            k = 0
            for c in range(m):
                if k < npiv and pivots[k] == c:
                    k += 1
                else:
                    freecols[d] = c
                    d += 1
            for j in range(m):
                part[j] = 0
            for i in range(npiv):
                part[pivots[i]] = A[i][m]
            for f in range(d):
                for j in range(m):
                    basis[f][j] = 0
                basis[f][freecols[f]] = 1
                for i in range(npiv):
                    basis[f][pivots[i]] = (p - A[i][freecols[f]]) % p
            for f in range(d):
                combo[f] = 0

            while True:
                for j in range(m):
                    acc = part[j]
                    for f in range(d):
                        if combo[f]:
                            acc += combo[f] * basis[f][j]
                    xstar[j] = <int>(acc % p)

                mask = 0
                for j in range(m):
                    if x[j]:
                        mask |= 1 << (2 * j)
                    if xstar[j]:
                        mask |= 1 << (2 * j + 1)
                if stab[mask]:
                    for i in range(n):
                        t[i] = 1
                    s = plan_offsets[mask]
                    while s < plan_offsets[mask + 1]:
                        child = plan_steps[s]
                        par = plan_steps[s + 1]
                        eidx = plan_steps[s + 2]
                        code = plan_steps[s + 3]
                        if code == 0:
                            t[child] = t[par] * inv[x[eidx]] % p
                        elif code == 1:
                            t[child] = t[par] * x[eidx] % p
                        elif code == 2:
                            t[child] = t[par] * inv[xstar[eidx]] % p
                        else:
                            t[child] = t[par] * xstar[eidx] % p
                        s += 4
                    for j in range(m):
                        canon[2 * j] = <unsigned char>(t[heads[j]] * x[j] % p * inv[t[tails[j]]] % p)
                        canon[2 * j + 1] = <unsigned char>(t[tails[j]] * xstar[j] % p * inv[t[heads[j]]] % p)
                    key = PyBytes_FromStringAndSize(<char*>canon, 2 * m)
                    counts[key] = counts.get(key, 0) + 1

                done = True
                for f in range(d - 1, -1, -1):
                    combo[f] += 1
                    if combo[f] < p:
                        done = False
                        break
                    combo[f] = 0
                if done:
                    break

        done = True
        for j in range(m - 1, -1, -1):
            x[j] += 1
            if x[j] < p:
                done = False
                break
            x[j] = 0
        if done:
            break

    return counts
