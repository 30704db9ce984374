#!/usr/bin/env python3
"""Regenerate core/src/cf_table_data.inc: residues and poles of the best
(n, n) rational approximation to exp(z) on (-inf, 0], computed with the
Caratheodory-Fejer method in extended precision (mpmath).

Usage: python3 tools/gen_cf_table.py > core/src/cf_table_data.inc
"""
import sys
import mpmath as mp

mp.mp.dps = 40
K = 75       # Chebyshev coefficients kept
NF = 1024    # sample points on the unit circle
SCALE = 9


def cf(n):
    w = [mp.expjpi(mp.mpf(2 * j) / NF) for j in range(NF)]
    F = []
    for wj in w:
        t = mp.re(wj)
        F.append(mp.mpf(0) if t + 1 == 0 else mp.exp(SCALE * (t - 1) / (t + 1)))

    def dft(x, k):
        # numpy-style forward DFT coefficient k
        return mp.fsum(x[j] * mp.expjpi(-mp.mpf(2 * j * k) / NF) for j in range(NF))

    c = [mp.re(dft(F, k)) / NF for k in range(K + 1)]
    f = [mp.polyval(c[K::-1], wj) for wj in w]
    H = mp.matrix(K, K)
    for i in range(K):
        for j in range(K):
            H[i, j] = c[1 + i + j] if i + j + 1 <= K else 0
    U, S, V = mp.svd_r(H)
    s = S[n]
    u = [U[K - 1 - j, n] for j in range(K)]
    v = [V[n, j] for j in range(K)]
    # fft(u padded)/fft(v padded) at each sample
    def padded_dft(x, k):
        return mp.fsum(x[j] * mp.expjpi(-mp.mpf(2 * j * k) / NF) for j in range(len(x)))
    b = [padded_dft(u, k) / padded_dft(v, k) for k in range(NF)]
    rt = [f[k] - s * w[k] ** K * b[k] for k in range(NF)]
    roots = mp.polyroots(v, maxsteps=400, extraprec=200)
    qk = [r for r in roots if abs(r) > 1]
    assert len(qk) == n, (n, len(qk))
    qc = [mp.mpf(1)]
    for q in qk:
        qc = [a - q * b_ for a, b_ in zip(qc + [0], [0] + qc)]
    pt = [rt[k] * mp.polyval(qc, w[k]) for k in range(NF)]
    ptc = [mp.re(dft(pt, k)) / NF for k in range(n + 1)]
    ptc = ptc[::-1]
    zk, ck = [], []
    for idx, q in enumerate(qk):
        others = [r for j, r in enumerate(qk) if j != idx]
        den = mp.mpf(1)
        for r in others:
            den *= q - r
        c_q = mp.polyval(ptc, q) / den
        z = SCALE * (q - 1) ** 2 / (q + 1) ** 2
        zk.append(z)
        ck.append(4 * c_q * z / (q * q - 1))
    pairs = sorted([(z, c_) for z, c_ in zip(zk, ck) if mp.im(z) > 0], key=lambda p: mp.im(p[0]))
    return pairs


def main():
    out = sys.stdout
    out.write("// Generated by tools/gen_cf_table.py (mpmath, 40 digits). Do not edit.\n")
    out.write("// {order, {re z, im z}, {re c, im c}} for poles with Im z > 0.\n")
    for n in (12, 14, 16):
        for z, c_ in cf(n):
            out.write("{%d, {%s, %s}, {%s, %s}},\n" % (
                n, mp.nstr(mp.re(z), 25), mp.nstr(mp.im(z), 25),
                mp.nstr(mp.re(c_), 25), mp.nstr(mp.im(c_), 25)))


if __name__ == "__main__":
    main()
