"""Reference computations for the tests.

Everything here is plain Python over nested lists and dicts, written
independently of the library's tensor contractions, so agreement between
the two is meaningful.  Only small inputs are feasible.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np


def lists(a):
    """Nested Python ints (or Fractions) from an array."""
    return np.asarray(a).tolist()


# -- exact linear algebra ----------------------------------------------------


def naive_einsum(subscripts: str, *ops, p: int | None = None):
    """Brute-force ``einsum`` over every index assignment."""
    ins, out = subscripts.split("->")
    ins = ins.split(",")
    sizes = {}
    for spec, op in zip(ins, ops):
        for letter, n in zip(spec, np.shape(op)):
            sizes[letter] = n
    letters = sorted(sizes)
    out_shape = tuple(sizes[c] for c in out)
    result = {}
    data = [np.asarray(op, dtype=object) for op in ops]
    for assignment in itertools.product(*(range(sizes[c]) for c in letters)):
        env = dict(zip(letters, assignment))
        term = 1
        for spec, op in zip(ins, data):
            term = term * op[tuple(env[c] for c in spec)]
            if term == 0:
                break
        key = tuple(env[c] for c in out)
        result[key] = result.get(key, 0) + term
    arr = np.empty(out_shape, dtype=object)
    for key in itertools.product(*(range(n) for n in out_shape)):
        v = result.get(key, 0)
        arr[key] = v % p if p is not None else Fraction(v)
    return arr


def ref_rank(rows, p: int | None = None) -> int:
    """Rank by textbook elimination, mod ``p`` or over the rationals."""
    m = [[Fraction(x) if p is None else int(x) % p for x in row] for row in rows]
    rank = 0
    cols = len(m[0]) if m else 0
    for c in range(cols):
        piv = next((i for i in range(rank, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][c], -1, p) if p is not None else 1 / m[rank][c]
        for i in range(len(m)):
            if i != rank and m[i][c] != 0:
                f = m[i][c] * inv
                m[i] = [(a - f * b) % p if p is not None else a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def is_prime_trial(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


# -- Hopf algebras from words ----------------------------------------------


def taft_reference(n: int, q: int, p: int):
    """Structure constants of the Taft algebra from its presentation.

    Basis ``g^i x^j`` at index ``j*n + i``; ``x g = q g x``,
    ``Δ(g) = g⊗g``, ``Δ(x) = x⊗1 + g⊗x``.  Elements are dicts
    ``{(i, j): coeff}``.  Returns ``(mu, De, S)`` as nested lists
    ``mu[a][b][c]``, ``De[h][a][b]``, ``S[h][k]``.
    """
    dim = n * n

    def index(i, j):
        return j * n + i

    def word_mul(u, v):
        out = {}
        for (i, j), cu in u.items():
            for (k, l), cv in v.items():
                if j + l >= n:
                    continue
                # x^j g^k = q^(jk) g^k x^j
                key = ((i + k) % n, j + l)
                out[key] = (out.get(key, 0) + cu * cv * pow(q, j * k, p)) % p
        return {k: c for k, c in out.items() if c}

    def tensor_mul(u, v):
        out = {}
        for (a, b), cu in u.items():
            for (c, d), cv in v.items():
                for ka, ca in word_mul({a: 1}, {c: 1}).items():
                    for kb, cb in word_mul({b: 1}, {d: 1}).items():
                        key = (ka, kb)
                        out[key] = (out.get(key, 0) + cu * cv * ca * cb) % p
        return {k: c for k, c in out.items() if c}

    one, g, x = (0, 0), (1, 0), (0, 1)
    dg = {(g, g): 1}
    dx = {(x, one): 1, (g, x): 1}
    sg = {(n - 1, 0): 1}
    sx = {(n - 1, 1): p - 1}
    mu = [[[0] * dim for _ in range(dim)] for _ in range(dim)]
    De = [[[0] * dim for _ in range(dim)] for _ in range(dim)]
    S = [[0] * dim for _ in range(dim)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    for (a, b), c in word_mul({(i, j): 1}, {(k, l): 1}).items():
                        mu[index(i, j)][index(k, l)][index(a, b)] = c
            d = {(one, one): 1}
            for _ in range(i):
                d = tensor_mul(d, dg)
            for _ in range(j):
                d = tensor_mul(d, dx)
            for ((a, b), (c, e)), coeff in d.items():
                De[index(i, j)][index(a, b)][index(c, e)] = coeff
            # S is an anti-homomorphism: S(g^i x^j) = S(x)^j S(g)^i
            s = {one: 1}
            for _ in range(j):
                s = word_mul(s, sx)
            for _ in range(i):
                s = word_mul(s, sg)
            for (a, b), coeff in s.items():
                S[index(i, j)][index(a, b)] = coeff
    return mu, De, S


class RefHopf:
    """Loop-based arithmetic in a Hopf algebra given by its arrays."""

    def __init__(self, H):
        self.p = H.field.p
        self.n = H.dim
        self.mu = lists(H.mu)
        self.De = lists(H.De)
        self.S = lists(H.S)
        self.Sinv = lists(H.Sinv)
        self.eps = lists(H.eps)
        self.eta = lists(H.eta)

    def mul(self, u, v):
        n, p = self.n, self.p
        out = [0] * n
        for i in range(n):
            if u[i]:
                for j in range(n):
                    if v[j]:
                        for k in range(n):
                            out[k] = (out[k] + u[i] * v[j] * self.mu[i][j][k]) % p
        return out

    def e(self, i):
        v = [0] * self.n
        v[i] = 1
        return v

    def apply(self, idx, v):
        """Apply a linear map given in index form ``idx[i][j]`` (coefficient of ``b_j`` in the image of ``b_i``)."""
        out = [0] * self.n
        for i, c in enumerate(v):
            if c:
                for j in range(self.n):
                    out[j] = (out[j] + c * idx[i][j]) % self.p
        return out

    def coproduct(self, h):
        """``Δ(b_h)`` as ``{(a, b): coeff}``."""
        return {(a, b): c for a, row in enumerate(self.De[h]) for b, c in enumerate(row) if c}

    def coproduct3(self, h):
        out = {}
        for (x, c), u in self.coproduct(h).items():
            for (a, b), v in self.coproduct(x).items():
                out[(a, b, c)] = (out.get((a, b, c), 0) + u * v) % self.p
        return {k: c for k, c in out.items() if c}

    def is_automorphism(self, A):
        """Loop check that index-form ``A`` respects every Hopf structure map."""
        n, p = self.n, self.p
        if ref_rank(A, p) != n:
            return False
        for i in range(n):
            for j in range(n):
                lhs = self.apply(A, self.mu[i][j])
                rhs = self.mul(A[i], A[j])
                if lhs != rhs:
                    return False
        if self.apply(A, self.eta) != self.eta:
            return False
        for i in range(n):
            if sum(A[i][j] * self.eps[j] for j in range(n)) % p != self.eps[i]:
                return False
            lhs = [[0] * n for _ in range(n)]
            for j in range(n):
                if A[i][j]:
                    for (a, b), c in self.coproduct(j).items():
                        lhs[a][b] = (lhs[a][b] + A[i][j] * c) % p
            rhs = [[0] * n for _ in range(n)]
            for (x, y), c in self.coproduct(i).items():
                for a in range(n):
                    for b in range(n):
                        rhs[a][b] = (rhs[a][b] + c * A[x][a] * A[y][b]) % p
            if lhs != rhs:
                return False
        return True


# -- compatibility conditions ----------------------------------------------


def _module_tables(M):
    return lists(M.act), lists(M.co)


def ref_yd_witness(M, alpha_idx, beta_idx):
    """First ``(h, m)`` where ``(h·m)_(0) ⊗ (h·m)_(1)`` differs from
    ``h_2·m_(0) ⊗ β(h_3) m_(1) α(S⁻¹(h_1))``, or ``None``."""
    R = RefHopf(M.hopf)
    act, co = _module_tables(M)
    n, d, p = R.n, M.dim, R.p
    for h in range(n):
        triples = R.coproduct3(h)
        for m in range(d):
            lhs = [[0] * n for _ in range(d)]
            for y in range(d):
                if act[h][m][y]:
                    for o in range(d):
                        for k in range(n):
                            lhs[o][k] = (lhs[o][k] + act[h][m][y] * co[y][o][k]) % p
            rhs = [[0] * n for _ in range(d)]
            for (a, b, c), coeff in triples.items():
                right = R.apply(alpha_idx, R.Sinv[a])
                for m0 in range(d):
                    for m1 in range(n):
                        w = co[m][m0][m1]
                        if not w:
                            continue
                        leg = R.mul(R.mul(beta_idx[c], R.e(m1)), right)
                        for o in range(d):
                            s = coeff * w * act[b][m0][o]
                            if s:
                                for k in range(n):
                                    rhs[o][k] = (rhs[o][k] + s * leg[k]) % p
            if lhs != rhs:
                return (h, m)
    return None


def ref_alt_form_holds(M, alpha_idx, beta_idx) -> bool:
    """``h_1·m_(0) ⊗ β(h_2) m_(1) = (h_2·m)_(0) ⊗ (h_2·m)_(1) α(h_1)`` on all basis pairs."""
    R = RefHopf(M.hopf)
    act, co = _module_tables(M)
    n, d, p = R.n, M.dim, R.p
    for h in range(n):
        pairs = R.coproduct(h)
        for m in range(d):
            lhs = [[0] * n for _ in range(d)]
            rhs = [[0] * n for _ in range(d)]
            for (a, b), coeff in pairs.items():
                for m0 in range(d):
                    for m1 in range(n):
                        w = co[m][m0][m1]
                        if w:
                            leg = R.mul(beta_idx[b], R.e(m1))
                            for o in range(d):
                                s = coeff * w * act[a][m0][o]
                                if s:
                                    for k in range(n):
                                        lhs[o][k] = (lhs[o][k] + s * leg[k]) % p
                for z in range(d):
                    if act[b][m][z]:
                        for o in range(d):
                            for r in range(n):
                                s = coeff * act[b][m][z] * co[z][o][r]
                                if s:
                                    leg = R.mul(R.e(r), alpha_idx[a])
                                    for k in range(n):
                                        rhs[o][k] = (rhs[o][k] + s * leg[k]) % p
            if lhs != rhs:
                return False
    return True


# -- algebras ----------------------------------------------------------------


def ref_smash_mu(A, B):
    """``(a ⊗ b)(a' ⊗ b') = a a'_(0) ⊗ (a'_(1)·b) b'`` by loops."""
    p = A.field.p
    Amu, Aco = lists(A.mu), lists(A.co)
    Bact, Bmu = lists(B.act), lists(B.mu)
    dA, dB, n = A.dim, B.dim, A.hopf.dim
    N = dA * dB
    out = [[[0] * N for _ in range(N)] for _ in range(N)]
    for a in range(dA):
        for b in range(dB):
            for a2 in range(dA):
                for b2 in range(dB):
                    row = out[a * dB + b][a2 * dB + b2]
                    for x in range(dA):
                        for h in range(n):
                            w = Aco[a2][x][h]
                            if not w:
                                continue
                            for y in range(dB):
                                v = w * Bact[h][b][y]
                                if not v:
                                    continue
                                for c in range(dA):
                                    u = v * Amu[a][x][c]
                                    if not u:
                                        continue
                                    for dd in range(dB):
                                        row[c * dB + dd] = (row[c * dB + dd] + u * Bmu[y][b2][dd]) % p
    return out


def ref_azumaya_F(A):
    """Matrix (target x source) of ``F(a#b)(c) = a c_(0) (c_(1)·b)``."""
    p = A.field.p
    mu, co, act = lists(A.mu), lists(A.co), lists(A.act)
    d, n = A.dim, A.hopf.dim
    D = d * d
    mat = [[0] * D for _ in range(D)]
    for a in range(d):
        for b in range(d):
            for c in range(d):
                # a c_(0) (c_(1)·b), as a vector over the basis
                vec = [0] * d
                for c0 in range(d):
                    for h in range(n):
                        w = co[c][c0][h]
                        if not w:
                            continue
                        for y in range(d):
                            v = w * act[h][b][y]
                            if not v:
                                continue
                            for z in range(d):
                                u = v * mu[a][c0][z]
                                if u:
                                    for k in range(d):
                                        vec[k] = (vec[k] + u * mu[z][y][k]) % p
                for x in range(d):
                    # source index a*d+b, image in End(A) at E_{x,c} = x*d + c
                    mat[x * d + c][a * d + b] = vec[x]
    return mat
