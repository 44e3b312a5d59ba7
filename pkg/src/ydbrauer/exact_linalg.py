"""Exact scalars, matrices and tensor contractions over GF(p) and the rationals.

Every array handled by the package lives over a :class:`FieldSpec`.  Over
GF(p) arrays are ``int64`` with entries in ``[0, p)``; over the rationals
they are ``object`` arrays of :class:`fractions.Fraction`.

Contractions over GF(p) run through float64 BLAS whenever the largest
possible partial sum is below 2**53, which keeps every intermediate exact;
otherwise they fall back to integer (or Python-integer) arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm, prod

import numpy as np

from .errors import DimensionError, SingularError, BadParameter

_FLOAT_EXACT = 2**53
_INT64_SAFE = 2**62


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    if p >= 10**12:
        return _miller_rabin(p)
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def _miller_rabin(p: int) -> bool:
    # deterministic for p < 3.3e24 with these bases
    d, s = p - 1, 0
    while d % 2 == 0:
        d, s = d // 2, s + 1
    for a in _MR_BASES:
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(s - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The ground field: ``GF(p)`` (``kind="prime_field"``) or ``QQ``."""

    kind: str
    p: int | None = None

    def __post_init__(self):
        if self.kind == "prime_field":
            if not isinstance(self.p, (int, np.integer)) or not _is_prime(int(self.p)):
                raise BadParameter(f"modulus {self.p!r} is not a prime")
            object.__setattr__(self, "p", int(self.p))
        elif self.kind == "rationals":
            if self.p is not None:
                raise BadParameter("the rationals take no modulus")
        else:
            raise BadParameter(f"unknown field kind {self.kind!r}")

    @classmethod
    def gf(cls, p: int) -> "FieldSpec":
        return cls("prime_field", p)

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls("rationals")

    @property
    def is_prime_field(self) -> bool:
        return self.kind == "prime_field"

    def __str__(self):
        return f"GF({self.p})" if self.is_prime_field else "QQ"

    # -- scalars -----------------------------------------------------------

    @property
    def _big(self) -> bool:
        # moduli whose products overflow int64 are stored as Python ints
        return self.is_prime_field and self.p >= 2**31

    @property
    def dtype(self):
        return np.int64 if self.is_prime_field and not self._big else object

    def scalar(self, value):
        """Canonical representative of ``value`` (int, Fraction or decimal string)."""
        if isinstance(value, str):
            return self.parse_scalar(value)
        if isinstance(value, (float, np.floating)):
            raise TypeError("floating-point scalars are not accepted")
        value = Fraction(value) if not isinstance(value, Fraction) else value
        if self.is_prime_field:
            if value.denominator % self.p == 0:
                raise ZeroDivisionError(f"{value} has no image in {self}")
            return value.numerator * pow(value.denominator, -1, self.p) % self.p
        return value

    def parse_scalar(self, text: str):
        try:
            value = Fraction(text.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"malformed scalar {text!r}") from exc
        if value.denominator != 1 and "/" not in text:
            raise ValueError(f"malformed scalar {text!r}: use n/d for non-integers")
        return self.scalar(value)

    def format_scalar(self, x) -> str:
        if self.is_prime_field:
            return str(int(x) % self.p)
        return str(Fraction(x))

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.is_prime_field:
            return pow(int(x), -1, self.p)
        return 1 / Fraction(x)

    def neg(self, x):
        return self.scalar(-Fraction(x) if not self.is_prime_field else -int(x))

    # -- arrays ------------------------------------------------------------

    def reduce(self, arr) -> np.ndarray:
        if self.is_prime_field:
            if self._big:
                out = np.empty(np.shape(arr), dtype=object)
                flat = np.asarray(arr, dtype=object).reshape(-1)
                out.reshape(-1)[:] = [int(v) % self.p for v in flat]
                return out
            return np.mod(np.asarray(arr, dtype=np.int64), self.p)
        arr = np.asarray(arr, dtype=object)
        out = np.empty(arr.shape, dtype=object)
        out.reshape(-1)[:] = [Fraction(v) for v in arr.reshape(-1)]
        return out

    def array(self, data) -> np.ndarray:
        """Convert nested lists of ints/Fractions/strings into a reduced array."""
        raw = np.asarray(data, dtype=object)
        out = np.empty(raw.shape, dtype=object)
        out.reshape(-1)[:] = [self.scalar(v) for v in raw.reshape(-1)]
        if self.dtype is np.int64:
            return out.astype(np.int64)
        return out

    def zeros(self, shape) -> np.ndarray:
        if self.dtype is object:
            out = np.empty(shape, dtype=object)
            out.reshape(-1)[:] = [self.scalar(0)] * out.size
            return out
        return np.zeros(shape, dtype=np.int64)

    def eye(self, n: int) -> np.ndarray:
        out = self.zeros((n, n))
        for i in range(n):
            out[i, i] = self.scalar(1)
        return out

    def random(self, shape, rng: np.random.Generator) -> np.ndarray:
        if self.is_prime_field:
            return self.reduce(rng.integers(0, min(self.p, 2**62), size=shape))
        return self.array(rng.integers(-3, 4, size=shape))

    def scale(self, arr, c) -> np.ndarray:
        return self.reduce(arr * c)

    def add(self, a, b) -> np.ndarray:
        return self.reduce(a + b)

    def sub(self, a, b) -> np.ndarray:
        return self.reduce(a - b)

    # -- contractions ------------------------------------------------------

    def contract(self, subscripts: str, *operands) -> np.ndarray:
        """Exact ``einsum`` with reduction after every pairwise step."""
        lhs, out = subscripts.replace(" ", "").split("->")
        terms = lhs.split(",")
        ops = [np.asarray(o) for o in operands]
        if len(terms) != len(ops):
            raise DimensionError("operand count does not match subscripts")
        if len(ops) > 1:
            sizes = {}
            for t, o in zip(terms, ops):
                if len(t) != o.ndim:
                    raise DimensionError(f"term {t!r} does not match shape {o.shape}")
                for c, s in zip(t, o.shape):
                    if sizes.setdefault(c, s) != s:
                        raise DimensionError(f"index {c!r} has sizes {sizes[c]} and {s}")
            path = np.einsum_path(subscripts, *[np.empty(o.shape, dtype=np.int8) if o.dtype == object else o for o in ops],
                                  optimize="greedy")[0][1:]
            for step in path:
                picked = sorted(step, reverse=True)
                sel_t = [terms.pop(k) for k in picked]
                sel_o = [ops.pop(k) for k in picked]
                keep = set(out).union(*terms) if terms else set(out)
                seen = []
                for c in "".join(sel_t):
                    if c not in seen:
                        seen.append(c)
                new = "".join(c for c in seen if c in keep)
                while len(sel_o) > 2:
                    # fold the tail pair first; keep every letter still referenced
                    t2, o2 = sel_t.pop(), sel_o.pop()
                    t1, o1 = sel_t.pop(), sel_o.pop()
                    rest = set(keep).union(*sel_t)
                    mid = "".join(dict.fromkeys(c for c in t1 + t2 if c in rest))
                    sel_t.append(mid)
                    sel_o.append(self._binary(f"{t1},{t2}->{mid}", o1, o2, sizes))
                if len(sel_o) == 2:
                    res = self._binary(f"{sel_t[0]},{sel_t[1]}->{new}", sel_o[0], sel_o[1], sizes)
                else:
                    res = self._unary(f"{sel_t[0]}->{new}", sel_o[0])
                terms.append(new)
                ops.append(res)
        return self._unary(f"{terms[0]}->{out}", ops[0])

    def _unary(self, sub, a):
        lhs, out = sub.split("->")
        if lhs == out:
            return a
        if a.dtype == object:
            return self.reduce(np.einsum(sub, a))
        return self.reduce(np.einsum(sub, a))

    def _binary(self, sub, a, b, sizes):
        lhs, out = sub.split("->")
        summed = set(lhs.replace(",", "")) - set(out)
        k = prod(sizes[c] for c in summed) if summed else 1
        if self.is_prime_field and not self._big:
            bound = (self.p - 1) ** 2 * k
            if bound < _FLOAT_EXACT:
                res = np.einsum(sub, a.astype(np.float64), b.astype(np.float64), optimize=True)
                return np.mod(np.rint(res).astype(np.int64), self.p)
            if bound < _INT64_SAFE:
                return np.mod(np.einsum(sub, a, b), self.p)
            res = np.einsum(sub, a.astype(object), b.astype(object))
            return np.mod(res, self.p).astype(np.int64)
        return self.reduce(np.einsum(sub, a, b))

    def matmul(self, a, b) -> np.ndarray:
        return self.contract("ij,jk->ik", a, b)


class Matrix:
    """An exact dense matrix; as a linear map it sends column vectors of
    length ``cols`` (the domain) to column vectors of length ``rows``."""

    __slots__ = ("field", "a")

    def __init__(self, field: FieldSpec, a, *, reduced: bool = False):
        a = np.asarray(a) if reduced else field.reduce(a)
        if a.ndim != 2:
            raise DimensionError(f"matrix must be two-dimensional, got shape {a.shape}")
        if a.dtype != field.dtype:
            a = a.astype(field.dtype)
        a.setflags(write=False)
        self.field = field
        self.a = a

    @classmethod
    def from_rows(cls, field: FieldSpec, rows) -> "Matrix":
        arr = field.array(rows)
        if arr.ndim == 1:
            arr = arr.reshape(1, -1)
        return cls(field, arr, reduced=True)

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "Matrix":
        return cls(field, field.eye(n), reduced=True)

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int) -> "Matrix":
        return cls(field, field.zeros((rows, cols)), reduced=True)

    @property
    def rows(self) -> int:
        return self.a.shape[0]

    @property
    def cols(self) -> int:
        return self.a.shape[1]

    @property
    def shape(self):
        return self.a.shape

    @property
    def domain_dim(self) -> int:
        return self.cols

    @property
    def codomain_dim(self) -> int:
        return self.rows

    @property
    def entries(self) -> tuple:
        return tuple(self.a.reshape(-1).tolist())

    @property
    def T(self) -> "Matrix":
        return Matrix(self.field, self.a.T, reduced=True)

    def tolist(self):
        return self.a.tolist()

    def is_identity(self) -> bool:
        return self.rows == self.cols and np.array_equal(self.a, self.field.eye(self.rows))

    def is_zero(self) -> bool:
        return not np.any(self.a != 0)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        return compose(self, other)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field == other.field and self.shape == other.shape and np.array_equal(self.a, other.a)

    __hash__ = None

    def __repr__(self):
        return f"Matrix({self.field}, {self.rows}x{self.cols})"


LinearMap = Matrix


def _check_field(*ms):
    if len({m.field for m in ms}) > 1:
        raise DimensionError("matrices live over different fields")


def compose(f: Matrix, g: Matrix) -> Matrix:
    """``f ∘ g``: apply ``g`` first."""
    _check_field(f, g)
    if f.domain_dim != g.codomain_dim:
        raise DimensionError(f"cannot compose {f.shape} after {g.shape}")
    return Matrix(f.field, f.field.matmul(f.a, g.a), reduced=True)


def tensor_map(f: Matrix, g: Matrix) -> Matrix:
    """Kronecker product; ``b_i ⊗ b_j`` sits at index ``i * dim_g + j``."""
    _check_field(f, g)
    field = f.field
    out = field.contract("ij,kl->ikjl", f.a, g.a).reshape(f.rows * g.rows, f.cols * g.cols)
    return Matrix(field, out, reduced=True)


def transpose(m: Matrix) -> Matrix:
    return m.T


# -- elimination ----------------------------------------------------------


def _eliminate_mod(a: np.ndarray, p: int, n_cols: int | None = None):
    """Row-reduce ``a`` in place to reduced echelon form over GF(p).

    Only the first ``n_cols`` columns are used for pivots.  Returns the
    pivot columns.
    """
    rows = a.shape[0]
    n_cols = a.shape[1] if n_cols is None else n_cols
    pivots = []
    r = 0
    for c in range(n_cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r, c:] = a[r, c:] * inv % p
        others = np.flatnonzero(a[:, c])
        others = others[others != r]
        if others.size:
            a[others, c:] = (a[others, c:] - np.outer(a[others, c], a[r, c:])) % p
        pivots.append(c)
        r += 1
    return pivots


def _rank_mod(a: np.ndarray, p: int) -> int:
    """Forward elimination only (no back substitution)."""
    a = a.copy()
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        below = r + 1 + np.flatnonzero(a[r + 1:, c])
        if below.size:
            inv = pow(int(a[r, c]), -1, p)
            factors = a[below, c] * inv % p
            a[below, c:] = (a[below, c:] - np.outer(factors, a[r, c:])) % p
        r += 1
    return r


def _integer_rows(a: np.ndarray) -> list[list[int]]:
    rows = []
    for row in a.tolist():
        scale = lcm(*[Fraction(x).denominator for x in row]) if row else 1
        rows.append([int(Fraction(x) * scale) for x in row])
    return rows


def _bareiss_rank(m: list[list[int]]) -> int:
    """Fraction-free elimination: every intermediate entry is a minor."""
    m = [row[:] for row in m]
    n_rows = len(m)
    n_cols = len(m[0]) if m else 0
    prev = 1
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        piv = next((i for i in range(r, n_rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pr = m[r]
        for i in range(r + 1, n_rows):
            row = m[i]
            lead = row[c]
            for j in range(c + 1, n_cols):
                row[j] = (row[j] * pr[c] - lead * pr[j]) // prev
            row[c] = 0
        prev = pr[c]
        r += 1
    return r


def rank(m: Matrix) -> int:
    """Exact rank."""
    if m.rows == 0 or m.cols == 0:
        return 0
    field = m.field
    if field.is_prime_field:
        a = m.a.copy()
        return _rank_mod(a, field.p)
    return _bareiss_rank(_integer_rows(m.a))


def invert(m: Matrix) -> Matrix:
    """Two-sided inverse, or :class:`SingularError`."""
    if m.rows != m.cols:
        raise DimensionError(f"cannot invert a {m.rows}x{m.cols} matrix")
    n = m.rows
    field = m.field
    if field.is_prime_field:
        aug = np.concatenate([m.a, field.eye(n)], axis=1)
        aug = aug.copy()
        pivots = _eliminate_mod(aug, field.p, n_cols=n)
        if len(pivots) < n:
            raise SingularError(f"matrix has rank {len(pivots)} < {n}")
        return Matrix(field, aug[:, n:], reduced=True)
    work = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
            for i, row in enumerate(m.a.tolist())]
    for c in range(n):
        piv = next((i for i in range(c, n) if work[i][c] != 0), None)
        if piv is None:
            raise SingularError("matrix is singular")
        work[c], work[piv] = work[piv], work[c]
        inv = 1 / work[c][c]
        work[c] = [x * inv for x in work[c]]
        for i in range(n):
            if i != c and work[i][c] != 0:
                f = work[i][c]
                work[i] = [x - f * y for x, y in zip(work[i], work[c])]
    return Matrix(field, [row[n:] for row in work])


def nullspace(m: Matrix) -> Matrix:
    """A basis of ``{v : m v = 0}`` as the columns of the returned matrix."""
    field = m.field
    rows, cols = m.shape
    if field.is_prime_field:
        a = m.a.copy()
        pivots = _eliminate_mod(a, field.p, n_cols=cols) if rows else []
        a = a[:len(pivots)]
    else:
        work = [[Fraction(x) for x in row] for row in m.a.tolist()]
        pivots, r = [], 0
        for c in range(cols):
            piv = next((i for i in range(r, rows) if work[i][c] != 0), None)
            if piv is None:
                continue
            work[r], work[piv] = work[piv], work[r]
            inv = 1 / work[r][c]
            work[r] = [x * inv for x in work[r]]
            for i in range(rows):
                if i != r and work[i][c] != 0:
                    f = work[i][c]
                    work[i] = [x - f * y for x, y in zip(work[i], work[r])]
            pivots.append(c)
            r += 1
        a = np.array(work[:r], dtype=object).reshape(r, cols)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = field.zeros((cols, len(free)))
    one = field.scalar(1)
    for k, c in enumerate(free):
        basis[c, k] = one
        for i, pc in enumerate(pivots):
            basis[pc, k] = field.neg(a[i, c])
    return Matrix(field, basis)


def is_invertible(m: Matrix) -> bool:
    return m.rows == m.cols and rank(m) == m.rows


__all__ = [
    "FieldSpec", "Matrix", "LinearMap", "compose", "tensor_map", "transpose",
    "rank", "invert", "is_invertible", "nullspace",
]
