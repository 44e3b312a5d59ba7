"""Finite-dimensional Hopf algebras given by structure constants.

Index conventions (used by every module of the package):

* ``mu[i, j, k]``   coefficient of ``b_k`` in ``b_i b_j``
* ``eta[k]``        coefficient of ``b_k`` in ``1``
* ``De[i, j, k]``   coefficient of ``b_j ⊗ b_k`` in ``Δ(b_i)``
* ``eps[i]``        ``ε(b_i)``
* ``S[i, j]``       coefficient of ``b_j`` in ``S(b_i)``

These "inputs first, outputs last" arrays are called *index form*.  The
public :class:`~ydbrauer.exact_linalg.Matrix` views (``mult``, ``comult``,
``antipode``...) use the column convention ``codomain × domain``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property
from itertools import permutations

import numpy as np

from .errors import BadParameter, DimensionError, ParentError, SingularError
from .exact_linalg import FieldSpec, Matrix, invert, rank


def _readonly(a):
    a = np.asarray(a)
    a.setflags(write=False)
    return a


@dataclass
class AxiomReport:
    """One verdict per axiom; for failures, the first offending index tuple."""

    results: dict = dc_field(default_factory=dict)
    witnesses: dict = dc_field(default_factory=dict)

    def record(self, name: str, lhs, rhs, label: str | None = None) -> bool:
        lhs = np.asarray(lhs)
        rhs = np.asarray(rhs)
        if lhs.shape != rhs.shape:
            raise DimensionError(f"{name}: shapes {lhs.shape} and {rhs.shape} differ")
        diff = np.argwhere(lhs != rhs)
        ok = diff.size == 0
        self.record_verdict(name, ok, None if ok else tuple(int(v) for v in diff[0]), label)
        return ok

    def record_verdict(self, name, ok, witness=None, label=None):
        if name not in self.results:
            self.results[name] = True
            self.witnesses[name] = None
        if not ok and self.results[name]:
            self.results[name] = False
            self.witnesses[name] = (label, witness) if label else witness

    @property
    def passed(self) -> bool:
        return all(self.results.values())

    @property
    def first_failure(self):
        for name, ok in self.results.items():
            if not ok:
                return name, self.witnesses[name]
        return None

    def __bool__(self):
        return self.passed


class HopfAlgebra:
    """A finite-dimensional Hopf algebra with bijective antipode.

    Construction only checks shapes; call :func:`verify_hopf` for the axioms.
    If ``antipode_inv`` is omitted it is computed once from ``antipode``.
    """

    def __init__(self, field: FieldSpec, mu, eta, De, eps, S, Sinv=None,
                 basis_labels=None, name: str | None = None):
        self.field = field
        self.mu = _readonly(field.reduce(mu))
        n = self.mu.shape[0]
        self.dim = n
        self.eta = _readonly(field.reduce(eta))
        self.De = _readonly(field.reduce(De))
        self.eps = _readonly(field.reduce(eps))
        self.S = _readonly(field.reduce(S))
        for label, arr, shape in (("mult", self.mu, (n, n, n)), ("unit", self.eta, (n,)),
                                  ("comult", self.De, (n, n, n)), ("counit", self.eps, (n,)),
                                  ("antipode", self.S, (n, n))):
            if arr.shape != shape:
                raise DimensionError(f"{label} has shape {arr.shape}, expected {shape}")
        if Sinv is None:
            Sinv = antipode_inverse(self).a.T
        self.Sinv = _readonly(field.reduce(Sinv))
        if self.Sinv.shape != (n, n):
            raise DimensionError(f"antipode_inv has shape {self.Sinv.shape}, expected {(n, n)}")
        self.basis_labels = list(basis_labels) if basis_labels is not None else None
        self.name = name
        # set by the standard builders; the corpus supplies automorphism groups explicitly
        self.presentation = None
        self.known_automorphisms: dict = {}

    # -- linear-map views --------------------------------------------------

    @property
    def mult(self) -> Matrix:
        n = self.dim
        return Matrix(self.field, self.mu.reshape(n * n, n).T, reduced=True)

    @property
    def unit(self) -> Matrix:
        return Matrix(self.field, self.eta.reshape(-1, 1), reduced=True)

    @property
    def comult(self) -> Matrix:
        n = self.dim
        return Matrix(self.field, self.De.reshape(n, n * n).T, reduced=True)

    @property
    def counit(self) -> Matrix:
        return Matrix(self.field, self.eps.reshape(1, -1), reduced=True)

    @property
    def antipode(self) -> Matrix:
        return Matrix(self.field, self.S.T, reduced=True)

    @property
    def antipode_inv(self) -> Matrix:
        return Matrix(self.field, self.Sinv.T, reduced=True)

    # -- derived tensors ---------------------------------------------------

    @cached_property
    def De3(self):
        """``De3[h, a, b, c]``: coefficient of ``b_a ⊗ b_b ⊗ b_c`` in ``h_1 ⊗ h_2 ⊗ h_3``."""
        return _readonly(self.field.contract("hxc,xab->habc", self.De, self.De))

    @cached_property
    def mu3(self):
        """``mu3[i, j, l, k]``: coefficient of ``b_k`` in ``b_i b_j b_l``."""
        return _readonly(self.field.contract("ijx,xlk->ijlk", self.mu, self.mu))

    @cached_property
    def identity(self) -> "HopfAutomorphism":
        return HopfAutomorphism(self, Matrix.identity(self.field, self.dim), check=False)

    @cached_property
    def s2(self) -> "HopfAutomorphism":
        """The square of the antipode, always a Hopf automorphism."""
        return HopfAutomorphism(self, self.antipode @ self.antipode, check=False)

    def basis_vector(self, i: int):
        v = self.field.zeros(self.dim)
        v[i] = self.field.scalar(1)
        return v

    def element(self, label: str):
        return self.basis_vector(self.basis_labels.index(label))

    def multiply(self, x, y):
        return self.field.contract("i,j,ijk->k", x, y, self.mu)

    def __eq__(self, other):
        if not isinstance(other, HopfAlgebra):
            return NotImplemented
        return (self.field == other.field and self.dim == other.dim
                and all(np.array_equal(getattr(self, k), getattr(other, k))
                        for k in ("mu", "eta", "De", "eps", "S", "Sinv")))

    __hash__ = object.__hash__

    def __repr__(self):
        label = self.name or "HopfAlgebra"
        return f"<{label} dim={self.dim} over {self.field}>"


def same_parent(a: HopfAlgebra, b: HopfAlgebra) -> bool:
    return a is b or a == b


def verify_hopf(H: HopfAlgebra) -> AxiomReport:
    """Check every Hopf axiom by comparing both sides as full tensors."""
    F = H.field
    n = H.dim
    mu, eta, De, eps, S, Sinv = H.mu, H.eta, H.De, H.eps, H.S, H.Sinv
    I = F.eye(n)
    rep = AxiomReport()
    rep.record("associativity", F.contract("ijx,xlk->ijlk", mu, mu), F.contract("jlx,ixk->ijlk", mu, mu))
    rep.record("unit", F.contract("x,xik->ik", eta, mu), I, "left")
    rep.record("unit", F.contract("x,ixk->ik", eta, mu), I, "right")
    rep.record("coassociativity", F.contract("hxc,xab->habc", De, De), F.contract("hax,xbc->habc", De, De))
    rep.record("counit", F.contract("a,hab->hb", eps, De), I, "left")
    rep.record("counit", F.contract("hab,b->ha", De, eps), I, "right")
    rep.record("bialgebra", F.contract("ijx,xab->ijab", mu, De),
               F.contract("ipq,jrs,prA,qsB->ijAB", De, De, mu, mu), "comult_of_product")
    rep.record("bialgebra", F.contract("x,xab->ab", eta, De), F.contract("a,b->ab", eta, eta), "comult_of_unit")
    rep.record("bialgebra", F.contract("ijx,x->ij", mu, eps), F.contract("i,j->ij", eps, eps), "counit_of_product")
    rep.record("bialgebra", F.contract("x,x->", eta, eps).reshape(1), F.array([1]), "counit_of_unit")
    unit_counit = F.contract("h,k->hk", eps, eta)
    rep.record("antipode", F.contract("hab,ax,xbk->hk", De, S, mu), unit_counit, "S_left")
    rep.record("antipode", F.contract("hab,bx,axk->hk", De, S, mu), unit_counit, "S_right")
    rep.record("antipode_inverse", F.matmul(S, Sinv), I, "S_then_Sinv")
    rep.record("antipode_inverse", F.matmul(Sinv, S), I, "Sinv_then_S")
    return rep


def antipode_inverse(H: HopfAlgebra) -> Matrix:
    """Matrix inverse of the antipode (column convention)."""
    try:
        return invert(Matrix(H.field, H.S.T, reduced=True))
    except SingularError as exc:
        raise SingularError("antipode is not bijective") from exc


def _automorphism_failures(H: HopfAlgebra, a: Matrix):
    F = H.field
    A = a.a.T  # index form
    yield "bijective", rank(a) == H.dim
    yield "mult", np.array_equal(F.contract("ijx,xk->ijk", H.mu, A), F.contract("ip,jq,pqk->ijk", A, A, H.mu))
    yield "unit", np.array_equal(F.contract("x,xk->k", H.eta, A), H.eta)
    yield "comult", np.array_equal(F.contract("ix,xab->iab", A, H.De), F.contract("ipq,pa,qb->iab", H.De, A, A))
    yield "counit", np.array_equal(F.contract("ix,x->i", A, H.eps), H.eps)


def is_hopf_automorphism(H: HopfAlgebra, a: Matrix) -> bool:
    if a.shape != (H.dim, H.dim):
        raise DimensionError(f"expected a {H.dim}x{H.dim} matrix, got {a.shape}")
    return all(ok for _, ok in _automorphism_failures(H, a))


class HopfAutomorphism:
    """An automorphism of ``parent``; ``matrix`` uses the column convention.

    Composition follows maps: ``(a @ b)(h) = a(b(h))``.
    """

    __slots__ = ("parent", "matrix", "__weakref__")

    def __init__(self, parent: HopfAlgebra, matrix: Matrix, check: bool = True):
        if check and not is_hopf_automorphism(parent, matrix):
            raise BadParameter("matrix is not a Hopf algebra automorphism")
        self.parent = parent
        self.matrix = matrix

    @property
    def idx(self):
        """Index form: ``idx[i, j]`` is the coefficient of ``b_j`` in ``a(b_i)``."""
        return self.matrix.a.T

    def __matmul__(self, other: "HopfAutomorphism") -> "HopfAutomorphism":
        if not same_parent(self.parent, other.parent):
            raise ParentError("automorphisms of different Hopf algebras")
        return HopfAutomorphism(self.parent, self.matrix @ other.matrix, check=False)

    def inverse(self) -> "HopfAutomorphism":
        return HopfAutomorphism(self.parent, invert(self.matrix), check=False)

    def is_identity(self) -> bool:
        return self.matrix.is_identity()

    def __eq__(self, other):
        if not isinstance(other, HopfAutomorphism):
            return NotImplemented
        return same_parent(self.parent, other.parent) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix.entries)

    def __repr__(self):
        return f"HopfAutomorphism({self.matrix.entries})"


def _check_same(*autos):
    first = autos[0].parent
    for a in autos[1:]:
        if not same_parent(first, a.parent):
            raise ParentError("automorphisms belong to different Hopf algebras")


@dataclass(frozen=True, eq=True)
class AutPair:
    """An element ``(alpha, beta)`` of the group Aut × Aut."""

    alpha: HopfAutomorphism
    beta: HopfAutomorphism

    def __post_init__(self):
        _check_same(self.alpha, self.beta)

    @classmethod
    def identity(cls, H: HopfAlgebra) -> "AutPair":
        return cls(H.identity, H.identity)

    @property
    def parent(self) -> HopfAlgebra:
        return self.alpha.parent

    def __mul__(self, other: "AutPair") -> "AutPair":
        return pair_multiply(self, other)

    def inverse(self) -> "AutPair":
        return pair_inverse(self)

    def is_identity(self) -> bool:
        return self.alpha.is_identity() and self.beta.is_identity()


def pair_multiply(p: AutPair, q: AutPair) -> AutPair:
    """``(α, β) * (γ, δ) = (αγ, δγ⁻¹βγ)``."""
    _check_same(p.alpha, q.alpha)
    a, b, c, d = p.alpha, p.beta, q.alpha, q.beta
    return AutPair(a @ c, d @ c.inverse() @ b @ c)


def pair_inverse(p: AutPair) -> AutPair:
    ai = p.alpha.inverse()
    return AutPair(ai, p.alpha @ p.beta.inverse() @ ai)


def pair_to_auto(p: AutPair) -> HopfAutomorphism:
    """``(α, β) ↦ βα⁻¹``; reverses products."""
    return p.beta @ p.alpha.inverse()


class Character:
    """An algebra map ``H → k`` given by its values on the basis."""

    def __init__(self, parent: HopfAlgebra, values, check: bool = True):
        self.parent = parent
        self.values = _readonly(parent.field.reduce(values))
        if self.values.shape != (parent.dim,):
            raise DimensionError(f"character needs {parent.dim} values")
        if check and not self.is_multiplicative():
            raise BadParameter("values do not define an algebra map")

    def is_multiplicative(self) -> bool:
        F, H, f = self.parent.field, self.parent, self.values
        lhs = F.contract("ijk,k->ij", H.mu, f)
        rhs = F.contract("i,j->ij", f, f)
        return np.array_equal(lhs, rhs) and F.contract("k,k->", H.eta, f) == F.scalar(1)

    @classmethod
    def counit(cls, H: HopfAlgebra) -> "Character":
        return cls(H, H.eps, check=False)

    def __eq__(self, other):
        if not isinstance(other, Character):
            return NotImplemented
        return same_parent(self.parent, other.parent) and np.array_equal(self.values, other.values)

    __hash__ = object.__hash__


class GroupLikeElement:
    """``g`` with ``Δ(g) = g ⊗ g`` and ``ε(g) = 1``; the inverse is ``S(g)``."""

    def __init__(self, parent: HopfAlgebra, vector, inverse_vector=None, check: bool = True):
        F = parent.field
        self.parent = parent
        self.vector = _readonly(F.reduce(vector))
        if self.vector.shape != (parent.dim,):
            raise DimensionError(f"group-like element needs {parent.dim} coordinates")
        if inverse_vector is None:
            inverse_vector = F.contract("i,ij->j", self.vector, parent.S)
        self.inverse_vector = _readonly(F.reduce(inverse_vector))
        if check and not self.is_grouplike():
            raise BadParameter("vector is not an invertible group-like element")

    def is_grouplike(self) -> bool:
        F, H, g, gi = self.parent.field, self.parent, self.vector, self.inverse_vector
        if not np.array_equal(F.contract("i,iab->ab", g, H.De), F.contract("a,b->ab", g, g)):
            return False
        if F.contract("i,i->", g, H.eps) != F.scalar(1):
            return False
        return (np.array_equal(H.multiply(g, gi), H.eta)
                and np.array_equal(H.multiply(gi, g), H.eta))

    @classmethod
    def one(cls, H: HopfAlgebra) -> "GroupLikeElement":
        return cls(H, H.eta, H.eta, check=False)

    def __eq__(self, other):
        if not isinstance(other, GroupLikeElement):
            return NotImplemented
        return (same_parent(self.parent, other.parent) and np.array_equal(self.vector, other.vector)
                and np.array_equal(self.inverse_vector, other.inverse_vector))

    __hash__ = object.__hash__


# -- standard corpus --------------------------------------------------------


def group_algebra(table, field: FieldSpec, labels=None, name=None) -> HopfAlgebra:
    """The group algebra of the group with multiplication table ``table``."""
    n = len(table)
    if n == 0 or any(len(row) != n for row in table):
        raise BadParameter("multiplication table must be square and non-empty")
    if any(not (0 <= v < n) for row in table for v in row):
        raise BadParameter("table entries must index group elements")
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if table[table[a][b]][c] != table[a][table[b][c]]:
                    raise BadParameter("table is not associative")
    units = [e for e in range(n) if all(table[e][a] == a == table[a][e] for a in range(n))]
    if not units:
        raise BadParameter("table has no identity")
    e = units[0]
    inv = []
    for a in range(n):
        cands = [b for b in range(n) if table[a][b] == e == table[b][a]]
        if not cands:
            raise BadParameter(f"element {a} has no inverse")
        inv.append(cands[0])
    mu = np.zeros((n, n, n), dtype=np.int64)
    De = np.zeros((n, n, n), dtype=np.int64)
    S = np.zeros((n, n), dtype=np.int64)
    for a in range(n):
        De[a, a, a] = 1
        S[a, inv[a]] = 1
        for b in range(n):
            mu[a, b, table[a][b]] = 1
    eta = np.zeros(n, dtype=np.int64)
    eta[e] = 1
    H = HopfAlgebra(field, mu, eta, De, np.ones(n, dtype=np.int64), S,
                    basis_labels=labels or [f"g{i}" for i in range(n)], name=name)
    H.presentation = ("group", [list(r) for r in table])
    H.known_automorphisms = dict(_group_automorphisms(H, table))
    return H


def _group_automorphisms(H, table):
    n = len(table)
    found = []
    for perm in permutations(range(n)):
        if all(perm[table[a][b]] == table[perm[a]][perm[b]] for a in range(n) for b in range(n)):
            m = np.zeros((n, n), dtype=np.int64)
            for a in range(n):
                m[perm[a], a] = 1
            found.append(HopfAutomorphism(H, Matrix(H.field, m), check=False))
    found.sort(key=lambda a: (not a.is_identity(), a.matrix.entries))
    return [("id" if a.is_identity() else f"aut{i}", a) for i, a in enumerate(found)]


def cyclic_group_algebra(n: int, p: int) -> HopfAlgebra:
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    labels = ["1"] + ["g" if i == 1 else f"g{i}" for i in range(1, n)]
    return group_algebra(table, FieldSpec.gf(p), labels=labels, name=f"kC{n}/GF({p})")


def _taft_label(i, j):
    g = "" if i == 0 else ("g" if i == 1 else f"g{i}")
    x = "" if j == 0 else ("x" if j == 1 else f"x{j}")
    return (g + x) or "1"


def taft(n: int, q, p: int) -> HopfAlgebra:
    """Taft algebra ``T_n(q)`` over GF(p); basis ``g^i x^j`` at index ``j*n + i``."""
    field = FieldSpec.gf(p)
    if n < 2:
        raise BadParameter("Taft algebras need n >= 2")
    q = field.scalar(q)
    order = next((k for k in range(1, p) if pow(q, k, p) == 1), None) if q else None
    if order != n:
        raise BadParameter(f"q={q} has multiplicative order {order} in GF({p}), need {n}")
    dim = n * n

    def idx(i, j):
        return j * n + i

    mu = np.zeros((dim, dim, dim), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    if j + l < n:
                        mu[idx(i, j), idx(k, l), idx((i + k) % n, j + l)] = pow(q, j * k, p)
    eta = np.zeros(dim, dtype=np.int64)
    eta[idx(0, 0)] = 1
    eps = np.zeros(dim, dtype=np.int64)
    eps[[idx(i, 0) for i in range(n)]] = 1

    def mul(x, y):
        return field.contract("i,j,ijk->k", x, y, mu)

    def mul2(x, y):  # product in H ⊗ H
        return field.contract("ab,cd,ace,bdf->ef", x, y, mu, mu)

    def e(i, j):
        v = np.zeros(dim, dtype=np.int64)
        v[idx(i, j)] = 1
        return v

    dg = np.einsum("a,b->ab", e(1, 0), e(1, 0))
    dx = np.einsum("a,b->ab", e(0, 1), e(0, 0)) + np.einsum("a,b->ab", e(1, 0), e(0, 1))
    sg = e(n - 1, 0)
    sx = field.reduce(-e(n - 1, 1))
    De = np.zeros((dim, dim, dim), dtype=np.int64)
    S = np.zeros((dim, dim), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            d = np.einsum("a,b->ab", e(0, 0), e(0, 0))
            s = e(0, 0)
            for _ in range(i):
                d = mul2(d, dg)
            for _ in range(j):
                d = mul2(d, dx)
            for _ in range(j):
                s = mul(s, sx)
            for _ in range(i):
                s = mul(s, sg)
            De[idx(i, j)] = d
            S[idx(i, j)] = s
    labels = [_taft_label(i, j) for j in range(n) for i in range(n)]
    H = HopfAlgebra(field, mu, eta, De, eps, S, basis_labels=labels, name=f"T{n}({q})/GF({p})")
    H.presentation = ("taft", n, q)
    H.known_automorphisms = {
        ("id" if lam == 1 else f"phi{lam}"): taft_automorphism(H, lam) for lam in range(1, p)
    }
    return H


def sweedler(p: int) -> HopfAlgebra:
    """Sweedler's four-dimensional algebra, basis ``1, g, x, gx``."""
    if p == 2:
        raise BadParameter("Sweedler's algebra needs characteristic != 2")
    H = taft(2, p - 1, p)
    H.name = f"H4/GF({p})"
    return H


def taft_automorphism(H: HopfAlgebra, lam) -> HopfAutomorphism:
    """``g ↦ g, x ↦ λx`` on a Taft algebra."""
    if not H.presentation or H.presentation[0] != "taft":
        raise BadParameter("not a Taft algebra built by taft()")
    n = H.presentation[1]
    lam = H.field.scalar(lam)
    if lam == 0:
        raise BadParameter("λ must be non-zero")
    diag = [pow(lam, j, H.field.p) for j in range(n) for _ in range(n)]
    return HopfAutomorphism(H, Matrix(H.field, np.diag(diag)), check=False)


def build_standard(kind: str, **params) -> HopfAlgebra:
    """``group_algebra(table=..., p=...)``, ``sweedler(p=...)`` or ``taft(n=..., q=..., p=...)``."""
    if kind == "group_algebra":
        table = params.get("table")
        if table is None:
            table = [[(i + j) % params["n"] for j in range(params["n"])] for i in range(params["n"])]
        H = group_algebra(table, FieldSpec.gf(params.get("p", 5)))
    elif kind == "sweedler":
        H = sweedler(params.get("p", 5))
    elif kind == "taft":
        H = taft(params["n"], params["q"], params["p"])
    else:
        raise BadParameter(f"unknown standard algebra {kind!r}")
    rep = verify_hopf(H)
    if not rep.passed:
        raise BadParameter(f"builder produced an invalid Hopf algebra: {rep.first_failure}")
    return H
