"""Algebras in the category of ordinary Yetter-Drinfeld modules.

A :class:`YDAlgebra` wraps a :class:`YDModule` with pair (id, id) and adds a
multiplication ``mu[i, j, k]`` (coefficient of ``e_k`` in ``e_i e_j``) and a
unit vector.  Endomorphism algebras carry ``kind="end"`` or ``"end_op"`` so
that products can be taken as matrix products instead of through the
``dim³`` multiplication tensor.

The comodule-algebra axiom used throughout is
``(ab)_(0) ⊗ (ab)_(1) = a_(0) b_(0) ⊗ b_(1) a_(1)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import AxiomError, DimensionError, ParentError
from .exact_linalg import Matrix, rank
from .hopf_core import AutPair, AxiomReport, HopfAlgebra, HopfAutomorphism, _readonly, same_parent
from .monoidal_ops import tensor
from .yd_modules import (YDModule, _module_map_flags, check_yd, module_axioms, twist_action,
                         twist_coaction)

KINDS = ("generic", "end", "end_op")


class YDAlgebra:
    """An algebra in YD(id, id).

    ``mu`` may be an array or a zero-argument callable; it is materialized on
    first use.  For ``kind="end"``/``"end_op"`` it may be omitted and
    ``carrier_dim`` given instead.
    """

    def __init__(self, module: YDModule, mu=None, unit=None, kind: str = "generic",
                 carrier_dim: int | None = None, name: str | None = None, generators=None,
                 product_rule=None):
        if not (module.pair.alpha.is_identity() and module.pair.beta.is_identity()):
            raise ValueError("algebras are taken in YD(id, id)")
        if kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}")
        F = module.field
        self.module = module
        self.kind = kind
        self.name = name
        self.carrier_dim = carrier_dim
        d = module.dim
        if kind != "generic":
            if carrier_dim is None or carrier_dim ** 2 != d:
                raise DimensionError("end algebras need carrier_dim with carrier_dim² = dim")
        if unit is None:
            if kind == "generic":
                raise DimensionError("a generic algebra needs a unit")
            unit = F.eye(carrier_dim).reshape(-1)
        self.unit = _readonly(F.reduce(unit))
        if self.unit.shape != (d,):
            raise DimensionError(f"unit has {self.unit.shape[0]} entries, expected {d}")
        if mu is None and kind == "generic":
            raise DimensionError("a generic algebra needs a multiplication")
        self._mu_source = mu
        self._generators = generators
        self._product_rule = product_rule

    @cached_property
    def generators(self):
        """``(G, P)`` with generator rows ``G`` and ``P[g, y] = G[g] · e_y``, or ``None``."""
        src = self._generators
        return src() if callable(src) else src

    @property
    def hopf(self) -> HopfAlgebra:
        return self.module.hopf

    @property
    def field(self):
        return self.module.field

    @property
    def dim(self) -> int:
        return self.module.dim

    @property
    def act(self):
        return self.module.act

    @property
    def co(self):
        return self.module.co

    @cached_property
    def mu(self):
        F, d = self.field, self.dim
        src = self._mu_source
        if callable(src):
            src = src()
        if src is None:
            src = end_mu(F, self.carrier_dim, op=self.kind == "end_op")
        src = _readonly(F.reduce(src))
        if src.shape != (d, d, d):
            raise DimensionError(f"multiplication has shape {src.shape}, expected {(d, d, d)}")
        self._mu_source = None
        return src

    @property
    def mult(self) -> Matrix:
        """``A ⊗ A → A``; domain index ``i * dim + j``."""
        d = self.dim
        return Matrix(self.field, self.mu.reshape(d * d, d).T, reduced=True)

    def products(self, X, Y):
        """``out[x, y] = X[x] · Y[y]`` for coordinate rows ``X`` and ``Y``."""
        F = self.field
        X, Y = np.asarray(X), np.asarray(Y)
        if self.kind == "generic":
            if self._product_rule is not None and "mu" not in self.__dict__:
                return self._product_rule(X, Y)
            return F.contract("xi,yj,ijk->xyk", X, Y, self.mu)
        c = self.carrier_dim
        Xm, Ym = X.reshape(-1, c, c), Y.reshape(-1, c, c)
        if self.kind == "end":
            r = F.contract("xab,ybc->xyac", Xm, Ym)
        else:
            r = F.contract("xbc,yab->xyac", Xm, Ym)
        return r.reshape(X.shape[0], Y.shape[0], c * c)

    def multiply(self, x, y):
        return self.products(np.asarray(x)[None], np.asarray(y)[None])[0, 0]

    def same_structure(self, other: "YDAlgebra") -> bool:
        if not self.module.same_structure(other.module):
            return False
        if not np.array_equal(self.unit, other.unit):
            return False
        if self.kind != "generic" and self.kind == other.kind and self.carrier_dim == other.carrier_dim:
            return True
        return bool(np.array_equal(self.mu, other.mu))

    def __eq__(self, other):
        if not isinstance(other, YDAlgebra):
            return NotImplemented
        return self.same_structure(other)

    __hash__ = object.__hash__

    def __repr__(self):
        return f"<YDAlgebra {self.name or ''} dim={self.dim} kind={self.kind}>"


def end_mu(field, c: int, op: bool = False):
    """Structure constants of ``End(k^c)`` (or its opposite) in the ``E_ij`` basis."""
    I = field.eye(c)
    if op:
        t = field.contract("ia,jk,lb->klijab", I, I, I)
    else:
        t = field.contract("ia,jk,lb->ijklab", I, I, I)
    return t.reshape(c * c, c * c, c * c)


def verify_yd_algebra(A: YDAlgebra) -> AxiomReport:
    """Module, comodule and YD conditions, then the unital algebra, module-algebra
    and comodule-algebra axioms."""
    H, F = A.hopf, A.field
    rep = module_axioms(A.module)
    if rep.passed:
        rep.record_verdict("yd_compatibility", check_yd(A.module).ok)
    mu, u, act, co, d = A.mu, A.unit, A.act, A.co, A.dim
    I = F.eye(d)
    rep.record("associativity", F.contract("abx,xck->abck", mu, mu), F.contract("bcx,axk->abck", mu, mu))
    rep.record("left_unit", F.contract("i,ijk->jk", u, mu), I)
    rep.record("right_unit", F.contract("j,ijk->ik", u, mu), I)
    # h·(ab) = (h_1·a)(h_2·b)
    rep.record("module_algebra", F.contract("abx,hxk->habk", mu, act),
               F.contract("hpq,pay,qbz,yzk->habk", H.De, act, act, mu))
    rep.record("module_unit", F.contract("i,hik->hk", u, act), F.contract("h,k->hk", H.eps, u))
    # (ab)_(0) ⊗ (ab)_(1) = a_(0) b_(0) ⊗ b_(1) a_(1)
    rep.record("comodule_algebra", F.contract("abx,xok->abok", mu, co),
               F.contract("apr,bqs,pqo,srk->abok", co, co, mu, H.mu))
    rep.record("comodule_unit", F.contract("i,iok->ok", u, co), F.contract("o,k->ok", u, H.eta))
    return rep


def _require_valid(A: YDAlgebra):
    rep = verify_yd_algebra(A)
    if not rep.passed:
        raise AxiomError(f"not an algebra in YD: {rep.first_failure}")


def opposite(A: YDAlgebra, kind: str = "h_opposite", check: bool = True) -> YDAlgebra:
    """``plain``: ``a • a' = a' a``; ``h_opposite``: ``a * a' = a'_(0) (a'_(1) · a)``."""
    if check:
        _require_valid(A)
    F = A.field
    if kind == "plain":
        if A.kind == "end":
            return YDAlgebra(A.module, None, A.unit, "end_op", A.carrier_dim)
        if A.kind == "end_op":
            return YDAlgebra(A.module, None, A.unit, "end", A.carrier_dim)
        return YDAlgebra(A.module, np.ascontiguousarray(A.mu.transpose(1, 0, 2)), A.unit)
    if kind == "h_opposite":
        mu = F.contract("bpr,raq,pqk->abk", A.co, A.act, A.mu)
        return YDAlgebra(A.module, mu, A.unit)
    raise ValueError(f"kind must be 'plain' or 'h_opposite', not {kind!r}")


def smash_mu(A: YDAlgebra, B: YDAlgebra):
    """``(a ⊗ b)(a' ⊗ b') = a a'_(0) ⊗ (a'_(1) · b) b'``."""
    F = A.field
    t = F.contract("axc,pxh,hby,yqd->abpqcd", A.mu, A.co, B.act, B.mu)
    n = A.dim * B.dim
    return t.reshape(n, n, n)


def smash(A: YDAlgebra, B: YDAlgebra) -> YDAlgebra:
    """The braided tensor product ``A # B``."""
    if not same_parent(A.hopf, B.hopf):
        raise ParentError("algebras over different Hopf algebras")
    module = tensor(A.module, B.module, "one")
    unit = A.field.contract("a,b->ab", A.unit, B.unit).reshape(-1)
    return YDAlgebra(module, lambda: smash_mu(A, B), unit, generators=lambda: smash_generators(A, B),
                      product_rule=lambda X, Y: smash_products(A, B, X, Y))


def smash_products(A: YDAlgebra, B: YDAlgebra, X, Y):
    """Products of coordinate rows in ``A # B`` without forming the full multiplication."""
    F = A.field
    dA, dB = A.dim, B.dim
    Xt, Yt = np.asarray(X).reshape(-1, dA, dB), np.asarray(Y).reshape(-1, dA, dB)
    left = F.contract("rab,axc,hby->rxchy", Xt, A.mu, B.act)
    right = F.contract("spq,pxh,yqd->sxhyd", Yt, A.co, B.mu)
    out = F.contract("rxchy,sxhyd->rscd", left, right)
    return out.reshape(X.shape[0], Y.shape[0], dA * dB)


def smash_generators(A: YDAlgebra, B: YDAlgebra):
    """Rows ``a_i # 1`` and ``1 # b_j`` with their left products, or ``None``
    if products of these rows fail to give the basis ``a_i # b_j``."""
    F = A.field
    dA, dB = A.dim, B.dim
    n = dA * dB
    left = F.contract("ixc,pxh,hby,yqd,b->ipqcd", A.mu, A.co, B.act, B.mu, B.unit).reshape(dA, n, n)
    right = F.contract("a,axc,pxh,hjy,yqd->jpqcd", A.unit, A.mu, A.co, B.act, B.mu).reshape(dB, n, n)
    right_rows = F.contract("a,jb->jab", A.unit, F.eye(dB)).reshape(dB, n)
    spans = F.contract("iyz,jy->ijz", left, right_rows).reshape(n, n)
    if not np.array_equal(spans, F.eye(n)):
        return None
    left_rows = F.contract("ia,b->iab", F.eye(dA), B.unit).reshape(dA, n)
    return np.concatenate([left_rows, right_rows]), np.concatenate([left, right])


def twist_algebra(A: YDAlgebra, mu: HopfAutomorphism) -> YDAlgebra:
    """``A(μ)``: action ``μ(h)·a``, coaction ``a_(0) ⊗ μ⁻¹(a_(1))``, same product."""
    if not same_parent(mu.parent, A.hopf):
        raise ParentError("automorphism belongs to another Hopf algebra")
    F = A.field
    module = YDModule(A.hopf, twist_action(A.act, mu, F), twist_coaction(A.co, mu.inverse(), F),
                      A.module.pair)
    src = A._mu_source if "mu" not in A.__dict__ else A.mu
    return YDAlgebra(module, src, A.unit, A.kind, A.carrier_dim)


def trivial_algebra(H: HopfAlgebra) -> YDAlgebra:
    """``k`` with trivial structures."""
    from .yd_modules import trivial_module
    F = H.field
    return YDAlgebra(trivial_module(H, name="k"), F.array([[[1]]]), F.array([1]), name="k")


def diagonal_algebra(H: HopfAlgebra, n: int = 2) -> YDAlgebra:
    """``k × ... × k`` (``n`` factors) with trivial structures; not H-Azumaya for n > 1."""
    F = H.field
    I = F.eye(n)
    mu = F.contract("ij,jk->ijk", I, I)
    act = F.contract("h,mo->hmo", H.eps, I)
    co = F.contract("mo,k->mok", I, H.eta)
    module = YDModule(H, act, co, AutPair.identity(H), name=f"k^{n}")
    return YDAlgebra(module, mu, F.array([1] * n), name="kxk" if n == 2 else f"k^{n}")


# -- morphisms ------------------------------------------------------------


@dataclass(frozen=True)
class AlgebraFlags:
    algebra_ok: bool
    linear_ok: bool
    colinear_ok: bool
    bijective: bool

    def all(self) -> bool:
        return self.algebra_ok and self.linear_ok and self.colinear_ok and self.bijective

    def astuple(self):
        return (self.algebra_ok, self.linear_ok, self.colinear_ok, self.bijective)


class AlgebraMorphism:
    """A linear map between YD algebras; ``map`` uses the column convention.

    Each flag is computed on first access.
    """

    def __init__(self, source: YDAlgebra, target: YDAlgebra, map: Matrix, inverse: Matrix | None = None):
        if not same_parent(source.hopf, target.hopf):
            raise ParentError("algebras over different Hopf algebras")
        if map.shape != (target.dim, source.dim):
            raise DimensionError(f"map has shape {map.shape}, expected {(target.dim, source.dim)}")
        self.source = source
        self.target = target
        self.map = map
        self.inverse = inverse

    @property
    def idx(self):
        """Index form: ``idx[x, y]`` is the coefficient of ``e_y`` in ``f(e_x)``."""
        return self.map.a.T

    def _unit_ok(self) -> bool:
        F = self.source.field
        return bool(np.array_equal(F.contract("x,xy->y", self.source.unit, self.idx), self.target.unit))

    @cached_property
    def algebra_ok(self) -> bool:
        """Unit preservation and ``f(xy) = f(x) f(y)``.

        When the source carries generators (smash products) only ``x`` from
        the generating set is checked.  This is exact for an associative
        source: the ``x`` satisfying the identity for all ``y`` form a
        subalgebra.
        """
        gens = self.source.generators
        if gens is None:
            return self.algebra_ok_exhaustive
        if not self._unit_ok():
            return False
        F, f = self.source.field, self.idx
        G, P = gens
        lhs = F.contract("gyz,zw->gyw", P, f)
        return bool(np.array_equal(lhs, self.target.products(F.contract("gx,xy->gy", G, f), f)))

    @cached_property
    def algebra_ok_exhaustive(self) -> bool:
        """``f(xy) = f(x) f(y)`` on every pair of basis vectors."""
        if not self._unit_ok():
            return False
        F, f = self.source.field, self.idx
        lhs = F.contract("xyz,zw->xyw", self.source.mu, f)
        return bool(np.array_equal(lhs, self.target.products(f, f)))

    @cached_property
    def _module_flags(self):
        s, t = self.source, self.target
        return _module_map_flags(s.act, s.co, t.act, t.co, self.idx, s.field)

    @property
    def linear_ok(self) -> bool:
        return bool(self._module_flags[0])

    @property
    def colinear_ok(self) -> bool:
        return bool(self._module_flags[1])

    @cached_property
    def bijective(self) -> bool:
        return self.source.dim == self.target.dim and rank(self.map) == self.source.dim

    @property
    def flags(self) -> AlgebraFlags:
        return AlgebraFlags(self.algebra_ok, self.linear_ok, self.colinear_ok, self.bijective)

    def __repr__(self):
        return f"<AlgebraMorphism {self.source.dim}->{self.target.dim}>"
