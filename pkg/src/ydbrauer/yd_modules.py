"""(α, β)-Yetter-Drinfeld modules and the functors between their categories.

A module over ``H`` (dim ``n``) with carrier dimension ``d`` is stored in
index form:

* ``act[h, m, o]``  coefficient of ``e_o`` in ``b_h · e_m``
* ``co[m, o, k]``   coefficient of ``e_o ⊗ b_k`` in ``ρ(e_m)``

Each module carries the automorphism pair of the category it is declared
to live in; :func:`check_yd` verifies the compatibility condition against
that declaration.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import AxiomError, DimensionError, InvolutionError, ParentError
from .exact_linalg import Matrix, nullspace, rank
from .hopf_core import (AutPair, AxiomReport, Character, GroupLikeElement, HopfAlgebra,
                        HopfAutomorphism, _readonly, same_parent)


class YDModule:
    def __init__(self, hopf: HopfAlgebra, act, co, pair: AutPair, name: str | None = None):
        F = hopf.field
        self.hopf = hopf
        self.act = _readonly(F.reduce(act))
        self.co = _readonly(F.reduce(co))
        n = hopf.dim
        d = self.act.shape[1] if self.act.ndim == 3 else -1
        if self.act.shape != (n, d, d):
            raise DimensionError(f"action has shape {self.act.shape}, expected (n, d, d) with n={n}")
        if self.co.shape != (d, d, n):
            raise DimensionError(f"coaction has shape {self.co.shape}, expected {(d, d, n)}")
        if not same_parent(pair.parent, hopf):
            raise ParentError("pair automorphisms belong to another Hopf algebra")
        self.dim = d
        self.pair = pair
        self.name = name

    @property
    def field(self):
        return self.hopf.field

    @property
    def action(self) -> Matrix:
        """``H ⊗ M → M``; domain index ``h * dim + m``."""
        n, d = self.hopf.dim, self.dim
        return Matrix(self.field, self.act.reshape(n * d, d).T, reduced=True)

    @property
    def coaction(self) -> Matrix:
        """``M → M ⊗ H``; codomain index ``m * n + h``."""
        n, d = self.hopf.dim, self.dim
        return Matrix(self.field, self.co.reshape(d, d * n).T, reduced=True)

    def same_structure(self, other: "YDModule") -> bool:
        return (same_parent(self.hopf, other.hopf) and np.array_equal(self.act, other.act)
                and np.array_equal(self.co, other.co))

    def with_pair(self, pair: AutPair, name=None) -> "YDModule":
        return YDModule(self.hopf, self.act, self.co, pair, name=name)

    def __eq__(self, other):
        if not isinstance(other, YDModule):
            return NotImplemented
        return self.same_structure(other) and self.pair == other.pair

    __hash__ = object.__hash__

    def __repr__(self):
        return f"<YDModule {self.name or ''} dim={self.dim} over {self.hopf!r}>"


def twist_action(act, aut: HopfAutomorphism, field):
    """Action ``h ↦ aut(h) · m``."""
    return field.contract("hx,xmo->hmo", aut.idx, act)


def twist_coaction(co, aut: HopfAutomorphism, field):
    """Coaction ``m ↦ m_(0) ⊗ aut(m_(1))``."""
    return field.contract("mor,rk->mok", co, aut.idx)


def module_axioms(M: YDModule) -> AxiomReport:
    """Unital associative action and counital coassociative coaction."""
    H, F, act, co = M.hopf, M.field, M.act, M.co
    I = F.eye(M.dim)
    rep = AxiomReport()
    rep.record("action_unit", F.contract("h,hmo->mo", H.eta, act), I)
    rep.record("action_associativity", F.contract("abx,xmo->abmo", H.mu, act),
               F.contract("bmy,ayo->abmo", act, act))
    rep.record("coaction_counit", F.contract("mok,k->mo", co, H.eps), I)
    rep.record("coaction_coassociativity", F.contract("myk,yoj->mojk", co, co),
               F.contract("mox,xjk->mojk", co, H.De))
    return rep


@dataclass(frozen=True)
class YDCheck:
    """Outcome of :func:`check_yd`; ``witness`` is the first failing ``(h, m)``."""

    ok: bool
    witness: tuple | None
    ok_alt: bool

    def __bool__(self):
        return self.ok


def yd_sides(M: YDModule, pair: AutPair | None = None):
    """Both sides of the compatibility condition and of its equivalent form.

    Returns ``(lhs_main, rhs_main, lhs_alt, rhs_alt)``, each indexed ``[h, m, o, k]``.
    """
    H, F, act, co = M.hopf, M.field, M.act, M.co
    pair = pair or M.pair
    A, B = pair.alpha.idx, pair.beta.idx
    a_sinv = F.matmul(H.Sinv, A)  # h ↦ α(S⁻¹(h))
    # (h·m)_(0) ⊗ (h·m)_(1)
    lhs_main = F.contract("hmx,xok->hmok", act, co)
    # h_2·m_(0) ⊗ β(h_3) m_(1) α(S⁻¹(h_1))
    rhs_main = F.contract("habc,myr,byo,cp,aq,prqk->hmok", H.De3, co, act, B, a_sinv, H.mu3)
    # h_1·m_(0) ⊗ β(h_2) m_(1)
    lhs_alt = F.contract("hab,myr,ayo,bp,prk->hmok", H.De, co, act, B, H.mu)
    # (h_2·m)_(0) ⊗ (h_2·m)_(1) α(h_1)
    rhs_alt = F.contract("hab,bmz,zor,aq,rqk->hmok", H.De, act, co, A, H.mu)
    return lhs_main, rhs_main, lhs_alt, rhs_alt


def check_yd(M: YDModule, pair: AutPair | None = None) -> YDCheck:
    """Verify the (α, β) compatibility condition for the declared pair."""
    axioms = module_axioms(M)
    if not axioms.passed:
        raise AxiomError(f"not a module and comodule: {axioms.first_failure}")
    lhs, rhs, lhs_n, rhs_n = yd_sides(M, pair)
    bad = np.argwhere(lhs != rhs)
    ok = bad.size == 0
    witness = None if ok else (int(bad[0][0]), int(bad[0][1]))
    return YDCheck(ok, witness, bool(np.array_equal(lhs_n, rhs_n)))


# -- the canonical examples ------------------------------------------------


def trivial_module(H: HopfAlgebra, name="k_triv") -> YDModule:
    """``k`` with action through ``ε`` and coaction ``1 ↦ 1 ⊗ 1``."""
    one = H.field.scalar(1)
    act = H.eps.reshape(-1, 1, 1)
    co = H.eta.reshape(1, 1, -1) * one
    return YDModule(H, act, co, AutPair.identity(H), name=name)


def build_h_alpha_beta(H: HopfAlgebra, alpha: HopfAutomorphism | None,
                       beta: HopfAutomorphism, variant: str = "standard",
                       name: str | None = None) -> YDModule:
    """``H`` acting on itself by ``h·h' = β(h_2) h' α(S⁻¹(h_1))``.

    ``variant="standard"`` uses the regular coaction and lands in YD(α, β).
    ``variant="prime_beta"`` ignores ``alpha`` and builds ``H'_β``: the module
    structure of ``H_{id,β}`` with coaction ``h ↦ h_1 ⊗ β⁻¹(h_2)``, in YD(β⁻¹, id).
    """
    F = H.field
    if variant == "prime_beta":
        alpha = H.identity
    if alpha is None:
        alpha = H.identity
    if not (same_parent(alpha.parent, H) and same_parent(beta.parent, H)):
        raise ParentError("automorphisms belong to another Hopf algebra")
    a_sinv = F.matmul(H.Sinv, alpha.idx)
    act = F.contract("hab,bp,aq,pxqo->hxo", H.De, beta.idx, a_sinv, H.mu3)
    if variant == "standard":
        return YDModule(H, act, H.De, AutPair(alpha, beta), name=name)
    if variant == "prime_beta":
        binv = beta.inverse()
        co = F.contract("hab,bk->hak", H.De, binv.idx)
        return YDModule(H, act, co, AutPair(binv, H.identity), name=name)
    raise ValueError(f"unknown variant {variant!r}")


def check_pair_in_involution(H: HopfAlgebra, f: Character, g: GroupLikeElement,
                             alpha: HopfAutomorphism, beta: HopfAutomorphism) -> bool:
    """``α(h) = g⁻¹ f(h_1) β(h_2) f(S(h_3)) g`` on every basis element."""
    F = H.field
    f_s = F.contract("cx,x->c", H.S, f.values)
    rhs = F.contract("habc,a,bp,c,i,l,iplk->hk", H.De3, f.values, beta.idx, f_s,
                     g.inverse_vector, g.vector, H.mu3)
    return bool(np.array_equal(rhs, alpha.idx))


def build_fVg(H: HopfAlgebra, f: Character, g: GroupLikeElement, dim: int,
              pair: AutPair, name: str | None = None) -> YDModule:
    """``V = k^dim`` with ``h·v = f(h)v`` and ``v ↦ v ⊗ g``."""
    if not check_pair_in_involution(H, f, g, pair.alpha, pair.beta):
        raise InvolutionError("(f, g) is not a pair in involution for this pair")
    F = H.field
    I = F.eye(dim)
    act = F.contract("h,mo->hmo", f.values, I)
    co = F.contract("mo,k->mok", I, g.vector)
    return YDModule(H, act, co, pair, name=name)


# -- functors between the categories ---------------------------------------


def shift(M: YDModule, beta: HopfAutomorphism, direction: str) -> YDModule:
    """``F``: YD(αβ, γβ) → YD(α, γ) via ``h → m = β⁻¹(h)·m``; ``G`` is its inverse."""
    if not same_parent(beta.parent, M.hopf):
        raise ParentError("automorphism belongs to another Hopf algebra")
    a, c = M.pair.alpha, M.pair.beta
    if direction == "F":
        binv = beta.inverse()
        return YDModule(M.hopf, twist_action(M.act, binv, M.field), M.co,
                        AutPair(a @ binv, c @ binv))
    if direction == "G":
        return YDModule(M.hopf, twist_action(M.act, beta, M.field), M.co,
                        AutPair(a @ beta, c @ beta))
    raise ValueError(f"direction must be 'F' or 'G', not {direction!r}")


def conjugate_twist(N: YDModule, alpha: HopfAutomorphism, beta: HopfAutomorphism) -> YDModule:
    """``^(α,β)N``: action ``γ⁻¹βγα⁻¹(h)·n``, coaction ``n_(0) ⊗ αβ⁻¹(n_(1))``."""
    if not (same_parent(alpha.parent, N.hopf) and same_parent(beta.parent, N.hopf)):
        raise ParentError("automorphisms belong to another Hopf algebra")
    F = N.field
    g = N.pair.alpha
    on_action = g.inverse() @ beta @ g @ alpha.inverse()
    on_coaction = alpha @ beta.inverse()
    p = AutPair(alpha, beta)
    return YDModule(N.hopf, twist_action(N.act, on_action, F), twist_coaction(N.co, on_coaction, F),
                    p * N.pair * p.inverse())


def prime(M: YDModule) -> YDModule:
    """``M'``: same action, coaction ``m_(0) ⊗ αβ⁻¹(m_(1))``, in YD(αβ⁻¹α, α)."""
    a, b = M.pair.alpha, M.pair.beta
    twist = a @ b.inverse()
    return YDModule(M.hopf, M.act, twist_coaction(M.co, twist, M.field), AutPair(twist @ a, a))


# -- morphisms -------------------------------------------------------------


@dataclass(frozen=True)
class MorphismFlags:
    linear_ok: bool
    colinear_ok: bool
    bijective: bool

    def all(self) -> bool:
        return self.linear_ok and self.colinear_ok and self.bijective

    def astuple(self):
        return (self.linear_ok, self.colinear_ok, self.bijective)


class YDMorphism:
    """A linear map between YD modules; ``map`` uses the column convention."""

    def __init__(self, source: YDModule, target: YDModule, map: Matrix, inverse: Matrix | None = None):
        if map.shape != (target.dim, source.dim):
            raise DimensionError(f"map has shape {map.shape}, expected {(target.dim, source.dim)}")
        self.source = source
        self.target = target
        self.map = map
        self.inverse = inverse

    @cached_property
    def flags(self) -> MorphismFlags:
        return verify_morphism(self)

    @property
    def same_category(self) -> bool:
        return self.source.pair == self.target.pair


def _module_map_flags(src_act, src_co, tgt_act, tgt_co, idx, F):
    linear = np.array_equal(F.contract("hmy,yo->hmo", src_act, idx),
                            F.contract("mz,hzo->hmo", idx, tgt_act))
    colinear = np.array_equal(F.contract("mz,zok->mok", idx, tgt_co),
                              F.contract("myk,yo->mok", src_co, idx))
    return linear, colinear


def verify_morphism(m: YDMorphism) -> MorphismFlags:
    src, tgt = m.source, m.target
    if not same_parent(src.hopf, tgt.hopf):
        raise ParentError("source and target live over different Hopf algebras")
    if m.map.shape != (tgt.dim, src.dim):
        raise DimensionError("map shape does not match source/target dimensions")
    linear, colinear = _module_map_flags(src.act, src.co, tgt.act, tgt.co, m.map.a.T, src.field)
    bij = src.dim == tgt.dim and rank(m.map) == src.dim
    return MorphismFlags(linear, colinear, bij)


def hom_space(M: YDModule, N: YDModule) -> list[Matrix]:
    """A basis of the linear and colinear maps ``M -> N`` (target x source matrices)."""
    if not same_parent(M.hopf, N.hopf):
        raise ParentError("modules live over different Hopf algebras")
    F = M.field
    dm, dn = M.dim, N.dim
    X = F.eye(dm * dn).reshape(dm, dn, dm * dn)
    lin = F.contract("hmy,yov->hmov", M.act, X) - F.contract("mzv,hzo->hmov", X, N.act)
    col = F.contract("mzv,zok->mokv", X, N.co) - F.contract("myk,yov->mokv", M.co, X)
    system = np.concatenate([F.reduce(lin).reshape(-1, dm * dn), F.reduce(col).reshape(-1, dm * dn)])
    basis = nullspace(Matrix(F, system))
    return [Matrix(F, basis.a[:, k].reshape(dm, dn).T.copy()) for k in range(basis.shape[1])]


def identity_morphism(M: YDModule) -> YDMorphism:
    I = Matrix.identity(M.field, M.dim)
    return YDMorphism(M, M, I, I)
