"""Tensor products, duals, the braiding and the dual-of-tensor isomorphism.

Tensor carriers use the basis ``e_m ⊗ e_n`` at index ``m * dim N + n``.
Duals live on the dual basis of the carrier, shared by all four flavors,
so flavor comparisons are plain array comparisons.
"""

from __future__ import annotations

from .errors import PairMismatch, ParentError
from .exact_linalg import Matrix, invert
from .hopf_core import AutPair, same_parent
from .yd_modules import YDModule, YDMorphism, conjugate_twist

TENSOR_KINDS = ("one", "two", "hat")
DUAL_FLAVORS = ("diamond_left", "diamond_right", "star_left", "star_right")


def _tensor_structures(M: YDModule, N: YDModule, x, y, leg_order: str):
    """Action ``h ↦ x(h_1)·m ⊗ y(h_2)·n`` (index forms ``x``, ``y``) and the
    tensor coaction with H-leg ``n_(1) m_(1)`` (``"nm"``) or ``m_(1) n_(1)``."""
    H, F = M.hopf, M.field
    a, b = M.dim, N.dim
    act = F.contract("hpq,pu,qv,umo,vnr->hmnor", H.De, x, y, M.act, N.act)
    if leg_order == "nm":
        co = F.contract("mok,nrl,lkj->mnorj", M.co, N.co, H.mu)
    else:
        co = F.contract("mok,nrl,klj->mnorj", M.co, N.co, H.mu)
    n = H.dim
    return act.reshape(n, a * b, a * b), co.reshape(a * b, a * b, n)


def tensor(M: YDModule, N: YDModule, kind: str = "hat") -> YDModule:
    """``M ⊗ N`` with the structures of the requested kind.

    ``one``: M ∈ YD(α,β), N ∈ YD(β,γ), action ``h_1·m ⊗ h_2·n``, result in YD(α,γ).
    ``two``: M ∈ YD(α,β), N ∈ YD(γ,α), action ``h_2·m ⊗ h_1·n``, result in YD(γ,β).
    ``hat``: M ∈ YD(α,β), N ∈ YD(γ,δ), action ``γ(h_1)·m ⊗ γ⁻¹βγ(h_2)·n``,
    result in YD((α,β)*(γ,δ)).
    """
    if not same_parent(M.hopf, N.hopf):
        raise ParentError("modules over different Hopf algebras")
    H = M.hopf
    I = H.identity.idx
    (al, be), (ga, de) = (M.pair.alpha, M.pair.beta), (N.pair.alpha, N.pair.beta)
    if kind == "one":
        if be != ga:
            raise PairMismatch(f"type one needs M.beta == N.alpha; got {M.pair} and {N.pair}")
        act, co = _tensor_structures(M, N, I, I, "nm")
        pair = AutPair(al, de)
    elif kind == "two":
        if al != de:
            raise PairMismatch(f"type two needs M.alpha == N.beta; got {M.pair} and {N.pair}")
        _, co = _tensor_structures(M, N, I, I, "mn")
        act = _opposite_action(M, N)
        pair = AutPair(ga, be)
    elif kind == "hat":
        second = ga.inverse() @ be @ ga
        act, co = _tensor_structures(M, N, ga.idx, second.idx, "nm")
        pair = M.pair * N.pair
    else:
        raise ValueError(f"kind must be one of {TENSOR_KINDS}, not {kind!r}")
    return YDModule(H, act, co, pair)


def _opposite_action(M, N):
    """``h ↦ h_2·m ⊗ h_1·n``."""
    H, F = M.hopf, M.field
    act = F.contract("hqp,pmo,qnr->hmnor", H.De, M.act, N.act)
    return act.reshape(H.dim, M.dim * N.dim, M.dim * N.dim)


def _dual_from(M: YDModule, on_action, on_coaction, pair: AutPair) -> YDModule:
    F = M.field
    act = F.contract("hx,xmi->him", on_action, M.act)
    co = F.contract("mik,kj->imj", M.co, on_coaction)
    return YDModule(M.hopf, act, co, pair)


def dual(M: YDModule, flavor: str) -> YDModule:
    """One of the four duals of ``M`` on the dual basis.

    ``diamond_left``  ``(h·f)(m) = f(S(h)·m)``, leg ``S⁻¹(m_(1))``, in YD(β,α)
    ``diamond_right`` ``(h·f)(m) = f(S⁻¹(h)·m)``, leg ``S(m_(1))``, in YD(β,α)
    ``star_left``     ``(h·f)(m) = f(β⁻¹α⁻¹S(h)·m)``, leg ``S⁻¹(m_(1))``
    ``star_right``    ``(h·f)(m) = f(β⁻¹α⁻¹S⁻¹(h)·m)``, leg ``S(m_(1))``
    The star duals land in YD(α⁻¹, αβ⁻¹α⁻¹).
    """
    H, F = M.hopf, M.field
    a, b = M.pair.alpha, M.pair.beta
    if flavor in ("diamond_left", "diamond_right"):
        pair = AutPair(b, a)
        if flavor == "diamond_left":
            return _dual_from(M, H.S, H.Sinv, pair)
        return _dual_from(M, H.Sinv, H.S, pair)
    if flavor in ("star_left", "star_right"):
        ai = a.inverse()
        pair = AutPair(ai, a @ b.inverse() @ ai)
        twist = (a @ b).inverse().idx  # h ↦ β⁻¹α⁻¹(h)
        if flavor == "star_left":
            return _dual_from(M, F.matmul(H.S, twist), H.Sinv, pair)
        return _dual_from(M, F.matmul(H.Sinv, twist), H.S, pair)
    raise ValueError(f"flavor must be one of {DUAL_FLAVORS}, not {flavor!r}")


def braiding_matrix(M: YDModule, N: YDModule) -> Matrix:
    """``c(m ⊗ n) = n_(0) ⊗ β⁻¹(n_(1))·m``; codomain index ``n * dim M + m``."""
    F = M.field
    binv = M.pair.beta.inverse()
    c = F.contract("nok,kx,xmq->mnoq", N.co, binv.idx, M.act)
    dm, dn = M.dim, N.dim
    return Matrix(F, c.reshape(dm * dn, dn * dm).T, reduced=True)


def braiding(M: YDModule, N: YDModule) -> YDMorphism:
    """``c_{M,N}: M ⊗̂ N → ^M N ⊗̂ M`` with its inverse stored."""
    if not same_parent(M.hopf, N.hopf):
        raise ParentError("modules over different Hopf algebras")
    src = tensor(M, N, "hat")
    tgt = tensor(conjugate_twist(N, M.pair.alpha, M.pair.beta), M, "hat")
    C = braiding_matrix(M, N)
    return YDMorphism(src, tgt, C, invert(C))


def braiding_inverse_closed_form(M: YDModule, N: YDModule) -> Matrix:
    """``c⁻¹(n ⊗ m) = S(n_(1))·m ⊗ n_(0)``, valid when M ∈ YD(id, id)."""
    F, H = M.field, M.hopf
    c = F.contract("nok,kx,xmq->nmqo", N.co, H.S, M.act)
    dm, dn = M.dim, N.dim
    return Matrix(F, c.reshape(dn * dm, dm * dn).T, reduced=True)


def flip_matrix(field, d1: int, d2: int) -> Matrix:
    """The permutation sending index ``j * d1 + i`` to ``i * d2 + j``."""
    a = field.zeros((d1 * d2, d1 * d2))
    one = field.scalar(1)
    for i in range(d1):
        for j in range(d2):
            a[i * d2 + j, j * d1 + i] = one
    return Matrix(field, a, reduced=True)


def psi(M: YDModule, N: YDModule) -> YDMorphism:
    """``Ψ: N* ⊗̂ M* → (M ⊗̂ N)*``, ``Ψ(n* ⊗ m*)(m ⊗ n) = m*(m) n*(n)``."""
    if not same_parent(M.hopf, N.hopf):
        raise ParentError("modules over different Hopf algebras")
    src = tensor(dual(N, "star_left"), dual(M, "star_left"), "hat")
    tgt = dual(tensor(M, N, "hat"), "star_left")
    P = flip_matrix(M.field, M.dim, N.dim)
    return YDMorphism(src, tgt, P, P.T)
