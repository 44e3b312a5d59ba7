"""Named demo algebras and the standard modules over them."""

from __future__ import annotations

from .errors import BadParameter
from .hopf_core import (AutPair, Character, GroupLikeElement, HopfAlgebra, cyclic_group_algebra,
                        sweedler, taft)
from .yd_modules import YDModule, build_fVg, build_h_alpha_beta, trivial_module

DEMOS = {
    "sweedler": ("Sweedler's H4 over GF(p), default p=5", 5),
    "c2": ("group algebra kC2 over GF(p), default p=5", 5),
    "c3": ("group algebra kC3 over GF(p), default p=7", 7),
    "taft3": ("Taft algebra T3(q=2) over GF(7)", 7),
}


def demo_hopf(name: str, p: int | None = None) -> HopfAlgebra:
    if name not in DEMOS:
        raise BadParameter(f"unknown demo {name!r}; choose from {sorted(DEMOS)}")
    p = DEMOS[name][1] if p is None else p
    if name == "sweedler":
        return sweedler(p)
    if name == "c2":
        return cyclic_group_algebra(2, p)
    if name == "c3":
        return cyclic_group_algebra(3, p)
    if p != 7:
        raise BadParameter("taft3 is defined over GF(7) only")
    return taft(3, 2, 7)


def grouplike_g(H: HopfAlgebra) -> GroupLikeElement | None:
    """The generator ``g`` of a Taft algebra, else ``None``."""
    if H.presentation and H.presentation[0] == "taft":
        return GroupLikeElement(H, H.basis_vector(1))
    return None


def standard_modules(H: HopfAlgebra) -> dict[str, YDModule]:
    """The corpus of named modules over ``H``.

    Always: ``k_triv``, ``h_id``, ``h_s2`` and ``h_<a>_<b>`` for every pair of
    named automorphisms, plus ``h_prime_<b>``.  Over Taft algebras also
    ``eps_k_g`` and ``eps_v_g`` (dim 2) in YD(S², id).
    """
    I = H.identity
    mods: dict[str, YDModule] = {"k_triv": trivial_module(H)}
    mods["h_id"] = build_h_alpha_beta(H, I, I, name="h_id")
    mods["h_s2"] = build_h_alpha_beta(H, H.s2, I, name="h_s2")
    autos = H.known_automorphisms
    for an, a in autos.items():
        for bn, b in autos.items():
            nm = f"h_{an}_{bn}"
            mods[nm] = build_h_alpha_beta(H, a, b, name=nm)
        mods[f"h_prime_{an}"] = build_h_alpha_beta(H, None, a, variant="prime_beta",
                                                   name=f"h_prime_{an}")
    g = grouplike_g(H)
    if g is not None:
        pair = AutPair(H.s2, I)
        eps = Character.counit(H)
        mods["eps_k_g"] = build_fVg(H, eps, g, 1, pair, name="eps_k_g")
        mods["eps_v_g"] = build_fVg(H, eps, g, 2, pair, name="eps_v_g")
    return mods


def small_modules(H: HopfAlgebra) -> dict[str, YDModule]:
    """The corpus modules with carrier dimension at most 4, one per distinct name class."""
    mods = standard_modules(H)
    return {k: v for k, v in mods.items() if v.dim <= 4}
