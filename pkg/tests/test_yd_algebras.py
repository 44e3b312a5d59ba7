import itertools

import numpy as np
import pytest

from ydbrauer.corpus import small_modules, standard_modules
from ydbrauer.endo_azumaya import end_algebra, phi
from ydbrauer.errors import AxiomError, DimensionError, ParentError
from ydbrauer.exact_linalg import FieldSpec, Matrix
from ydbrauer.hopf_core import cyclic_group_algebra, group_algebra, sweedler
from ydbrauer.yd_algebras import (AlgebraMorphism, YDAlgebra, diagonal_algebra, opposite, smash,
                                  trivial_algebra, twist_algebra, verify_yd_algebra)

from candidates import S3_TABLE
from oracle import lists, ref_smash_mu

H4 = sweedler(5)
MODS = standard_modules(H4)
AUTOS = H4.known_automorphisms


def small_algebras():
    k = trivial_algebra(H4)
    out = {"k": k, "kxk": diagonal_algebra(H4)}
    for name in ("eps_v_g", "h_id", "h_s2", "h_phi2_phi3"):
        out[f"end_{name}"] = end_algebra(MODS[name])
    out["twisted_end_h_id"] = twist_algebra(out["end_h_id"], AUTOS["phi2"])
    return out


ALGS = small_algebras()


@pytest.mark.parametrize("name", sorted(ALGS))
def test_axiom_suite_passes(name):
    rep = verify_yd_algebra(ALGS[name])
    assert rep.passed, rep.first_failure
    assert set(rep.results) >= {"associativity", "left_unit", "right_unit", "module_algebra",
                                "module_unit", "comodule_algebra", "comodule_unit", "yd_compatibility"}


@pytest.mark.parametrize("name", sorted(small_modules(H4)))
def test_end_algebra_of_every_small_module(name):
    assert verify_yd_algebra(end_algebra(MODS[name])).passed


def _mutated(A, pos):
    mu = np.array(A.mu)
    mu[pos] = (mu[pos] + 1) % A.field.p
    return YDAlgebra(A.module, mu, A.unit)


def test_single_mutation_breaks_module_algebra_axiom():
    E = ALGS["end_h_id"]
    rep = verify_yd_algebra(_mutated(E, (0, 0, 2)))
    assert not rep.results["module_algebra"]
    assert rep.witnesses["module_algebra"] == (1, 0, 0, 2)


def test_every_sampled_mutation_is_caught():
    E = ALGS["end_h_id"]
    rng = np.random.default_rng(11)
    for pos in {tuple(int(v) for v in rng.integers(16, size=3)) for _ in range(150)}:
        assert not verify_yd_algebra(_mutated(E, pos)).passed, pos


def test_construction_errors():
    M = MODS["h_id"]
    with pytest.raises(DimensionError):
        YDAlgebra(M, np.zeros((4, 4, 3), dtype=np.int64), [1, 0, 0, 0]).mu
    with pytest.raises(DimensionError):
        YDAlgebra(M, np.zeros((4, 4, 4), dtype=np.int64), [1, 0, 0])
    with pytest.raises(ValueError):
        YDAlgebra(MODS["h_s2"], np.zeros((4, 4, 4), dtype=np.int64), [1, 0, 0, 0])


# -- opposites ----------------------------------------------------------------


def test_opposites_of_k_and_commutative_trivial():
    k = ALGS["k"]
    assert opposite(k, "h_opposite") == k
    kk = ALGS["kxk"]
    assert opposite(kk, "h_opposite") == kk
    assert opposite(kk, "plain") == kk


@pytest.mark.parametrize("name", sorted(ALGS))
def test_h_opposite_is_an_algebra(name):
    assert verify_yd_algebra(opposite(ALGS[name], "h_opposite")).passed


def test_plain_opposite_of_end_is_end_op():
    E = ALGS["end_h_id"]
    P = opposite(E, "plain")
    assert P.kind == "end_op"
    assert np.array_equal(P.mu, np.ascontiguousarray(E.mu.transpose(1, 0, 2)))


def test_opposite_rejects_invalid_algebra():
    with pytest.raises(AxiomError):
        opposite(_mutated(ALGS["end_h_id"], (0, 0, 2)), "h_opposite")


# -- smash products -----------------------------------------------------------


@pytest.mark.parametrize("a,b", [("kxk", "end_eps_v_g"), ("end_eps_v_g", "kxk"),
                                 ("end_eps_v_g", "end_eps_v_g"), ("k", "end_h_s2"),
                                 ("end_h_id", "kxk")])
def test_smash_matches_loops(a, b):
    A, B = ALGS[a], ALGS[b]
    S = smash(A, B)
    assert lists(S.mu) == ref_smash_mu(A, B)
    assert S.dim == A.dim * B.dim


@pytest.mark.parametrize("a,b", [("kxk", "end_eps_v_g"), ("end_eps_v_g", "end_eps_v_g"),
                                 ("end_h_id", "kxk"), ("end_h_phi2_phi3", "k")])
def test_smash_is_an_algebra(a, b):
    assert verify_yd_algebra(smash(ALGS[a], ALGS[b])).passed


def test_smash_with_k_on_either_side():
    k = ALGS["k"]
    for name in ("kxk", "end_h_id", "end_eps_v_g"):
        B = ALGS[name]
        I = Matrix.identity(H4.field, B.dim)
        assert AlgebraMorphism(smash(k, B), B, I).flags.all()
        assert AlgebraMorphism(smash(B, k), B, I).flags.all()


def test_smash_of_end_algebras_over_c2():
    C2 = cyclic_group_algebra(2, 5)
    E = end_algebra(standard_modules(C2)["h_id"])
    S = smash(E, E)
    assert S.dim == 16
    assert verify_yd_algebra(S).passed


TRIPLE_NAMES = ["k", "kxk", "end_eps_v_g"]


@pytest.mark.parametrize("a,b,c", list(itertools.product(TRIPLE_NAMES, repeat=3)))
def test_smash_associativity(a, b, c):
    A, B, C = ALGS[a], ALGS[b], ALGS[c]
    left = smash(smash(A, B), C)
    right = smash(A, smash(B, C))
    assert left == right


def test_smash_parent_error():
    with pytest.raises(ParentError):
        smash(ALGS["k"], trivial_algebra(cyclic_group_algebra(2, 5)))


def test_generator_check_agrees_with_exhaustive_check():
    F = H4.field
    rng = np.random.default_rng(2)
    for a, b in [("h_id", "eps_v_g"), ("eps_v_g", "h_s2"), ("h_phi2_phi3", "k_triv")]:
        m = phi(MODS[a], MODS[b])
        assert m.algebra_ok and m.algebra_ok_exhaustive
        junk = AlgebraMorphism(m.source, m.target, Matrix(F, F.random(m.map.shape, rng)))
        assert not junk.algebra_ok and not junk.algebra_ok_exhaustive


def test_smash_product_rule_matches_full_multiplication():
    F = H4.field
    rng = np.random.default_rng(4)
    S = smash(ALGS["end_h_id"], ALGS["end_eps_v_g"])
    X, Y = F.random((3, S.dim), rng), F.random((5, S.dim), rng)
    fast = S.products(X, Y)
    full = F.contract("xi,yj,ijk->xyk", X, Y, S.mu)
    assert np.array_equal(fast, full)


# -- twists -------------------------------------------------------------------


def test_twist_basics():
    E = ALGS["end_h_id"]
    assert twist_algebra(E, H4.identity) == E
    for mu in AUTOS.values():
        T = twist_algebra(E, mu)
        assert verify_yd_algebra(T).passed
        assert twist_algebra(T, mu.inverse()) == E


def test_twist_composition_order():
    """Twisting by ν then by μ equals twisting once by ν∘μ; over S3 the other
    order differs, so the test distinguishes the two conventions."""
    S3 = group_algebra(S3_TABLE, FieldSpec.gf(5))
    E = end_algebra(standard_modules(S3)["h_id"])
    autos = list(S3.known_automorphisms.values())
    differs = False
    for mu in autos:
        for nu in autos:
            twice = twist_algebra(twist_algebra(E, nu), mu)
            assert twice == twist_algebra(E, nu @ mu)
            differs |= twice != twist_algebra(E, mu @ nu)
    assert differs
