"""The nine acceptance criteria, each under its stated time budget.

Every test prints one ``criterion N: PASS|FAIL`` line (visible even when pytest
captures output) and then asserts the verdict and the runtime.
"""

import itertools
import time
from pathlib import Path

import numpy as np

import ydbrauer
from ydbrauer.cli import run_command
from ydbrauer.corpus import small_modules, standard_modules
from ydbrauer.endo_azumaya import (brauer_trivial_forward, coco_check, end_algebra, end_op_algebra,
                                   iota, is_h_azumaya, p4_check, p5_iso, phi,
                                   quasi_elementary_witness, tau)
from ydbrauer.hopf_core import (AutPair, Character, GroupLikeElement, HopfAlgebra,
                                cyclic_group_algebra, sweedler, taft, verify_hopf)
from ydbrauer.monoidal_ops import dual, psi, tensor
from ydbrauer.yd_algebras import diagonal_algebra
from ydbrauer.yd_modules import build_h_alpha_beta, check_pair_in_involution, check_yd, shift

from candidates import random_candidates

H4 = sweedler(5)
AUTOS = H4.known_automorphisms
MODS = standard_modules(H4)
SMALL = small_modules(H4)
FIXTURES = Path(__file__).parent / "fixtures"
DATA = Path(ydbrauer.__file__).parent / "data"
ALL4 = (True, True, True, True)


def run_criterion(capsys, number, budget, body):
    """Time ``body`` (which returns a list of failure descriptions), print one line, assert."""
    t0 = time.perf_counter()
    failures = body()
    elapsed = time.perf_counter() - t0
    ok = not failures and (budget is None or elapsed < budget)
    limit = "" if budget is None else f" (budget {budget:g}s)"
    with capsys.disabled():
        print(f"\ncriterion {number}: {'PASS' if ok else 'FAIL'} in {elapsed:.2f}s{limit}"
              + (f"; first failure: {failures[0]}" if failures else ""))
    assert not failures, failures[:5]
    if budget is not None:
        assert elapsed < budget


def test_criterion_1_hopf_axioms(capsys):
    def body():
        bad = []
        for H in (cyclic_group_algebra(2, 5), cyclic_group_algebra(3, 7), H4, taft(3, 2, 7)):
            if not verify_hopf(H).passed:
                bad.append(H.name)
        arrays = {k: getattr(H4, k) for k in ("mu", "eta", "De", "eps", "S", "Sinv")}
        for attr in ("mu", "De"):
            for pos in itertools.product(*(range(n) for n in arrays[attr].shape)):
                mutated = {k: np.array(v) for k, v in arrays.items()}
                mutated[attr][pos] = (mutated[attr][pos] + 1) % 5
                K = HopfAlgebra(H4.field, mutated["mu"], mutated["eta"], mutated["De"],
                                mutated["eps"], mutated["S"], mutated["Sinv"])
                if verify_hopf(K).passed:
                    bad.append(f"{attr} mutation at {pos} passed")
        return bad

    run_criterion(capsys, 1, 5, body)


def test_criterion_2_yd_compatibility(capsys):
    def body():
        bad = [f"H_({a},{b})" for a, b in itertools.product(AUTOS, AUTOS)
               if not check_yd(build_h_alpha_beta(H4, AUTOS[a], AUTOS[b])).ok]
        cands = random_candidates(H4, 100, seed=1)
        verdicts = []
        for i, M in enumerate(cands):
            r = check_yd(M)
            verdicts.append(r.ok)
            if r.ok != r.ok_alt:
                bad.append(f"candidate {i}: forms disagree")
        if not all(verdicts[0::2]) or all(verdicts[1::2]):
            bad.append("candidate set lacks a valid/corrupted mix")
        return bad

    run_criterion(capsys, 2, 5, body)


def test_criterion_3_anti_yd_sanity(capsys):
    def body():
        bad = []
        # row 2 of the index form is S²(x) in the basis 1, g, x, gx
        if H4.s2.is_identity() or H4.s2.idx[2].tolist() != [0, 0, 4, 0]:
            bad.append("S^2(x) != -x")
        if not check_yd(build_h_alpha_beta(H4, H4.s2, H4.identity)).ok:
            bad.append("H_(S2,id) fails")
        eps = Character.counit(H4)
        g = GroupLikeElement(H4, H4.basis_vector(1))
        if not check_pair_in_involution(H4, eps, g, H4.s2, H4.identity):
            bad.append("(eps, g) is not a pair in involution")
        if check_pair_in_involution(H4, eps, GroupLikeElement.one(H4), H4.s2, H4.identity):
            bad.append("(eps, 1) passes")
        return bad

    run_criterion(capsys, 3, None, body)


def test_criterion_4_shift_tensor_dual_coherence(capsys):
    def body():
        bad = []
        checked = 0
        for H in (H4, cyclic_group_algebra(2, 5)):
            mods = small_modules(H)
            for (a, M), (b, N) in itertools.product(mods.items(), repeat=2):
                if M.pair.beta != N.pair.alpha:
                    continue
                checked += 1
                if tensor(M, N, "one") != shift(tensor(M, N, "hat"), N.pair.alpha, "F"):
                    bad.append(f"tensor {a},{b}")
            for a, M in mods.items():
                s = (M.pair.alpha @ M.pair.beta).inverse()
                if dual(M, "diamond_left") != shift(dual(M, "star_left"), s, "F"):
                    bad.append(f"left duals {a}")
                if dual(M, "diamond_right") != shift(dual(M, "star_right"), s, "F"):
                    bad.append(f"right duals {a}")
        if checked < 25:
            bad.append(f"only {checked} composable pairs")
        return bad

    run_criterion(capsys, 4, 10, body)


# ordered pairs for the binary isomorphisms; see the ledger for the scope choice
REPS = ["k_triv", "eps_k_g", "eps_v_g", "h_id", "h_s2", "h_phi2_phi3", "h_prime_phi2"]


def _binary_pairs():
    pairs = set(itertools.product(REPS, REPS))
    for name in SMALL:
        pairs |= {(name, "k_triv"), ("k_triv", name), ("eps_v_g", name)}
    return sorted(pairs)


def test_criterion_5_isomorphism_suite(capsys):
    def body():
        bad = []
        for name, M in SMALL.items():
            r = tau(M)
            if r.morphism.flags.astuple() != ALL4 or not r.inverse_ok:
                bad.append(f"tau {name}")
            if iota(M).flags.astuple() != ALL4:
                bad.append(f"iota {name}")
        for a, b in _binary_pairs():
            M, N = SMALL[a], SMALL[b]
            if phi(M, N).flags.astuple() != ALL4:
                bad.append(f"phi {a},{b}")
            P = psi(M, N)
            if P.flags.astuple() != (True, True, True):
                bad.append(f"psi {a},{b}")
            if p5_iso(M, N).flags.astuple() != ALL4:
                bad.append(f"p5 {a},{b}")
        return bad

    run_criterion(capsys, 5, 60, body)


def test_criterion_6_azumaya(capsys):
    def body():
        bad = [n for n in ("k_triv", "eps_k_g", "h_id", "h_s2", "h_phi2_phi3")
               if not is_h_azumaya(end_algebra(MODS[n]))]
        if is_h_azumaya(diagonal_algebra(H4)):
            bad.append("k x k")
        return bad

    run_criterion(capsys, 6, 120, body)


def test_criterion_7_structure_equalities(capsys):
    def body():
        bad = []
        for name, N in MODS.items():
            for (a, al), (b, be) in itertools.product(AUTOS.items(), repeat=2):
                if not p4_check(N, al, be):
                    bad.append(f"p4 {name},{a},{b}")
        for (a, al), (b, be) in itertools.product(AUTOS.items(), repeat=2):
            M = build_h_alpha_beta(H4, al, be)
            target = build_h_alpha_beta(H4, H4.identity, be @ al.inverse())
            if not coco_check(M, al):
                bad.append(f"coco {a},{b}")
            if end_algebra(M) != end_algebra(target) or end_op_algebra(M) != end_op_algebra(target):
                bad.append(f"cocu {a},{b}")
        for name, M in MODS.items():
            if not quasi_elementary_witness(M)[1]:
                bad.append(f"quasi {name}")
        return bad

    run_criterion(capsys, 7, 30, body)


def test_criterion_8_brauer_forward(capsys):
    def body():
        eps = Character.counit(H4)
        g = GroupLikeElement(H4, H4.basis_vector(1))
        pair = AutPair(H4.s2, H4.identity)
        return [n for n in ("k_triv", "h_id")
                if not brauer_trivial_forward(H4, eps, g, pair, MODS[n]).ok]

    run_criterion(capsys, 8, 60, body)


DETERMINISM = [
    ["verify", "hopf", "--demo", "sweedler"],
    ["verify", "yd", "--demo", "sweedler"],
    ["verify", "algebra", "--demo", "c2"],
    ["check", "azumaya", "--demo", "sweedler", "--module", "h_id"],
    ["check", "p4", "--demo", "c3"],
    ["check", "coco", "--demo", "sweedler"],
    ["check", "pair-involution", "--demo", "sweedler"],
    ["check", "brauer-trivial", "--demo", "c2"],
]


def test_criterion_9_cli_determinism(capsys):
    def body():
        bad = []
        for argv in DETERMINISM:
            argv = argv + ["--format", "json"]
            (_, c1, o1), (_, c2, o2) = run_command(argv), run_command(argv)
            if o1 != o2 or c1 != c2 or not o1:
                bad.append(f"{' '.join(argv)} differs between runs")
            if c1 != 0:
                bad.append(f"{' '.join(argv)} exit {c1}")
        expected = [(["verify", "hopf", "--file", str(DATA / "sweedler5.json")], 0),
                    (["verify", "yd", "--file", str(FIXTURES / "broken_yd.json")], 1),
                    (["verify", "hopf", "--demo", "nope"], 2)]
        for argv, code in expected:
            got = run_command(argv + ["--format", "json"])[1]
            if got != code:
                bad.append(f"{' '.join(argv)} exit {got}, expected {code}")
        return bad

    run_criterion(capsys, 9, None, body)
