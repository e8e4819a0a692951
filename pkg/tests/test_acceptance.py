"""Acceptance suite: one test per criterion, each printing a PASS line with
its measured numbers once its assertions hold.  Criteria 9 and 10 consume the
session-scoped monodromy reports (seed 1, budgets 40 and 300)."""

import time
from collections import Counter

from cubic27 import lattice, lines, monodromy, perm, symverify
from cubic27.htrack import TrackerConfig


def report(criterion, message):
    print(f"ACCEPTANCE {criterion:02d} PASS: {message}")


def test_criterion_01_weyl_reconstruction(weyl):
    t0 = time.time()
    assert weyl.order == 51840
    autos = lines.graph_automorphisms()
    assert autos.order == 51840
    assert autos.elements == weyl.elements
    report(1, f"generated order 51840 equals automorphism search ({time.time()-t0:.1f}s)")


def test_criterion_02_s4_structure(s4):
    claim = monodromy._claim_s4_action()
    assert claim.passed, claim.details
    assert claim.details["orbits"] == [
        list(range(1, 13)), list(range(13, 25)), [25, 26, 27],
    ]
    assert claim.details["stabilizer_orders"] == [2, 2, 8]
    assert claim.details["line1_stabilizer"] == ("transposition", -1)
    assert claim.details["line13_stabilizer"] == ("double_transposition", 1)
    report(2, "coordinate action verbatim; orbits 12+12+3; odd/even stabilizers")


def test_criterion_03_subgroup_ladder(weyl, s4):
    claim = monodromy._claim_subgroup_ladder()
    assert claim.passed, claim.details
    report(
        3,
        "centralizer 4 (Klein), normalizer 96 = S4 x K4, tritangent stabilizer 192, "
        "intersection 16 = reference Klein product",
    )


def test_criterion_04_exceptional_isomorphism(reduction, marking, weyl):
    t0 = time.time()
    projective, signed = lattice.build_po_group(reduction, marking, weyl)
    assert len(projective) == 51840  # injective, hence bijective onto the image
    assert signed == 103680
    report(4, f"mod-3 image order 51840, pre-projectivization 103680 ({time.time()-t0:.1f}s)")


def test_criterion_05_presentation_and_double_sixes():
    claim = monodromy._claim_presentation_and_double_sixes()
    assert claim.passed, claim.details
    assert claim.details["skew_six_count"] == 72
    assert claim.details["double_six_count"] == 36
    assert claim.details["w_a5_orbit_sizes"] == [6, 6, 15]
    report(5, "printed presentation reproduced; Coxeter relations; 72 sixes / 36 double sixes")


def test_criterion_06_non_reflection_results(weyl, s4, w_a5, other_s6, klein):
    found, _ = perm.is_subconjugate(weyl, s4, w_a5)
    assert not found
    two_six = [
        p for p in klein.elements
        if not p.is_identity() and p.cycle_type().get(2, 0) == 6
    ]
    assert len(two_six) == 1
    assert other_s6.order == 720
    assert sorted(len(o) for o in perm.orbits(other_s6)) == [12, 15]
    found_other, _ = perm.is_subconjugate(weyl, s4, other_s6)
    assert found_other
    report(6, "S4 not subconjugate to W(A5); unique 2^6 Klein element; other S6 found with orbits 12+15")


def test_criterion_07_preferred_double_six():
    claim = monodromy._claim_preferred_double_six()
    assert claim.passed, claim.details
    assert claim.details["w_a5_centralizer_order"] == 2
    assert claim.details["double_sixes_with_both_halves_single_orbit"] == 1
    report(
        7,
        f"single-orbit sixes: {claim.details['single_orbit_six_count']}; "
        f"double sixes (one-half reading): {claim.details['double_sixes_with_a_single_orbit_half']}, "
        f"(both-halves reading): {claim.details['double_sixes_with_both_halves_single_orbit']}; "
        "S4-centralizer in the order-1440 maximal subgroup equals the monodromy Klein group",
    )


def test_criterion_08_exact_identities():
    results = symverify.run_all_checks()
    by_name = {r.name: r for r in results}
    assert by_name["tricuspidal_equivalence"].passed
    assert by_name["tricuspidal_equivalence"].details["scalar_forward"] == "1"
    assert by_name["cayley_four_nodes"].passed
    assert by_name["tritangent_vanishing"].passed
    assert by_name["normalizer_matrix_family"].passed
    report(8, "three-cusp scalar 1 in exactly one direction; 4 nodes; tritangent vanishing; det = (l-1)^3(l+3)")


def test_criterion_09_symmetric_monodromy(symmetric_report):
    rep = symmetric_report
    cfg = TrackerConfig()
    assert cfg.newton_tol == 1e-10 and cfg.match_margin >= 10
    assert rep.budget >= 40
    assert rep.conclusive
    assert set(rep.group_elements) == monodromy.expected_symmetric_monodromy()
    accepted = [r for r in rep.loops if r.accepted]
    assert accepted
    assert all(r.fixes_tritangent for r in accepted)
    assert all(r.centralizes_s4 for r in accepted)
    assert all(r.in_order16 for r in accepted)
    assert all(r.revalidated for r in accepted)
    assert rep.invariant_violations == 0
    report(
        9,
        f"stabilized after {rep.stabilized_after} loops to the reference Klein group; "
        f"{len(accepted)} accepted loops all revalidated inside the order-16 bound",
    )


def test_criterion_10_full_monodromy(full_report):
    rep = full_report
    assert rep.budget <= 300
    assert rep.group["order"] == 51840
    accepted = [r for r in rep.loops if r.accepted]
    assert all(r.in_weyl_group for r in accepted)
    assert rep.invariant_violations == 0
    report(10, f"full family reached order 51840 after {len(rep.loops)} loops")


def test_criterion_11_component_structure(klein):
    comps = monodromy.component_structure(klein)
    sizes = Counter(len(orbit) for orbit, _, _ in comps)
    labels = Counter(label for _, _, label in comps)
    assert len(comps) == 12
    assert sizes == Counter({2: 6, 4: 3, 1: 3})
    assert labels == Counter({"[K4/C2]": 6, "[K4/e]": 3, "[K4/K4]": 3})
    assert sum(len(orbit) for orbit, _, _ in comps) == 27
    for orbit, stab, _ in comps:
        assert len(orbit) * stab == klein.order
    report(11, "12 components: 6 [K4/C2] + 3 [K4/e] + 3 [K4/K4]")


def test_criterion_12_numeric_hygiene():
    claim = monodromy._claim_numeric_hygiene(seed=1)
    assert claim.passed, claim.details
    assert claim.details["worst_jacobian_fd_error"] < 1e-6
    assert claim.details["reversal_pairs_tested"] >= 20
    assert claim.details["deterministic_reports"]
    report(
        12,
        f"worst FD error {claim.details['worst_jacobian_fd_error']:.2e}; "
        f"{claim.details['reversal_pairs_tested']} reversal pairs inverse; deterministic reports",
    )
