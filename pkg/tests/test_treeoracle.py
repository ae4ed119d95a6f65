import pytest

from ellipta import elliptic as el
from ellipta.exactpoly import MultiPoly
from ellipta.grammarcalc import G1, G2, iterate, parse_multipoly
from ellipta.treeoracle import (
    CapExceededError,
    MatchingMismatchError,
    cpk_stats,
    g1_distribution,
    g2_distribution,
    p_bruteforce,
    pair_parities,
    phi_apply,
    phi_orbit_check,
    phi_subset,
    s_from_trees,
    theta_table,
    tree_enumerate,
    tree_matching,
    tree_stats,
)


def perm_from_cycles(cycles, n):
    images = list(range(1, n + 1))
    for cycle in cycles:
        for k, v in enumerate(cycle):
            images[v - 1] = cycle[(k + 1) % len(cycle)]
    return tuple(images)


# ---------------------------------------------------------------------------
# permutations


def test_cpk_worked_example():
    pi = perm_from_cycles([(1, 3, 5), (2, 8, 4, 7, 6, 9)], 9)
    assert cpk_stats(pi) == (3, 1)


def test_cpk_identity_and_transposition():
    assert cpk_stats((1, 2, 3, 4)) == (0, 0)
    assert cpk_stats((2, 1)) == (0, 1)


def test_p_bruteforce_small():
    assert p_bruteforce(1) == MultiPoly(("p", "q"), {(0, 0): 1})
    assert p_bruteforce(3) == MultiPoly(
        ("p", "q"), {(0, 0): 1, (0, 1): 1, (1, 0): 4}
    )


def test_p_bruteforce_matches_triangle_route():
    tri = el.s_triangle_recurrence(5)
    assert p_bruteforce(5) == el.p_poly(5, tri)


def test_p_bruteforce_cap():
    with pytest.raises(CapExceededError):
        p_bruteforce(10)
    assert p_bruteforce(4, cap=4).substitute({"p": 1, "q": 1}) == (24,)


def test_p_bruteforce_jobs_deterministic():
    assert p_bruteforce(6, jobs=3) == p_bruteforce(6)


# ---------------------------------------------------------------------------
# trees


def test_tree_counts():
    assert len(list(tree_enumerate(1))) == 1
    assert len(list(tree_enumerate(3))) == 6
    assert len(list(tree_enumerate(4))) == 24


def test_tree_counts_to_cap():
    import math

    for n in range(10):
        assert sum(1 for _ in tree_enumerate(n)) == math.factorial(n)


def test_tree_cap():
    with pytest.raises(CapExceededError):
        list(tree_enumerate(10))


def test_tree_matching_examples():
    assert tree_matching((0, 1)) == ((0, 1),)  # path 0-1-2
    assert tree_matching((0, 0, 2)) == ((0, 1), (2, 3))
    assert tree_matching((0,)) == ((0, 1),)  # single edge


def test_tree_matching_standard_form():
    for n in range(1, 7):
        for parents in tree_enumerate(n):
            pairs = tree_matching(parents)
            assert pairs[0] == (0, 1)
            for (a, b) in pairs:
                assert a < b and parents[b - 1] == a
            assert all(x[0] < y[0] for x, y in zip(pairs, pairs[1:]))


def test_tree_text_roundtrip():
    from ellipta.treeoracle import tree_from_text, tree_to_text

    assert tree_to_text((0, 0, 2)) == "parents: 0,0,2"
    assert tree_from_text("parents: 0,0,2") == (0, 0, 2)
    assert tree_from_text("parents:") == ()
    with pytest.raises(ValueError):
        tree_from_text("parents: 1")  # vertex 1 must hang from 0
    with pytest.raises(ValueError):
        tree_from_text("0,0")


def test_tree_stats_examples():
    path = tree_stats((0, 1))
    assert (path.singleton, path.asc_o) == (1, 1)
    assert path.zerop == path.des_o == path.des_e == path.asc_e == 0
    star = tree_stats((0, 0))
    assert (star.singleton, star.des_o) == (1, 1)
    edge = tree_stats((0,))
    assert (edge.singleton, edge.zerop) == (0, 1)


def test_tree_stats_identities_exhaustive():
    for n in range(7):
        for parents in tree_enumerate(n):
            st = tree_stats(parents)
            assert st.evenp == st.zerop + st.des_e + st.asc_e
            assert 2 * (st.evenp + st.des_o + st.asc_o) + st.singleton == n + 1


def test_g2_distribution_examples():
    assert g2_distribution(1) == G2.seed("c")
    assert g2_distribution(2) == parse_multipoly("xa + xb", G2.variables)
    assert g2_distribution(3) == parse_multipoly(
        "ca + cb + 2x^2g + 2x^2h", G2.variables
    )


def test_distributions_match_iterates():
    for n in range(7):
        assert g2_distribution(n) == iterate(G2, G2.seed("x"), n)
        assert g1_distribution(n) == iterate(G1, G1.seed("x"), n)


def test_g2_distribution_jobs_deterministic():
    assert g2_distribution(5, jobs=2) == g2_distribution(5)


def test_theta_examples():
    assert theta_table(3) == {(3, 1, 0): 4, (3, 1, 1): 1}
    assert theta_table(1) == {(1, 1, 0): 1}


def test_theta_cross_checks_gamma_triangle():
    gtri = el.gamma_triangle_recurrence(5)
    theta5 = theta_table(5)
    for (n, i, j), g in ((k, v) for k, v in gtri.items() if k[0] == 5):
        assert theta5[(5, 2 * j + 1, 2 - i - 2 * j)] == g


def test_s_from_trees_matches_triangle():
    tri = el.s_triangle_recurrence(6)
    for n in range(1, 7):
        assert s_from_trees(n) == {k: v for k, v in tri.items() if k[0] == n}


def test_s_from_trees_jobs_deterministic():
    assert s_from_trees(5, jobs=4) == s_from_trees(5)


# ---------------------------------------------------------------------------
# involutions


def test_phi_apply_examples():
    star = (0, 0)
    m = tree_matching(star)
    path = phi_apply(star, m, 1)
    assert path == (0, 1)
    assert phi_apply(path, tree_matching(path), 1) == star
    edge = (0,)
    assert phi_apply(edge, tree_matching(edge), 1) == edge


def test_phi_apply_requires_true_matching():
    with pytest.raises(MatchingMismatchError):
        phi_apply((0, 0), ((0, 2),), 1)


def test_phi_involution_and_commutation_exhaustive():
    for n in range(6):
        for parents in tree_enumerate(n):
            m = tree_matching(parents)
            for k in range(1, len(m) + 1):
                once = phi_apply(parents, m, k)
                assert tree_matching(once) == m
                assert phi_apply(once, m, k) == parents
                for l in range(k + 1, len(m) + 1):
                    assert phi_apply(phi_apply(parents, m, k), m, l) == phi_apply(
                        phi_apply(parents, m, l), m, k
                    )


def test_phi_orbit_check_examples():
    star = (0, 0)
    empty = phi_orbit_check(star, set())
    assert empty.ok and empty.image == star
    flip = phi_orbit_check(star, {1})
    assert flip.ok and flip.image == (0, 1)
    after = tree_stats(flip.image)
    assert (after.asc_o, after.des_o) == (1, 0)


def test_phi_orbit_check_requires_no_odd_ascents():
    with pytest.raises(ValueError):
        phi_orbit_check((0, 1), {1})  # the path has an odd ascent pair


def test_orbits_partition_small():
    for n in range(6):
        groups = {}
        for parents in tree_enumerate(n):
            groups.setdefault(tree_matching(parents), []).append(parents)
        for matching, members in groups.items():
            seen = set()
            for rep in members:
                if tree_stats(rep).asc_o:
                    continue
                _, odds = pair_parities(rep)
                orbit = set()
                for mask in range(1 << len(odds)):
                    chosen = {odds[t] for t in range(len(odds)) if mask >> t & 1}
                    orbit.add(phi_subset(rep, matching, chosen))
                assert len(orbit) == 2 ** len(odds)
                assert not (orbit & seen)
                seen |= orbit
            assert seen == set(members)
