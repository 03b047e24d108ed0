from __future__ import annotations

from fractions import Fraction
from itertools import product

import pytest

from heightfilter import linalg
from heightfilter.core import Root, SystemLabel, build, build_named, classical_exponents, dual_partition, pi
from heightfilter.errors import ConstructionError, DomainError

SMALL = ["A1", "A2", "A5", "B2", "B4", "C3", "C5", "D4", "D6", "E6", "E7", "E8", "F4", "G2"]


@pytest.mark.parametrize(
    "name,count,h",
    [("A1", 1, 2), ("A4", 10, 5), ("B3", 9, 6), ("C4", 16, 8), ("D4", 12, 6), ("D5", 20, 8),
     ("E6", 36, 12), ("E7", 63, 18), ("E8", 120, 30), ("F4", 24, 12), ("G2", 6, 6)],
)
def test_counts_and_coxeter_number(name, count, h):
    rs = build_named(name)
    assert len(rs.positive_roots) == count
    assert rs.coxeter_h == h
    assert count == rs.rank * h // 2


def test_label_parsing_handles_d_offset():
    lab = SystemLabel.parse("D7")
    assert (lab.family, lab.rank, lab.true_rank, lab.name) == ("D", 6, 7, "D7")
    assert SystemLabel.d(7) == lab
    assert build(lab).rank == 7


@pytest.mark.parametrize("text", ["Z3", "A0", "B1", "D3", "E5", "E9", "F3", "G3", "", "A"])
def test_bad_labels_raise(text):
    with pytest.raises((ConstructionError, ValueError)):
        SystemLabel.parse(text)


def test_cartan_pairing_examples():
    a2 = build_named("A2")
    assert a2.cartan_pairing(a2.simple_roots[0], a2.simple_roots[1]) == -1
    g2 = build_named("G2")
    alpha, beta = g2.simple_roots
    assert beta.long and not alpha.long
    assert g2.cartan_pairing(beta, alpha) == -3
    assert g2.cartan_pairing(alpha, beta) == -1


def test_pi_examples():
    assert pi(build_named("A6"), 3) == 4
    assert pi(build_named("B5"), 3) == 4
    assert pi(build_named("E8"), 15) == 4
    assert pi(build_named("E8"), 30) == 0


def test_highest_root_heights():
    for name in SMALL:
        rs = build_named(name)
        assert rs.highest_root.height == rs.coxeter_h - 1
        assert rs.pi(1) == rs.rank and rs.pi(rs.coxeter_h - 1) == 1


@pytest.mark.parametrize("name", SMALL)
def test_exponents_match_classical_list(name):
    rs = build_named(name)
    assert list(rs.exponents) == classical_exponents(rs.label)
    for k in range(1, rs.coxeter_h + 2):
        assert rs.pi(k) == dual_partition(rs.exponents, k)


@pytest.mark.parametrize("name", ["A3", "B3", "C3", "D4", "G2", "F4", "E6"])
def test_root_strings(name):
    rs = build_named(name)
    roots = rs.all_roots()
    for b in roots:
        for g in roots:
            if b.coeffs == g.coeffs or b.coeffs == (-g).coeffs:
                continue
            p = 0
            while rs.is_root(tuple(x - (p + 1) * y for x, y in zip(b.coeffs, g.coeffs))):
                p += 1
            q = 0
            while rs.is_root(tuple(x + (q + 1) * y for x, y in zip(b.coeffs, g.coeffs))):
                q += 1
            assert p - q == rs.cartan_pairing(b, g)


@pytest.mark.parametrize("name", SMALL)
def test_negation_and_reducedness(name):
    rs = build_named(name)
    keys = {r.coeffs for r in rs.all_roots()}
    for c in keys:
        assert tuple(-x for x in c) in keys
        assert tuple(2 * x for x in c) not in keys


@pytest.mark.parametrize("name", ["B4", "C4", "D5", "A4"])
def test_eps_round_trip(name):
    rs = build_named(name)
    for r in rs.all_roots():
        assert rs.from_eps(rs.to_eps(r)).coeffs == r.coeffs


def test_b_and_d_realisations():
    b = build_named("B5")
    assert b.to_eps(b.simple_roots[0]) == {1: 1}
    d = build_named("D6")
    assert d.to_eps(d.simple_roots[0]) == {0: 1, 1: 1}
    assert d.to_eps(d.simple_roots[3]) == {3: 1, 2: -1}


def test_inner_products_and_lengths():
    f4 = build_named("F4")
    assert [r.long for r in f4.simple_roots] == [True, True, False, False]
    assert f4.norm2(f4.simple_roots[0]) == 2 and f4.norm2(f4.simple_roots[3]) == 1
    g2 = build_named("G2")
    assert g2.norm2(g2.simple_roots[0]) == Fraction(2, 3)
    assert g2.inner(g2.simple_roots[0].coeffs, g2.simple_roots[1].coeffs) == -1


def test_positive_root_order_is_height_then_lexicographic():
    for name in SMALL:
        keys = [(r.height, r.coeffs) for r in build_named(name).positive_roots]
        assert keys == sorted(keys)


def test_json_is_deterministic():
    a = build_named("B3").to_json()
    assert a == build_named("B3").to_json()
    assert a["coxeter_number"] == 6 and a["exponents"] == [1, 3, 5]
    assert a["positive_roots"][:3] == [[0, 0, 1], [0, 1, 0], [1, 0, 0]]


def test_root_helpers():
    r = Root((1, 2, 0))
    assert r.height == 3 and r.is_positive and (-r).coeffs == (-1, -2, 0)
    rs = build_named("A3")
    with pytest.raises((DomainError, KeyError, ValueError)):
        rs.root((2, 0, 0))


def test_exact_linear_algebra():
    m = [[2, -1, 0], [-1, 2, -1], [0, -1, 2]]
    inv = linalg.inverse(m)
    assert inv[0] == [Fraction(3, 4), Fraction(1, 2), Fraction(1, 4)]
    assert linalg.determinant(m) == 4
    assert linalg.solve(m, [1, 0, 0]) == [Fraction(3, 4), Fraction(1, 2), Fraction(1, 4)]
    assert linalg.rank([[1, 2], [2, 4]]) == 1
    with pytest.raises(ValueError):
        linalg.inverse([[1, 2], [2, 4]])


def test_weyl_determinant_matches_cartan():
    for name, det in [("A4", 5), ("B3", 2), ("C3", 2), ("D5", 4), ("E6", 3), ("E7", 2), ("E8", 1), ("F4", 1), ("G2", 1)]:
        assert linalg.determinant(build_named(name).cartan) == det


def test_small_coefficient_brute_force_agrees():
    """Every vector with entries in [-3, 3] of norm 2 in A3 is a root, and nothing else is."""
    rs = build_named("A3")
    found = set()
    for v in product(range(-3, 4), repeat=3):
        if any(v) and rs.inner(v, v) == 2:
            found.add(v)
    assert found == {r.coeffs for r in rs.all_roots()}


@pytest.mark.parametrize("name,long_len,short_len", [("A3", 2, 2), ("B3", 2, 1), ("C3", 2, 1), ("F4", 2, 1), ("G2", 2, Fraction(2, 3))])
def test_length_classes(name, long_len, short_len):
    rs = build_named(name)
    assert (rs.long_length, rs.short_length) == (long_len, short_len)
