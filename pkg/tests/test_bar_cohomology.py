import random

import pytest

from cohomolab import bar_cohomology as bc
from cohomolab.groups import (
    build_P,
    build_cyclic,
    build_product,
    subgroup_closure,
    symmetric_3,
)

RNG = random.Random(20260823)

C2 = build_cyclic(2)
C3 = build_cyclic(3)
S3 = symmetric_3()


def y_generator(p):
    """The standard degree-1 cocycle on C_p over F_p: A^r -> r."""
    G = build_cyclic(p)
    return bc.Cochain(G, 1, {(r,): r for r in range(1, p)}, p)


# ---------------------------------------------------------------------------
# coboundary
# ---------------------------------------------------------------------------


def test_coboundary_squares_to_zero():
    for G in (C2, C3, S3):
        for deg in (1, 2, 3):
            for _ in range(5):
                c = bc.random_cochain(G, deg, 5, RNG)
                assert bc.coboundary(bc.coboundary(c)).is_zero()


def test_coboundary_squares_to_zero_integrally():
    c = bc.Cochain(S3, 1, {(1,): 7, (4,): -3}, None)
    assert bc.coboundary(bc.coboundary(c)).is_zero()


def test_coboundary_degree_one_formula():
    # (delta c)(g, h) = c(h) - c(gh) + c(g), normalized
    c = bc.Cochain(C3, 1, {(1,): 1}, None)
    d = bc.coboundary(c)
    mul = C3.mul
    for g in range(1, 3):
        for h in range(1, 3):
            gh = mul[g][h]
            expected = c((h,)) - (c((gh,)) if gh else 0) + c((g,))
            assert d((g, h)) == expected


def test_coboundary_matrix_matches_coboundary():
    for G in (C3, S3):
        M = bc.coboundary_matrix(G, 1, 3)
        for _ in range(5):
            c = bc.random_cochain(G, 1, 3, RNG)
            via_matrix = M.mul_vector(bc.cochain_vector(c))
            assert via_matrix == bc.cochain_vector(bc.coboundary(c))


# ---------------------------------------------------------------------------
# dual route: literal bar boundary vs resolution engine
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("G,p,maxdeg", [
    (C2, 2, 4),
    (C3, 3, 4),
    (build_cyclic(9), 3, 3),
    (build_product([build_cyclic(3), build_cyclic(3)]), 3, 3),
    (S3, 3, 3),
    (S3, 2, 3),
])
def test_bar_boundary_agrees_with_resolution(G, p, maxdeg):
    literal = bc.bar_homology_dims_mod_p(G, p, maxdeg)
    engine = bc.cohomology_dims_mod_p(G, p, maxdeg)
    assert literal == engine


def test_known_dimension_tables():
    assert bc.cohomology_dims_mod_p(C3, 3, 4) == [1, 1, 1, 1, 1]
    V = build_product([build_cyclic(3), build_cyclic(3)])
    assert bc.cohomology_dims_mod_p(V, 3, 3) == [1, 2, 3, 4]
    assert bc.cohomology_dims_mod_p(S3, 3, 4) == [1, 0, 0, 1, 1]


# ---------------------------------------------------------------------------
# cup and cup-1
# ---------------------------------------------------------------------------


def test_cup_unit():
    one = bc.constant_one(S3, 5)
    c = bc.random_cochain(S3, 2, 5, RNG)
    assert bc.cup(one, c) == c
    assert bc.cup(c, one) == c


def test_cup_leibniz():
    for G in (C2, C3, S3):
        for _ in range(10):
            p = RNG.randint(1, 3)
            q = RNG.randint(1, 3)
            u = bc.random_cochain(G, p, 5, RNG)
            v = bc.random_cochain(G, q, 5, RNG)
            lhs = bc.coboundary(bc.cup(u, v))
            rhs = bc.cup(bc.coboundary(u), v) + \
                bc.cup(u, bc.coboundary(v)).scale(-1 if p % 2 else 1)
            assert lhs == rhs


def test_cup_graded_commutative_on_classes():
    # [u][v] = (-1)^{pq} [v][u] for cocycles
    u = bc.class_basis(C3, 1, 3)[0]
    v = bc.class_basis(C3, 2, 3)[0]
    assert bc.class_equal(bc.cup(u, v), bc.cup(v, u))  # pq even
    # odd times odd: [y][y] = -[y][y], so 2[y]^2 = 0 and y^2 is a coboundary
    assert bc.is_coboundary(bc.cup(u, u))


def test_cup1_degree_zero_factor_vanishes():
    u = bc.random_cochain(S3, 2, 3, RNG)
    one = bc.constant_one(S3, 3)
    assert bc.cup1(u, one).is_zero()
    assert bc.cup1(one, u).is_zero()


def test_cup1_coboundary_formula():
    # delta(u cup1 v) = -delta(u) cup1 v - (-1)^p u cup1 delta(v)
    #                   + u v - (-1)^{pq} v u
    for G in (C2, C3, S3):
        for _ in range(35):
            p = RNG.randint(1, 3)
            q = RNG.randint(1, 3)
            u = bc.random_cochain(G, p, 5, RNG)
            v = bc.random_cochain(G, q, 5, RNG)
            lhs = bc.coboundary(bc.cup1(u, v))
            rhs = (bc.cup1(bc.coboundary(u), v).scale(-1)
                   + bc.cup1(u, bc.coboundary(v)).scale(-1 if p % 2 == 0 else 1)
                   + bc.cup(u, v)
                   + bc.cup(v, u).scale(1 if (p * q) % 2 else -1))
            assert lhs == rhs


def test_cup1_hirsch_identity():
    # (u v) cup1 w = (-1)^p u (v cup1 w) + (-1)^{qr} (u cup1 w) v
    for G in (C2, C3, S3):
        for _ in range(35):
            p = RNG.randint(1, 3)
            q = RNG.randint(1, 3)
            r = RNG.randint(1, 2)
            u = bc.random_cochain(G, p, 5, RNG)
            v = bc.random_cochain(G, q, 5, RNG)
            w = bc.random_cochain(G, r, 5, RNG)
            lhs = bc.cup1(bc.cup(u, v), w)
            rhs = (bc.cup(u, bc.cup1(v, w)).scale(-1 if p % 2 else 1)
                   + bc.cup(bc.cup1(u, w), v).scale(-1 if (q * r) % 2 else 1))
            assert lhs == rhs


def test_cup1_identities_hold_integrally():
    u = bc.Cochain(S3, 1, {(2,): 5, (3,): -1}, None)
    v = bc.Cochain(S3, 2, {(1, 4): 2}, None)
    lhs = bc.coboundary(bc.cup1(u, v))
    rhs = (bc.cup1(bc.coboundary(u), v).scale(-1)
           + bc.cup1(u, bc.coboundary(v))
           + bc.cup(u, v)
           - bc.cup(v, u))
    assert lhs == rhs


# ---------------------------------------------------------------------------
# class machinery
# ---------------------------------------------------------------------------


def test_find_primitive_roundtrip():
    for _ in range(5):
        a = bc.random_cochain(C3, 1, 3, RNG)
        d = bc.coboundary(a)
        prim = bc.find_primitive(d)
        assert prim is not None
        assert bc.coboundary(prim) == d
        assert bc.is_coboundary(d)


def test_class_basis_sizes():
    assert [len(bc.class_basis(C3, n, 3)) for n in range(4)] == [1, 1, 1, 1]
    V = build_product([build_cyclic(3), build_cyclic(3)])
    assert [len(bc.class_basis(V, n, 3)) for n in range(3)] == [1, 2, 3]


def test_cohomology_class_rejects_non_cocycle():
    c = bc.Cochain(C3, 1, {(1,): 1, (2,): 1}, 3)
    assert not bc.is_cocycle(c)
    with pytest.raises(ValueError):
        bc.CohomologyClass(c)


def test_class_equal_shifted_representatives():
    z = bc.class_basis(C3, 2, 3)[0]
    shifted = z + bc.coboundary(bc.random_cochain(C3, 1, 3, RNG))
    assert bc.class_equal(z, shifted)
    assert not bc.class_equal(z, z.scale(2))


# ---------------------------------------------------------------------------
# Bockstein
# ---------------------------------------------------------------------------


def test_bockstein_values_on_c3():
    # the lift of y: A^r -> r has coboundary divisible by 3 with quotient the
    # mod-3 carry: (1/3)(r + s - (r+s mod 3)) = 1 iff r + s >= 3
    y = y_generator(3)
    b = bc.bockstein(y)
    for r in range(1, 3):
        for s in range(1, 3):
            assert b((r, s)) == (1 if r + s >= 3 else 0)


def test_bockstein_generates_degree_two():
    for p in (3, 5):
        y = y_generator(p)
        b = bc.bockstein(y)
        assert bc.is_cocycle(b)
        assert not bc.is_coboundary(b)


def test_bockstein_integral_class_has_order_p():
    y = y_generator(3)
    d3 = bc.bockstein(y, kind="delta_p")
    assert d3.p is None
    assert bc.is_cocycle(d3)
    assert not bc.is_coboundary(d3)
    assert bc.is_coboundary(d3.scale(3))


def test_bockstein_squares_to_zero_in_cohomology():
    y = y_generator(3)
    bb = bc.bockstein(bc.bockstein(y))
    assert bc.is_coboundary(bb)


def test_bockstein_rejects_bad_input():
    with pytest.raises(ValueError):
        bc.bockstein(bc.Cochain(C3, 1, {(1,): 1}, None))
    with pytest.raises(ValueError):
        bc.bockstein(bc.Cochain(C3, 1, {(1,): 1, (2,): 1}, 3))


# ---------------------------------------------------------------------------
# Massey products
# ---------------------------------------------------------------------------


def test_triple_massey_on_cyclic_groups():
    for p in (3, 5, 7):
        y = y_generator(p)
        res = bc.massey(y, y, y)
        assert res.indeterminacy == []
        if p == 3:
            assert res.equals_cochain(bc.bockstein(y))
            assert not res.is_zero_modulo_indeterminacy()
        else:
            assert res.is_zero_modulo_indeterminacy()


def test_massey_undefined_when_products_survive():
    V = build_product([build_cyclic(3), build_cyclic(3)])
    x, y = bc.class_basis(V, 1, 3)
    assert not bc.is_coboundary(bc.cup(x, y))
    with pytest.raises(ValueError):
        bc.massey(x, y, x)


def test_matrix_massey_reduces_to_triple():
    y = y_generator(3)
    res1 = bc.massey(y, y, y)
    res2 = bc.matrix_massey([y], [[y]], [y])
    assert res2.equals_cochain(res1.representative.representative)
    assert res2.equals_cochain(bc.bockstein(y))


def test_matrix_massey_shape_validation():
    y = y_generator(3)
    with pytest.raises(ValueError):
        bc.matrix_massey([y, y], [[y]], [y])


# ---------------------------------------------------------------------------
# restriction and transfer
# ---------------------------------------------------------------------------


def test_restriction_of_class_basis():
    V = build_product([build_cyclic(3), build_cyclic(3)])
    H = subgroup_closure(V, [3])  # first factor
    assert H.order == 3
    z = bc.class_basis(V, 2, 3)
    restricted = [bc.restrict(c, H) for c in z]
    assert all(bc.is_cocycle(r) for r in restricted)
    # H^2 of the subgroup is 1-dimensional, so the three restrictions
    # span at most that
    nonzero = [r for r in restricted if not bc.is_coboundary(r)]
    assert nonzero


def test_transfer_composed_with_restriction_is_index():
    V = build_product([build_cyclic(3), build_cyclic(3)])
    H = subgroup_closure(V, [3])
    for n in (1, 2):
        for c in bc.class_basis(V, n, 3):
            cr = bc.transfer(bc.restrict(c, H), H)
            assert bc.class_equal(cr, c.scale(H.index))


def test_transfer_from_proper_elementary_abelian_subgroup_vanishes():
    V = build_product([build_cyclic(3), build_cyclic(3)])
    H = subgroup_closure(V, [3])
    for n in (1, 2):
        for c in bc.class_basis(H.as_group(), n, 3):
            assert bc.is_coboundary(bc.transfer(c, H))


def test_transfer_commutes_with_coboundary():
    G = build_P(3, 3)
    H = subgroup_closure(G, [3, 1])  # abelian subgroup of order 9
    assert H.order == 9
    c = bc.random_cochain(H.as_group(), 1, 3, RNG)
    assert bc.transfer(bc.coboundary(c), H) == bc.coboundary(bc.transfer(c, H))


def test_transfer_degree_zero_multiplies_by_index():
    V = build_product([build_cyclic(3), build_cyclic(3)])
    H = subgroup_closure(V, [3])
    one = bc.constant_one(H.as_group(), 3)
    assert bc.transfer(one, H)(()) == H.index % 3


def test_transfer_rejects_foreign_cochain():
    V = build_product([build_cyclic(3), build_cyclic(3)])
    H = subgroup_closure(V, [3])
    with pytest.raises(ValueError):
        bc.transfer(bc.random_cochain(S3, 1, 3, RNG), H)


# ---------------------------------------------------------------------------
# integral cohomology and feasibility limits
# ---------------------------------------------------------------------------


def test_integral_cohomology_cyclic():
    assert bc.integral_cohomology(C2, 1) == (0, ())
    assert bc.integral_cohomology(C2, 2) == (0, (2,))
    assert bc.integral_cohomology(C3, 2) == (0, (3,))
    assert bc.integral_cohomology(C3, 3) == (0, ())


def test_integral_cohomology_extraspecial():
    G = build_P(3, 3)
    rank, torsion = bc.integral_cohomology(G, 2)
    assert rank == 0
    assert sorted(torsion) == [3, 3]


def test_resource_limits():
    big = build_P(4, 3)  # order 81
    with pytest.raises(bc.ResourceLimitError):
        bc.cohomology_dims_mod_p(big, 3, 4)
    with pytest.raises(bc.ResourceLimitError):
        bc.integral_cohomology(big, 4)
    with pytest.raises(bc.ResourceLimitError):
        bc.cohomology_dims_mod_p(C3, 3, 2, max_cells=1)
