"""Group construction: ADE matrix closures and Cayley-table ingestion."""

import random

import pytest

from mckay.cyclo import rational, zeta
from mckay.groups import (
    ADE_SUITE,
    GroupError,
    GroupValidationError,
    alternating_group,
    build_binary_polyhedral,
    conjugacy_structure,
    cyclic_group,
    dihedral_group,
    group_from_cayley,
    group_from_generators,
    parse_ade_label,
    symmetric_group,
)

# non-associative loop of order 5 (Latin, identity at 0); found by exhaustive
# search, frozen: (1*1)*2 = 2 but 1*(1*2) = 4
NONASSOCIATIVE_LOOP = [
    [0, 1, 2, 3, 4],
    [1, 0, 3, 4, 2],
    [2, 3, 4, 0, 1],
    [3, 4, 1, 2, 0],
    [4, 2, 0, 1, 3],
]

EXPECTED_ORDERS = {"A": lambda n: n + 1, "D": lambda n: 4 * (n - 2), "E": {6: 24, 7: 48, 8: 120}}


def expected_order(label):
    kind, n = parse_ade_label(label)
    rule = EXPECTED_ORDERS[kind]
    return rule[n] if isinstance(rule, dict) else rule(n)


def test_a1_is_plus_minus_identity():
    g = build_binary_polyhedral("A1")
    assert g.order == 2
    m = g.matrix_rep[1]
    assert m[0][0] == -1 and m[1][1] == -1
    assert m[0][1].is_zero() and m[1][0].is_zero()


def test_d4_is_quaternion_of_order_8():
    g = build_binary_polyhedral("D4")
    assert g.order == 8
    conj = g.conjugacy
    assert sorted(conj.sizes) == [1, 1, 2, 2, 2]


@pytest.mark.parametrize("label", ["E6", "E7", "E8"])
def test_exceptional_orders(label):
    g = build_binary_polyhedral(label)
    assert g.order == expected_order(label)


def test_e8_has_nine_classes():
    g = build_binary_polyhedral("E8")
    assert len(g.conjugacy.classes) == 9


def test_bad_labels_rejected():
    with pytest.raises(GroupError):
        build_binary_polyhedral("D3")
    with pytest.raises(GroupError):
        build_binary_polyhedral("E9")
    with pytest.raises(GroupError):
        build_binary_polyhedral("F4")


@pytest.mark.parametrize("label", ADE_SUITE)
def test_matrix_group_invariants(label):
    g = build_binary_polyhedral(label)
    assert g.order == expected_order(label)
    ident = g.matrix_rep[0]
    assert ident[0][0] == 1 and ident[1][1] == 1
    for i in range(g.order):
        m = g.matrix_rep[i]
        det = m[0][0] * m[1][1] - m[0][1] * m[1][0]
        assert det == 1
        t = m[0][0] + m[1][1]
        assert t == t.conj()          # traces are real
        assert (t == 2) == (i == 0)   # trace 2 only at the identity
        assert g.order % g.element_order[i] == 0
    # the Cayley table is the matrix multiplication, spot-checked by sampled
    # pairs (exhaustive for small groups)
    rng = random.Random(7)
    pairs = (
        [(i, j) for i in range(g.order) for j in range(g.order)]
        if g.order <= 24
        else [(rng.randrange(g.order), rng.randrange(g.order)) for _ in range(600)]
    )
    key = {
        tuple(e.key() for row in m for e in row): i for i, m in enumerate(g.matrix_rep)
    }
    for i, j in pairs:
        a, b = g.matrix_rep[i], g.matrix_rep[j]
        prod = (
            (a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]),
            (a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]),
        )
        assert key[tuple(e.key() for row in prod for e in row)] == g.cayley[i][j]


@pytest.mark.parametrize("label", ADE_SUITE)
def test_conjugacy_structure_invariants(label):
    g = build_binary_polyhedral(label)
    conj = conjugacy_structure(g)
    assert conj.classes[0] == (0,)
    assert sum(conj.sizes) == g.order
    for c, cls in enumerate(conj.classes):
        ci = conj.class_inverse[c]
        assert conj.class_inverse[ci] == c
        assert conj.sizes[ci] == conj.sizes[c]
        assert all(conj.class_of[x] == c for x in cls)
    assert g.order % conj.exponent == 0
    orders = {g.element_order[x] for x in range(g.order)}
    assert all(conj.exponent % o == 0 for o in orders)


def test_cyclic_conjugacy_is_singletons():
    g = cyclic_group(6)
    assert g.conjugacy.sizes == (1,) * 6


def test_rotation_data():
    g = build_binary_polyhedral("A2")
    assert g.rotation_data[0] == (1, 0)
    assert g.rotation_data[1] == (3, 1)
    neg = build_binary_polyhedral("A1")
    assert neg.rotation_data[1] == (2, 1)


# -- ingestion ---------------------------------------------------------------------


def test_cayley_z2():
    g = group_from_cayley([[0, 1], [1, 0]], name="Z2")
    assert g.order == 2
    assert g.inverse == (0, 1)


def test_cayley_non_associative_rejected():
    with pytest.raises(GroupValidationError) as err:
        group_from_cayley(NONASSOCIATIVE_LOOP)
    witness = err.value.witness
    assert witness is not None
    a, b, c = witness
    t = NONASSOCIATIVE_LOOP
    assert t[t[a][b]][c] != t[a][t[b][c]]


def test_cayley_validation_errors():
    with pytest.raises(GroupValidationError):
        group_from_cayley([[0, 1], [1, 1]])  # repeated entry in a row
    with pytest.raises(GroupValidationError):
        # Latin square whose only left identity is not a right identity
        group_from_cayley([[0, 1, 2], [2, 0, 1], [1, 2, 0]])


def test_cayley_s3_from_independent_composition():
    # build S3's table in-test from permutation composition
    from itertools import permutations

    perms = sorted(permutations(range(3)))
    idx = {p: i for i, p in enumerate(perms)}
    table = [
        [idx[tuple(p[q[k]] for k in range(3))] for q in perms] for p in perms
    ]
    g = group_from_cayley(table, name="S3")
    assert g.order == 6
    assert sorted(g.conjugacy.sizes) == [1, 2, 3]


def test_cayley_identity_relocated():
    # Z3 with elements listed so that the identity sits at index 2
    # old elements (1, 2, 0) under addition mod 3
    elems = [1, 2, 0]
    table = [[elems.index((a + b) % 3) for b in elems] for a in elems]
    g = group_from_cayley(table)
    assert g.order == 3
    assert g.cayley[0] == (0, 1, 2)
    assert g.element_order[0] == 1


def test_generators_determinant_checked():
    bad = [[rational(2), rational(0)], [rational(0), rational(1)]]
    with pytest.raises(GroupValidationError):
        group_from_generators([bad])


def test_generators_infinite_order_capped():
    shear = [[rational(1), rational(1)], [rational(0), rational(1)]]
    with pytest.raises(GroupError):
        group_from_generators([shear], cap=64)


def test_generators_roundtrip_quaternion():
    a = [[zeta(4), rational(0)], [rational(0), zeta(4, 3)]]
    b = [[rational(0), rational(1)], [rational(-1), rational(0)]]
    g = group_from_generators([a, b], name="Q8")
    assert g.order == 8


# -- stock groups -------------------------------------------------------------------


def test_stock_groups():
    assert symmetric_group(3).order == 6
    assert symmetric_group(4).order == 24
    assert alternating_group(4).order == 12
    assert dihedral_group(4).order == 8
    assert cyclic_group(6).order == 6
    # dihedral-8 and quaternion-8 differ: element order multisets
    dih = dihedral_group(4)
    quat = build_binary_polyhedral("D4")
    assert sorted(dih.element_order) != sorted(quat.element_order)
