"""The scaled correspondence matrix and its exact verification."""

import dataclasses

import pytest

from mckay.catalog import EXTRA_GROUPS, ade_bundle, extra_table
from mckay.correspondence import (
    branch_sqrt,
    char_minor_determinant,
    phi_local,
    verify_correspondence,
    verify_local,
)
from mckay.cyclo import integer_sqrt_embed, rational, zeta
from mckay.groups import ADE_SUITE, build_binary_polyhedral
from mckay.linalg import rank

SMALL = ("A1", "A2", "A3", "D4", "D5", "E6")


# -- branch square roots -----------------------------------------------------------


def test_branch_minus_identity():
    table = ade_bundle("A1").table
    s = branch_sqrt(table, 1)
    assert s == zeta(4) - zeta(4, 3)  # 2i
    assert s * s == -4
    assert table.natural_character[1] - 2 == -4


def test_branch_order_three():
    table = ade_bundle("A2").table
    s = branch_sqrt(table, 1)
    assert s == zeta(6) - zeta(6, 5)
    assert s * s == -3


def test_branch_identity_rejected():
    table = ade_bundle("A2").table
    with pytest.raises(ValueError):
        branch_sqrt(table, 0)


@pytest.mark.parametrize("label", SMALL + ("E7", "E8"))
def test_branch_coherence(label):
    # s(g^-1) = s(g) and s(g) s(g^-1) = chi_nat(g) - 2, classwise
    bundle = ade_bundle(label)
    table = bundle.table
    conj = table.conj
    for c in range(1, table.size):
        s = branch_sqrt(table, c)
        s_inv = branch_sqrt(table, conj.class_inverse[c])
        assert s == s_inv
        assert s * s_inv == table.natural_character[c] - 2


# -- the matrix --------------------------------------------------------------------


def test_phi_z2_entry():
    cmap = ade_bundle("A1").cmap
    assert len(cmap.matrix) == 1
    entry = cmap.matrix[0][0]
    assert entry == -(zeta(4) - zeta(4, 3))  # 2i * (-1)
    unscaled = cmap.unscaled_matrix()[0][0]
    assert unscaled == -(zeta(8) + zeta(8, 3))


def test_phi_z3_block():
    cmap = ade_bundle("A2").cmap
    s = zeta(6) - zeta(6, 5)
    z = zeta(3)
    table = ade_bundle("A2").table
    expect = [
        [s * table.rows[r][c] for r in (1, 2)] for c in (1, 2)
    ]
    for i in range(2):
        for j in range(2):
            assert cmap.matrix[i][j] == expect[i][j]
    # the two off-diagonal sets of values are s*z and s*z^2 in some order
    flat = [cmap.matrix[i][j] for i in range(2) for j in range(2)]
    assert sum(1 for v in flat if v == s * z) == 2
    assert sum(1 for v in flat if v == s * z * z) == 2


@pytest.mark.parametrize("label", SMALL)
def test_phi_block_shape_and_conductor(label):
    bundle = ade_bundle(label)
    cmap = bundle.cmap
    m = bundle.table.size
    assert len(cmap.matrix) == m - 1
    assert all(len(row) == m - 1 for row in cmap.matrix)
    assert cmap.scale == bundle.group.order
    conductor = 2 * bundle.group.conjugacy.exponent
    for row in cmap.matrix:
        for v in row:
            assert conductor % v.conductor == 0


@pytest.mark.parametrize("label", ("A1", "A2", "A3", "D4", "E6"))
def test_scaling_coherence(label):
    cmap = ade_bundle(label).cmap
    root = integer_sqrt_embed(cmap.scale)
    unscaled = cmap.unscaled_matrix()
    for i, row in enumerate(cmap.matrix):
        for j, v in enumerate(row):
            assert unscaled[i][j] * root == v


# -- verification -------------------------------------------------------------------


@pytest.mark.parametrize("label", SMALL)
def test_verify_local_passes(label):
    report = verify_local(build_binary_polyhedral(label))
    assert report.passed
    names = [c.name for c in report.checks]
    assert names == [
        "multiplicativity",
        "additive-rank",
        "isometry",
        "equivariance",
        "float-sanity",
    ]


@pytest.mark.parametrize("label", ADE_SUITE)
def test_rank_is_class_count_minus_one(label):
    bundle = ade_bundle(label)
    matrix = [list(row) for row in bundle.cmap.matrix]
    assert rank(matrix) == len(bundle.table.conj.classes) - 1


def test_multiplicativity_identity_by_hand_z2():
    # 1x1 case: (2i * -1)^2 = -4 = |G| * (-2)
    cmap = ade_bundle("A1").cmap
    v = cmap.matrix[0][0]
    assert v * v == rational(-4)
    assert cmap.scale * rational(-2) == rational(-4)


# -- minors -------------------------------------------------------------------------


def test_minor_z2():
    det = char_minor_determinant(ade_bundle("A1").table)
    assert det == -1


def test_minor_z3():
    det = char_minor_determinant(ade_bundle("A2").table)
    z = zeta(3)
    assert det == z * z - z or det == z - z * z
    assert not det.is_zero()


@pytest.mark.parametrize("name", EXTRA_GROUPS)
def test_minor_extra_groups(name):
    det = char_minor_determinant(extra_table(name))
    assert not det.is_zero()


@pytest.mark.parametrize("label", ADE_SUITE)
def test_minor_ade(label):
    det = char_minor_determinant(ade_bundle(label).table)
    assert not det.is_zero()


# -- negative controls ----------------------------------------------------------------


def test_tampered_orbifold_constant_fails():
    bundle = ade_bundle("A1")
    tampered = bundle.invariant.replaced_product("f1", "f1", [("[pt]", 2)])
    cmap = dataclasses.replace(bundle.cmap, target=tampered)
    report = verify_correspondence(cmap)
    assert not report.passed
    failing = report.check("multiplicativity")
    assert not failing.passed
    assert failing.witness["left"] == "E1" and failing.witness["right"] == "E1"


def test_tampered_resolution_constant_fails():
    bundle = ade_bundle("A1")
    tampered = bundle.resolution.replaced_product("E1", "E1", [("[pt]", -1)])
    cmap = dataclasses.replace(bundle.cmap, source=tampered)
    report = verify_correspondence(cmap)
    assert not report.passed
    failing = report.check("multiplicativity")
    assert not failing.passed
    assert failing.witness["left"] == "E1" and failing.witness["right"] == "E1"


def test_untampered_control_passes():
    assert verify_correspondence(ade_bundle("A1").cmap).passed
