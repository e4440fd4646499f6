import random
from fractions import Fraction

import numpy as np
import pytest

from crnkit import exactla as la
from crnkit.errors import EmptyPolyhedron
from crnkit.netio import parse_network
from crnkit.network import (
    Network,
    class_from_totals,
    class_vertices,
    compatibility_class,
    complex_matrix,
    conservation_basis,
    deficiency_by_kernel,
    face_of_class,
    full_rank_rows,
    incidence_matrix,
    stoichiometric_matrix,
    structure,
)

from netgen import random_networks

NETS = random_networks(50, seed=7)


def test_mckeithan_matrices(mck):
    assert stoichiometric_matrix(mck) == [
        [-1, 1, 0, 1],
        [-1, 1, 0, 1],
        [1, -1, -1, 0],
        [0, 0, 1, -1],
    ]
    assert complex_matrix(mck) == [[1, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]]
    assert incidence_matrix(mck) == [[-1, 1, 0, 1], [1, -1, -1, 0], [0, 0, 1, -1]]


def test_small_columns():
    assert stoichiometric_matrix(parse_network("A -> B ; k1")) == [[-1], [1]]
    assert stoichiometric_matrix(parse_network("A -> A + B ; k1")) == [[0], [1]]


def test_lotka_volterra_complexes(lv):
    assert lv.complexes == ((0, 0), (1, 0), (1, 1), (0, 2), (0, 1))


def test_structure_reports(mck, ext):
    rep = structure(mck)
    assert (rep.n, rep.m, rep.r, rep.linkage_classes, rep.rank, rep.deficiency) == (4, 3, 4, 1, 2, 0)
    assert rep.weakly_reversible
    assert la.rank(list(rep.conservation_basis) + [[1, 0, 1, 1], [0, 1, 1, 1]]) == 2
    rep = structure(ext)
    assert (rep.linkage_classes, rep.deficiency) == (2, 1)


def test_compatibility_classes(mck):
    assert compatibility_class(mck, [Fraction(1, 2), Fraction(3, 2), Fraction(1, 4), Fraction(1, 4)]).c == (1, 2)
    assert compatibility_class(mck, [0, 0, 0, 0]).c == (0, 0)
    assert compatibility_class(mck, [1, 1, 0, 0]).c == (1, 1)


def test_class_vertices_and_faces(mck):
    cc = class_from_totals(mck, [1, 2])
    poly = class_vertices(cc)
    assert set(poly.vertices) == {(0, 1, 1, 0), (0, 1, 0, 1), (1, 2, 0, 0)}
    assert poly.bounded
    assert class_vertices(class_from_totals(mck, [0, 0])).vertices == ((0, 0, 0, 0),)
    f = face_of_class(cc, {2, 3})
    assert f.nonempty and f.dimension == 0
    assert [v for v in poly.vertices if v[2] == v[3] == 0] == [(1, 2, 0, 0)]
    assert face_of_class(cc, {3}).dimension == 1
    f = face_of_class(cc, {0, 1, 2, 3})
    assert not f.nonempty and f.dimension == -1


def test_unbounded_class():
    net = parse_network("A -> 2A ; k1")
    cc = compatibility_class(net, [1])
    poly = class_vertices(cc)
    assert not poly.bounded


def test_empty_class(mck):
    with pytest.raises(EmptyPolyhedron):
        class_vertices(class_from_totals(mck, [-1, 0]))


def test_vertices_ignore_reaction_order(g1):
    rng = random.Random(3)
    rxs = [(g1.complexes[r.source], g1.complexes[r.target], r.label) for r in g1.reactions]
    base = class_vertices(class_from_totals(g1, [1, 1, 1])).vertices
    for _ in range(3):
        rng.shuffle(rxs)
        net = Network.build(g1.species, rxs)
        Z = conservation_basis(net)
        assert set(class_vertices(class_from_totals(net, [1, 1, 1], Z)).vertices) == set(base)


def test_full_rank_rows_lexicographic(mck):
    assert full_rank_rows(stoichiometric_matrix(mck)) == [0, 2]


@pytest.mark.parametrize("net", NETS, ids=lambda n: f"n{n.n}r{n.r}")
def test_structural_identities(net):
    Y, C, N = complex_matrix(net), incidence_matrix(net), stoichiometric_matrix(net)
    assert la.matmul(Y, C) == N
    rep = structure(net)
    assert rep.deficiency == deficiency_by_kernel(net) >= 0
    # float oracle: dim(ker Y meet im C) = rank C - rank YC
    Cf, YCf = np.array(C, dtype=float), np.array(N, dtype=float)
    oracle = np.linalg.matrix_rank(Cf) - (np.linalg.matrix_rank(YCf) if YCf.size else 0)
    assert rep.deficiency == oracle
    for v in conservation_basis(net):
        assert all(sum(v[i] * N[i][j] for i in range(net.n)) == 0 for j in range(net.r))
