"""Simplicial complexes, order complexes, chain complexes, chain maps."""

from __future__ import annotations

import pytest

from configtop import (
    ChainComplex,
    OrderError,
    Partition,
    SimplicialComplex,
    StructuralError,
    build_partition_lattice,
    chain_complex,
    homology,
    induced_chain_map,
    order_complex,
)
from configtop.complexes import order_complex_of_poset


def triangle_boundary() -> SimplicialComplex:
    return SimplicialComplex.from_facets(("a", "b", "c"), [(0, 1), (0, 2), (1, 2)])


def test_from_facets_closure():
    sc = SimplicialComplex.from_facets(("a", "b", "c"), [(0, 1, 2)])
    assert sc.f_vector() == (3, 3, 1)
    assert sc.dim == 2
    assert sc.has_simplex((0, 1))
    assert sc.facets() == ((0, 1, 2),)


def test_validation_rejects_bad_complexes():
    with pytest.raises(ValueError):
        # Vertex b never appears as a 0-simplex.
        SimplicialComplex(("a", "b"), (((0,),),))
    with pytest.raises(ValueError):
        # Edge without one of its endpoint 0-simplices.
        SimplicialComplex(("a", "b"), (((0,),), ((0, 1),)))
    with pytest.raises(ValueError):
        SimplicialComplex(("a", "a"), (((0,), (1,)),))  # duplicate labels
    with pytest.raises(ValueError):
        SimplicialComplex(("a",), (((0,), (0,)),))  # repeated simplex


def test_empty_complex():
    e = SimplicialComplex.empty()
    assert e.dim == -1
    assert e.f_vector() == ()


def test_order_complex_of_chain_poset():
    # A 3-chain gives a solid triangle.
    sc = order_complex_of_poset([1, 2, 3], lambda a, b: a <= b, str)
    assert sc.f_vector() == (3, 3, 1)


def test_order_complex_proper_pi3():
    lat = build_partition_lattice(3)
    sc = order_complex(lat)
    # Three middle elements, no comparabilities among them.
    assert sc.f_vector() == (3,)


def test_order_complex_proper_pi4():
    lat = build_partition_lattice(4)
    sc = order_complex(lat)
    assert sc.f_vector() == (13, 18)


def test_order_complex_open_interval():
    lat = build_partition_lattice(4)
    x = Partition.singletons(4)
    y = Partition.from_string("123|4", 4)
    sc = order_complex(lat, (x, y))
    # Open interval holds the three edges inside the 123 block.
    assert sc.f_vector() == (3,)
    with pytest.raises(OrderError):
        order_complex(lat, (y, x))
    empty = order_complex(lat, (x, Partition.from_string("12|3|4", 4)))
    assert empty.f_vector() == ()


def test_chain_complex_triangle():
    cc = chain_complex(triangle_boundary())
    assert cc.dims[-1] == 1
    assert cc.dims[0] == 3
    assert cc.dims[1] == 3
    # Augmentation row of ones.
    assert cc.boundaries[0].to_dense() == [[1, 1, 1]]
    d1 = cc.boundaries[1].to_dense()
    for col in range(3):
        assert sorted(d1[r][col] for r in range(3)) == [-1, 0, 1]


def test_boundary_squared_zero_enforced():
    cc = chain_complex(triangle_boundary())
    for d in cc.degrees():
        if d - 1 in cc.boundaries and d in cc.boundaries:
            prod = cc.boundaries[d - 1].matmul(cc.boundaries[d])
            assert prod.is_zero()


def test_empty_convention():
    cc = chain_complex(SimplicialComplex.empty())
    h = homology(cc)
    assert h.rank(-1) == 1  # reduced homology of the empty complex
    cc2 = chain_complex(SimplicialComplex.empty(), empty_convention=False)
    assert -1 not in cc2.dims or cc2.dims[-1] == 0


def test_homology_circle_and_disk():
    circle = homology(chain_complex(triangle_boundary()))
    assert circle.rank(1) == 1
    assert circle.rank(0) == 0
    disk = homology(
        chain_complex(SimplicialComplex.from_facets(("a", "b", "c"), [(0, 1, 2)]))
    )
    assert disk.nonzero_degrees() == ()


def test_homology_mod_p_projective_plane():
    # Six-vertex triangulation of the real projective plane: the
    # antipodal quotient of the icosahedron boundary.
    facets = [
        (0, 1, 2), (0, 1, 3), (0, 2, 4), (0, 3, 5), (0, 4, 5),
        (1, 2, 5), (1, 3, 4), (1, 4, 5), (2, 3, 4), (2, 3, 5),
    ]
    names = tuple("123456")
    sc = SimplicialComplex.from_facets(names, facets)
    over_z = homology(chain_complex(sc))
    assert over_z.rank(1) == 0
    assert over_z.torsion_at(1) == (2,)
    over_f2 = homology(chain_complex(sc, coeff=("Fp", 2)))
    assert over_f2.rank(1) == 1
    assert over_f2.rank(2) == 1
    over_f3 = homology(chain_complex(sc, coeff=("Fp", 3)))
    assert over_f3.nonzero_degrees() == ()


def test_chain_complex_validation():
    from configtop.exact import SparseIntMatrix

    with pytest.raises(ValueError):
        # Boundary square is nonzero: d0 @ d1 = [1] != 0.
        ChainComplex(
            "Z",
            {-1: 1, 0: 1, 1: 1},
            {
                0: SparseIntMatrix.from_dense([[1]]),
                1: SparseIntMatrix.from_dense([[1]]),
            },
        )


def test_induced_chain_map_rotation():
    sc = triangle_boundary()
    rot = induced_chain_map(sc, {"a": "b", "b": "c", "c": "a"})
    rot.verify()
    assert not rot.is_identity()
    assert rot.compose(rot).compose(rot).is_identity()
    flip = induced_chain_map(sc, {"a": "b", "b": "a", "c": "c"})
    # The flipped edge picks up a sign.
    idx = sc.simplex_index((0, 1))
    assert flip.matrices[1].entry(idx, idx) == -1


def test_induced_chain_map_rejects_non_simplicial():
    sc = SimplicialComplex.from_facets(("a", "b", "c"), [(0, 1), (2,)])
    with pytest.raises(StructuralError):
        # Sends the edge ab onto the non-edge cb.
        induced_chain_map(sc, {"a": "c", "b": "b", "c": "a"})
    with pytest.raises(StructuralError):
        induced_chain_map(sc, {"a": "a", "b": "a", "c": "c"})


def test_doc_round_trips():
    sc = triangle_boundary()
    back = SimplicialComplex.from_doc(sc.to_doc())
    assert back.f_vector() == sc.f_vector()
    cc = chain_complex(sc)
    doc = cc.to_doc()
    assert doc["coeff"] == "Z"
