"""Omega recursion, class prediction, minimal constructions, catalog,
scaling isomorphisms and fingerprints."""

import pytest

from saalib.algebra import (
    build_algebra,
    nilpotency_class,
    rank,
    series_report,
    upper_central_series,
    validate_nilpotent_presentation,
)
from saalib.construct import (
    ScalingWitness,
    catalog,
    catalog_entry,
    construct_minimal,
    fingerprint,
    omega,
    omega_table,
    predict_min_class,
    try_scaling_isomorphism,
    verify_scaling_witness,
)
from saalib.linalg import PrimeField

F3 = PrimeField(3)
F7 = PrimeField(7)


def test_omega_values():
    assert omega_table(5) == [0, 2, 3, 5, 12, 68]


def test_omega_recursion_and_growth():
    for m in range(6):
        w = omega(m)
        assert omega(m + 1) == 2 + w * (w - 1) // 2
    for m in range(1, 6):
        assert omega(m + 1) > omega(m)
    with pytest.raises(ValueError):
        omega(-1)


def test_predict_table():
    assert [predict_min_class(n).predicted_class for n in range(4, 13)] == [
        5, 6, 7, 7, 7, 8, 8, 8, 8,
    ]


def test_predict_cases_and_boundaries():
    p4 = predict_min_class(4)
    assert (p4.m, p4.case) == (2, "ONE")  # 2n = omega(2) + omega(3) exactly
    p5 = predict_min_class(5)
    assert (p5.m, p5.case) == (2, "TWO")
    p9 = predict_min_class(9)
    assert (p9.m, p9.case, p9.predicted_class) == (3, "TWO", 8)
    with pytest.raises(ValueError):
        predict_min_class(3)


def test_predict_monotone_up_to_68():
    values = [predict_min_class(n).predicted_class for n in range(4, 69)]
    assert all(a <= b for a, b in zip(values, values[1:]))


@pytest.mark.parametrize("n,expected", [(4, 5), (5, 6), (8, 7)])
def test_construct_minimal_examples(n, expected):
    tset, pres = construct_minimal(n, F3)
    alg = build_algebra(pres)
    assert nilpotency_class(alg) == expected
    assert rank(alg) == 2
    assert upper_central_series(alg).upper[1].dim == 2
    assert validate_nilpotent_presentation(pres)
    assert tset.satisfies_properties(), tset.property_report()


def test_construct_minimal_reproduces_smallest_catalog_entry():
    # for n = 4 the pinned enumeration lands exactly on the known dim-8 family
    _, pres = construct_minimal(4, F3)
    expected = catalog_entry("P8-2-1").presentation(F3, r=1)
    assert pres.canonical_triples() == expected.canonical_triples()


def test_construct_minimal_rejects_small_n():
    with pytest.raises(ValueError):
        construct_minimal(3, F3)


def test_construct_triple_set_shapes():
    for n in (5, 6, 9):
        tset, pres = construct_minimal(n, F3)
        report = tset.property_report()
        assert report["generators"]
        assert report["shell_bijection"]
        assert report["no_common_pair"]
        assert report["coverage"]
        assert len(pres.triples) == len(tset.triples)


def test_catalog_contents():
    entries = catalog()
    assert [e.name for e in entries] == [
        "P8-2-1", "P10-2-1", "P10-2-2", "P12-2-1", "P14-2-1", "P16-2-1",
    ]
    expected = {
        "P8-2-1": (5, 2), "P10-2-1": (6, 2), "P10-2-2": (6, 2),
        "P12-2-1": (7, 2), "P14-2-1": (7, 2), "P16-2-1": (7, 2),
    }
    for e in entries:
        assert (e.expected_class, e.expected_rank) == expected[e.name]


def test_catalog_specific_triples():
    p12 = catalog_entry("P12-2-1").presentation(F3)
    assert any(str(t) == "(x4 y5, y6) = 1" for t in p12.triples)
    p16 = catalog_entry("P16-2-1").presentation(F3)
    assert len(p16.triples) == 9
    p1022 = catalog_entry("P10-2-2").presentation(F3, r=1)
    assert any(str(t) == "(y1 y2, y3) = 1" for t in p1022.triples)


def test_catalog_parameter_validation():
    with pytest.raises(ValueError):
        catalog_entry("P8-2-1").presentation(F3, r=0)
    with pytest.raises(ValueError):
        catalog_entry("P10-2-2").presentation(F3, r=3)  # 3 = 0 mod 3
    with pytest.raises(KeyError):
        catalog_entry("P18-2-1")


@pytest.mark.parametrize("p", [3, 5])
def test_catalog_classes_over_gf3_and_gf5(p):
    from saalib.algebra import is_isotropic

    field = PrimeField(p)
    for entry in catalog():
        alg = build_algebra(entry.presentation(field, r=1))
        assert nilpotency_class(alg) == entry.expected_class, entry.name
        assert rank(alg) == entry.expected_rank, entry.name
        assert is_isotropic(alg, upper_central_series(alg).upper[1]), entry.name


def test_catalog_over_gf2():
    # mod 2 the parameter r only ranges over {1}
    field = PrimeField(2)
    for entry in catalog():
        alg = build_algebra(entry.presentation(field, r=1))
        assert nilpotency_class(alg) == entry.expected_class, entry.name
        assert rank(alg) == entry.expected_rank, entry.name


def test_scaling_identity_witness():
    a = catalog_entry("P8-2-1").presentation(F7, r=1)
    w = try_scaling_isomorphism(a, a)
    assert w is not None and w.scales == (1, 1, 1, 1)


def test_scaling_witness_cube_criterion_gf7():
    # diagonal scalings realize exactly the cube ratios; cubes mod 7 are {1, 6}
    assert sorted({pow(u, 3, 7) for u in range(1, 7)}) == [1, 6]
    p1 = catalog_entry("P8-2-1").presentation(F7, r=1)
    p6 = catalog_entry("P8-2-1").presentation(F7, r=6)
    p3 = catalog_entry("P8-2-1").presentation(F7, r=3)
    w = try_scaling_isomorphism(p1, p6)
    assert w is not None
    assert verify_scaling_witness(p1, p6, w)
    assert try_scaling_isomorphism(p1, p3) is None


def test_scaling_witness_roundtrip_random_targets():
    import numpy as np

    from saalib.algebra import BasisVector, Presentation, StructureTensor
    from saalib.construct import _transform_values

    rng = np.random.default_rng(31)
    src = catalog_entry("P8-2-1").presentation(F7, r=1)
    for _ in range(10):
        scales = tuple(int(s) for s in rng.integers(1, 7, size=4))
        witness = ScalingWitness(F7, scales)
        values = _transform_values(StructureTensor.from_presentation(src), witness)
        target_items = [
            tuple(BasisVector.from_coordinate(c) for c in key) + (v,)
            for key, v in sorted(values.items())
        ]
        target = Presentation.build(4, F7, target_items)
        found = try_scaling_isomorphism(src, target)
        assert found is not None
        assert verify_scaling_witness(src, target, found)


def test_scaling_budget_and_mismatch():
    p1 = catalog_entry("P8-2-1").presentation(F7, r=1)
    p6 = catalog_entry("P8-2-1").presentation(F7, r=6)
    assert try_scaling_isomorphism(p1, p6, budget=1) is None
    other = catalog_entry("P10-2-1").presentation(F7)
    with pytest.raises(ValueError):
        try_scaling_isomorphism(p1, other)


def test_fingerprint_distinguishes_and_matches():
    from saalib.algebra import Presentation

    a1 = build_algebra(catalog_entry("P12-2-1").presentation(F3))
    a2 = build_algebra(catalog_entry("P12-2-1").presentation(F3))
    assert fingerprint(a1) == fingerprint(a2)
    ab = build_algebra(catalog_entry("P8-2-1").presentation(F3, r=1))
    abelian = build_algebra(Presentation.build(4, F3, []))
    assert fingerprint(ab) != fingerprint(abelian)


def test_fingerprint_separates_the_dim10_families():
    # same series dims, but dim(L^2 L^2) differs: 2 against 5
    f1 = fingerprint(build_algebra(catalog_entry("P10-2-1").presentation(F3)))
    f2 = fingerprint(build_algebra(catalog_entry("P10-2-2").presentation(F3, r=1)))
    assert f1[2] == 2
    assert f2[2] == 5
    assert f1 != f2


def test_center_isotropic_on_catalog():
    from saalib.algebra import is_isotropic

    for entry in catalog():
        alg = build_algebra(entry.presentation(F3, r=1))
        rep = series_report(alg)
        assert is_isotropic(alg, rep.upper[1])
