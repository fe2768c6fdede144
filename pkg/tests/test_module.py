import dataclasses

import pytest

from vbshadow import (InvariantPolynomial, NonUnit, RelationViolation, constant_module,
                      enumerate_shadow_labelings, module_from_blocks, parse_diagram, phi_module_multiset,
                      phi_module_poly, presentation_matrix, solution_count)
from vbshadow.kernel import brute_force_count
from vbshadow.module import relation_failures
from conftest import load_diagram

CALIBRATION = parse_diagram("X+ 4 6 1 5 / X+ 3 3 4 2 / V 1 6 2 5")


def _bump(spec, name, A, x, y):
    ten = [[list(row) for row in block] for block in getattr(spec, name)]
    ten[A][x][y] = (ten[A][x][y] + 1) % spec.q
    return dataclasses.replace(spec, **{name: tuple(tuple(tuple(r) for r in blk) for blk in ten)})


def test_z5_modules_valid(z5_modules, twisted_module):
    for spec in z5_modules.values():
        assert spec.validate() is spec
        assert not list(relation_failures(spec))
    assert twisted_module.validate() is twisted_module


def test_all_ones_module(two, checker):
    assert constant_module(two, checker, 5).validate()


@pytest.mark.parametrize("entry", [("s", 0, 0, 0), ("t", 0, 0, 0), ("r", 1, 0, 1)])
def test_perturbed_entry_is_rejected(hopf_module, entry):
    with pytest.raises(RelationViolation) as err:
        _bump(hopf_module, *entry).validate()
    assert err.value.witness


def test_non_unit_rejected(hopf_module):
    with pytest.raises(NonUnit):
        dataclasses.replace(hopf_module, r=tuple(tuple((0,) * 2 for _ in range(2)) for _ in range(2))).validate()


def test_twisted_needs_zero_s(twisted_module):
    s = tuple(tuple(tuple(1 for _ in row) for row in blk) for blk in twisted_module.r)
    with pytest.raises(RelationViolation):
        dataclasses.replace(twisted_module, s=s).validate()


def test_block_shape_checked(two, checker):
    from vbshadow import DimensionMismatch
    with pytest.raises(DimensionMismatch):
        module_from_blocks(two, checker, 5, [[1] * 8] * 3)


def _calibration_matrix(two, checker, hopf_module):
    for sl in enumerate_shadow_labelings(CALIBRATION, two, checker):
        if sl.x.printed() == {1: 1, 2: 2, 3: 1, 4: 1, 5: 2, 6: 1} and list(sl.regions) == [1, 0, 1, 0, 1]:
            return presentation_matrix(CALIBRATION, sl, hopf_module)
    raise AssertionError("calibration labeling not found")


def test_symbolic_matrix(two, checker, hopf_module):
    M = _calibration_matrix(two, checker, hopf_module)
    assert sorted(M.symbolic) == sorted([
        ("-1", "0", "0", "t[1,2,1]", "s[1,2,1]", "0"),
        ("0", "0", "0", "0", "r[1,2,1]", "-1"),
        ("0", "s[2,2,1]", "t[2,2,1]", "-1", "0", "0"),
        ("0", "r[2,2,1]", "-1", "0", "0", "0"),
        ("0", "0", "0", "0", "-1", "v[1,1,1]"),
        ("v[1,1,1]^-1", "-1", "0", "0", "0", "0"),
    ])


def test_numeric_matrix(two, checker, hopf_module):
    M = _calibration_matrix(two, checker, hopf_module)
    assert set(M.rows) == {(0, 4, 2, 4, 0, 0), (0, 2, 4, 0, 0, 0), (4, 0, 0, 1, 1, 0),
                           (0, 0, 0, 0, 1, 4), (0, 0, 0, 0, 4, 2), (3, 4, 0, 0, 0, 0)}
    assert solution_count(M) == brute_force_count(M.rows, 6, 5) == 1


def test_virtual_hopf_kernels(hopf_module):
    multiset = phi_module_multiset(load_diagram("virtual_hopf.pd"), hopf_module)
    assert sum(multiset.values()) == 8
    assert all(desc.count == 1 for desc in multiset)


def test_free_loop_all_ones(two, checker):
    spec = constant_module(two, checker, 5)
    loop = parse_diagram("O 1")
    # no relations: every labeling has the whole of Z_5 as its kernel
    assert str(phi_module_poly(loop, spec)) == "4u^5"
    curl = loop.add_kinks((1,))
    assert str(phi_module_poly(curl, spec)) == "4u^5"


def test_multiplicities_match_labeling_count(z5_modules):
    from vbshadow import phi_shadow_integral
    for name in ("L2a1.pd", "U2.pd", "virtual_hopf.pd"):
        d = load_diagram(name)
        for spec in z5_modules.values():
            assert phi_module_poly(d, spec).total() == phi_shadow_integral(d, spec.birack, spec.shadow)


def test_parallel_matches_serial(hopf_module):
    d = load_diagram("L2a1.pd")
    assert phi_module_poly(d, hopf_module, jobs=2) == phi_module_poly(d, hopf_module)


@pytest.mark.parametrize("text", ["8u", "u+4u^9", "8u^25", "3", "2+u^2", "0"])
def test_polynomial_round_trip(text):
    assert str(InvariantPolynomial.parse(text)) == text


def test_polynomial_parse_forms():
    p = InvariantPolynomial.parse("4u^{5} + 2u^5 + u")
    assert p.as_dict == {1: 1, 5: 6}
    assert p.total() == 7
