import random
from fractions import Fraction

import pytest
from oracles import hom_lts_failures

from hlts import (DimensionCapExceeded, HomLts, InvalidInput, Matrix, Tensor, adjoint_action,
                  check_hom_lts, check_lts_morphism, semidirect_product)
from hlts.samples import aff2_lts, e4, random_nilpotent_lts


def failure_set(report):
    return {(v.tag, v.witness) for v in report.violations}


def perturb(g, rng):
    data = dict(g.bracket.data)
    key = tuple(rng.randrange(g.dim) for _ in range(4))
    data[key] = data.get(key, 0) + rng.choice([1, -1, 2])
    return g.with_bracket(Tensor(g.bracket.in_dims, g.dim, {k: v for k, v in data.items() if v}))


def test_e4_is_a_hom_lts():
    assert check_hom_lts(e4()).passed


def test_e4_without_skew_partner_fails_skew_only_there():
    g = HomLts.from_entries(4, {(0, 1, 0, 3): 1}, e4().alpha)
    r = check_hom_lts(g)
    assert set(r.tags()) >= {"skew"}
    assert ("skew", (0, 1, 0)) in failure_set(r)


@pytest.mark.parametrize("seed", range(12))
def test_checker_matches_naive_oracle(seed):
    rng = random.Random(seed)
    g = random_nilpotent_lts(rng, rng.randint(1, 3))
    assert failure_set(check_hom_lts(g)) == hom_lts_failures(g)
    bad = perturb(g, rng)
    assert failure_set(check_hom_lts(bad)) == hom_lts_failures(bad)


def test_random_nilpotent_systems_are_valid():
    rng = random.Random(1)
    for _ in range(30):
        assert check_hom_lts(random_nilpotent_lts(rng, rng.randint(1, 3))).passed


def test_twist_choice_decides_multiplicativity_on_the_affine_system():
    g = aff2_lts()
    ok = HomLts(g.bracket, Matrix.diag([1, 2]))
    bad = HomLts(g.bracket, Matrix.diag([2, 1]))
    assert check_hom_lts(ok).passed
    r = check_hom_lts(bad)
    assert "multiplicativity" in r.tags()
    assert failure_set(r) == hom_lts_failures(bad)


def test_violation_records_both_sides():
    bad = HomLts(aff2_lts().bracket, Matrix.diag([2, 1]))
    v = check_hom_lts(bad).first("multiplicativity")
    assert v is not None and v.lhs != v.rhs


def test_shape_validation():
    with pytest.raises(InvalidInput):
        HomLts(Tensor.zero((2, 2, 2), 2), Matrix.identity(3))
    with pytest.raises(InvalidInput):
        HomLts(Tensor.zero((2, 2, 2), 2), Matrix.zero(2, 3))


def test_dimension_cap(monkeypatch):
    monkeypatch.setenv("HLTS_DIM_CAP", "3")
    with pytest.raises(DimensionCapExceeded):
        check_hom_lts(e4())
    monkeypatch.setenv("HLTS_DIM_CAP", "4")
    assert check_hom_lts(e4()).passed


def test_morphisms():
    g = e4()
    assert check_lts_morphism(g, g, g.alpha).passed
    assert check_lts_morphism(g, g, Matrix.identity(4).scale(-1)).passed
    r = check_lts_morphism(g, g, Matrix.identity(4).scale(2))
    assert r.tags() == ["bracket intertwining"]
    with pytest.raises(InvalidInput):
        check_lts_morphism(g, aff2_lts(), g.alpha)


def test_semidirect_with_adjoint_action_contains_g():
    g = e4()
    s = semidirect_product(g, g, adjoint_action(g), Fraction(3, 5))
    assert s.dim == 8 and check_hom_lts(s).passed
    inc = Matrix.from_rows([[int(i == j) for j in range(4)] for i in range(8)])
    assert check_lts_morphism(g, s, inc).passed
