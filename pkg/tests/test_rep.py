import random

import pytest

from hlts import (Action, HomLts, InvalidInput, Matrix, Representation, Tensor, adjoint_action,
                  check_action, check_hom_lts, check_representation, semidirect_product)
from hlts.rep import d_tensor, transport_theta
from hlts.samples import aff2_lts, e4, random_nilpotent_lts


def perturbed_adjoint(rng, g, edits):
    data = dict(adjoint_action(g).theta.data)
    for _ in range(edits):
        k = tuple(rng.randrange(g.dim) for _ in range(4))
        data[k] = data.get(k, 0) + rng.choice([1, -1])
    return Tensor((g.dim,) * 3, g.dim, {k: v for k, v in data.items() if v})


def test_representation_iff_abelian_semidirect_is_hom_lts():
    """On an abelian module with weight 0, theta is a representation exactly when the
    semidirect bracket is a Hom-Lts."""
    rng = random.Random(4)
    seen = set()
    for i in range(80):
        g = e4() if i % 10 == 0 else random_nilpotent_lts(rng, rng.randint(1, 3))
        V = HomLts.abelian(g.dim, g.alpha)
        act = Action(g, V.alpha, perturbed_adjoint(rng, g, rng.choice([0, 1, 2])), V, "t")
        verdict = check_representation(act).passed
        s = semidirect_product(g, V, act, 0, verify=False)
        assert check_hom_lts(s).passed == verdict
        seen.add(verdict)
    assert seen == {True, False}


def test_adjoint_action_of_e4():
    r = check_action(adjoint_action(e4()))
    assert r.passed
    assert "D derivation" in r.checked


def test_adjoint_of_affine_system_is_not_an_action():
    r = check_action(adjoint_action(aff2_lts()))
    assert not r.passed
    assert check_representation(adjoint_action(aff2_lts())).passed


def test_d_is_antisymmetrised_theta():
    g = e4()
    th = adjoint_action(g).theta
    D = d_tensor(th)
    for (x, y, u, l), c in D.data.items():
        assert c == th.data.get((y, x, u, l), 0) - th.data.get((x, y, u, l), 0)
    assert d_tensor(D) == D.scale(-2)


def test_trivial_representation():
    g = e4()
    rep = Representation(g, Matrix.identity(2), Tensor.zero((4, 4, 2), 2))
    assert check_representation(rep).passed


def test_twist_mismatch_is_reported():
    g = e4()
    rep = Representation(g, Matrix.identity(4), adjoint_action(g).theta)
    assert "rep twist" in check_representation(rep).tags()


def test_shape_errors():
    g = e4()
    with pytest.raises(InvalidInput):
        Representation(g, Matrix.identity(2), Tensor.zero((4, 4, 3), 3))
    with pytest.raises(InvalidInput):
        Action(g, Matrix.identity(4), adjoint_action(g).theta, HomLts.abelian(4, g.alpha), "x")


def test_transport_by_automorphism_keeps_action():
    g = e4()
    act = adjoint_action(g)
    th = transport_theta(act, g.alpha, g.alpha)
    assert th == act.theta
    assert check_action(Action(g, g.alpha, th, g, "t")).passed
