"""The ten acceptance criteria, each with exact equality and one summary line."""

import itertools
import json
import random
from fractions import Fraction
from importlib.resources import files
from pathlib import Path

from oracles import post_lts_failures, sympy_rank
from support import (c1_basis, candidate_terms, cocycle_basis, linear_deformations,
                     random_combination, second_order)

from hlts import (Action, HomLts, Matrix, Tensor, WeightedOOperator, ZeroCochain, adjacent_lts,
                  adjoint_action, check_action, check_hom_lie, check_hom_lts, check_lie_action,
                  check_lie_o_operator, check_lts_morphism, check_n_order, check_o_homomorphism,
                  check_o_operator, check_post_lie, check_post_lts, coboundary, cochain_space_basis,
                  descent_lts, diagram_check, extend, graph_is_subalgebra, identity_is_o_operator,
                  im_map, lts_operator_from_lie, n_from_o, nijenhuis_check, post_lie_from_o,
                  post_lts_from_o, semidirect)
from hlts.cli import run
from hlts.cohomology import Coboundary, fixed_space
from hlts.deformation import TruncatedDeformation, obstruction_report, solves_extension
from hlts.postlts import check_post_lts_morphism
from hlts.samples import (aff2_lts, e4, e4_operator, e4_post_lts, random_lie_o_operator,
                          random_o_instance, random_valid_o_operator, unextendable_deformation)

DATA = files("hlts") / "data"
E4_DOC = str(DATA / "e4.json")
POST_DOC = str(DATA / "e4_post.json")
GOLDEN = Path(__file__).parent / "golden" / "e4_post_lts_report.json"
KAPPAS = (0, 1, -2, Fraction(3, 5))


def cli_json(*argv):
    status, text = run([*argv, "--format", "json"])
    return status, json.loads(text)


def mixed_sample(seed, count=120):
    rng = random.Random(seed)
    ops = [random_o_instance(rng, 3, prefer_valid=0.5) for _ in range(count)]
    verdicts = [check_o_operator(op).passed for op in ops]
    assert any(verdicts) and not all(verdicts), "the sample must mix valid and invalid maps"
    return ops, verdicts


def valid_sample(seed, count):
    rng = random.Random(seed)
    return [random_valid_o_operator(rng, 3) for _ in range(count)]


def test_fixture_validity(criterion):
    criterion(1, "E4 fixture: lts, adjoint action and A = diag(0,1,1,0) for all kappas")
    for kind, name in (("lts", "E4"), ("action", "ad")):
        status, doc = cli_json("check", kind, E4_DOC, name)
        assert status == 0
        assert [r["violation_count"] for r in doc["reports"]] == [0]
    for kappa in KAPPAS:
        status, doc = cli_json("check", "o-op", E4_DOC, "A", "--kappa", str(kappa))
        assert status == 0 and doc["reports"][0]["passed"]
        assert doc["reports"][0]["violation_count"] == 0
        assert check_o_operator(e4_operator(kappa)).passed
    assert check_hom_lts(e4()).passed and check_action(adjoint_action(e4())).passed


def test_graph_equivalence(criterion):
    criterion(2, "graph subalgebra <=> O-operator on 120 mixed maps")
    ops, verdicts = mixed_sample(11)
    assert [graph_is_subalgebra(op) for op in ops] == verdicts


def test_nijenhuis_equivalence(criterion):
    criterion(3, "Nijenhuis N_A on the semidirect product <=> O-operator on 120 mixed maps")
    ops, verdicts = mixed_sample(11)
    assert [nijenhuis_check(semidirect(op), n_from_o(op)).passed for op in ops] == verdicts


def _delta_squared_vanishes(op, n):
    d = Coboundary(op)
    return all(d(d(f.tensor)).is_zero() for f in cochain_space_basis(op, n, cap=5))


def test_complex_soundness(criterion):
    criterion(4, "delta^2 = 0 on C^1 (E4) and C^1, C^3 (random valid); delta I(a,b) = 0")
    assert _delta_squared_vanishes(e4_operator(1), 1)
    ops = valid_sample(21, 30)
    assert len({op.name for op in ops}) >= 3
    for op in ops:
        assert _delta_squared_vanishes(op, 1)
        assert _delta_squared_vanishes(op, 3)
    regular = [op for op in ops + [e4_operator(1), e4_operator(Fraction(3, 5))]
               if op.source.regular and op.target.regular]
    assert regular
    for op in regular:
        fix = fixed_space(op.target.alpha)
        for a, b in itertools.product(fix, repeat=2):
            assert coboundary(op, im_map(op, ZeroCochain(a, b))).is_zero()


def test_cohomology_oracle(criterion, e4_dense_dims):
    criterion(5, "E4 cohomology dims at degrees 1 and 2 equal the dense oracle")
    for n in (1, 2):
        status, doc = cli_json("cohomology", E4_DOC, "A", "--degree", str(n))
        assert status == 0
        got = doc["results"]["cohomology"]
        assert (got["dimC"], got["dimZ"], got["dimB"]) == e4_dense_dims[n]
        assert got["dimH"] == got["dimZ"] - got["dimB"]


def aff2_family():
    """Every valid map with entries in {-1, 0, 1} on the affine triple system, for two
    actions and three weights."""
    g = aff2_lts()
    h = HomLts.abelian(2, g.alpha, name="ab")
    acts = [Action(g, h.alpha, adjoint_action(g).theta, h, "R"),
            Action(g, g.alpha, Tensor.zero((2, 2, 2), 2), g, "0")]
    ops = []
    for act in acts:
        for e in itertools.product((-1, 0, 1), repeat=4):
            for kappa in (0, 1, -1):
                op = WeightedOOperator(act, Matrix.from_rows([e[:2], e[2:]]), kappa, "A")
                if check_o_operator(op).passed:
                    ops.append(op)
    return ops


def _master_agrees(d, X, obs):
    return check_n_order(d.extended(X)).passed == solves_extension(d, X, obs)


def test_deformation_master(criterion):
    criterion(6, "A_t + t^(n+1) X deforms <=> delta X = -Obs^n; Obs is a cocycle")
    rng = random.Random(6)
    small = aff2_family() + [random_valid_o_operator(rng, 2) for _ in range(8)]
    counts = {True: 0, False: 0}
    for op in small:
        for n in (1, 2):
            ds = linear_deformations(op, limit=3)
            if n == 2:
                ds = [d for d in map(second_order, ds) if d is not None]
            for d in ds:
                ext = extend(d)
                assert obstruction_report(d, ext.obstruction).passed
                for X in candidate_terms(op, ext.term, grid_limit=9):
                    assert _master_agrees(d, X, ext.obstruction)
                    counts[solves_extension(d, X, ext.obstruction)] += 1
    assert counts[True] and counts[False]

    op = e4_operator(1)
    shape = ((4,), 4)
    Z, C = cocycle_basis(op), c1_basis(op)
    draws = 0
    for n in (1, 2):
        while draws < 60 * n:
            d = TruncatedDeformation(op, (random_combination(rng, Z, shape),), "e4")
            if n == 2:
                d = second_order(d)
                if d is None:
                    continue
            ext = extend(d)
            assert obstruction_report(d, ext.obstruction).passed
            X = random_combination(rng, C, shape)
            if ext.extendable and rng.random() < 0.5:
                X = ext.term + random_combination(rng, Z, shape)
            assert _master_agrees(d, X, ext.obstruction)
            draws += 1


def test_extension_soundness(criterion):
    criterion(7, "extend re-verifies on truncations; a dim-2 instance is unextendable by rank")
    rng = random.Random(7)
    ops = [e4_operator(1)] + aff2_family()[::6] + valid_sample(70, 10)
    seen = 0
    for op in ops:
        shape = ((op.source.dim,), op.target.dim)
        Z = cocycle_basis(op)
        for _ in range(3):
            d2 = second_order(TruncatedDeformation(op, (random_combination(rng, Z, shape),), "d"))
            if d2 is None:
                continue
            assert check_n_order(d2).passed
            d1 = d2.truncated(1)
            ext = extend(d1)
            assert ext.extendable
            assert check_n_order(d1.extended(ext.term)).passed
            seen += 1
    assert seen >= 20

    d = unextendable_deformation()
    assert d.op.source.dim <= 2 and check_n_order(d).passed
    ext = extend(d)
    assert ext.term is None and not ext.class_vanishes
    images = [coboundary(d.op, f).tensor.flat() for f in cochain_space_basis(d.op, 1)]
    obs = ext.obstruction.tensor.flat()
    assert sympy_rank(images + [obs]) == sympy_rank(images) + 1
    status, doc = cli_json("deform", "extend", str(DATA / "unextendable.json"), "D1")
    assert status == 0 and doc["results"]["term"] is None and not doc["results"]["extendable"]


def _homomorphism_instances(op):
    """Pairs (target operator, phi_h, phi_g) built from the twists and signs."""
    dh, dg = op.source.dim, op.target.dim
    Ih, Ig = Matrix.identity(dh), Matrix.identity(dg)
    neg = op.with_matrix(op.A.scale(-1))
    return [(op, op.source.alpha, op.target.alpha), (op, Ih.scale(-1), Ig.scale(-1)),
            (neg, Ih, Ig.scale(-1))]


def test_post_structure_functors(criterion):
    criterion(8, "post-Lts from O-operators: checker, adjacent = descent, id operator, morphisms")
    ops = valid_sample(8, 110) + [e4_operator(k) for k in KAPPAS]
    morphisms = 0
    for op in ops:
        p = post_lts_from_o(op)
        assert check_post_lts(p).passed
        adj, desc = adjacent_lts(p), descent_lts(op)
        assert adj.bracket == desc.bracket and adj.alpha == desc.alpha
        assert identity_is_o_operator(p, 1)
        for op2, phi_h, phi_g in _homomorphism_instances(op):
            if not check_o_homomorphism(op, op2, phi_h, phi_g).passed:
                continue
            p2 = post_lts_from_o(op2)
            assert check_post_lts_morphism(p, p2, phi_h).passed
            assert check_lts_morphism(adjacent_lts(p), adjacent_lts(p2), phi_h).passed
            morphisms += 1
    assert morphisms >= 100


def test_bridge_and_diagram(criterion):
    criterion(9, "Lie O-operators give triple-system ones; induced post-Lie passes; diagram commutes")
    rng = random.Random(9)
    count = 0
    for _ in range(110):
        A, act, kappa = random_lie_o_operator(rng, 3)
        assert check_lie_action(act).passed
        if not check_lie_o_operator(A, act, kappa).passed:
            continue
        assert check_o_operator(lts_operator_from_lie(A, act, kappa)).passed
        post, descent, ad = post_lie_from_o(A, act, kappa)
        assert check_post_lie(post).passed
        assert check_hom_lie(descent).passed
        assert check_lie_action(ad).passed
        assert diagram_check(post).commutes
        count += 1
    assert count >= 100


def test_post_lts_golden_report(criterion):
    criterion(10, "E4 post-Lts report is complete, deterministic and matches the golden file")
    status, text = run(["check", "post-lts", POST_DOC, "--format", "json"])
    again = run(["check", "post-lts", POST_DOC, "--format", "json"])
    assert (status, text) == again
    reports = json.loads(text)["reports"]
    golden = json.loads(GOLDEN.read_text())
    assert reports == golden["reports"]
    assert status == (0 if golden["reports"][0]["passed"] else 1)
    (report,) = reports
    assert report["violation_count"] == len(report["violations"])
    got = {(v["identity"], tuple(v["witness"])) for v in report["violations"]}
    assert got == post_lts_failures(e4_post_lts())
