import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from holant3.fixtures import EXAMPLE1_T, EXAMPLE2_T, beta_form, example1, example1_transformed_forms, example2, geneq, hard_real_pair
from holant3.generators import random_orthogonal, random_type_a, random_type_b
from holant3.sigcore import OH, SymSig, projective_equal, sig_from_terms
from holant3.tensorlab import (
    ArityTooSmall,
    Degenerate,
    NotLowRank,
    NotOrthogonal,
    apply_binary,
    apply_orthogonal,
    canonicalize,
    contract_unary,
    decompose,
    reduce_to_ternary,
    unary_image_space,
)

R2, R3, R6 = np.sqrt(2), np.sqrt(3), np.sqrt(6)
E = np.eye(3)


class TestContraction:
    def test_geneq_to_plane_identity(self):
        M = contract_unary(geneq([1, 1]), [1, 1, 0]).as_matrix()
        assert np.allclose(M, np.diag([1, 1, 0]))

    def test_conjugate_pair_against_b(self):
        M = contract_unary(beta_form(0), E[0]).as_matrix()
        assert np.allclose(M, np.diag([1, -1, 0]) / R2)

    def test_planar_against_r_vanishes(self):
        assert np.allclose(contract_unary(geneq([2, -3]), E[2]).values, 0)


class TestApplyBinary:
    def test_diagonal(self):
        out = apply_binary(np.diag([1, 2, 3]), geneq([1, 1]))
        assert np.allclose(out.values, geneq([1, 8]).values)

    def test_example1_f1(self):
        F1p = apply_binary(EXAMPLE1_T, example1()["F1"])
        assert projective_equal(F1p.values, sig_from_terms([(3 * R3, E[0]), (6 * R6, E[1])], 3).values)

    def test_zero_matrix(self):
        assert np.all(apply_binary(np.zeros((3, 3)), example1()["G1"]).values == 0)

    def test_composition(self, rng):
        F = SymSig(rng.normal(size=15), 4)
        A, B = rng.normal(size=(3, 3)), rng.normal(size=(3, 3))
        lhs = apply_binary(A, apply_binary(B, F)).values
        rhs = apply_binary(A @ B, F).values
        assert np.allclose(lhs, rhs)


class TestApplyOrthogonal:
    def test_identity(self):
        F = example1()["G1"]
        assert np.allclose(apply_orthogonal(np.eye(3), F).values, F.values)

    def test_example2_binaries(self):
        H2p = apply_orthogonal(EXAMPLE2_T, example2()["H2"]).as_matrix()
        assert projective_equal(H2p.ravel(), np.array([[1, 1, 0], [1, -1, 0], [0, 0, 1.0]]).ravel())
        B2p = apply_orthogonal(EXAMPLE2_T, example2()["B2"]).as_matrix()
        assert projective_equal(B2p.ravel(), np.array([[0, 0, 1], [0, 0, -1], [1, -1, 0.0]]).ravel())

    def test_example1_images(self):
        for k, form in example1_transformed_forms().items():
            assert projective_equal(apply_orthogonal(EXAMPLE1_T, example1()[k]).values, form.values)

    def test_rejects_non_orthogonal(self):
        with pytest.raises(NotOrthogonal):
            apply_orthogonal(np.diag([2.0, 1, 1]), geneq([1, 1]))


class TestDecompose:
    def test_geneq(self):
        d = decompose(geneq([1, 1]))
        assert d.kind == "RealOrthogonal" and d.rank == 2
        got = sorted((round(t.coeff.real, 9), tuple(np.round(np.abs(t.vector), 9))) for t in d.terms)
        assert got == [(1.0, (0.0, 1.0, 0.0)), (1.0, (1.0, 0.0, 0.0))]

    def test_g1_image_is_pair(self):
        d = decompose(apply_orthogonal(EXAMPLE1_T, example1()["G1"]))
        assert d.kind == "ConjugatePair" and d.rank == 2
        assert abs(abs(d.pair_u @ E[0]) - 1) < 1e-9
        assert abs(abs(d.pair_v @ E[2]) - 1) < 1e-9

    def test_non_orthogonal_pair(self):
        with pytest.raises(NotLowRank):
            decompose(hard_real_pair())

    def test_degenerate(self):
        d = decompose(sig_from_terms([(2, [1, 2, 3])], 3))
        assert d.kind == "DegenerateRank1"

    def test_arity_two_rejected(self):
        with pytest.raises(ArityTooSmall):
            decompose(SymSig(np.arange(6.0), 2))

    def test_seed_independent(self):
        F = example1()["H1"]
        a, b = decompose(F, seed=1), decompose(F, seed=99)
        assert np.allclose(a.rebuild().values, b.rebuild().values)


class TestCanonicalize:
    def test_identity_frame(self):
        c = canonicalize(geneq([1, 1, 1]))
        assert c.form == "A"
        assert any(np.allclose(c.T, P) for P in OH)
        assert np.allclose(sorted(np.real(c.coeffs)), [1, 1, 1])

    def test_f1_coefficients(self):
        c = canonicalize(example1()["F1"])
        assert c.form == "A" and c.rank == 2
        assert np.allclose(np.real(c.coeffs), [6 * R6, 3 * R3, 0])
        assert np.allclose(c.T @ c.T.T, np.eye(3), atol=1e-12)
        assert any(np.allclose(np.abs(P @ c.T), np.abs(EXAMPLE1_T)) for P in OH)

    def test_pair_plus_axis(self):
        c = canonicalize(example2()["F2"])
        assert c.form == "B"
        assert projective_equal(c.transformed().values, apply_binary(c.T, example2()["F2"]).values)

    def test_degenerate(self):
        with pytest.raises(Degenerate):
            canonicalize(sig_from_terms([(1, [1, 2, 3])], 3))

    @settings(max_examples=40, deadline=None)
    @given(seed=st.integers(0, 2**32 - 1), arity=st.integers(3, 6), pair=st.booleans())
    def test_random_frames(self, seed, arity, pair):
        rng = np.random.default_rng(seed)
        F = random_type_b(rng, arity)[0] if pair else random_type_a(rng, arity)[0]
        c = canonicalize(F)
        assert c.form == ("B" if pair else "A")
        assert np.max(np.abs(c.T @ c.T.T - np.eye(3))) <= 1e-9
        assert projective_equal(apply_binary(c.T, F).values, c.transformed().values)


class TestImageSpace:
    def test_geneq4(self):
        basis = unary_image_space(geneq([1, 1], 4))
        assert len(basis) == 2
        assert all(any(projective_equal(b.values, g.values) for b in basis) for g in (geneq([1, 0]), geneq([0, 1])))

    def test_rank_one(self):
        assert len(unary_image_space(sig_from_terms([(1, [1, 2, 3])], 4))) == 1

    def test_pair_plus_axis(self):
        assert len(unary_image_space(beta_form(1, 4))) == 3

    def test_arity_three_rejected(self):
        with pytest.raises(ArityTooSmall):
            unary_image_space(geneq([1, 1]))


class TestReduce:
    def test_geneq5(self):
        assert np.allclose(reduce_to_ternary(geneq([1, 1], 5)).values, geneq([1, 1]).values)

    def test_pair_plus_axis(self):
        t = reduce_to_ternary(beta_form(2, 4))
        assert t.arity == 3 and t["RRR"] == pytest.approx(2)
        assert canonicalize(t).form == "B"

    def test_ternary_unchanged(self):
        F = example1()["G1"]
        assert reduce_to_ternary(F) is F

    def test_keeps_directions(self, rng):
        Q = random_orthogonal(rng)
        F = sig_from_terms([(1.5, Q[0]), (-0.7, Q[2])], 6)
        t = reduce_to_ternary(F)
        d = decompose(t)
        dirs = sorted(np.argmax(np.abs(Q @ term.vector.real)) for term in d.terms)
        assert dirs == [0, 2]
