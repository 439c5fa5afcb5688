import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import theta, two_cycle
from holant3.boolhol import eval_bool_brute
from holant3.evaluator import eval_brute
from holant3.fixtures import beta_form, example1, geneq
from holant3.gadgetlab import (
    AsymmetricResult,
    FormMismatch,
    Singular,
    ZeroVectorTerm,
    binary_on_edges,
    gadget_signature,
    grid_to_boolean,
    local_holographic,
    realize_coeff_geneq,
    realize_plane_equality,
    realize_z_arity4,
    z4_expected,
)
from holant3.generators import CLASS_SETS, random_closed_grid, random_orthogonal
from holant3.sigcore import OH, BoolSig, MatSig, SignatureGrid, SymSig, TooLarge, sig_from_terms
from holant3.tensorlab import apply_binary, canonicalize, contract_unary

R2 = np.sqrt(2)


class TestContraction:
    def test_single_vertex(self):
        F = example1()["G1"]
        g = SignatureGrid({"F": F}, [("v", "F")], [], [("v", 0), ("v", 1), ("v", 2)])
        assert np.allclose(gadget_signature(g).values, F.values)

    def test_unary_into_binary(self):
        M = np.array([[1.0, 2, 0], [0, 1, 3], [4, 0, 1]])
        u = np.array([1.0, -1, 2])
        g = SignatureGrid(
            {"M": MatSig(M), "u": SymSig(u, 1)}, [("m", "M"), ("x", "u")], [(("m", 1), ("x", 0))], [("m", 0)]
        )
        assert np.allclose(gadget_signature(g).values, M @ u)

    @settings(max_examples=30, deadline=None)
    @given(seed=st.integers(0, 2**32 - 1))
    def test_binary_on_every_port(self, seed):
        rng = np.random.default_rng(seed)
        M = rng.normal(size=(3, 3))
        F = SymSig(rng.normal(size=10), 3)
        assert np.allclose(gadget_signature(binary_on_edges(F, M)).values, apply_binary(M, F).values)

    def test_asymmetric_warns(self):
        M = np.array([[1.0, 2, 0], [0, 1, 0], [0, 0, 1]])
        g = SignatureGrid({"M": MatSig(M)}, [("m", "M")], [], [("m", 0), ("m", 1)])
        with pytest.warns(AsymmetricResult):
            out = gadget_signature(g)
        assert np.allclose(out, M)

    def test_too_many_externals(self):
        F = geneq([1, 1], 7)
        g = SignatureGrid({"F": F}, [("v", "F")], [], [("v", p) for p in range(7)])
        with pytest.raises(TooLarge):
            gadget_signature(g)


class TestCoefficients:
    def test_three_directions(self):
        out = realize_coeff_geneq(geneq([1, 1, 1]), 2, 0, 5)
        assert np.allclose(out.values, geneq([2, 0, 5]).values)

    def test_identity_coefficients(self):
        F = geneq([1, 1])
        assert np.allclose(realize_coeff_geneq(F, 1, 1).values, F.values)

    def test_example_frame(self):
        F1 = example1()["F1"]
        T = np.real(canonicalize(F1).T)
        out = realize_coeff_geneq(F1, 1, 1, 0)
        assert out.projectively_equal(sig_from_terms([(1, T[0]), (1, T[1])], 3))

    def test_missing_direction(self):
        with pytest.raises(ZeroVectorTerm):
            realize_coeff_geneq(geneq([1, 1]), 1, 1, 1)

    def test_wrong_form(self):
        with pytest.raises(FormMismatch):
            realize_coeff_geneq(beta_form(1), 1, 1)


class TestArityFour:
    @pytest.mark.parametrize("lam, axis", [(0, 0), (1, 1), (2, 8), (-0.5, -0.125)])
    def test_axis_coefficient(self, lam, axis):
        Z = realize_z_arity4(beta_form(lam))
        assert Z[(2, 2, 2, 2)] == pytest.approx(axis, abs=1e-9)
        assert np.allclose(Z.values, z4_expected(lam).values, atol=1e-12)

    def test_scale_is_removed(self):
        F = SymSig(beta_form(2).values * (-3.5), 3)
        assert np.allclose(realize_z_arity4(F).values, z4_expected(2).values)

    def test_contracting_back(self):
        Z = realize_z_arity4(beta_form(1))
        back = contract_unary(Z, [R2, 0, 1])
        assert back.projectively_equal(beta_form(1))
        # (1, 0, 1) rescales the pair relative to the axis, so it does not give F back
        assert not contract_unary(Z, [1, 0, 1]).projectively_equal(beta_form(1))
        expected = sig_from_terms(
            [(1 / R2, np.array([1, 1j, 0]) / R2), (1 / R2, np.array([1, -1j, 0]) / R2), (1, [0, 0, 1])], 3
        )
        assert np.allclose(contract_unary(Z, [1, 0, 1]).values, expected.values)

    def test_rejects_other_forms(self):
        with pytest.raises(FormMismatch):
            realize_z_arity4(geneq([1, 1]))
        with pytest.raises(FormMismatch):
            realize_z_arity4(apply_binary(random_orthogonal(np.random.default_rng(1)), beta_form(1)))


class TestPlaneEquality:
    def test_geneq(self):
        E = realize_plane_equality(geneq([1, 1]))
        assert np.max(np.abs(E - np.diag([1, 1, 0]))) <= 1e-9

    def test_rotated_in_plane(self):
        c, s = 0.6, 0.8
        R = np.array([[c, -s, 0], [s, c, 0], [0, 0, 1]])
        F = sig_from_terms([(2.0, R[:, 0]), (-0.5, R[:, 1])], 3)
        assert np.allclose(realize_plane_equality(F), np.diag([1, 1, 0]))

    def test_conjugate_pair(self):
        assert np.allclose(realize_plane_equality(beta_form(0)), np.diag([1, 1, 0]))

    def test_wrong_plane(self):
        with pytest.raises(FormMismatch):
            realize_plane_equality(geneq([1, 0, 1]))


class TestRestriction:
    def test_theta_geneq(self):
        g = theta(geneq([1, 1]))
        b = grid_to_boolean(g, "BG")
        assert np.allclose(b.signatures["F"].values, [1, 0, 0, 1])
        assert eval_bool_brute(b) == pytest.approx(2) == eval_brute(g).value

    def test_projector_cycle(self):
        b = grid_to_boolean(two_cycle(SymSig.from_tensor(np.diag([1.0, 1, 0]))), "BG")
        assert np.allclose(b.signatures["M"].values, [1, 0, 1])
        assert eval_bool_brute(b) == pytest.approx(2)

    def test_theta_f1(self):
        b = grid_to_boolean(theta(example1()["F1"]), "BG")
        assert np.allclose(b.signatures["F"].values, [2, 2, 2, 2])

    def test_commutes_with_evaluation(self, rng):
        sigs = {"F": geneq([1.5, -2]), "G": beta_form(0), "M": SymSig.from_tensor(np.array([[1.0, 2, 0], [2, -1, 0], [0, 0, 0]]))}
        for _ in range(10):
            g = random_closed_grid(rng, sigs, unaries=False)
            assert eval_bool_brute(grid_to_boolean(g, "BG")) == pytest.approx(eval_brute(g).value)


class TestLocalHolographic:
    def test_identity(self):
        g = theta(example1()["G1"])
        h = local_holographic(g, "a", np.eye(3))
        assert len(h.vertices) == len(g.vertices) + 3
        assert eval_brute(h).value == pytest.approx(eval_brute(g).value)

    def test_singular(self):
        with pytest.raises(Singular):
            local_holographic(theta(geneq([1, 1])), "a", np.diag([1.0, 1, 0]))

    def test_unknown_vertex(self):
        with pytest.raises(KeyError):
            local_holographic(theta(geneq([1, 1])), "zz", np.eye(3))

    @pytest.mark.parametrize("seed", range(8))
    def test_value_preserved(self, seed):
        rng = np.random.default_rng(seed)
        g = random_closed_grid(rng, CLASS_SETS["BCDE"[seed % 4]](rng))
        vid = g.vertices[0][0]
        M = OH[seed * 5] if seed % 2 else rng.normal(size=(3, 3))
        ref = eval_brute(g).value
        assert eval_brute(local_holographic(g, vid, M), cap=40).value == pytest.approx(ref, rel=1e-9, abs=1e-9)


def test_boolean_unary_restriction():
    g = SignatureGrid(
        {"u": SymSig([1.0, 2.0, 3.0], 1), "M": SymSig.from_tensor(np.eye(3))},
        [("x", "u"), ("y", "u"), ("m", "M")],
        [(("x", 0), ("m", 0)), (("y", 0), ("m", 1))],
        [],
    )
    b = grid_to_boolean(g, "GR")
    assert isinstance(b.signatures["u"], BoolSig)
    assert eval_bool_brute(b) == pytest.approx(2 * 2 + 3 * 3)


def test_no_warning_for_symmetric_gadgets():
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        realize_z_arity4(beta_form(1))
