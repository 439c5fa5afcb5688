import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from holant3.fixtures import beta_form, example1, geneq
from holant3.sigcore import (
    BETA0,
    OH,
    BadIndex,
    BoolSig,
    MatSig,
    ParseError,
    SignatureGrid,
    SymSig,
    ValidationError,
    binary_shape,
    degenerate_vector,
    grid_from_json,
    grid_to_json,
    grid_validate,
    is_degenerate,
    oh_index,
    projective_equal,
    require_valid,
    restrict_signature,
    sig_from_json,
    sig_from_terms,
    sig_to_json,
    sig_value,
    support_flags,
)

R2 = np.sqrt(2)


class TestValues:
    def test_geneq_off_support_is_zero(self):
        assert sig_value(geneq([1, 1]), "GBB") == 0

    def test_example1_center_and_corner(self):
        F1 = example1()["F1"]
        assert sig_value(F1, "BGR") == -1
        assert sig_value(F1, "RRR") == -7

    def test_index_order_does_not_matter(self):
        F1 = example1()["F1"]
        assert F1["RGB"] == F1["BGR"] == F1[(2, 1, 0)]

    def test_bad_index(self):
        with pytest.raises(BadIndex):
            example1()["F1"]["BG"]

    def test_table_size_checked(self):
        with pytest.raises(ValueError):
            SymSig(np.zeros(9), 3)

    def test_immutable(self):
        F = geneq([1, 1])
        with pytest.raises(AttributeError):
            F.arity = 4
        with pytest.raises(ValueError):
            F.values[0] = 3


class TestTerms:
    def test_geneq_table(self):
        F = sig_from_terms([(1, np.eye(3)[0]), (1, np.eye(3)[1])], 3)
        assert F["BBB"] == 1 and F["GGG"] == 1
        assert np.count_nonzero(F.values) == 2

    def test_conjugate_pair_table(self):
        F = sig_from_terms([(1, BETA0), (1, BETA0.conj())], 3)
        assert F["BBB"] == pytest.approx(1 / R2)
        assert F["BGG"] == pytest.approx(-1 / R2)
        assert abs(F["BBG"]) < 1e-15 and abs(F["GGG"]) < 1e-15

    def test_binary_all_twos(self):
        F = sig_from_terms([(2, np.ones(3))], 2)
        assert np.allclose(F.tensor(), 2)

    def test_tensor_round_trip(self, rng):
        F = SymSig(rng.normal(size=15), 4)
        assert np.allclose(SymSig.from_tensor(F.tensor()).values, F.values)

    def test_from_tensor_rejects_asymmetric(self):
        with pytest.raises(ValueError):
            SymSig.from_tensor(np.array([[1.0, 2.0, 0], [0, 1, 0], [0, 0, 1]]))


class TestRestriction:
    def test_f1_on_bg(self):
        assert np.allclose(restrict_signature(example1()["F1"], "BG").values, [2, 2, 2, 2])

    def test_geneq_on_gr(self):
        assert np.allclose(restrict_signature(geneq([1, 1]), "GR").values, [1, 0, 0, 0])

    def test_conjugate_pair_on_bg(self):
        f = restrict_signature(beta_form(0), "BG")
        assert isinstance(f, BoolSig)
        assert np.allclose(f.values, [1 / R2, 0, -1 / R2, 0])


class TestSupport:
    def test_geneq(self):
        fl = support_flags(geneq([1, 1]))
        assert fl.is_geneq and fl.ebd_plane == "BG"
        assert fl.sep_BG_R and fl.sep_BR_G and fl.sep_GR_B

    def test_dense_signature(self):
        fl = support_flags(example1()["G1"])
        assert fl.ebd_plane is None
        assert not (fl.sep_BG_R or fl.sep_BR_G or fl.sep_GR_B)

    def test_pair_plus_axis(self):
        fl = support_flags(beta_form(1))
        assert fl.sep_BG_R and fl.ebd_plane is None


class TestBinaryShape:
    def test_identity(self):
        s = binary_shape(np.eye(3))
        assert s.sep_BG_R and s.sep_BR_G and s.sep_GR_B
        assert s.is_genperm and s.in_Oh and s.oh_scale == 1

    def test_swap_example(self):
        s = binary_shape(np.array([[0, 0, 1], [0, 0, -1], [1, -1, 0.0]]))
        assert s.swap_BG_R and s.in_D and not s.in_Oh

    def test_dependent_columns(self):
        s = binary_shape(np.array([[1, 2, 0], [2, 4, 0], [0, 0, 5.0]]))
        assert s.in_D and s.sep_BG_R and not s.is_genperm

    def test_oh_group(self):
        assert len(OH) == 48
        for P in OH:
            assert np.allclose(P @ P.T, np.eye(3))
        assert oh_index(-np.eye(3)) is not None
        assert oh_index(np.diag([1, 2, 1])) is None


class TestDegenerate:
    def test_rank_one(self):
        v = np.array([1.0, -2.0, 0.5])
        F = sig_from_terms([(3, v)], 4)
        assert is_degenerate(F)
        c, w = degenerate_vector(F)
        assert np.allclose(sig_from_terms([(c, w)], 4).values, F.values)

    def test_geneq_is_not(self):
        assert not is_degenerate(geneq([1, 1]))


class TestGrid:
    def test_theta_ok(self):
        from conftest import theta

        assert grid_validate(theta(geneq([1, 1]))) == []

    def test_missing_port(self):
        G = SignatureGrid({"F": geneq([1, 1])}, [("a", "F")], [(("a", 0), ("a", 1))], [])
        assert [i.kind for i in grid_validate(G)] == ["PortMissing"]

    def test_port_out_of_range(self):
        G = SignatureGrid({"F": geneq([1, 1])}, [("a", "F")], [(("a", 0), ("a", 5))], [("a", 1), ("a", 2)])
        kinds = {i.kind for i in grid_validate(G)}
        assert "ArityMismatch" in kinds
        with pytest.raises(ValidationError):
            require_valid(G)

    def test_self_loop_allowed(self):
        G = SignatureGrid({"F": geneq([1, 1])}, [("a", "F")], [(("a", 0), ("a", 1))], [("a", 2)])
        assert grid_validate(G) == []


class TestJson:
    def test_signature_round_trip(self):
        F1 = example1()["F1"]
        back = sig_from_json(json.loads(json.dumps(sig_to_json(F1))))
        assert np.array_equal(back.values, F1.values)

    def test_matrix_and_boolean(self):
        M = MatSig([[1, 2, 0], [0, 1, 0], [0, 0, 3]])
        assert np.array_equal(sig_from_json(sig_to_json(M)).matrix, M.matrix)
        f = BoolSig([1, 2, -1, -2])
        assert np.array_equal(sig_from_json(sig_to_json(f)).values, f.values)

    def test_grid_round_trip(self):
        from conftest import theta

        G = theta(example1()["F1"])
        H = grid_from_json(json.loads(json.dumps(grid_to_json(G))))
        assert H.vertices == G.vertices and H.edges == G.edges
        assert np.array_equal(H.signatures["F"].values, G.signatures["F"].values)

    @pytest.mark.parametrize(
        "obj",
        [
            {"kind": "weird"},
            {"kind": "symmetric", "arity": 2, "values": [{"idx": "GB", "re": 1}]},
            {"kind": "symmetric", "arity": 2, "values": [{"idx": "BX", "re": 1}]},
            {"kind": "symmetric", "values": []},
            {"kind": "matrix", "entries": [[1, 2], [3]]},
        ],
    )
    def test_malformed(self, obj):
        with pytest.raises((ParseError, ValueError)):
            sig_from_json(obj)

    @settings(max_examples=60, deadline=None)
    @given(
        arity=st.integers(1, 5),
        data=st.data(),
    )
    def test_round_trip_property(self, arity, data):
        n = len(SymSig(np.zeros(200)[: (arity + 1) * (arity + 2) // 2], arity).values)
        re = data.draw(st.lists(st.floats(-1e6, 1e6), min_size=n, max_size=n))
        im = data.draw(st.lists(st.floats(-1e6, 1e6), min_size=n, max_size=n))
        F = SymSig(np.array(re) + 1j * np.array(im), arity)
        back = sig_from_json(json.loads(json.dumps(sig_to_json(F))))
        assert np.array_equal(back.values, F.values)


def test_projective_equal():
    x = np.array([1.0, 2.0, -1.0])
    assert projective_equal(x, -3.5 * x)
    assert projective_equal(x, 1j * x)
    assert not projective_equal(x, x + np.array([0, 0, 1e-3]))
