import numpy as np
import pytest

from holant3.boolhol import (
    bool_decompose,
    classify_bool_set,
    eval_bool,
    eval_bool_brute,
    is_type_ii,
    normalize_ab,
    type_i_witness,
)
from holant3.generators import random_bool_set, random_closed_grid
from holant3.sigcore import BoolSig, SignatureGrid


def bool_theta(f):
    return SignatureGrid({"f": f}, [("a", "f"), ("b", "f")], [(("a", i), ("b", i)) for i in range(3)], [])


class TestTypeI:
    @pytest.mark.parametrize(
        "values, expected",
        [([1, 0, 0, 1], (0.0, 1.0)), ([2, 2, 2, 2], (1.0, 0.0)), ([0, 1, 1, 0], None)],
    )
    def test_witness(self, values, expected):
        assert type_i_witness(BoolSig(values)) == expected

    def test_normalization(self):
        assert normalize_ab(0, -4) == (0.0, 1.0)
        assert normalize_ab(-2, 1) == (1.0, -0.5)


class TestTypeII:
    @pytest.mark.parametrize("values, expected", [([1, 2, -1, -2], True), ([1, 0, 0, 1], False), ([3, 0, -3], True)])
    def test_membership(self, values, expected):
        assert is_type_ii(BoolSig(values)) is expected


class TestDecompose:
    def test_two_real(self):
        d = bool_decompose(BoolSig([1, 0, 0, 1]))
        assert d.kind == "TwoReal"
        assert np.allclose(d.rebuild(3).values, [1, 0, 0, 1])

    def test_conjugate_pair(self):
        d = bool_decompose(BoolSig([1, 0, -1, 0]))
        assert d.kind == "ConjPair"
        assert np.allclose(d.u @ d.v, 0) and np.isclose(d.u @ d.u, d.v @ d.v)
        assert np.allclose(d.rebuild(3).values, [1, 0, -1, 0])

    def test_degenerate(self):
        assert bool_decompose(BoolSig([1, 1, 1])).kind == "Degenerate"


class TestClassify:
    def test_equality(self):
        v = classify_bool_set([BoolSig([1, 0, 0, 1])])
        assert v.tractable and v.case == "TypeI" and v.ab == (0.0, 1.0)

    def test_equality_with_swap(self):
        v = classify_bool_set([BoolSig([1, 0, 0, 1]), BoolSig([0, 1, 0])])
        assert v.tractable and v.case == "TypeI"
        assert v.witnesses[1] == "special-binary"

    def test_hard(self):
        v = classify_bool_set([BoolSig([1, 0, 0, 1]), BoolSig([0, 1, 1, 0])])
        assert v.status == "Hard"

    def test_matrix_input(self):
        v = classify_bool_set([np.eye(2), BoolSig([1, 0, 0, 1])])
        assert v.tractable

    def test_type_ii_set(self):
        assert classify_bool_set([BoolSig([1, 2, -1, -2]), BoolSig([1, 0, -1, 0])]).case == "TypeII"


class TestEval:
    def test_theta_equality(self):
        g = bool_theta(BoolSig([1, 0, 0, 1]))
        assert eval_bool(g, classify_bool_set([BoolSig([1, 0, 0, 1])])) == pytest.approx(2)

    def test_swap_cycle(self):
        f = BoolSig([0, 1, 0])
        g = SignatureGrid({"f": f}, [("a", "f"), ("b", "f")], [(("a", 0), ("b", 0)), (("a", 1), ("b", 1))], [])
        assert eval_bool(g, classify_bool_set([f])) == pytest.approx(2)

    def test_theta_type_ii(self):
        f = BoolSig([1, 0, -1, 0])
        g = bool_theta(f)
        assert eval_bool_brute(g) == pytest.approx(4)
        assert eval_bool(g, classify_bool_set([f])) == pytest.approx(4)

    @pytest.mark.parametrize("case, seed", [("TypeI", 1), ("TypeII", 2), ("AritiesLE2", 3)])
    def test_matches_brute(self, case, seed):
        rng = np.random.default_rng(seed)
        for _ in range(25):
            g = random_closed_grid(rng, random_bool_set(rng, case), max_edges=12, max_vertices=8, domain=2)
            v = classify_bool_set(list(g.signatures.values()))
            assert v.tractable
            ref = eval_bool_brute(g)
            assert abs(eval_bool(g, v) - ref) <= 1e-8 * max(1, abs(ref))
