import numpy as np
import pytest

from conftest import theta, two_cycle
from holant3.classifier import classify_set
from holant3.evaluator import components, eval_auto, eval_brute, eval_tractable
from holant3.fixtures import beta_form, example1, example2, geneq, hard_real_pair, parity_family
from holant3.generators import CLASS_SETS, fixed_class_sets, random_any_set, random_closed_grid, random_orthogonal, transform_grid
from holant3.network import VerdictMismatch
from holant3.sigcore import NotClosed, SignatureGrid, SymSig, TooLarge, ValidationError

EYE = SymSig.from_tensor(np.eye(3))


def rel(a, b):
    return abs(a - b) / max(1.0, abs(b))


class TestBrute:
    def test_theta_geneq(self):
        assert eval_brute(theta(geneq([1, 1]))).value == pytest.approx(2)

    def test_identity_cycle(self):
        assert eval_brute(two_cycle(EYE)).value == pytest.approx(3)

    def test_theta_pair_plus_axis(self):
        assert eval_brute(theta(beta_form(1))).value == pytest.approx(3)

    def test_frozen_example_values(self):
        # a theta graph of F with itself sums F_ijk^2 over ordered triples
        assert eval_brute(theta(example1()["F1"])).value == pytest.approx(243)
        assert eval_brute(theta(example2()["F2"])).value == pytest.approx(464)

    def test_components_multiply(self):
        g = theta(geneq([1, 1]))
        h = SignatureGrid(
            {"F": geneq([1, 1]), "M": EYE},
            [("a", "F"), ("b", "F"), ("c", "M"), ("d", "M")],
            g.edges + [(("c", 0), ("d", 0)), (("c", 1), ("d", 1))],
            [],
        )
        assert len(components(h)) == 2
        rep = eval_brute(h)
        assert rep.value == pytest.approx(6)
        assert sorted(np.real(rep.component_values)) == pytest.approx([2, 3])

    def test_cap(self):
        with pytest.raises(TooLarge):
            eval_brute(theta(geneq([1, 1])), cap=2)

    def test_open_grid(self):
        g = SignatureGrid({"F": geneq([1, 1])}, [("a", "F")], [(("a", 0), ("a", 1))], [("a", 2)])
        with pytest.raises(NotClosed):
            eval_brute(g)

    def test_invalid_grid(self):
        g = SignatureGrid({"F": geneq([1, 1])}, [("a", "F")], [(("a", 0), ("a", 1))], [])
        with pytest.raises(ValidationError):
            eval_brute(g)

    def test_workers_agree(self, rng):
        g = random_closed_grid(rng, random_any_set(rng), max_edges=8)
        assert eval_brute(g, workers=2).value == pytest.approx(eval_brute(g).value)


class TestTractable:
    def test_theta_geneq_class_c(self):
        M = SymSig.from_tensor(np.array([[1.0, 1, 0], [1, 1, 0], [0, 0, 1]]))
        v = classify_set({"F": geneq([1, 1]), "M": M})
        assert v.cls == "C"
        assert eval_tractable(theta(geneq([1, 1])), v).value == pytest.approx(2)

    def test_theta_geneq3_class_b(self):
        v = classify_set({"F": geneq([1, 1, 1])})
        assert v.cls == "B"
        assert eval_tractable(theta(geneq([1, 1, 1])), v).value == pytest.approx(3)

    def test_theta_pair_plus_axis(self):
        v = classify_set({"F": beta_form(1)})
        assert v.tractable
        assert eval_tractable(theta(beta_form(1)), v).value == pytest.approx(3)

    def test_unknown_signature_rejected(self):
        v = classify_set({"F": geneq([1, 1])})
        with pytest.raises(VerdictMismatch):
            eval_tractable(theta(beta_form(1)), v)

    def test_hard_verdict_rejected(self):
        v = classify_set({"F": hard_real_pair()})
        with pytest.raises(VerdictMismatch):
            eval_tractable(theta(hard_real_pair()), v)

    @pytest.mark.parametrize("cls", ["B", "C", "D", "E"])
    def test_random_sets_match_brute(self, cls):
        rng = np.random.default_rng(100 + ord(cls))
        for _ in range(6):
            S = CLASS_SETS[cls](rng)
            v = classify_set(S)
            for _ in range(4):
                g = random_closed_grid(rng, S)
                assert rel(eval_tractable(g, v).value, eval_brute(g).value) < 1e-8

    @pytest.mark.parametrize("name", ["D", "E", "E-parity"])
    def test_fixed_sets_match_brute(self, name):
        S = fixed_class_sets()[name]
        v = classify_set(S)
        rng = np.random.default_rng(7)
        for _ in range(15):
            g = random_closed_grid(rng, S, max_edges=7)
            assert rel(eval_tractable(g, v).value, eval_brute(g).value) < 1e-8

    def test_class_e_root_order_irrelevant(self):
        S = example1()
        v = classify_set(S)
        rng = np.random.default_rng(3)
        for _ in range(15):
            g = random_closed_grid(rng, S)
            a = eval_tractable(g, v, root_choice="min").value
            b = eval_tractable(g, v, root_choice="max").value
            assert rel(a, b) < 1e-9

    def test_parity_family_arity4(self):
        S = parity_family()
        v = classify_set(S)
        g = SignatureGrid(
            S,
            [("a", "par4_BG_2_-1"), ("b", "par4_BG_2_-1")],
            [(("a", i), ("b", i)) for i in range(4)],
            [],
        )
        assert rel(eval_tractable(g, v).value, eval_brute(g).value) < 1e-9


class TestAuto:
    def test_theta_f1(self):
        # {F1} alone already fits class B; the classes overlap and B is tried first
        rep = eval_auto(theta(example1()["F1"]))
        assert rep.method == "ClassB" and rep.value == pytest.approx(243)

    def test_example1_grid_uses_class_e(self):
        S = example1()
        g = SignatureGrid(S, [("a", "F1"), ("b", "G1"), ("c", "B1")], [(("a", 0), ("b", 0)), (("a", 1), ("b", 1)), (("a", 2), ("c", 0)), (("b", 2), ("c", 1))], [])
        rep = eval_auto(g)
        assert rep.method == "ClassE"
        assert rep.value == pytest.approx(eval_brute(g).value)

    def test_identity_cycle(self):
        rep = eval_auto(two_cycle(EYE))
        assert rep.method == "ClassA" and rep.value == pytest.approx(3)

    def test_hard_small_falls_back(self):
        rep = eval_auto(theta(hard_real_pair()))
        assert rep.method == "Brute"

    def test_hard_large(self):
        n = 12
        rng = np.random.default_rng(0)
        ports = [(f"v{i}", p) for i in range(n) for p in range(3)]
        order = rng.permutation(len(ports))
        edges = [(ports[order[2 * k]], ports[order[2 * k + 1]]) for k in range(len(ports) // 2)]
        g = SignatureGrid({"H": hard_real_pair()}, [(f"v{i}", "H") for i in range(n)], edges, [])
        with pytest.raises(TooLarge):
            eval_auto(g)

    def test_report_json(self):
        doc = eval_auto(theta(geneq([1, 1]))).to_json()
        assert list(doc) == ["value", "method", "components", "stats"]
        assert doc["value"] == [2.0, 0.0]


@pytest.mark.parametrize("seed", range(10))
def test_orthogonal_invariance(seed):
    rng = np.random.default_rng(seed)
    g = random_closed_grid(rng, random_any_set(rng))
    Q = random_orthogonal(rng)
    assert rel(eval_brute(transform_grid(g, Q)).value, eval_brute(g).value) < 1e-9
