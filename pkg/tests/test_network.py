import numpy as np
import pytest

from conftest import theta
from holant3.fixtures import geneq
from holant3.generators import random_any_set, random_closed_grid
from holant3.network import (
    VerdictMismatch,
    brute_sum,
    contract,
    expand_in_basis,
    label_eval,
    net_from_grid,
    reduce_chains,
    split_degenerate,
)
from holant3.sigcore import MatSig, SignatureGrid, SymSig, sig_from_terms

EYE3 = np.eye(3)


def chain_grid(M1, M2, u, w):
    """u - M1 - M2 - w, all as matrices and unaries."""
    return SignatureGrid(
        {"A": MatSig(M1), "B": MatSig(M2), "u": SymSig(u, 1), "w": SymSig(w, 1)},
        [("x", "u"), ("a", "A"), ("b", "B"), ("y", "w")],
        [(("x", 0), ("a", 0)), (("a", 1), ("b", 0)), (("b", 1), ("y", 0))],
        [],
    )


def test_contract_matches_brute(rng):
    for _ in range(10):
        g = random_closed_grid(rng, random_any_set(rng))
        net = net_from_grid(g)
        value, count = brute_sum(net, cap=16)
        assert complex(contract(net)) == pytest.approx(value)
        assert count == 3 ** len(g.edges)


def test_brute_blocks_and_workers(rng):
    g = random_closed_grid(rng, random_any_set(rng), max_edges=8)
    net = net_from_grid(g)
    ref, _ = brute_sum(net, cap=16)
    assert brute_sum(net, cap=16, block_edges=2)[0] == pytest.approx(ref)
    assert brute_sum(net, cap=16, workers=3)[0] == pytest.approx(ref)


def test_chain_is_multiplied_out(rng):
    M1, M2 = rng.normal(size=(3, 3)), rng.normal(size=(3, 3))
    u, w = rng.normal(size=3), rng.normal(size=3)
    sk = reduce_chains(net_from_grid(chain_grid(M1, M2, u, w)))
    assert not sk.bigs and sk.chains == 1
    assert sk.scalar == pytest.approx(u @ M1 @ M2 @ w)


def test_cycle_trace(rng):
    M = rng.normal(size=(3, 3))
    g = SignatureGrid(
        {"M": MatSig(M)}, [("a", "M"), ("b", "M")], [(("a", 1), ("b", 0)), (("b", 1), ("a", 0))], []
    )
    assert reduce_chains(net_from_grid(g)).scalar == pytest.approx(np.trace(M @ M))


def test_links_between_bigs():
    F = geneq([1, 1])
    sk = reduce_chains(net_from_grid(theta(F)))
    assert set(sk.bigs) == {"a", "b"}
    assert len(sk.links) == 3 and not sk.pendants
    for _, _, M in sk.links:
        assert np.allclose(M, EYE3)


def test_split_rank_one_vertices():
    v = np.array([1.0, 2.0, -1.0])
    F = sig_from_terms([(2.0, v)], 3)
    net = split_degenerate(net_from_grid(theta(F, geneq([1, 1]))))
    assert sorted(k for k in net.tensors if k.startswith("a")) == ["a#0", "a#1", "a#2"]
    assert "b" in net.tensors
    assert complex(contract(net)) == pytest.approx(complex(contract(net_from_grid(theta(F, geneq([1, 1]))))))


def test_split_rank_one_binary():
    M = np.outer([1.0, 2, 3], [0.5, -1, 1])
    g = SignatureGrid(
        {"M": MatSig(M), "F": geneq([1, 1])},
        [("m", "M"), ("f", "F")],
        [(("m", 0), ("f", 0)), (("m", 1), ("f", 1))],
        [("f", 2)],
    )
    net = net_from_grid(g)
    split = split_degenerate(net)
    assert "m" not in split.tensors
    assert np.allclose(contract(split), contract(net))


def test_expand_in_basis():
    t = sig_from_terms([(2.0, [1, 0, 0]), (-3.0, [0, 1, 0])], 3).tensor()
    c = expand_in_basis(t, [EYE3[0], EYE3[1]])
    assert np.allclose(c, [2, -3])
    with pytest.raises(VerdictMismatch):
        expand_in_basis(t, [EYE3[0], EYE3[2]])


def test_label_eval_theta():
    # each of the three labels contributes its squared coefficient
    for coeffs, expected in (([1, 1, 1], 3), ([2, 1, -1], 4 + 1 + 1)):
        sk = reduce_chains(net_from_grid(theta(geneq(coeffs))))
        value, stats = label_eval(sk, EYE3)
        assert value == pytest.approx(expected)
        assert stats["components"] == 1


def test_label_eval_rejects_mixing_link():
    F = geneq([1, 1, 1])
    M = np.array([[1.0, 1, 0], [1, 2, 0], [0, 0, 1]])
    g = SignatureGrid(
        {"F": F, "M": MatSig(M)},
        [("a", "F"), ("b", "F"), ("m", "M")],
        [(("a", 0), ("m", 0)), (("m", 1), ("b", 0)), (("a", 1), ("b", 1)), (("a", 2), ("b", 2))],
        [],
    )
    with pytest.raises(VerdictMismatch):
        label_eval(reduce_chains(net_from_grid(g)), EYE3)
