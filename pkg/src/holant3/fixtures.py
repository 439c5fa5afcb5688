"""Worked example signature sets and named families used by tests, demos and selftest."""

from __future__ import annotations

import itertools
import json
from importlib import resources

import numpy as np

from .sigcore import BETA0, DOMAIN, SymSig, sig_from_terms

S2, S3, S6 = np.sqrt(2), np.sqrt(3), np.sqrt(6)


def _tern(vals) -> SymSig:
    return SymSig(np.array(vals, dtype=float), 3)


def _bin(vals) -> SymSig:
    return SymSig(np.array(vals, dtype=float), 2)


def example1() -> dict:
    """Three planar ternaries and a binary; tractable in class E."""
    return {
        "F1": _tern([2, 2, -1, 2, -1, 5, 2, -1, 5, -7]),
        "G1": _tern([-7, 5, -1, 5, 5, 2, -7, -1, 2, 2]),
        "H1": _tern([-2, 1, 1, 1, -2, 1, -2, 1, 1, -2]),
        "B1": _bin([3 + 2 * S2, -3 + 2 * S2, -S2, 3 + 2 * S2, -S2, -4 * S2]),
    }


EXAMPLE1_T = np.array([[S2, S2, S2], [1, 1, -2], [S3, -S3, 0]]) / S6


def example2() -> dict:
    """Ternaries separating {B,G} from {R} plus two binaries; tractable in class D."""
    return {
        "F2": _tern([-3, 1, -5, -3, -5, 2, 1, -5, 2, 10]),
        "G2": _tern([5, 11, 4, 5, 4, 2, 11, 4, 2, 1]),
        "H2": _bin([4 + 2 * S2, -2 + 2 * S2, -4 + S2, 4 + 2 * S2, -4 + S2, -2 - 4 * S2]),
        "B2": _bin([2 - 2 * S2, 0, 2 + S2, -2 + 2 * S2, -2 - S2, 0]),
    }


EXAMPLE2_T = np.array([[S2, S2, -S2], [1, 1, 2], [-S3, S3, 0]]) / S6


def example1_transformed_forms() -> dict:
    """Expected images of the example-1 ternaries under ``EXAMPLE1_T`` (up to scale)."""
    e1, e2, e3 = np.eye(3)
    return {
        "F1": sig_from_terms([(3 * S3, e1), (6 * S6, e2)], 3),
        "G1": sig_from_terms([(1, e1 + 1j * e3), (1, e1 - 1j * e3)], 3),
        "H1": sig_from_terms([(1, e2 + 1j * e3), (1, e2 - 1j * e3)], 3),
    }


def example2_f2_form() -> SymSig:
    e3 = np.eye(3)[2]
    return sig_from_terms(
        [(3 * S3, np.array([1, 1j, 0])), (3 * S3, np.array([1, -1j, 0])), (4 * S2, e3)], 3
    )


def parity(n: int, i: str, j: str, a: float, b: float) -> SymSig:
    """Value ``a`` (``b``) on {i,j}-strings with an even (odd) number of ``i``; zero elsewhere."""
    ii, jj = DOMAIN.index(i), DOMAIN.index(j)
    from .sigcore import multisets

    vals = []
    for ms in multisets(3, n):
        if set(ms) <= {ii, jj}:
            vals.append(a if ms.count(ii) % 2 == 0 else b)
        else:
            vals.append(0.0)
    return SymSig(np.array(vals, dtype=float), n)


def neq_binary(p: str, q: str, r: str) -> SymSig:
    """1 on (p,q), (q,p) and (r,r); zero elsewhere."""
    M = np.zeros((3, 3))
    pi, qi, ri = (DOMAIN.index(c) for c in (p, q, r))
    M[pi, qi] = M[qi, pi] = M[ri, ri] = 1
    return SymSig.from_tensor(M)


def parity_family(arities=(3, 4), pairs=((1, 1), (2, -1))) -> dict:
    out = {}
    for n in arities:
        for i, j in itertools.permutations(DOMAIN, 2):
            for a, b in pairs:
                out[f"par{n}_{i}{j}_{a}_{b}"] = parity(n, i, j, a, b)
    for p, q, r in (("B", "G", "R"), ("B", "R", "G"), ("G", "R", "B")):
        out[f"neq_{p}{q}_{r}"] = neq_binary(p, q, r)
    return out


def beta_form(lam: float, arity: int = 3) -> SymSig:
    """``beta^n + conj(beta)^n + lam * e3^n`` with ``beta = (1, i, 0)/sqrt(2)``."""
    return sig_from_terms([(1, BETA0), (1, BETA0.conj()), (lam, np.eye(3)[2])], arity)


def geneq(coeffs, arity: int = 3) -> SymSig:
    return sig_from_terms([(c, e) for c, e in zip(coeffs, np.eye(3)) if c], arity)


def hard_real_pair() -> SymSig:
    return sig_from_terms([(1, [1, 0, 0]), (1, [1, 1, 0])], 3)


def hard_conjugate_pair() -> SymSig:
    u, v = np.array([1, 0, 0]), np.array([1, 1, 0])
    return sig_from_terms([(1, u + 1j * v), (1, u - 1j * v)], 3)


def case5_binary(x: float, sign: int = 1) -> SymSig:
    """A binary that keeps ``e1^3 + e2^3`` tractable when paired with it."""
    al = sign * np.sqrt(1 + x * x)
    M = np.array([[1, x, -x * al], [x, x * x, al], [-x * al, al, 0]])
    return SymSig.from_tensor(M)


def _decode(sig: dict) -> SymSig:
    kind = sig["kind"]
    if kind == "terms":
        return sig_from_terms(
            [(c, np.array(v[0]) + 1j * np.array(v[1])) for c, v in sig["terms"]], sig["arity"]
        )
    if kind == "matrix":
        return SymSig.from_tensor(np.array(sig["matrix"], dtype=float))
    if kind == "case5":
        return case5_binary(sig["x"], sig.get("sign", 1))
    if kind == "table":
        return SymSig(np.array(sig["values"], dtype=float), sig["arity"])
    raise ValueError(f"unknown fixture kind {kind!r}")


def lemma_table() -> list:
    """Instances ``(name, {sig name: SymSig}, expected status)`` from the bundled table."""
    text = resources.files("holant3").joinpath("data/lemma_table.json").read_text()
    out = []
    for inst in json.loads(text)["instances"]:
        sigs = {k: _decode(v) for k, v in inst["signatures"].items()}
        out.append((inst["name"], sigs, inst["expected"], inst.get("note", "")))
    return out
