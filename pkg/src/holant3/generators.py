"""Seeded random inputs: orthogonal frames, class-consistent signature sets, closed grids."""

from __future__ import annotations

import numpy as np
from scipy.stats import special_ortho_group

from .fixtures import beta_form, example1, example2, parity_family
from .sigcore import BETA0, BoolSig, SignatureGrid, SymSig, sig_from_terms
from .tensorlab import apply_binary


def random_orthogonal(rng: np.random.Generator) -> np.ndarray:
    Q = special_ortho_group.rvs(3, random_state=rng)
    if rng.random() < 0.5:
        Q = Q * np.array([[1], [1], [-1]])
    return Q


def _nonzero(rng, lo=0.5, hi=2.0):
    return float(rng.uniform(lo, hi) * rng.choice([-1, 1]))


def random_type_a(rng, arity: int, rank: int | None = None, frame=None) -> tuple:
    """``sum c_i (Q e_i)^n`` with random real coefficients; returns (sig, coeffs, frame)."""
    Q = random_orthogonal(rng) if frame is None else frame
    rank = rank or int(rng.integers(2, 4))
    coeffs = [_nonzero(rng) for _ in range(rank)]
    terms = [(c, Q[i]) for i, c in enumerate(coeffs)]
    return sig_from_terms(terms, arity), coeffs, Q


def random_type_b(rng, arity: int, with_axis: bool = True, frame=None) -> tuple:
    """``c (beta^n + conj(beta)^n) + lam e3^n`` rotated by a random frame."""
    Q = random_orthogonal(rng) if frame is None else frame
    theta = rng.uniform(0, 2 * np.pi)
    c = rng.uniform(0.5, 2.0)
    beta = np.exp(1j * theta / arity) * (Q[0] + 1j * Q[1]) / np.sqrt(2)
    lam = _nonzero(rng) if with_axis else 0.0
    terms = [(c, beta), (c, beta.conj())]
    if with_axis:
        terms.append((lam, Q[2]))
    return sig_from_terms(terms, arity), (c, theta, lam), Q


def _sym(M) -> SymSig:
    return SymSig.from_tensor(np.asarray(M, dtype=float))


def _signed_perm(rng) -> np.ndarray:
    P = np.eye(3)[rng.permutation(3)]
    return P * rng.choice([-1, 1], size=3)


def _in_frame(sigs: dict, Q: np.ndarray) -> dict:
    """Pull signatures written in the frame ``Q`` back to standard coordinates."""
    return {k: apply_binary(Q.T, s) for k, s in sigs.items()}


def class_b_set(rng) -> dict:
    Q = random_orthogonal(rng)
    P = _signed_perm(rng)
    perm_bin = P @ np.diag(rng.uniform(0.5, 2, 3)) @ P.T  # symmetric generalized permutation
    swap = np.array([[0, 1.5, 0], [1.5, 0, 0], [0, 0, -0.7]])
    sigs = {
        "E3": sig_from_terms([(c, e) for c, e in zip(rng.uniform(0.5, 2, 3), np.eye(3))], 3),
        "E4": sig_from_terms([(c, e) for c, e in zip(rng.uniform(-2, 2, 3), np.eye(3))], 4),
        "P": _sym(perm_bin),
        "S": _sym(swap),
    }
    return _in_frame(sigs, Q)


def class_c_set(rng) -> dict:
    Q = random_orthogonal(rng)
    a = rng.uniform(0.5, 2)
    dvec = np.array([1.0, 1.0, rng.uniform(-1, 1)])
    D = np.outer(dvec, dvec)
    D[2, 2] += rng.uniform(0.5, 1.5)
    sigs = {
        "Z3": sig_from_terms([(a, BETA0), (a, BETA0.conj())], 3),
        "Z4": sig_from_terms([(1, BETA0), (1, BETA0.conj())], 4),
        "D": _sym(D),
        "S": _sym(np.diag([1.0, 1.0, rng.uniform(-2, 2)])),
    }
    return _in_frame(sigs, Q)


def class_d_set(rng) -> dict:
    Q = random_orthogonal(rng)
    lam = _nonzero(rng)
    sigs = {
        "Z3": sig_from_terms([(1, BETA0), (1, BETA0.conj()), (lam, np.eye(3)[2])], 3),
        "Y3": sig_from_terms([(rng.uniform(0.5, 2), np.array([1.0, 2.0, 0])), (_nonzero(rng), np.eye(3)[2])], 3),
        "H": _sym([[1, 1, 0], [1, -1, 0], [0, 0, rng.uniform(0.5, 2)]]),
        "W": _sym([[0, 0, 1], [0, 0, -1], [1, -1, 0]]),
    }
    return _in_frame(sigs, Q)


def class_e_set(rng) -> dict:
    Q = random_orthogonal(rng)
    e1, e2, e3 = np.eye(3)
    sigs = {
        "F": sig_from_terms([(_nonzero(rng), e1), (_nonzero(rng), e2)], 3),
        "G": sig_from_terms([(1, e1 + 1j * e3), (1, e1 - 1j * e3)], 3),
        "H": sig_from_terms([(1, e2 + 1j * e3), (1, e2 - 1j * e3)], 3),
        "B": _sym([[0, 1, 0], [1, 0, 0], [0, 0, 1]]),
    }
    return _in_frame(sigs, Q)


CLASS_SETS = {"B": class_b_set, "C": class_c_set, "D": class_d_set, "E": class_e_set}


def fixed_class_sets() -> dict:
    return {"D": example2(), "E": example1(), "E-parity": parity_family((3, 4), ((2, -1),))}


def random_unary(rng, domain: int = 3) -> SymSig:
    if domain == 2:
        return BoolSig(rng.normal(size=2))
    return SymSig(rng.normal(size=domain), 1)


def random_bool_set(rng, case: str | None = None) -> dict:
    """Boolean signatures that are jointly tractable: type I, type II, or arity at most two."""
    case = case or str(rng.choice(["TypeI", "TypeII", "AritiesLE2"]))
    if case == "TypeI":
        th = rng.uniform(0, np.pi)
        w0 = np.array([np.cos(th), np.sin(th)])
        w1 = np.array([-np.sin(th), np.cos(th)])
        out = {
            f"T{n}": sig_from_terms([(_nonzero(rng), w0), (_nonzero(rng), w1)], n, domain=2)
            for n in (2, 3, 4)
        }
        out["I"] = BoolSig(np.array([1.0, 0.0, 1.0]) * rng.uniform(0.5, 2))
        return out
    if case == "TypeII":
        z = np.array([1.0, 1.0j])
        out = {}
        for n in (2, 3, 4):
            c = rng.normal() + 1j * rng.normal()
            out[f"P{n}"] = sig_from_terms([(c, z), (np.conj(c), z.conj())], n, domain=2)
        return out
    return {f"M{k}": BoolSig(rng.normal(size=3)) for k in range(3)}


def random_closed_grid(
    rng,
    sigs: dict,
    max_edges: int = 8,
    max_vertices: int = 6,
    unaries: bool = True,
    tries: int = 200,
    domain: int = 3,
) -> SignatureGrid:
    """A random closed grid using signatures from ``sigs`` (and optionally random unaries)."""
    names = list(sigs)
    for _ in range(tries):
        nv = int(rng.integers(1, max_vertices + 1))
        chosen = [names[int(rng.integers(len(names)))] for _ in range(nv)]
        table = dict(sigs)
        ports = sum(table[n].arity for n in chosen)
        if ports % 2 and unaries:
            table["u0"] = random_unary(rng, domain)
            chosen.append("u0")
            ports += 1
        if ports % 2 or ports == 0 or ports // 2 > max_edges or len(chosen) > max_vertices:
            continue
        verts = [(f"v{i}", n) for i, n in enumerate(chosen)]
        plist = [(f"v{i}", p) for i, n in enumerate(chosen) for p in range(table[n].arity)]
        order = rng.permutation(len(plist))
        edges = [(plist[order[2 * k]], plist[order[2 * k + 1]]) for k in range(len(plist) // 2)]
        used = {n for _, n in verts}
        return SignatureGrid({k: v for k, v in table.items() if k in used}, verts, edges, [])
    raise RuntimeError("could not build a grid within the size limits")


def transform_grid(grid: SignatureGrid, Q: np.ndarray) -> SignatureGrid:
    """Apply ``Q`` to every signature; for orthogonal ``Q`` the Holant value is unchanged."""
    from .sigcore import MatSig

    table = {}
    for k, s in grid.signatures.items():
        if isinstance(s, MatSig):
            table[k] = MatSig(Q @ s.matrix @ Q.T)
        else:
            table[k] = apply_binary(Q, s)
    return SignatureGrid(table, list(grid.vertices), list(grid.edges), list(grid.externals))


def random_any_set(rng) -> dict:
    """A mixed set of arbitrary real signatures (usually not tractable)."""
    return {
        "X3": SymSig(rng.normal(size=10), 3),
        "X2": SymSig(rng.normal(size=6), 2),
        "Y3": random_type_b(rng, 3)[0],
    }


__all__ = [
    "CLASS_SETS",
    "beta_form",
    "class_b_set",
    "class_c_set",
    "class_d_set",
    "class_e_set",
    "fixed_class_sets",
    "random_any_set",
    "random_bool_set",
    "random_closed_grid",
    "random_orthogonal",
    "random_type_a",
    "random_type_b",
    "transform_grid",
]
