"""Dense tensor networks behind the evaluators.

A network is a mapping ``vertex id -> dense tensor`` plus a list of edges
between ports ``(vertex id, axis)``.  Three tools live here:

* exhaustive enumeration of edge assignments (the oracle);
* exact contraction with ``numpy.einsum`` (used for gadgets);
* reduction of chains of unary/binary vertices to a *skeleton* of
  high-arity vertices joined by matrix links, and a two-label evaluator
  for skeletons whose vertices all expand in a shared two-vector basis.
"""

from __future__ import annotations

import math
import string
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .sigcore import HolantError, NotClosed, SignatureGrid, TooLarge, maxabs, require_valid

LINK_TOL = 1e-8


class VerdictMismatch(HolantError):
    code = "VerdictMismatch"


@dataclass
class Net:
    tensors: dict  # vid -> ndarray with shape (d,)*k
    edges: list  # [((v, p), (w, q))]
    externals: list = field(default_factory=list)

    @property
    def dim(self) -> int:
        for t in self.tensors.values():
            if t.ndim:
                return t.shape[0]
        return 2

    def copy(self) -> "Net":
        return Net(dict(self.tensors), list(self.edges), list(self.externals))


def net_from_grid(grid: SignatureGrid, validate: bool = True) -> Net:
    if validate:
        require_valid(grid)
    tensors = {v: np.asarray(grid.signatures[s].tensor(), dtype=complex) for v, s in grid.vertices}
    return Net(tensors, list(grid.edges), list(grid.externals))


# ----------------------------------------------------------------------------
# exhaustive enumeration


def _vertex_plan(net: Net):
    """For every vertex: flat tensor and, per port, (edge index, stride)."""
    eid = {}
    for k, (a, b) in enumerate(net.edges):
        eid.setdefault(a, []).append(k)
        eid.setdefault(b, []).append(k)
    plan = []
    for v, t in net.tensors.items():
        n = t.ndim
        d = t.shape[0] if n else 1
        ports = [(eid[(v, p)][0], d ** (n - 1 - p)) for p in range(n)]
        plan.append((t.ravel(), ports))
    return plan


def brute_sum(net: Net, cap: int, workers: int = 1, block_edges: int | None = None):
    """Sum over all assignments of edge values of the product of vertex values.

    The assignment space is split into blocks by a fixed prefix of edges; block
    sums are combined with ``math.fsum`` in index order, so the result does not
    depend on ``workers``.  Returns ``(value, assignments enumerated)``.
    """
    if net.externals:
        raise NotClosed("grid has external edges")
    E = len(net.edges)
    if E > cap:
        raise TooLarge(f"{E} edges exceed the brute-force cap of {cap}")
    d = net.dim
    if not net.tensors:
        return 1.0 + 0j, 0
    plan = _vertex_plan(net)
    if block_edges is None:
        block_edges = 10 if d == 3 else 16
    suffix = min(E, block_edges)
    prefix = E - suffix
    nsuf = d**suffix
    local = np.arange(nsuf)
    # digit of each suffix edge for every local index; edge order is 0..E-1, most significant first
    suf_digits = np.empty((suffix, nsuf), dtype=np.intp)
    for s in range(suffix):
        suf_digits[s] = (local // d ** (suffix - 1 - s)) % d

    def block(pidx: int) -> complex:
        pre_digits = [(pidx // d ** (prefix - 1 - s)) % d for s in range(prefix)]
        acc = np.ones(nsuf, dtype=complex)
        for flat, ports in plan:
            idx = np.zeros(nsuf, dtype=np.intp)
            for e, stride in ports:
                if e < prefix:
                    idx += pre_digits[e] * stride
                else:
                    idx += suf_digits[e - prefix] * stride
            acc *= flat[idx]
        return complex(np.sum(acc))

    nblocks = d**prefix
    if workers > 1 and nblocks > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(block, range(nblocks)))
    else:
        parts = [block(p) for p in range(nblocks)]
    value = complex(math.fsum(z.real for z in parts), math.fsum(z.imag for z in parts))
    return value, d**E


# ----------------------------------------------------------------------------
# einsum contraction


def contract(net: Net) -> np.ndarray:
    """Exact contraction; the result has one axis per external port, in order."""
    letters = iter(string.ascii_letters)
    label = {}
    for a, b in net.edges:
        c = next(letters)
        label[a] = c
        label[b] = c
    out = ""
    for p in net.externals:
        c = next(letters)
        label[p] = c
        out += c
    operands, specs = [], []
    for v, t in net.tensors.items():
        specs.append("".join(label[(v, p)] for p in range(t.ndim)))
        operands.append(t)
    if not operands:
        return np.array(1.0 + 0j)
    expr = ",".join(specs) + "->" + out
    return np.einsum(expr, *operands, optimize="greedy")


# ----------------------------------------------------------------------------
# degenerate splitting and chain reduction


def split_degenerate(net: Net, tol: float = 1e-9) -> Net:
    """Replace each rank-1 vertex (symmetric of arity >= 3, or any binary) by independent unaries."""
    from .sigcore import SymSig, degenerate_vector, is_degenerate

    tensors, remap, memo = {}, {}, {}
    for v, t in net.tensors.items():
        if t.ndim >= 3:
            if id(t) not in memo:
                try:
                    sig = SymSig.from_tensor(t, check=True)
                except ValueError:
                    sig = None
                memo[id(t)] = degenerate_vector(sig) if sig is not None and is_degenerate(sig, tol) else None
            if memo[id(t)] is not None:
                c, z = memo[id(t)]
                for p in range(t.ndim):
                    nv = f"{v}#{p}"
                    tensors[nv] = (c * z) if p == 0 else z.copy()
                    remap[(v, p)] = (nv, 0)
                continue
        if t.ndim == 2 and maxabs(t) > 0 and np.linalg.matrix_rank(t, tol=tol * maxabs(t) * 2) <= 1:
            i, j = np.unravel_index(int(np.argmax(np.abs(t))), t.shape)
            tensors[f"{v}#0"] = t[:, j].copy()
            tensors[f"{v}#1"] = t[i, :] / t[i, j]
            remap[(v, 0)] = (f"{v}#0", 0)
            remap[(v, 1)] = (f"{v}#1", 0)
            continue
        tensors[v] = t
    edges = [(remap.get(a, a), remap.get(b, b)) for a, b in net.edges]
    ext = [remap.get(p, p) for p in net.externals]
    return Net(tensors, edges, ext)


@dataclass
class Skeleton:
    """High-arity vertices joined by matrix links.

    ``links`` holds ``(port_a, port_b, M)`` meaning ``sum M[x_a, x_b]``;
    ``pendants`` holds ``(port, w)`` meaning a unary ``w`` on that port.
    ``scalar`` collects closed chains that touch no high-arity vertex.
    """

    bigs: dict
    links: list
    pendants: list
    scalar: complex = 1.0 + 0j
    chains: int = 0


def reduce_chains(net: Net) -> Skeleton:
    """Multiply out every path and cycle made of unary and binary vertices."""
    partner = {}
    for k, (a, b) in enumerate(net.edges):
        partner[a] = (b, k)
        partner[b] = (a, k)
    arity = {v: t.ndim for v, t in net.tensors.items()}
    d = net.dim
    seen = set()
    links, pendants = [], []
    bigs = {v: t for v, t in net.tensors.items() if t.ndim >= 3}
    for v in bigs:
        for p in range(arity[v]):
            start = (v, p)
            cur, k = partner[start]
            if k in seen:
                continue
            seen.add(k)
            M = np.eye(d, dtype=complex)
            while True:
                w, q = cur
                t = net.tensors[w]
                if arity[w] >= 3:
                    links.append((start, cur, M))
                    break
                if arity[w] == 1:
                    pendants.append((start, M @ t))
                    break
                M = M @ (t if q == 0 else t.T)
                cur, k = partner[(w, 1 - q)]
                seen.add(k)
    # closed chains of unaries and binaries only
    scalar = 1.0 + 0j
    chains = 0
    small_ports = [(w, q) for w in net.tensors if arity[w] <= 2 for q in range(arity[w])]
    # paths first (they start at a unary), then cycles
    for w, q in sorted(small_ports, key=lambda x: arity[x[0]]):
        cur, k = partner[(w, q)]
        if k in seen:
            continue
        seen.add(k)
        chains += 1
        t0 = net.tensors[w]
        if arity[w] == 1:
            vec = t0.copy()
            while True:
                x, r = cur
                t = net.tensors[x]
                if arity[x] == 1:
                    scalar *= vec @ t
                    break
                vec = vec @ (t if r == 0 else t.T)
                cur, k = partner[(x, 1 - r)]
                seen.add(k)
        else:
            # cycle: enter w at port 1-q
            M = t0.T if q == 0 else t0
            M = M.copy()
            while True:
                x, r = cur
                if (x, r) == (w, 1 - q):
                    scalar *= np.trace(M)
                    break
                t = net.tensors[x]
                M = M @ (t if r == 0 else t.T)
                cur, k = partner[(x, 1 - r)]
                seen.add(k)
    return Skeleton(bigs, links, pendants, scalar, chains)


# ----------------------------------------------------------------------------
# two-label evaluation


def _power_columns(basis, n):
    from .sigcore import sig_from_terms

    return np.stack([sig_from_terms([(1.0, w)], n, len(w)).values for w in basis], axis=1)


def expand_in_basis(t: np.ndarray, basis, tol: float = 1e-7) -> np.ndarray:
    """Coefficients ``c`` with ``t = sum_j c_j w_j^n``, or VerdictMismatch."""
    from .sigcore import SymSig

    sig = SymSig.from_tensor(t, check=False)
    A = _power_columns(basis, t.ndim)
    coef, *_ = np.linalg.lstsq(A, sig.values, rcond=None)
    err = maxabs(A @ coef - sig.values)
    if err > tol * max(maxabs(sig.values), 1e-300):
        raise VerdictMismatch("a signature does not expand in the verdict's basis")
    return coef


def _classify_link(K, tol):
    """Return ("zero"|"rank1"|"monomial"|"mixed", data) for a label kernel."""
    m = maxabs(K)
    if m == 0:
        return "zero", None
    nz = np.abs(K) > tol * m
    if np.all(nz.sum(axis=0) <= 1) and np.all(nz.sum(axis=1) <= 1) and nz.sum() > 1:
        fwd = np.full(K.shape[0], -1)
        bwd = np.full(K.shape[1], -1)
        for i, j in zip(*np.nonzero(nz)):
            fwd[i], bwd[j] = j, i
        return "monomial", (fwd, bwd)
    if np.linalg.matrix_rank(K, tol=tol * m * max(K.shape)) <= 1:
        i, j = np.unravel_index(int(np.argmax(np.abs(K))), K.shape)
        return "rank1", (K[:, j].copy(), K[i, :] / K[i, j])
    return "mixed", None


def peel_degenerate(sk: Skeleton, tol: float = 1e-9) -> Skeleton:
    """Turn rank-one high-arity vertices into pendants on their neighbours."""
    from .sigcore import SymSig, degenerate_vector, is_degenerate

    deg = {}
    for v, t in sk.bigs.items():
        sig = SymSig.from_tensor(t, check=False)
        if is_degenerate(sig, tol):
            deg[v] = degenerate_vector(sig)
    if not deg:
        return sk
    scalar = sk.scalar
    for c, _ in deg.values():
        scalar *= c
    bigs = {v: t for v, t in sk.bigs.items() if v not in deg}
    links, pendants = [], []
    for (a, pa), (b, pb), M in sk.links:
        if a in deg and b in deg:
            scalar *= deg[a][1] @ M @ deg[b][1]
        elif a in deg:
            pendants.append(((b, pb), M.T @ deg[a][1]))
        elif b in deg:
            pendants.append(((a, pa), M @ deg[b][1]))
        else:
            links.append(((a, pa), (b, pb), M))
    for (v, p), w in sk.pendants:
        if v in deg:
            scalar *= deg[v][1] @ w
        else:
            pendants.append(((v, p), w))
    return Skeleton(bigs, links, pendants, scalar, sk.chains)


def label_eval(sk: Skeleton, W, tol: float = LINK_TOL, expand_tol: float = 1e-7):
    """Evaluate a skeleton whose vertices expand in the columns of ``W``.

    Each high-arity vertex becomes a weighted choice among ``k`` labels (one per
    column).  Links become ``k x k`` label kernels which must be monomial or of
    rank one; a connected component then has at most ``k`` consistent
    labelings.  Returns ``(value, stats)`` with per-component values in stats.
    """
    sk = peel_degenerate(sk)
    W = np.asarray(W, dtype=complex)
    cols = [W[:, j] for j in range(W.shape[1])]
    k = len(cols)
    weight = {v: expand_in_basis(t, cols, expand_tol) for v, t in sk.bigs.items()}
    for (v, _), vec in sk.pendants:
        weight[v] = weight[v] * (W.T @ vec)
    stats = {"components": 0, "patterns": 0, "component_values": []}
    if not sk.bigs:
        return sk.scalar, stats
    kept = []  # (a, b, fwd, bwd, K)
    for (a, _), (b, _), M in sk.links:
        K = W.T @ M @ W
        if a == b:
            weight[a] = weight[a] * np.diag(K)
            continue
        kind, data = _classify_link(K, tol)
        if kind == "zero":
            stats["component_values"].append(0j)
            return 0j, stats
        if kind == "rank1":
            weight[a] = weight[a] * data[0]
            weight[b] = weight[b] * data[1]
        elif kind == "mixed":
            raise VerdictMismatch("a link mixes labels; the grid is outside the verdict")
        else:
            kept.append((a, b, data[0], data[1], K))
    adj = {v: [] for v in sk.bigs}
    for idx, (a, b, *_rest) in enumerate(kept):
        adj[a].append((idx, b, True))
        adj[b].append((idx, a, False))
    total = sk.scalar
    done = set()
    for root in sk.bigs:
        if root in done:
            continue
        stats["components"] += 1
        nodes, links = [root], set()
        i = 0
        while i < len(nodes):
            for idx, y, _ in adj[nodes[i]]:
                links.add(idx)
                if y not in done and y not in nodes:
                    nodes.append(y)
            done.add(nodes[i])
            i += 1
        comp = 0j
        for s0 in range(k):
            label = {root: s0}
            alive = True
            queue = [root]
            while queue and alive:
                x = queue.pop()
                for idx, y, forward in adj[x]:
                    _, _, fwd, bwd, _ = kept[idx]
                    ny = fwd[label[x]] if forward else bwd[label[x]]
                    if ny < 0:
                        alive = False
                        break
                    if y not in label:
                        label[y] = int(ny)
                        queue.append(y)
                    elif label[y] != ny:
                        alive = False
                        break
            if not alive:
                continue
            val = np.prod([weight[x][label[x]] for x in nodes])
            for idx in links:
                a, b, _, _, K = kept[idx]
                val *= K[label[a], label[b]]
            comp += val
            stats["patterns"] += 1
        stats["component_values"].append(comp)
        total *= comp
    return total, stats


def two_label_eval(sk: Skeleton, basis, tol: float = LINK_TOL):
    """``label_eval`` with the two basis vectors given as a pair."""
    return label_eval(sk, np.stack([np.asarray(b, dtype=complex) for b in basis], axis=1), tol)
