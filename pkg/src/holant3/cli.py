"""Command-line front end: ``holant3 {classify,eval,decompose,gadget,selftest}``."""

from __future__ import annotations

import argparse
import json
import os
import sys
import warnings
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .acceptance import DEFAULT_SELFTEST_SEED, run_checks
from .boolhol import classify_bool_set, eval_bool, eval_bool_brute
from .classifier import classify_set
from .evaluator import BRUTE_CAP_EDGES, EvalReport, eval_auto, eval_brute, eval_tractable, grid_signature_set
from .gadgetlab import (
    AsymmetricResult,
    gadget_signature,
    grid_to_boolean,
    realize_coeff_geneq,
    realize_z_arity4,
)
from .sigcore import (
    PLANES,
    HolantError,
    MatSig,
    ParseError,
    SymSig,
    TooLarge,
    ValidationError,
    grid_from_json,
    grid_to_json,
    load_json,
    sig_from_json,
    sig_to_json,
)
from .tensorlab import DEFAULT_SEED, Degenerate, NotLowRank, apply_binary, canonicalize, decompose

EXIT_OK, EXIT_SELFTEST, EXIT_PARSE, EXIT_INVALID, EXIT_TOO_LARGE = 0, 1, 2, 3, 4
SIG_DIGITS = 12


@dataclass
class CliConfig:
    tol: float = 1e-9
    workers: int = 1
    brute_cap_edges: int = BRUTE_CAP_EDGES
    seed: int = DEFAULT_SEED
    output: str = "human"

    def __post_init__(self):
        if not self.tol > 0:
            raise ValidationError(["--tol must be positive"])
        if self.workers < 1:
            raise ValidationError(["--workers must be at least 1"])


# ----------------------------------------------------------------------------
# output


def _round(x):
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, (float, np.floating)):
        return float(f"{float(x):.{SIG_DIGITS}g}")
    if isinstance(x, (complex, np.complexfloating)):
        return [_round(x.real), _round(x.imag)]
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.ndarray):
        return _round(x.tolist())
    if isinstance(x, dict):
        return {str(k): _round(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_round(v) for v in x]
    return str(x)


def _num(z, floor: float = 1e-14) -> str:
    z = complex(z)
    re = 0.0 if abs(z.real) < floor else z.real
    im = 0.0 if abs(z.imag) < floor else z.imag
    if abs(im) <= 1e-12 * max(1.0, abs(re)):
        return f"{re + 0.0:.{SIG_DIGITS}g}"
    return f"{re + 0.0:.{SIG_DIGITS}g}{im:+.{SIG_DIGITS}g}j"


def _matrix_lines(M) -> list[str]:
    return ["  " + "  ".join(_num(x).rjust(16) for x in row) for row in np.real(M)]


def _emit(cfg: CliConfig, payload: dict, human: list[str]) -> None:
    if cfg.output == "json":
        print(json.dumps(_round(payload), indent=2))
    else:
        print("\n".join(human))


# ----------------------------------------------------------------------------
# input


def _read(path):
    try:
        return load_json(path)
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from None


def _load_signatures(paths) -> dict:
    """Each file holds one signature or a ``{"signatures": {...}}`` table."""
    out = {}
    for p in paths:
        obj = _read(p)
        if not isinstance(obj, dict):
            raise ParseError(f"{p}: expected a JSON object")
        if "signatures" in obj:
            if not isinstance(obj["signatures"], dict):
                raise ParseError(f"{p}: 'signatures' must be an object")
            for k, v in obj["signatures"].items():
                out[k] = sig_from_json(v)
        else:
            out[obj.get("name", Path(p).stem)] = sig_from_json(obj)
    return out


def _load_one(path):
    sigs = _load_signatures([path])
    if len(sigs) != 1:
        raise ValidationError([f"{path}: expected exactly one signature"])
    return next(iter(sigs.values()))


def _require_real(sigs: dict, tol: float) -> None:
    bad = [k for k, s in sigs.items() if not _is_real(s, tol)]
    if bad:
        raise ValidationError([f"signature {k} is not real-valued" for k in bad])


def _is_real(s, tol) -> bool:
    t = s.matrix if isinstance(s, MatSig) else s.values
    return float(np.max(np.abs(np.imag(t)), initial=0.0)) <= tol * max(1.0, float(np.max(np.abs(t), initial=0.0)))


def _as_symmetric(sigs: dict, tol: float) -> dict:
    out = {}
    for k, s in sigs.items():
        if isinstance(s, MatSig):
            try:
                s = SymSig.from_tensor(s.matrix, tol=tol, check=True)
            except ValueError:
                raise ValidationError([f"binary {k} is not symmetric"]) from None
        out[k] = s
    return out


def _is_boolean(sigs: dict) -> bool:
    doms = {(s.domain if not isinstance(s, MatSig) else s.matrix.shape[0]) for s in sigs.values()}
    if len(doms) > 1:
        raise ValidationError(["signatures mix domain sizes 2 and 3"])
    return doms == {2}


# ----------------------------------------------------------------------------
# commands


def cmd_classify(args, cfg: CliConfig) -> int:
    sigs = _load_signatures(args.paths)
    if not sigs:
        raise ValidationError(["no signatures given"])
    _require_real(sigs, cfg.tol)
    if _is_boolean(sigs):
        v = classify_bool_set([s.matrix if isinstance(s, MatSig) else s for s in sigs.values()], cfg.tol)
        payload = {"domain": 2, **v.to_json()}
        lines = [f"status: {v.status}", f"case: {v.case}"]
        if v.ab is not None:
            lines.append("ab: " + ", ".join(_num(z) for z in v.ab))
        _emit(cfg, payload, lines)
        return EXIT_OK
    v = classify_set(_as_symmetric(sigs, cfg.tol), cfg.tol, cfg.seed)
    payload = v.to_json()
    lines = [f"status: {v.status}"]
    if v.tractable:
        lines.append(f"class: {v.cls}")
        lines.append("witness T:")
        lines += _matrix_lines(v.witness_T)
    else:
        lines.append(f"rule: {v.hard_evidence['rule']}")
        lines.append(f"because: {v.hard_evidence['cite']}")
        lines.append("signatures: " + ", ".join(v.hard_evidence["signatures"]))
    lines += [f"warning: {w}" for w in v.warnings]
    _emit(cfg, payload, lines)
    return EXIT_OK


def _eval_boolean(grid, method: str, cfg: CliConfig) -> EvalReport:
    if method == "brute":
        return EvalReport(eval_bool_brute(grid, workers=cfg.workers), "Brute")
    v = classify_bool_set(list(grid.signatures.values()), cfg.tol)
    if v.tractable:
        return EvalReport(eval_bool(grid, v), f"Boolean{v.case}")
    if method == "class":
        raise ValidationError(["the grid's Boolean signature set is not tractable"])
    if len(grid.edges) > cfg.brute_cap_edges:
        raise TooLarge(f"set is not tractable and {len(grid.edges)} edges exceed the brute-force cap")
    return EvalReport(eval_bool_brute(grid, workers=cfg.workers), "Brute")


def _eval_grid(grid, method: str, cfg: CliConfig) -> EvalReport:
    if _is_boolean(grid.signatures):
        return _eval_boolean(grid, method, cfg)
    if method == "brute":
        return eval_brute(grid, cfg.workers, cfg.brute_cap_edges)
    if method == "class":
        v = classify_set(grid_signature_set(grid), cfg.tol, cfg.seed)
        if not v.tractable:
            raise ValidationError(["the grid's signature set is not tractable; use --method brute"])
        return eval_tractable(grid, v, cfg.tol)
    return eval_auto(grid, cfg.tol, cfg.workers, cfg.brute_cap_edges)


def cmd_eval(args, cfg: CliConfig) -> int:
    grid = grid_from_json(_read(args.grid))
    rep = _eval_grid(grid, args.method, cfg)
    payload = rep.to_json()
    lines = [f"value: {_num(rep.value)}", f"method: {rep.method}"]
    if args.check:
        ref = _eval_grid(grid, "brute", cfg).value
        err = abs(rep.value - ref) / max(1.0, abs(ref))
        agree = err <= 1e-6
        payload["check"] = {"brute": [ref.real, ref.imag], "agree": agree, "rel_err": err}
        lines.append(f"brute: {_num(ref)} ({'agree' if agree else 'DISAGREE'}, rel err {err:.3g})")
        _emit(cfg, payload, lines)
        return EXIT_OK if agree else EXIT_INVALID
    _emit(cfg, payload, lines)
    return EXIT_OK


def cmd_decompose(args, cfg: CliConfig) -> int:
    F = _load_one(args.path)
    if isinstance(F, MatSig) or F.domain != 3 or F.arity < 3:
        raise ValidationError(["decompose expects a symmetric signature of arity >= 3 on three letters"])
    _require_real({"F": F}, cfg.tol)
    try:
        d = decompose(F, seed=cfg.seed)
    except NotLowRank as exc:
        _emit(cfg, {"verdict": "NotLowRank", "reason": str(exc)}, ["verdict: NotLowRank", f"reason: {exc}"])
        return EXIT_OK
    if d.kind == "DegenerateRank1":
        t = d.terms[0]
        payload = {"verdict": "Degenerate", "decomposition": d.to_json()}
        lines = ["verdict: Degenerate", f"coefficient: {_num(t.coeff)}", "vector: " + ", ".join(_num(z) for z in t.vector)]
        _emit(cfg, payload, lines)
        return EXIT_OK
    try:
        c = canonicalize(F, seed=cfg.seed)
    except (NotLowRank, Degenerate) as exc:
        _emit(cfg, {"verdict": "NotLowRank", "reason": str(exc)}, ["verdict: NotLowRank", f"reason: {exc}"])
        return EXIT_OK
    form = {"A": "TypeA", "B": "TypeB"}[c.form]
    payload = {"verdict": form, "canonical": c.to_json()}
    lines = [f"verdict: {form}", f"decomposition: {d.kind}"]
    for t in d.terms:
        lines.append(f"  {_num(t.coeff)} * (" + ", ".join(_num(z) for z in t.vector) + f")^{F.arity}")
    lines.append("coefficients: " + ", ".join(_num(z) for z in c.coeffs))
    if c.form == "B":
        lines.append(f"scale: {_num(c.scale)}")
    lines.append("canonical T:")
    lines += _matrix_lines(c.T)
    _emit(cfg, payload, lines)
    return EXIT_OK


def _sig_payload(sig) -> tuple[dict, list]:
    if isinstance(sig, np.ndarray):
        payload = {"kind": "tensor", "shape": list(sig.shape), "entries": [[z.real, z.imag] for z in sig.ravel()]}
        return payload, ["asymmetric tensor (row-major):", " ".join(_num(z) for z in sig.ravel())]
    lines = [f"arity {sig.arity} on {sig.domain} letters:"]
    lines += [f"  {lab}: {_num(z)}" for lab, z in zip(sig.labels(), sig.values) if abs(z) > 0]
    return sig_to_json(sig), lines


def cmd_gadget(args, cfg: CliConfig) -> int:
    kind = args.gadget
    if kind == "signature":
        grid = grid_from_json(_read(args.path))
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always", AsymmetricResult)
            sig = gadget_signature(grid, cfg.tol)
        payload, lines = _sig_payload(sig)
        if caught:
            lines.append("warning: result is not symmetric")
    elif kind == "apply-binary":
        M = _load_one(args.matrix)
        M = M.matrix if isinstance(M, MatSig) else M.as_matrix()
        payload, lines = _sig_payload(apply_binary(M, _load_one(args.path)))
    elif kind == "z4":
        Z = realize_z_arity4(_load_one(args.path))
        payload, lines = _sig_payload(Z)
        lines.append(f"axis coefficient: {_num(Z[(2, 2, 2, 2)])}")
    elif kind == "coeffs":
        payload, lines = _sig_payload(realize_coeff_geneq(_load_one(args.path), args.a, args.b, args.c))
    else:
        grid = grid_to_boolean(grid_from_json(_read(args.path)), args.plane)
        payload = grid_to_json(grid)
        lines = [json.dumps(_round(payload), indent=2)]
    if args.out:
        Path(args.out).write_text(json.dumps(_round(payload), indent=2) + "\n")
    _emit(cfg, payload, lines)
    return EXIT_OK


def cmd_selftest(args, cfg: CliConfig) -> int:
    seed = args.selftest_seed if args.selftest_seed is not None else DEFAULT_SELFTEST_SEED
    results = run_checks(seed, args.filter)
    if not results:
        print(f"no checks match {args.filter!r}", file=sys.stderr)
        return EXIT_SELFTEST
    ok = all(r.passed for r in results)
    if cfg.output == "json":
        print(json.dumps(_round({"passed": ok, "checks": [{"name": r.name, "passed": r.passed, "detail": r.detail} for r in results]}), indent=2))
    else:
        for r in results:
            print(r.line())
        print(f"{sum(r.passed for r in results)}/{len(results)} checks passed")
    return EXIT_OK if ok else EXIT_SELFTEST


# ----------------------------------------------------------------------------
# argument parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_PARSE)


def _global_flags(p: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--tol", type=float, default=d(1e-9), help="structural zero tolerance")
    p.add_argument("--workers", type=int, default=d(1))
    p.add_argument("--seed", type=int, default=d(None), help="seed for randomized decompositions")
    p.add_argument("--output", choices=("human", "json"), default=d("human"))
    p.add_argument("--brute-cap", dest="brute_cap", type=int, default=d(BRUTE_CAP_EDGES))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="holant3", description="Classify and evaluate real symmetric Holant problems on three letters.")
    _global_flags(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("classify", parents=[common], help="classify a set of signatures")
    p.add_argument("paths", nargs="+")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("eval", parents=[common], help="evaluate a closed signature grid")
    p.add_argument("grid")
    p.add_argument("--method", choices=("auto", "brute", "class"), default="auto")
    p.add_argument("--check", action="store_true", help="also run brute force and compare")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("decompose", parents=[common], help="decompose and canonicalize one signature")
    p.add_argument("path")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("gadget", parents=[common], help="gadget constructions")
    gsub = p.add_subparsers(dest="gadget", required=True, parser_class=_Parser)
    g = gsub.add_parser("signature", parents=[common], help="contract a grid with dangling edges")
    g.add_argument("path")
    g = gsub.add_parser("apply-binary", parents=[common], help="attach a binary to every port")
    g.add_argument("matrix")
    g.add_argument("path")
    g = gsub.add_parser("z4", parents=[common], help="arity-four conjugate pair plus axis")
    g.add_argument("path")
    g = gsub.add_parser("coeffs", parents=[common], help="re-weight an orthogonal real decomposition")
    g.add_argument("path")
    g.add_argument("--a", type=float, required=True)
    g.add_argument("--b", type=float, required=True)
    g.add_argument("--c", type=float, default=None)
    g = gsub.add_parser("restrict", parents=[common], help="restrict a grid to a two-letter plane")
    g.add_argument("path")
    g.add_argument("--plane", choices=PLANES, required=True)
    for g in gsub.choices.values():
        g.add_argument("--out", help="also write the result to this file")
    p.set_defaults(func=cmd_gadget)

    p = sub.add_parser("selftest", parents=[common], help="run the acceptance checks")
    p.add_argument("--filter", default=None, help="run only checks whose name contains this text")
    p.set_defaults(func=cmd_selftest)
    return parser


def _config(ns) -> CliConfig:
    seed = ns.seed
    if seed is None:
        env = os.environ.get("HOLANT3_SEED")
        seed = int(env) if env else DEFAULT_SEED
    return CliConfig(ns.tol, ns.workers, ns.brute_cap, seed, ns.output)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    # selftest reads --seed as the check seed; everything else as the decomposition seed
    ns.selftest_seed = ns.seed if ns.command == "selftest" else None
    try:
        cfg = _config(ns)
        return ns.func(ns, cfg)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except TooLarge as exc:
        print(f"too large: {exc}", file=sys.stderr)
        return EXIT_TOO_LARGE
    except (HolantError, ValueError, KeyError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
