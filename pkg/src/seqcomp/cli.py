"""Command-line interface.

Every command builds a report dict, prints it as text or JSON, and exits 0
when all verdicts pass, 1 when one fails and 2 on bad input.  Objects are
named by short strings resolved against the chosen algebra:

    k          the first simple module
    S<i>, P<i> the i-th simple / indecomposable projective (1-based)
    L          the regular module
    M<i>       the i-th module of the sampling pool
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
import time
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np

from . import catalog
from .algebra import Algebra, AlgebraError, Module, module_hom, path_algebra, truncated_poly


class InputError(ValueError):
    """Bad user input; exit code 2."""


# ---------------------------------------------------------------------------
# algebra files


def algebra_from_spec(spec: dict) -> Algebra:
    """Build an algebra from a parsed JSON document.

    Three forms are accepted: ``{"kind": "truncated", "n": 3, "p": 2}``,
    ``{"kind": "quiver", "vertices": 3, "arrows": [[1, 2], [2, 3]], "p": 2}``
    and ``{"kind": "structure", "p": 2, "structure": c, "unit": u}`` where
    ``c[i][j][k]`` is the coefficient of ``b_k`` in ``b_i b_j``.
    """
    if not isinstance(spec, dict) or "kind" not in spec:
        raise InputError("algebra document needs a 'kind' field")
    kind, p, name = spec["kind"], int(spec.get("p", 2)), spec.get("name", "")
    try:
        if kind == "truncated":
            return truncated_poly(int(spec["n"]), p, name=name)
        if kind == "quiver":
            return path_algebra(int(spec["vertices"]), spec.get("arrows", []), p, name=name)
        if kind == "structure":
            return Algebra(spec["structure"], spec["unit"], p, spec.get("labels"), name=name,
                           idempotents=spec.get("idempotents"))
    except KeyError as exc:
        raise InputError(f"algebra document is missing {exc}") from None
    raise InputError(f"unknown algebra kind {kind!r}")


def load_algebra_file(path: str) -> Algebra:
    try:
        with open(path) as fh:
            spec = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    alg = algebra_from_spec(spec)
    catalog.register(spec.get("name") or path, alg)
    return alg


def resolve_algebra(args) -> Algebra:
    if getattr(args, "algebra_file", None):
        return load_algebra_file(args.algebra_file)
    try:
        return catalog.get(args.algebra)
    except KeyError as exc:
        raise InputError(str(exc.args[0])) from None


def resolve_module(alg: Algebra, token: str) -> Module:
    projs = alg.proj_classes()
    try:
        if token == "k":
            return projs[0].simple
        if token == "L":
            return alg.regular_module()
        idx = int(token[1:]) - 1
        if token[0] == "S":
            return projs[idx].simple
        if token[0] == "P":
            return projs[idx].module
        if token[0] == "M":
            return catalog.module_pool(alg)[idx]
    except (ValueError, IndexError):
        pass
    raise InputError(f"cannot resolve object {token!r} over {alg.name}")


def parse_window(text: str) -> tuple:
    try:
        a, b = (int(t) for t in text.split(","))
    except ValueError:
        raise InputError(f"window must look like '-4,4', got {text!r}") from None
    if a > b:
        raise InputError("window is empty")
    return a, b


# ---------------------------------------------------------------------------
# tasks; each returns a report dict with a "verdicts" mapping


def task_algebra_define(args) -> dict:
    try:
        alg = load_algebra_file(args.file)
    except AlgebraError as exc:
        return {"task": "algebra define", "file": args.file, "error": str(exc), "verdicts": {"valid": False}}
    return {"task": "algebra define", "file": args.file, "name": alg.name, "dim": alg.dim, "p": alg.p,
            "projectives": len(alg.proj_classes()), "verdicts": {"valid": True}}


def task_algebra_list(args) -> dict:
    rows = []
    for nm in catalog.names():
        alg = catalog.get(nm)
        rows.append({"name": nm, "dim": alg.dim, "p": alg.p, "description": catalog.DESCRIPTIONS.get(nm, "")})
    return {"task": "algebra list", "algebras": rows, "verdicts": {}}


def _hom_summary(hs, with_basis: bool) -> dict:
    out = {"dim": hs.dim}
    for key in ("depth", "certified", "reason", "index", "ideal_dim"):
        if key in hs.meta and isinstance(hs.meta[key], (int, bool, str)):
            out[key] = hs.meta[key]
    if with_basis:
        out["basis"] = [_as_list(b) for b in hs.basis]
    return out


def _as_list(obj):
    if isinstance(obj, np.ndarray):
        return obj.astype(int).tolist()
    maps = getattr(obj, "maps", None)
    if maps is not None:
        return {str(n): np.asarray(m).astype(int).tolist() for n, m in sorted(maps.items())}
    return str(obj)


def task_hom(args) -> dict:
    from .complexes import shift, stalk
    from .derived import dbhom, khom
    alg = resolve_algebra(args)
    m, n = resolve_module(alg, args.source), resolve_module(alg, args.target)
    kind, s = args.kind, args.shift
    if kind == "module":
        hs = module_hom(m, n)
    elif kind == "k":
        hs = khom(stalk(m, 0), shift(stalk(n, 0), s))
    elif kind == "db":
        hs = dbhom(stalk(m, 0), stalk(n, 0), s)
    elif kind == "stable":
        from .singularity import stable_hom
        hs = stable_hom(m, n)
    elif kind == "sg":
        from .singularity import sg_hom
        hs = sg_hom(m, n, s, args.horizon)
    elif kind == "completion":
        return task_complete_hom(args)
    else:
        raise InputError(f"unknown hom kind {kind!r}")
    return {"task": f"hom {kind}", "algebra": alg.name, "source": args.source, "target": args.target,
            "shift": s, **_hom_summary(hs, args.basis), "verdicts": {}}


def task_resolve(args) -> dict:
    from .complexes import stalk
    from .derived import pc_certificate, resolve_complex
    alg = resolve_algebra(args)
    m = resolve_module(alg, args.object)
    r = resolve_complex(stalk(m, 0))
    ranks = {str(-k): r.term(-k).dim for k in range(args.horizon + 1)}
    certs = {str(i): pc_certificate(r, i).passed for i in range(args.horizon + 1)}
    return {"task": "resolve", "algebra": alg.name, "object": args.object, "term_dims": ranks,
            "verdicts": {f"pseudo-coherent at {i}": v for i, v in certs.items()}}


def task_cauchy_check(args) -> dict:
    from .complexes import stalk
    from .completion import CompletionError, is_cauchy, truncation_sequence
    alg = resolve_algebra(args)
    m = resolve_module(alg, args.object)
    x = truncation_sequence(stalk(m, 0))
    compacts = [stalk(pi.module, d, name=f"P{pi.index + 1}[{-d}]") for pi in alg.proj_classes() for d in (-1, 0, 1)]
    try:
        rep = is_cauchy(x, compacts, args.horizon)
    except CompletionError as exc:
        return {"task": "cauchy check", "object": args.object, "error": str(exc), "verdicts": {"cauchy": False}}
    ok = all(rep.indices[k] <= rep.certified.get(k, args.horizon) for k in rep.indices)
    return {"task": "cauchy check", "algebra": alg.name, "object": args.object, "empirical": rep.indices,
            "certified": rep.certified, "verdicts": {"cauchy": True, "empirical <= certified": ok}}


def task_complete_hom(args) -> dict:
    from .complexes import stalk
    from .completion import completion_hom, shifted, truncation_sequence
    alg = resolve_algebra(args)
    m, n = resolve_module(alg, args.source), resolve_module(alg, args.target)
    x, y = truncation_sequence(stalk(m, 0)), truncation_sequence(stalk(n, 0))
    hs = completion_hom(x, shifted(y, args.shift))
    return {"task": "complete hom", "algebra": alg.name, "source": args.source, "target": args.target,
            "shift": args.shift, "dim": hs.dim, "i_star": hs.i_star, "j_star": hs.j_star, "verdicts": {}}


def task_pgroup_classify(args) -> dict:
    from .pgroup import PGroupError, classify_colimit, parse_rule
    if args.rule.lstrip().startswith("{"):
        try:
            spec = json.loads(args.rule)
        except json.JSONDecodeError as exc:
            raise InputError(f"bad rule JSON: {exc}") from None
    else:
        spec = {"rule": args.rule, "p": args.p}
    try:
        seq = parse_rule(spec, args.p)
        t = classify_colimit(seq, args.horizon)
    except KeyError as exc:
        raise InputError(f"rule is missing {exc}") from None
    except PGroupError as exc:
        return {"task": "pgroup classify", "rule": spec, "error": f"{type(exc).__name__}: {exc}",
                "verdicts": {"classified": False}}
    return {"task": "pgroup classify", "rule": spec, "type": t.to_dict(), "display": repr(t),
            "verdicts": {"classified": True}}


def task_sg_hom(args) -> dict:
    args.kind = "sg"
    rep = task_hom(args)
    rep["task"] = "sg hom"
    return rep


# -- verify ----------------------------------------------------------------


def _sample_pairs(alg: Algebra, rng: np.random.Generator, count: int):
    from .complexes import random_complex
    pool = catalog.module_pool(alg)
    return [(random_complex(alg, rng, pool), random_complex(alg, rng, pool)) for _ in range(count)]


def verify_main_theorem(args) -> dict:
    from .completion import verify_main_theorem as run
    alg = resolve_algebra(args)
    rng = np.random.default_rng(args.seed)
    lo, hi = parse_window(args.window)
    rep = run(alg, _sample_pairs(alg, rng, args.sample), range(lo, hi + 1))
    return {"task": "verify main-theorem", "algebra": alg.name, "window": [lo, hi], "sample": args.sample,
            "seed": args.seed, "failures": [p.index for p in rep.failures],
            "dims": [{str(k): v for k, v in p.dims_derived.items()} for p in rep.pairs],
            "verdicts": {"dimensions and composition match": rep.passed}}


def verify_morphic(args) -> dict:
    from .morphic import verify_morphic as run
    alg = resolve_algebra(args)
    rep = run(alg, seed=args.seed, completion=True)
    return {"task": "verify morphic", "algebra": alg.name, "seed": args.seed,
            "checked": {c.name: c.checked for c in rep.checks},
            "failures": {c.name: c.failures[:5] for c in rep.checks if c.failures},
            "verdicts": {c.name: c.passed for c in rep.checks}}


def verify_phantomless(args) -> dict:
    from .complexes import stalk
    from .completion import ml_lim1, phantomless_check, scaling_tower, truncation_sequence
    alg = resolve_algebra(args)
    verdicts, data = {}, {}
    for m in catalog.module_pool(alg):
        x = truncation_sequence(stalk(m, 0))
        res = phantomless_check(x, x, range(-1, 3))
        data[m.name] = {str(s): v.status for s, v in res.items()}
        verdicts[f"{m.name} phantomless"] = all(v.status == "vanishes" for v in res.values())
    ctl = ml_lim1(scaling_tower(2), args.horizon)
    verdicts["Z <-2- Z control fails Mittag-Leffler"] = ctl.status == "ML-fails"
    return {"task": "verify phantomless", "algebra": alg.name, "statuses": data, "verdicts": verdicts}


def verify_pgroup(args) -> dict:
    from .pgroup import CanonicalPruefer, ConstantPG, PGroup, SocleSeriesSeq, classify_colimit, random_artinian
    rng = np.random.default_rng(args.seed)
    verdicts: Dict[str, bool] = {}
    trips = []
    for k in range(args.sample):
        a = random_artinian(rng, int(rng.choice([2, 3])))
        b = classify_colimit(SocleSeriesSeq(a), max(a.finite_exponents, default=0) + args.horizon)
        trips.append({"input": a.to_dict(), "output": b.to_dict()})
        verdicts[f"round trip {k}"] = a == b
    for p in (2, 3):
        t = classify_colimit(CanonicalPruefer(p), args.horizon)
        verdicts[f"canonical-pruefer({p})"] = t.pruefer_count == 1 and not t.finite_exponents
        c = classify_colimit(ConstantPG(PGroup(p, [1, 2])), args.horizon)
        verdicts[f"constant({p})"] = c.pruefer_count == 0 and c.finite_exponents == (1, 2)
    return {"task": "verify pgroup", "seed": args.seed, "round_trips": trips, "verdicts": verdicts}


def verify_singularity(args) -> dict:
    from .singularity import is_self_injective, sg_hom
    alg = resolve_algebra(args)
    pool = catalog.module_pool(alg)
    dims = {}
    for a in pool:
        for b in pool:
            dims[f"{a.name},{b.name}"] = [sg_hom(a, b, s, args.horizon).dim for s in range(-1, 2)]
    certified = all(sg_hom(a, b, 0, args.horizon).meta["certified"] for a in pool for b in pool)
    return {"task": "verify singularity", "algebra": alg.name, "self_injective": is_self_injective(alg),
            "dims": dims, "verdicts": {"all answers certified": certified}}


def verify_pseudo_coherence(args) -> dict:
    from .complexes import stalk
    from .algebra import is_projective
    from .derived import pc_certificate, resolve_complex
    alg = resolve_algebra(args)
    verdicts = {}
    for m in catalog.module_pool(alg):
        r = resolve_complex(stalk(m, 0))
        for i in range(args.horizon + 1):
            verdicts[f"{m.name} at {i}"] = pc_certificate(r, i).passed
        if not is_projective(m):
            # a projective has no differential to corrupt
            verdicts[f"{m.name} corrupted control rejected"] = not pc_certificate(r, 2, corrupt=-1).passed
    return {"task": "verify pseudo-coherence", "algebra": alg.name, "verdicts": verdicts}


VERIFIERS: Dict[str, Callable[[argparse.Namespace], dict]] = {
    "main-theorem": verify_main_theorem,
    "morphic": verify_morphic,
    "phantomless": verify_phantomless,
    "pgroup": verify_pgroup,
    "singularity": verify_singularity,
    "pseudo-coherence": verify_pseudo_coherence,
}


def task_verify(args) -> dict:
    return VERIFIERS[args.kind](args)


def task_job(args) -> dict:
    """Run a JSON job: ``{"task": "verify", "kind": "...", "algebra": "D2", "args": [...], "params": {...}}``."""
    try:
        with open(args.file) as fh:
            job = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read job {args.file}: {exc}") from None
    if not isinstance(job, dict) or "task" not in job:
        raise InputError("job needs a 'task' field")
    # options belong to the innermost subcommand, so they go last
    argv: List[str] = str(job["task"]).split()
    if job.get("kind"):
        argv.append(str(job["kind"]))
    argv += [str(a) for a in job.get("args", [])]
    for key, val in job.get("params", {}).items():
        argv += [f"--{key}", str(val)]
    tmp = None
    if isinstance(job.get("algebra"), dict):
        with tempfile.NamedTemporaryFile("w", suffix=".json", delete=False) as fh:
            json.dump(job["algebra"], fh)
        tmp = fh.name
        argv += ["--algebra-file", tmp]
    elif job.get("algebra"):
        argv += ["--algebra", str(job["algebra"])]
    try:
        inner = build_parser().parse_args(argv)
    except SystemExit:
        raise InputError(f"job does not form a valid command: {' '.join(argv)}") from None
    try:
        return inner.func(inner)
    finally:
        if tmp is not None:
            os.unlink(tmp)


# ---------------------------------------------------------------------------
# output


def render_text(report: dict) -> str:
    lines: List[str] = []

    def walk(prefix: str, obj):
        if isinstance(obj, dict):
            for k, v in obj.items():
                walk(f"{prefix}.{k}" if prefix else str(k), v)
        elif isinstance(obj, list) and obj and isinstance(obj[0], (dict, list)):
            for i, v in enumerate(obj):
                walk(f"{prefix}[{i}]", v)
        else:
            lines.append(f"{prefix}: {json.dumps(obj) if not isinstance(obj, str) else obj}")

    verdicts = report.get("verdicts", {})
    walk("", {k: v for k, v in report.items() if k != "verdicts"})
    for k, v in verdicts.items():
        lines.append(f"[{'PASS' if v else 'FAIL'}] {k}")
    return "\n".join(lines)


def parse_text(text: str) -> dict:
    """Inverse of ``render_text`` for flat keys; used to check both formats agree."""
    out: dict = {}
    for line in text.splitlines():
        if line.startswith("[PASS] ") or line.startswith("[FAIL] "):
            out.setdefault("verdicts", {})[line[7:]] = line.startswith("[PASS]")
            continue
        key, _, val = line.partition(": ")
        try:
            out[key] = json.loads(val)
        except json.JSONDecodeError:
            out[key] = val
    return out


def flatten(report: dict) -> dict:
    """Flat form of a report matching what ``parse_text`` produces."""
    return parse_text(render_text(report))


def exit_code(report: dict) -> int:
    return 0 if all(report.get("verdicts", {}).values()) else 1


# ---------------------------------------------------------------------------
# parser


def _common(p: argparse.ArgumentParser):
    p.add_argument("--algebra", default="D2", help="catalog name (default D2)")
    p.add_argument("--algebra-file", help="JSON algebra document, registered before use")
    p.add_argument("--horizon", type=int, default=6)
    p.add_argument("--window", default="-4,4", help="degree window 'lo,hi'")
    p.add_argument("--shift", type=int, default=0)
    p.add_argument("--sample", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("text", "structured"), default="text")
    p.add_argument("--timing", action="store_true", help="add wall-clock time to the report")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="seqcomp", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    alg = sub.add_parser("algebra", help="define or list algebras")
    asub = alg.add_subparsers(dest="action", required=True)
    d = asub.add_parser("define")
    d.add_argument("file")
    _common(d)
    d.set_defaults(func=task_algebra_define)
    ls = asub.add_parser("list")
    _common(ls)
    ls.set_defaults(func=task_algebra_list)

    h = sub.add_parser("hom", help="hom dimensions of several kinds")
    h.add_argument("kind", choices=("module", "k", "db", "stable", "sg", "completion"))
    h.add_argument("source")
    h.add_argument("target")
    h.add_argument("--basis", action="store_true", help="include basis matrices")
    _common(h)
    h.set_defaults(func=task_hom)

    r = sub.add_parser("resolve", help="projective resolution of a module")
    r.add_argument("object")
    _common(r)
    r.set_defaults(func=task_resolve)

    c = sub.add_parser("cauchy", help="sequence checks")
    csub = c.add_subparsers(dest="action", required=True)
    cc = csub.add_parser("check")
    cc.add_argument("object")
    _common(cc)
    cc.set_defaults(func=task_cauchy_check)

    cp = sub.add_parser("complete", help="homs in the completion")
    cpsub = cp.add_subparsers(dest="action", required=True)
    ch = cpsub.add_parser("hom")
    ch.add_argument("source")
    ch.add_argument("target")
    _common(ch)
    ch.set_defaults(func=task_complete_hom)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("kind", choices=sorted(VERIFIERS))
    _common(v)
    v.set_defaults(func=task_verify)

    pg = sub.add_parser("pgroup", help="p-group sequences")
    pgsub = pg.add_subparsers(dest="action", required=True)
    pc = pgsub.add_parser("classify")
    pc.add_argument("rule", help="rule name or JSON rule document")
    pc.add_argument("--p", type=int, default=2)
    _common(pc)
    pc.set_defaults(func=task_pgroup_classify)

    sg = sub.add_parser("sg", help="singularity category")
    sgsub = sg.add_subparsers(dest="action", required=True)
    sh = sgsub.add_parser("hom")
    sh.add_argument("source")
    sh.add_argument("target")
    sh.add_argument("--basis", action="store_true")
    _common(sh)
    sh.set_defaults(func=task_sg_hom)

    mo = sub.add_parser("morphic", help="category of morphisms")
    mosub = mo.add_subparsers(dest="action", required=True)
    mv = mosub.add_parser("verify")
    _common(mv)
    mv.set_defaults(func=verify_morphic)

    j = sub.add_parser("job", help="run a JSON job file")
    j.add_argument("file")
    _common(j)
    j.set_defaults(func=task_job)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> tuple:
    """Parse and execute; returns ``(report, exit code)``."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return {"error": "usage"}, int(exc.code or 0) and 2
    start = time.perf_counter()
    try:
        report = args.func(args)
    except (InputError, AlgebraError) as exc:
        return {"error": str(exc), "verdicts": {}}, 2
    if args.timing:
        report["timing_s"] = round(time.perf_counter() - start, 3)
    report["_format"] = args.format
    return report, exit_code(report)


def main(argv: Optional[Sequence[str]] = None) -> int:
    report, code = run(argv)
    fmt = report.pop("_format", "text")
    if report.get("error") == "usage":
        return code
    if code == 2:
        print(f"error: {report.get('error')}", file=sys.stderr)
        return code
    if fmt == "structured":
        print(json.dumps(report, indent=2, sort_keys=False))
    else:
        print(render_text(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
