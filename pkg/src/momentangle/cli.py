"""Command-line interface: ``momentangle <command> INPUT [options]``.

Exit status is 0 on success, 1 when a validation or consistency check
fails and 2 when the input or the arguments cannot be used.
"""

from __future__ import annotations

import argparse
import os
import re
import sys
import warnings
from importlib import resources
from pathlib import Path
from typing import Any, Optional

from . import io as mio
from . import linalg
from .complex_structure import (cox_group_structure, default_psi, relation_matrix,
                                validate_partial_quotient, validate_psi)
from .dolbeault import CheckReport, de_rham_betti, hodge_numbers
from .errors import (BadPairing, InputError, MomentAngleError, NonPrimitiveGenerator,
                     ShapeMismatch)
from .fan import Fan, f_h_vectors, minimal_non_faces, validate_fan
from .pipeline import gate_fan, poincare_pairing_ok, random_psi_runs, run_hodge
from .polytope import (PolytopePresentation, gamma_matrix, genericity_check, normal_fan,
                       normalize_to_link, tight_complex, transversality_check)
from .ring import check_h_vector, face_ring_dimensions_direct, face_ring_quotient

FIXTURE_ENV = "MOMENTANGLE_FIXTURES"
DEFAULT_SEED = 20120501
INPUT_ERRORS = (InputError, BadPairing, ShapeMismatch)


class Failure(Exception):
    """A command finished but some check failed; carries the report."""

    def __init__(self, result: dict):
        super().__init__("check failed")
        self.result = result


# ---------------------------------------------------------------------------
# input resolution

def fixture_dirs() -> list[Path]:
    dirs = []
    env = os.environ.get(FIXTURE_ENV)
    if env:
        dirs.append(Path(env))
    dirs.append(Path(str(resources.files("momentangle") / "fixtures")))
    return dirs


def resolve_input(name: str) -> Path:
    """A path as given, else a bundled fixture (``.json`` may be omitted)."""
    p = Path(name)
    if p.is_file():
        return p
    if p.parent == Path("."):
        for d in fixture_dirs():
            for cand in (d / name, d / f"{name}.json"):
                if cand.is_file():
                    return cand
    raise InputError(f"{name}: no such file or bundled fixture")


def load_input(name: str) -> tuple[str, Any]:
    path = resolve_input(name)
    data = mio.load_json(path)
    kind = mio.detect_kind(data)
    if kind == "fan":
        return kind, mio.fan_from_dict(data, str(path))
    if kind == "polytope":
        return kind, mio.polytope_from_dict(data, str(path))
    raise InputError(f"{path}: a psi file cannot be the main input")


def parse_pairing(text: str) -> list[tuple[int, int]]:
    """``"(1,2)(3,4)"`` to 0-based pairs."""
    compact = text.replace(" ", "")
    pairs = re.findall(r"\((\d+),(\d+)\)", compact)
    if not pairs or "".join(f"({a},{b})" for a, b in pairs) != compact:
        raise BadPairing(f"cannot parse pairing {text!r}; expected e.g. \"(1,2)(3,4)\"")
    out = [(int(a) - 1, int(b) - 1) for a, b in pairs]
    if any(i < 0 for pair in out for i in pair):
        raise BadPairing("pairing indices are 1-based")
    return out


def fan_from_input(kind: str, obj: Any, notes: list[str]) -> Fan:
    if kind == "fan":
        return obj
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        fan = normal_fan(obj)
    notes.extend(str(w.message) for w in caught)
    notes.append("fan is the normal fan of the polytope")
    if fan.ghosts:
        notes.append("redundant rows " + ", ".join(str(g + 1) for g in sorted(fan.ghosts))
                     + " are ghost vertices")
    return fan


def psi_choice(args, fan: Fan):
    if args.psi and args.pairing:
        raise InputError("give at most one of --psi and --pairing")
    if args.psi:
        psi = mio.read_psi(resolve_input(args.psi))
        rep = validate_psi(fan, psi)
        if not rep.valid:
            raise InputError(f"{args.psi}: invalid psi: " + "; ".join(rep.diagnostics))
        return psi, None
    if args.pairing:
        return None, parse_pairing(args.pairing)
    return None, None


# ---------------------------------------------------------------------------
# commands

def cmd_validate(args) -> dict:
    kind, obj = load_input(args.input)
    if kind == "fan":
        report = validate_fan(obj)
        result = {"kind": "fan", "n": obj.n, "m": obj.m, "ghosts": sorted(g + 1 for g in obj.ghosts)
                  if report.is_simplicial else [], **report.as_dict()}
        if report.is_simplicial and report.is_complete:
            f, h = f_h_vectors(obj.complex, obj.n)
            result["f_vector"], result["h_vector"] = f, h
            result["minimal_non_faces"] = [sorted(i + 1 for i in s) for s in minimal_non_faces(obj.complex)]
        ok = report.is_simplicial and (report.is_complete or args.assume_fan)
    else:
        report = genericity_check(obj)
        result = {"kind": "polytope", "n": obj.n, "m": obj.m, "generic": report.generic,
                  "full_dimensional": report.full_dimensional,
                  "redundant_rows": sorted(i + 1 for i in report.redundant),
                  "vertices": [list(v) for v in report.vertices],
                  "tight_sets": [sorted(i + 1 for i in t) for t in report.tight_sets],
                  "diagnostics": report.diagnostics}
        ok = report.generic
    if not ok:
        raise Failure(result)
    return result


def _hodge_run(args, need_betti: bool):
    kind, obj = load_input(args.input)
    notes: list[str] = []
    fan = fan_from_input(kind, obj, notes)
    psi, pairing = psi_choice(args, fan)
    run = run_hodge(fan, psi=psi, pairing=pairing, allow_singular=args.allow_singular,
                    assume_fan=args.assume_fan, factorize=not getattr(args, "no_factorize", False),
                    with_betti=need_betti)
    run.notes[:0] = notes
    return run


def _psi_json(psi) -> list:
    return mio.psi_to_dict(psi)["psi"]


def cmd_hodge(args) -> dict:
    run = _hodge_run(args, need_betti=True)
    result = {
        "n": run.fan.n, "m": run.fan.m, "ell": run.ell, "ghosts": run.ghosts,
        "complex_dimension": run.hodge.dimension,
        "hodge": run.hodge.table,
        "nonzero": {f"{p},{q}": v for (p, q), v in sorted(run.hodge.nonzero().items())},
        "ring_dimensions": run.ring.dims()[: run.fan.n + 1],
        "psi": _psi_json(run.psi),
        "chern_matrix": run.chern,
        "chern_kernel_dimension": run.model.chern_kernel_dimension(),
        "checks": run.checks.as_dict(),
        "notes": run.notes,
    }
    if args.plot:
        from .plotting import plot_hodge_diamond
        result["figure"] = str(plot_hodge_diamond(run.hodge, args.plot))
    if not run.checks.passed:
        raise Failure(result)
    return result


def cmd_betti(args) -> dict:
    kind, obj = load_input(args.input)
    notes: list[str] = []
    fan = fan_from_input(kind, obj, notes)
    _, more = gate_fan(fan, args.allow_singular, args.assume_fan)
    ring = face_ring_quotient(fan)
    betti = de_rham_betti(ring, relation_matrix(fan))
    top = fan.m + fan.n
    dual = all(betti[k] == betti[top - k] for k in range(top + 1))
    result = {"n": fan.n, "m": fan.m, "betti": betti.numbers, "euler": betti.euler(),
              "poincare_duality": dual, "notes": notes + more}
    if args.plot:
        from .plotting import plot_betti
        result["figure"] = str(plot_betti(betti, args.plot))
    if not dual or betti[0] != 1:
        raise Failure(result)
    return result


def cmd_quadrics(args) -> dict:
    kind, P = load_input(args.input)
    if kind != "polytope":
        raise InputError("quadrics needs a polytope presentation")
    Q = gamma_matrix(P)
    report = genericity_check(P)
    K = tight_complex(P, report)
    trans = transversality_check(Q, K)
    result = {
        "gamma": Q.gamma, "rhs": Q.rhs, "equations": Q.equations(),
        "generic": report.generic, "redundant_rows": sorted(i + 1 for i in report.redundant),
        "transverse": trans.transverse,
        "witness": sorted(i + 1 for i in trans.witness) if trans.witness is not None else None,
        "diagnostics": report.diagnostics,
    }
    if args.link:
        if report.generic:
            L = normalize_to_link(P)
            result["link"] = {"D": L.D, "scaling": L.scaling, "sphere": [1] * P.m,
                              "equations": [_homogeneous(row) for row in L.D]
                              + [" + ".join(f"|z{k + 1}|^2" for k in range(P.m)) + " = 1"]}
        else:
            result["link"] = None
    if not report.generic:
        raise Failure(result)
    return result


def _homogeneous(row) -> str:
    terms = [f"{c}*|z{k + 1}|^2" for k, c in enumerate(row) if c]
    return (" + ".join(terms).replace("+ -", "- ") or "0") + " = 0"


def cmd_normal_fan(args) -> dict:
    kind, P = load_input(args.input)
    if kind != "polytope":
        raise InputError("normal-fan needs a polytope presentation")
    notes: list[str] = []
    fan = fan_from_input(kind, P, notes)
    out = mio.fan_to_dict(fan)
    if args.out:
        Path(args.out).write_text(mio.dumps(out) + "\n")
    return {"fan": out, "notes": notes}


def cmd_cox(args) -> dict:
    kind, obj = load_input(args.input)
    fan = fan_from_input(kind, obj, [])
    report = validate_fan(fan)
    if not (report.is_simplicial and (report.is_complete or args.assume_fan)):
        raise Failure({"fan": report.as_dict()})
    cox = cox_group_structure(fan)
    return {"torus_rank": cox.torus_rank, "finite_part": cox.finite_part,
            "is_regular": report.is_regular}


# ---------------------------------------------------------------------------
# check: the whole invariant suite on one input

def _fan_checks(fan: Fan, rep: CheckReport, args, notes: list[str]) -> dict:
    info: dict = {}
    report = validate_fan(fan)
    rep.record("fan_simplicial", report.is_simplicial, "; ".join(report.diagnostics))
    rep.record("fan_complete", report.is_complete, "; ".join(report.diagnostics))
    info["fan"] = report.as_dict()
    if not (report.is_simplicial and report.is_complete):
        return info
    K = fan.complex
    n = fan.n
    f, h = f_h_vectors(K, n)
    rep.record("dehn_sommerville", h == h[::-1], f"h-vector {h} is not symmetric")
    ring = face_ring_quotient(fan, check=False)
    hv = check_h_vector(ring, K, n)
    rep.record("ring_dimensions_equal_h_vector", hv.passed, hv.message)
    rep.record("ring_total_dimension", sum(ring.dims()) == (f[-1] if n else 1))
    rep.record("ghost_classes_vanish", all(ring.variable_class(g).is_zero() for g in fan.ghosts))
    info["ring_dimensions"] = ring.dims()
    info["h_vector"] = h
    if fan.m - n <= 3 and n <= 3:
        rep.record("ring_oracle_dimensions", face_ring_dimensions_direct(fan) == ring.dims())
    if report.is_regular:
        rep.record("poincare_pairing", poincare_pairing_ok(ring))
    if fan.is_integral:
        try:
            cox = cox_group_structure(fan)
            info["cox"] = {"torus_rank": cox.torus_rank, "finite_part": cox.finite_part}
            if report.is_regular:
                rep.record("cox_finite_part_trivial", not cox.finite_part)
        except NonPrimitiveGenerator as exc:
            notes.append(f"cox group skipped: {exc}")

    if not report.is_regular and not args.allow_singular:
        notes.append("complex-structure checks skipped: the fan is singular (use --allow-singular)")
        return info
    target = fan
    if (fan.m - n) % 2:
        target = fan.add_ghost()
        notes.append("m - n is odd: complex-structure checks use the fan with one ghost vertex appended")
    ring2 = ring if target is fan else face_ring_quotient(target, check=False)
    psi = default_psi(target)
    rep.record("default_psi_valid", validate_psi(target, psi).valid)
    pq = validate_partial_quotient(target, [], psi)
    rep.record("partial_quotient_k0_agrees", pq.valid == validate_psi(target, psi).valid)
    run = run_hodge(target, psi=psi, ring=ring2, gated=True)
    rep.merge(run.checks)
    rep.record("d_squared_zero", run.model.check_d_squared())
    if target.m <= 8:
        rep.record("eta_factorization_oracle",
                   hodge_numbers(run.model, factorize=False).table == run.hodge.table)
    for r in random_psi_runs(target, args.samples, args.seed, ring=ring2):
        rep.merge(r.checks, prefix="random_psi.")
    info["hodge"] = run.hodge.table
    info["betti"] = run.betti.numbers if run.betti else None
    return info


def cmd_check(args) -> dict:
    kind, obj = load_input(args.input)
    rep = CheckReport()
    notes: list[str] = []
    info: dict = {"kind": kind}
    if kind == "polytope":
        P: PolytopePresentation = obj
        Q = gamma_matrix(P)
        rep.record("gamma_annihilates_A",
                   linalg.is_zero_matrix(linalg.matmul([list(r) for r in Q.gamma],
                                                       [list(r) for r in P.A], P.m)) if Q.gamma else True)
        rep.record("gamma_rank", (linalg.rank([list(r) for r in Q.gamma]) if Q.gamma else 0) == P.m - P.n)
        g = genericity_check(P)
        trans = transversality_check(Q, tight_complex(P, g))
        rep.record("transversality_iff_generic", trans.transverse == g.generic)
        if g.generic:
            rep.record("vertices_simple", all(len(t) == P.n for t in g.tight_sets))
        info["generic"] = g.generic
        if g.generic:
            info.update(_fan_checks(fan_from_input(kind, P, notes), rep, args, notes))
    else:
        info.update(_fan_checks(obj, rep, args, notes))
    info["checks"] = rep.as_dict()
    info["notes"] = notes
    if not rep.passed:
        raise Failure(info)
    return info


# ---------------------------------------------------------------------------
# output

def _flatten(prefix: str, obj: Any, out: list[str]) -> None:
    if isinstance(obj, dict):
        for k in sorted(obj):
            _flatten(f"{prefix}.{k}" if prefix else str(k), obj[k], out)
    elif isinstance(obj, list) and obj and all(isinstance(x, list) for x in obj):
        for i, row in enumerate(obj):
            out.append(f"{prefix}[{i}]\t" + "\t".join(str(x) for x in row))
    elif isinstance(obj, list):
        out.append(f"{prefix}\t" + "\t".join(str(x) for x in obj))
    else:
        out.append(f"{prefix}\t{obj}")


def render_table(command: str, result: dict) -> str:
    """Tab-delimited ``key<TAB>value`` lines; the Hodge table as a p x q grid first."""
    result = mio.to_jsonable(result)
    lines: list[str] = []
    if command == "hodge" and "hodge" in result:
        rows = result["hodge"]
        lines.append("p\\q\t" + "\t".join(str(q) for q in range(len(rows))))
        lines.extend(f"{p}\t" + "\t".join(str(v) for v in row) for p, row in enumerate(rows))
        result = {k: v for k, v in result.items() if k not in ("hodge", "nonzero")}
    _flatten("", result, lines)
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="momentangle",
                                     description="Exact invariants of moment-angle manifolds from fans or polytopes.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, helptext, **extra):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("input", help="fan or polytope JSON file, or the name of a bundled fixture")
        p.add_argument("--output", choices=("json", "table"), default="json")
        p.add_argument("--assume-fan", action="store_true",
                       help="treat the fan as complete without verifying it")
        p.add_argument("--allow-singular", action="store_true",
                       help="run the complex-structure pipeline on a singular fan")
        for flag, kw in extra.items():
            p.add_argument(flag, **kw)
        return p

    psi_opts = {"--pairing": {"help": 'pairs of kernel-basis indices, e.g. "(1,2)(3,4)"'},
                "--psi": {"help": "psi matrix JSON file"}}
    add("validate", "check a fan or a polytope presentation")
    add("hodge", "Hodge numbers and their consistency checks", **psi_opts,
        **{"--plot": {"help": "write a Hodge diamond figure to this path"},
           "--no-factorize": {"action": "store_true",
                              "help": "row reduce the full model instead of splitting off eta"}})
    add("betti", "Betti numbers from the de Rham model",
        **{"--plot": {"help": "write a Betti bar chart to this path"}})
    add("quadrics", "quadric presentation, genericity and transversality",
        **{"--link": {"action": "store_true", "help": "also give the homogeneous link form"}})
    add("normal-fan", "normal fan of a polytope presentation",
        **{"--out": {"help": "also write the fan JSON to this path"}})
    add("cox", "rank and finite part of the Cox group")
    add("check", "run the full invariant suite on one input",
        **{"--seed": {"type": int, "default": DEFAULT_SEED, "help": "seed for random psi choices"},
           "--samples": {"type": int, "default": 4, "help": "number of random psi choices"}})
    return parser


COMMANDS = {"validate": cmd_validate, "hodge": cmd_hodge, "betti": cmd_betti,
            "quadrics": cmd_quadrics, "normal-fan": cmd_normal_fan, "cox": cmd_cox,
            "check": cmd_check}


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    doc: dict = {"command": args.command, "input": args.input}
    try:
        doc["result"] = COMMANDS[args.command](args)
        doc["status"] = "ok"
        code = 0
    except Failure as exc:
        doc["result"] = exc.result
        doc["status"] = "failed"
        code = 1
    except INPUT_ERRORS as exc:
        doc["status"] = "input-error"
        doc["error"] = {"type": type(exc).__name__, "message": str(exc)}
        code = 2
    except MomentAngleError as exc:
        doc["status"] = "failed"
        doc["error"] = {"type": type(exc).__name__, "message": str(exc)}
        code = 1
    if "error" in doc:
        print(f"momentangle: {doc['error']['type']}: {doc['error']['message']}", file=sys.stderr)
    if args.output == "table":
        if "result" in doc:
            print(render_table(args.command, doc["result"]))
        print(f"status\t{doc['status']}")
    else:
        print(mio.dumps(doc))
    return code
