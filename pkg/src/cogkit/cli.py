"""Command line entry point.

Every command prints a key-sorted JSON report on stdout (or a one-line
verdict with ``--quiet``).  Exit codes: 0 pass, 1 mathematical violation,
2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from .assembly import AssemblyError, CompatibleSystem, assemble_E, cubical_chain_complex
from .complexes import Violation, validate_cog, validate_morphism_to_group
from .development import (
    DevelopmentError,
    SearchBudgetExceeded,
    develop,
    equivariant_iso,
    check_equivariant_iso,
    gscwol_of_action,
    local_development,
    local_development_is_cone,
)
from .complexes import induce_from_action
from .fixtures import fixture_projects
from .homology import chain_from_delta, homology, simplicial_chain_complex
from .io import ProjectError, dump_report, label, parse_project, to_jsonable
from .scwol import realization

COMMANDS = ("validate", "induce", "develop", "develop-block", "roundtrip", "assemble", "compat-check", "homology", "fixtures")


class UsageError(ValueError):
    pass


def _violations(vs):
    return [v.to_json() for v in vs]


def _pick(names, wanted, what):
    if wanted:
        if wanted not in names:
            raise UsageError(f"unknown {what} {wanted!r}; available: {', '.join(names)}")
        return wanted
    if len(names) != 1:
        raise UsageError(f"name a {what}; available: {', '.join(names) or '(none)'}")
    return names[0]


def _write_dot(path, S, lab=label):
    if path:
        Path(path).write_text(S.to_dot(lab) + "\n")


def _homology_json(D):
    H = homology(chain_from_delta(D))
    return {"groups": str(H), "degrees": H.to_json(), "euler": D.euler_characteristic()}


def _simplex_of(cog, text):
    """Resolve ``u,w`` (vertex names) or ``#n`` (index into the base objects)."""
    objs = cog.base.objects
    if text.startswith("#"):
        n = int(text[1:])
        if not 0 <= n < len(objs):
            raise UsageError(f"simplex index {n} out of range")
        return objs[n]
    s = tuple(sorted(text.split(",")))
    if s not in set(objs):
        raise UsageError(f"{text!r} is not a simplex of the base")
    return s


# ---------------------------------------------------------------- commands


def cmd_validate(P, args):
    out, summary = [], {"cogs": {}, "witnesses": {}}
    for name in P.cog_names():
        C, F = P.cog(name)
        vs = validate_cog(C)
        if P._cog_nodes[name].get("expect_nontrivial_twist") and not C.has_nontrivial_twist():
            vs.append(Violation("expected-nontrivial-twist", (name,), "every twisting element is trivial"))
        out += vs
        summary["cogs"][name] = {
            "objects": len(C.base.objects),
            "arrows": len(C.base.arrows),
            "nontrivial_twists": len(C.twists),
            "violations": len(vs),
        }
    for name in P.witness_names():
        M = P.witness(name)
        r = validate_morphism_to_group(M)
        out += r.violations
        summary["witnesses"][name] = {
            "valid": r.valid,
            "injective_on_local_groups": r.injective_on_local_groups,
            "violations": len(r.violations),
        }
    return out, summary


def cmd_induce(P, args):
    name = _pick(sorted(P.actions), args.name, "action")
    cog, F, data = induce_from_action(P.actions[name], args.policy)
    vs = validate_cog(cog) + validate_morphism_to_group(F).violations
    _write_dot(args.dot, cog.base)
    S = cog.base
    summary = {
        "action": name,
        "policy": data.policy,
        "subdivisions": data.subdivisions,
        "quotient_f_vector": data.quotient.f_vector(),
        "local_group_orders": {label(o): cog.group(o).order for o in S.objects},
        "twists": [
            {"b": label(b[1]) + " -> " + label(b[0]), "a": label(a[1]) + " -> " + label(a[0]), "element": str(g)}
            for (b, a), g in sorted(cog.twists.items())
        ],
        "morphism_injective": F.is_injective_on_local_groups(),
    }
    return vs, summary


def _witness_for(P, cog_name, wname):
    C, F = P.cog(cog_name)
    if wname:
        M = P.witness(wname)
        if M.cog is not C:
            raise UsageError(f"witness {wname!r} is not a morphism from {cog_name!r}")
        return C, M
    if F is not None:
        return C, F
    mine = [w for w in P.witness_names() if P._witness_nodes[w]["cog"] == cog_name]
    if len(mine) != 1:
        raise UsageError(f"name a witness for {cog_name!r}")
    return C, P.witness(mine[0])


def cmd_develop(P, args):
    if args.name in P.witness_names() and args.name not in P.cog_names() and not args.witness:
        # `develop project.json WITNESS` names the witness only
        args.witness, args.name = args.name, P._witness_nodes[args.name]["cog"]
    cog_name = _pick(P.cog_names(), args.name, "cog")
    C, M = _witness_for(P, cog_name, args.witness)
    r = validate_morphism_to_group(M)
    if not r.is_developability_witness:
        vs = r.violations or [Violation("not-injective", (cog_name,), "morphism is not injective on local groups")]
        return vs, {"cog": cog_name, "developable_witness": False}
    D = develop(C, M)
    _write_dot(args.dot, D.scwol, lambda o: f"{o[0]} {label(o[1])}")
    R = D.realization()
    summary = {
        "cog": cog_name,
        "group_order": M.target.order,
        "objects": len(D.scwol.objects),
        "arrows": len(D.scwol.arrows),
        "cells": R.counts(),
        "homology": _homology_json(R),
    }
    return [], summary


def cmd_develop_block(P, args):
    cog_name = _pick(P.cog_names(), args.name, "cog")
    C, _ = P.cog(cog_name)
    sigmas = [_simplex_of(C, args.simplex)] if args.simplex else list(C.base.objects)
    out, blocks = [], {}
    for s in sigmas:
        D = local_development(C, s)
        R = D.realization()
        cone = local_development_is_cone(D)
        if not cone:
            out.append(Violation("block-not-a-cone", (s,), "local development is not a simplicial cone"))
        blocks[label(s)] = {"cells": R.counts(), "cone": cone, "homology": _homology_json(R)}
        if args.dot and len(sigmas) == 1:
            _write_dot(args.dot, D.scwol, lambda o: f"{o[0]} {label(o[1])}")
    return out, {"cog": cog_name, "blocks": blocks}


def cmd_roundtrip(P, args):
    name = _pick(sorted(P.actions), args.name, "action")
    cog, F, data = induce_from_action(P.actions[name], args.policy)
    D = develop(cog, F)
    target = gscwol_of_action(data.action)
    try:
        iso = equivariant_iso(D, target, budget=args.budget)
    except SearchBudgetExceeded as e:
        return [Violation("search-budget-exceeded", (name,), str(e))], {"action": name}
    ok = iso is not None and check_equivariant_iso(D, target, iso)
    summary = {
        "action": name,
        "policy": data.policy,
        "subdivisions": data.subdivisions,
        "development_cells": D.realization().counts(),
        "complex_cells": realization(target.scwol).counts(),
        "isomorphism": sorted([f"{o[0]} {label(o[1])}", label(v)] for o, v in iso.items()) if ok else None,
    }
    out = [] if ok else [Violation("no-equivariant-isomorphism", (name, data.policy), "development differs from the action")]
    return out, summary


def cmd_assemble(P, args):
    cog_name = _pick(P.cog_names(), args.name, "cog")
    C, _ = P.cog(cog_name)
    sigmas = [_simplex_of(C, args.simplex)] if args.simplex else list(C.base.objects)
    out, spaces = [], {}
    for s in sigmas:
        E = assemble_E(C, s, kind=args.fibres, strict=False)
        out += E.violations
        R = E.development.realization()
        entry = {
            "cells": E.counts(),
            "development_cells": R.counts(),
            "stages": [{"k": st.k, "cells": st.cells, "violations": len(st.violations)} for st in E.stages],
            "collapsed_facets": sum(1 for g in E.gluing_table() if g.collapsed),
        }
        if E.counts() != R.counts():
            out.append(Violation("cell-count-mismatch", (s,), f"{E.counts()} != {R.counts()}"))
        if args.fibres == "point":
            Hc = homology(cubical_chain_complex(E))
            Hd = homology(chain_from_delta(R))
            entry["cubical_homology"] = str(Hc)
            entry["delta_homology"] = str(Hd)
            if Hc != Hd:
                out.append(Violation("homology-mismatch", (s,), f"{Hc} != {Hd}"))
        spaces[label(s)] = entry
    return out, {"cog": cog_name, "fibres": args.fibres, "spaces": spaces}


def cmd_compat(P, args):
    cog_name = _pick(P.cog_names(), args.name, "cog")
    C, _ = P.cog(cog_name)
    CS = CompatibleSystem(C, args.fibres, strict=False)
    pre = [v for E in CS.spaces.values() for v in E.violations]
    R = CS.check()
    summary = R.to_json()
    summary.pop("violations")
    summary["spaces"] = {label(s): n for s, n in R.spaces.items()}
    summary.update({"cog": cog_name, "fibres": args.fibres})
    return pre + R.violations, summary


def cmd_homology(P, args):
    if args.name in P.complexes or (not args.name and not P.cog_names()):
        name = _pick(sorted(P.complexes), args.name, "complex")
        H = homology(simplicial_chain_complex(P.complexes[name]))
        return [], {"complex": name, "homology": str(H), "degrees": H.to_json()}
    args.witness = getattr(args, "witness", None)
    args.dot = None
    vs, summary = cmd_develop(P, args)
    return vs, {"cog": summary.get("cog"), "homology": summary.get("homology")}


HANDLERS = {
    "validate": cmd_validate,
    "induce": cmd_induce,
    "develop": cmd_develop,
    "develop-block": cmd_develop_block,
    "roundtrip": cmd_roundtrip,
    "assemble": cmd_assemble,
    "compat-check": cmd_compat,
    "homology": cmd_homology,
}


def run(command, args):
    """Run one command; returns ``(report, exit_code)``."""
    start = time.perf_counter()
    report = {"command": command}
    if command == "fixtures":
        outdir = Path(args.project)
        outdir.mkdir(parents=True, exist_ok=True)
        files = {}
        for fname, data in sorted(fixture_projects().items()):
            text = json.dumps(data, sort_keys=True, indent=2) + "\n"
            (outdir / fname).write_text(text)
            files[fname] = len(text)
        report.update(verdict="pass", violations=[], summary={"files": files}, inputs_digest=None)
        code = 0
    else:
        try:
            P = parse_project(args.project)
            report["inputs_digest"] = P.digest(command, *(f"{k}={v}" for k, v in sorted(vars(args).items()) if k not in ("project", "quiet", "dot")))
            vs, summary = HANDLERS[command](P, args)
            report.update(
                verdict="pass" if not vs else "fail",
                violations=_violations(vs),
                summary=to_jsonable(summary),
            )
            code = 0 if not vs else 1
        except (ProjectError, UsageError) as e:
            report.update(verdict="error", violations=[], summary={"error": str(e)}, inputs_digest=None)
            code = 2
        except (DevelopmentError, AssemblyError, ValueError) as e:
            report.update(verdict="fail", violations=[{"kind": type(e).__name__, "witness": [], "detail": str(e)}], summary={})
            code = 1
    report["timing"] = {"seconds": round(time.perf_counter() - start, 4)}
    return report, code


def build_parser():
    p = argparse.ArgumentParser(prog="cogkit", description="Complexes of groups: validate, develop, assemble.")
    p.add_argument("--quiet", action="store_true", help="print only the verdict line")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, help, with_name=True):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("project", help="project JSON file" if name != "fixtures" else "output directory")
        if with_name:
            sp.add_argument("name", nargs="?", help="object in the project to act on")
        sp.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS)
        return sp

    add("validate", "check every complex of groups and witness", with_name=False)
    for name in ("induce", "roundtrip"):
        sp = add(name, f"{name} a named action")
        sp.add_argument("--policy", default="canonical", help="canonical | adversarial | random:SEED")
        if name == "induce":
            sp.add_argument("--dot", help="write the quotient scwol as DOT")
        else:
            sp.add_argument("--budget", type=int, default=200000)
    sp = add("develop", "develop a complex of groups along a witness")
    sp.add_argument("witness", nargs="?")
    sp.add_argument("--dot")
    sp = add("develop-block", "local developments of the blocks")
    sp.add_argument("--simplex", help="u,w or #index (default: every simplex)")
    sp.add_argument("--dot")
    for name in ("assemble", "compat-check"):
        sp = add(name, "assemble the spaces E(sigma)" if name == "assemble" else "check the compatible system")
        sp.add_argument("--fibres", choices=("point", "simplex"), default="point" if name == "assemble" else "simplex")
        if name == "assemble":
            sp.add_argument("--simplex")
    sp = add("homology", "homology of a named complex or of a development")
    sp.add_argument("witness", nargs="?")
    add("fixtures", "write the built-in fixture corpus", with_name=False)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    report, code = run(args.command, args)
    if args.quiet:
        print(f"{report['command']}: {report['verdict']} ({len(report['violations'])} violations)")
    else:
        print(dump_report(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
