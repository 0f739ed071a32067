"""Command-line driver.

Subcommands load algebra or scenario files, run the analyses and print one
report per invocation.  Reports are JSON with sorted keys so identical
inputs give byte-identical output; --human switches to prose.  Exit codes:
0 analysis ran and passed, 1 violation or inconclusive answer, 2 usage or
input errors.
"""

import argparse
import json
import os
import sys

from . import __version__
from . import connectivity, corpus, decomposition, periodicity, steenrod
from .algebra import AlgebraDefect, Element, GradedAlgebra, verify_poincare_duality
from .periodicity import (DegreeBoundViolated, PeriodicityCertificate,
                          SearchCapExceeded, WellDefinednessFailure)
from .steenrod import ActionDefect, IsPowerOfTwo, SteenrodAction

_EXIT = {"ok": 0, "violation": 1, "inconclusive": 1, "error": 2}


class InputError(Exception):
    """Bad file, spec, or element syntax; maps to exit code 2."""


def _search_cap() -> int:
    raw = os.environ.get("PERIODICA_SEARCH_CAP")
    if raw is None:
        return periodicity.DEFAULT_SEARCH_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise InputError(f"PERIODICA_SEARCH_CAP must be an integer, got {raw!r}")
    if cap < 1:
        raise InputError("PERIODICA_SEARCH_CAP must be positive")
    return cap


def load_algebra_file(path):
    """Read {"algebra": ..., "action": ... or null} and rebuild both."""
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as e:
        raise InputError(f"cannot read {path}: {e}")
    except json.JSONDecodeError as e:
        raise InputError(f"{path} is not valid JSON: {e}")
    try:
        alg = GradedAlgebra.from_dict(doc["algebra"])
        act = None
        if doc.get("action") is not None:
            act = SteenrodAction.from_dict(alg, doc["action"])
    except (KeyError, TypeError, ValueError) as e:
        raise InputError(f"{path} does not hold an algebra document: {e}")
    return alg, act


def dump_algebra_file(alg, act) -> dict:
    return {"algebra": alg.to_dict(), "action": act.to_dict() if act else None}


def parse_element(text: str, alg) -> Element:
    """Element syntax: DEGREE:c1,c2,... in the degree basis."""
    head, sep, tail = text.partition(":")
    if not sep:
        raise InputError(f"element {text!r} must look like DEGREE:c1,c2,...")
    try:
        degree = int(head)
        coeffs = tuple(int(c) for c in tail.split(","))
    except ValueError:
        raise InputError(f"element {text!r} has non-integer entries")
    if not 1 <= degree <= alg.n:
        raise InputError(f"element degree {degree} outside 1..{alg.n}")
    if len(coeffs) != alg.dim(degree):
        raise InputError(f"degree {degree} needs {alg.dim(degree)} coordinates")
    return Element(degree, tuple(c % alg.p for c in coeffs))


def _element_payload(e: Element) -> dict:
    return {"degree": e.degree, "coeffs": list(e.coeffs)}


def _sharded_search(alg, k, cap, jobs):
    """Run the degree-k search across jobs shards; the lexicographically
    least certificate wins, and one inconclusive shard taints a miss."""
    if jobs <= 1:
        return periodicity.find_inducing_element(alg, k, cap=cap)
    best = None
    verdicts = []
    for i in range(jobs):
        out = periodicity.find_inducing_element(alg, k, cap=cap,
                                                shard_index=i, shard_count=jobs)
        if isinstance(out, PeriodicityCertificate):
            if best is None or out.element.coeffs < best.element.coeffs:
                best = out
        else:
            verdicts.append(out)
    if best is not None:
        return best
    for v in verdicts:
        if v.status == "inconclusive":
            return v
    return verdicts[0]


def _certificate_for(alg, x: Element, cap):
    """Certificate for a user-supplied element, or a refusal payload."""
    k = x.degree
    if 3 * k <= alg.n - 1:
        out = periodicity.induces_periodicity(alg, x)
        if isinstance(out, PeriodicityCertificate):
            return out, None
        return None, {"failed_degree": out.failed_degree,
                      "failed_condition": out.failed_condition}
    cert = PeriodicityCertificate(k, x, "window")
    if periodicity.verify_certificate(alg, cert):
        return cert, None
    return None, {"failed_condition": "window test failed or gap nonempty"}


def _cmd_validate(args, cap):
    alg, act = load_algebra_file(args.file)
    problems = []
    try:
        alg.validate()
    except AlgebraDefect as e:
        problems.append(f"algebra: {e}")
    duality = verify_poincare_duality(alg)
    if not duality:
        problems.append("pairing is not perfect")
    if act is not None:
        try:
            steenrod.verify_action(alg, act)
        except ActionDefect as e:
            problems.append(f"action: {e}")
    payload = {"p": alg.p, "top_degree": alg.n, "dims": list(alg.dims),
               "total_dim": alg.total_dim, "poincare_duality": duality,
               "action_present": act is not None, "problems": problems}
    status = "ok" if not problems else "violation"
    human = [f"p = {alg.p}, top degree {alg.n}, dims {list(alg.dims)}"]
    human += problems if problems else ["all checks passed"]
    return status, payload, human


def _cmd_periodicity(args, cap):
    alg, _ = load_algebra_file(args.file)
    jobs = getattr(args, "jobs", 1)
    if args.k is not None:
        ks = [args.k]
        if not 1 <= args.k <= alg.n - 1:
            raise InputError(f"--k must lie in 1..{alg.n - 1}")
    else:
        ks = list(range(1, alg.n))
    found, misses, unsure = {}, [], []
    for k in ks:
        out = _sharded_search(alg, k, cap, jobs)
        if isinstance(out, PeriodicityCertificate):
            found[k] = out
        elif out.status == "inconclusive":
            unsure.append(k)
        else:
            misses.append(k)
    payload = {
        "periods": sorted(found),
        "exhausted": misses,
        "inconclusive": unsure,
        "certificates": {str(k): {"mode": c.mode, "element": _element_payload(c.element)}
                         for k, c in sorted(found.items())},
    }
    status = "inconclusive" if unsure else "ok"
    human = []
    for k in ks:
        if k in found:
            c = found[k]
            human.append(f"k = {k}: inducing element {c.element.coeffs} ({c.mode})")
        elif k in unsure:
            human.append(f"k = {k}: inconclusive (search capped)")
        else:
            human.append(f"k = {k}: none (exhaustive)")
    return status, payload, human


def _cmd_min_period(args, cap):
    alg, _ = load_algebra_file(args.file)
    rep = periodicity.minimum_period(alg, cap=cap)
    payload = {
        "period": rep.period,
        "all_periods": list(rep.all_periods),
        "inconclusive": list(rep.inconclusive),
        "divisibility_checked": rep.divisibility_checked,
    }
    if rep.period is None:
        status = "inconclusive" if rep.inconclusive else "ok"
        human = ["no period found" + (" (some degrees inconclusive)"
                                      if rep.inconclusive else " (exhaustive)")]
        payload["form"] = None
        return status, payload, human
    form = periodicity.check_minimum_period_form(alg.p, rep.period, alg.n)
    payload["form"] = {"conformant": form.conformant, "description": form.description}
    payload["certificate"] = {"mode": rep.certificate.mode,
                              "element": _element_payload(rep.certificate.element)}
    status = "ok" if form.conformant else "violation"
    human = [f"k = {rep.period}, conformant: {form.description}"
             if form.conformant else
             f"k = {rep.period}, NOT conformant: {form.description}"]
    return status, payload, human


def _window_for(args, cap):
    alg, act = load_algebra_file(args.file)
    x = parse_element(args.x, alg)
    cert, refusal = _certificate_for(alg, x, cap)
    if cert is None:
        return None, ("violation", {"inducing": False, "refusal": refusal},
                      [f"element does not induce degree-{x.degree} periodicity: {refusal}"])
    window = periodicity.subquotient(alg, cert, action=act)
    return window, None


def _cmd_subquotient(args, cap):
    window, failure = _window_for(args, cap)
    if failure:
        return failure
    payload = {"k": window.k, "mode": window.certificate.mode,
               "window_dims": list(window.window_dims()),
               "action_induced": window.action is not None}
    human = [f"k = {window.k} ({window.certificate.mode}), "
             f"window dims {list(window.window_dims())}, "
             f"action {'induced' if window.action else 'absent'}"]
    return "ok", payload, human


def _cmd_irreducible(args, cap):
    window, failure = _window_for(args, cap)
    if failure:
        return failure
    x = parse_element(args.x, window.parent)
    xw = window.to_window(x.degree, x.as_vector())
    rep = periodicity.is_irreducible(window, Element.of(x.degree, xw), cap=cap)
    payload = {"irreducible": rep.irreducible,
               "witness": None if rep.witness is None else
               [_element_payload(e) for e in rep.witness]}
    if rep.irreducible:
        human = ["irreducible: every splitting keeps an inducing summand"]
    else:
        a, b = rep.witness
        human = [f"reducible: {a.coeffs} + {b.coeffs} splits with no inducing part"]
    return "ok", payload, human


def _cmd_decompose(args, cap):
    window, failure = _window_for(args, cap)
    if failure:
        return failure
    result = decomposition.decompose(window, cap=cap)
    report = decomposition.verify_decomposition(window, result, cap=cap)
    payload = result.to_dict()
    payload["verified"] = report.ok
    payload["violations"] = list(report.violations)
    status = "ok" if report.ok else "violation"
    human = [f"m = {result.summand_count} summands, verified: {report.ok}"]
    for i, s in enumerate(result.summands):
        dims = [s.spaces[u].dim for u in range(1, window.n)]
        human.append(f"  summand {i}: element {s.element.coeffs}, window dims {dims}")
    human.extend(report.violations)
    return status, payload, human


def _parse_monomials(text: str):
    monos = []
    for part in text.split("+"):
        toks = part.split()
        if not toks:
            raise InputError("empty monomial in sum")
        mono = []
        for t in toks:
            if not t.startswith("Sq"):
                raise InputError(f"token {t!r} is not of the form Sq<k>")
            try:
                mono.append(int(t[2:]))
            except ValueError:
                raise InputError(f"token {t!r} is not of the form Sq<k>")
        monos.append(tuple(mono))
    return monos


def _render_sum(monos) -> str:
    if not monos:
        return "0"
    ordered = sorted(monos, reverse=True)
    return " + ".join(" ".join(f"Sq{i}" for i in m) for m in ordered)


def _cmd_adem(args, cap):
    monos = _parse_monomials(args.expression)
    try:
        nf = steenrod.adem_normal_form(monos)
    except ValueError as e:
        raise InputError(str(e))
    payload = {"input": [list(m) for m in monos],
               "normal_form": [list(m) for m in sorted(nf, reverse=True)]}
    return "ok", payload, [_render_sum(nf)]


def _cmd_decompose_sq(args, cap):
    try:
        parts = steenrod.decompose_sq(args.k)
    except IsPowerOfTwo as e:
        return "violation", {"k": args.k, "reason": str(e)}, [str(e)]
    except ValueError as e:
        raise InputError(str(e))
    payload = {"k": args.k,
               "terms": {str(power): [list(m) for m in monos]
                         for power, monos in sorted(parts.items())}}
    human = [f"Sq{args.k} = " + " + ".join(
        f"Sq{power} ({_render_sum(monos)})" for power, monos in sorted(parts.items()))]
    return "ok", payload, human


def _cmd_steenrod_check(args, cap):
    alg, act = load_algebra_file(args.file)
    if act is None:
        raise InputError(f"{args.file} carries no action to check")
    try:
        steenrod.verify_action(alg, act)
    except ActionDefect as e:
        return "violation", {"verified": False, "problem": str(e)}, [f"action fails: {e}"]
    payload = {"verified": True, "p": alg.p,
               "operations": sorted(f"{s}@{j}" for s, j in act.maps)}
    return "ok", payload, ["action satisfies instability, top, and Cartan checks"]


def _cmd_derive(args, cap):
    try:
        scenario = connectivity.Scenario.load(args.scenario)
    except OSError as e:
        raise InputError(f"cannot read {args.scenario}: {e}")
    except (KeyError, TypeError, ValueError, json.JSONDecodeError) as e:
        raise InputError(f"{args.scenario} is not a scenario file: {e}")
    try:
        derivation = connectivity.derive(scenario.goal, scenario.facts)
    except connectivity.Saturated as e:
        return ("inconclusive", {"derived": False, "reason": str(e)},
                [f"saturated without the goal: {e}"])
    replayed = connectivity.verify_derivation(derivation, scenario.facts)
    payload = derivation.to_dict()
    payload["replayed"] = replayed
    human = [f"goal: {scenario.goal}"]
    for step in derivation.steps:
        human.append(f"  [{step.rule}] {step.output}")
    human.append(str(derivation.final))
    status = "ok" if replayed else "violation"
    return status, payload, human


def _cmd_corpus_export(args, cap):
    try:
        spec = corpus.parse_spec(args.spec)
        fixture = corpus.build(spec)
    except (ValueError, corpus.SizeBound) as e:
        raise InputError(str(e))
    doc = dump_algebra_file(fixture.algebra, fixture.action)
    text = json.dumps(doc, indent=1, sort_keys=True) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        payload = {"spec": str(fixture.spec), "written": args.out,
                   "dims": list(fixture.algebra.dims)}
        return "ok", payload, [f"wrote {args.out}"]
    sys.stdout.write(text)
    return None, None, None


def _build_parser() -> argparse.ArgumentParser:
    # SUPPRESS keeps a subparser's defaults from clobbering flags given
    # before the subcommand, so both positions work.
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--human", action="store_true", default=argparse.SUPPRESS,
                        help="prose output instead of the JSON report")
    common.add_argument("--jobs", type=int, default=argparse.SUPPRESS,
                        help="shard count for element searches")
    parser = argparse.ArgumentParser(
        prog="periodica", parents=[common],
        description="Exact periodicity analysis for finite graded algebras.")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_file(name, help_text):
        q = sub.add_parser(name, help=help_text, parents=[common])
        q.add_argument("file", help="algebra JSON file")
        return q

    with_file("validate", "check ring axioms, duality, and any action")
    q = with_file("periodicity", "search degrees for inducing elements")
    q.add_argument("--k", type=int, default=None, help="single degree to test")
    with_file("min-period", "least period plus arithmetic form check")
    for name, help_text in (("subquotient", "build the periodic window of an element"),
                            ("irreducible", "test whether an element is irreducible"),
                            ("decompose", "split the window along its inducing element")):
        q = with_file(name, help_text)
        q.add_argument("--x", required=True, help="element as DEGREE:c1,c2,...")
    q = sub.add_parser("adem", parents=[common],
                       help="admissible normal form of a mod-2 composite")
    q.add_argument("expression", help="e.g. 'Sq2 Sq2' or 'Sq2 Sq3 + Sq5'")
    q = sub.add_parser("decompose-sq", parents=[common],
                       help="write Sq^k over the generators Sq^(2^i)")
    q.add_argument("k", type=int)
    with_file("steenrod-check", "verify the action stored with an algebra")
    q = sub.add_parser("derive", parents=[common],
                       help="forward-chain a scenario file to its goal")
    q.add_argument("scenario", help="scenario JSON file")
    q = sub.add_parser("corpus", help="fixture corpus utilities")
    csub = q.add_subparsers(dest="corpus_command", required=True)
    q = csub.add_parser("export", parents=[common],
                        help="build a fixture and write its algebra file")
    q.add_argument("spec", help="e.g. 'ConnectedSum(ComplexProj(4),ComplexProj(4))@2'")
    q.add_argument("--out", default=None, help="write here instead of stdout")
    return parser


_HANDLERS = {
    "validate": _cmd_validate,
    "periodicity": _cmd_periodicity,
    "min-period": _cmd_min_period,
    "subquotient": _cmd_subquotient,
    "irreducible": _cmd_irreducible,
    "decompose": _cmd_decompose,
    "adem": _cmd_adem,
    "decompose-sq": _cmd_decompose_sq,
    "steenrod-check": _cmd_steenrod_check,
    "derive": _cmd_derive,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    command = args.command
    if command == "corpus":
        handler = _cmd_corpus_export
        command = f"corpus {args.corpus_command}"
    else:
        handler = _HANDLERS[command]
    try:
        cap = _search_cap()
        status, payload, human = handler(args, cap)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (DegreeBoundViolated, WellDefinednessFailure) as e:
        status, payload, human = "violation", {"problem": str(e)}, [f"refused: {e}"]
    except SearchCapExceeded as e:
        status, payload, human = "inconclusive", {"problem": str(e)}, [f"capped: {e}"]
    if status is None:
        return 0
    report = {"command": command, "status": status,
              "payload": payload, "version": __version__}
    if getattr(args, "human", False):
        for line in human:
            print(line)
    else:
        print(json.dumps(report, indent=1, sort_keys=True))
    return _EXIT[status]


if __name__ == "__main__":
    sys.exit(main())
