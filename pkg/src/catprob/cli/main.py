"""Command-line front end.

    catprob WORKSPACE COMMAND [flags]

Results go to stdout. Exit status is 0 when a value was computed or every check
passed, 1 when some law or check failed, and 2 for parse, resolve, invariant
and usage errors.
"""

from __future__ import annotations

import argparse
import itertools
import random
import sys
from pathlib import Path

from ..errors import CatProbError, ParseError, ResolveError
from ..fincat import check_functor, check_nat_trans, chi_leq, opposite_category, validate_category
from ..finspace import check_product_universal, compose_maps, is_sub_sigma_algebra, pairing, product_space
from ..giry import check_monad_laws, check_mult_naturality, check_unit_naturality
from ..kernel import compose_kernels, det_kernel, identity_kernel, kleisli_apply
from ..measure import absolutely_continuous, bounded_constant, integrate, normalize, pushforward
from ..report import LawReport
from ..sampling import random_kernel, random_mix, random_mix2, random_space
from .grammar import Workspace, parse_workspace
from .printer import format_category, format_kernel, format_map, format_measure, format_space, fmt_q

OK, FAILED, ERROR = 0, 1, 2


class UsageError(CatProbError):
    def __init__(self, message: str, code: str, usage: str = ""):
        super().__init__(message)
        self._code = code
        self.usage = usage

    @property
    def code(self) -> str:
        return self._code


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        code = "MissingFlag" if "required" in message else "BadFlags"
        raise UsageError(message, code, self.format_usage().strip())


def build_command_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="catprob WORKSPACE", add_help=False)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def cmd(name, *flags):
        s = sub.add_parser(name, add_help=False)
        for f in flags:
            s.add_argument(f"--{f}", required=True)
        return s

    cmd("check")
    cmd("compose", "left", "right")
    cmd("pushforward", "measure", "map")
    cmd("bind", "measure", "kernel")
    cmd("integrate", "obs", "measure")
    cmd("bounded", "map", "dom", "cod")
    cmd("normalize", "measure")
    cmd("chi", "left", "right")
    prod = cmd("product", "left", "right")
    prod.add_argument("--universal", action="store_true")
    for f in ("z", "f", "g"):
        prod.add_argument(f"--{f}")
    laws = cmd("laws")
    laws.add_argument("suite", choices=["stoch", "monad", "naturality"])
    laws.add_argument("--map")
    laws.add_argument("--samples", type=int, default=None)
    laws.add_argument("--seed", type=int, default=0)
    cmd("opposite", "cat")
    cmd("functor-check").add_argument("--functor")
    cmd("nattrans-check").add_argument("--nattrans")
    return p


# commands: each returns (lines, exit code)


def _check(ws: Workspace, a):
    counts = [(k, len(ws.registry(k))) for k in ("space", "measure", "map", "kernel", "observable", "mix", "mix2", "chi")]
    lines = ["loaded " + ", ".join(f"{k} {n}" for k, n in counts)]
    ok = True
    for name, c in ws.categories.items():
        ok &= _append_report(lines, f"category {name}", validate_category(c))
    for name, F in ws.functors.items():
        ok &= _append_report(lines, f"functor {name}", check_functor(F))
    for name, t in ws.nattrans.items():
        ok &= _append_report(lines, f"nattrans {name}", check_nat_trans(t))
    lines.append(f"check {'PASS' if ok else 'FAIL'}")
    return lines, OK if ok else FAILED


def _append_report(lines, title, report: LawReport, laws=None) -> bool:
    lines.append(title)
    lines += ["  " + s for s in report.summary_lines(laws)]
    return report.passed


def _compose(ws, a):
    if a.left in ws.kernels and a.right in ws.kernels:
        k = compose_kernels(ws.kernels[a.left], ws.kernels[a.right])
        return [format_kernel(f"{a.left}_o_{a.right}", k)], OK
    g, f = ws.get("map", a.left), ws.get("map", a.right)
    return [format_map(compose_maps(g, f, f"{a.left}_o_{a.right}"))], OK


def _pushforward(ws, a):
    m = pushforward(ws.get("measure", a.measure), ws.get("map", a.map))
    return [format_measure(f"push_{a.measure}_{a.map}", m)], OK


def _bind(ws, a):
    m = kleisli_apply(ws.get("kernel", a.kernel), ws.get("measure", a.measure))
    return [format_measure(f"bind_{a.measure}_{a.kernel}", m)], OK


def _integrate(ws, a):
    value = integrate(ws.get("observable", a.obs), ws.get("measure", a.measure))
    return [f"integral {a.obs} d{a.measure} = {fmt_q(value)}"], OK


def _bounded(ws, a):
    m = bounded_constant(ws.get("map", a.map), ws.get("measure", a.dom), ws.get("measure", a.cod))
    if m is None:
        return [f"bounded {a.map} {a.dom} {a.cod}: UNBOUNDED"], FAILED
    return [f"bounded {a.map} {a.dom} {a.cod}: M = {fmt_q(m)}"], OK


def _normalize(ws, a):
    return [format_measure(f"norm_{a.measure}", normalize(ws.get("measure", a.measure)))], OK


def _chi(ws, a):
    v, u = ws.get("chi", a.left), ws.get("chi", a.right)
    sub = is_sub_sigma_algebra(v.sub_atoms, u.sub_atoms)
    ac = absolutely_continuous(u.measure, v.measure)
    leq = chi_leq(v, u)
    lines = [
        f"sigma {a.left} within {a.right}: {str(sub).lower()}",
        f"measure {a.right} << {a.left}: {str(ac).lower()}",
        f"{a.left} <=chi {a.right}: {str(leq).lower()}",
    ]
    return lines, OK if leq else FAILED


def _product(ws, a):
    x, y = ws.get("space", a.left), ws.get("space", a.right)
    prod, p1, p2 = product_space(x, y)
    lines = [format_space(prod), format_map(p1), format_map(p2)]
    if not a.universal:
        return lines, OK
    missing = [f"--{k}" for k in ("z", "f", "g") if getattr(a, k) is None]
    if missing:
        raise UsageError(f"--universal needs {' '.join(missing)}", "MissingFlag")
    z, f, g = ws.get("space", a.z), ws.get("map", a.f), ws.get("map", a.g)
    rep = check_product_universal(x, y, z, f, g)
    lines.append(format_map(pairing(f, g, (prod, p1, p2))))
    lines.append(f"mediating maps: {rep.count} of {rep.candidates} candidates")
    lines.append(f"universal {'PASS' if rep.passed else 'FAIL'}")
    return lines, OK if rep.passed else FAILED


def _laws_stoch(ws, a, rng):
    report = LawReport("stoch laws")
    kernels = list(ws.kernels.values())
    for k in kernels:
        report.record("left-identity", compose_kernels(identity_kernel(k.cod), k) == k)
        report.record("right-identity", compose_kernels(k, identity_kernel(k.dom)) == k)
    for t, u, v in itertools.product(kernels, repeat=3):
        if t.cod == u.dom and u.cod == v.dom:
            report.record("assoc", compose_kernels(v, compose_kernels(u, t)) == compose_kernels(compose_kernels(v, u), t))
    for f, g in itertools.product(ws.maps.values(), repeat=2):
        if f.cod == g.dom:
            report.record(
                "det-functoriality", det_kernel(compose_maps(g, f)) == compose_kernels(det_kernel(g), det_kernel(f))
            )
    for _ in range(20 if a.samples is None else a.samples):
        x, y, z, w = (random_space(rng, rng.randint(2, 6), n) for n in "XYZW")
        t, u, v = random_kernel(rng, x, y), random_kernel(rng, y, z), random_kernel(rng, z, w)
        report.record("left-identity", compose_kernels(identity_kernel(y), t) == t)
        report.record("right-identity", compose_kernels(t, identity_kernel(x)) == t)
        report.record("assoc", compose_kernels(v, compose_kernels(u, t)) == compose_kernels(compose_kernels(v, u), t))
    return report, ["left-identity", "right-identity", "assoc", "det-functoriality"]


def _laws_monad(ws, a, rng):
    report = LawReport("monad laws")
    for space in ws.spaces.values():
        samples = [mm for mm in ws.mix2s.values() if mm.base == space]
        measures = [m for m in ws.measures.values() if m.space == space and m.is_probability]
        if samples or measures:
            report.extend(check_monad_laws(space, samples, measures=measures))
    for _ in range(10 if a.samples is None else a.samples):
        space = random_space(rng, rng.randint(1, 5))
        report.extend(check_monad_laws(space, [random_mix2(rng, space)]))
    return report, ["left-unit", "right-unit", "assoc"]


def _laws_naturality(ws, a, rng):
    if a.map is None:
        raise UsageError("laws naturality needs --map", "MissingFlag")
    f = ws.get("map", a.map)
    report = check_unit_naturality(f)
    mixes = [m for m in ws.mixes.values() if m.base == f.dom]
    mixes += [random_mix(rng, f.dom) for _ in range(10 if a.samples is None else a.samples)]
    report.extend(check_mult_naturality(f, mixes))
    return report, ["unit-naturality", "mult-naturality"]


def _laws(ws, a):
    rng = random.Random(a.seed)
    suite = {"stoch": _laws_stoch, "monad": _laws_monad, "naturality": _laws_naturality}[a.suite]
    report, laws = suite(ws, a, rng)
    return report.summary_lines(laws), OK if report.passed else FAILED


def _opposite(ws, a):
    return [format_category(opposite_category(ws.get("category", a.cat)))], OK


def _functor_check(ws, a):
    names = [a.functor] if a.functor else list(ws.functors)
    lines, ok = [], True
    for n in names:
        ok &= _append_report(lines, f"functor {n}", check_functor(ws.get("functor", n)))
    return lines, OK if ok else FAILED


def _nattrans_check(ws, a):
    names = [a.nattrans] if a.nattrans else list(ws.nattrans)
    lines, ok = [], True
    for n in names:
        ok &= _append_report(lines, f"nattrans {n}", check_nat_trans(ws.get("nattrans", n)))
    return lines, OK if ok else FAILED


COMMANDS = {
    "check": _check,
    "compose": _compose,
    "pushforward": _pushforward,
    "bind": _bind,
    "integrate": _integrate,
    "bounded": _bounded,
    "normalize": _normalize,
    "chi": _chi,
    "product": _product,
    "laws": _laws,
    "opposite": _opposite,
    "functor-check": _functor_check,
    "nattrans-check": _nattrans_check,
}


def error_line(e: CatProbError) -> str:
    if isinstance(e, (ParseError, ResolveError, UsageError)):
        category = type(e).__name__
    else:
        category = "InvariantError"
    return f"ERROR {category} {e.code}: {e}"


def _render(lines) -> str:
    return "\n".join(lines) + "\n"


def run_command(ws: Workspace, argv: list[str]) -> tuple[str, int]:
    """Run one command against a loaded workspace; returns (stdout, exit code)."""
    try:
        if not argv or argv[0] not in COMMANDS:
            given = repr(argv[0]) if argv else "nothing"
            raise UsageError(f"unknown command {given}", "UnknownCommand", "commands: " + ", ".join(COMMANDS))
        args = build_command_parser().parse_args(argv)
        lines, code = COMMANDS[args.command](ws, args)
    except UsageError as e:
        return _render([error_line(e)] + ([e.usage] if e.usage else [])), ERROR
    except CatProbError as e:
        return _render([error_line(e)]), ERROR
    return _render(lines), code


def run_file(text: str, argv: list[str]) -> tuple[str, int]:
    try:
        ws = parse_workspace(text)
    except CatProbError as e:
        return _render([error_line(e)]), ERROR
    return run_command(ws, argv)


def main(argv: list[str] | None = None) -> int:
    top = argparse.ArgumentParser(prog="catprob", description="Exact categorical probability on finite spaces.")
    top.add_argument("workspace", type=Path, help="declaration file")
    top.add_argument("command", nargs=argparse.REMAINDER, help="command and its flags")
    ns = top.parse_args(argv)
    try:
        text = ns.workspace.read_text(encoding="utf-8")
    except OSError as e:
        sys.stdout.write(f"ERROR IOError {type(e).__name__}: {e}\n")
        return ERROR
    out, code = run_file(text, ns.command)
    if hasattr(sys.stdout, "reconfigure"):
        sys.stdout.reconfigure(encoding="utf-8")
    sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
