"""Canonical text for workspace objects, in the declaration grammar.

Everything printed here parses back to a structurally equal object.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from ..fincat import ChiObject, FinCategory, FinFunctor, FinNatTrans
from ..finspace import FinSpace, MeasurableMap
from ..giry import MixMeasure, MixMixMeasure
from ..kernel import StochKernel
from ..measure import RationalMeasure, RealObservable
from .grammar import Workspace


def fmt_q(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def fmt_atom(atom: Iterable[str]) -> str:
    return "{" + ",".join(atom) + "}"


def fmt_atoms(atoms: Iterable[Iterable[str]]) -> str:
    return " ".join(fmt_atom(a) for a in atoms)


def format_space(s: FinSpace) -> str:
    return f"space {s.name} {{ points = {','.join(s.points)}; atoms = {fmt_atoms(s.atoms)}; }}"


def _weighted(space: FinSpace, weights) -> str:
    return " ".join(f"{fmt_atom(a)}={fmt_q(w)};" for a, w in zip(space.atoms, weights))


def format_measure(name: str, m: RationalMeasure) -> str:
    return f"measure {name} on {m.space.name} {{ {_weighted(m.space, m.weights)} }}"


def format_observable(name: str, theta: RealObservable) -> str:
    return f"observable {name} on {theta.space.name} {{ {_weighted(theta.space, theta.values)} }}"


def format_map(f: MeasurableMap, name: str | None = None) -> str:
    body = " ".join(f"{x}->{y};" for x, y in zip(f.dom.points, f.graph))
    return f"map {name or f.name} : {f.dom.name} -> {f.cod.name} {{ {body} }}"


def format_kernel(name: str, k: StochKernel) -> str:
    rows = []
    for atom, row in zip(k.dom.atoms, k.rows):
        entries = ", ".join(f"{fmt_atom(b)}={fmt_q(w)}" for b, w in zip(k.cod.atoms, row.weights))
        rows.append(f"  {fmt_atom(atom)}: {entries};")
    return "\n".join([f"kernel {name} : {k.dom.name} ~> {k.cod.name} {{", *rows, "}"])


def _names_by_value(registry: dict) -> dict:
    out: dict = {}
    for n, v in registry.items():
        out.setdefault(v, n)
    return out


def format_mix(name: str, mix: MixMeasure, measure_names: dict[RationalMeasure, str]) -> str:
    body = " ".join(f"{measure_names[p]}={fmt_q(w)};" for p, w in mix.items())
    return f"mix {name} on {mix.base.name} {{ {body} }}"


def format_mix2(name: str, mm: MixMixMeasure, mix_names: dict[MixMeasure, str]) -> str:
    body = " ".join(f"{mix_names[m]}={fmt_q(w)};" for m, w in mm.items())
    return f"mix2 {name} on {mm.base.name} {{ {body} }}"


def format_chi(name: str, c: ChiObject, measure_names: dict[RationalMeasure, str]) -> str:
    return (
        f"chi {name} on {c.measure.space.name} {{ atoms = {fmt_atoms(c.sub_atoms)}; "
        f"measure = {measure_names[c.measure]}; }}"
    )


def format_category(c: FinCategory) -> str:
    lines = [f"category {c.name} {{", f"  objects = {', '.join(c.objects)};"]
    lines += [f"  identity {a} = {c.ids[a]};" for a in c.objects if a in c.ids]
    id_arrows = set(c.ids.values())
    lines += [f"  arrow {f} : {a} -> {b};" for f, (a, b) in sorted(c.arrows.items()) if f not in id_arrows]
    lines += [f"  compose {g} . {f} = {h};" for (g, f), h in sorted(c.comp.items())]
    lines.append("}")
    return "\n".join(lines)


def format_functor(F: FinFunctor) -> str:
    lines = [f"functor {F.name} : {F.src.name} -> {F.dst.name} {{"]
    lines += [f"  object {a} = {b};" for a, b in sorted(F.obj_map.items())]
    lines += [f"  arrow {f} = {g};" for f, g in sorted(F.arrow_map.items())]
    lines.append("}")
    return "\n".join(lines)


def format_nat_trans(t: FinNatTrans) -> str:
    lines = [f"nattrans {t.name} : {t.F.name} => {t.G.name} {{"]
    lines += [f"  component {a} = {h};" for a, h in sorted(t.components.items())]
    lines.append("}")
    return "\n".join(lines)


def format_workspace(ws: Workspace) -> str:
    """Every declaration, in load order."""
    measure_names = _names_by_value(ws.measures)
    mix_names = _names_by_value(ws.mixes)
    out = []
    for kind, name in ws.order:
        v = ws.get(kind, name)
        if kind == "space":
            out.append(format_space(v))
        elif kind == "measure":
            out.append(format_measure(name, v))
        elif kind == "observable":
            out.append(format_observable(name, v))
        elif kind == "map":
            out.append(format_map(v, name))
        elif kind == "kernel":
            out.append(format_kernel(name, v))
        elif kind == "mix":
            out.append(format_mix(name, v, measure_names))
        elif kind == "mix2":
            out.append(format_mix2(name, v, mix_names))
        elif kind == "chi":
            out.append(format_chi(name, v, measure_names))
        elif kind == "category":
            out.append(format_category(v))
        elif kind == "functor":
            out.append(format_functor(v))
        else:
            out.append(format_nat_trans(v))
    return "\n".join(out) + "\n"
