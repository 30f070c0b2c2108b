"""Explicit finite categories, functors and natural transformations.

Categories are tables: objects, arrows with their endpoints, a composition
table keyed by ``(g, f)`` meaning g∘f, and one identity per object. Large
categories (Set, Meas, CPS, ...) only appear through generated finite
fragments.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .errors import (
    AmbientMismatch,
    MalformedComponents,
    MalformedMap,
    MalformedTable,
    NotPreorder,
    NotProbability,
    UnknownArrow,
)
from .finspace import (
    FinSpace,
    MeasurableMap,
    Partition,
    canonical_partition,
    compose_maps,
    identity_map,
    is_sub_sigma_algebra,
)
from .measure import RationalMeasure, absolutely_continuous, bounded_constant, normalize
from .report import LawReport


@dataclass(frozen=True, eq=True)
class FinCategory:
    name: str
    objects: tuple[str, ...]
    arrows: Mapping[str, tuple[str, str]]
    comp: Mapping[tuple[str, str], str]
    ids: Mapping[str, str]

    def dom(self, f: str) -> str:
        return self._arrow(f)[0]

    def cod(self, f: str) -> str:
        return self._arrow(f)[1]

    def _arrow(self, f: str) -> tuple[str, str]:
        try:
            return self.arrows[f]
        except KeyError:
            raise UnknownArrow(f"{f!r} is not an arrow of {self.name}") from None

    def hom(self, a: str, b: str) -> list[str]:
        return sorted(f for f, ends in self.arrows.items() if ends == (a, b))

    def compose(self, g: str, f: str) -> str:
        """g∘f."""
        try:
            return self.comp[(g, f)]
        except KeyError:
            raise MalformedTable(f"no composite recorded for {g}∘{f}") from None

    def composable_pairs(self) -> Iterable[tuple[str, str]]:
        for f, (_, b) in self.arrows.items():
            for g, (c, _) in self.arrows.items():
                if c == b:
                    yield g, f

    def __hash__(self):
        return hash((self.name, self.objects, tuple(sorted(self.arrows.items()))))


def make_category(
    name: str,
    objects: Iterable[str],
    arrows: Mapping[str, tuple[str, str]],
    ids: Mapping[str, str],
    comp: Mapping[tuple[str, str], str] | None = None,
    fill_identities: bool = True,
) -> FinCategory:
    """Build a category table.

    Identity arrows may be omitted from ``arrows``. With ``fill_identities``,
    composites with an identity that are not listed in ``comp`` default to the
    other arrow; explicit entries always win.
    """
    objects = tuple(objects)
    all_arrows = dict(arrows)
    for a, i in ids.items():
        all_arrows.setdefault(i, (a, a))
    table = dict(comp or {})
    if fill_identities:
        for f, (a, b) in all_arrows.items():
            if a in ids:
                table.setdefault((f, ids[a]), f)
            if b in ids:
                table.setdefault((ids[b], f), f)
    return FinCategory(name, objects, all_arrows, table, dict(ids))


def check_table(c: FinCategory) -> None:
    objs = set(c.objects)
    for f, (a, b) in c.arrows.items():
        if a not in objs or b not in objs:
            raise MalformedTable(f"arrow {f} has an endpoint outside the objects of {c.name}")
    for a in c.objects:
        if a not in c.ids:
            raise MalformedTable(f"object {a} has no identity")
        if c.arrows.get(c.ids[a]) != (a, a):
            raise MalformedTable(f"identity {c.ids[a]} of {a} is not an arrow {a}→{a}")
    for g, f in c.composable_pairs():
        if (g, f) not in c.comp:
            raise MalformedTable(f"missing composite for {g}∘{f}")
        if c.comp[(g, f)] not in c.arrows:
            raise MalformedTable(f"composite {g}∘{f} = {c.comp[(g, f)]} is not an arrow")


def validate_category(c: FinCategory) -> LawReport:
    """Check typing of composites, both identity laws and associativity."""
    check_table(c)
    report = LawReport(f"category {c.name}")
    for g, f in c.composable_pairs():
        h = c.comp[(g, f)]
        want = (c.dom(f), c.cod(g))
        report.record("typing", c.arrows[h] == want, f"{g}∘{f} = {h} is not an arrow {want[0]}→{want[1]}")
    for f, (a, b) in c.arrows.items():
        r = c.comp[(f, c.ids[a])]
        report.record("right-identity", r == f, f"{f}∘{c.ids[a]} = {r}")
        l = c.comp[(c.ids[b], f)]
        report.record("left-identity", l == f, f"{c.ids[b]}∘{f} = {l}")
    for g, f in c.composable_pairs():
        for h in c.arrows:
            if c.dom(h) != c.cod(g):
                continue
            hg, gf = c.comp[(h, g)], c.comp[(g, f)]
            lhs = c.comp.get((h, gf))
            rhs = c.comp.get((hg, f))
            report.record("associativity", lhs is not None and lhs == rhs, f"{h}∘({g}∘{f}) = {lhs}, ({h}∘{g})∘{f} = {rhs}")
    return report


# named small categories


def category_one() -> FinCategory:
    return make_category("One", ["A"], {}, {"A": "id_A"})


def category_two() -> FinCategory:
    return make_category("Two", ["A", "B"], {"f": ("A", "B")}, {"A": "id_A", "B": "id_B"})


def category_three() -> FinCategory:
    return make_category(
        "Three",
        ["A", "B", "C"],
        {"f": ("A", "B"), "g": ("B", "C"), "h": ("A", "C")},
        {"A": "id_A", "B": "id_B", "C": "id_C"},
        {("g", "f"): "h"},
    )


# preorders


def leq_arrow(v: str, u: str) -> str:
    return f"leq({v},{u})"


def preorder_category(
    elements: Iterable, leq: Callable[[object, object], bool] | Iterable[tuple], name: str = "Pre"
) -> FinCategory:
    """The thin category with one arrow v→u exactly when v ≤ u."""
    elements = list(elements)
    if not callable(leq):
        pairs = {(str(a), str(b)) for a, b in leq}
        rel = lambda a, b: (str(a), str(b)) in pairs  # noqa: E731
    else:
        rel = leq
    labels = [str(e) for e in elements]
    related = {(labels[i], labels[j]) for i, a in enumerate(elements) for j, b in enumerate(elements) if rel(a, b)}
    for a in labels:
        if (a, a) not in related:
            raise NotPreorder(f"{a} ≤ {a} fails", (a,))
    for a, b in related:
        for c in labels:
            if (b, c) in related and (a, c) not in related:
                raise NotPreorder(f"{a} ≤ {b} and {b} ≤ {c} but not {a} ≤ {c}", (a, b, c))
    arrows = {leq_arrow(a, b): (a, b) for a, b in related}
    comp = {
        (leq_arrow(b, c), leq_arrow(a, b)): leq_arrow(a, c)
        for a, b in related
        for c in labels
        if (b, c) in related
    }
    ids = {a: leq_arrow(a, a) for a in labels}
    return FinCategory(name, tuple(labels), arrows, comp, ids)


def opposite_category(c: FinCategory, name: str | None = None) -> FinCategory:
    """Same objects and arrow names; endpoints swapped; f^op∘g^op = (g∘f)^op."""
    arrows = {f: (b, a) for f, (a, b) in c.arrows.items()}
    comp = {(f, g): h for (g, f), h in c.comp.items()}
    if name is None:
        name = c.name[:-3] if c.name.endswith("_op") else f"{c.name}_op"
    return FinCategory(name, c.objects, arrows, comp, dict(c.ids))


def is_isomorphism(c: FinCategory, f: str) -> str | None:
    """The inverse of ``f`` if it has one."""
    a, b = c._arrow(f)
    for g in c.hom(b, a):
        if c.comp.get((g, f)) == c.ids[a] and c.comp.get((f, g)) == c.ids[b]:
            return g
    return None


def find_initial_terminal(c: FinCategory) -> tuple[list[str], list[str]]:
    initials = [i for i in c.objects if all(len(c.hom(i, a)) == 1 for a in c.objects)]
    terminals = [t for t in c.objects if all(len(c.hom(a, t)) == 1 for a in c.objects)]
    return initials, terminals


# functors and natural transformations


@dataclass(frozen=True)
class FinFunctor:
    name: str
    src: FinCategory
    dst: FinCategory
    obj_map: Mapping[str, str]
    arrow_map: Mapping[str, str]

    def __call__(self, x: str) -> str:
        if x in self.obj_map and x in self.src.objects:
            return self.obj_map[x]
        return self.arrow_map[x]


def identity_functor(c: FinCategory) -> FinFunctor:
    return FinFunctor(f"id_{c.name}", c, c, {a: a for a in c.objects}, {f: f for f in c.arrows})


def compose_functors(g: FinFunctor, f: FinFunctor) -> FinFunctor:
    return FinFunctor(
        f"{g.name}_o_{f.name}",
        f.src,
        g.dst,
        {a: g.obj_map[b] for a, b in f.obj_map.items()},
        {x: g.arrow_map[y] for x, y in f.arrow_map.items()},
    )


def check_functor(F: FinFunctor) -> LawReport:
    """Typing, F(1_A) = 1_F(A) and F(g∘f) = F(g)∘F(f)."""
    src, dst = F.src, F.dst
    for a in src.objects:
        if a not in F.obj_map or F.obj_map[a] not in dst.objects:
            raise MalformedMap(f"functor {F.name} does not send object {a} to an object of {dst.name}")
    for f in src.arrows:
        if f not in F.arrow_map or F.arrow_map[f] not in dst.arrows:
            raise MalformedMap(f"functor {F.name} does not send arrow {f} to an arrow of {dst.name}")
    report = LawReport(f"functor {F.name}")
    for f, (a, b) in src.arrows.items():
        Ff = F.arrow_map[f]
        want = (F.obj_map[a], F.obj_map[b])
        report.record("typing", dst.arrows[Ff] == want, f"{F.name}({f}) = {Ff} is not an arrow {want[0]}→{want[1]}")
    for a in src.objects:
        got, want = F.arrow_map[src.ids[a]], dst.ids[F.obj_map[a]]
        report.record("identities", got == want, f"{F.name}({src.ids[a]}) = {got}, expected {want}")
    for g, f in src.composable_pairs():
        lhs = F.arrow_map[src.comp[(g, f)]]
        rhs = dst.comp.get((F.arrow_map[g], F.arrow_map[f]))
        report.record("composition", lhs == rhs, f"{F.name}({g}∘{f}) = {lhs}, {F.name}({g})∘{F.name}({f}) = {rhs}")
    return report


@dataclass(frozen=True)
class FinNatTrans:
    name: str
    F: FinFunctor
    G: FinFunctor
    components: Mapping[str, str]


def identity_nat_trans(F: FinFunctor) -> FinNatTrans:
    return FinNatTrans(f"id_{F.name}", F, F, {a: F.dst.ids[F.obj_map[a]] for a in F.src.objects})


def vertical_compose(beta: FinNatTrans, alpha: FinNatTrans) -> FinNatTrans:
    """(β∘α)_A = β_A∘α_A."""
    dst = alpha.F.dst
    comps = {a: dst.compose(beta.components[a], alpha.components[a]) for a in alpha.F.src.objects}
    return FinNatTrans(f"{beta.name}_o_{alpha.name}", alpha.F, beta.G, comps)


def check_nat_trans(t: FinNatTrans) -> LawReport:
    """Every naturality square α_B∘F(f) = G(f)∘α_A, plus component typing."""
    F, G = t.F, t.G
    if F.src != G.src or F.dst != G.dst:
        raise MalformedComponents(f"{t.name}: functors {F.name} and {G.name} are not parallel")
    src, dst = F.src, F.dst
    for a in src.objects:
        if a not in t.components or t.components[a] not in dst.arrows:
            raise MalformedComponents(f"{t.name}: no valid component at {a}")
    report = LawReport(f"natural transformation {t.name}")
    for a in src.objects:
        comp = t.components[a]
        want = (F.obj_map[a], G.obj_map[a])
        report.record("typing", dst.arrows[comp] == want, f"component {comp} at {a} is not an arrow {want[0]}→{want[1]}")
    for f, (a, b) in src.arrows.items():
        lhs = dst.comp.get((t.components[b], F.arrow_map[f]))
        rhs = dst.comp.get((G.arrow_map[f], t.components[a]))
        report.record(
            "naturality",
            lhs is not None and lhs == rhs,
            f"at {f}: {t.components[b]}∘{F.arrow_map[f]} = {lhs}, {G.arrow_map[f]}∘{t.components[a]} = {rhs}",
        )
    return report


# the χ category


@dataclass(frozen=True)
class ChiObject:
    """A pair (sub-σ-algebra, probability measure) over a fixed ambient space."""

    name: str
    sub_atoms: Partition
    measure: RationalMeasure

    def __post_init__(self):
        object.__setattr__(self, "sub_atoms", canonical_partition(self.sub_atoms))
        if not self.measure.is_probability:
            raise NotProbability(f"chi object {self.name} needs a probability measure")
        if not is_sub_sigma_algebra(self.sub_atoms, self.ambient.atoms):
            raise AmbientMismatch(f"chi object {self.name}: partition is not a sub-σ-algebra of {self.ambient.name}")

    @property
    def ambient(self) -> FinSpace:
        return self.measure.space


def chi_leq(v: ChiObject, u: ChiObject) -> bool:
    """V ≤_χ U: F_V ⊆ F_U and P_U ≪ P_V."""
    if v.ambient != u.ambient:
        raise AmbientMismatch(f"{v.name} and {u.name} live on different spaces")
    return is_sub_sigma_algebra(v.sub_atoms, u.sub_atoms) and absolutely_continuous(u.measure, v.measure)


def chi_category(ambient: FinSpace, objs: Sequence[ChiObject], name: str = "Chi") -> FinCategory:
    for o in objs:
        if o.ambient != ambient:
            raise AmbientMismatch(f"{o.name} does not live on {ambient.name}")
    by_name = {o.name: o for o in objs}
    if len(by_name) != len(objs):
        raise ValueError("chi objects need distinct names")
    return preorder_category([o.name for o in objs], lambda a, b: chi_leq(by_name[a], by_name[b]), name)


# fragments of CPS / CMS


@dataclass(frozen=True)
class BoundedFragment:
    """A finite subcategory of CPS or CMS generated by some measurable maps.

    ``maps`` holds the underlying function of every arrow, ``bounds`` its
    minimal bounding constant. ``full`` is true when no supplied candidate was
    dropped for being unbounded.
    """

    category: FinCategory
    measures: Mapping[str, RationalMeasure]
    maps: Mapping[str, MeasurableMap]
    bounds: Mapping[str, Fraction]
    full: bool
    dropped: tuple[str, ...] = field(default=())


def _arrow_name(f: MeasurableMap, a: str, b: str, ambiguous: bool) -> str:
    return f"{f.name}[{a},{b}]" if ambiguous else f.name


def bounded_fragment(
    objects: Mapping[str, RationalMeasure],
    maps: Sequence[MeasurableMap],
    name: str = "CMS",
    require_probability: bool = False,
) -> BoundedFragment:
    """Close the bounded maps among ``maps`` under composition and add identities.

    A map f: X→Y is a candidate arrow between every pair of objects whose
    measures live on X and Y. Arrows are functions, so two arrows of one
    hom-set with the same graph are the same arrow.
    """
    objects = dict(objects)
    if require_probability:
        for o, m in objects.items():
            if not m.is_probability:
                raise NotProbability(f"object {o} is not a probability space")
    arrows: dict[str, tuple[str, str]] = {}
    graphs: dict[tuple[str, str, tuple[str, ...]], str] = {}
    under: dict[str, MeasurableMap] = {}
    bounds: dict[str, Fraction] = {}
    ids: dict[str, str] = {}

    def add(arrow: str, a: str, b: str, f: MeasurableMap, bound: Fraction) -> str:
        key = (a, b, f.graph)
        if key in graphs:
            return graphs[key]
        graphs[key] = arrow
        arrows[arrow] = (a, b)
        under[arrow] = f
        bounds[arrow] = bound
        return arrow

    for o, m in objects.items():
        ident = identity_map(m.space)
        ids[o] = add(f"id_{o}", o, o, ident, bounded_constant(ident, m, m))

    dropped = []
    for f in maps:
        pairs = [
            (a, b)
            for a, ma in objects.items()
            for b, mb in objects.items()
            if ma.space == f.dom and mb.space == f.cod
        ]
        for a, b in pairs:
            arrow = _arrow_name(f, a, b, len(pairs) > 1)
            bound = bounded_constant(f, objects[a], objects[b])
            if bound is None:
                dropped.append(arrow)
            else:
                add(arrow, a, b, f, bound)

    comp: dict[tuple[str, str], str] = {}
    grew = True
    while grew:
        grew = False
        for g, f in list(_composable(arrows)):
            if (g, f) in comp:
                continue
            a, d = arrows[f][0], arrows[g][1]
            h = compose_maps(under[g], under[f], name=f"{g}_o_{f}")
            bound = bounded_constant(h, objects[a], objects[d])
            # M(g∘f) <= M(f)·M(g), so composites of bounded maps stay bounded
            assert bound is not None
            comp[(g, f)] = add(h.name, a, d, h, bound)
            grew = True
    category = FinCategory(name, tuple(objects), arrows, comp, ids)
    return BoundedFragment(category, objects, under, bounds, not dropped, tuple(dropped))


def _composable(arrows: Mapping[str, tuple[str, str]]):
    for f, (_, b) in arrows.items():
        for g, (c, _) in arrows.items():
            if c == b:
                yield g, f


def cps_fragment(objects: Mapping[str, RationalMeasure], maps: Sequence[MeasurableMap], name: str = "CPS") -> BoundedFragment:
    return bounded_fragment(objects, maps, name, require_probability=True)


def cms_fragment(objects: Mapping[str, RationalMeasure], maps: Sequence[MeasurableMap], name: str = "CMS") -> BoundedFragment:
    return bounded_fragment(objects, maps, name)


def normalization_functor(cms: BoundedFragment, name: str = "N") -> tuple[BoundedFragment, FinFunctor]:
    """N: CMS → CPS on a fragment: rescale each object to total mass 1, keep every arrow.

    Arrow bounds transport as M·ν(Y)/μ(X).
    """
    normed = {o: normalize(m) for o, m in cms.measures.items()}
    arrows = dict(cms.category.arrows)
    bounds = {}
    for f, (a, b) in arrows.items():
        bounds[f] = bounded_constant(cms.maps[f], normed[a], normed[b])
    cat = FinCategory(f"{cms.category.name}_normalized", cms.category.objects, arrows, dict(cms.category.comp), dict(cms.category.ids))
    cps = BoundedFragment(cat, normed, dict(cms.maps), bounds, cms.full, cms.dropped)
    functor = FinFunctor(name, cms.category, cat, {o: o for o in cat.objects}, {f: f for f in arrows})
    return cps, functor


def relabel_category(c: FinCategory, rename: Mapping[str, str], name: str | None = None) -> FinCategory:
    """Rename arrows; used to compare categories up to arrow names."""
    r = lambda f: rename.get(f, f)  # noqa: E731
    return FinCategory(
        name or c.name,
        c.objects,
        {r(f): ends for f, ends in c.arrows.items()},
        {(r(g), r(f)): r(h) for (g, f), h in c.comp.items()},
        {a: r(i) for a, i in c.ids.items()},
    )


def enumerate_preorders(elements: Sequence[str]) -> Iterable[frozenset[tuple[str, str]]]:
    """All reflexive transitive relations on ``elements`` (brute force)."""
    off = [(a, b) for a in elements for b in elements if a != b]
    diag = {(a, a) for a in elements}
    for bits in itertools.product((False, True), repeat=len(off)):
        rel = diag | {p for p, keep in zip(off, bits) if keep}
        if all((a, c) in rel for a, b in rel for b2, c in rel if b == b2):
            yield frozenset(rel)
