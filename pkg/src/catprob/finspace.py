"""Finite measurable spaces.

A σ-algebra on a finite set is determined by its atoms, so a space stores the
atom partition and nothing else. Points are string labels; both points and
atoms are kept in lexicographic order so equality is structural.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import (
    DomainMismatch,
    ExplosionGuard,
    MismatchedPoints,
    NonMeasurableMap,
    PartitionError,
    UnknownPoint,
)

Atom = tuple[str, ...]
Partition = tuple[Atom, ...]

DEFAULT_ENUMERATION_CAP = 10**6


def canonical_partition(blocks: Iterable[Iterable[str]]) -> Partition:
    return tuple(sorted(tuple(sorted(b)) for b in blocks))


def pair_label(x: str, y: str) -> str:
    return f"({x},{y})"


def _check_partition(points: Sequence[str], atoms: Sequence[Atom]) -> None:
    universe = set(points)
    if len(universe) != len(points):
        raise PartitionError("duplicate point labels")
    seen: set[str] = set()
    for atom in atoms:
        if not atom:
            raise PartitionError("empty atom")
        unknown = set(atom) - universe
        if unknown:
            raise PartitionError(f"atom {{{','.join(atom)}}} has unknown points {sorted(unknown)}")
        overlap = seen.intersection(atom)
        if overlap or len(set(atom)) != len(atom):
            raise PartitionError(f"atoms overlap on {sorted(overlap or atom)}")
        seen.update(atom)
    missing = universe - seen
    if missing:
        raise PartitionError(f"points {sorted(missing)} are in no atom")


@dataclass(frozen=True)
class FinSpace:
    """A finite set with the σ-algebra generated by a partition into atoms."""

    name: str
    points: tuple[str, ...]
    atoms: Partition

    def __post_init__(self):
        points = tuple(sorted(self.points))
        atoms = canonical_partition(self.atoms)
        _check_partition(points, atoms)
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "atoms", atoms)

    @cached_property
    def _atom_index(self) -> dict[str, int]:
        return {x: i for i, atom in enumerate(self.atoms) for x in atom}

    def atom_of(self, x: str) -> int:
        """Index of the atom containing ``x``."""
        try:
            return self._atom_index[x]
        except KeyError:
            raise UnknownPoint(f"{x!r} is not a point of {self.name}") from None

    def representative(self, atom: int) -> str:
        return self.atoms[atom][0]

    @property
    def is_discrete(self) -> bool:
        return len(self.atoms) == len(self.points)

    @property
    def sigma_size(self) -> int:
        return 2 ** len(self.atoms)

    def is_measurable_set(self, members: Iterable[str]) -> bool:
        members = frozenset(members)
        if not members <= set(self.points):
            return False
        return all(members.issuperset(a) or members.isdisjoint(a) for a in self.atoms)

    def event(self, members: Iterable[str]) -> "MeasurableSet":
        return MeasurableSet(self, frozenset(members))

    def atom_set(self, atom: int) -> "MeasurableSet":
        return MeasurableSet(self, frozenset(self.atoms[atom]))

    def atoms_in(self, members: Iterable[str]) -> list[int]:
        members = frozenset(members)
        return [i for i, a in enumerate(self.atoms) if members.issuperset(a)]

    def measurable_sets(self) -> Iterator["MeasurableSet"]:
        """All 2^(atoms) measurable sets, as unions of atoms."""
        for mask in range(self.sigma_size):
            yield self.event(x for i, a in enumerate(self.atoms) if mask >> i & 1 for x in a)


@dataclass(frozen=True)
class MeasurableSet:
    space: FinSpace
    members: frozenset[str]

    @property
    def is_valid(self) -> bool:
        return self.space.is_measurable_set(self.members)

    def complement(self) -> "MeasurableSet":
        return MeasurableSet(self.space, frozenset(self.space.points) - self.members)


def make_space(name: str, points: Iterable[str], atoms: Iterable[Iterable[str]] | None = None) -> FinSpace:
    """Build a space; ``atoms=None`` gives the discrete σ-algebra."""
    points = tuple(points)
    if atoms is None:
        atoms = [(x,) for x in points]
    return FinSpace(name, points, tuple(tuple(a) for a in atoms))


def discrete_space(name: str, points: Iterable[str]) -> FinSpace:
    return make_space(name, points)


def sigma_closure(points: Iterable[str], generators: Iterable[Iterable[str]]) -> Partition:
    """Atoms of the σ-algebra generated by ``generators``.

    Two points share an atom exactly when they belong to the same generators.
    """
    points = sorted(set(points))
    universe = set(points)
    gens = [frozenset(g) for g in generators]
    for g in gens:
        unknown = g - universe
        if unknown:
            raise UnknownPoint(f"generator mentions unknown points {sorted(unknown)}")
    classes: dict[tuple[bool, ...], list[str]] = {}
    for x in points:
        classes.setdefault(tuple(x in g for g in gens), []).append(x)
    return canonical_partition(classes.values())


def is_measurable(f: Mapping[str, str], dom: FinSpace, cod: FinSpace) -> bool:
    """True iff every preimage of a codomain atom is a union of domain atoms."""
    for atom in dom.atoms:
        target = cod.atom_of(f[atom[0]])
        if any(cod.atom_of(f[x]) != target for x in atom[1:]):
            return False
    return True


def is_sub_sigma_algebra(g_atoms: Iterable[Iterable[str]], f_atoms: Iterable[Iterable[str]]) -> bool:
    """True iff σ(g_atoms) ⊆ σ(f_atoms), i.e. ``f_atoms`` refines ``g_atoms``."""
    g_atoms = canonical_partition(g_atoms)
    f_atoms = canonical_partition(f_atoms)
    g_points = {x for a in g_atoms for x in a}
    f_points = {x for a in f_atoms for x in a}
    if g_points != f_points:
        raise MismatchedPoints("partitions are over different point sets")
    block = {x: i for i, a in enumerate(g_atoms) for x in a}
    return all(len({block[x] for x in a}) == 1 for a in f_atoms)


def all_partitions(points: Sequence[str]) -> Iterator[Partition]:
    """Every set partition of ``points`` (Bell-number many)."""

    def rec(rest: list[str]) -> Iterator[list[list[str]]]:
        if not rest:
            yield []
            return
        head, tail = rest[0], rest[1:]
        for part in rec(tail):
            for i in range(len(part)):
                yield part[:i] + [[head] + part[i]] + part[i + 1:]
            yield [[head]] + part

    for p in rec(list(points)):
        yield canonical_partition(p)


@dataclass(frozen=True)
class MeasurableMap:
    """A measurable function between finite spaces.

    ``graph`` lists the image of each point of ``dom``, in ``dom.points`` order.
    """

    name: str
    dom: FinSpace
    cod: FinSpace
    graph: tuple[str, ...] = field(repr=False)

    def __post_init__(self):
        if len(self.graph) != len(self.dom.points):
            raise DomainMismatch(f"map {self.name} is not total on {self.dom.name}")
        for y in self.graph:
            self.cod.atom_of(y)
        if not is_measurable(self.as_dict(), self.dom, self.cod):
            raise NonMeasurableMap(f"map {self.name} is not measurable")

    def as_dict(self) -> dict[str, str]:
        return dict(zip(self.dom.points, self.graph))

    @cached_property
    def _lookup(self) -> dict[str, str]:
        return self.as_dict()

    def __call__(self, x: str) -> str:
        try:
            return self._lookup[x]
        except KeyError:
            raise UnknownPoint(f"{x!r} is not a point of {self.dom.name}") from None

    def preimage(self, members: Iterable[str]) -> frozenset[str]:
        members = frozenset(members)
        return frozenset(x for x, y in zip(self.dom.points, self.graph) if y in members)

    @cached_property
    def atom_image(self) -> tuple[int, ...]:
        """For each domain atom, the codomain atom it lands in."""
        g = self.as_dict()
        return tuple(self.cod.atom_of(g[a[0]]) for a in self.dom.atoms)


def make_map(name: str, dom: FinSpace, cod: FinSpace, mapping: Mapping[str, str]) -> MeasurableMap:
    unknown = set(mapping) - set(dom.points)
    if unknown:
        raise UnknownPoint(f"map {name} mentions unknown points {sorted(unknown)}")
    missing = [x for x in dom.points if x not in mapping]
    if missing:
        raise DomainMismatch(f"map {name} is undefined on {missing}")
    return MeasurableMap(name, dom, cod, tuple(mapping[x] for x in dom.points))


def identity_map(space: FinSpace, name: str | None = None) -> MeasurableMap:
    return MeasurableMap(name or f"id_{space.name}", space, space, space.points)


def constant_map(dom: FinSpace, cod: FinSpace, y: str, name: str | None = None) -> MeasurableMap:
    return MeasurableMap(name or f"const_{y}", dom, cod, (y,) * len(dom.points))


def compose_maps(g: MeasurableMap, f: MeasurableMap, name: str | None = None) -> MeasurableMap:
    """g∘f."""
    if f.cod != g.dom:
        raise DomainMismatch(f"cannot compose {g.name} after {f.name}: {f.cod.name} != {g.dom.name}")
    gd = g.as_dict()
    return MeasurableMap(name or f"{g.name}_o_{f.name}", f.dom, g.cod, tuple(gd[y] for y in f.graph))


def product_space(x: FinSpace, y: FinSpace, name: str | None = None) -> tuple[FinSpace, MeasurableMap, MeasurableMap]:
    """The product in Meas with its two projections.

    Atoms are the rectangles A×B, which is the coarsest σ-algebra making both
    projections measurable.
    """
    points = [pair_label(a, b) for a in x.points for b in y.points]
    atoms = [[pair_label(a, b) for a in ax for b in by] for ax in x.atoms for by in y.atoms]
    prod = make_space(name or f"{x.name}_x_{y.name}", points, atoms)
    first = {pair_label(a, b): a for a in x.points for b in y.points}
    second = {pair_label(a, b): b for a in x.points for b in y.points}
    p1 = make_map(f"p1_{prod.name}", prod, x, first)
    p2 = make_map(f"p2_{prod.name}", prod, y, second)
    return prod, p1, p2


def pairing(
    f: MeasurableMap,
    g: MeasurableMap,
    product: tuple[FinSpace, MeasurableMap, MeasurableMap] | None = None,
    name: str | None = None,
) -> MeasurableMap:
    """The mediating map z ↦ (f(z), g(z))."""
    if f.dom != g.dom:
        raise DomainMismatch(f"{f.name} and {g.name} have different domains")
    prod = (product or product_space(f.cod, g.cod))[0]
    graph = tuple(pair_label(a, b) for a, b in zip(f.graph, g.graph))
    return MeasurableMap(name or f"pair_{f.name}_{g.name}", f.dom, prod, graph)


@dataclass(frozen=True)
class ProductUniversalReport:
    count: int
    witness: MeasurableMap | None
    expected: MeasurableMap
    candidates: int

    @property
    def passed(self) -> bool:
        return self.count == 1 and self.witness == self.expected


def check_product_universal(
    x: FinSpace,
    y: FinSpace,
    z: FinSpace,
    f: MeasurableMap,
    g: MeasurableMap,
    cap: int = DEFAULT_ENUMERATION_CAP,
) -> ProductUniversalReport:
    """Count measurable maps h: Z → X×Y with p1∘h = f and p2∘h = g by enumeration."""
    if f.dom != z or g.dom != z or f.cod != x or g.cod != y:
        raise DomainMismatch("f must be Z→X and g must be Z→Y")
    prod, p1, p2 = product_space(x, y)
    n_candidates = len(prod.points) ** len(z.points)
    if n_candidates > cap:
        raise ExplosionGuard(f"{len(prod.points)}^{len(z.points)} = {n_candidates} candidate maps exceeds cap {cap}")
    expected = pairing(f, g, (prod, p1, p2))
    first, second = p1.as_dict(), p2.as_dict()
    count = 0
    witness = None
    for graph in itertools.product(prod.points, repeat=len(z.points)):
        if any(first[h] != a for h, a in zip(graph, f.graph)):
            continue
        if any(second[h] != b for h, b in zip(graph, g.graph)):
            continue
        if not is_measurable(dict(zip(z.points, graph)), z, prod):
            continue
        count += 1
        witness = MeasurableMap(expected.name, z, prod, graph)
    return ProductUniversalReport(count, witness, expected, n_candidates)
