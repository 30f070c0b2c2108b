"""Seeded random generators for spaces, maps, measures, kernels and mixtures.

Everything takes an explicit ``random.Random`` so law suites are reproducible.
Weights are small-denominator rationals.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from .finspace import FinSpace, MeasurableMap, make_space
from .giry import MixMeasure, MixMixMeasure, make_mix, make_mix2
from .kernel import StochKernel, make_kernel
from .measure import RationalMeasure, RealObservable


def random_partition(rng: random.Random, points: Sequence[str], n_atoms: int) -> list[list[str]]:
    points = list(points)
    rng.shuffle(points)
    cuts = sorted(rng.sample(range(1, len(points)), n_atoms - 1))
    bounds = [0, *cuts, len(points)]
    return [points[bounds[i]:bounds[i + 1]] for i in range(n_atoms)]


def random_space(
    rng: random.Random, n_atoms: int, name: str = "X", extra_points: int | None = None, prefix: str = "x"
) -> FinSpace:
    """A space with exactly ``n_atoms`` atoms and a few extra points spread among them."""
    if extra_points is None:
        extra_points = rng.randint(0, n_atoms)
    labels = [f"{prefix}{i}" for i in range(n_atoms + extra_points)]
    return make_space(name, labels, random_partition(rng, labels, n_atoms))


def random_weights(rng: random.Random, n: int, max_int: int = 6, allow_zero: bool = True) -> tuple[Fraction, ...]:
    """A random probability vector of length ``n``."""
    while True:
        raw = [rng.randint(0 if allow_zero else 1, max_int) for _ in range(n)]
        total = sum(raw)
        if total:
            return tuple(Fraction(r, total) for r in raw)


def random_measure(rng: random.Random, space: FinSpace, **kw) -> RationalMeasure:
    return RationalMeasure(space, random_weights(rng, len(space.atoms), **kw))


def random_finite_measure(rng: random.Random, space: FinSpace, max_int: int = 6) -> RationalMeasure:
    return RationalMeasure(space, tuple(Fraction(rng.randint(0, max_int), rng.randint(1, 3)) for _ in space.atoms))


def random_observable(rng: random.Random, space: FinSpace, lo: int = -5, hi: int = 5) -> RealObservable:
    return RealObservable(space, tuple(Fraction(rng.randint(lo, hi), rng.randint(1, 4)) for _ in space.atoms))


def random_kernel(rng: random.Random, dom: FinSpace, cod: FinSpace) -> StochKernel:
    return make_kernel(dom, cod, [random_weights(rng, len(cod.atoms)) for _ in dom.atoms])


def random_map(rng: random.Random, dom: FinSpace, cod: FinSpace, name: str = "f") -> MeasurableMap:
    """A random measurable map: each domain atom lands inside one codomain atom."""
    graph = {}
    for atom in dom.atoms:
        target = rng.choice(cod.atoms)
        for x in atom:
            graph[x] = rng.choice(target)
    return MeasurableMap(name, dom, cod, tuple(graph[x] for x in dom.points))


def random_mix(rng: random.Random, space: FinSpace, max_support: int = 4) -> MixMeasure:
    k = rng.randint(1, max_support)
    weights = random_weights(rng, k, allow_zero=False)
    return make_mix(space, [(random_measure(rng, space), w) for w in weights])


def random_mix2(rng: random.Random, space: FinSpace, max_support: int = 4) -> MixMixMeasure:
    k = rng.randint(1, max_support)
    weights = random_weights(rng, k, allow_zero=False)
    return make_mix2(space, [(random_mix(rng, space, max_support), w) for w in weights])
