"""Exact rational measures on finite spaces.

Weights are stored per atom, so every measure is additive by construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    ArityMismatch,
    NegativeWeight,
    NotMeasurable,
    NotNormalized,
    SpaceMismatch,
    ZeroTotalMass,
)
from .finspace import FinSpace, MeasurableMap, MeasurableSet

FINITE = "finite"
PROBABILITY = "probability"


def _weights(values: Iterable, what: str) -> tuple[Fraction, ...]:
    out = tuple(Fraction(v) for v in values)
    for w in out:
        if w < 0:
            raise NegativeWeight(f"{what}: negative weight {w}")
    return out


@dataclass(frozen=True)
class RationalMeasure:
    """A finite measure given by one nonnegative rational per atom.

    ``kind`` is derived: a measure is a probability measure exactly when its
    total mass is 1.
    """

    space: FinSpace
    weights: tuple[Fraction, ...]

    def __post_init__(self):
        weights = _weights(self.weights, f"measure on {self.space.name}")
        if len(weights) != len(self.space.atoms):
            raise ArityMismatch(
                f"{len(weights)} weights for {len(self.space.atoms)} atoms of {self.space.name}"
            )
        object.__setattr__(self, "weights", weights)

    @property
    def total(self) -> Fraction:
        return sum(self.weights, Fraction(0))

    @property
    def kind(self) -> str:
        return PROBABILITY if self.total == 1 else FINITE

    @property
    def is_probability(self) -> bool:
        return self.total == 1

    def __call__(self, members: Iterable[str] | MeasurableSet) -> Fraction:
        return measure_of(self, members)

    def scale(self, c) -> "RationalMeasure":
        c = Fraction(c)
        return RationalMeasure(self.space, tuple(c * w for w in self.weights))


@dataclass(frozen=True)
class RealObservable:
    """A measurable θ: X → ℚ, constant on atoms."""

    space: FinSpace
    values: tuple[Fraction, ...]

    def __post_init__(self):
        values = tuple(Fraction(v) for v in self.values)
        if len(values) != len(self.space.atoms):
            raise ArityMismatch(f"{len(values)} values for {len(self.space.atoms)} atoms of {self.space.name}")
        object.__setattr__(self, "values", values)

    def __call__(self, x: str) -> Fraction:
        return self.values[self.space.atom_of(x)]


def make_measure(space: FinSpace, atom_weights: Sequence, kind: str = PROBABILITY) -> RationalMeasure:
    if kind not in (FINITE, PROBABILITY):
        raise ValueError(f"unknown measure kind {kind!r}")
    m = RationalMeasure(space, tuple(atom_weights))
    if kind == PROBABILITY and m.total != 1:
        raise NotNormalized(f"probability weights sum to {m.total}")
    return m


def make_observable(space: FinSpace, atom_values: Sequence) -> RealObservable:
    return RealObservable(space, tuple(atom_values))


def indicator(space: FinSpace, members: Iterable[str]) -> RealObservable:
    members = frozenset(members)
    if not space.is_measurable_set(members):
        raise NotMeasurable(f"{sorted(members)} is not measurable in {space.name}")
    return RealObservable(space, tuple(Fraction(int(set(a) <= members)) for a in space.atoms))


def measure_of(m: RationalMeasure, s: Iterable[str] | MeasurableSet) -> Fraction:
    if isinstance(s, MeasurableSet):
        if s.space != m.space:
            raise SpaceMismatch(f"set lives in {s.space.name}, measure on {m.space.name}")
        members = s.members
    else:
        members = frozenset(s)
    if not m.space.is_measurable_set(members):
        raise NotMeasurable(f"{sorted(members)} is not a union of atoms of {m.space.name}")
    return sum((m.weights[i] for i in m.space.atoms_in(members)), Fraction(0))


def dirac(space: FinSpace, x: str) -> RationalMeasure:
    """The point mass at ``x``; it charges the atom containing ``x``."""
    i = space.atom_of(x)
    return RationalMeasure(space, tuple(Fraction(int(j == i)) for j in range(len(space.atoms))))


def pushforward(m: RationalMeasure, f: MeasurableMap) -> RationalMeasure:
    """The image measure m∘f⁻¹ on ``f.cod``."""
    if m.space != f.dom:
        raise SpaceMismatch(f"measure on {m.space.name}, map {f.name} from {f.dom.name}")
    out = [Fraction(0)] * len(f.cod.atoms)
    for w, b in zip(m.weights, f.atom_image):
        out[b] += w
    return RationalMeasure(f.cod, tuple(out))


def integrate(theta: RealObservable, m: RationalMeasure) -> Fraction:
    if theta.space != m.space:
        raise SpaceMismatch(f"observable on {theta.space.name}, measure on {m.space.name}")
    return sum((v * w for v, w in zip(theta.values, m.weights)), Fraction(0))


def absolutely_continuous(q: RationalMeasure, p: RationalMeasure) -> bool:
    """q ≪ p: every p-null set is q-null."""
    if q.space != p.space:
        raise SpaceMismatch(f"{q.space.name} != {p.space.name}")
    return all(wq == 0 for wq, wp in zip(q.weights, p.weights) if wp == 0)


def bounded_constant(f: MeasurableMap, p_dom: RationalMeasure, p_cod: RationalMeasure) -> Fraction | None:
    """Smallest M with p_dom(f⁻¹(A)) ≤ M·p_cod(A) for all measurable A, or None.

    Checking codomain atoms is enough: a ratio of sums never exceeds the
    largest ratio of its terms. When the pushforward vanishes the infimum is 0.
    """
    if p_dom.space != f.dom or p_cod.space != f.cod:
        raise SpaceMismatch(f"measures do not match the spaces of {f.name}")
    pushed = pushforward(p_dom, f).weights
    best = Fraction(0)
    for mass, base in zip(pushed, p_cod.weights):
        if base == 0:
            if mass > 0:
                return None
            continue
        best = max(best, mass / base)
    return best


def normalize(m: RationalMeasure) -> RationalMeasure:
    total = m.total
    if total == 0:
        raise ZeroTotalMass(f"measure on {m.space.name} has zero total mass")
    return RationalMeasure(m.space, tuple(w / total for w in m.weights))


def mix_measures(terms: Iterable[tuple[Fraction, RationalMeasure]]) -> RationalMeasure:
    """Σ c_i·m_i over measures on a common space."""
    terms = list(terms)
    if not terms:
        raise ValueError("empty combination")
    space = terms[0][1].space
    out = [Fraction(0)] * len(space.atoms)
    for c, m in terms:
        if m.space != space:
            raise SpaceMismatch(f"{m.space.name} != {space.name}")
        for i, w in enumerate(m.weights):
            out[i] += Fraction(c) * w
    return RationalMeasure(space, tuple(out))

