"""The Giry monad on finite spaces, restricted to finitely supported mixtures.

P(X) is a simplex and is never materialized. Elements of P(P(X)) and
P(P(P(X))) are represented by finitely supported mixtures (``MixMeasure`` and
``MixMixMeasure``); on these every integral over P(X) is a finite sum, so all
monad identities are decided exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import partial
from typing import Callable, Iterable, Sequence

from .errors import NegativeWeight, NotNormalized, NotProbability, SpaceMismatch
from .finspace import FinSpace, MeasurableMap, MeasurableSet
from .measure import RationalMeasure, dirac, integrate, mix_measures, pushforward
from .measure import RealObservable
from .report import LawReport


def _merge(pairs: Iterable[tuple], what: str) -> tuple[tuple, tuple[Fraction, ...]]:
    """Collapse duplicate support entries, sum their weights, and check positivity/normalization."""
    merged: dict = {}
    for item, w in pairs:
        w = Fraction(w)
        if w <= 0:
            raise NegativeWeight(f"{what}: support weight {w} is not positive")
        merged[item] = merged.get(item, Fraction(0)) + w
    total = sum(merged.values(), Fraction(0))
    if total != 1:
        raise NotNormalized(f"{what}: mixture weights sum to {total}")
    return tuple(merged), tuple(merged.values())


def _mix_key(m: "MixMeasure"):
    return tuple(p.weights for p in m.support), m.weights


@dataclass(frozen=True)
class MixMeasure:
    """A finitely supported element of P(P(X)): weights over distinct probability measures."""

    base: FinSpace
    support: tuple[RationalMeasure, ...]
    weights: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.support) != len(self.weights):
            raise ValueError("support and weights differ in length")
        for p in self.support:
            if p.space != self.base:
                raise SpaceMismatch(f"support measure on {p.space.name}, mixture on {self.base.name}")
            if not p.is_probability:
                raise NotProbability(f"support measure has total mass {p.total}")
        items, weights = _merge(zip(self.support, self.weights), f"mix on {self.base.name}")
        order = sorted(range(len(items)), key=lambda i: items[i].weights)
        object.__setattr__(self, "support", tuple(items[i] for i in order))
        object.__setattr__(self, "weights", tuple(weights[i] for i in order))

    def items(self):
        return zip(self.support, self.weights)


@dataclass(frozen=True)
class MixMixMeasure:
    """A finitely supported element of P(P(P(X)))."""

    base: FinSpace
    support: tuple[MixMeasure, ...]
    weights: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.support) != len(self.weights):
            raise ValueError("support and weights differ in length")
        for m in self.support:
            if m.base != self.base:
                raise SpaceMismatch(f"support mixture on {m.base.name}, outer mixture on {self.base.name}")
        items, weights = _merge(zip(self.support, self.weights), f"mix2 on {self.base.name}")
        order = sorted(range(len(items)), key=lambda i: _mix_key(items[i]))
        object.__setattr__(self, "support", tuple(items[i] for i in order))
        object.__setattr__(self, "weights", tuple(weights[i] for i in order))

    def items(self):
        return zip(self.support, self.weights)


def make_mix(base: FinSpace, pairs: Iterable[tuple[RationalMeasure, object]]) -> MixMeasure:
    pairs = list(pairs)
    return MixMeasure(base, tuple(p for p, _ in pairs), tuple(Fraction(w) for _, w in pairs))


def make_mix2(base: FinSpace, pairs: Iterable[tuple[MixMeasure, object]]) -> MixMixMeasure:
    pairs = list(pairs)
    return MixMixMeasure(base, tuple(m for m, _ in pairs), tuple(Fraction(w) for _, w in pairs))


# unit


def giry_unit(space: FinSpace, x: str) -> RationalMeasure:
    """α_X(x) = δ_x."""
    return dirac(space, x)


def unit_preimage_case(
    space: FinSpace, f_set: MeasurableSet, b_contains_0: bool, b_contains_1: bool
) -> MeasurableSet:
    """α⁻¹({P : P(F) ∈ B}), which only depends on whether 0 and 1 lie in B."""
    if f_set.space != space:
        raise SpaceMismatch(f"set lives in {f_set.space.name}, not {space.name}")
    if b_contains_1 and b_contains_0:
        return space.event(space.points)
    if b_contains_1:
        return f_set
    if b_contains_0:
        return f_set.complement()
    return space.event(())


def mix_unit(p: RationalMeasure) -> MixMeasure:
    """α_{P(X)}(P) = δ_P."""
    return MixMeasure(p.space, (p,), (Fraction(1),))


def mix2_unit(mix: MixMeasure) -> MixMixMeasure:
    return MixMixMeasure(mix.base, (mix,), (Fraction(1),))


def dirac_decomposition(p: RationalMeasure, representatives: Sequence[str] | None = None) -> MixMeasure:
    """P(α)(P) = Σ_A P(A)·δ_{δ_{x_A}}, one representative x_A per charged atom.

    By default the representative is the first point of the atom.
    """
    space = p.space
    reps = representatives or [space.representative(i) for i in range(len(space.atoms))]
    pairs = [(dirac(space, reps[i]), w) for i, w in enumerate(p.weights) if w > 0]
    return make_mix(space, pairs)


# functor action


def giry_map(f: MeasurableMap, obj):
    """P(f) on measures, P(P(f)) on mixtures, P(P(P(f))) on mixtures of mixtures."""
    if isinstance(obj, RationalMeasure):
        return pushforward(obj, f)
    if isinstance(obj, MixMeasure):
        if obj.base != f.dom:
            raise SpaceMismatch(f"mixture on {obj.base.name}, map from {f.dom.name}")
        return make_mix(f.cod, ((pushforward(p, f), w) for p, w in obj.items()))
    if isinstance(obj, MixMixMeasure):
        if obj.base != f.dom:
            raise SpaceMismatch(f"mixture on {obj.base.name}, map from {f.dom.name}")
        return make_mix2(f.cod, ((giry_map(f, m), w) for m, w in obj.items()))
    raise TypeError(f"cannot apply the Giry functor to {type(obj).__name__}")


# multiplication


def giry_mult(mix: MixMeasure) -> RationalMeasure:
    """E(π')(F) = ∫ P(F) π'(dP), the barycenter Σ w_i·P_i."""
    return mix_measures(zip(mix.weights, mix.support))


def flatten_mix2(mm: MixMixMeasure) -> MixMeasure:
    """E_{P(X)}(π''): the barycenter of the mixtures, as a mixture."""
    return make_mix(mm.base, ((p, w * v) for m, w in mm.items() for p, v in m.items()))


def map_mult(mm: MixMixMeasure) -> MixMeasure:
    """P(E)(π''): push π'' forward along E."""
    return make_mix(mm.base, ((giry_mult(m), w) for m, w in mm.items()))


def merge_mixes(terms: Iterable[tuple[object, MixMeasure]]) -> MixMeasure:
    """Σ c_i·π'_i as a single mixture."""
    terms = list(terms)
    base = terms[0][1].base
    return make_mix(base, ((p, Fraction(c) * w) for c, m in terms for p, w in m.items()))


def xi(theta: RealObservable) -> Callable[[RationalMeasure], Fraction]:
    """ξ_θ: P(X) → ℝ, P ↦ ∫ θ dP."""
    return partial(integrate, theta)


# law checks


def _fmt(m: RationalMeasure) -> str:
    return "(" + ",".join(str(w) for w in m.weights) + ")"


def _collect_measures(samples: Iterable[MixMixMeasure]) -> list[RationalMeasure]:
    seen: dict[RationalMeasure, None] = {}
    for mm in samples:
        for mix in mm.support:
            for p in mix.support:
                seen.setdefault(p, None)
    return list(seen)


def check_monad_laws(
    space: FinSpace,
    samples: Sequence[MixMixMeasure],
    points: Sequence[str] | None = None,
    measures: Sequence[RationalMeasure] = (),
) -> LawReport:
    """Left unit, right unit and associativity on the given samples.

    The unit laws are checked on every measure occurring in ``samples``, on
    ``measures``, and on δ_x for each of ``points`` (default: all points).
    """
    report = LawReport("monad laws")
    pts = space.points if points is None else points
    probes = list(measures) + _collect_measures(samples) + [giry_unit(space, x) for x in pts]
    for p in probes:
        if p.space != space:
            raise SpaceMismatch(f"sample on {p.space.name}, expected {space.name}")
    for p in probes:
        left = giry_mult(mix_unit(p))
        report.record("left-unit", left == p, f"P={_fmt(p)} gave {_fmt(left)}")
    for p in probes:
        right = giry_mult(dirac_decomposition(p))
        report.record("right-unit", right == p, f"P={_fmt(p)} gave {_fmt(right)}")
    for mm in samples:
        if mm.base != space:
            raise SpaceMismatch(f"sample on {mm.base.name}, expected {space.name}")
        lhs = giry_mult(flatten_mix2(mm))
        rhs = giry_mult(map_mult(mm))
        report.record("assoc", lhs == rhs, f"E∘E_P gave {_fmt(lhs)}, E∘P(E) gave {_fmt(rhs)}")
    return report


def check_unit_naturality(f: MeasurableMap, points: Iterable[str] | None = None) -> LawReport:
    """α_Y∘f = P(f)∘α_X at each sample point."""
    report = LawReport("unit naturality")
    for x in f.dom.points if points is None else points:
        lhs = giry_unit(f.cod, f(x))
        rhs = giry_map(f, giry_unit(f.dom, x))
        report.record("unit-naturality", lhs == rhs, f"x={x}: δ_f(x)={_fmt(lhs)}, P(f)(δ_x)={_fmt(rhs)}")
    return report


def check_mult_naturality(f: MeasurableMap, mixes: Iterable[MixMeasure]) -> LawReport:
    """E_Y∘P(P(f)) = P(f)∘E_X on each sample mixture."""
    report = LawReport("multiplication naturality")
    for mix in mixes:
        lhs = giry_mult(giry_map(f, mix))
        rhs = pushforward(giry_mult(mix), f)
        report.record("mult-naturality", lhs == rhs, f"E(P(P(f))π')={_fmt(lhs)}, P(f)(Eπ')={_fmt(rhs)}")
    return report
