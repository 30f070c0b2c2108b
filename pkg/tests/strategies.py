from fractions import Fraction

from hypothesis import strategies as st

from catprob.finspace import MeasurableMap, make_space
from catprob.giry import make_mix, make_mix2
from catprob.kernel import make_kernel
from catprob.measure import RationalMeasure, RealObservable


@st.composite
def partitions_of(draw, points):
    n = len(points)
    blocks = draw(st.lists(st.integers(0, n - 1), min_size=n, max_size=n))
    groups: dict[int, list[str]] = {}
    for label, b in zip(points, blocks):
        groups.setdefault(b, []).append(label)
    return list(groups.values())


@st.composite
def spaces(draw, min_points=1, max_points=5, name="X", prefix="x"):
    n = draw(st.integers(min_points, max_points))
    labels = [f"{prefix}{i}" for i in range(n)]
    return make_space(name, labels, draw(partitions_of(labels)))


def prob_weights(n, allow_zero=True):
    lo = 0 if allow_zero else 1
    return st.lists(st.integers(lo, 6), min_size=n, max_size=n).filter(any).map(
        lambda raw: tuple(Fraction(r, sum(raw)) for r in raw)
    )


@st.composite
def measures(draw, space, probability=True):
    if probability:
        return RationalMeasure(space, draw(prob_weights(len(space.atoms))))
    ws = draw(st.lists(st.fractions(0, 5, max_denominator=4), min_size=len(space.atoms), max_size=len(space.atoms)))
    return RationalMeasure(space, tuple(ws))


@st.composite
def observables(draw, space):
    vals = draw(st.lists(st.fractions(-5, 5, max_denominator=6), min_size=len(space.atoms), max_size=len(space.atoms)))
    return RealObservable(space, tuple(vals))


@st.composite
def maps(draw, dom, cod, name="f"):
    """A measurable map: each domain atom lands in one codomain atom."""
    graph = {}
    for atom in dom.atoms:
        target = draw(st.sampled_from(cod.atoms))
        for x in atom:
            graph[x] = draw(st.sampled_from(target))
    return MeasurableMap(name, dom, cod, tuple(graph[x] for x in dom.points))


@st.composite
def kernels(draw, dom, cod):
    return make_kernel(dom, cod, [draw(prob_weights(len(cod.atoms))) for _ in dom.atoms])


@st.composite
def mixes(draw, space, max_support=3):
    k = draw(st.integers(1, max_support))
    ws = draw(prob_weights(k, allow_zero=False))
    return make_mix(space, [(draw(measures(space)), w) for w in ws])


@st.composite
def mix2s(draw, space, max_support=3):
    k = draw(st.integers(1, max_support))
    ws = draw(prob_weights(k, allow_zero=False))
    return make_mix2(space, [(draw(mixes(space, max_support)), w) for w in ws])
