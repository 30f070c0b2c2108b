"""Exact categorical probability on finite measurable spaces."""

from .errors import CatProbError
from .fincat import (
    ChiObject,
    FinCategory,
    FinFunctor,
    FinNatTrans,
    check_functor,
    check_nat_trans,
    chi_category,
    chi_leq,
    cms_fragment,
    cps_fragment,
    make_category,
    normalization_functor,
    opposite_category,
    preorder_category,
    validate_category,
)
from .finspace import (
    FinSpace,
    MeasurableMap,
    MeasurableSet,
    all_partitions,
    check_product_universal,
    compose_maps,
    discrete_space,
    identity_map,
    is_measurable,
    is_sub_sigma_algebra,
    make_map,
    make_space,
    pairing,
    product_space,
    sigma_closure,
)
from .giry import (
    MixMeasure,
    MixMixMeasure,
    check_monad_laws,
    check_mult_naturality,
    check_unit_naturality,
    giry_map,
    giry_mult,
    giry_unit,
    make_mix,
    make_mix2,
    unit_preimage_case,
    xi,
)
from .kernel import StochKernel, compose_kernels, det_kernel, identity_kernel, kleisli_apply, make_kernel
from .measure import (
    RationalMeasure,
    RealObservable,
    absolutely_continuous,
    bounded_constant,
    dirac,
    integrate,
    make_measure,
    make_observable,
    measure_of,
    normalize,
    pushforward,
)

__version__ = "0.1.0"
