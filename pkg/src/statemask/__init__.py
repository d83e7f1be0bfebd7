"""Rate-leakage regions of state-dependent broadcast channels with state masking."""
from .probcore import (AuxiliaryJoint, ChannelSpec, InfeasibleError, NumericalError, Pmf,
                       ValidationError, assemble_joint, conditional_mi, entropy,
                       expected_cost, mutual_information)
from .discrete import (BinningBudget, BinningRegion, InnerBoundValues, OuterBoundValues,
                       RateQuintuple, RegionFrontier, SearchConfig, Verdict, binning_budget,
                       binning_region, check_point, inner_bounds, outer_bounds,
                       search_inner_region, zero_rate_region)
from .gaussian import (GaussianCoefficients, GaussianParams, GaussianQuadruple,
                       gaussian_coefficients, gaussian_rate_region, sweep_region)
from .gaussverify import (CovarianceModel, build_covariance, gaussian_mi,
                          verify_gaussian_point)

__version__ = "0.1.0"
