from .bounds import (BinningBudget, BinningRegion, InnerBoundValues, OuterBoundValues,
                     binning_budget, binning_region, inner_bounds, outer_bounds,
                     projected_inequalities)
from .frontier import (RateQuintuple, RegionFrontier, Verdict, check_point, dominates,
                       pareto_indices)
from .search import SearchConfig, search_inner_region, zero_rate_region
