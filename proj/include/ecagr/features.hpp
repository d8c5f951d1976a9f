#pragma once

#include <vector>

#include "ecagr/linreg.hpp"
#include "ecagr/series.hpp"

namespace ecagr::features {

/// FAI annual growth together with its turning-point indicator
/// I_n = Y_n + 2 Y_{n-2} - 2 Y_{n-1}; the indicator starts two years after
/// the base series.
struct FaiIndicatorSeries {
    AnnualSeries base;
    AnnualSeries indicator;
};

/// Computes the indicator for every year with a full trailing triple.
/// Requires at least three values and percent units.
FaiIndicatorSeries fai_indicator(const AnnualSeries& fai_agr);

/// Indicator value at target_year - lag; throws DataError when that year is
/// not covered.
double lagged_indicator(const FaiIndicatorSeries& indicator, int target_year,
                        int lag = 4);

/// Secondary-sector share with its year-over-year delta D_n = S_n - S_{n-1}.
struct ShareDeltaSeries {
    AnnualSeries base;
    AnnualSeries delta;
};

/// Requires at least two values, percent units.
ShareDeltaSeries share_delta(const AnnualSeries& share);

/// One projected year of share bounds. Bounds that leave (0, 100) are not
/// clamped; they set domain_warning instead.
struct ShareProjection {
    int year = 0;
    double upper = 0.0; // continued linear decline
    double lower = 0.0; // accelerated decline, coefficient 1.3
    bool domain_warning = false;
};

/// upper = 2 S_{n-1} - S_{n-2}; lower = 2.3 S_{n-1} - 1.3 S_{n-2}.
/// Inputs must lie in (0, 100).
ShareProjection project_share_bounds(double share_prev, double share_prev2,
                                     int year = 0);

/// Multi-year projection: year one uses the last two actual shares; later
/// years apply the upper rule along the upper trajectory and the lower rule
/// along the lower trajectory.
std::vector<ShareProjection> chain_share_projection(const AnnualSeries& share,
                                                    int horizon);

/// Assembles the regression design over [from, to]: GDP growth, the
/// lag-year FAI indicator, and the share delta against EC growth.
DesignMatrix make_design(const MacroDataset& dataset, int from, int to,
                         int lag = 4);

/// Candidate pool for predictor elimination: GDP growth, the FAI indicator
/// at each listed lag, and the share delta.
DesignMatrix make_candidate_design(const MacroDataset& dataset, int from,
                                   int to,
                                   const std::vector<int>& lags = {1, 2, 3, 4});

} // namespace ecagr::features
