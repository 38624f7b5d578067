//
// tuckerplan : pinned acceptance thresholds
//
// One place for every tolerance the acceptance suite asserts against.
// Exact-integer checks (costs, volumes, counts) carry no tolerance and do
// not appear here.
//

#pragma once

namespace tuckerplan::tol {

// sweep error may rise by at most this, relative, between in-place sweeps
inline constexpr double kSweepMonotoneSlack = 1e-12;

// projector F F^T agreement across trees for start-of-sweep factor updates
inline constexpr double kProjectorTol = 1e-9;

// share of corpus specs where the searched tree must beat the best
// fixed construction strictly
inline constexpr double kStrictFlopsShare = 0.5;

// allowed band for the median best-fixed / searched flops ratio
inline constexpr double kFlopsMedianLo = 1.2;
inline constexpr double kFlopsMedianHi = 2.5;

// share of corpus specs where per-node grids must beat one fixed grid
inline constexpr double kStrictVolumeShare = 0.7;

// 90th percentile of static / dynamic volume must reach this factor
inline constexpr double kDynamicP90Gain = 2.0;

// volume reduction factor required on at least kReferenceGainCount of the
// reference datasets
inline constexpr double kReferenceGainFactor = 3.0;
inline constexpr int kReferenceGainCount = 2;

} // namespace tuckerplan::tol
