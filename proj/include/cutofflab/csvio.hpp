#pragma once

#include <string>
#include <vector>

#include "cutofflab/conditions.hpp"
#include "cutofflab/distance.hpp"
#include "cutofflab/spectral.hpp"

namespace cutofflab {

// All numbers are serialized with 17 significant digits, so every CSV/JSON
// cell round-trips to the exact library double.

// Spectrum export: one row per eigenvalue (index,eigenvalue,weight_at_start).
// weight_at_start is the rotation-invariant cluster aggregate sum f_i(x)^2
// divided evenly over the cluster members (degenerate eigenspaces have no
// canonical per-eigenvector weight). The analytic variant has one row per
// cluster carrying the full aggregate.
std::string spectrum_csv(const SpectralDecomposition& dec, std::size_t x);
std::string spectrum_csv(const AnalyticSpectrum& spec);
std::string spectrum_json(const SpectralDecomposition& dec, std::size_t x);
std::string spectrum_json(const AnalyticSpectrum& spec);

// Curve export: '#'-prefixed meta lines, then "c,value" rows.
std::string curve_csv(const ProfileCurve& curve);
std::string curve_json(const ProfileCurve& curve);

// Several curves over a common requested grid (e.g. one per family size);
// cells for grid points a curve dropped are "nan".
std::string multi_curve_csv(const std::vector<double>& c_grid,
                            const std::vector<ProfileCurve>& curves,
                            const std::vector<std::string>& labels);
std::string multi_curve_json(const std::vector<double>& c_grid,
                             const std::vector<ProfileCurve>& curves,
                             const std::vector<std::string>& labels);

// Condition report: meta comments, header "n,<c...>", one row per n,
// a "limsup" row, and a "reference" row when a known g is attached.
std::string report_csv(const ConditionReport& report);
std::string report_json(const ConditionReport& report);

}  // namespace cutofflab
