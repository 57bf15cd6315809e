#pragma once

#include <string>
#include <vector>

#include "fracdim/boxcount.hpp"
#include "fracdim/pressure.hpp"
#include "fracdim/selfaffine.hpp"
#include "fracdim/selfsimilar.hpp"

namespace fracdim {

/// CSV writers with a fixed 17-significant-digit format so identical inputs
/// reproduce byte-identical artifacts.
void write_points_csv(const std::string& path, const PointCloud& points);
void write_profile_csv(const std::string& path, const BoxCountProfile& profile);
void write_curve_csv(const std::string& path, const std::vector<PressureSample>& samples);
void write_spectrum_csv(const std::string& path, const LyapunovSpectrum& spectrum);
void write_separation_csv(const std::string& path, const SeparationReport& report);

std::string format_double(double x);

}  // namespace fracdim
