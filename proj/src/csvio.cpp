#include "fracdim/csvio.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "fracdim/errors.hpp"

namespace fracdim {

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (x == 0.0) return "0";  // normalize -0
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot open output file: " + path);
    return out;
}

}  // namespace

void write_points_csv(const std::string& path, const PointCloud& points) {
    auto out = open_out(path);
    const char* headers[] = {"x", "x,y", "x,y,z"};
    std::size_t d = points.empty() ? 1 : points.front().size();
    out << headers[d - 1] << "\n";
    for (const Vec& p : points) {
        for (std::size_t i = 0; i < p.size(); ++i)
            out << (i ? "," : "") << format_double(p[i]);
        out << "\n";
    }
}

void write_profile_csv(const std::string& path, const BoxCountProfile& profile) {
    auto out = open_out(path);
    out << "delta,count\n";
    for (std::size_t i = 0; i < profile.scales.size(); ++i)
        out << format_double(profile.scales[i]) << "," << profile.counts[i] << "\n";
}

void write_curve_csv(const std::string& path, const std::vector<PressureSample>& samples) {
    auto out = open_out(path);
    out << "s,lower,upper\n";
    for (const auto& sample : samples)
        out << format_double(sample.s) << "," << format_double(sample.lower) << ","
            << format_double(sample.upper) << "\n";
}

void write_spectrum_csv(const std::string& path, const LyapunovSpectrum& spectrum) {
    auto out = open_out(path);
    out << "k,chi,stderr\n";
    for (std::size_t k = 0; k < spectrum.exponents.size(); ++k)
        out << (k + 1) << "," << format_double(spectrum.exponents[k]) << ","
            << format_double(spectrum.standard_error[k]) << "\n";
}

void write_separation_csv(const std::string& path, const SeparationReport& report) {
    auto out = open_out(path);
    out << "n,delta,rate\n";
    for (std::size_t k = 0; k < report.deltas.size(); ++k)
        out << (k + 1) << "," << format_double(report.deltas[k]) << ","
            << format_double(report.rates[k]) << "\n";
}

}  // namespace fracdim
