#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "latred/types.hpp"

namespace latred {

inline constexpr const char* kToolkitVersion = "0.1.0";

// Matrix files: JSON object {"n": int, "re": [row-major], "im": [row-major]}
// (written), or CSV with one row per line and "a+bi" tokens (accepted on
// input; "j" is accepted as the imaginary suffix too).
ComplexMatrix read_matrix(const std::filesystem::path& path);
void write_matrix_json(const std::filesystem::path& path, const ComplexMatrix& M);

nlohmann::json matrix_to_json(const ComplexMatrix& M);
ComplexMatrix matrix_from_json(const nlohmann::json& j);
nlohmann::json gaussian_matrix_to_json(const GaussianIntMatrix& Z);
GaussianIntMatrix gaussian_matrix_from_json(const nlohmann::json& j);

// Shortest round-trippable decimal form of a double (%.17g).
std::string format_double(double v);

struct Histogram {
    double lo = 0.0;
    double bin_width = 0.0;
    std::vector<std::uint64_t> counts;

    double bin_left(std::size_t i) const { return lo + bin_width * static_cast<double>(i); }
    double bin_right(std::size_t i) const { return lo + bin_width * static_cast<double>(i + 1); }
    std::uint64_t total() const;
};

// Contiguous equal-width bins anchored at floor(min / width) * width; every
// sample lands in exactly one bin.
Histogram make_histogram(std::span<const double> values, double bin_width);
Histogram make_histogram_anchored(std::span<const double> values, double lo,
                                  double bin_width, std::size_t nbins);

void write_histogram_csv(const std::filesystem::path& path, const Histogram& h);
// Two histograms over the same bins (secondary column, e.g. the classical
// orthogonality-defect variant).
void write_histogram2_csv(const std::filesystem::path& path, const Histogram& h,
                          const Histogram& secondary, const std::string& label2);

std::uint64_t file_digest(const std::filesystem::path& path);

// Run manifest: command, full config, seed, toolkit version, timestamp and
// input digests. Timestamps live only in manifests so that all data files
// are byte-reproducible.
nlohmann::json make_manifest(const std::string& command, const nlohmann::json& config,
                             std::uint64_t seed,
                             const std::vector<std::filesystem::path>& inputs);
void write_manifest(const std::filesystem::path& path, const nlohmann::json& manifest);

void write_text_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace latred
