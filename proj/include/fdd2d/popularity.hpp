#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "fdd2d/rng.hpp"

namespace fdd2d {

/// Zero-based file index; file `id` has popularity rank `id + 1`.
using FileId = std::uint32_t;

inline constexpr double kBitsPerMegabyte = 8.0e6;

/// Zipf pmf over ranks 1..m: f_s = s^-gamma / sum_g g^-gamma.
/// Throws std::invalid_argument for m == 0 or a negative exponent.
std::vector<double> zipf_pmf(std::size_t m, double gamma_r);

struct FileSizeRange {
    double min_mb = 5.0;
    double max_mb = 50.0;
};

/// A video library: Zipf popularity plus a size in bits for every file.
/// Immutable once built; sampling only reads it.
class ContentLibrary {
public:
    /// Zipf library with sizes drawn uniformly from `sizes` (independent of rank).
    ContentLibrary(std::size_t m, double gamma_r, FileSizeRange sizes, Rng& rng);

    /// Library from an explicit pmf and sizes. The pmf must be positive,
    /// non-increasing and normalized; sizes must be positive.
    ContentLibrary(std::vector<double> pmf, std::vector<double> size_bits, double gamma_r = 0.0);

    std::size_t size() const { return pmf_.size(); }
    double gamma_r() const { return gamma_r_; }
    const std::vector<double>& pmf() const { return pmf_; }
    double popularity(FileId file) const;
    double size_bits(FileId file) const;

    /// Draws a request; the marginal law is pmf().
    FileId sample_request(Rng& rng) const;

private:
    void build_cdf();

    double gamma_r_ = 0.0;
    std::vector<double> pmf_;
    std::vector<double> cdf_;
    std::vector<double> size_bits_;
};

}  // namespace fdd2d
