#include "fdd2d/popularity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace fdd2d {

std::vector<double> zipf_pmf(std::size_t m, double gamma_r)
{
    if (m == 0) {
        throw std::invalid_argument("zipf_pmf: library size must be at least 1");
    }
    if (!(gamma_r >= 0.0) || !std::isfinite(gamma_r)) {
        throw std::invalid_argument("zipf_pmf: exponent must be finite and non-negative");
    }
    std::vector<double> pmf(m);
    for (std::size_t s = 0; s < m; ++s) {
        pmf[s] = std::pow(static_cast<double>(s + 1), -gamma_r);
    }
    // Summing smallest-first keeps the normalizer accurate for large m.
    double total = 0.0;
    for (auto it = pmf.rbegin(); it != pmf.rend(); ++it) {
        total += *it;
    }
    for (double& p : pmf) {
        p /= total;
    }
    return pmf;
}

ContentLibrary::ContentLibrary(std::size_t m, double gamma_r, FileSizeRange sizes, Rng& rng)
    : gamma_r_(gamma_r), pmf_(zipf_pmf(m, gamma_r))
{
    if (!(sizes.min_mb > 0.0) || sizes.max_mb < sizes.min_mb) {
        throw std::invalid_argument("ContentLibrary: file size range must satisfy 0 < min <= max");
    }
    std::uniform_real_distribution<double> size_mb(sizes.min_mb, sizes.max_mb);
    size_bits_.resize(m);
    for (double& b : size_bits_) {
        b = size_mb(rng) * kBitsPerMegabyte;
    }
    build_cdf();
}

ContentLibrary::ContentLibrary(std::vector<double> pmf, std::vector<double> size_bits, double gamma_r)
    : gamma_r_(gamma_r), pmf_(std::move(pmf)), size_bits_(std::move(size_bits))
{
    if (pmf_.empty() || pmf_.size() != size_bits_.size()) {
        throw std::invalid_argument("ContentLibrary: pmf and sizes must be non-empty and equally long");
    }
    for (std::size_t s = 0; s < pmf_.size(); ++s) {
        if (!(pmf_[s] > 0.0) || (s > 0 && pmf_[s] > pmf_[s - 1])) {
            throw std::invalid_argument("ContentLibrary: pmf must be positive and non-increasing");
        }
        if (!(size_bits_[s] > 0.0)) {
            throw std::invalid_argument("ContentLibrary: file sizes must be positive");
        }
    }
    const double total = std::accumulate(pmf_.begin(), pmf_.end(), 0.0);
    if (std::abs(total - 1.0) > 1e-12) {
        throw std::invalid_argument("ContentLibrary: pmf must sum to 1");
    }
    build_cdf();
}

void ContentLibrary::build_cdf()
{
    cdf_.resize(pmf_.size());
    std::partial_sum(pmf_.begin(), pmf_.end(), cdf_.begin());
    cdf_.back() = 1.0;
}

double ContentLibrary::popularity(FileId file) const
{
    if (file >= pmf_.size()) {
        throw std::invalid_argument("ContentLibrary: file index out of range");
    }
    return pmf_[file];
}

double ContentLibrary::size_bits(FileId file) const
{
    if (file >= size_bits_.size()) {
        throw std::invalid_argument("ContentLibrary: file index out of range");
    }
    return size_bits_[file];
}

FileId ContentLibrary::sample_request(Rng& rng) const
{
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double u = unit(rng);
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    const auto idx = static_cast<std::size_t>(it - cdf_.begin());
    return static_cast<FileId>(std::min(idx, cdf_.size() - 1));
}

}  // namespace fdd2d
