#include "infogeo/quantize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace infogeo {

namespace {

constexpr double kKeyLimit = 4.0e18;

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

double quantization_step(double scale) {
  if (!(scale > 0.0) || !std::isfinite(scale)) return 1.0;
  const double exponent = std::ceil(std::log10(scale));
  return std::pow(10.0, exponent - kSignificantDigits);
}

Eigen::VectorXd quantization_steps(const Eigen::MatrixXd& points) {
  Eigen::VectorXd steps(points.rows());
  for (Eigen::Index r = 0; r < points.rows(); ++r) {
    const double scale = points.cols() > 0 ? points.row(r).cwiseAbs().maxCoeff() : 0.0;
    steps[r] = quantization_step(scale);
  }
  return steps;
}

QuantizedIndex::QuantizedIndex(Eigen::VectorXd steps, std::size_t expected)
    : steps_(std::move(steps)), scratch_(static_cast<std::size_t>(steps_.size())) {
  std::size_t capacity = 16;
  while (capacity < 2 * expected) capacity *= 2;
  slots_.assign(capacity, 0);
  keys_.reserve(expected * static_cast<std::size_t>(dim()));
  hashes_.reserve(expected);
}

void QuantizedIndex::quantize(std::span<const double> point, std::int64_t* out) const {
  if (static_cast<Eigen::Index>(point.size()) != dim())
    throw std::invalid_argument("QuantizedIndex: point dimension mismatch");
  for (Eigen::Index i = 0; i < dim(); ++i) {
    const double scaled = std::clamp(point[i] / steps_[i], -kKeyLimit, kKeyLimit);
    out[i] = std::llround(scaled);
  }
}

std::uint64_t QuantizedIndex::hash_key(const std::int64_t* key) const {
  std::uint64_t h = 0x84222325cbf29ce4ULL;
  for (Eigen::Index i = 0; i < dim(); ++i) h = mix(h ^ static_cast<std::uint64_t>(key[i]));
  return h;
}

bool QuantizedIndex::same_key(std::size_t index, const std::int64_t* key) const {
  const auto* stored = keys_.data() + index * static_cast<std::size_t>(dim());
  return std::equal(stored, stored + dim(), key);
}

void QuantizedIndex::rehash(std::size_t capacity) {
  slots_.assign(capacity, 0);
  const std::size_t mask = capacity - 1;
  for (std::size_t i = 0; i < hashes_.size(); ++i) {
    std::size_t pos = hashes_[i] & mask;
    while (slots_[pos] != 0) pos = (pos + 1) & mask;
    slots_[pos] = static_cast<std::uint32_t>(i + 1);
  }
}

std::pair<std::size_t, bool> QuantizedIndex::insert(std::span<const double> point) {
  quantize(point, scratch_.data());
  const std::uint64_t h = hash_key(scratch_.data());
  const std::size_t mask = slots_.size() - 1;
  std::size_t pos = h & mask;
  while (slots_[pos] != 0) {
    const std::size_t candidate = slots_[pos] - 1;
    if (hashes_[candidate] == h && same_key(candidate, scratch_.data())) return {candidate, false};
    pos = (pos + 1) & mask;
  }
  if (hashes_.size() >= std::numeric_limits<std::uint32_t>::max() - 1)
    throw std::length_error("QuantizedIndex: too many points");
  const std::size_t index = hashes_.size();
  hashes_.push_back(h);
  keys_.insert(keys_.end(), scratch_.begin(), scratch_.end());
  slots_[pos] = static_cast<std::uint32_t>(index + 1);
  if (2 * hashes_.size() > slots_.size()) rehash(2 * slots_.size());
  return {index, true};
}

std::optional<std::size_t> QuantizedIndex::find(std::span<const double> point) const {
  std::vector<std::int64_t> key(static_cast<std::size_t>(dim()));
  quantize(point, key.data());
  const std::uint64_t h = hash_key(key.data());
  const std::size_t mask = slots_.size() - 1;
  for (std::size_t pos = h & mask; slots_[pos] != 0; pos = (pos + 1) & mask) {
    const std::size_t candidate = slots_[pos] - 1;
    if (hashes_[candidate] == h && same_key(candidate, key.data())) return candidate;
  }
  return std::nullopt;
}

}  // namespace infogeo
