#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace infogeo {

/// Significant decimal digits kept when deciding whether two support points
/// coincide. Applied per axis relative to the largest magnitude on that axis.
inline constexpr int kSignificantDigits = 12;

/// Quantization step for an axis whose largest coordinate magnitude is `scale`.
double quantization_step(double scale);

/// Per-axis quantization steps for a set of points stored column-wise.
Eigen::VectorXd quantization_steps(const Eigen::MatrixXd& points);

/// Open-addressing hash index from quantized points of R^d to dense indices
/// 0, 1, 2, ... in insertion order.
class QuantizedIndex {
 public:
  explicit QuantizedIndex(Eigen::VectorXd steps, std::size_t expected = 16);

  /// Index of the cell containing `point`, inserting a new cell when absent.
  /// The flag is true when a new cell was created.
  std::pair<std::size_t, bool> insert(std::span<const double> point);

  std::optional<std::size_t> find(std::span<const double> point) const;

  std::size_t size() const { return hashes_.size(); }
  Eigen::Index dim() const { return steps_.size(); }
  const Eigen::VectorXd& steps() const { return steps_; }

 private:
  void quantize(std::span<const double> point, std::int64_t* out) const;
  std::uint64_t hash_key(const std::int64_t* key) const;
  bool same_key(std::size_t index, const std::int64_t* key) const;
  void rehash(std::size_t capacity);

  Eigen::VectorXd steps_;
  std::vector<std::int64_t> keys_;  // size() * dim() entries
  std::vector<std::uint64_t> hashes_;
  std::vector<std::uint32_t> slots_;  // 0 marks an empty slot, else index + 1
  std::vector<std::int64_t> scratch_;
};

}  // namespace infogeo
