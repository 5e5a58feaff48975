#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "trajdist/distance.hpp"
#include "trajdist/error.hpp"
#include "trajdist/geometry.hpp"

namespace trajdist {

/// Symmetric, zero-diagonal, finite and nonnegative n x n dissimilarities with
/// the identifiers of the items and a description of the distance used.
class DistanceMatrix {
 public:
  /// `values` is row-major n x n; throws InvalidInput if any invariant fails.
  DistanceMatrix(std::vector<std::string> ids, std::string kind, std::vector<double> values);

  /// Builds from the strict upper triangle, row-major (n(n-1)/2 entries).
  static DistanceMatrix from_upper_triangle(std::vector<std::string> ids, std::string kind,
                                            std::span<const double> upper);

  std::size_t size() const { return ids_.size(); }
  const std::vector<std::string>& ids() const { return ids_; }
  const std::string& kind() const { return kind_; }
  double operator()(std::size_t i, std::size_t j) const { return values_[i * ids_.size() + j]; }
  std::span<const double> values() const { return values_; }

  double max_off_diagonal() const;
  double min_off_diagonal() const;

  friend bool operator==(const DistanceMatrix&, const DistanceMatrix&) = default;

 private:
  std::vector<std::string> ids_;
  std::string kind_;
  std::vector<double> values_;
};

/// Raised when one pairwise evaluation fails; names the offending pair.
class PairEvaluationError : public Error {
 public:
  PairEvaluationError(std::string first, std::string second, const std::string& reason);
  const std::string& first() const { return first_; }
  const std::string& second() const { return second_; }

 private:
  std::string first_;
  std::string second_;
};

using PairFunction = std::function<double(std::size_t, std::size_t)>;

/// Evaluates `fn(i, j)` once for each i < j, spreading the pairs over
/// `workers` threads (0 = hardware concurrency). Each pair writes its own
/// cell, so the result does not depend on the worker count.
DistanceMatrix compute_matrix(std::vector<std::string> ids, std::string kind, const PairFunction& fn,
                              unsigned workers = 1);

DistanceMatrix compute_matrix(std::span<const Trajectory> trajectories, const DistanceSpec& spec,
                              unsigned workers = 1);

class MatrixFormatError : public Error {
 public:
  enum class Code { io, bad_magic, unsupported_version, truncated, id_count_mismatch, trailing_data, invalid_value };

  MatrixFormatError(Code code, const std::string& what) : Error(what), code_(code) {}
  Code code() const { return code_; }

 private:
  Code code_;
};

inline constexpr std::uint32_t kMatrixFormatVersion = 1;

// Binary layout, little-endian throughout:
//   "TRJD" | u32 version | u32 n | n x (u32 len, UTF-8 id) | u32 len, kind
//   | n(n-1)/2 x f64, strict upper triangle, row-major
void write_matrix(const DistanceMatrix& m, std::ostream& out);
DistanceMatrix read_matrix(std::istream& in);

void save_matrix(const DistanceMatrix& m, const std::filesystem::path& path);
DistanceMatrix load_matrix(const std::filesystem::path& path);

/// Throws MatrixFormatError(id_count_mismatch) unless `ids` equals the
/// matrix identifiers in count and order.
void check_ids(const DistanceMatrix& m, std::span<const std::string> ids);

/// CSV: header row of ids, then the full symmetric matrix (17 significant digits).
void write_matrix_csv(const DistanceMatrix& m, std::ostream& out);

}  // namespace trajdist
