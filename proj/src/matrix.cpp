#include "trajdist/matrix.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstring>
#include <exception>
#include <fstream>
#include <istream>
#include <limits>
#include <mutex>
#include <ostream>
#include <thread>
#include <utility>

namespace trajdist {

namespace {

constexpr std::array<char, 4> kMagic{'T', 'R', 'J', 'D'};

void put_u32(std::ostream& out, std::uint32_t v) {
  const std::array<char, 4> bytes{static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                                  static_cast<char>((v >> 16) & 0xff), static_cast<char>((v >> 24) & 0xff)};
  out.write(bytes.data(), bytes.size());
}

void put_f64(std::ostream& out, double v) {
  const auto bits = std::bit_cast<std::uint64_t>(v);
  std::array<char, 8> bytes{};
  for (int k = 0; k < 8; ++k) bytes[k] = static_cast<char>((bits >> (8 * k)) & 0xff);
  out.write(bytes.data(), bytes.size());
}

void put_string(std::ostream& out, const std::string& s) {
  if (s.size() > std::numeric_limits<std::uint32_t>::max()) {
    throw MatrixFormatError(MatrixFormatError::Code::invalid_value, "string too long for matrix file");
  }
  put_u32(out, static_cast<std::uint32_t>(s.size()));
  out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

void read_exact(std::istream& in, char* dst, std::size_t n, const char* what) {
  in.read(dst, static_cast<std::streamsize>(n));
  if (static_cast<std::size_t>(in.gcount()) != n) {
    throw MatrixFormatError(MatrixFormatError::Code::truncated,
                            std::string("matrix file truncated while reading ") + what);
  }
}

std::uint32_t get_u32(std::istream& in, const char* what) {
  std::array<unsigned char, 4> b{};
  read_exact(in, reinterpret_cast<char*>(b.data()), b.size(), what);
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

double get_f64(std::istream& in) {
  std::array<unsigned char, 8> b{};
  read_exact(in, reinterpret_cast<char*>(b.data()), b.size(), "distance values");
  std::uint64_t bits = 0;
  for (int k = 7; k >= 0; --k) bits = (bits << 8) | b[k];
  return std::bit_cast<double>(bits);
}

std::string get_string(std::istream& in, const char* what) {
  const std::uint32_t len = get_u32(in, what);
  std::string s;
  // Grow in chunks so a corrupt length cannot trigger a huge allocation.
  constexpr std::size_t kChunk = 1 << 16;
  std::size_t remaining = len;
  while (remaining > 0) {
    const std::size_t take = std::min(remaining, kChunk);
    const std::size_t old = s.size();
    s.resize(old + take);
    read_exact(in, s.data() + old, take, what);
    remaining -= take;
  }
  return s;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

DistanceMatrix::DistanceMatrix(std::vector<std::string> ids, std::string kind, std::vector<double> values)
    : ids_(std::move(ids)), kind_(std::move(kind)), values_(std::move(values)) {
  const std::size_t n = ids_.size();
  if (values_.size() != n * n) {
    throw InvalidInput("distance matrix has " + std::to_string(values_.size()) + " values for " +
                       std::to_string(n) + " ids");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (values_[i * n + i] != 0.0) throw InvalidInput("distance matrix diagonal must be zero");
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = values_[i * n + j];
      if (!std::isfinite(v) || v < 0.0) {
        throw InvalidInput("distance matrix entry (" + ids_[i] + ", " + ids_[j] + ") is not finite and >= 0");
      }
      if (v != values_[j * n + i]) throw InvalidInput("distance matrix is not symmetric");
    }
  }
}

DistanceMatrix DistanceMatrix::from_upper_triangle(std::vector<std::string> ids, std::string kind,
                                                   std::span<const double> upper) {
  const std::size_t n = ids.size();
  if (upper.size() != n * (n - (n > 0 ? 1 : 0)) / 2) {
    throw InvalidInput("upper triangle has wrong length for " + std::to_string(n) + " ids");
  }
  std::vector<double> full(n * n, 0.0);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j, ++k) {
      full[i * n + j] = upper[k];
      full[j * n + i] = upper[k];
    }
  }
  return DistanceMatrix(std::move(ids), std::move(kind), std::move(full));
}

double DistanceMatrix::max_off_diagonal() const {
  double best = 0.0;
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) best = std::max(best, (*this)(i, j));
  }
  return best;
}

double DistanceMatrix::min_off_diagonal() const {
  double best = std::numeric_limits<double>::infinity();
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) best = std::min(best, (*this)(i, j));
  }
  return n < 2 ? 0.0 : best;
}

PairEvaluationError::PairEvaluationError(std::string first, std::string second, const std::string& reason)
    : Error("distance evaluation failed for pair (" + first + ", " + second + "): " + reason),
      first_(std::move(first)),
      second_(std::move(second)) {}

DistanceMatrix compute_matrix(std::vector<std::string> ids, std::string kind, const PairFunction& fn,
                              unsigned workers) {
  const std::size_t n = ids.size();
  if (n < 2) throw InvalidInput("compute_matrix needs at least 2 items");

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  pairs.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }

  std::vector<double> values(n * n, 0.0);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::mutex error_mutex;
  std::exception_ptr error;
  std::size_t error_pair = pairs.size();

  auto work = [&] {
    while (!failed.load(std::memory_order_relaxed)) {
      const std::size_t k = next.fetch_add(1, std::memory_order_relaxed);
      if (k >= pairs.size()) return;
      const auto [i, j] = pairs[k];
      try {
        const double d = fn(i, j);
        if (!std::isfinite(d) || d < 0.0) throw InvalidInput("result " + std::to_string(d) + " is not finite and >= 0");
        values[i * n + j] = d;
        values[j * n + i] = d;
      } catch (...) {
        std::lock_guard lock(error_mutex);
        // Keep the lowest failing pair so the report is stable across runs.
        if (k < error_pair) {
          error_pair = k;
          error = std::current_exception();
        }
        failed.store(true, std::memory_order_relaxed);
      }
    }
  };

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, pairs.size()));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  if (error) {
    const auto [i, j] = pairs[error_pair];
    std::string reason = "unknown error";
    try {
      std::rethrow_exception(error);
    } catch (const std::exception& e) {
      reason = e.what();
    } catch (...) {
    }
    throw PairEvaluationError(ids[i], ids[j], reason);
  }
  return DistanceMatrix(std::move(ids), std::move(kind), std::move(values));
}

DistanceMatrix compute_matrix(std::span<const Trajectory> trajectories, const DistanceSpec& spec,
                              unsigned workers) {
  spec.validate();
  std::vector<std::string> ids;
  ids.reserve(trajectories.size());
  for (const auto& t : trajectories) ids.push_back(t.id());
  return compute_matrix(
      std::move(ids), spec.describe(),
      [&](std::size_t i, std::size_t j) { return spec(trajectories[i], trajectories[j]); }, workers);
}

void write_matrix(const DistanceMatrix& m, std::ostream& out) {
  const std::size_t n = m.size();
  if (n > std::numeric_limits<std::uint32_t>::max()) {
    throw MatrixFormatError(MatrixFormatError::Code::invalid_value, "matrix too large for format");
  }
  out.write(kMagic.data(), kMagic.size());
  put_u32(out, kMatrixFormatVersion);
  put_u32(out, static_cast<std::uint32_t>(n));
  for (const auto& id : m.ids()) put_string(out, id);
  put_string(out, m.kind());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) put_f64(out, m(i, j));
  }
  if (!out) throw MatrixFormatError(MatrixFormatError::Code::io, "failed writing matrix");
}

DistanceMatrix read_matrix(std::istream& in) {
  std::array<char, 4> magic{};
  in.read(magic.data(), magic.size());
  if (in.gcount() != static_cast<std::streamsize>(magic.size())) {
    throw MatrixFormatError(MatrixFormatError::Code::truncated, "truncated matrix file: missing header");
  }
  if (magic != kMagic) {
    throw MatrixFormatError(MatrixFormatError::Code::bad_magic, "not a TRJD matrix file (bad magic)");
  }
  const std::uint32_t version = get_u32(in, "version");
  if (version != kMatrixFormatVersion) {
    throw MatrixFormatError(MatrixFormatError::Code::unsupported_version,
                            "unsupported matrix format version " + std::to_string(version));
  }
  const std::uint32_t n = get_u32(in, "item count");
  std::vector<std::string> ids;
  for (std::uint32_t k = 0; k < n; ++k) ids.push_back(get_string(in, "id table"));
  std::string kind = get_string(in, "distance kind");
  std::vector<double> upper;
  const std::size_t count = static_cast<std::size_t>(n) * (n > 0 ? n - 1 : 0) / 2;
  for (std::size_t k = 0; k < count; ++k) upper.push_back(get_f64(in));
  if (in.peek() != std::char_traits<char>::eof()) {
    throw MatrixFormatError(MatrixFormatError::Code::trailing_data, "unexpected bytes after matrix payload");
  }
  try {
    return DistanceMatrix::from_upper_triangle(std::move(ids), std::move(kind), upper);
  } catch (const InvalidInput& e) {
    throw MatrixFormatError(MatrixFormatError::Code::invalid_value, e.what());
  }
}

void save_matrix(const DistanceMatrix& m, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw MatrixFormatError(MatrixFormatError::Code::io, "cannot open " + path.string() + " for writing");
  write_matrix(m, out);
}

DistanceMatrix load_matrix(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MatrixFormatError(MatrixFormatError::Code::io, "cannot open " + path.string());
  return read_matrix(in);
}

void check_ids(const DistanceMatrix& m, std::span<const std::string> ids) {
  if (ids.size() != m.size()) {
    throw MatrixFormatError(MatrixFormatError::Code::id_count_mismatch,
                            "matrix has " + std::to_string(m.size()) + " ids, dataset has " +
                                std::to_string(ids.size()));
  }
  for (std::size_t k = 0; k < ids.size(); ++k) {
    if (ids[k] != m.ids()[k]) {
      throw MatrixFormatError(MatrixFormatError::Code::id_count_mismatch,
                              "id mismatch at position " + std::to_string(k) + ": matrix '" + m.ids()[k] +
                                  "' vs dataset '" + ids[k] + "'");
    }
  }
}

void write_matrix_csv(const DistanceMatrix& m, std::ostream& out) {
  const std::size_t n = m.size();
  for (std::size_t k = 0; k < n; ++k) out << (k ? "," : "") << csv_field(m.ids()[k]);
  out << '\n';
  const auto old_precision = out.precision(17);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out << (j ? "," : "") << m(i, j);
    out << '\n';
  }
  out.precision(old_precision);
}

}  // namespace trajdist
