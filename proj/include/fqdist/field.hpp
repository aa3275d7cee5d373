#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace fqdist {

using Residue = std::uint32_t;

bool is_prime(std::uint64_t n);

/// The ambient space F_q^d. q must be an odd prime, d >= 1, and q^d must
/// be addressable as a dense array index.
class FieldParams {
 public:
  FieldParams(std::uint32_t q, std::uint32_t d);

  std::uint32_t q() const { return q_; }
  std::uint32_t d() const { return d_; }
  /// Number of points, q^d.
  std::size_t size() const { return size_; }

  Residue reduce(std::int64_t a) const;
  Residue add(Residue a, Residue b) const { return (a + b) % q_; }
  Residue sub(Residue a, Residue b) const { return (a + q_ - b) % q_; }
  Residue mul(Residue a, Residue b) const {
    return static_cast<Residue>((static_cast<std::uint64_t>(a) * b) % q_);
  }

  bool operator==(const FieldParams&) const = default;

 private:
  std::uint32_t q_;
  std::uint32_t d_;
  std::size_t size_;
};

/// A vector in F_q^d. Coordinates are always reduced mod q.
class Point {
 public:
  Point(const FieldParams& params, std::vector<std::int64_t> coords);
  static Point from_index(std::size_t index, const FieldParams& params);

  const FieldParams& params() const { return params_; }
  std::span<const Residue> coords() const { return coords_; }
  Residue operator[](std::size_t i) const { return coords_[i]; }

  /// Little-endian mixed radix: sum of coords[i] * q^i.
  std::size_t index() const;

  friend Point operator+(const Point& a, const Point& b);
  friend Point operator-(const Point& a, const Point& b);
  Point operator-() const;

  bool operator==(const Point&) const = default;

 private:
  Point(const FieldParams& params, std::vector<Residue> coords, bool);

  FieldParams params_;
  std::vector<Residue> coords_;
};

/// ||x|| = x_1^2 + ... + x_d^2 in F_q.
Residue norm(const Point& x);
Residue dot(const Point& a, const Point& b);

std::size_t point_index(const Point& x);
Point index_point(std::size_t index, const FieldParams& params);

/// The additive character a -> e^{2 pi i a / q}.
class CharacterValue {
 public:
  CharacterValue(Residue a, std::uint32_t q);

  std::complex<double> value() const { return value_; }
  Residue residue() const { return residue_; }
  std::uint32_t modulus() const { return q_; }

  CharacterValue operator*(const CharacterValue& other) const;

 private:
  Residue residue_;
  std::uint32_t q_;
  std::complex<double> value_;
};

CharacterValue character(Residue a, const FieldParams& params);

/// All q character values, indexed by residue.
class CharacterTable {
 public:
  explicit CharacterTable(std::uint32_t q);

  const std::complex<double>& operator()(Residue a) const { return values_[a]; }
  std::uint32_t q() const { return static_cast<std::uint32_t>(values_.size()); }

 private:
  std::vector<std::complex<double>> values_;
};

/// Coordinates and norms of every point, precomputed for dense sweeps that
/// work on indices rather than Point objects.
class PointTable {
 public:
  explicit PointTable(const FieldParams& params);

  const FieldParams& params() const { return params_; }
  std::span<const Residue> coords(std::size_t index) const {
    return {digits_.data() + index * params_.d(), params_.d()};
  }
  Residue norm(std::size_t index) const { return norms_[index]; }

  std::size_t sum(std::size_t a, std::size_t b) const;
  std::size_t difference(std::size_t a, std::size_t b) const;
  Residue dot(std::size_t a, std::size_t b) const;

 private:
  FieldParams params_;
  std::vector<std::size_t> powers_;
  std::vector<Residue> digits_;
  std::vector<Residue> norms_;
};

/// A subset of F_q^d stored as a dense indicator.
class PointSet {
 public:
  explicit PointSet(const FieldParams& params);

  static PointSet full(const FieldParams& params);
  static PointSet from_indices(const FieldParams& params, std::span<const std::size_t> indices);
  static PointSet from_points(const FieldParams& params, std::span<const Point> points);

  const FieldParams& params() const { return params_; }
  std::size_t size() const { return count_; }
  bool empty() const { return count_ == 0; }

  bool contains(std::size_t index) const { return indicator_[index] != 0; }
  bool contains(const Point& x) const;
  std::span<const std::uint8_t> indicator() const { return indicator_; }

  /// Member indices in ascending order.
  std::vector<std::size_t> members() const;

  void insert(std::size_t index);
  PointSet with(std::size_t index) const;

  bool operator==(const PointSet&) const = default;

 private:
  FieldParams params_;
  std::vector<std::uint8_t> indicator_;
  std::size_t count_ = 0;
};

}  // namespace fqdist
