#include "fqdist/field.hpp"

#include <algorithm>
#include <limits>
#include <numbers>
#include <string>

#include "fqdist/errors.hpp"

namespace fqdist {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t p = 3; p * p <= n; p += 2) {
    if (n % p == 0) return false;
  }
  return true;
}

namespace {

std::size_t checked_power(std::uint32_t q, std::uint32_t d) {
  std::size_t size = 1;
  for (std::uint32_t i = 0; i < d; ++i) {
    if (size > std::numeric_limits<std::size_t>::max() / q) {
      throw InvalidArgument("q^d does not fit in the index range: q=" + std::to_string(q) +
                            ", d=" + std::to_string(d));
    }
    size *= q;
  }
  return size;
}

}  // namespace

FieldParams::FieldParams(std::uint32_t q, std::uint32_t d) : q_(q), d_(d), size_(0) {
  if (q < 3 || !is_prime(q)) {
    throw InvalidArgument("q must be an odd prime, got " + std::to_string(q));
  }
  if (d < 1) throw InvalidArgument("dimension d must be at least 1");
  size_ = checked_power(q, d);
}

Residue FieldParams::reduce(std::int64_t a) const {
  const std::int64_t m = static_cast<std::int64_t>(q_);
  const std::int64_t r = a % m;
  return static_cast<Residue>(r < 0 ? r + m : r);
}

Point::Point(const FieldParams& params, std::vector<std::int64_t> coords) : params_(params) {
  if (coords.size() != params.d()) {
    throw InvalidArgument("point has " + std::to_string(coords.size()) +
                          " coordinates, expected " + std::to_string(params.d()));
  }
  coords_.reserve(coords.size());
  for (auto c : coords) coords_.push_back(params.reduce(c));
}

Point::Point(const FieldParams& params, std::vector<Residue> coords, bool)
    : params_(params), coords_(std::move(coords)) {}

Point Point::from_index(std::size_t index, const FieldParams& params) {
  if (index >= params.size()) {
    throw InvalidArgument("point index " + std::to_string(index) + " out of range [0, " +
                          std::to_string(params.size()) + ")");
  }
  std::vector<Residue> coords(params.d());
  for (auto& c : coords) {
    c = static_cast<Residue>(index % params.q());
    index /= params.q();
  }
  return Point(params, std::move(coords), true);
}

std::size_t Point::index() const {
  std::size_t index = 0;
  for (std::size_t i = coords_.size(); i-- > 0;) index = index * params_.q() + coords_[i];
  return index;
}

Point operator+(const Point& a, const Point& b) {
  if (!(a.params_ == b.params_)) throw InvalidArgument("points live in different spaces");
  std::vector<Residue> c(a.coords_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.params_.add(a.coords_[i], b.coords_[i]);
  return Point(a.params_, std::move(c), true);
}

Point operator-(const Point& a, const Point& b) {
  if (!(a.params_ == b.params_)) throw InvalidArgument("points live in different spaces");
  std::vector<Residue> c(a.coords_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.params_.sub(a.coords_[i], b.coords_[i]);
  return Point(a.params_, std::move(c), true);
}

Point Point::operator-() const {
  std::vector<Residue> c(coords_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = params_.sub(0, coords_[i]);
  return Point(params_, std::move(c), true);
}

Residue norm(const Point& x) {
  const auto& p = x.params();
  Residue acc = 0;
  for (auto c : x.coords()) acc = p.add(acc, p.mul(c, c));
  return acc;
}

Residue dot(const Point& a, const Point& b) {
  const auto& p = a.params();
  Residue acc = 0;
  for (std::size_t i = 0; i < p.d(); ++i) acc = p.add(acc, p.mul(a[i], b[i]));
  return acc;
}

std::size_t point_index(const Point& x) { return x.index(); }

Point index_point(std::size_t index, const FieldParams& params) {
  return Point::from_index(index, params);
}

CharacterValue::CharacterValue(Residue a, std::uint32_t q) : residue_(a % q), q_(q) {
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(residue_) / q;
  value_ = std::polar(1.0, angle);
}

CharacterValue CharacterValue::operator*(const CharacterValue& other) const {
  if (other.q_ != q_) throw InvalidArgument("characters of different moduli");
  return CharacterValue((residue_ + other.residue_) % q_, q_);
}

CharacterValue character(Residue a, const FieldParams& params) {
  if (a >= params.q()) throw InvalidArgument("character argument must be a residue in [0, q)");
  return CharacterValue(a, params.q());
}

CharacterTable::CharacterTable(std::uint32_t q) : values_(q) {
  for (Residue a = 0; a < q; ++a) values_[a] = CharacterValue(a, q).value();
}

PointTable::PointTable(const FieldParams& params)
    : params_(params),
      powers_(params.d()),
      digits_(params.size() * params.d()),
      norms_(params.size()) {
  const auto q = params.q();
  const auto d = params.d();
  std::size_t power = 1;
  for (std::uint32_t i = 0; i < d; ++i) {
    powers_[i] = power;
    power *= q;
  }
  for (std::size_t index = 0; index < params.size(); ++index) {
    std::size_t rest = index;
    Residue acc = 0;
    for (std::uint32_t i = 0; i < d; ++i) {
      const auto c = static_cast<Residue>(rest % q);
      rest /= q;
      digits_[index * d + i] = c;
      acc = params.add(acc, params.mul(c, c));
    }
    norms_[index] = acc;
  }
}

std::size_t PointTable::sum(std::size_t a, std::size_t b) const {
  const auto ca = coords(a);
  const auto cb = coords(b);
  std::size_t index = 0;
  for (std::uint32_t i = 0; i < params_.d(); ++i) index += params_.add(ca[i], cb[i]) * powers_[i];
  return index;
}

std::size_t PointTable::difference(std::size_t a, std::size_t b) const {
  const auto ca = coords(a);
  const auto cb = coords(b);
  std::size_t index = 0;
  for (std::uint32_t i = 0; i < params_.d(); ++i) index += params_.sub(ca[i], cb[i]) * powers_[i];
  return index;
}

Residue PointTable::dot(std::size_t a, std::size_t b) const {
  const auto ca = coords(a);
  const auto cb = coords(b);
  Residue acc = 0;
  for (std::uint32_t i = 0; i < params_.d(); ++i) acc = params_.add(acc, params_.mul(ca[i], cb[i]));
  return acc;
}

PointSet::PointSet(const FieldParams& params) : params_(params), indicator_(params.size(), 0) {}

PointSet PointSet::full(const FieldParams& params) {
  PointSet set(params);
  std::fill(set.indicator_.begin(), set.indicator_.end(), 1);
  set.count_ = params.size();
  return set;
}

PointSet PointSet::from_indices(const FieldParams& params, std::span<const std::size_t> indices) {
  PointSet set(params);
  for (auto i : indices) {
    if (i >= params.size()) throw InvalidArgument("point index out of range");
    set.insert(i);
  }
  return set;
}

PointSet PointSet::from_points(const FieldParams& params, std::span<const Point> points) {
  PointSet set(params);
  for (const auto& x : points) {
    if (!(x.params() == params)) throw InvalidArgument("point from a different space");
    set.insert(x.index());
  }
  return set;
}

bool PointSet::contains(const Point& x) const {
  return x.params() == params_ && contains(x.index());
}

std::vector<std::size_t> PointSet::members() const {
  std::vector<std::size_t> out;
  out.reserve(count_);
  for (std::size_t i = 0; i < indicator_.size(); ++i) {
    if (indicator_[i]) out.push_back(i);
  }
  return out;
}

void PointSet::insert(std::size_t index) {
  if (index >= indicator_.size()) throw InvalidArgument("point index out of range");
  if (!indicator_[index]) {
    indicator_[index] = 1;
    ++count_;
  }
}

PointSet PointSet::with(std::size_t index) const {
  PointSet copy = *this;
  copy.insert(index);
  return copy;
}

}  // namespace fqdist
