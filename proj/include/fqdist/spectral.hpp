#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "fqdist/errors.hpp"
#include "fqdist/field.hpp"

namespace fqdist {

/// A function F_q^d -> T stored densely by point index.
template <class T>
class FieldFunction {
 public:
  explicit FieldFunction(const FieldParams& params) : params_(params), values_(params.size(), T{}) {}
  FieldFunction(const FieldParams& params, std::vector<T> values)
      : params_(params), values_(std::move(values)) {
    if (values_.size() != params_.size()) {
      throw InvalidArgument("function length does not match q^d");
    }
  }

  const FieldParams& params() const { return params_; }
  std::size_t size() const { return values_.size(); }

  T& operator[](std::size_t i) { return values_[i]; }
  const T& operator[](std::size_t i) const { return values_[i]; }

  std::span<const T> values() const { return values_; }
  std::span<T> values() { return values_; }

  bool operator==(const FieldFunction&) const = default;

 private:
  FieldParams params_;
  std::vector<T> values_;
};

/// Real-valued functions (the f, g of the bilinear estimate).
using DensityFunction = FieldFunction<double>;
/// Exact nonnegative integer functions (chain and path profiles).
using CountFunction = FieldFunction<std::uint64_t>;

/// Frequency-side values f^(m), indexed by the point index of m.
class Spectrum {
 public:
  explicit Spectrum(const FieldParams& params) : params_(params), values_(params.size()) {}
  Spectrum(const FieldParams& params, std::vector<std::complex<double>> values);

  const FieldParams& params() const { return params_; }
  std::size_t size() const { return values_.size(); }
  std::complex<double>& operator[](std::size_t m) { return values_[m]; }
  const std::complex<double>& operator[](std::size_t m) const { return values_[m]; }
  std::span<const std::complex<double>> values() const { return values_; }

 private:
  FieldParams params_;
  std::vector<std::complex<double>> values_;
};

DensityFunction indicator_function(const PointSet& set);
DensityFunction to_density(const CountFunction& f);

double l1_norm(const DensityFunction& f);
double l2_norm_squared(const DensityFunction& f);

/// Sum of values; throws ScaleGuardError on 64-bit overflow.
std::uint64_t total(const CountFunction& f);
/// Sum of squared values; throws ScaleGuardError on 64-bit overflow.
std::uint64_t sum_of_squares(const CountFunction& f);

/// f^(m) = q^{-d} sum_x chi(-m.x) f(x), computed as d passes of length-q
/// transforms along each coordinate axis (O(d q^{d+1})).
Spectrum dft(const DensityFunction& f);
/// Same transform by direct O(q^{2d}) summation. Kept as an oracle.
Spectrum dft_direct(const DensityFunction& f);

/// f(x) = sum_m f^(m) chi(m.x). Returns the complex values.
std::vector<std::complex<double>> inverse_dft_complex(const Spectrum& spectrum);
/// Real part of the inverse transform.
DensityFunction inverse_dft(const Spectrum& spectrum);

/// |sum_m |f^(m)|^2 - q^{-d} sum_x |f(x)|^2|.
double plancherel_defect(const DensityFunction& f);

/// The level set {x : ||x|| = t}. t = 0 is constructible but degenerate.
class SphereSet {
 public:
  SphereSet(Residue t, const FieldParams& params);

  Residue radius() const { return radius_; }
  bool degenerate() const { return radius_ == 0; }
  const PointSet& points() const { return points_; }
  std::size_t cardinality() const { return points_.size(); }
  /// Member indices in ascending order.
  std::span<const std::size_t> offsets() const { return offsets_; }

 private:
  Residue radius_;
  PointSet points_;
  std::vector<std::size_t> offsets_;
};

SphereSet sphere(Residue t, const FieldParams& params);

struct SphereDecayReport {
  Residue t;
  std::size_t cardinality;
  double zero_frequency;   // S_t^(0) = |S_t| / q^d
  double max_nontrivial;   // max over m != 0 of |S_t^(m)|
  std::size_t argmax;      // point index of a maximising frequency
  double bound;            // 2 q^{-(d+1)/2}
  double ratio;            // max_nontrivial / bound
  bool holds;
};

/// Exhaustive check of the sphere decay bound. Rejects t = 0.
SphereDecayReport sphere_decay_report(Residue t, const FieldParams& params);

/// (f*g)(x) = sum_y f(y) g(x - y), by direct O(q^{2d}) summation.
DensityFunction convolve(const DensityFunction& f, const DensityFunction& g);
/// The same convolution through the transform: (f*g)^ = q^d f^ g^.
DensityFunction convolve_spectral(const DensityFunction& f, const DensityFunction& g);

/// (f * S_t)(x) = sum_{s in S_t} f(x - s), exact for integer and real T.
template <class T>
FieldFunction<T> convolve_with_sphere(const FieldFunction<T>& f, const SphereSet& sphere,
                                      const PointTable& table);

struct BilinearReport {
  double total;        // sum_{x,y} f(x) g(y) S_t(x - y)
  double main_term;    // |S_t| / q^d * ||f||_1 ||g||_1
  double remainder;    // total - main_term
  double stated_bound; // 2 q^{(d-1)/2} ||f||_2 ||g||_2
  bool holds;
};

/// Rejects t = 0 and negative inputs.
BilinearReport bilinear_distance_form(const DensityFunction& f, const DensityFunction& g, Residue t);

template <class T>
FieldFunction<T> convolve_with_sphere(const FieldFunction<T>& f, const SphereSet& sphere,
                                      const PointTable& table) {
  FieldFunction<T> out(f.params());
  const auto offsets = sphere.offsets();
  for (std::size_t x = 0; x < f.size(); ++x) {
    T acc{};
    for (auto s : offsets) acc += f[table.difference(x, s)];
    out[x] = acc;
  }
  return out;
}

}  // namespace fqdist
