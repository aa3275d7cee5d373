#include "fqdist/spectral.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "fqdist/bounds.hpp"

namespace fqdist {

Spectrum::Spectrum(const FieldParams& params, std::vector<std::complex<double>> values)
    : params_(params), values_(std::move(values)) {
  if (values_.size() != params_.size()) throw InvalidArgument("spectrum length does not match q^d");
}

DensityFunction indicator_function(const PointSet& set) {
  DensityFunction f(set.params());
  const auto ind = set.indicator();
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = ind[i] ? 1.0 : 0.0;
  return f;
}

DensityFunction to_density(const CountFunction& f) {
  DensityFunction out(f.params());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = static_cast<double>(f[i]);
  return out;
}

double l1_norm(const DensityFunction& f) {
  double acc = 0.0;
  for (double v : f.values()) acc += std::fabs(v);
  return acc;
}

double l2_norm_squared(const DensityFunction& f) {
  double acc = 0.0;
  for (double v : f.values()) acc += v * v;
  return acc;
}

std::uint64_t total(const CountFunction& f) {
  std::uint64_t acc = 0;
  for (auto v : f.values()) {
    if (__builtin_add_overflow(acc, v, &acc)) throw ScaleGuardError("count sum overflows 64 bits");
  }
  return acc;
}

std::uint64_t sum_of_squares(const CountFunction& f) {
  std::uint64_t acc = 0;
  for (auto v : f.values()) {
    std::uint64_t sq = 0;
    if (__builtin_mul_overflow(v, v, &sq) || __builtin_add_overflow(acc, sq, &acc)) {
      throw ScaleGuardError("sum of squares overflows 64 bits");
    }
  }
  return acc;
}

namespace {

// One length-q pass along `axis`. sign = -1 applies chi(-m x), +1 chi(m x).
void axis_pass(std::vector<std::complex<double>>& data, const FieldParams& params,
               const CharacterTable& chi, std::uint32_t axis, int sign) {
  const std::uint32_t q = params.q();
  std::size_t stride = 1;
  for (std::uint32_t i = 0; i < axis; ++i) stride *= q;
  const std::size_t block = stride * q;
  std::vector<std::complex<double>> line(q);
  for (std::size_t base = 0; base < data.size(); base += block) {
    for (std::size_t offset = 0; offset < stride; ++offset) {
      const std::size_t start = base + offset;
      for (std::uint32_t j = 0; j < q; ++j) line[j] = data[start + j * stride];
      for (std::uint32_t m = 0; m < q; ++m) {
        std::complex<double> acc = 0.0;
        for (std::uint32_t j = 0; j < q; ++j) {
          const Residue mj = params.mul(m, j);
          acc += chi(sign < 0 ? params.sub(0, mj) : mj) * line[j];
        }
        data[start + m * stride] = acc;
      }
    }
  }
}

}  // namespace

Spectrum dft(const DensityFunction& f) {
  const auto& params = f.params();
  const CharacterTable chi(params.q());
  std::vector<std::complex<double>> data(f.values().begin(), f.values().end());
  for (std::uint32_t axis = 0; axis < params.d(); ++axis) axis_pass(data, params, chi, axis, -1);
  const double scale = 1.0 / static_cast<double>(params.size());
  for (auto& v : data) v *= scale;
  return Spectrum(params, std::move(data));
}

Spectrum dft_direct(const DensityFunction& f) {
  const auto& params = f.params();
  const CharacterTable chi(params.q());
  const PointTable table(params);
  const double scale = 1.0 / static_cast<double>(params.size());
  Spectrum out(params);
  for (std::size_t m = 0; m < params.size(); ++m) {
    std::complex<double> acc = 0.0;
    for (std::size_t x = 0; x < params.size(); ++x) {
      acc += chi(params.sub(0, table.dot(m, x))) * f[x];
    }
    out[m] = acc * scale;
  }
  return out;
}

std::vector<std::complex<double>> inverse_dft_complex(const Spectrum& spectrum) {
  const auto& params = spectrum.params();
  const CharacterTable chi(params.q());
  std::vector<std::complex<double>> data(spectrum.values().begin(), spectrum.values().end());
  for (std::uint32_t axis = 0; axis < params.d(); ++axis) axis_pass(data, params, chi, axis, +1);
  return data;
}

DensityFunction inverse_dft(const Spectrum& spectrum) {
  const auto data = inverse_dft_complex(spectrum);
  DensityFunction out(spectrum.params());
  for (std::size_t i = 0; i < data.size(); ++i) out[i] = data[i].real();
  return out;
}

double plancherel_defect(const DensityFunction& f) {
  const auto spectrum = dft(f);
  double frequency_side = 0.0;
  for (const auto& v : spectrum.values()) frequency_side += std::norm(v);
  const double space_side = l2_norm_squared(f) / static_cast<double>(f.params().size());
  return std::fabs(frequency_side - space_side);
}

SphereSet::SphereSet(Residue t, const FieldParams& params) : radius_(t), points_(params) {
  if (t >= params.q()) throw InvalidArgument("sphere radius must be a residue in [0, q)");
  const PointTable table(params);
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (table.norm(i) == t) {
      points_.insert(i);
      offsets_.push_back(i);
    }
  }
}

SphereSet sphere(Residue t, const FieldParams& params) { return SphereSet(t, params); }

SphereDecayReport sphere_decay_report(Residue t, const FieldParams& params) {
  if (t == 0) throw DegenerateDistance("sphere decay bound requires t != 0");
  const SphereSet s(t, params);
  const auto spectrum = dft(indicator_function(s.points()));
  SphereDecayReport r{};
  r.t = t;
  r.cardinality = s.cardinality();
  r.zero_frequency = spectrum[0].real();
  r.max_nontrivial = 0.0;
  r.argmax = params.size() > 1 ? 1 : 0;
  for (std::size_t m = 1; m < params.size(); ++m) {
    const double a = std::abs(spectrum[m]);
    if (a > r.max_nontrivial) {
      r.max_nontrivial = a;
      r.argmax = m;
    }
  }
  r.bound = 2.0 * static_cast<double>(half_power(params.q(), -static_cast<int>(params.d() + 1)));
  r.ratio = r.max_nontrivial / r.bound;
  r.holds = within_upper(r.max_nontrivial, r.bound);
  return r;
}

DensityFunction convolve(const DensityFunction& f, const DensityFunction& g) {
  if (!(f.params() == g.params())) throw InvalidArgument("convolution of functions on different spaces");
  const PointTable table(f.params());
  DensityFunction out(f.params());
  for (std::size_t x = 0; x < f.size(); ++x) {
    double acc = 0.0;
    for (std::size_t y = 0; y < f.size(); ++y) acc += f[y] * g[table.difference(x, y)];
    out[x] = acc;
  }
  return out;
}

DensityFunction convolve_spectral(const DensityFunction& f, const DensityFunction& g) {
  if (!(f.params() == g.params())) throw InvalidArgument("convolution of functions on different spaces");
  const auto fh = dft(f);
  const auto gh = dft(g);
  Spectrum product(f.params());
  const double scale = static_cast<double>(f.params().size());
  for (std::size_t m = 0; m < product.size(); ++m) product[m] = scale * fh[m] * gh[m];
  return inverse_dft(product);
}

BilinearReport bilinear_distance_form(const DensityFunction& f, const DensityFunction& g, Residue t) {
  if (!(f.params() == g.params())) throw InvalidArgument("bilinear form of functions on different spaces");
  if (t == 0) throw DegenerateDistance("bilinear distance form requires t != 0");
  for (double v : f.values()) {
    if (v < 0.0) throw InvalidArgument("bilinear distance form requires f >= 0");
  }
  for (double v : g.values()) {
    if (v < 0.0) throw InvalidArgument("bilinear distance form requires g >= 0");
  }
  const auto& params = f.params();
  const PointTable table(params);
  const SphereSet s(t, params);
  const auto g_conv = convolve_with_sphere(g, s, table);

  BilinearReport r{};
  r.total = 0.0;
  for (std::size_t x = 0; x < f.size(); ++x) r.total += f[x] * g_conv[x];
  r.main_term = static_cast<double>(s.cardinality()) / static_cast<double>(params.size()) *
                l1_norm(f) * l1_norm(g);
  r.remainder = r.total - r.main_term;
  r.stated_bound = 2.0 * static_cast<double>(half_power(params.q(), static_cast<int>(params.d()) - 1)) *
                   std::sqrt(l2_norm_squared(f)) * std::sqrt(l2_norm_squared(g));
  r.holds = within_upper(std::fabs(r.remainder), r.stated_bound);
  return r;
}

}  // namespace fqdist
