#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "fqdist/field.hpp"

namespace fqdist {

/// Portable seeded source. std::mt19937_64 has its output sequence fixed by
/// the standard; bounded draws use our own rejection step because the
/// standard distributions are implementation-defined.
class SeededGenerator {
 public:
  explicit SeededGenerator(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n);
  /// Uniform in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

enum class EnsembleKind { random_density, random_size, subspace, sphere_union, product, full, explicit_points };

std::string_view to_string(EnsembleKind kind);
EnsembleKind parse_ensemble_kind(std::string_view name);

struct EnsembleSpec {
  EnsembleKind kind = EnsembleKind::full;
  std::size_t size = 0;                        // random_size
  double density = 0.5;                        // random_density
  std::vector<Residue> radii;                  // sphere_union
  std::vector<Residue> residues;               // product: A^d
  std::size_t axis = 0;                        // subspace: {x : x_axis = offset}
  Residue offset = 0;
  std::vector<std::vector<std::int64_t>> points;  // explicit_points
  std::uint64_t seed = 0;

  /// Key-value form used in config files and reports. Only keys relevant
  /// to the kind are emitted, in a fixed order.
  std::vector<std::pair<std::string, std::string>> to_key_values() const;
  static EnsembleSpec from_key_values(const std::map<std::string, std::string>& kv);

  /// Short stable descriptor, e.g. "random_size(n=12,seed=42)".
  std::string label() const;
};

/// Deterministic: the same spec and params always produce the same set.
PointSet generate(const EnsembleSpec& spec, const FieldParams& params);

struct CorpusEntry {
  std::string key;
  FieldParams params;
  EnsembleSpec spec;
};

inline constexpr std::string_view kCorpusVersion = "corpus-v1";

/// The fixed acceptance manifest.
std::vector<CorpusEntry> corpus();

std::vector<Residue> parse_residue_list(std::string_view text);
std::string format_residue_list(const std::vector<Residue>& values);

}  // namespace fqdist
