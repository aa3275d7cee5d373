#include "fqdist/ensembles.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <sstream>

#include "fqdist/errors.hpp"

namespace fqdist {

std::uint64_t SeededGenerator::below(std::uint64_t n) {
  if (n == 0) throw InvalidArgument("SeededGenerator::below requires n > 0");
  // Reject the top partial block so every residue is equally likely.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t v = next();
  while (v >= limit) v = next();
  return v % n;
}

namespace {

constexpr std::pair<EnsembleKind, std::string_view> kKindNames[] = {
    {EnsembleKind::random_density, "random_density"},
    {EnsembleKind::random_size, "random_size"},
    {EnsembleKind::subspace, "subspace"},
    {EnsembleKind::sphere_union, "sphere_union"},
    {EnsembleKind::product, "product"},
    {EnsembleKind::full, "full"},
    {EnsembleKind::explicit_points, "explicit"},
};

std::uint64_t parse_unsigned(std::string_view text, std::string_view what) {
  std::uint64_t v = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end) {
    throw InvalidArgument(std::string(what) + ": expected a nonnegative integer, got '" + std::string(text) + "'");
  }
  return v;
}

std::int64_t parse_signed(std::string_view text) {
  std::int64_t v = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end) {
    throw InvalidArgument("expected an integer coordinate, got '" + std::string(text) + "'");
  }
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

std::string_view to_string(EnsembleKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

EnsembleKind parse_ensemble_kind(std::string_view name) {
  for (const auto& [k, n] : kKindNames) {
    if (n == name) return k;
  }
  throw InvalidArgument("unknown ensemble kind '" + std::string(name) + "'");
}

std::vector<Residue> parse_residue_list(std::string_view text) {
  std::vector<Residue> out;
  text = trim(text);
  if (text.empty()) return out;
  while (true) {
    const auto comma = text.find(',');
    const auto item = trim(text.substr(0, comma));
    const auto v = parse_unsigned(item, "residue list");
    if (v > 0xffffffffULL) throw InvalidArgument("residue out of range");
    out.push_back(static_cast<Residue>(v));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

std::string format_residue_list(const std::vector<Residue>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(values[i]);
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> EnsembleSpec::to_key_values() const {
  std::vector<std::pair<std::string, std::string>> kv;
  kv.emplace_back("ensemble", std::string(to_string(kind)));
  switch (kind) {
    case EnsembleKind::random_density:
      kv.emplace_back("density", format_double(density));
      kv.emplace_back("seed", std::to_string(seed));
      break;
    case EnsembleKind::random_size:
      kv.emplace_back("size", std::to_string(size));
      kv.emplace_back("seed", std::to_string(seed));
      break;
    case EnsembleKind::subspace:
      kv.emplace_back("axis", std::to_string(axis));
      kv.emplace_back("offset", std::to_string(offset));
      break;
    case EnsembleKind::sphere_union:
      kv.emplace_back("radii", format_residue_list(radii));
      break;
    case EnsembleKind::product:
      kv.emplace_back("residues", format_residue_list(residues));
      break;
    case EnsembleKind::full:
      break;
    case EnsembleKind::explicit_points: {
      std::string text;
      for (std::size_t i = 0; i < points.size(); ++i) {
        if (i) text += ';';
        for (std::size_t j = 0; j < points[i].size(); ++j) {
          if (j) text += ' ';
          text += std::to_string(points[i][j]);
        }
      }
      kv.emplace_back("points", text);
      break;
    }
  }
  return kv;
}

EnsembleSpec EnsembleSpec::from_key_values(const std::map<std::string, std::string>& kv) {
  EnsembleSpec spec;
  auto get = [&](const std::string& key) -> const std::string* {
    auto it = kv.find(key);
    return it == kv.end() ? nullptr : &it->second;
  };
  if (const auto* v = get("ensemble")) spec.kind = parse_ensemble_kind(*v);
  if (const auto* v = get("size")) spec.size = parse_unsigned(*v, "size");
  if (const auto* v = get("seed")) spec.seed = parse_unsigned(*v, "seed");
  if (const auto* v = get("density")) {
    try {
      std::size_t used = 0;
      spec.density = std::stod(*v, &used);
      if (used != v->size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw InvalidArgument("density: expected a real number, got '" + *v + "'");
    }
  }
  if (const auto* v = get("radii")) spec.radii = parse_residue_list(*v);
  if (const auto* v = get("residues")) spec.residues = parse_residue_list(*v);
  if (const auto* v = get("axis")) spec.axis = parse_unsigned(*v, "axis");
  if (const auto* v = get("offset")) spec.offset = static_cast<Residue>(parse_unsigned(*v, "offset"));
  if (const auto* v = get("points")) {
    std::string_view text = *v;
    while (!trim(text).empty()) {
      const auto semi = text.find(';');
      std::istringstream in{std::string(trim(text.substr(0, semi)))};
      std::vector<std::int64_t> coords;
      std::string token;
      while (in >> token) coords.push_back(parse_signed(token));
      if (!coords.empty()) spec.points.push_back(std::move(coords));
      if (semi == std::string_view::npos) break;
      text.remove_prefix(semi + 1);
    }
  }
  return spec;
}

std::string EnsembleSpec::label() const {
  const auto kv = to_key_values();
  std::string out(kv.front().second);
  if (kv.size() > 1) {
    out += '(';
    for (std::size_t i = 1; i < kv.size(); ++i) {
      if (i > 1) out += ',';
      out += kv[i].first + "=" + kv[i].second;
    }
    out += ')';
  }
  return out;
}

PointSet generate(const EnsembleSpec& spec, const FieldParams& params) {
  const auto n = params.size();
  switch (spec.kind) {
    case EnsembleKind::full:
      return PointSet::full(params);

    case EnsembleKind::random_density: {
      if (!(spec.density >= 0.0 && spec.density <= 1.0)) {
        throw InvalidArgument("density must lie in [0, 1]");
      }
      SeededGenerator rng(spec.seed);
      PointSet set(params);
      for (std::size_t i = 0; i < n; ++i) {
        if (rng.unit() < spec.density) set.insert(i);
      }
      return set;
    }

    case EnsembleKind::random_size: {
      if (spec.size > n) {
        throw InvalidArgument("random_size: size " + std::to_string(spec.size) + " exceeds q^d = " +
                              std::to_string(n));
      }
      // Partial Fisher-Yates over the index range.
      SeededGenerator rng(spec.seed);
      std::vector<std::size_t> order(n);
      for (std::size_t i = 0; i < n; ++i) order[i] = i;
      for (std::size_t i = 0; i < spec.size; ++i) {
        const auto j = i + static_cast<std::size_t>(rng.below(n - i));
        std::swap(order[i], order[j]);
      }
      return PointSet::from_indices(params, std::span(order.data(), spec.size));
    }

    case EnsembleKind::subspace: {
      if (spec.axis >= params.d()) throw InvalidArgument("subspace axis out of range");
      if (spec.offset >= params.q()) throw InvalidArgument("subspace offset must be a residue");
      const PointTable table(params);
      PointSet set(params);
      for (std::size_t i = 0; i < n; ++i) {
        if (table.coords(i)[spec.axis] == spec.offset) set.insert(i);
      }
      return set;
    }

    case EnsembleKind::sphere_union: {
      if (spec.radii.empty()) throw InvalidArgument("sphere_union needs at least one radius");
      for (auto t : spec.radii) {
        if (t >= params.q()) throw InvalidArgument("sphere radius must be a residue");
      }
      const PointTable table(params);
      PointSet set(params);
      for (std::size_t i = 0; i < n; ++i) {
        for (auto t : spec.radii) {
          if (table.norm(i) == t) set.insert(i);
        }
      }
      return set;
    }

    case EnsembleKind::product: {
      std::vector<std::uint8_t> allowed(params.q(), 0);
      for (auto a : spec.residues) {
        if (a >= params.q()) throw InvalidArgument("product residue must be in [0, q)");
        allowed[a] = 1;
      }
      const PointTable table(params);
      PointSet set(params);
      for (std::size_t i = 0; i < n; ++i) {
        bool in = true;
        for (auto c : table.coords(i)) in = in && allowed[c];
        if (in) set.insert(i);
      }
      return set;
    }

    case EnsembleKind::explicit_points: {
      PointSet set(params);
      for (const auto& coords : spec.points) set.insert(Point(params, coords).index());
      return set;
    }
  }
  throw InvalidArgument("unhandled ensemble kind");
}

namespace {

std::string corpus_key(std::uint32_t q, std::uint32_t d, const std::string& tail) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "q%02u_d%u_", q, d);
  return buf + tail;
}

}  // namespace

std::vector<CorpusEntry> corpus() {
  std::vector<CorpusEntry> out;
  auto add = [&](std::uint32_t q, std::uint32_t d, const std::string& tail, EnsembleSpec spec) {
    out.push_back({corpus_key(q, d, tail), FieldParams(q, d), std::move(spec)});
  };

  for (std::uint32_t q : {3u, 5u, 7u, 11u, 13u}) {
    for (std::uint32_t d : {2u, 3u}) {
      const FieldParams params(q, d);
      const std::uint64_t seed_base = 1000ULL * q + 10ULL * d;

      add(q, d, "a_full", EnsembleSpec{});

      EnsembleSpec half;
      half.kind = EnsembleKind::random_size;
      half.size = params.size() / 2;
      half.seed = seed_base + 1;
      add(q, d, "b_random_size", half);

      EnsembleSpec sparse;
      sparse.kind = EnsembleKind::random_density;
      sparse.density = 0.3;
      sparse.seed = seed_base + 2;
      add(q, d, "c_random_density", sparse);

      EnsembleSpec plane;
      plane.kind = EnsembleKind::subspace;
      plane.axis = 0;
      plane.offset = 1;
      add(q, d, "d_subspace", plane);

      EnsembleSpec shell;
      shell.kind = EnsembleKind::sphere_union;
      shell.radii = {1};
      add(q, d, "e_sphere_union", shell);

      EnsembleSpec box;
      box.kind = EnsembleKind::product;
      for (Residue a = 0; a <= (q - 1) / 2; ++a) box.residues.push_back(a);
      add(q, d, "f_product", box);
    }
  }

  // Higher dimensions, where the conditional hypotheses can be met.
  auto sized = [](std::size_t n, std::uint64_t seed) {
    EnsembleSpec s;
    s.kind = EnsembleKind::random_size;
    s.size = n;
    s.seed = seed;
    return s;
  };
  add(3, 4, "a_full", EnsembleSpec{});
  add(3, 4, "b_random_size_50", sized(50, 3401));
  add(3, 4, "b_random_size_60", sized(60, 42));
  {
    EnsembleSpec plane;
    plane.kind = EnsembleKind::subspace;
    plane.axis = 3;
    plane.offset = 0;
    add(3, 4, "d_subspace", plane);
  }
  add(3, 5, "a_full", EnsembleSpec{});
  add(3, 5, "b_random_size_180", sized(180, 3501));
  add(3, 5, "b_random_size_220", sized(220, 3502));
  add(3, 6, "a_full", EnsembleSpec{});
  add(3, 6, "b_random_size_600", sized(600, 3601));
  {
    EnsembleSpec dense;
    dense.kind = EnsembleKind::random_density;
    dense.density = 0.9;
    dense.seed = 3602;
    add(3, 6, "c_random_density", dense);
  }
  add(5, 4, "a_full", EnsembleSpec{});
  add(5, 4, "b_random_size_400", sized(400, 5401));
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.key < b.key; });
  return out;
}

}  // namespace fqdist
