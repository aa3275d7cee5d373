#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "fqdist/chains.hpp"
#include "fqdist/ensembles.hpp"
#include "fqdist/field.hpp"
#include "fqdist/report.hpp"
#include "fqdist/stars.hpp"

namespace fqdist {

/// Everything needed to reproduce a CLI run.
struct RunConfig {
  std::string command;
  std::uint32_t q = 3;
  std::uint32_t d = 2;
  EnsembleSpec ensemble;
  std::vector<Residue> t;  // chain/star type; empty means k copies of 1
  std::size_t k = 1;
  bool all_t = false;
  bool use_corpus = false;
  std::string format = "json";
  std::string out;
  std::string inject_fault;

  Json to_json() const;
};

/// A named set E inside a fixed space.
struct Instance {
  std::string key;
  FieldParams params;
  PointSet set;
};

Instance make_instance(std::string key, const FieldParams& params, const EnsembleSpec& spec);
std::vector<Instance> instances_for(const RunConfig& config);

CheckRecord make_record(std::string check, const Instance& inst);
CheckRecord make_record(std::string check, const FieldParams& params, std::string instance);

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

Json residues_json(std::span<const Residue> values);

// Record builders shared by the subcommands and the acceptance suite.

std::vector<CheckRecord> sphere_checks(const FieldParams& params, Residue t);

struct ChainSweep {
  ChainType type{std::vector<Residue>{1}};
  bool oracle = true;
  std::size_t recurrence_k = 0;  // structure recurrences for k = 1..recurrence_k
  std::size_t bound_n = 0;       // upper / lower bounds for n = 1..bound_n
};
std::vector<CheckRecord> chain_checks(const Instance& inst, const ChainSweep& sweep);
std::vector<CheckRecord> main_theorem_check(const Instance& inst, const ChainType& type);
std::vector<CheckRecord> recurrence_checks(const Instance& inst, Residue t, std::size_t max_k);
std::vector<CheckRecord> upper_bound_checks(const Instance& inst, Residue t, std::size_t max_n);
std::vector<CheckRecord> lower_bound_checks(const Instance& inst, Residue t, std::size_t max_n);

struct PathSweep {
  Residue t = 1;
  std::size_t max_k = 1;
  bool recurrence = true;
  bool corollary = true;
  bool witness = false;
  bool longest = false;
};
std::vector<CheckRecord> path_checks(const Instance& inst, const PathSweep& sweep);
std::vector<CheckRecord> typed_path_checks(const Instance& inst, const ChainType& type);

std::vector<CheckRecord> tail_checks(const Instance& inst, const DegreeProfile& profile);
std::vector<CheckRecord> star_checks(const Instance& inst, const StarSpec& spec);

Report cmd_sphere(const RunConfig& config);
Report cmd_dft(const RunConfig& config);
Report cmd_chains(const RunConfig& config);
Report cmd_paths(const RunConfig& config);
Report cmd_stars(const RunConfig& config);
Report cmd_corpus(const RunConfig& config);

/// Worker count: FQDIST_MAX_THREADS when set, else hardware concurrency.
unsigned worker_count();

/// Applies fn to 0..n-1 on up to worker_count() threads. Results come back
/// in index order regardless of completion order.
template <class Fn>
auto parallel_map(std::size_t n, Fn fn) -> std::vector<decltype(fn(std::size_t{}))> {
  using R = decltype(fn(std::size_t{}));
  std::vector<R> out(n);
  const unsigned workers = std::max(1u, std::min<unsigned>(worker_count(), static_cast<unsigned>(n)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          out[i] = fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace fqdist
