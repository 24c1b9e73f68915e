#ifndef GFC_REPORT_HPP
#define GFC_REPORT_HPP

#include <cstdint>
#include <future>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"

#include "gfc/derham.hpp"
#include "gfc/kunneth.hpp"
#include "gfc/slices.hpp"

namespace gfc {

using Json = nlohmann::ordered_json;

inline constexpr const char* kReportSchemaVersion = "1";

inline std::string rational_str(const Rational& r) { return to_string(r); }

inline Json to_json(const SliceReport& r) {
  Json j;
  j["algebra"] = r.algebra;
  j["module"] = r.module;
  j["k"] = r.degree;
  j["weight"] = rational_str(r.weight);
  j["order"] = r.order;
  j["dim_cocycles"] = r.dim_cocycles;
  j["rank_boundaries"] = r.rank_boundaries;
  j["betti"] = r.betti;
  return j;
}

inline Json to_json(const DerhamResult& r) {
  Json j;
  j["variety"] = r.variety;
  j["k"] = r.degree;
  j["truncation"] = r.truncation;
  j["betti"] = r.betti;
  j["betti_next"] = r.betti_next;
  j["stabilized"] = r.stabilized;
  return j;
}

inline Json to_json(const BettiTable& t) {
  Json j;
  j["label"] = t.label;
  j["dims"] = t.dims;
  j["stabilized"] = t.stabilized;
  return j;
}

inline Json to_json(const MainComparison& r) {
  Json j;
  j["variety"] = r.variety;
  j["module"] = r.module;
  j["k_max"] = r.k_max;
  j["p_max"] = r.p_max;
  j["rhs"] = to_json(r.rhs);
  j["direct_side"] = r.direct_side;
  if (r.direct_side) {
    j["direct_dims"] = r.direct_dims;
    j["direct_stabilized"] = r.direct_stabilized;
    j["equal"] = r.all_equal;
  }
  j["stabilized"] = r.all_stabilized;
  return j;
}

inline Json report_envelope(const std::string& command, const Json& config,
                            std::uint64_t seed) {
  Json j;
  j["schema_version"] = kReportSchemaVersion;
  j["command"] = command;
  j["config"] = config;
  j["seed"] = seed;
  return j;
}

/// Runs tasks indexed 0..n-1 on up to `threads` workers and aggregates by
/// index, so the result is independent of the thread count.
template <typename F>
void parallel_for(std::size_t n, unsigned threads, F&& f) {
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) f(i);
  };
  std::vector<std::thread> pool;
  unsigned count = std::min<std::size_t>(threads, n);
  for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}

}  // namespace gfc

#endif
