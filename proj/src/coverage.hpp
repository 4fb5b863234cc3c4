// SPDX-License-Identifier: Apache-2.0
//
// Point coverage counts shared by the diagnostics and the extension search.

#ifndef DUALARC_SRC_COVERAGE_HPP_
#define DUALARC_SRC_COVERAGE_HPP_

#include <span>
#include <unordered_map>

#include "dualarc/family.hpp"

namespace dualarc::arcs::detail {

struct VectorHash {
  std::size_t operator()(const Vector& v) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (auto x : v) h = (h ^ x) * 0x100000001b3ULL;
    return h;
  }
};

struct Cover {
  int count = 0;
  std::size_t first = 0;  // lowest covering position
};

using CoverageMap = std::unordered_map<Vector, Cover, VectorHash>;

inline CoverageMap coverage(const Family& family) {
  CoverageMap map;
  for (std::size_t i = 0; i < family.size(); ++i) {
    linalg::for_each_point(family[i], [&](std::span<const gf::Value> p) {
      auto [it, fresh] = map.try_emplace(Vector(p.begin(), p.end()));
      if (fresh) it->second.first = i;
      ++it->second.count;
    });
  }
  return map;
}

}  // namespace dualarc::arcs::detail

#endif  // DUALARC_SRC_COVERAGE_HPP_
