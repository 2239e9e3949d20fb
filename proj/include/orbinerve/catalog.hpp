#pragma once

// Small standard groups and actions: cyclic groups, symmetric groups on up
// to a handful of letters, and the natural action of S_n on its letters.

#include "orbinerve/groupoid.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

namespace orbinerve::catalog {

/// Z/n with elements named e, g, g2, ..., g{n-1}.
inline GroupTable cyclic_group(std::uint32_t n) {
  GroupTable t;
  for (std::uint32_t i = 0; i < n; ++i) t.names.push_back(i == 0 ? "e" : i == 1 ? "g" : "g" + std::to_string(i));
  t.product.assign(n, std::vector<std::uint32_t>(n));
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j) t.product[i][j] = (i + j) % n;
  return t;
}

/// Permutations of {0..n-1} in lexicographic order of their images (the
/// identity first). The product p*q applies p, then q.
inline std::vector<std::vector<std::uint32_t>> permutations(std::uint32_t n) {
  std::vector<std::uint32_t> p(n);
  std::iota(p.begin(), p.end(), 0u);
  std::vector<std::vector<std::uint32_t>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

inline GroupTable symmetric_group(std::uint32_t n) {
  const auto perms = permutations(n);
  GroupTable t;
  for (const auto& p : perms) {
    std::string name = "p";
    for (auto v : p) name += std::to_string(v + 1);
    t.names.push_back(name);
  }
  t.names[0] = "e";
  const auto m = static_cast<std::uint32_t>(perms.size());
  t.product.assign(m, std::vector<std::uint32_t>(m));
  for (std::uint32_t i = 0; i < m; ++i) {
    for (std::uint32_t j = 0; j < m; ++j) {
      std::vector<std::uint32_t> c(n);
      for (std::uint32_t x = 0; x < n; ++x) c[x] = perms[j][perms[i][x]];
      t.product[i][j] = static_cast<std::uint32_t>(std::find(perms.begin(), perms.end(), c) - perms.begin());
    }
  }
  return t;
}

/// S_n acting on the letters 1..n by p . g = g(p).
inline GroupAction natural_action(std::uint32_t n) {
  const auto perms = permutations(n);
  GroupAction a;
  for (std::uint32_t x = 0; x < n; ++x) a.point_names.push_back(std::to_string(x + 1));
  for (const auto& p : perms) a.image.push_back(p);
  return a;
}

}  // namespace orbinerve::catalog
