#pragma once

#include <random>

#include "stmod/stmod.hpp"

namespace testing {

inline stmod::Matrix random_matrix(stmod::PrimeField f, std::size_t r, std::size_t c, std::mt19937_64& rng) {
  stmod::Matrix m(f, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.set(i, j, static_cast<long>(rng() % static_cast<std::uint64_t>(f.p())));
  return m;
}

// Same module in a random basis.
inline stmod::Module conjugated(const stmod::Module& m, std::mt19937_64& rng) {
  for (;;) {
    auto p = random_matrix(m.field(), m.dim(), m.dim(), rng);
    auto pi = stmod::inverse(p);
    if (!pi) continue;
    std::vector<stmod::Matrix> act;
    for (const auto& a : m.actions()) act.push_back(p * a * *pi);
    return stmod::Module(m.group(), m.field(), m.dim(), std::move(act));
  }
}

inline stmod::ModuleMap random_hom(const stmod::Module& a, const stmod::Module& b, std::mt19937_64& rng) {
  auto h = stmod::hom_basis(a, b);
  stmod::Matrix x(a.field(), b.dim(), a.dim());
  for (const auto& bm : h.basis) x = x + stmod::scaled(bm, static_cast<std::uint8_t>(rng() % static_cast<std::uint64_t>(a.field().p())));
  return {a, b, x};
}

}  // namespace testing
