// SPDX-License-Identifier: Apache-2.0
#include "sepvol/chi_table.hpp"

#include <algorithm>

#include "sepvol/error.hpp"

namespace sepvol {

ChiTable::Stencil ChiTable::stencil(double e) const {
  const std::size_t k = eps.size();
  if (k < 4) throw DomainError("ChiTable: at least four nodes are required");
  if (!(e >= eps.front() && e <= eps.back())) throw DomainError("ChiTable: epsilon outside the table");
  const auto upper = std::upper_bound(eps.begin(), eps.end(), e);
  std::size_t cell = static_cast<std::size_t>(upper - eps.begin());
  cell = cell == 0 ? 0 : cell - 1;
  const std::size_t start = std::min(cell > 0 ? cell - 1 : 0, k - 4);

  Stencil st;
  for (std::size_t i = 0; i < 4; ++i) {
    st.index[i] = start + i;
    double w = 1.0;
    for (std::size_t j = 0; j < 4; ++j) {
      if (j == i) continue;
      w *= (e - eps[start + j]) / (eps[start + i] - eps[start + j]);
    }
    st.weight[i] = w;
  }
  return st;
}

double ChiTable::operator()(double e) const {
  const Stencil st = stencil(e);
  double s = 0.0;
  for (std::size_t i = 0; i < 4; ++i) s += st.weight[i] * value[st.index[i]];
  return s;
}

double ChiTable::variance_of(std::span<const double> w) const {
  const std::size_t k = eps.size();
  if (covariance.size() != k * k) return 0.0;
  double s = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    if (w[i] == 0.0) continue;
    for (std::size_t j = 0; j < k; ++j) s += w[i] * covariance[i * k + j] * w[j];
  }
  return std::max(s, 0.0);
}

ChiTable ChiTable::every_other() const {
  const std::size_t k = eps.size();
  if (k % 2 == 0) throw DomainError("ChiTable::every_other needs an odd node count");
  ChiTable out;
  out.field = field;
  out.n = n;
  out.seed = seed;
  const std::size_t h = (k + 1) / 2;
  for (std::size_t i = 0; i < k; i += 2) {
    out.eps.push_back(eps[i]);
    out.value.push_back(value[i]);
  }
  if (covariance.size() == k * k) {
    out.covariance.resize(h * h);
    for (std::size_t i = 0; i < h; ++i)
      for (std::size_t j = 0; j < h; ++j) out.covariance[i * h + j] = covariance[2 * i * k + 2 * j];
  }
  return out;
}

ChiTable ChiTable::from_function(Field field, std::span<const double> grid,
                                 const std::function<double(double)>& f) {
  ChiTable t;
  t.field = field;
  t.eps.assign(grid.begin(), grid.end());
  for (double e : grid) t.value.push_back(f(e));
  t.covariance.assign(grid.size() * grid.size(), 0.0);
  return t;
}

std::vector<double> uniform_grid(std::size_t points) {
  if (points < 2) throw DomainError("uniform_grid: at least two points");
  std::vector<double> g(points);
  for (std::size_t k = 0; k < points; ++k) g[k] = static_cast<double>(k) / static_cast<double>(points - 1);
  g.back() = 1.0;
  return g;
}

}  // namespace sepvol
