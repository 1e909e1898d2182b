#include "mini_lp.hpp"

#include <cassert>
#include <cmath>
#include <limits>

namespace drrpvt::testing {

namespace {

constexpr double kEps = 1e-9;

// Full tableau over columns [x | slacks | artificials] with a maintained
// reduced-cost row, one basic per row. Bland's rule everywhere.
struct Tableau {
  int m, n;
  int n_enterable;  // columns past this never enter (artificials)
  std::vector<std::vector<double>> t;  // m rows of n+1 (last = rhs)
  std::vector<double> dj;              // reduced costs (maximization)
  std::vector<int> basis;
  std::vector<char> is_basic;

  void init_costs(const std::vector<double>& cost) {
    dj = cost;
    for (int i = 0; i < m; ++i) {
      double cb = cost[basis[i]];
      if (cb == 0.0) continue;
      for (int j = 0; j < n; ++j) dj[j] -= cb * t[i][j];
    }
    for (int i = 0; i < m; ++i) dj[basis[i]] = 0.0;
  }

  int entering() const {
    for (int j = 0; j < n_enterable; ++j) {
      if (!is_basic[j] && dj[j] > kEps) return j;
    }
    return -1;
  }

  bool pivot_on(int e) {
    int r = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
      if (t[i][e] > kEps) {
        double ratio = t[i][n] / t[i][e];
        if (ratio < best - kEps ||
            (ratio < best + kEps && (r < 0 || basis[i] < basis[r]))) {
          best = ratio;
          r = i;
        }
      }
    }
    if (r < 0) return false;  // unbounded column
    exchange(r, e);
    return true;
  }

  void exchange(int r, int e) {
    double piv = t[r][e];
    for (int k = 0; k <= n; ++k) t[r][k] /= piv;
    t[r][e] = 1.0;
    for (int i = 0; i < m; ++i) {
      if (i == r || t[i][e] == 0.0) continue;
      double f = t[i][e];
      for (int k = 0; k <= n; ++k) t[i][k] -= f * t[r][k];
      t[i][e] = 0.0;
    }
    double f = dj[e];
    if (f != 0.0) {
      for (int k = 0; k < n; ++k) dj[k] -= f * t[r][k];
    }
    dj[e] = 0.0;
    is_basic[basis[r]] = 0;
    is_basic[e] = 1;
    basis[r] = e;
  }

  bool maximize() {
    for (long iter = 0; iter < 200000; ++iter) {
      int e = entering();
      if (e < 0) return true;
      if (!pivot_on(e)) return false;  // unbounded
    }
    assert(false && "mini_lp failed to terminate");
    return false;
  }
};

}  // namespace

MiniLpResult mini_lp_max(const std::vector<double>& c,
                         const std::vector<std::vector<double>>& a,
                         const std::vector<double>& b) {
  int m = static_cast<int>(a.size());
  int nx = static_cast<int>(c.size());
  MiniLpResult out;

  Tableau tab;
  tab.m = m;
  tab.n = nx + m + m;  // x, slacks, artificial capacity
  tab.n_enterable = nx + m;  // artificials never enter
  tab.t.assign(m, std::vector<double>(tab.n + 1, 0.0));
  tab.basis.assign(m, -1);
  tab.is_basic.assign(tab.n, 0);

  int n_art = 0;
  for (int i = 0; i < m; ++i) {
    double sign = (b[i] < 0.0) ? -1.0 : 1.0;
    for (int j = 0; j < nx; ++j) tab.t[i][j] = sign * a[i][j];
    tab.t[i][nx + i] = sign;  // slack
    tab.t[i][tab.n] = sign * b[i];
    if (sign < 0.0) {
      tab.t[i][nx + m + n_art] = 1.0;
      tab.basis[i] = nx + m + n_art;
      ++n_art;
    } else {
      tab.basis[i] = nx + i;
    }
    tab.is_basic[tab.basis[i]] = 1;
  }

  std::vector<double> cost(tab.n, 0.0);
  if (n_art > 0) {
    // Phase 1: maximize -sum(artificials).
    for (int k = 0; k < n_art; ++k) cost[nx + m + k] = -1.0;
    tab.init_costs(cost);
    if (!tab.maximize()) return out;
    double infeas = 0.0;
    for (int i = 0; i < m; ++i) {
      if (tab.basis[i] >= nx + m) infeas += tab.t[i][tab.n];
    }
    if (infeas > 1e-7) return out;  // infeasible
    // Pivot lingering artificials out where possible; leftovers sit at zero
    // on redundant rows.
    for (int i = 0; i < m; ++i) {
      if (tab.basis[i] < nx + m) continue;
      for (int j = 0; j < nx + m; ++j) {
        if (!tab.is_basic[j] && std::abs(tab.t[i][j]) > 1e-7) {
          tab.exchange(i, j);
          break;
        }
      }
    }
  }

  // Phase 2.
  std::fill(cost.begin(), cost.end(), 0.0);
  for (int j = 0; j < nx; ++j) cost[j] = c[j];
  tab.init_costs(cost);
  if (!tab.maximize()) return out;  // unbounded

  out.feasible = true;
  out.x.assign(nx, 0.0);
  for (int i = 0; i < m; ++i) {
    if (tab.basis[i] < nx) out.x[tab.basis[i]] = tab.t[i][tab.n];
  }
  out.value = 0.0;
  for (int j = 0; j < nx; ++j) out.value += c[j] * out.x[j];
  return out;
}

}  // namespace drrpvt::testing
