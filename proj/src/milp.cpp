#include "drrpvt/milp.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <queue>

#include "drrpvt/error.hpp"
#include "drrpvt/simplex_kernel.hpp"

namespace drrpvt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPivotTol = 1e-9;
constexpr double kReducedCostTol = 1e-9;

double now_seconds() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

}  // namespace

int MilpProblem::add_var(double lo, double hi, double obj, bool integer,
                         std::string name) {
  lower.push_back(lo);
  upper.push_back(hi);
  objective.push_back(obj);
  integrality.push_back(integer ? 1 : 0);
  if (!name.empty() || !var_names.empty()) {
    var_names.resize(n_vars);
    var_names.push_back(std::move(name));
  }
  return n_vars++;
}

void MilpProblem::add_constraint(std::vector<LinearTerm> terms,
                                 Relation relation, double rhs,
                                 std::string name) {
  constraints.push_back(
      RowConstraint{std::move(terms), relation, rhs, std::move(name)});
}

void MilpProblem::validate() const {
  if (n_vars != static_cast<int>(objective.size()) ||
      n_vars != static_cast<int>(lower.size()) ||
      n_vars != static_cast<int>(upper.size()) ||
      n_vars != static_cast<int>(integrality.size())) {
    throw Error("milp_shape", "variable arrays have inconsistent lengths");
  }
  for (int j = 0; j < n_vars; ++j) {
    if (!std::isfinite(lower[j]) || !std::isfinite(upper[j])) {
      throw Error("milp_bounds", "variable bounds must be finite",
                  {{"var", std::to_string(j)}});
    }
    if (lower[j] > upper[j] + 1e-12) {
      throw Error("milp_bounds", "variable lower bound exceeds upper bound",
                  {{"var", std::to_string(j)}});
    }
    if (integrality[j] &&
        (std::abs(lower[j] - std::round(lower[j])) > 1e-9 ||
         std::abs(upper[j] - std::round(upper[j])) > 1e-9)) {
      throw Error("milp_bounds", "integer variable has non-integral bounds",
                  {{"var", std::to_string(j)}});
    }
  }
  for (size_t r = 0; r < constraints.size(); ++r) {
    for (const auto& term : constraints[r].terms) {
      if (term.var < 0 || term.var >= n_vars) {
        throw Error("milp_shape", "constraint references unknown variable",
                    {{"row", std::to_string(r)}});
      }
    }
  }
}

namespace {

enum class VarStatus : uint8_t { Basic, AtLower, AtUpper };

// Bounded-variable primal simplex on a dense tableau. Internally minimizes.
class Simplex {
 public:
  Simplex(const MilpProblem& p, const SolverOptions& opt) : opt_(opt) {
    build(p);
  }

  // Returns true when an optimum was found, false when infeasible.
  // Throws Error on numerical breakdown or pivot-limit exhaustion.
  bool run() {
    if (!phase1()) return false;
    phase2();
    return true;
  }

  int64_t pivots() const { return pivots_; }

  // Value of structural variable j in the original problem.
  double value_of(int j) const {
    int col = col_of_[j];
    if (col < 0) return orig_lo_[j];  // fixed variable folded at setup
    return var_value(col);
  }

 private:
  const SolverOptions& opt_;
  int m_ = 0;       // rows
  int n_ = 0;       // tableau columns (actives + slacks + artificials)
  int n_active_ = 0;
  int n_orig_ = 0;
  std::vector<double> tab_;   // m x n row-major
  std::vector<double> beta_;  // value of basic variable per row
  std::vector<int> basis_;
  std::vector<VarStatus> status_;
  std::vector<double> lo_, hi_;
  std::vector<double> cost_;  // phase-dependent
  std::vector<double> dj_;
  std::vector<uint8_t> allowed_;  // artificials barred after phase 1
  std::vector<int> col_of_;       // original var -> tableau column (-1 fixed)
  std::vector<int> orig_of_;      // tableau column -> original var (-1 aux)
  std::vector<double> orig_lo_;
  std::vector<double> orig_obj_;
  double sense_flip_ = 1.0;
  double rhs_scale_ = 1.0;
  int first_artificial_ = 0;
  int64_t pivots_ = 0;
  int64_t pivot_limit_ = 0;
  bool bland_ = false;
  int64_t stall_ = 0;

  double& at(int i, int j) { return tab_[static_cast<size_t>(i) * n_ + j]; }
  double at(int i, int j) const {
    return tab_[static_cast<size_t>(i) * n_ + j];
  }

  double var_value(int col) const {
    switch (status_[col]) {
      case VarStatus::AtLower:
        return lo_[col];
      case VarStatus::AtUpper:
        return hi_[col];
      default:
        break;
    }
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] == col) return beta_[i];
    }
    return lo_[col];
  }

  void build(const MilpProblem& p) {
    n_orig_ = p.n_vars;
    orig_lo_ = p.lower;
    orig_obj_ = p.objective;
    sense_flip_ = (p.sense == Sense::Maximize) ? -1.0 : 1.0;
    col_of_.assign(n_orig_, -1);

    // Fixed variables (lo == hi) are folded into the right-hand sides; they
    // occupy no tableau column and can never pivot.
    std::vector<int> active;
    for (int j = 0; j < n_orig_; ++j) {
      if (p.upper[j] - p.lower[j] > 0.0) {
        col_of_[j] = static_cast<int>(active.size());
        active.push_back(j);
      }
    }
    n_active_ = static_cast<int>(active.size());
    m_ = static_cast<int>(p.constraints.size());

    int n_slack = 0;
    for (const auto& c : p.constraints) {
      if (c.relation != Relation::Equal) ++n_slack;
    }
    int cap = n_active_ + n_slack + m_;  // artificial worst case: one per row
    tab_.assign(static_cast<size_t>(m_) * cap, 0.0);
    n_ = cap;

    lo_.assign(cap, 0.0);
    hi_.assign(cap, kInf);
    status_.assign(cap, VarStatus::AtLower);
    allowed_.assign(cap, 1);
    orig_of_.assign(cap, -1);
    for (int c = 0; c < n_active_; ++c) {
      int j = active[c];
      lo_[c] = p.lower[j];
      hi_[c] = p.upper[j];
      orig_of_[c] = j;
    }

    std::vector<double> rhs(m_, 0.0);
    std::vector<double> scale(m_, 1.0);
    std::vector<int> slack_col(m_, -1);
    int next = n_active_;
    for (int i = 0; i < m_; ++i) {
      const auto& c = p.constraints[i];
      // >= rows are negated to <= before the slack is attached.
      double row_sign = (c.relation == Relation::GreaterEqual) ? -1.0 : 1.0;
      rhs[i] = row_sign * c.rhs;
      for (const auto& term : c.terms) {
        double coef = row_sign * term.coef;
        if (col_of_[term.var] >= 0) {
          at(i, col_of_[term.var]) += coef;
        } else {
          rhs[i] -= coef * p.lower[term.var];  // folded fixed variable
        }
      }
      if (c.relation != Relation::Equal) {
        slack_col[i] = next;
        at(i, next) = 1.0;
        ++next;
      }
    }

    // Residuals with structurals at their lower bounds and slacks at zero.
    basis_.assign(m_, -1);
    beta_.assign(m_, 0.0);
    first_artificial_ = next;
    rhs_scale_ = 1.0;
    for (int i = 0; i < m_; ++i) rhs_scale_ = std::max(rhs_scale_, std::abs(rhs[i]));
    for (int i = 0; i < m_; ++i) {
      double r = rhs[i];
      for (int c = 0; c < n_active_; ++c) r -= at(i, c) * lo_[c];
      if (r < 0.0) {
        // Scale the row so the starting basis value is nonnegative.
        for (int j = 0; j < n_; ++j) at(i, j) = -at(i, j);
        rhs[i] = -rhs[i];
        r = -r;
        scale[i] = -1.0;
      }
      bool slack_usable = slack_col[i] >= 0 && scale[i] > 0.0;
      if (slack_usable) {
        basis_[i] = slack_col[i];
        beta_[i] = r;
        status_[slack_col[i]] = VarStatus::Basic;
      } else {
        at(i, next) = 1.0;
        basis_[i] = next;
        beta_[i] = r;
        status_[next] = VarStatus::Basic;
        ++next;
      }
    }
    // Trim unused artificial capacity.
    if (next < cap) {
      std::vector<double> shrunk(static_cast<size_t>(m_) * next);
      for (int i = 0; i < m_; ++i) {
        std::copy_n(tab_.begin() + static_cast<size_t>(i) * n_, next,
                    shrunk.begin() + static_cast<size_t>(i) * next);
      }
      tab_ = std::move(shrunk);
      n_ = next;
      lo_.resize(n_);
      hi_.resize(n_);
      status_.resize(n_);
      allowed_.resize(n_);
      orig_of_.resize(n_);
    }

    pivot_limit_ = opt_.pivot_limit > 0
                       ? opt_.pivot_limit
                       : 50000 + 200LL * (m_ + n_);
    cost_.assign(n_, 0.0);
    dj_.assign(n_, 0.0);
  }

  void set_phase1_costs() {
    std::fill(cost_.begin(), cost_.end(), 0.0);
    for (int j = first_artificial_; j < n_; ++j) cost_[j] = 1.0;
    recompute_reduced_costs();
  }

  void set_phase2_costs() {
    std::fill(cost_.begin(), cost_.end(), 0.0);
    for (int c = 0; c < n_active_; ++c) {
      cost_[c] = sense_flip_ * orig_obj_[orig_of_[c]];
    }
    for (int j = first_artificial_; j < n_; ++j) allowed_[j] = 0;
    recompute_reduced_costs();
  }

  void recompute_reduced_costs() {
    for (int j = 0; j < n_; ++j) dj_[j] = cost_[j];
    for (int i = 0; i < m_; ++i) {
      double cb = cost_[basis_[i]];
      if (cb == 0.0) continue;
      const double* row = &tab_[static_cast<size_t>(i) * n_];
      for (int j = 0; j < n_; ++j) dj_[j] -= cb * row[j];
    }
    for (int i = 0; i < m_; ++i) dj_[basis_[i]] = 0.0;
  }

  double objective_value() const {
    double v = 0.0;
    for (int i = 0; i < m_; ++i) v += cost_[basis_[i]] * beta_[i];
    for (int j = 0; j < n_; ++j) {
      if (status_[j] == VarStatus::Basic || cost_[j] == 0.0) continue;
      v += cost_[j] * (status_[j] == VarStatus::AtLower ? lo_[j] : hi_[j]);
    }
    return v;
  }

  // Entering column, or -1 at optimality. Dantzig by default; Bland once a
  // degenerate stall has been detected.
  int choose_entering() const {
    int best = -1;
    double best_score = kReducedCostTol;
    for (int j = 0; j < n_; ++j) {
      if (!allowed_[j] || status_[j] == VarStatus::Basic) continue;
      if (lo_[j] == hi_[j]) continue;
      double score = 0.0;
      if (status_[j] == VarStatus::AtLower && dj_[j] < -kReducedCostTol) {
        score = -dj_[j];
      } else if (status_[j] == VarStatus::AtUpper &&
                 dj_[j] > kReducedCostTol) {
        score = dj_[j];
      } else {
        continue;
      }
      if (bland_) return j;
      if (score > best_score) {
        best_score = score;
        best = j;
      }
    }
    return best;
  }

  // One simplex iteration for the current costs. Returns false at optimality.
  bool iterate() {
    int e = choose_entering();
    if (e < 0) return false;
    double dir = (status_[e] == VarStatus::AtLower) ? 1.0 : -1.0;

    // Ratio test: smallest step that drives a basic variable to one of its
    // bounds, or flips the entering variable to its opposite bound.
    double t_best = hi_[e] - lo_[e];  // may be +inf for slacks
    int leave_row = -1;
    bool leave_to_upper = false;
    for (int i = 0; i < m_; ++i) {
      double alpha = at(i, e) * dir;
      double t;
      bool to_upper;
      if (alpha > kPivotTol) {
        t = (beta_[i] - lo_[basis_[i]]) / alpha;
        to_upper = false;
      } else if (alpha < -kPivotTol && std::isfinite(hi_[basis_[i]])) {
        t = (hi_[basis_[i]] - beta_[i]) / (-alpha);
        to_upper = true;
      } else {
        continue;
      }
      if (t < 0.0) t = 0.0;  // roundoff guard
      if (t < t_best - 1e-12 ||
          (t < t_best + 1e-12 && leave_row >= 0 &&
           basis_[i] < basis_[leave_row])) {
        t_best = t;
        leave_row = i;
        leave_to_upper = to_upper;
      }
    }

    if (!std::isfinite(t_best)) {
      throw Error("lp_unbounded",
                  "unbounded improving direction; bounds are inconsistent");
    }
    double improvement = std::abs(dj_[e]) * t_best;
    if (improvement < 1e-13) {
      if (++stall_ > 2 * m_ + 100) bland_ = true;
    } else {
      stall_ = 0;
    }

    if (++pivots_ > pivot_limit_) {
      throw Error("lp_pivot_limit",
                  "simplex pivot limit exceeded; possible cycling",
                  {{"pivots", std::to_string(pivots_)}});
    }

    if (leave_row < 0) {
      // Bound flip: entering travels to its opposite bound, basis unchanged.
      for (int i = 0; i < m_; ++i) beta_[i] -= dir * at(i, e) * t_best;
      status_[e] = (dir > 0) ? VarStatus::AtUpper : VarStatus::AtLower;
      return true;
    }

    pivot(leave_row, e, dir, t_best, leave_to_upper);
    return true;
  }

  void pivot(int r, int e, double dir, double step, bool leave_to_upper) {
    double entering_value =
        (status_[e] == VarStatus::AtLower ? lo_[e] : hi_[e]) + dir * step;
    int leaving = basis_[r];

    for (int i = 0; i < m_; ++i) {
      if (i != r) beta_[i] -= dir * at(i, e) * step;
    }

    double piv = at(r, e);
    if (std::abs(piv) < kPivotTol) {
      throw Error("lp_breakdown", "pivot element below tolerance",
                  {{"row", std::to_string(r)}, {"col", std::to_string(e)}});
    }
    double* prow = &tab_[static_cast<size_t>(r) * n_];
    double inv = 1.0 / piv;
    for (int j = 0; j < n_; ++j) prow[j] *= inv;
    prow[e] = 1.0;

    eliminate_rows(tab_.data(), m_, n_, r, e, opt_.parallel_pivot);

    double dje = dj_[e];
    if (dje != 0.0) {
      for (int j = 0; j < n_; ++j) dj_[j] -= dje * prow[j];
    }
    dj_[e] = 0.0;

    basis_[r] = e;
    beta_[r] = entering_value;
    status_[e] = VarStatus::Basic;
    status_[leaving] = leave_to_upper ? VarStatus::AtUpper : VarStatus::AtLower;
  }

  bool phase1() {
    bool need = false;
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] >= first_artificial_) need = true;
    }
    if (!need) return true;
    set_phase1_costs();
    while (iterate()) {
    }
    double infeas = objective_value();
    if (infeas > opt_.feasibility_tol * (1.0 + rhs_scale_)) return false;

    // Drive residual artificials out with degenerate pivots where possible;
    // rows with no eligible column are redundant and keep a zero artificial.
    for (int r = 0; r < m_; ++r) {
      if (basis_[r] < first_artificial_) continue;
      for (int j = 0; j < first_artificial_; ++j) {
        if (status_[j] == VarStatus::Basic || lo_[j] == hi_[j]) continue;
        if (std::abs(at(r, j)) > 1e-7) {
          double dir = (status_[j] == VarStatus::AtLower) ? 1.0 : -1.0;
          pivot(r, j, dir, 0.0, false);
          break;
        }
      }
    }
    return true;
  }

  void phase2() {
    bland_ = false;
    stall_ = 0;
    set_phase2_costs();
    while (iterate()) {
    }
  }
};

}  // namespace

LpResult solve_lp(const MilpProblem& problem, const SolverOptions& options) {
  problem.validate();
  Simplex simplex(problem, options);
  LpResult result;
  if (!simplex.run()) {
    result.status = SolveStatus::Infeasible;
    result.pivots = simplex.pivots();
    return result;
  }
  result.status = SolveStatus::Optimal;
  result.values.resize(problem.n_vars);
  double v = 0.0;
  for (int j = 0; j < problem.n_vars; ++j) {
    double xj = simplex.value_of(j);
    // Clamp tiny bound violations from roundoff.
    xj = std::min(std::max(xj, problem.lower[j]), problem.upper[j]);
    result.values[j] = xj;
    v += problem.objective[j] * xj;
  }
  result.value = v;
  result.pivots = simplex.pivots();
  return result;
}

namespace {

struct VarBoundFix {
  int var;
  double lo, hi;
};

struct BnbNode {
  int64_t id = 0;
  int parent = -1;
  std::vector<VarBoundFix> fixes;
  double bound = 0.0;  // parent LP value (maximization frame)
};

struct QueueEntry {
  double bound;
  int64_t id;
  int index;
};

struct QueueOrder {
  bool newest_ties = true;
  bool operator()(const QueueEntry& a, const QueueEntry& b) const {
    if (a.bound != b.bound) return a.bound < b.bound;  // max-heap on bound
    return newest_ties ? a.id < b.id : a.id > b.id;
  }
};

// Selection rows (sum of unit-coefficient binaries == 1) branch far better
// as set dichotomies than one variable at a time: the LP likes to spread
// tiny fractions over many members, and single-variable branching barely
// moves the bound.
std::vector<std::vector<int>> find_selection_rows(const MilpProblem& p) {
  std::vector<std::vector<int>> rows;
  for (const auto& c : p.constraints) {
    if (c.relation != Relation::Equal || c.rhs != 1.0) continue;
    bool ok = !c.terms.empty();
    for (const auto& term : c.terms) {
      ok &= term.coef == 1.0 && p.integrality[term.var] &&
            p.lower[term.var] == 0.0 && p.upper[term.var] <= 1.0;
    }
    if (!ok) continue;
    std::vector<int> members;
    for (const auto& term : c.terms) members.push_back(term.var);
    rows.push_back(std::move(members));
  }
  return rows;
}

}  // namespace

SolveResult solve_milp(const MilpProblem& problem,
                       const SolverOptions& options) {
  problem.validate();
  const bool maximize = problem.sense == Sense::Maximize;
  const double flip = maximize ? 1.0 : -1.0;

  // Work on a maximization copy; only bounds change between nodes.
  MilpProblem work = problem;
  work.sense = Sense::Maximize;
  if (!maximize) {
    for (auto& c : work.objective) c = -c;
  }

  double start = now_seconds();
  SolveResult result;
  result.status = SolveStatus::Optimal;

  std::vector<std::vector<int>> selection_rows =
      options.gub_branching ? find_selection_rows(work)
                            : std::vector<std::vector<int>>{};

  std::vector<BnbNode> arena;
  std::priority_queue<QueueEntry, std::vector<QueueEntry>, QueueOrder> open(
      QueueOrder{options.newest_ties});
  arena.push_back(BnbNode{0, -1, {}, kInf});
  open.push(QueueEntry{kInf, 0, 0});
  int64_t next_id = 1;

  double incumbent_value = -kInf;
  std::vector<double> incumbent;
  int64_t nodes = 0;

  auto finish = [&](SolveStatus status, double bound) {
    result.status = status;
    result.node_count = nodes;
    result.wall_time_seconds = now_seconds() - start;
    if (!incumbent.empty()) {
      result.incumbent = incumbent;
      result.incumbent_value = flip * incumbent_value;
    }
    result.best_bound = flip * bound;
    return result;
  };

  std::vector<double> node_lo, node_hi;
  // Best-bound search with plunging: after branching, dive straight into
  // the child on the fractional variable's nearer side until the dive is
  // pruned, then resume from the best open bound.
  int plunge_index = -1;
  double plunge_bound = 0.0;
  while (plunge_index >= 0 || !open.empty()) {
    QueueEntry entry;
    if (plunge_index >= 0) {
      entry = QueueEntry{plunge_bound, arena[plunge_index].id, plunge_index};
      plunge_index = -1;
    } else {
      entry = open.top();
      open.pop();
    }
    double global_bound =
        std::max(entry.bound, open.empty() ? -kInf : open.top().bound);
    if (!incumbent.empty() &&
        global_bound <= incumbent_value + options.gap_tol) {
      return finish(SolveStatus::Optimal,
                    std::max(global_bound, incumbent_value));
    }
    if (!incumbent.empty() && entry.bound <= incumbent_value + options.gap_tol) {
      continue;  // prune this node, better ones may remain queued
    }
    if (options.node_limit >= 0 && nodes >= options.node_limit) {
      return finish(SolveStatus::TimeLimit,
                    std::max(global_bound, incumbent_value));
    }
    if (now_seconds() - start > options.time_limit_seconds) {
      return finish(SolveStatus::TimeLimit,
                    std::max(global_bound, incumbent_value));
    }

    // Materialize bounds along the ancestor chain.
    node_lo = problem.lower;
    node_hi = problem.upper;
    for (int a = entry.index; a >= 0; a = arena[a].parent) {
      for (const VarBoundFix& fix : arena[a].fixes) {
        node_lo[fix.var] = std::max(node_lo[fix.var], fix.lo);
        node_hi[fix.var] = std::min(node_hi[fix.var], fix.hi);
      }
    }
    bool empty_box = false;
    for (int j = 0; j < work.n_vars && !empty_box; ++j) {
      if (node_lo[j] > node_hi[j]) empty_box = true;
    }
    ++nodes;
    if (empty_box) continue;

    work.lower = node_lo;
    work.upper = node_hi;
    LpResult lp = solve_lp(work, options);
    if (lp.status != SolveStatus::Optimal) continue;
    double value = lp.value;
    if (!incumbent.empty() && value <= incumbent_value + options.gap_tol) {
      continue;
    }

    int branch_var = -1;
    double branch_score = -1.0;
    for (int j = 0; j < work.n_vars; ++j) {
      if (!work.integrality[j]) continue;
      double xj = lp.values[j];
      double frac = xj - std::floor(xj);
      double dist = std::min(frac, 1.0 - frac);
      if (dist <= options.integrality_tol) continue;
      double score = 0.5 - std::abs(frac - 0.5);  // closest to one half wins
      if (score > branch_score + 1e-15) {
        branch_score = score;
        branch_var = j;
      }
    }

    if (branch_var < 0) {
      // Integral: snap and record.
      for (int j = 0; j < work.n_vars; ++j) {
        if (work.integrality[j]) lp.values[j] = std::round(lp.values[j]);
      }
      if (value > incumbent_value) {
        incumbent_value = value;
        incumbent = lp.values;
      }
      continue;
    }

    // Prefer a dichotomy on the most fractional selection row.
    const std::vector<int>* gub = nullptr;
    double gub_mass = 2.0 * options.integrality_tol;
    for (const auto& row : selection_rows) {
      double mass = 0.0;
      int nfrac = 0;
      for (int j : row) {
        double f = lp.values[j] - std::floor(lp.values[j]);
        double dist = std::min(f, 1.0 - f);
        if (dist > options.integrality_tol) {
          ++nfrac;
          mass += dist;
        }
      }
      if (nfrac >= 2 && mass > gub_mass + 1e-12) {
        gub_mass = mass;
        gub = &row;
      }
    }

    int left = static_cast<int>(arena.size());
    int right = left + 1;
    if (gub) {
      // Split the members into a high-mass prefix and the rest; each child
      // zeroes one side, so the spread collapses and the bound moves.
      std::vector<std::pair<double, int>> order;
      for (int j : *gub) order.push_back({-lp.values[j], j});
      std::sort(order.begin(), order.end());
      std::vector<VarBoundFix> zero_prefix, zero_rest;
      double cum = 0.0;
      size_t cut = 0;
      while (cut < order.size() - 1 && cum < 0.5) {
        cum += -order[cut].first;
        ++cut;
      }
      for (size_t i = 0; i < order.size(); ++i) {
        (i < cut ? zero_prefix : zero_rest)
            .push_back({order[i].second, 0.0, 0.0});
      }
      arena.push_back(BnbNode{next_id++, entry.index, std::move(zero_prefix),
                              value});
      arena.push_back(BnbNode{next_id++, entry.index, std::move(zero_rest),
                              value});
      // Dive into the concentrated side (prefix kept).
      open.push(QueueEntry{value, arena[left].id, left});
      if (options.plunge) {
        plunge_index = right;
      } else {
        open.push(QueueEntry{value, arena[right].id, right});
      }
    } else {
      double xj = lp.values[branch_var];
      double fl = std::floor(xj);
      arena.push_back(BnbNode{
          next_id++, entry.index,
          {{branch_var, node_lo[branch_var], fl}}, value});
      arena.push_back(BnbNode{
          next_id++, entry.index,
          {{branch_var, fl + 1.0, node_hi[branch_var]}}, value});
      // Dive toward the fractional value's nearer side.
      int dive = (xj - fl <= 0.5) ? left : right;
      int defer = (dive == left) ? right : left;
      open.push(QueueEntry{value, arena[defer].id, defer});
      if (options.plunge) {
        plunge_index = dive;
      } else {
        open.push(QueueEntry{value, arena[dive].id, dive});
      }
    }
    plunge_bound = value;
  }

  if (incumbent.empty()) {
    result.status = SolveStatus::Infeasible;
    result.node_count = nodes;
    result.wall_time_seconds = now_seconds() - start;
    result.best_bound = flip * -kInf;
    return result;
  }
  return finish(SolveStatus::Optimal, incumbent_value);
}

}  // namespace drrpvt
