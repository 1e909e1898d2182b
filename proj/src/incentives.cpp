#include "drrpvt/incentives.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "drrpvt/error.hpp"
#include "drrpvt/rng.hpp"

namespace drrpvt {

Allocation allocate_tasks(const std::vector<TrailerTask>& tasks,
                          const std::vector<Bid>& bids, double budget) {
  int n = static_cast<int>(tasks.size());
  for (const auto& bid : bids) {
    if (bid.task < 0 || bid.task >= n) {
      throw Error("auction", "bid references unknown task",
                  {{"task", std::to_string(bid.task)}});
    }
    if (bid.amount < 0.0) {
      throw Error("auction", "bid amounts must be nonnegative");
    }
  }

  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (tasks[a].value != tasks[b].value) return tasks[a].value > tasks[b].value;
    return tasks[a].id < tasks[b].id;
  });

  Allocation out;
  out.awards.assign(n, TaskAward{});
  for (int i = 0; i < n; ++i) out.awards[i].task = tasks[i].id;

  double remaining = budget;
  for (int idx : order) {
    const TrailerTask& task = tasks[idx];
    // Lowest bid wins, ties by bidder id; track the runner-up amount.
    int winner = -1;
    double low = std::numeric_limits<double>::infinity();
    double second = std::numeric_limits<double>::infinity();
    for (const auto& bid : bids) {
      if (bid.task != idx) continue;
      if (bid.amount < low - 1e-12 ||
          (std::abs(bid.amount - low) <= 1e-12 && bid.bidder < winner)) {
        second = low;
        low = bid.amount;
        winner = bid.bidder;
      } else if (bid.amount < second) {
        second = bid.amount;
      }
    }
    if (winner < 0) continue;                    // no bids at all
    if (low > task.value + 1e-12) continue;      // nobody works at this value
    double payment = std::isfinite(second) ? std::min(second, task.value)
                                           : task.value;
    if (out.total_paid + payment > budget + 1e-9) continue;  // budget screen
    remaining -= payment;
    out.awards[idx].winner = winner;
    out.awards[idx].payment = payment;
    out.total_paid += payment;
  }
  (void)remaining;
  return out;
}

std::vector<Bid> simulate_bids(const std::vector<TrailerTask>& tasks,
                               int bidders_per_task, uint64_t seed) {
  std::vector<Bid> bids;
  for (size_t i = 0; i < tasks.size(); ++i) {
    Rng rng(mix_seed(seed, 0xb1d5ULL * (i + 1)));
    for (int k = 0; k < bidders_per_task; ++k) {
      double cost = rng.uniform(0.5, 1.2) * tasks[i].value;
      bids.push_back({static_cast<int>(i) * 100 + k, static_cast<int>(i), cost});
    }
  }
  return bids;
}

std::vector<TrailerTask> tasks_from_plan(const Tensor2<int>& a_plus,
                                         const Tensor3<int>& b,
                                         const Tensor2<double>& values,
                                         int epoch) {
  int S = b.dim0(), W = b.dim2();
  std::vector<TrailerTask> tasks;
  for (int w = 0; w < W; ++w) {
    for (int s = 0; s < S; ++s) {
      for (int s2 = 0; s2 < S; ++s2) {
        if (!b(s, s2, w) || s == s2) continue;
        int qty = a_plus(s, w);
        if (qty < 1) continue;
        TrailerTask task;
        task.id = static_cast<int>(tasks.size());
        task.origin = s;
        task.destination = s2;
        task.epoch = epoch;
        task.quantity = qty;
        task.value = values(s, s2);
        task.trailer = w;
        tasks.push_back(task);
      }
    }
  }
  return tasks;
}

std::string allocation_csv(const std::vector<TrailerTask>& tasks,
                           const Allocation& allocation) {
  std::string out =
      "task_id,origin,destination,epoch,quantity,value,winner,payment\n";
  char line[160];
  for (size_t i = 0; i < tasks.size(); ++i) {
    const auto& task = tasks[i];
    const auto& award = allocation.awards[i];
    std::snprintf(line, sizeof line, "%d,%d,%d,%d,%d,%.9g,%d,%.9g\n", task.id,
                  task.origin, task.destination, task.epoch, task.quantity,
                  task.value, award.winner, award.payment);
    out += line;
  }
  return out;
}

}  // namespace drrpvt
