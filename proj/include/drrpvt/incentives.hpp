#pragma once

// Trailer-task crowdsourcing: per-task sealed-bid reverse auction with
// second-price payments capped at the task value, awarded greedily in
// decreasing value order under the budget.

#include <cstdint>
#include <string>
#include <vector>

#include "drrpvt/tensor.hpp"
#include "drrpvt/types.hpp"

namespace drrpvt {

struct TrailerTask {
  int id = 0;
  int origin = 0;
  int destination = 0;
  int epoch = 0;
  int quantity = 0;      // bikes to move, >= 1
  double value = 0.0;    // P-hat of the task
  int trailer = -1;      // plan bookkeeping: which trailer slot
};

struct Bid {
  int bidder = 0;
  int task = 0;
  double amount = 0.0;
};

struct TaskAward {
  int task = 0;
  int winner = -1;  // -1: unallocated
  double payment = 0.0;
};

struct Allocation {
  std::vector<TaskAward> awards;  // one per task, task id order
  double total_paid = 0.0;
};

// Tasks are processed in decreasing value (ties by task id). Each goes to
// its lowest bidder (ties by bidder id) at the second-lowest bid when one
// exists, else the task value, always capped at the task value. Tasks whose
// lowest bid exceeds the value, or whose payment would break the remaining
// budget, stay unallocated.
Allocation allocate_tasks(const std::vector<TrailerTask>& tasks,
                          const std::vector<Bid>& bids, double budget);

// Simulation bids: per task, `bidders_per_task` truthful bids with costs
// uniform in [0.5, 1.2] x value. Deterministic per seed.
std::vector<Bid> simulate_bids(const std::vector<TrailerTask>& tasks,
                               int bidders_per_task, uint64_t seed);

// Extracts auctionable tasks from one epoch slice of a plan: per trailer,
// the b-selected pair with its picked-up quantity; zero-quantity moves and
// self-loops are no-ops and yield no task.
std::vector<TrailerTask> tasks_from_plan(const Tensor2<int>& a_plus,     // [s][w]
                                         const Tensor3<int>& b,          // [s][s'][w]
                                         const Tensor2<double>& values,  // P-hat
                                         int epoch);

// csv: task_id,origin,destination,epoch,quantity,value,winner,payment
std::string allocation_csv(const std::vector<TrailerTask>& tasks,
                           const Allocation& allocation);

}  // namespace drrpvt
