#pragma once

/**
 * @file enumerate.hpp
 * @brief Parallel, order-preserving enumeration of the labelled Farey tree.
 *
 * The tree is cut into an in-order list of tasks: single nodes near the root
 * and along the two spines (slopes 1/k and (k-1)/k), and whole subtrees
 * elsewhere. Workers process tasks independently; results are consumed
 * strictly in list order, so output never depends on the thread count.
 */

#include "markov_twist/markov.hpp"

#include <cstddef>
#include <deque>
#include <future>
#include <utility>
#include <vector>

namespace markov_twist {

struct EnumerationOptions {
  unsigned threads = 1;
  unsigned split_depth = 8;
};

/// One in-order unit of work: a single node, or the whole subtree under it.
struct WalkTask {
  TreeState state;
  bool whole_subtree;
};

namespace detail {

inline bool on_spine(const TreeState& s) {
  return s.farey.left == Slope(0, 1) || s.farey.right == Slope(1, 1);
}

inline void decompose(const TreeState& s, unsigned long q_max, unsigned depth, unsigned split_depth,
                      std::vector<WalkTask>& out) {
  if (s.farey.center.q() > q_max) return;
  if (depth >= split_depth && !on_spine(s)) {
    out.push_back({s, true});
    return;
  }
  if (s.child_q(Turn::L) <= q_max) decompose(s.child(Turn::L), q_max, depth + 1, split_depth, out);
  out.push_back({s, false});
  if (s.child_q(Turn::R) <= q_max) decompose(s.child(Turn::R), q_max, depth + 1, split_depth, out);
}

}  // namespace detail

/// In-order task list covering every slope with q <= q_max, endpoints included.
inline std::vector<WalkTask> decompose_tree(unsigned long q_max, unsigned split_depth) {
  if (q_max < 1) throw RangeError("enumeration: q_max must be positive");
  std::vector<WalkTask> tasks;
  tasks.push_back({lower_endpoint_state(), false});
  detail::decompose(root_state(), q_max, 0, split_depth, tasks);
  tasks.push_back({upper_endpoint_state(), false});
  return tasks;
}

/// Runs visit(state) over the task's nodes in ascending slope order.
template <class Visitor>
void run_task(const WalkTask& task, unsigned long q_max, Visitor& visit) {
  if (task.whole_subtree) {
    walk_subtree(task.state, q_max, visit);
  } else {
    visit(task.state);
  }
}

/// Maps each task to a result on worker threads and consumes results in order.
///
/// At most 2 * threads results are in flight, which bounds memory.
template <class Produce, class Consume>
void for_each_task_ordered(const std::vector<WalkTask>& tasks, unsigned threads, Produce produce, Consume consume) {
  if (threads <= 1) {
    for (const WalkTask& t : tasks) consume(produce(t));
    return;
  }
  using Result = decltype(produce(tasks.front()));
  std::deque<std::future<Result>> in_flight;
  const std::size_t window = static_cast<std::size_t>(threads) * 2;
  std::size_t next = 0;
  while (next < tasks.size() || !in_flight.empty()) {
    while (next < tasks.size() && in_flight.size() < window) {
      const WalkTask* task = &tasks[next++];
      in_flight.push_back(std::async(std::launch::async, [&produce, task] { return produce(*task); }));
    }
    Result r = in_flight.front().get();
    in_flight.pop_front();
    consume(std::move(r));
  }
}

/// Parallel label enumeration; visit receives NodeLabels in ascending slope order.
template <class Visitor>
void enumerate_labels(unsigned long q_max, const EnumerationOptions& options, Visitor&& visit) {
  std::vector<WalkTask> tasks = decompose_tree(q_max, options.split_depth);
  auto produce = [q_max](const WalkTask& task) {
    std::vector<NodeLabels> out;
    auto collect = [&out](const TreeState& s) { out.push_back(s.labels()); };
    run_task(task, q_max, collect);
    return out;
  };
  for_each_task_ordered(tasks, options.threads, produce, [&visit](std::vector<NodeLabels>&& chunk) {
    for (NodeLabels& n : chunk) visit(n);
  });
}

}  // namespace markov_twist
