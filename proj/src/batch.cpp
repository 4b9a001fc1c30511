#include "tilecaster/batch.hpp"

#include <oneapi/tbb/blocked_range.h>
#include <oneapi/tbb/global_control.h>
#include <oneapi/tbb/parallel_for.h>
#include <oneapi/tbb/task_arena.h>

#include <chrono>
#include <stdexcept>
#include <string>

namespace tilecaster {

struct WorkerPool::Arena {
  // Lifts TBB's default cap of hardware_concurrency - 1 workers.
  tbb::global_control limit;
  tbb::task_arena arena;
  explicit Arena(int threads)
      : limit(tbb::global_control::max_allowed_parallelism, static_cast<std::size_t>(threads)), arena(threads) {}
};

WorkerPool::WorkerPool(int threads) : threads_(threads) {
  if (threads < 1) throw std::invalid_argument("WorkerPool: thread count must be >= 1");
  if (threads > 1) arena_ = std::make_unique<Arena>(threads);
}

WorkerPool::~WorkerPool() = default;

void WorkerPool::parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body) {
  if (!arena_ || n < 2) {
    body(0, n);
    return;
  }
  arena_->arena.execute([&] {
    tbb::parallel_for(tbb::blocked_range<std::size_t>(0, n),
                      [&](const tbb::blocked_range<std::size_t>& r) { body(r.begin(), r.end()); });
  });
}

namespace {

void for_each_env(WorkerPool* pool, std::size_t n, const std::function<void(std::size_t, std::size_t)>& body) {
  if (pool != nullptr) {
    pool->parallel_for(n, body);
  } else {
    body(0, n);
  }
}

}  // namespace

BatchState batch_reset(std::shared_ptr<const EnvSpec> spec, int n, std::uint64_t seed, WorkerPool* pool) {
  if (!spec) throw std::invalid_argument("batch_reset: null spec");
  if (n < 1) throw std::invalid_argument("batch_reset: n must be >= 1, got " + std::to_string(n));
  BatchState bs;
  bs.spec = std::move(spec);
  const auto count = static_cast<std::size_t>(n);
  bs.states.resize(count);
  bs.frames.resize(count * bs.frame_size());
  bs.episode_return.assign(count, 0.0);
  bs.episode_length.assign(count, 0);
  const EnvSpec& s = *bs.spec;
  const std::size_t fsize = bs.frame_size();
  for_each_env(pool, count, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      bs.states[i] = reset_state(s, split(seed, i));
      render_state_into(std::span<std::uint8_t>(bs.frames).subspan(i * fsize, fsize), s, bs.states[i]);
    }
  });
  return bs;
}

BatchStepResult batch_step(BatchState& bs, std::span<const Action> actions, WorkerPool* pool) {
  const std::size_t n = bs.size();
  if (actions.size() != n) {
    throw std::invalid_argument("batch_step: got " + std::to_string(actions.size()) + " actions for " +
                                std::to_string(n) + " environments");
  }
  const EnvSpec& spec = *bs.spec;
  for (Action a : actions) {
    if (!spec.allows(a)) {
      throw std::invalid_argument("batch_step: action '" + std::string(action_name(a)) + "' is not legal in env '" +
                                  spec.id + "'; legal actions: " + spec.action_set_description());
    }
  }
  BatchStepResult out;
  out.rewards.assign(n, 0.0);
  out.dones.assign(n, 0);
  out.truncated.assign(n, 0);
  out.infos.assign(n, StepInfo{});
  std::vector<std::uint8_t> finished(n, 0);
  const std::size_t fsize = bs.frame_size();
  for_each_env(pool, n, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      Transition tr = step_state(spec, bs.states[i], actions[i]);
      out.rewards[i] = tr.reward;
      out.dones[i] = tr.done ? 1 : 0;
      out.truncated[i] = tr.info.truncated() ? 1 : 0;
      out.infos[i] = tr.info;
      bs.episode_return[i] += tr.reward;
      bs.episode_length[i] += 1;
      if (tr.done) {
        bs.states[i] = reset_state(spec, tr.state.rng);
        bs.episode_return[i] = 0.0;
        bs.episode_length[i] = 0;
        finished[i] = 1;
      } else {
        bs.states[i] = std::move(tr.state);
      }
      render_state_into(std::span<std::uint8_t>(bs.frames).subspan(i * fsize, fsize), spec, bs.states[i]);
    }
  });
  for (std::uint8_t f : finished) bs.episodes_completed += f;
  return out;
}

void sample_actions(const EnvSpec& spec, RngState& rng, std::span<Action> out) {
  for (Action& a : out) a = spec.action_set[uniform_index(rng, spec.action_set.size())];
}

ThroughputReport run_throughput(std::shared_ptr<const EnvSpec> spec, int n, int steps, std::uint64_t seed,
                                WorkerPool* pool) {
  if (steps < 1) throw std::invalid_argument("run_throughput: steps must be >= 1");
  BatchState bs = batch_reset(spec, n, seed, pool);
  RngState policy = policy_stream(seed);
  std::vector<Action> actions(static_cast<std::size_t>(n));
  ThroughputReport report;
  const auto start = std::chrono::steady_clock::now();
  for (int t = 0; t < steps; ++t) {
    sample_actions(*bs.spec, policy, actions);
    const BatchStepResult r = batch_step(bs, actions, pool);
    for (double reward : r.rewards) report.total_reward += reward;
  }
  const auto stop = std::chrono::steady_clock::now();
  report.elapsed_seconds = std::chrono::duration<double>(stop - start).count();
  report.env_steps = static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(steps);
  report.frames_rendered = report.env_steps;
  report.steps_per_second = static_cast<double>(report.env_steps) / report.elapsed_seconds;
  report.episodes_completed = bs.episodes_completed;
  return report;
}

double throughput_probe(std::shared_ptr<const EnvSpec> spec, int n, int steps, std::uint64_t seed, WorkerPool* pool) {
  return run_throughput(std::move(spec), n, steps, seed, pool).steps_per_second;
}

}  // namespace tilecaster
