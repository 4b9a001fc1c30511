#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "tilecaster/env.hpp"

namespace tilecaster {

// Fixed-size worker pool. Batch results never depend on the thread count.
class WorkerPool {
 public:
  explicit WorkerPool(int threads);
  ~WorkerPool();
  WorkerPool(const WorkerPool&) = delete;
  WorkerPool& operator=(const WorkerPool&) = delete;

  int threads() const { return threads_; }

  // Calls body(begin, end) over disjoint ranges covering [0, n).
  void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

 private:
  struct Arena;
  int threads_;
  std::unique_ptr<Arena> arena_;
};

struct BatchState {
  std::shared_ptr<const EnvSpec> spec;
  std::vector<EnvState> states;
  std::vector<std::uint8_t> frames;  // n x H x W x 3
  // Auto-reset bookkeeping for the episode in progress.
  std::vector<double> episode_return;
  std::vector<int> episode_length;
  std::uint64_t episodes_completed = 0;

  std::size_t size() const { return states.size(); }
  std::size_t frame_size() const { return frame_bytes(spec->obs_width, spec->obs_height); }
  std::span<const std::uint8_t> frame(std::size_t i) const {
    return std::span<const std::uint8_t>(frames).subspan(i * frame_size(), frame_size());
  }
  friend bool operator==(const BatchState& a, const BatchState& b) {
    return a.states == b.states && a.frames == b.frames && a.episode_return == b.episode_return &&
           a.episode_length == b.episode_length && a.episodes_completed == b.episodes_completed;
  }
};

struct BatchStepResult {
  std::vector<double> rewards;
  std::vector<std::uint8_t> dones;
  std::vector<std::uint8_t> truncated;
  std::vector<StepInfo> infos;
};

// Environment i is reset with split(seed, i). n must be >= 1.
BatchState batch_reset(std::shared_ptr<const EnvSpec> spec, int n, std::uint64_t seed, WorkerPool* pool = nullptr);

// Steps every environment; finished ones are reset in the same call from
// their own rng stream, so frames[i] always shows a live episode while the
// returned reward/done describe the step that ended it.
BatchStepResult batch_step(BatchState& bs, std::span<const Action> actions, WorkerPool* pool = nullptr);

// Draws one uniformly random action per environment from spec.action_set.
void sample_actions(const EnvSpec& spec, RngState& rng, std::span<Action> out);

struct ThroughputReport {
  double steps_per_second = 0;
  double elapsed_seconds = 0;
  std::uint64_t env_steps = 0;
  std::uint64_t frames_rendered = 0;  // one observation per env step
  double total_reward = 0;
  std::uint64_t episodes_completed = 0;
};

// Wall-clock timed uniform-random rollout of `steps` batched steps over n
// environments, rendering included.
ThroughputReport run_throughput(std::shared_ptr<const EnvSpec> spec, int n, int steps, std::uint64_t seed,
                                WorkerPool* pool = nullptr);

// Aggregate environment steps per second of run_throughput.
double throughput_probe(std::shared_ptr<const EnvSpec> spec, int n, int steps, std::uint64_t seed = 0,
                        WorkerPool* pool = nullptr);

// Stream the uniform-random policy draws from for a given seed.
inline RngState policy_stream(std::uint64_t seed) { return split(seed ^ 0x706f6c696379ULL, 0); }

}  // namespace tilecaster
