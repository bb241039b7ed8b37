#pragma once

#include "hra/coins.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hra {

enum class ProcState { Running, Output1, HaltedNoOutput, Diverged };

/// Resumable randomized computation advanced in unit steps. The only
/// legitimate terminal event for an automatizer is Output1; HaltedNoOutput
/// exists so raw processes can violate that and be repaired by the
/// semidecision wrapper. Terminal and diverged states are absorbing.
class SteppableProcess {
  public:
    virtual ~SteppableProcess() = default;

    void step() {
        if (state_ == ProcState::Running) do_step();
    }

    ProcState state() const { return state_; }
    bool running() const { return state_ == ProcState::Running; }
    bool output1() const { return state_ == ProcState::Output1; }
    bool diverged() const { return state_ == ProcState::Diverged; }

    /// Witness string attached to Output1 by proof-search processes.
    const std::optional<std::string>& payload() const { return payload_; }

  protected:
    virtual void do_step() = 0;

    void emit_output1() { state_ = ProcState::Output1; }
    void emit_output1(std::string payload) {
        payload_ = std::move(payload);
        state_ = ProcState::Output1;
    }
    void halt_no_output() { state_ = ProcState::HaltedNoOutput; }
    void diverge() { state_ = ProcState::Diverged; }

  private:
    ProcState state_ = ProcState::Running;
    std::optional<std::string> payload_;
};

using ProcessPtr = std::unique_ptr<SteppableProcess>;
using ProcessFactory = std::function<ProcessPtr(CoinContext)>;

struct RunOutcome {
    bool output1 = false;
    std::uint64_t halt_step = 0;  // step index of the Output1 event (1-based)
};

/// Budget-bounded observation of a possibly non-halting run. Returns the
/// exact step index of the terminal event, or Undecided (output1=false).
inline RunOutcome run_until(SteppableProcess& proc, std::uint64_t budget) {
    if (proc.output1()) return {true, 0};
    for (std::uint64_t t = 1; t <= budget; ++t) {
        if (!proc.running()) break;
        proc.step();
        if (proc.output1()) return {true, t};
    }
    return {false, 0};
}

struct ScheduleTrace {
    std::vector<std::string> child_ids;
    std::vector<std::uint64_t> child_ticks;
    std::uint64_t control_ticks = 0;
    std::uint64_t total_ticks = 0;  // sum of child ticks + control ticks
    std::string stop_reason;

    std::string to_json() const;
};

/// Predicate over per-child states, evaluated once per round at the control
/// tick. "Completed" means Output1.
using StopRule = std::function<bool(const std::vector<ProcState>&)>;

StopRule stop_when_any_output1();
StopRule stop_when_output1_at_least(std::size_t k);
StopRule stop_when_all_output1();

/// Deterministic fair scheduler as a process: one step per running child per
/// round in fixed index order, then one control tick evaluating the stop
/// rule. Emits Output1 at the control tick of the first round where the rule
/// holds; diverges once no child is running and the rule cannot fire.
/// Children that stopped or diverged receive no further ticks.
class ParallelComposite : public SteppableProcess {
  public:
    ParallelComposite(std::vector<ProcessPtr> children, StopRule stop_rule,
                      std::vector<std::string> child_ids = {});

    const ScheduleTrace& trace() const { return trace_; }
    const SteppableProcess& child(std::size_t i) const { return *children_[i]; }
    std::size_t child_count() const { return children_.size(); }

  protected:
    void do_step() override;

  private:
    std::vector<ProcessPtr> children_;
    StopRule stop_rule_;
    std::vector<ProcState> states_;
    ScheduleTrace trace_;
    std::size_t cursor_ = 0;  // next child to consider; == size() -> control tick
};

/// Runs children to completion of the stop rule (or tick budget), returning
/// the trace. Total ticks include the control overhead.
ScheduleTrace run_parallel(std::vector<ProcessPtr> children, StopRule stop_rule,
                           std::uint64_t budget = 10'000'000,
                           std::vector<std::string> child_ids = {});

}  // namespace hra
