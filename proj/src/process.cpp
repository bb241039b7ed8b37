#include "hra/process.hpp"

#include <json.hpp>

#include <algorithm>

namespace hra {

std::string ScheduleTrace::to_json() const {
    nlohmann::ordered_json j;
    j["child_ids"] = child_ids;
    j["child_ticks"] = child_ticks;
    j["control_ticks"] = control_ticks;
    j["total_ticks"] = total_ticks;
    j["stop_reason"] = stop_reason;
    return j.dump();
}

StopRule stop_when_any_output1() {
    return [](const std::vector<ProcState>& s) {
        return std::any_of(s.begin(), s.end(),
                           [](ProcState p) { return p == ProcState::Output1; });
    };
}

StopRule stop_when_output1_at_least(std::size_t k) {
    return [k](const std::vector<ProcState>& s) {
        std::size_t done = 0;
        for (ProcState p : s)
            if (p == ProcState::Output1) ++done;
        return done >= k;
    };
}

StopRule stop_when_all_output1() {
    return [](const std::vector<ProcState>& s) {
        return std::all_of(s.begin(), s.end(),
                           [](ProcState p) { return p == ProcState::Output1; });
    };
}

ParallelComposite::ParallelComposite(std::vector<ProcessPtr> children, StopRule stop_rule,
                                     std::vector<std::string> child_ids)
    : children_(std::move(children)), stop_rule_(std::move(stop_rule)) {
    states_.assign(children_.size(), ProcState::Running);
    trace_.child_ticks.assign(children_.size(), 0);
    if (child_ids.empty()) {
        for (std::size_t i = 0; i < children_.size(); ++i)
            trace_.child_ids.push_back("child" + std::to_string(i));
    } else {
        trace_.child_ids = std::move(child_ids);
    }
    for (std::size_t i = 0; i < children_.size(); ++i) states_[i] = children_[i]->state();
}

void ParallelComposite::do_step() {
    while (cursor_ < children_.size() && !children_[cursor_]->running()) ++cursor_;
    if (cursor_ < children_.size()) {
        children_[cursor_]->step();
        ++trace_.child_ticks[cursor_];
        ++trace_.total_ticks;
        ++cursor_;
        return;
    }
    // Round end: control tick.
    ++trace_.control_ticks;
    ++trace_.total_ticks;
    for (std::size_t i = 0; i < children_.size(); ++i) states_[i] = children_[i]->state();
    if (stop_rule_(states_)) {
        trace_.stop_reason = "stop_rule";
        emit_output1();
        return;
    }
    bool any_running = std::any_of(states_.begin(), states_.end(),
                                   [](ProcState p) { return p == ProcState::Running; });
    if (!any_running) {
        trace_.stop_reason = "all_children_stopped";
        diverge();
        return;
    }
    cursor_ = 0;
}

ScheduleTrace run_parallel(std::vector<ProcessPtr> children, StopRule stop_rule,
                           std::uint64_t budget, std::vector<std::string> child_ids) {
    ParallelComposite comp(std::move(children), std::move(stop_rule), std::move(child_ids));
    run_until(comp, budget);
    ScheduleTrace trace = comp.trace();
    if (comp.running()) trace.stop_reason = "budget_exhausted";
    return trace;
}

}  // namespace hra
