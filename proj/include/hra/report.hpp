#pragma once

#include "hra/errors.hpp"
#include "hra/rational.hpp"

#include <json.hpp>

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace hra {

using Json = nlohmann::ordered_json;

/// One verdict row of an experiment report. `pass` states exactly the
/// comparison the record documents in `note` (or the obvious one: empirical
/// inside CI around the oracle, or exact <= bound).
struct CheckRecord {
    std::string name;
    std::optional<double> empirical;
    std::optional<double> ci_lo;
    std::optional<double> ci_hi;
    std::optional<Rational> exact;
    std::optional<double> bound;
    bool pass = false;
    std::string note;

    Json to_json() const;
    static CheckRecord from_json(const Json& j);
};

/// Config echo + per-check verdicts. Runtime metadata (wall times, host
/// info) lives only in `runtime`, so reports are byte-identical across runs
/// of the same config outside that one section.
struct ExperimentReport {
    Json config;
    std::vector<CheckRecord> checks;
    Json runtime = Json::object();

    bool all_pass() const;

    Json to_json() const;
    static ExperimentReport from_json(const Json& j);

    /// Flattened per-check rows; rational oracles render as both "p/q" and
    /// decimal columns. Locale-independent, 17 significant digits.
    void write_csv(std::ostream& out) const;
};

/// Writes the report to `path` ("-" = stdout) as json or csv.
void emit_report(const ExperimentReport& report, const std::string& path,
                 const std::string& format);

/// Locale-independent decimal rendering with round-trip precision.
std::string format_double(double v);

}  // namespace hra
