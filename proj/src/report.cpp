#include "hra/report.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace hra {

std::string format_double(double v) {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os.precision(17);
    os << v;
    return os.str();
}

Json CheckRecord::to_json() const {
    Json j = Json::object();
    j["name"] = name;
    if (empirical) j["empirical"] = *empirical;
    if (ci_lo) j["ci_lo"] = *ci_lo;
    if (ci_hi) j["ci_hi"] = *ci_hi;
    if (exact) j["exact"] = rational_string(*exact);
    if (bound) j["bound"] = *bound;
    j["pass"] = pass;
    if (!note.empty()) j["note"] = note;
    return j;
}

CheckRecord CheckRecord::from_json(const Json& j) {
    CheckRecord r;
    r.name = j.at("name").get<std::string>();
    if (j.contains("empirical")) r.empirical = j["empirical"].get<double>();
    if (j.contains("ci_lo")) r.ci_lo = j["ci_lo"].get<double>();
    if (j.contains("ci_hi")) r.ci_hi = j["ci_hi"].get<double>();
    if (j.contains("exact")) r.exact = parse_rational(j["exact"].get<std::string>());
    if (j.contains("bound")) r.bound = j["bound"].get<double>();
    r.pass = j.at("pass").get<bool>();
    if (j.contains("note")) r.note = j["note"].get<std::string>();
    return r;
}

bool ExperimentReport::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

Json ExperimentReport::to_json() const {
    Json j = Json::object();
    j["config"] = config;
    j["checks"] = Json::array();
    for (const auto& c : checks) j["checks"].push_back(c.to_json());
    j["runtime"] = runtime;
    return j;
}

ExperimentReport ExperimentReport::from_json(const Json& j) {
    ExperimentReport r;
    r.config = j.at("config");
    for (const auto& c : j.at("checks")) r.checks.push_back(CheckRecord::from_json(c));
    r.runtime = j.value("runtime", Json::object());
    return r;
}

void ExperimentReport::write_csv(std::ostream& out) const {
    out << "name,empirical,ci_lo,ci_hi,exact_rational,exact_decimal,bound,pass,note\n";
    auto opt = [](const std::optional<double>& v) {
        return v ? format_double(*v) : std::string();
    };
    for (const auto& c : checks) {
        out << c.name << "," << opt(c.empirical) << "," << opt(c.ci_lo) << ","
            << opt(c.ci_hi) << ",";
        if (c.exact)
            out << rational_string(*c.exact) << "," << format_double(to_double(*c.exact));
        else
            out << ",";
        out << "," << opt(c.bound) << "," << (c.pass ? "pass" : "fail") << "," << c.note
            << "\n";
    }
}

void emit_report(const ExperimentReport& report, const std::string& path,
                 const std::string& format) {
    std::ofstream file;
    std::ostream* out = &std::cout;
    if (path != "-") {
        file.open(path);
        if (!file) throw IoError("cannot open output path: " + path);
        out = &file;
    }
    if (format == "json")
        *out << report.to_json().dump(2) << "\n";
    else if (format == "csv")
        report.write_csv(*out);
    else
        throw ConfigError("unknown report format: " + format);
    if (out->fail()) throw IoError("write failed: " + path);
}

}  // namespace hra
