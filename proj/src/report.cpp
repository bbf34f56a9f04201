#include "conekit/report.hpp"

#include <cmath>
#include <sstream>

namespace conekit {

std::string to_string(Provenance p) {
    switch (p) {
        case Provenance::paper: return "paper";
        case Provenance::trivial: return "trivial";
        case Provenance::derived: return "derived";
    }
    return "derived";
}

std::string format_seed(std::uint64_t seed) {
    std::ostringstream os;
    os << "0x" << std::hex << std::uppercase << seed;
    return os.str();
}

VerificationReport::VerificationReport(std::string command, json inputs, std::uint64_t seed)
    : command_(std::move(command)), inputs_(std::move(inputs)), seed_(seed) {}

CheckRecord& VerificationReport::check_abs(const std::string& name, double expected, double computed, double tol,
                                           Provenance p) {
    const bool ok = std::isfinite(computed) && std::abs(computed - expected) <= tol;
    records_.push_back({name, format_double(expected), format_double(computed), tol, ok, p});
    return records_.back();
}

CheckRecord& VerificationReport::check_rel(const std::string& name, double expected, double computed, double tol,
                                           Provenance p) {
    const bool ok = std::isfinite(computed) && std::abs(computed - expected) <= tol * std::abs(expected);
    records_.push_back({name, format_double(expected), format_double(computed), tol, ok, p});
    return records_.back();
}

CheckRecord& VerificationReport::check_below(const std::string& name, double bound, double value, Provenance p) {
    const bool ok = std::isfinite(value) && value <= bound;
    records_.push_back({name, "<= " + format_double(bound), format_double(value), bound, ok, p});
    return records_.back();
}

CheckRecord& VerificationReport::check_exact(const std::string& name, const Rational& expected,
                                             const Rational& computed, Provenance p) {
    records_.push_back({name, expected.str(), computed.str(), std::nullopt, expected == computed, p});
    return records_.back();
}

CheckRecord& VerificationReport::check_equal(const std::string& name, const json& expected, const json& computed,
                                             Provenance p) {
    records_.push_back({name, expected, computed, std::nullopt, expected == computed, p});
    return records_.back();
}

CheckRecord& VerificationReport::check_true(const std::string& name, bool ok, Provenance p, const json& detail) {
    records_.push_back({name, true, detail.is_null() ? json(ok) : detail, std::nullopt, ok, p});
    return records_.back();
}

void VerificationReport::merge(const VerificationReport& other, const std::string& prefix) {
    for (auto r : other.records_) {
        r.name = prefix + r.name;
        records_.push_back(std::move(r));
    }
    for (auto it = other.data_.begin(); it != other.data_.end(); ++it) data_[prefix + it.key()] = it.value();
}

bool VerificationReport::pass() const {
    for (const auto& r : records_)
        if (!r.pass) return false;
    return true;
}

json VerificationReport::to_json() const {
    json checks = json::array();
    for (const auto& r : records_) {
        json c{{"name", r.name},
               {"expected", r.expected},
               {"computed", r.computed},
               {"pass", r.pass},
               {"provenance", to_string(r.provenance)}};
        c["tolerance"] = r.tolerance ? json(format_double(*r.tolerance)) : json(nullptr);
        checks.push_back(std::move(c));
    }
    return {{"schema", "conekit/1"},
            {"command", command_},
            {"inputs", inputs_},
            {"status", pass() ? "pass" : "fail"},
            {"checks", checks},
            {"data", data_},
            {"environment", {{"version", kVersion}, {"seed", format_seed(seed_)}}}};
}

std::string VerificationReport::to_text() const {
    std::ostringstream os;
    os << command_ << ": " << (pass() ? "PASS" : "FAIL") << "\n";
    auto str = [](const json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); };
    for (const auto& r : records_) {
        os << "  [" << (r.pass ? "pass" : "FAIL") << "] " << r.name << "  expected " << str(r.expected)
           << "  computed " << str(r.computed);
        if (r.tolerance) os << "  tol " << format_double(*r.tolerance);
        os << "  (" << to_string(r.provenance) << ")\n";
    }
    for (auto it = data_.begin(); it != data_.end(); ++it) os << "  " << it.key() << ": " << str(it.value()) << "\n";
    return os.str();
}

}  // namespace conekit
