#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "conekit/io.hpp"
#include "conekit/rational.hpp"

namespace conekit {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr std::uint64_t kDefaultSeed = 0x5EED;

// Where an expected value comes from: quoted from the source text, trivially true, or derived here.
enum class Provenance { paper, trivial, derived };
std::string to_string(Provenance p);

struct CheckRecord {
    std::string name;
    json expected;  // rationals as "p/q", floats as 17-digit strings
    json computed;
    std::optional<double> tolerance;  // none for exact checks
    bool pass = false;
    Provenance provenance = Provenance::derived;
};

class VerificationReport {
public:
    VerificationReport(std::string command, json inputs = json::object(), std::uint64_t seed = kDefaultSeed);

    // |computed - expected| <= tol (absolute).
    CheckRecord& check_abs(const std::string& name, double expected, double computed, double tol, Provenance p);
    // |computed - expected| <= tol |expected|.
    CheckRecord& check_rel(const std::string& name, double expected, double computed, double tol, Provenance p);
    // value <= bound (e.g. an error estimate).
    CheckRecord& check_below(const std::string& name, double bound, double value, Provenance p);
    CheckRecord& check_exact(const std::string& name, const Rational& expected, const Rational& computed,
                             Provenance p);
    CheckRecord& check_equal(const std::string& name, const json& expected, const json& computed, Provenance p);
    CheckRecord& check_true(const std::string& name, bool ok, Provenance p, const json& detail = nullptr);

    void add_data(const std::string& key, json value) { data_[key] = std::move(value); }
    void merge(const VerificationReport& other, const std::string& prefix);

    bool pass() const;
    const std::vector<CheckRecord>& records() const { return records_; }
    json to_json() const;
    std::string to_text() const;

private:
    std::string command_;
    json inputs_;
    std::uint64_t seed_;
    std::vector<CheckRecord> records_;
    json data_ = json::object();
};

std::string format_seed(std::uint64_t seed);

}  // namespace conekit
