// Check/report containers shared by validators and the verification suites.
#pragma once

#include <string>
#include <vector>

namespace dgd {

struct Check {
    std::string name;
    bool pass = false;
    std::string witness;  // replayable counterexample payload, exact rationals as text
};

struct Report {
    std::string suite;
    std::string seed;
    std::vector<std::pair<std::string, std::string>> config;  // ordered key/value echo
    std::vector<Check> checks;
    std::size_t trials = 0;

    bool pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    void add(const std::string& name, bool ok, const std::string& witness = "") {
        checks.push_back(Check{name, ok, ok ? "" : witness});
    }
    void merge(const Report& other, const std::string& prefix = "") {
        for (const auto& c : other.checks)
            checks.push_back(Check{prefix.empty() ? c.name : prefix + "/" + c.name, c.pass, c.witness});
    }
    const Check* firstFailure() const {
        for (const auto& c : checks)
            if (!c.pass) return &c;
        return nullptr;
    }
};

std::string reportToJson(const Report& r);
std::string reportToText(const Report& r);

} // namespace dgd
