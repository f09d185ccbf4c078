#pragma once

// Verification records shared by every checker.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace symgen {

struct Report {
    std::string suite;
    nlohmann::json parameters = nlohmann::json::object();
    std::size_t instances = 0;
    std::size_t failure_count = 0;
    std::vector<nlohmann::json> failures; // first max_failures only
    static constexpr std::size_t max_failures = 20;

    bool pass() const { return failure_count == 0; }

    void record(bool ok, nlohmann::json payload = {})
    {
        ++instances;
        if (ok)
            return;
        ++failure_count;
        if (failures.size() < max_failures)
            failures.push_back(std::move(payload));
    }
    // Appends another record's counts and failures (associative).
    void merge(const Report &o)
    {
        instances += o.instances;
        failure_count += o.failure_count;
        for (const auto &f : o.failures)
            if (failures.size() < max_failures)
                failures.push_back(f);
    }

    nlohmann::json to_json() const
    {
        return {{"suite", suite},
                {"instances", instances},
                {"pass", pass()},
                {"parameters", parameters},
                {"failure_count", failure_count},
                {"failures", failures}};
    }
};

} // namespace symgen
