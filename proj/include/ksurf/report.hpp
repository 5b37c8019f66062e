#pragma once

// Structured pass/fail reports shared by every CLI command.  A report is a
// list of sections; each section carries human-readable lines plus flat
// key=value pairs that are emitted in a machine-readable block when
// requested.  Exit status: 0 iff no section failed (inconclusive sections do
// not fail), 1 if any failed, 2 is reserved for usage/parse errors.

#include <cstddef>
#include <string>
#include <vector>

namespace ksurf::report {

enum class Status { Pass, Fail, Inconclusive };

std::string to_string(Status s);

struct Section {
    std::string id;       // machine identifier, dot-separated
    std::string title;    // human heading
    Status status = Status::Pass;
    std::vector<std::string> lines;                          // human detail
    std::vector<std::pair<std::string, std::string>> data;   // machine kv

    void human(std::string line) { lines.push_back(std::move(line)); }
    void kv(std::string key, std::string value) {
        data.emplace_back(std::move(key), std::move(value));
    }
    void kv(std::string key, long long value) {
        data.emplace_back(std::move(key), std::to_string(value));
    }
};

struct Report {
    std::vector<Section> sections;

    Section& add(std::string id, std::string title);
    bool all_passed() const;      // no Fail section
    int exit_code() const;        // 0 or 1

    // Human rendering by default; with `machine` set, only the
    // "--- machine ksurf.report.v1 ---" block with one section.key=value
    // line per datum is printed.
    std::string render(bool machine) const;
};

}  // namespace ksurf::report
