#include "ksurf/report.hpp"

#include <sstream>

namespace ksurf::report {

std::string to_string(Status s) {
    switch (s) {
        case Status::Pass: return "pass";
        case Status::Fail: return "fail";
        case Status::Inconclusive: return "inconclusive";
    }
    return "fail";
}

Section& Report::add(std::string id, std::string title) {
    sections.push_back(Section{std::move(id), std::move(title)});
    return sections.back();
}

bool Report::all_passed() const {
    for (const Section& s : sections)
        if (s.status == Status::Fail) return false;
    return true;
}

int Report::exit_code() const { return all_passed() ? 0 : 1; }

std::string Report::render(bool machine) const {
    std::ostringstream os;
    if (machine) {
        os << "--- machine ksurf.report.v1 ---\n";
        for (const Section& s : sections) {
            os << s.id << ".status=" << to_string(s.status) << '\n';
            for (const auto& [k, v] : s.data) os << s.id << '.' << k << '=' << v << '\n';
        }
        return os.str();
    }
    for (const Section& s : sections) {
        os << "[" << to_string(s.status) << "] " << s.title << '\n';
        for (const std::string& line : s.lines) os << "  " << line << '\n';
    }
    return os.str();
}

}  // namespace ksurf::report
