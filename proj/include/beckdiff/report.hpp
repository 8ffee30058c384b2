#pragma once

#include <json.hpp>

#include <string>
#include <vector>

namespace beckdiff {

enum class Verdict { Pass, Fail, Error };

inline const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "Pass";
        case Verdict::Fail: return "Fail";
        case Verdict::Error: return "Error";
    }
    return "?";
}

/* One verification case. Reports serialize deterministically: nlohmann's
 * default object type keeps keys sorted, cases are emitted in case-id order,
 * and elapsed_ms is excluded unless timings are requested (wall-clock time
 * can never be byte-stable across runs). */
struct CaseReport {
    std::string case_id;
    std::string command;
    Verdict verdict = Verdict::Pass;
    nlohmann::json details = nlohmann::json::object();
    std::int64_t elapsed_ms = 0;

    nlohmann::json to_json(bool include_timings = false) const {
        nlohmann::json out{{"case", case_id},
                           {"command", command},
                           {"verdict", verdict_name(verdict)},
                           {"details", details}};
        if (include_timings) out["elapsed_ms"] = elapsed_ms;
        return out;
    }
};

struct RunSummary {
    std::vector<CaseReport> cases;  // kept in case-id order
    std::size_t passed = 0, failed = 0, errored = 0;

    void add(CaseReport r) {
        switch (r.verdict) {
            case Verdict::Pass: ++passed; break;
            case Verdict::Fail: ++failed; break;
            case Verdict::Error: ++errored; break;
        }
        cases.push_back(std::move(r));
    }

    bool all_passed() const { return failed == 0 && errored == 0; }

    nlohmann::json to_json(bool include_timings = false) const {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& c : cases) arr.push_back(c.to_json(include_timings));
        return nlohmann::json{{"cases", arr},
                              {"summary",
                               {{"passed", passed}, {"failed", failed}, {"errors", errored}}}};
    }

    std::string to_text(bool include_timings = false) const {
        std::string out;
        std::size_t width = 8;
        for (const auto& c : cases) width = std::max(width, c.case_id.size());
        for (const auto& c : cases) {
            out += c.case_id;
            out.append(width - c.case_id.size() + 2, ' ');
            out += verdict_name(c.verdict);
            if (c.details.contains("note"))
                out += "  " + c.details["note"].get<std::string>();
            if (include_timings) out += "  (" + std::to_string(c.elapsed_ms) + " ms)";
            out += "\n";
        }
        out += "passed: " + std::to_string(passed) + "  failed: " + std::to_string(failed) +
               "  errors: " + std::to_string(errored) + "\n";
        return out;
    }
};

}  // namespace beckdiff
