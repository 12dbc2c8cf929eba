#ifndef BRACELET_REPORT_HPP
#define BRACELET_REPORT_HPP

#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace bracelet::report {

// Line-oriented key-value report. The structured form is versioned and
// byte-stable for a fixed config and seed (no wall-clock fields); the human
// form is derived from the same rows.
class Report {
public:
    static constexpr const char* kSchema = "bracelet-report/1";

    void add(const std::string& key, const std::string& value) {
        rows_.emplace_back(key, value);
    }
    template <typename T>
    void add(const std::string& key, const T& value) {
        std::ostringstream os;
        os << value;
        rows_.emplace_back(key, os.str());
    }

    void print_structured(std::ostream& os) const {
        os << kSchema << '\n';
        for (const auto& [k, v] : rows_) os << k << ' ' << v << '\n';
    }

    void print_human(std::ostream& os) const {
        for (const auto& [k, v] : rows_) os << "  " << k << ": " << v << '\n';
    }

private:
    std::vector<std::pair<std::string, std::string>> rows_;
};

}  // namespace bracelet::report

#endif
