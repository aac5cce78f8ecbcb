#pragma once

#include <string>
#include <utility>
#include <vector>

namespace calgeo {

// Numeric fields print with 12 significant digits so identical runs emit
// byte-identical output.
std::string format_g12(double v);

// Ordered key-value report with two renderings: line-oriented `key = value`
// text and one flat JSON object per report (records).
class Report {
public:
    void add(const std::string& key, double v);
    void add(const std::string& key, int v);
    void add(const std::string& key, long v);
    void add(const std::string& key, unsigned long long v);
    void add(const std::string& key, bool v);
    void add(const std::string& key, const std::string& v);
    void add(const std::string& key, const char* v) { add(key, std::string(v)); }

    std::string to_text() const;
    std::string to_record() const;

private:
    // value stored with a flag: true when it is already a JSON literal
    std::vector<std::pair<std::string, std::pair<std::string, bool>>> fields_;
};

std::string emit_reports(const std::vector<Report>& reports, const std::string& format);

}  // namespace calgeo
