#include "calgeo/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace calgeo {

std::string format_g12(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

namespace {

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

void Report::add(const std::string& key, double v) {
    std::string s = format_g12(v);
    // inf/nan are not JSON numbers; quote them in records
    bool literal = std::isfinite(v);
    fields_.push_back({key, {s, literal}});
}

void Report::add(const std::string& key, int v) {
    fields_.push_back({key, {std::to_string(v), true}});
}

void Report::add(const std::string& key, long v) {
    fields_.push_back({key, {std::to_string(v), true}});
}

void Report::add(const std::string& key, unsigned long long v) {
    fields_.push_back({key, {std::to_string(v), true}});
}

void Report::add(const std::string& key, bool v) {
    fields_.push_back({key, {v ? "true" : "false", true}});
}

void Report::add(const std::string& key, const std::string& v) {
    fields_.push_back({key, {v, false}});
}

std::string Report::to_text() const {
    std::ostringstream out;
    for (const auto& [k, v] : fields_) out << k << " = " << v.first << '\n';
    return out.str();
}

std::string Report::to_record() const {
    std::ostringstream out;
    out << '{';
    bool first = true;
    for (const auto& [k, v] : fields_) {
        if (!first) out << ',';
        first = false;
        out << '"' << json_escape(k) << "\":";
        if (v.second)
            out << v.first;
        else
            out << '"' << json_escape(v.first) << '"';
    }
    out << '}';
    return out.str();
}

std::string emit_reports(const std::vector<Report>& reports, const std::string& format) {
    std::ostringstream out;
    if (format == "records") {
        for (const auto& r : reports) out << r.to_record() << '\n';
    } else if (format == "text") {
        for (size_t i = 0; i < reports.size(); ++i) {
            if (i) out << "--\n";
            out << reports[i].to_text();
        }
    } else {
        throw std::invalid_argument("emit_reports: unknown format '" + format + "'");
    }
    return out.str();
}

}  // namespace calgeo
