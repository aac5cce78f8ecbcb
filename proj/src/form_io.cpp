#include "calgeo/form_io.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace calgeo {

namespace {

struct Term {
    std::vector<int> indices;
    double coeff;
};

Term parse_line(const std::string& line, int lineno) {
    Term t;
    size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
    };
    auto col = [&] { return static_cast<int>(pos) + 1; };

    while (true) {
        skip_ws();
        size_t start = pos;
        while (pos < line.size() && std::isdigit(static_cast<unsigned char>(line[pos]))) ++pos;
        if (pos == start) throw FormParseError("expected index", lineno, col());
        t.indices.push_back(std::stoi(line.substr(start, pos - start)));
        skip_ws();
        if (pos < line.size() && line[pos] == ',') {
            ++pos;
            continue;
        }
        break;
    }
    skip_ws();
    if (pos >= line.size() || line[pos] != ':')
        throw FormParseError("expected ':'", lineno, col());
    ++pos;
    skip_ws();
    try {
        size_t used = 0;
        t.coeff = std::stod(line.substr(pos), &used);
        size_t rest = pos + used;
        while (rest < line.size() && std::isspace(static_cast<unsigned char>(line[rest]))) ++rest;
        if (rest != line.size()) throw FormParseError("trailing characters", lineno,
                                                      static_cast<int>(rest) + 1);
    } catch (const FormParseError&) {
        throw;
    } catch (const std::exception&) {
        throw FormParseError("expected coefficient", lineno, col());
    }
    return t;
}

}  // namespace

AlternatingForm parse_form_text(const std::string& text, int min_ambient_dim) {
    std::istringstream in(text);
    std::string line;
    std::vector<Term> terms;
    int degree = -1;
    int max_index = 0;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        Term t = parse_line(line, lineno);
        auto sorted = MultiIndex::sorted(t.indices);
        if (!sorted) throw FormParseError("repeated index within a term", lineno, 1);
        t.indices = sorted->first.indices();
        t.coeff *= sorted->second;
        for (int i : t.indices) {
            if (i < 1) throw FormParseError("indices are 1-based", lineno, 1);
            max_index = std::max(max_index, i);
        }
        if (degree < 0)
            degree = static_cast<int>(t.indices.size());
        else if (degree != static_cast<int>(t.indices.size()))
            throw FormParseError("mixed term degrees", lineno, 1);
        terms.push_back(std::move(t));
    }
    if (degree < 0) throw FormParseError("no terms", std::max(lineno, 1), 1);
    AlternatingForm phi(std::max(max_index, min_ambient_dim), degree);
    for (const auto& t : terms) phi.add(MultiIndex(t.indices), t.coeff);
    phi.prune();
    return phi;
}

AlternatingForm parse_form_file(const std::string& path, int min_ambient_dim) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open form file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_form_text(buf.str(), min_ambient_dim);
}

std::string serialize_form(const AlternatingForm& phi) {
    std::ostringstream out;
    for (const auto& [I, c] : phi.coeffs()) {
        const auto& idx = I.indices();
        for (size_t i = 0; i < idx.size(); ++i) {
            if (i) out << ',';
            out << idx[i];
        }
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", c);
        out << " : " << buf << '\n';
    }
    return out.str();
}

void write_form_file(const std::string& path, const AlternatingForm& phi) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write form file: " + path);
    out << serialize_form(phi);
}

}  // namespace calgeo
