#include "paircorr/io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace paircorr {

namespace {

[[noreturn]] void parse_fail(const std::string& source, std::size_t line_no,
                             const std::string& what) {
    throw std::invalid_argument(source + ": line " + std::to_string(line_no) + ": " + what);
}

std::string strip(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

bool skippable(const std::string& line) {
    const std::string t = strip(line);
    return t.empty() || t[0] == '#';
}

double parse_coord(const std::string& tok, const std::string& source, std::size_t line_no) {
    const std::string t = strip(tok);
    if (t.empty()) parse_fail(source, line_no, "empty coordinate field");
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size() || errno == ERANGE) {
        parse_fail(source, line_no, "cannot parse coordinate '" + t + "'");
    }
    if (!std::isfinite(v) || v < 0.0 || v >= 1.0) {
        parse_fail(source, line_no, "coordinate " + t + " outside [0,1)");
    }
    return v;
}

} // namespace

PointSet read_point_set(std::istream& in, const std::string& source_name) {
    std::string line;
    std::size_t line_no = 0;
    int dim = 0;
    std::vector<double> pt;
    PointSet out(1);
    bool first = true;

    while (std::getline(in, line)) {
        ++line_no;
        if (skippable(line)) continue;

        pt.clear();
        std::stringstream fields(strip(line));
        std::string tok;
        while (std::getline(fields, tok, ',')) {
            pt.push_back(parse_coord(tok, source_name, line_no));
        }
        if (first) {
            dim = static_cast<int>(pt.size());
            out = PointSet(dim);
            first = false;
        } else if (static_cast<int>(pt.size()) != dim) {
            parse_fail(source_name, line_no,
                       "expected " + std::to_string(dim) + " coordinates, got " +
                           std::to_string(pt.size()));
        }
        out.append(pt);
    }
    if (first) {
        throw std::invalid_argument(source_name + ": no data lines");
    }
    out.set_label("file:" + source_name);
    return out;
}

PointSet read_point_set_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open points file: " + path);
    return read_point_set(in, path);
}

void write_point_set(std::ostream& out, const PointSet& pts, const std::string& header) {
    if (!header.empty()) {
        std::stringstream lines(header);
        std::string h;
        while (std::getline(lines, h)) out << "# " << h << "\n";
    }
    const int d = pts.dim();
    for (std::int64_t i = 0; i < pts.size(); ++i) {
        const auto p = pts.point(i);
        for (int k = 0; k < d; ++k) {
            if (k) out << ",";
            out << format_double(p[static_cast<std::size_t>(k)]);
        }
        out << "\n";
    }
}

void write_point_set_file(const std::string& path, const PointSet& pts,
                          const std::string& header) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    write_point_set(out, pts, header);
}

IntegerSequence read_integer_sequence(std::istream& in, const std::string& source_name) {
    std::string line;
    std::size_t line_no = 0;
    IntegerSequence seq;
    seq.label = "file:" + source_name;

    while (std::getline(in, line)) {
        ++line_no;
        if (skippable(line)) continue;
        const std::string t = strip(line);
        errno = 0;
        char* end = nullptr;
        const long long v = std::strtoll(t.c_str(), &end, 10);
        if (end != t.c_str() + t.size() || errno == ERANGE) {
            parse_fail(source_name, line_no, "cannot parse integer '" + t + "'");
        }
        if (v < 0) parse_fail(source_name, line_no, "negative term " + t);
        if (!seq.terms.empty() && v <= seq.terms.back()) {
            parse_fail(source_name, line_no,
                       "term " + t + " does not increase past " +
                           std::to_string(seq.terms.back()));
        }
        seq.terms.push_back(v);
    }
    if (seq.terms.empty()) {
        throw std::invalid_argument(source_name + ": no data lines");
    }
    return seq;
}

IntegerSequence read_integer_sequence_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open sequence file: " + path);
    return read_integer_sequence(in, path);
}

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace paircorr
