#include "hhgsq/dipole.hpp"

#include "hhgsq/errors.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace hhgsq {

namespace {

constexpr const char* kHeader = "t,re_mu_gg,im_mu_gg,re_mu_ge,im_mu_ge,re_mu_eg,im_mu_eg,re_mu_ee,im_mu_ee";

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& field, long line, int column) {
    const std::string f = trim(field);
    double v = 0.0;
    const char* first = f.data();
    const char* last = f.data() + f.size();
    if (!f.empty() && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (f.empty() || ec != std::errc() || ptr != last || !std::isfinite(v)) {
        throw ParseError("column " + std::to_string(column + 1) + ": cannot parse '" + f + "' as a number", line);
    }
    return v;
}

void append_number(std::string& out, double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    out.append(buf, ptr);
}

} // namespace

DipoleLoadResult parse_dipole_csv(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    long line = 0;
    bool header_seen = false;
    std::vector<double> t;
    std::vector<long> lines;
    DipoleSeries::Samples gg, ge, eg, ee;
    while (std::getline(in, raw)) {
        ++line;
        const std::string row = trim(raw);
        if (row.empty()) continue;
        if (!header_seen) {
            std::string compact;
            for (char c : row) {
                if (c != ' ' && c != '\t') compact.push_back(c);
            }
            if (compact != kHeader) throw ParseError(std::string("expected header '") + kHeader + "'", line);
            header_seen = true;
            continue;
        }
        double v[9];
        int col = 0;
        std::size_t start = 0;
        while (true) {
            const std::size_t comma = row.find(',', start);
            const std::string field = row.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
            if (col >= 9) throw ParseError("expected 9 columns, found more", line);
            v[col] = parse_number(field, line, col);
            ++col;
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (col != 9) throw ParseError("expected 9 columns, found " + std::to_string(col), line);
        t.push_back(v[0]);
        lines.push_back(line);
        gg.emplace_back(v[1], v[2]);
        ge.emplace_back(v[3], v[4]);
        eg.emplace_back(v[5], v[6]);
        ee.emplace_back(v[7], v[8]);
    }
    if (!header_seen) throw ParseError("empty dipole file", line == 0 ? 1 : line);
    const std::size_t n = t.size();
    if (n < 2) throw ParseError("dipole file needs at least two rows", line);

    const double dt = (t[n - 1] - t[0]) / static_cast<double>(n - 1);
    if (!(dt > 0.0)) throw ParseError("time column must increase", lines[1]);
    for (std::size_t k = 0; k < n; ++k) {
        const double expected = t[0] + dt * static_cast<double>(k);
        const double tol = 1e-9 * std::max({1.0, std::abs(t[0]), std::abs(t[n - 1])});
        if (std::abs(t[k] - expected) > std::max(tol, 1e-6 * dt)) {
            throw ParseError("non-uniform time grid: t = " + std::to_string(t[k]) + ", expected " +
                                 std::to_string(expected),
                             lines[k]);
        }
    }

    DipoleLoadResult result{DipoleSeries(t[0], dt, std::move(gg), std::move(ge), std::move(eg), std::move(ee)), {}};
    if (result.series.hermiticity_defect() > 1e-12) {
        std::ostringstream msg;
        msg << "mu_ge differs from conj(mu_eg) by up to " << result.series.hermiticity_defect()
            << "; the pair was symmetrized";
        result.warnings.push_back(msg.str());
    }
    return result;
}

DipoleLoadResult load_dipole_series(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ValidationError("cannot open dipole file '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_dipole_csv(ss.str());
}

std::string format_dipole_csv(const DipoleSeries& series) {
    std::string out = kHeader;
    out += '\n';
    for (std::size_t k = 0; k < series.size(); ++k) {
        append_number(out, series.time(k));
        for (const auto* s : {&series.gg(), &series.ge(), &series.eg(), &series.ee()}) {
            out += ',';
            append_number(out, (*s)[k].real());
            out += ',';
            append_number(out, (*s)[k].imag());
        }
        out += '\n';
    }
    return out;
}

void write_dipole_series(const std::string& path, const DipoleSeries& series) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ValidationError("cannot write dipole file '" + path + "'");
    f << format_dipole_csv(series);
}

} // namespace hhgsq
