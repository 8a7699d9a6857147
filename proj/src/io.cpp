#include "resum/io.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "resum/errors.hpp"

namespace resum {

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return char(std::tolower(c)); });
    return s;
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

// split on commas at paren depth zero
std::vector<std::string> split_args(const std::string& s) {
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ',' && depth == 0) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!trim(cur).empty() || !out.empty()) out.push_back(trim(cur));
    return out;
}

struct call_expr {
    std::string name;
    std::vector<std::string> args;
};

call_expr parse_call(const std::string& expr) {
    std::string e = trim(expr);
    std::size_t open = e.find('(');
    if (open == std::string::npos) return {lower(e), {}};
    if (e.back() != ')')
        throw parse_error("unbalanced parentheses in '" + e + "'");
    call_expr c;
    c.name = lower(trim(e.substr(0, open)));
    std::string inner = e.substr(open + 1, e.size() - open - 2);
    if (!trim(inner).empty()) c.args = split_args(inner);
    return c;
}

double parse_number(const std::string& s) {
    // strtod rather than stod: values that underflow to a subnormal are
    // legitimate (the writer emits them), only overflow and non-numbers fail
    std::string t = trim(s);
    const char* begin = t.c_str();
    char* end = nullptr;
    errno = 0;
    double v = std::strtod(begin, &end);
    if (end == begin) throw parse_error("expected a number, got '" + s + "'");
    if (errno == ERANGE && std::abs(v) == HUGE_VAL)
        throw parse_error("number out of range: '" + s + "'");
    if (std::size_t(end - begin) != t.size())
        throw parse_error("trailing characters in number '" + s + "'");
    return v;
}

long parse_long(const std::string& s) {
    double v = parse_number(s);
    long l = long(v);
    if (double(l) != v) throw parse_error("expected an integer, got '" + s + "'");
    return l;
}

void need_args(const call_expr& c, std::size_t n) {
    if (c.args.size() != n)
        throw parse_error("'" + c.name + "' takes " + std::to_string(n) + " argument" +
                          (n == 1 ? "" : "s") + ", got " + std::to_string(c.args.size()));
}

} // namespace

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt17(cplx v) { return fmt17(v.real()) + ", " + fmt17(v.imag()); }

sequence_family parse_family(const std::string& expr) {
    call_expr c = parse_call(expr);
    if (c.name == "gevrey") {
        need_args(c, 1);
        return sequence_family::gevrey(parse_number(c.args[0]));
    }
    if (c.name == "gevreylog" || c.name == "gevrey_log") {
        need_args(c, 2);
        return sequence_family::gevrey_log(parse_number(c.args[0]), parse_number(c.args[1]));
    }
    if (c.name == "qpower") {
        need_args(c, 1);
        return sequence_family::qpower(parse_number(c.args[0]));
    }
    if (c.name == "product") {
        need_args(c, 2);
        return sequence_family::product(parse_family(c.args[0]), parse_family(c.args[1]));
    }
    if (c.name == "power") {
        need_args(c, 2);
        return sequence_family::power(parse_family(c.args[0]), parse_number(c.args[1]));
    }
    if (c.name == "explicit") {
        if (c.args.empty()) throw parse_error("'explicit' needs at least one value");
        std::vector<double> v;
        for (const std::string& a : c.args) v.push_back(parse_number(a));
        return sequence_family::explicit_values(std::move(v));
    }
    throw parse_error("unknown sequence family '" + c.name + "'");
}

kernel parse_kernel(const std::string& expr) {
    call_expr c = parse_call(expr);
    if (c.name == "gevrey") {
        need_args(c, 1);
        return kernel::gevrey(parse_number(c.args[0]));
    }
    if (c.name == "classical") {
        need_args(c, 1);
        return kernel::classical(parse_number(c.args[0]));
    }
    if (c.name == "gamma_power" || c.name == "gammapower") {
        need_args(c, 1);
        return kernel::gamma_power(parse_number(c.args[0]));
    }
    if (c.name == "rescale" || c.name == "rescaled") {
        need_args(c, 2);
        return kernel::rescaled(parse_kernel(c.args[0]), parse_number(c.args[1]));
    }
    throw parse_error("unknown kernel '" + c.name + "'");
}

bool spec_file::has(const std::string& key) const {
    for (const auto& [k, v] : entries)
        if (k == key) return true;
    return false;
}

const std::string& spec_file::get(const std::string& key) const {
    const std::string* found = nullptr;
    for (const auto& [k, v] : entries)
        if (k == key) {
            if (found) throw parse_error("key '" + key + "' given more than once");
            found = &v;
        }
    if (!found) throw parse_error("missing key '" + key + "'");
    return *found;
}

std::string spec_file::get_or(const std::string& key, const std::string& fallback) const {
    return has(key) ? get(key) : fallback;
}

std::vector<std::string> spec_file::all(const std::string& key) const {
    std::vector<std::string> out;
    for (const auto& [k, v] : entries)
        if (k == key) out.push_back(v);
    return out;
}

spec_file read_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open spec file '" + path + "'");
    spec_file out;
    out.dir = std::filesystem::path(path).parent_path().string();
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw parse_error(path + ":" + std::to_string(lineno) + ": expected 'key = value'");
        std::string key = lower(trim(line.substr(0, eq)));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw parse_error(path + ":" + std::to_string(lineno) + ": empty key or value");
        out.entries.emplace_back(std::move(key), std::move(value));
    }
    return out;
}

formal_series read_series_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open series file '" + path + "'");
    std::vector<cplx> coeff;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        std::vector<std::string> cells = split_args(line);
        if (!cells.empty() && !cells[0].empty() && !std::isdigit((unsigned char)cells[0][0]) &&
            cells[0][0] != '-' && cells[0][0] != '+' && cells[0][0] != '.')
            continue; // header line
        if (cells.size() < 2 || cells.size() > 3)
            throw parse_error(path + ":" + std::to_string(lineno) +
                              ": expected 'p, re[, im]' columns");
        long p = parse_long(cells[0]);
        if (p != long(coeff.size()))
            throw parse_error(path + ":" + std::to_string(lineno) + ": index " +
                              std::to_string(p) + " out of order (expected " +
                              std::to_string(coeff.size()) + ")");
        double re = parse_number(cells[1]);
        double im = cells.size() == 3 ? parse_number(cells[2]) : 0.0;
        coeff.emplace_back(re, im);
    }
    if (coeff.empty()) throw parse_error(path + ": no coefficients found");
    return formal_series(std::move(coeff));
}

void write_series_csv(const std::string& path, const formal_series& s) {
    std::ofstream out(path);
    if (!out) throw parse_error("cannot write '" + path + "'");
    out << "p, re_a, im_a\n";
    for (std::size_t p = 0; p < s.size(); ++p)
        out << p << ", " << fmt17(s.at(p)) << "\n";
}

void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::vector<double>>& rows) {
    std::ofstream out(path);
    if (!out) throw parse_error("cannot write '" + path + "'");
    out << header << "\n";
    for (const std::vector<double>& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << (i ? ", " : "") << fmt17(row[i]);
        out << "\n";
    }
}

namespace {

formal_series parse_data_entry(const std::string& value, const std::string& dir) {
    std::string v = trim(value);
    std::string lv = lower(v);
    if (lv.rfind("coeffs:", 0) == 0) {
        std::vector<std::string> cells = split_args(v.substr(7));
        std::vector<cplx> c;
        for (const std::string& s : cells) c.emplace_back(parse_number(s), 0.0);
        if (c.empty()) throw parse_error("'coeffs:' needs at least one value");
        return formal_series(std::move(c));
    }
    if (lv.rfind("geometric:", 0) == 0) {
        long n = parse_long(v.substr(10));
        if (n < 1) throw parse_error("'geometric:' needs a positive length");
        return formal_series(std::vector<cplx>(std::size_t(n), cplx(1.0)));
    }
    std::filesystem::path p(v);
    if (p.is_relative() && !dir.empty()) p = std::filesystem::path(dir) / p;
    return read_series_csv(p.string());
}

mpde_factor parse_factor(const std::string& value) {
    std::string v = trim(value);
    std::size_t caret = v.find('^');
    long mult = 1;
    if (caret != std::string::npos) {
        mult = parse_long(v.substr(caret + 1));
        if (mult < 1) throw parse_error("factor multiplicity must be >= 1");
        v = trim(v.substr(0, caret));
    }
    std::vector<cplx> coeff;
    for (const std::string& s : split_args(v)) coeff.emplace_back(parse_number(s), 0.0);
    if (coeff.empty()) throw parse_error("factor needs coefficients");
    mpde_factor f;
    f.lambda = symbol::polynomial(std::move(coeff));
    f.multiplicity = std::size_t(mult);
    return f;
}

} // namespace

mpde_spec read_problem_spec(const std::string& path) {
    spec_file sf = read_spec_file(path);
    mpde_spec spec;

    std::vector<std::string> factors = sf.all("factor");
    if (factors.empty()) throw parse_error(path + ": needs at least one 'factor'");
    for (const std::string& f : factors) spec.problem.factors.push_back(parse_factor(f));

    spec.problem.m1 = parse_kernel(sf.get("m1"));
    spec.problem.m2 = parse_kernel(sf.get("m2"));

    for (const std::string& d : sf.all("data"))
        spec.problem.data.push_back(parse_data_entry(d, sf.dir));
    if (spec.problem.data.empty()) throw parse_error(path + ": needs 'data'");

    if (sf.has("truncation")) {
        std::vector<std::string> t = split_args(sf.get("truncation"));
        if (t.size() != 2) throw parse_error("'truncation' needs 'J, N'");
        long j = parse_long(t[0]), n = parse_long(t[1]);
        if (j < 8 || n < 1) throw parse_error("'truncation' needs J >= 8, N >= 1");
        spec.j_max = std::size_t(j);
        spec.n_z = std::size_t(n);
    }
    spec.problem.r0 = parse_number(sf.get_or("r0", "0.1"));
    if (!(spec.problem.r0 > 0.0)) throw parse_error("'r0' must be positive");
    spec.direction = parse_number(sf.get_or("direction", "0"));
    if (sf.has("candidate")) spec.candidate = parse_kernel(sf.get("candidate"));
    if (sf.has("q")) {
        std::string q = sf.get("q");
        std::size_t slash = q.find('/');
        long num = parse_long(slash == std::string::npos ? q : q.substr(0, slash));
        long den = slash == std::string::npos ? 1 : parse_long(q.substr(slash + 1));
        spec.problem.q_override = rational_q::reduced(num, den);
    }
    return spec;
}

} // namespace resum
