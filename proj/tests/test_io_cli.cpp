// Text formats and the command-line front end: expression parsing, spec
// files, CSV round trips, and end-to-end subprocess runs of the tool.
#include <sys/wait.h>

#include <cmath>
#include <complex>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "resum/errors.hpp"
#include "resum/io.hpp"
#include "resum/kernels.hpp"
#include "resum/mpde.hpp"
#include "resum/sequences.hpp"
#include "resum/series.hpp"

using namespace resum;
namespace fs = std::filesystem;

namespace {

// scratch directory, removed when the test case ends
struct temp_dir {
    fs::path path;
    temp_dir() {
        std::string tmpl = (fs::temp_directory_path() / "resum-test-XXXXXX").string();
        std::vector<char> buf(tmpl.begin(), tmpl.end());
        buf.push_back('\0');
        REQUIRE(mkdtemp(buf.data()) != nullptr);
        path = buf.data();
    }
    ~temp_dir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

void write_text(const fs::path& p, const std::string& text) {
    std::ofstream out(p);
    REQUIRE(out.good());
    out << text;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> lines_of(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    std::vector<std::string> out;
    std::string line;
    while (std::getline(in, line)) out.push_back(line);
    return out;
}

std::vector<double> split_numbers(const std::string& line) {
    std::vector<double> out;
    std::istringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(std::strtod(cell.c_str(), nullptr));
    return out;
}

} // namespace

TEST_SUITE("io") {

TEST_CASE("shortest round-trip formatting survives strtod") {
    const double samples[] = {0.0,
                              -0.0,
                              0.1,
                              1.0 / 3.0,
                              -2.0 / 7.0,
                              1e-300,
                              6.02214076e23,
                              3.141592653589793,
                              std::nextafter(1.0, 2.0),
                              -1.7976931348623157e308};
    for (double v : samples) {
        CAPTURE(v);
        std::string s = fmt17(v);
        double back = std::strtod(s.c_str(), nullptr);
        CHECK(std::memcmp(&back, &v, sizeof v) == 0); // bit pattern, catches -0.0
    }
    CHECK(fmt17(cplx(1.5, -2.25)) == "1.5, -2.25");
}

TEST_CASE("family expressions parse case-insensitively, including nesting") {
    sequence_table direct(
        sequence_family::product(sequence_family::gevrey(1.0),
                                 sequence_family::power(sequence_family::gevrey(1.0), 0.5)),
        12);
    sequence_table parsed(parse_family("Product( GEVREY(1), power(gevrey(1), 0.5) )"), 12);
    for (std::size_t p = 0; p <= 12; ++p) CHECK(parsed.log_M(p) == direct.log_M(p));

    sequence_table listed(parse_family("explicit(1, 1, 2, 6, 24)"), 4);
    CHECK(listed.log_M(3) == doctest::Approx(std::log(6.0)).epsilon(1e-15));

    CHECK_THROWS_AS((void)parse_family("frobnicate(2)"), parse_error);
    CHECK_THROWS_AS((void)parse_family("gevrey(1"), parse_error);
    CHECK_THROWS_AS((void)parse_family("gevrey(one)"), parse_error);
    CHECK_THROWS_AS((void)parse_family("gevrey(1, 2)"), parse_error);
}

TEST_CASE("kernel expressions cover aliases and rescaling") {
    CHECK(parse_kernel("gammapower(1.5)").describe() == kernel::gamma_power(1.5).describe());
    kernel lifted = parse_kernel("rescale(gevrey(1), 2)");
    CHECK(lifted.omega() == 2.0);
    CHECK(parse_kernel("CLASSICAL(2)").omega() == kernel::classical(2.0).omega());
    CHECK_THROWS_AS((void)parse_kernel("heatkernel(1)"), parse_error);
    CHECK_THROWS_AS((void)parse_kernel("rescale(gevrey(1))"), parse_error);
}

TEST_CASE("spec files: comments, repeats, and missing keys") {
    temp_dir dir;
    fs::path file = dir.path / "sample.spec";
    write_text(file,
               "# leading comment\n"
               "family = gevrey(1)   # trailing comment\n"
               "\n"
               "depth = 80\n"
               "tag = one\n"
               "tag = two\n");
    spec_file sf = read_spec_file(file.string());
    CHECK(sf.has("family"));
    CHECK_FALSE(sf.has("kernel"));
    CHECK(sf.get("family") == "gevrey(1)");
    CHECK(sf.get("depth") == "80");
    CHECK(sf.get_or("depth", "120") == "80");
    CHECK(sf.get_or("missing", "fallback") == "fallback");
    std::vector<std::string> tags = sf.all("tag");
    REQUIRE(tags.size() == 2);
    CHECK(tags[0] == "one");
    CHECK(tags[1] == "two");
    CHECK_THROWS_AS((void)sf.get("tag"), parse_error);     // repeated
    CHECK_THROWS_AS((void)sf.get("missing"), parse_error); // absent

    fs::path bad = dir.path / "bad.spec";
    write_text(bad, "just words without an equals sign\n");
    CHECK_THROWS_AS((void)read_spec_file(bad.string()), parse_error);
    CHECK_THROWS_AS((void)read_spec_file((dir.path / "nope.spec").string()), parse_error);
}

TEST_CASE("series CSVs round-trip bitwise") {
    temp_dir dir;
    std::vector<cplx> coeff = {cplx(1.0, 0.0), cplx(0.1, -1.0 / 3.0), cplx(-2.0 / 7.0, 1e-17),
                               cplx(3.141592653589793e10, -0.0), cplx(6.02214076e23, 5e-310)};
    formal_series s(coeff);
    fs::path file = dir.path / "series.csv";
    write_series_csv(file.string(), s);
    formal_series back = read_series_csv(file.string());
    REQUIRE(back.size() == s.size());
    for (std::size_t p = 0; p < s.size(); ++p) {
        CAPTURE(p);
        CHECK(back.at(p).real() == s.at(p).real());
        CHECK(back.at(p).imag() == s.at(p).imag());
    }

    // header is optional and the imaginary column defaults to zero
    fs::path bare = dir.path / "bare.csv";
    write_text(bare, "0, 2.5\n1, -0.5\n");
    formal_series two = read_series_csv(bare.string());
    REQUIRE(two.size() == 2);
    CHECK(two.at(1) == cplx(-0.5, 0.0));

    fs::path gap = dir.path / "gap.csv";
    write_text(gap, "p, re\n0, 1\n2, 1\n"); // index 1 missing
    CHECK_THROWS_AS((void)read_series_csv(gap.string()), parse_error);

    fs::path empty = dir.path / "empty.csv";
    write_text(empty, "# nothing but comments\n");
    CHECK_THROWS_AS((void)read_series_csv(empty.string()), parse_error);
}

TEST_CASE("problem specs assemble factors, kernels, and data") {
    temp_dir dir;
    fs::path file = dir.path / "heat.spec";
    write_text(file,
               "# second-order constant-coefficient problem\n"
               "factor = 0, 0, 1 ^ 1\n"
               "m1 = gevrey(1)\n"
               "m2 = classical(1)\n"
               "data = geometric: 73\n"
               "data = coeffs: 1, 2, 3\n"
               "truncation = 16, 40\n"
               "r0 = 0.15\n"
               "direction = 0.5\n"
               "candidate = gevrey(1)\n"
               "q = 4/2\n");
    mpde_spec spec = read_problem_spec(file.string());
    REQUIRE(spec.problem.factors.size() == 1);
    CHECK(spec.problem.factors[0].lambda.degree() == 2);
    CHECK(spec.problem.factors[0].multiplicity == 1);
    REQUIRE(spec.problem.data.size() == 2);
    CHECK(spec.problem.data[0].size() == 73);
    CHECK(spec.problem.data[0].at(5) == cplx(1.0, 0.0));
    CHECK(spec.problem.data[1].at(2) == cplx(3.0, 0.0));
    CHECK(spec.j_max == 16);
    CHECK(spec.n_z == 40);
    CHECK(spec.problem.r0 == 0.15);
    CHECK(spec.direction == 0.5);
    REQUIRE(spec.candidate.has_value());
    CHECK(spec.candidate->omega() == 1.0);
    REQUIRE(spec.problem.q_override.has_value());
    CHECK(spec.problem.q_override->num == 2); // 4/2 reduced
    CHECK(spec.problem.q_override->den == 1);

    // a data series can live in a sibling CSV, resolved relative to the spec
    formal_series stored(std::vector<cplx>{cplx(1.0), cplx(0.5), cplx(0.25)});
    write_series_csv((dir.path / "data.csv").string(), stored);
    fs::path file2 = dir.path / "file_data.spec";
    write_text(file2,
               "factor = 0, 1\n"
               "m1 = gevrey(1)\n"
               "m2 = gevrey(1)\n"
               "data = data.csv\n");
    mpde_spec spec2 = read_problem_spec(file2.string());
    REQUIRE(spec2.problem.data.size() == 1);
    CHECK(spec2.problem.data[0].at(2) == cplx(0.25, 0.0));
    CHECK(spec2.j_max == 24); // defaults kept when 'truncation' is absent

    fs::path nofactor = dir.path / "nofactor.spec";
    write_text(nofactor, "m1 = gevrey(1)\nm2 = gevrey(1)\ndata = geometric: 8\n");
    CHECK_THROWS_AS((void)read_problem_spec(nofactor.string()), parse_error);

    fs::path shallow = dir.path / "shallow.spec";
    write_text(shallow,
               "factor = 0, 1\nm1 = gevrey(1)\nm2 = gevrey(1)\n"
               "data = geometric: 8\ntruncation = 5, 40\n");
    CHECK_THROWS_AS((void)read_problem_spec(shallow.string()), parse_error); // J < 8
}

} // TEST_SUITE("io")

namespace {

int run_cli(const std::string& args, const fs::path& log) {
    std::string cmd = std::string(RESUM_CLI_PATH) + " " + args + " > " + log.string() + " 2>&1";
    int rc = std::system(cmd.c_str());
    REQUIRE(rc != -1);
    REQUIRE(WIFEXITED(rc));
    return WEXITSTATUS(rc);
}

std::string euler_csv(const fs::path& dir, bool factorial_normalized) {
    std::vector<cplx> c;
    double f = 1.0, pf = 1.0; // n! and p! for the stored scaling
    for (int n = 0; n < 24; ++n) {
        if (n > 0) f *= double(n);
        pf = factorial_normalized ? f : 1.0;
        c.emplace_back((n % 2 ? -f : f) * pf, 0.0);
    }
    fs::path file = dir / (factorial_normalized ? "euler_scaled.csv" : "euler.csv");
    write_series_csv(file.string(), formal_series(c));
    return file.string();
}

const char* heat_spec_body =
    "factor = 0, 0, 1 ^ 1\n"
    "m1 = gevrey(1)\n"
    "m2 = gevrey(1)\n"
    "data = geometric: 73\n"
    "truncation = 16, 40\n"
    "r0 = 0.1\n"
    "candidate = gevrey(1)\n";

} // namespace

TEST_SUITE("cli") {

TEST_CASE("sequence diagnostics run end to end") {
    temp_dir dir;
    int rc = run_cli("seq --family 'gevrey(1)' --depth 120 --out " + dir.path.string(),
                     dir.path / "log.txt");
    CHECK(rc == 0);
    std::string log = slurp(dir.path / "log.txt");
    CHECK(log.find("holds") != std::string::npos);
    CHECK(log.find("FAILS") == std::string::npos);

    std::vector<std::string> table = lines_of(dir.path / "seq_table.csv");
    REQUIRE(table.size() == 122); // header + p = 0..120
    CHECK(table[0] == "p, logM_p, m_p");
    std::vector<double> first = split_numbers(table[1]);
    REQUIRE(first.size() == 3);
    CHECK(first[0] == 0.0);
    CHECK(first[1] == 0.0); // log 0! = 0
    CHECK(first[2] == 1.0); // first quotient of the factorials

    CHECK(lines_of(dir.path / "seq_samples.csv").size() > 10);
    CHECK(lines_of(dir.path / "seq_diagnostics.csv").size() > 10);
}

TEST_CASE("unknown families exit with a parse failure") {
    temp_dir dir;
    CHECK(run_cli("seq --family 'frob(1)' --out " + dir.path.string(), dir.path / "log.txt") == 1);
    std::string log = slurp(dir.path / "log.txt");
    CHECK(log.find("error:") != std::string::npos);
}

TEST_CASE("kernel validation distinguishes matched and mismatched tables") {
    temp_dir dir;
    int rc = run_cli("kernel --kernel 'gevrey(1)' --table 'gevrey(1)' --out " + dir.path.string(),
                     dir.path / "ok.txt");
    CHECK(rc == 0);
    std::vector<std::string> moments = lines_of(dir.path / "kernel_moments.csv");
    REQUIRE(moments.size() > 30);
    CHECK(moments[0] == "p, m_p, quad_error");
    std::vector<double> p1 = split_numbers(moments[2]);
    REQUIRE(p1.size() == 3);
    CHECK(p1[1] == doctest::Approx(1.0).epsilon(1e-12)); // first moment of e^{-t}

    rc = run_cli("kernel --kernel 'gevrey(1)' --table 'gevrey(2)' --out " + dir.path.string(),
                 dir.path / "bad.txt");
    CHECK(rc == 2);
    CHECK(slurp(dir.path / "bad.txt").find("MISMATCH") != std::string::npos);
}

TEST_CASE("resummation certifies the alternating factorial series") {
    temp_dir dir;
    fs::path out_a = dir.path / "a";
    fs::path out_b = dir.path / "b";
    fs::path out_c = dir.path / "c";
    fs::create_directories(out_a);
    fs::create_directories(out_b);
    fs::create_directories(out_c);
    std::string series = euler_csv(dir.path, false);

    std::string base = "sum --series " + series + " --kernel 'gevrey(1)' --points '0.1,0' --out ";
    CHECK(run_cli(base + out_a.string(), dir.path / "a.txt") == 0);
    CHECK(slurp(dir.path / "a.txt").find("CERTIFIED") != std::string::npos);

    std::vector<std::string> rows = lines_of(out_a / "sum_points.csv");
    REQUIRE(rows.size() == 2);
    CHECK(rows[0] == "z_re, z_im, sum_re, sum_im, err_est");
    std::vector<double> pt = split_numbers(rows[1]);
    REQUIRE(pt.size() == 5);
    CHECK(pt[0] == 0.1);
    CHECK(pt[2] == doctest::Approx(0.91563333939788081876).epsilon(1e-6));
    CHECK(std::abs(pt[3]) < 1e-7);
    CHECK(pt[4] < 1e-5);

    // identical invocation must produce byte-identical output
    CHECK(run_cli(base + out_b.string(), dir.path / "b.txt") == 0);
    CHECK(slurp(out_a / "sum_points.csv") == slurp(out_b / "sum_points.csv"));

    // the same series stored as p!-scaled coefficients, undone by the flag
    std::string scaled = euler_csv(dir.path, true);
    CHECK(run_cli("sum --series " + scaled +
                      " --kernel 'gevrey(1)' --points '0.1,0' --normalization factorial --out " +
                      out_c.string(),
                  dir.path / "c.txt") == 0);
    std::vector<double> pt2 = split_numbers(lines_of(out_c / "sum_points.csv")[1]);
    REQUIRE(pt2.size() == 5);
    CHECK(pt2[2] == doctest::Approx(pt[2]).epsilon(1e-8));
}

TEST_CASE("moment-problem classification respects the chosen direction") {
    temp_dir dir;
    fs::path flat = dir.path / "flat.spec";
    fs::path up = dir.path / "up.spec";
    write_text(flat, std::string(heat_spec_body) + "direction = 0\n");
    write_text(up, std::string(heat_spec_body) + "direction = 1.5707963267948966\n");

    int rc_flat = run_cli("mpde --spec " + flat.string() + " --out " + dir.path.string(),
                          dir.path / "flat.txt");
    CHECK(rc_flat == 2); // the ray straight at the singularity cannot be certified
    std::string flat_log = slurp(dir.path / "flat.txt");
    CHECK(flat_log.find("divergent") != std::string::npos);

    fs::path updir = dir.path / "up";
    fs::create_directories(updir);
    int rc_up =
        run_cli("mpde --spec " + up.string() + " --out " + updir.string(), dir.path / "up.txt");
    CHECK(rc_up == 0);
    std::string up_log = slurp(dir.path / "up.txt");
    CHECK(up_log.find("A0 =") != std::string::npos);

    std::vector<std::string> evidence = lines_of(updir / "mpde_evidence.csv");
    REQUIRE(evidence.size() >= 17); // header + j = 1..16
    CHECK(evidence[0] == "j, ratio_root, ineq27_slack, ineq28_slack");
    std::vector<double> row = split_numbers(evidence[1]);
    REQUIRE(row.size() == 4);
    CHECK(row[0] == 1.0);
    CHECK(row[1] > 0.0);
}

TEST_CASE("the self-check suite passes and catches sabotage") {
    temp_dir dir;
    CHECK(run_cli("verify", dir.path / "ok.txt") == 0);
    std::string ok_log = slurp(dir.path / "ok.txt");
    CHECK(ok_log.find("0 failure(s)") != std::string::npos);

    CHECK(run_cli("verify --inject-moment-error", dir.path / "bad.txt") == 2);
    std::string bad_log = slurp(dir.path / "bad.txt");
    CHECK(bad_log.find("must fail") != std::string::npos);
    CHECK(bad_log.find("FAIL") != std::string::npos);
}

} // TEST_SUITE("cli")
