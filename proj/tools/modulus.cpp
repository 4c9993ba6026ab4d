#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "modulus/audit.hpp"
#include "modulus/eisenstein.hpp"
#include "modulus/errors.hpp"
#include "modulus/grid.hpp"
#include "modulus/modular_group.hpp"
#include "modulus/modular_j.hpp"
#include "modulus/q_transform.hpp"
#include "modulus/structures.hpp"
#include "modulus/w_system.hpp"

namespace {

using namespace modulus;
using nlohmann::json;

enum Exit { kOk = 0, kAuditFailed = 1, kUsage = 2, kIo = 3 };

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Settings {
    std::size_t order = 64;
    int lattice_cutoff = 200;
    unsigned index_cap = structures::kDefaultIndexCap;
    std::uint64_t seed = 42;
    std::optional<std::size_t> samples;
    int precision = 9;
    std::map<std::string, double> tolerances;
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw IoError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Settings load_settings()
{
    Settings s;
    const char* path = std::getenv("MODULUS_CONFIG");
    if (path == nullptr || *path == '\0') return s;
    json doc;
    try {
        doc = json::parse(read_file(path));
        if (!doc.is_object()) throw UsageError("config must be a JSON object");
        if (doc.contains("order")) s.order = doc.at("order").get<std::size_t>();
        if (doc.contains("lattice_cutoff")) s.lattice_cutoff = doc.at("lattice_cutoff").get<int>();
        if (doc.contains("index_cap")) s.index_cap = doc.at("index_cap").get<unsigned>();
        if (doc.contains("seed")) s.seed = doc.at("seed").get<std::uint64_t>();
        if (doc.contains("samples")) s.samples = doc.at("samples").get<std::size_t>();
        if (doc.contains("precision")) s.precision = doc.at("precision").get<int>();
        if (doc.contains("tolerances")) s.tolerances = doc.at("tolerances").get<std::map<std::string, double>>();
    } catch (const json::exception& e) {
        throw UsageError(std::string("config '") + path + "': " + e.what());
    }
    return s;
}

std::string fixed(double v, int precision)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, "%.*f", precision, v);
    std::string out(buf);
    if (out.front() == '-' && out.find_first_not_of("-0.") == std::string::npos) out.erase(0, 1);
    return out;
}

std::string format_complex(Complex z, int precision)
{
    const std::string re = fixed(z.real(), precision);
    const std::string im = fixed(z.imag(), precision);
    return re + (im.front() == '-' ? "" : "+") + im + "i";
}

std::string format_real(double v, int precision)
{
    if (v == 0.0) return "0";
    return fixed(v, precision);
}

struct EvalArgs {
    std::string target;
    double x = 0.0;
    std::optional<double> y;
    int deriv = 0;
    std::optional<int> precision;
};

int cmd_eval(const EvalArgs& a, const Settings& s)
{
    const int precision = a.precision.value_or(s.precision);
    if (precision < 0 || precision > 17) throw UsageError("precision must lie in [0, 17]");
    const auto bank = eisenstein::SeriesBank::at_order(s.order);

    if (a.target.find('.') != std::string::npos) {
        const auto ref = structures::parse_symbol_ref(a.target);
        const auto sym = structures::describe(ref, s.index_cap);
        std::vector<double> args{a.x};
        if (sym.arity == 2) {
            if (!a.y) throw UsageError(sym.label() + " takes two arguments");
            args.push_back(*a.y);
        } else if (a.y) {
            throw UsageError(sym.label() + " takes one argument");
        }
        if (a.deriv != 0) throw UsageError("--deriv applies to J and Jtilde only");
        std::cout << format_real(structures::evaluate_symbol(ref.structure, ref.name, ref.indices, args, s.index_cap),
                                 precision)
                  << '\n';
        return kOk;
    }

    if (!a.y) throw UsageError(a.target + " takes a point x y");
    const Complex z{a.x, *a.y};
    Complex value;
    if (a.target == "J") {
        value = modular_j::j_derivative(HalfPlanePoint{z}, a.deriv, *bank);
    } else if (a.target == "Jtilde") {
        value = modular_j::jtilde_derivative(PuncturedDiskPoint{z}, a.deriv, *bank);
    } else if (a.target == "E2" || a.target == "E4" || a.target == "E6") {
        if (a.deriv != 0) throw UsageError("--deriv applies to J and Jtilde only");
        value = eisenstein::eisenstein_eval(a.target[1] - '0', HalfPlanePoint{z}, *bank);
    } else {
        throw UsageError("unknown target '" + a.target + "' (expected J, Jtilde, E2, E4, E6 or a structure symbol)");
    }
    std::cout << format_complex(value, precision) << '\n';
    return kOk;
}

int cmd_reduce(double x, double y)
{
    const auto r = modular_group::reduce_to_fd(HalfPlanePoint{x, y});
    std::string word;
    for (auto g : r.word) {
        if (!word.empty()) word += ' ';
        word += modular_group::token(g);
    }
    std::cout << "reduced " << format_complex(r.reduced.value(), 15) << '\n';
    std::cout << "gamma   " << r.gamma.to_string() << '\n';
    std::cout << "word    " << (word.empty() ? "I" : word) << '\n';
    return kOk;
}

struct AuditArgs {
    std::string suite;
    std::optional<std::size_t> samples;
    std::optional<std::uint64_t> seed;
    std::optional<double> tol;
    bool json_out = false;
    std::string report_path;
    bool no_timing = false;
};

int cmd_audit(const AuditArgs& a, const Settings& s)
{
    audit::AuditOptions opts;
    opts.seed = a.seed.value_or(s.seed);
    opts.samples = a.samples ? a.samples : s.samples;
    opts.tolerance = a.tol;
    opts.check_tolerances = s.tolerances;
    opts.series_order = s.order;
    opts.lattice_cutoff = s.lattice_cutoff;
    opts.index_cap = s.index_cap;
    opts.timing = !a.no_timing;
    if (opts.samples && *opts.samples == 0) throw UsageError("--samples must be positive");
    if (a.tol && !(*a.tol >= 0.0)) throw UsageError("--tol must be non-negative");

    const auto report = audit::run_audit(a.suite, opts);
    if (!a.report_path.empty()) {
        std::ofstream out(a.report_path);
        if (!(out << audit::report_json(report) << '\n')) throw IoError("cannot write '" + a.report_path + "'");
    }
    if (a.json_out) {
        std::cout << audit::report_json(report) << '\n';
    } else {
        std::cout << audit::report_text(report);
    }
    return report.pass() ? kOk : kAuditFailed;
}

struct GridArgs {
    std::string region;
    std::string res = "200x200";
    std::string quantity = "absJ";
    std::string out;
    std::string format = "csv";
};

int cmd_grid(const GridArgs& a, const Settings& s)
{
    const auto region = grid::parse_region(a.region);
    const auto quantity = grid::parse_quantity(a.quantity);
    const auto [w, h] = grid::parse_resolution(a.res);
    if (a.format != "csv" && a.format != "json") throw UsageError("format must be csv or json");
    std::ofstream out(a.out);
    if (!out) throw IoError("cannot open '" + a.out + "' for writing");
    const auto bank = eisenstein::SeriesBank::at_order(s.order);
    const auto g = grid::compute_grid(region, quantity, w, h, *bank);
    if (a.format == "csv") {
        grid::write_csv(g, out);
    } else {
        grid::write_json(g, out);
    }
    out.flush();
    if (!out) throw IoError("write to '" + a.out + "' failed");
    return kOk;
}

int cmd_series(int k, std::size_t order)
{
    if (k != 2 && k != 4 && k != 6) throw UsageError("series weight must be 2, 4 or 6");
    const QSeries e = eisenstein::eisenstein_qseries(k, order);
    for (std::size_t n = 0; n <= e.order(); ++n) std::cout << n << ' ' << to_string(e[n]) << '\n';
    return kOk;
}

int cmd_wdivide(const std::string& f_path, const std::string& g_path, unsigned trunc)
{
    const auto f = w_system::from_json(read_file(f_path));
    const auto g = w_system::from_json(read_file(g_path));
    const DivisionResult r = w_system::weierstrass_divide(f, g, trunc);
    nlohmann::ordered_json doc;
    doc["order"] = r.order;
    doc["quotient"] = nlohmann::ordered_json::parse(w_system::to_json(r.quotient));
    doc["remainders"] = nlohmann::ordered_json::array();
    for (const auto& rem : r.remainders) doc["remainders"].push_back(nlohmann::ordered_json::parse(w_system::to_json(rem)));
    std::cout << doc.dump(2) << '\n';
    return kOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Modular function toolkit: evaluation, reduction, identity audits and grids"};
    app.require_subcommand(1);

    EvalArgs eval;
    auto* eval_cmd = app.add_subcommand("eval", "Evaluate J, Jtilde, E2, E4, E6 or a structure symbol at a point");
    eval_cmd->add_option("target", eval.target, "J, Jtilde, E2, E4, E6 or e.g. RJ.Jre[0]")->required();
    eval_cmd->add_option("x", eval.x, "real part (or the only argument of a one-place symbol)")->required();
    eval_cmd->add_option("y", eval.y, "imaginary part (or second argument)");
    eval_cmd->add_option("--deriv", eval.deriv, "derivative order for J and Jtilde")->check(CLI::Range(0, 3));
    eval_cmd->add_option("--precision", eval.precision, "digits after the decimal point");

    double rx = 0.0;
    double ry = 0.0;
    auto* reduce_cmd = app.add_subcommand("reduce", "Reduce tau = x + iy to the closed fundamental domain");
    reduce_cmd->add_option("x", rx)->required();
    reduce_cmd->add_option("y", ry)->required();

    AuditArgs aud;
    std::optional<std::size_t> pos_samples;
    std::optional<std::uint64_t> pos_seed;
    auto* audit_cmd = app.add_subcommand("audit", "Run an identity audit suite");
    audit_cmd->add_option("suite", aud.suite, "all, modularity, ramanujan, covering, qmaps, wdivision or structures")
        ->required();
    audit_cmd->add_option("samples_pos", pos_samples, "sample count (same as --samples)");
    audit_cmd->add_option("seed_pos", pos_seed, "seed (same as --seed)");
    audit_cmd->add_option("--samples", aud.samples, "sample count for every sampled check");
    audit_cmd->add_option("--seed", aud.seed, "RNG seed");
    audit_cmd->add_option("--tol", aud.tol, "tolerance for every non-exact check");
    audit_cmd->add_flag("--json", aud.json_out, "print the JSON report instead of text");
    audit_cmd->add_option("--report", aud.report_path, "also write the JSON report to this file");
    audit_cmd->add_flag("--no-timing", aud.no_timing, "report wall_ms as 0");

    GridArgs gr;
    auto* grid_cmd = app.add_subcommand("grid", "Write plot data for a region");
    grid_cmd->add_option("region", gr.region, "fundamental-domain, strip or q-disk")->required();
    grid_cmd->add_option("--res", gr.res, "resolution WxH, sides <= 4096");
    grid_cmd->add_option("--quantity", gr.quantity, "absJ, reJ, imJ or tile-index");
    grid_cmd->add_option("--out", gr.out, "output path")->required();
    grid_cmd->add_option("--format", gr.format, "csv or json");

    int series_k = 0;
    std::optional<std::size_t> series_order;
    auto* series_cmd = app.add_subcommand("series", "Print q-expansion coefficients of E2, E4 or E6");
    series_cmd->add_option("k", series_k, "weight: 2, 4 or 6")->required();
    series_cmd->add_option("--order", series_order, "truncation order");

    std::string f_path;
    std::string g_path;
    unsigned trunc = 0;
    auto* wdiv_cmd = app.add_subcommand("wdivide", "Weierstrass division of serialized power series");
    wdiv_cmd->add_option("--f", f_path, "divisor JSON file")->required();
    wdiv_cmd->add_option("--g", g_path, "dividend JSON file")->required();
    wdiv_cmd->add_option("--trunc", trunc, "total-degree truncation")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        const Settings settings = load_settings();
        if (*eval_cmd) return cmd_eval(eval, settings);
        if (*reduce_cmd) return cmd_reduce(rx, ry);
        if (*audit_cmd) {
            if (!aud.samples) aud.samples = pos_samples;
            if (!aud.seed) aud.seed = pos_seed;
            return cmd_audit(aud, settings);
        }
        if (*grid_cmd) return cmd_grid(gr, settings);
        if (*series_cmd) return cmd_series(series_k, series_order.value_or(settings.order));
        if (*wdiv_cmd) return cmd_wdivide(f_path, g_path, trunc);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
