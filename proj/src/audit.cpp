#include "modulus/audit.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "modulus/complex_core.hpp"
#include "modulus/eisenstein.hpp"
#include "modulus/errors.hpp"
#include "modulus/modular_j.hpp"
#include "modulus/q_transform.hpp"
#include "modulus/sampling.hpp"
#include "modulus/structures.hpp"
#include "modulus/w_system.hpp"

namespace modulus::audit {

namespace {

using modular_group::Generator;

std::string describe(Complex z)
{
    std::ostringstream os;
    os.precision(17);
    os << "tau=" << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
    return os.str();
}

std::uint64_t salt(std::string_view name)
{
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : name) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

// Accumulates the worst residual of one check.
class Check {
public:
    Check(std::string name, double tolerance, const AuditOptions& opts, std::size_t default_samples)
        : rng_(opts.seed ^ salt(name)),
          samples_(opts.samples.value_or(default_samples))
    {
        result_.name = std::move(name);
        double tol = tolerance;
        if (const auto it = opts.check_tolerances.find(result_.name); it != opts.check_tolerances.end()) {
            tol = it->second;
        }
        if (opts.tolerance && tolerance > 0.0) tol = *opts.tolerance;
        result_.tolerance = tol;
    }

    Sampler& rng() { return rng_; }
    std::size_t samples() const { return samples_; }

    void record(double residual, const std::function<std::string()>& input)
    {
        ++result_.samples;
        const bool worse = std::isnan(residual) || residual > result_.max_residual;
        if (worse && !std::isnan(result_.max_residual)) {
            result_.max_residual = residual;
            result_.worst_input = input();
        }
    }

    CheckResult finish()
    {
        result_.pass = !std::isnan(result_.max_residual) && result_.max_residual <= result_.tolerance;
        return result_;
    }

private:
    Sampler rng_;
    std::size_t samples_;
    CheckResult result_;
};

// Errors raised while evaluating one sample count as an infinite residual.
double guarded(const std::function<double()>& fn)
{
    try {
        return fn();
    } catch (const std::exception&) {
        return std::numeric_limits<double>::infinity();
    }
}

HalfPlanePoint sample_fd(Sampler& rng, double y_max)
{
    const double x = rng.uniform(-0.5, 0.5);
    const double y = rng.uniform(std::sqrt(1.0 - x * x), y_max);
    return HalfPlanePoint{x, y};
}

UnimodularMatrix random_word(Sampler& rng, int max_len)
{
    std::vector<Generator> w;
    const auto len = rng.integer(1, max_len);
    for (std::int64_t i = 0; i < len; ++i) w.push_back(static_cast<Generator>(rng.integer(0, 2)));
    return modular_group::word_product(w);
}

// tau = alpha(tau_base) with tau_base in F, Im(tau_base) <= 2, and g a random word;
// both tau and g(tau) keep Im >= 0.3.
std::pair<HalfPlanePoint, UnimodularMatrix> sample_pair(Sampler& rng)
{
    for (;;) {
        const HalfPlanePoint base = sample_fd(rng, 2.0);
        const HalfPlanePoint tau = modular_group::moebius_apply(random_word(rng, 6), base);
        const UnimodularMatrix g = random_word(rng, 6);
        if (tau.im() >= 0.3 && modular_group::moebius_apply(g, tau).im() >= 0.3) return {tau, g};
    }
}

using Runner = std::function<void(const AuditOptions&, std::vector<CheckResult>&)>;

void run_modularity(const AuditOptions& opts, std::vector<CheckResult>& out)
{
    const auto bank_ptr = eisenstein::SeriesBank::at_order(opts.series_order);
    const eisenstein::SeriesBank& bank = *bank_ptr;
    const HalfPlanePoint i{0.0, 1.0};
    const HalfPlanePoint rho = modular_group::rho();

    auto point_check = [&](const std::string& name, double tol, const std::function<double()>& fn,
                           const std::string& input) {
        Check c(name, tol, opts, 1);
        c.record(guarded(fn), [&] { return input; });
        out.push_back(c.finish());
    };
    point_check("j_anchor_i", 1e-9, [&] { return std::abs(modular_j::j_eval(i, bank) - 1.0); }, "tau=i");
    point_check("j_anchor_rho", 1e-9, [&] { return std::abs(modular_j::j_eval(rho, bank)); }, "tau=rho");
    point_check("forced_e6_i", 1e-9, [&] { return std::abs(eisenstein::eisenstein_eval(6, i, bank)); }, "tau=i");
    point_check("forced_e4_rho", 1e-9, [&] { return std::abs(eisenstein::eisenstein_eval(4, rho, bank)); },
                "tau=rho");
    point_check("forced_e2_i", 1e-9,
                [&] { return std::abs(eisenstein::eisenstein_eval(2, i, bank) - 3.0 / kPi); }, "tau=i");
    point_check("forced_jprime_i", 1e-8, [&] { return std::abs(modular_j::j_derivative(i, 1, bank)); }, "tau=i");

    auto pair_check = [&](const std::string& name, double tol, std::size_t n,
                          const std::function<double(const HalfPlanePoint&, const UnimodularMatrix&)>& fn) {
        Check c(name, tol, opts, n);
        for (std::size_t s = 0; s < c.samples(); ++s) {
            const auto [tau, g] = sample_pair(c.rng());
            c.record(guarded([&] { return fn(tau, g); }),
                     [&] { return describe(tau.value()) + " gamma=" + g.to_string(); });
        }
        out.push_back(c.finish());
    };
    pair_check("j_invariance", 1e-8, 500,
               [&](const auto& tau, const auto& g) { return modular_j::j_transformation_residual(g, tau, 0, bank); });
    pair_check("j_prime_law", 1e-6, 200,
               [&](const auto& tau, const auto& g) { return modular_j::j_transformation_residual(g, tau, 1, bank); });
    pair_check("j_second_law", 1e-6, 200,
               [&](const auto& tau, const auto& g) { return modular_j::j_transformation_residual(g, tau, 2, bank); });
    pair_check("e4_weight_law", 1e-8, 200,
               [&](const auto& tau, const auto& g) { return eisenstein::weight_law_residual(4, g, tau, bank); });
    pair_check("e6_weight_law", 1e-8, 200,
               [&](const auto& tau, const auto& g) { return eisenstein::weight_law_residual(6, g, tau, bank); });
    pair_check("g2_anomaly_law", 1e-6, 200,
               [&](const auto& tau, const auto& g) { return eisenstein::weight_law_residual(2, g, tau, bank); });

    auto lattice_check = [&](const std::string& name, double tol, const std::function<double(const HalfPlanePoint&)>& fn) {
        Check c(name, tol, opts, 100);
        for (std::size_t s = 0; s < c.samples(); ++s) {
            const HalfPlanePoint tau = sample_fd(c.rng(), 2.0);
            c.record(guarded([&] { return fn(tau); }), [&] { return describe(tau.value()); });
        }
        out.push_back(c.finish());
    };
    const int m = opts.lattice_cutoff;
    for (int k : {4, 6}) {
        lattice_check("lattice_e" + std::to_string(k), 1e-2, [&, k](const HalfPlanePoint& tau) {
            return std::abs(eisenstein::eisenstein_lattice(k, tau, m) - eisenstein::eisenstein_eval(k, tau, bank));
        });
    }
    lattice_check("lattice_g2", 5e-3, [&](const HalfPlanePoint& tau) {
        return std::abs(eisenstein::g2_iterated(tau, 2 * m) -
                        eisenstein::zeta_value(2) * eisenstein::eisenstein_eval(2, tau, bank));
    });

    // The residue constant of Jtilde at q = 0 is estimated from c(q) = 1 / (q Jtilde(q)),
    // its convergence checked on a Cauchy sequence, and only then used to normalize.
    auto c_of = [&](double q) {
        return 1.0 / (q * modular_j::jtilde_eval(PuncturedDiskPoint{q, 0.0}, bank)).real();
    };
    {
        Check c("pole_cauchy", 1e-6, opts, 1);
        for (double q : {1e-9, 1e-10, 1e-11}) {
            c.record(guarded([&] { return std::abs(c_of(q) - c_of(q / 10.0)) / std::abs(c_of(q / 10.0)); }), [&] {
                std::ostringstream os;
                os << "q=" << q << " vs q=" << q / 10.0;
                return os.str();
            });
        }
        out.push_back(c.finish());
    }
    const double c_est = c_of(1e-12);
    point_check("pole_constant", 1e-3, [&] { return std::abs(c_est - 1728.0); }, "q=1e-12");
    point_check("pole_normalization", 1e-3,
                [&] {
                    const double q = 1e-6;
                    return std::abs(c_est * q * modular_j::jtilde_eval(PuncturedDiskPoint{q, 0.0}, bank) - 1.0);
                },
                "q=1e-6");
}

void run_ramanujan(const AuditOptions& opts, std::vector<CheckResult>& out)
{
    for (int k : {2, 4, 6}) {
        Check c("ramanujan_e" + std::to_string(k), 0.0, opts, 1);
        const Rational r = eisenstein::q_side_derivative_residual(k, opts.series_order);
        c.record(r.get_d(), [&] { return "order=" + std::to_string(opts.series_order); });
        out.push_back(c.finish());
    }
    Check c("theta_discriminant", 0.0, opts, 1);
    using P = EisensteinPolynomial;
    const P disc = P::E4().pow(3) - P::E6().pow(2);
    const P diff = eisenstein::theta_derive(disc) - P::E2() * disc;
    c.record(static_cast<double>(diff.terms().size()), [] { return std::string("theta(E4^3 - E6^2) - E2 (E4^3 - E6^2)"); });
    out.push_back(c.finish());
}

void run_covering(const AuditOptions& opts, std::vector<CheckResult>& out)
{
    {
        Check c("covering", 0.0, opts, 10000);
        const auto report = modular_group::covering_audit(c.samples(), opts.seed);
        c.record(static_cast<double>(report.failures.size()), [&] {
            return report.failures.empty() ? std::string() : describe(report.failures.front());
        });
        out.push_back(c.finish());
    }
    Check recompose("reduction_recomposition", 1e-12, opts, 10000);
    Check idem("reduction_idempotence", 0.0, opts, 10000);
    for (std::size_t s = 0; s < recompose.samples(); ++s) {
        Sampler& rng = recompose.rng();
        const double y = std::exp(rng.uniform(std::log(1e-4), std::log(5.0)));
        const HalfPlanePoint tau{rng.uniform(-3.0, 3.0), y};
        double residual = 0.0;
        double failure = 0.0;
        try {
            const auto r = modular_group::reduce_to_fd(tau);
            residual = std::abs(modular_group::moebius_apply(r.gamma, tau).value() - r.reduced.value());
            if (!modular_group::fd_membership(r.reduced, modular_group::Domain::Closed) ||
                modular_group::word_product(r.word) != r.gamma) {
                residual = std::numeric_limits<double>::infinity();
            }
            const auto again = modular_group::reduce_to_fd(r.reduced);
            failure = again.gamma == UnimodularMatrix::identity() ? 0.0 : 1.0;
        } catch (const std::exception&) {
            residual = std::numeric_limits<double>::infinity();
            failure = 1.0;
        }
        recompose.record(residual, [&] { return describe(tau.value()); });
        idem.record(failure, [&] { return describe(tau.value()); });
    }
    out.push_back(recompose.finish());
    out.push_back(idem.finish());
}

void run_qmaps(const AuditOptions& opts, std::vector<CheckResult>& out)
{
    {
        Check c("neighbor_consistency", 1e-10, opts, 1000);
        const double r_lo = std::exp(-kPi * std::sqrt(3.0));
        const double r_hi = std::exp(-kTwoPi / 3.0);
        for (std::size_t s = 0; s < c.samples(); ++s) {
            const double r = std::exp(c.rng().uniform(std::log(r_lo), std::log(r_hi)));
            const double theta = c.rng().uniform(-kPi, kPi);
            const PuncturedDiskPoint q{std::polar(r, theta)};
            for (int j = 1; j <= 3; ++j) {
                c.record(guarded([&] {
                             const Complex direct = q_transform::neighbor_q(q, j);
                             const HalfPlanePoint tau = q_transform::tau_from_q(q);
                             const HalfPlanePoint image =
                                 modular_group::moebius_apply(q_transform::neighbor_matrix(j), tau);
                             return std::abs(direct - q_transform::q_from_tau(image).value());
                         }),
                         [&] {
                             std::ostringstream os;
                             os.precision(17);
                             os << "q=" << q.value().real() << "," << q.value().imag() << " j=" << j;
                             return os.str();
                         });
            }
        }
        out.push_back(c.finish());
    }
    {
        Check c("tau_q_round_trip", 1e-11, opts, 10000);
        for (std::size_t s = 0; s < c.samples(); ++s) {
            double x = c.rng().uniform(-0.5, 0.5);
            if (x == -0.5) x = 0.5;
            const HalfPlanePoint tau{x, c.rng().uniform(1e-3, 5.0)};
            c.record(guarded([&] {
                         return std::abs(q_transform::tau_from_q(q_transform::q_from_tau(tau)).value() - tau.value());
                     }),
                     [&] { return describe(tau.value()); });
        }
        out.push_back(c.finish());
    }
    {
        Check c("exp_log_round_trip", 1e-12, opts, 10000);
        for (std::size_t s = 0; s < c.samples(); ++s) {
            const double r = std::exp(c.rng().uniform(std::log(1e-3), std::log(1e3)));
            const Complex z = std::polar(r, c.rng().uniform(-kPi, kPi));
            c.record(guarded([&] {
                         return std::abs(complex_core::complex_exp(complex_core::principal_log(z)) - z) / std::abs(z);
                     }),
                     [&] { return "z=" + describe(z).substr(4); });
        }
        out.push_back(c.finish());
    }
    {
        Check c("arctan_reflection", 1e-14, opts, 1000);
        for (std::size_t s = 0; s < c.samples(); ++s) {
            double x = c.rng().uniform(-100.0, 100.0);
            if (x == 0.0) x = 1.0;
            c.record(guarded([&] { return complex_core::arctan_reflection_residual(x); }),
                     [&] { return "x=" + std::to_string(x); });
        }
        out.push_back(c.finish());
    }
}

struct DivisionInstance {
    MultiPowerSeries f;
    MultiPowerSeries g;
    unsigned trunc;
};

MultiIndex random_index(Sampler& rng, std::size_t n, unsigned max_degree)
{
    MultiIndex e(n, 0);
    const auto degree = rng.integer(0, max_degree);
    for (std::int64_t k = 0; k < degree; ++k) ++e[static_cast<std::size_t>(rng.integer(0, static_cast<long>(n) - 1))];
    return e;
}

DivisionInstance random_division(Sampler& rng)
{
    const auto n = static_cast<std::size_t>(rng.integer(0, 3));
    const std::size_t m = n + 1;
    const auto trunc = static_cast<unsigned>(rng.integer(1, 8));
    const auto d = static_cast<unsigned>(rng.integer(0, std::min<long>(4, trunc)));
    MultiPowerSeries f(m, trunc);
    MultiIndex lead(m, 0);
    lead[n] = d;
    std::int64_t c = 0;
    while (c == 0) c = rng.integer(-5, 5);
    f.add_term(lead, Rational(static_cast<long>(c)));
    const auto extra = rng.integer(0, 5);
    for (std::int64_t t = 0; t < extra; ++t) {
        const MultiIndex e = random_index(rng, m, trunc);
        if (total_degree(e) == e[n] && e[n] <= d) continue;
        f.add_term(e, Rational(static_cast<long>(rng.integer(-5, 5))));
    }
    MultiPowerSeries g(m, trunc);
    const auto g_terms = rng.integer(1, 6);
    for (std::int64_t t = 0; t < g_terms; ++t) {
        g.add_term(random_index(rng, m, trunc), Rational(static_cast<long>(rng.integer(-5, 5))));
    }
    return {f, g, trunc};
}

bool same_division(const DivisionResult& a, const DivisionResult& b, unsigned trunc)
{
    if (a.order != b.order || a.remainders.size() != b.remainders.size()) return false;
    if (!a.quotient.truncated(trunc).same_terms(b.quotient.truncated(trunc))) return false;
    for (std::size_t i = 0; i < a.remainders.size(); ++i) {
        if (!a.remainders[i].truncated(trunc).same_terms(b.remainders[i].truncated(trunc))) return false;
    }
    return true;
}

void run_wdivision(const AuditOptions& opts, std::vector<CheckResult>& out)
{
    Check recompose("division_recomposition", 0.0, opts, 100);
    Check agree("division_oracle_agreement", 0.0, opts, 100);
    for (std::size_t s = 0; s < recompose.samples(); ++s) {
        const DivisionInstance inst = random_division(recompose.rng());
        auto label = [&] { return "f=" + inst.f.to_string() + " g=" + inst.g.to_string() + " D=" + std::to_string(inst.trunc); };
        try {
            const DivisionResult r = w_system::weierstrass_divide(inst.f, inst.g, inst.trunc);
            const auto residual = w_system::division_residual(inst.f, inst.g, r, inst.trunc);
            recompose.record(static_cast<double>(residual.terms().size()), label);
            const DivisionResult ref = w_system::weierstrass_divide_reference(inst.f, inst.g, inst.trunc);
            agree.record(same_division(r, ref, inst.trunc) ? 0.0 : 1.0, label);
        } catch (const std::exception&) {
            recompose.record(std::numeric_limits<double>::infinity(), label);
            agree.record(std::numeric_limits<double>::infinity(), label);
        }
    }
    out.push_back(recompose.finish());
    out.push_back(agree.finish());

    Check inverse("inverse_recomposition", 0.0, opts, 100);
    Check recenter("recenter_round_trip", 0.0, opts, 100);
    for (std::size_t s = 0; s < inverse.samples(); ++s) {
        Sampler& rng = inverse.rng();
        const auto n = static_cast<std::size_t>(rng.integer(1, 3));
        const unsigned trunc = 8;
        std::int64_t c0 = 0;
        while (c0 == 0) c0 = rng.integer(-5, 5);
        MultiPowerSeries f = MultiPowerSeries::constant(n, trunc, Rational(static_cast<long>(c0)));
        for (int k = 0; k < 5; ++k) {
            const MultiIndex e = random_index(rng, n, 4);
            if (total_degree(e) > 0) f.add_term(e, Rational(static_cast<long>(rng.integer(-5, 5))));
        }
        const auto product = f * w_system::ps_inverse(f, trunc) - MultiPowerSeries::constant(n, trunc, 1);
        inverse.record(static_cast<double>(product.terms().size()), [&] { return "f=" + f.to_string(); });

        std::vector<Rational> a(n);
        std::vector<Rational> minus_a(n);
        for (std::size_t j = 0; j < n; ++j) {
            a[j] = Rational(static_cast<long>(rng.integer(-3, 3)), static_cast<unsigned long>(rng.integer(1, 3)));
            a[j].canonicalize();
            minus_a[j] = -a[j];
        }
        const auto back = w_system::recenter(w_system::recenter(f, a, trunc), minus_a, trunc);
        recenter.record(static_cast<double>((back - f).terms().size()), [&] { return "f=" + f.to_string(); });
    }
    out.push_back(inverse.finish());
    out.push_back(recenter.finish());
}

double beyond(double x, double gap)
{
    const double y = x + gap;
    return y > x ? y : std::nextafter(x, std::numeric_limits<double>::infinity());
}

void run_structures(const AuditOptions& opts, std::vector<CheckResult>& out)
{
    using namespace structures;
    const unsigned cap = opts.index_cap;
    {
        Check c("boundary_zero", 0.0, opts, 4);
        const double y_min = std::sqrt(3.0) / 2.0;
        for (StructureId s : all_structures()) {
            for (const StructureSymbol& sym : list_symbols(s, cap)) {
                for (double gap : {1e-12, 1e-300}) {
                    std::vector<std::vector<double>> points;
                    if (sym.arity == 1) {
                        if (sym.domain == "R") continue;
                        const SymbolRef ref{s, sym.name, sym.indices};
                        // probe just outside both interval ends
                        double lo = 0.0;
                        double hi = 0.0;
                        if (sym.domain == "[0, 1]") { lo = 0.0; hi = 1.0; }
                        else if (sym.domain == "[1, 2]") { lo = 1.0; hi = 2.0; }
                        else if (sym.domain == "[-1, 1]") { lo = -1.0; hi = 1.0; }
                        else { lo = -kPi; hi = kPi; }
                        points.push_back({beyond(hi, gap)});
                        points.push_back({-beyond(-lo, gap)});
                    } else if (sym.domain.rfind("|x|", 0) == 0) {
                        for (std::size_t t = 0; t < c.samples(); ++t) {
                            const double y = c.rng().uniform(y_min, 3.0);
                            points.push_back({beyond(0.5, gap), y});
                            points.push_back({-beyond(0.5, gap), y});
                            points.push_back({c.rng().uniform(-0.5, 0.5), -beyond(-y_min, gap)});
                        }
                    } else {
                        const double r = sym.indices.size() == 2 ? disk_radius(sym.indices[1]) : 1.0 - delta();
                        for (std::size_t t = 0; t <= c.samples(); ++t) {
                            const double theta = t == 0 ? 0.0 : c.rng().uniform(-kPi, kPi);
                            double rho = beyond(r, gap);
                            for (;;) {
                                const double x = rho * std::cos(theta);
                                const double y = rho * std::sin(theta);
                                if (std::hypot(x, y) > r) {
                                    points.push_back({x, y});
                                    break;
                                }
                                rho = std::nextafter(rho, 2.0);
                            }
                        }
                    }
                    for (const auto& p : points) {
                        const double v = guarded([&] { return evaluate_symbol(s, sym.name, sym.indices, p, cap); });
                        const bool bad = !(v == 0.0) || std::signbit(v);
                        c.record(bad ? 1.0 : 0.0, [&] {
                            std::ostringstream os;
                            os.precision(17);
                            os << structure_name(s) << "." << sym.label() << " at";
                            for (double a : p) os << ' ' << a;
                            return os.str();
                        });
                    }
                }
            }
        }
        out.push_back(c.finish());
    }
    {
        Check c("rj1_rj2_overlap", 1e-10, opts, 200);
        const double r1 = disk_radius(static_cast<int>(cap));
        for (std::size_t t = 0; t < c.samples(); ++t) {
            const double rho = c.rng().uniform(0.01, std::min(r1, 0.9));
            const double theta = c.rng().uniform(-kPi, kPi);
            const std::vector<double> p{rho * std::cos(theta), rho * std::sin(theta)};
            for (int j = 0; j <= 2; ++j) {
                c.record(guarded([&] {
                             const double f = evaluate_symbol(StructureId::RJ1, "F", {j, static_cast<int>(cap)}, p, cap);
                             const double g = evaluate_symbol(StructureId::RJ1, "G", {j, static_cast<int>(cap)}, p, cap);
                             const double re = evaluate_symbol(StructureId::RJ2, "Jre", {j}, p, cap);
                             const double im = evaluate_symbol(StructureId::RJ2, "Jim", {j}, p, cap);
                             return std::max(std::abs(f - re), std::abs(g - im)) / std::max(1.0, std::hypot(re, im));
                         }),
                         [&] {
                             std::ostringstream os;
                             os.precision(17);
                             os << "q=" << p[0] << "," << p[1] << " j=" << j;
                             return os.str();
                         });
            }
        }
        out.push_back(c.finish());
    }
    {
        Check c("conjugation", 1e-10, opts, 200);
        for (std::size_t t = 0; t < c.samples(); ++t) {
            const double rho = c.rng().uniform(0.02, 0.7);
            const double theta = c.rng().uniform(0.0, kPi);
            const double x = rho * std::cos(theta);
            const double y = rho * std::sin(theta);
            auto pair_residual = [&](StructureId s, int k) {
                const int n = std::min<int>(8, static_cast<int>(cap));
                const double f = evaluate_symbol(s, "F", {k, n}, {x, y}, cap);
                const double g = evaluate_symbol(s, "G", {k, n}, {x, y}, cap);
                const double fc = evaluate_symbol(s, "F", {k, n}, {x, -y}, cap);
                const double gc = evaluate_symbol(s, "G", {k, n}, {x, -y}, cap);
                return std::max(std::abs(fc - f), std::abs(gc + g)) / std::max(1.0, std::hypot(f, g));
            };
            for (int j = 0; j <= 2; ++j) {
                c.record(guarded([&] { return pair_residual(StructureId::RJ1, j); }),
                         [&] { return "RJ1 q=" + std::to_string(x) + "," + std::to_string(y); });
            }
            for (int k : {2, 4, 6}) {
                c.record(guarded([&] { return pair_residual(StructureId::RM1, k); }),
                         [&] { return "RM1 q=" + std::to_string(x) + "," + std::to_string(y); });
            }
        }
        out.push_back(c.finish());
    }
}

const std::vector<std::pair<std::string, Runner>>& runners()
{
    static const std::vector<std::pair<std::string, Runner>> table = {
        {"modularity", run_modularity}, {"ramanujan", run_ramanujan}, {"covering", run_covering},
        {"qmaps", run_qmaps},           {"wdivision", run_wdivision}, {"structures", run_structures},
    };
    return table;
}

} // namespace

bool AuditReport::pass() const
{
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out{"all"};
        for (const auto& [name, fn] : runners()) out.push_back(name);
        return out;
    }();
    return names;
}

AuditReport run_audit(std::string_view suite, const AuditOptions& options)
{
    const auto start = std::chrono::steady_clock::now();
    AuditReport report;
    report.suite = std::string(suite);
    report.seed = options.seed;
    bool found = false;
    for (const auto& [name, fn] : runners()) {
        if (suite == "all" || suite == name) {
            fn(options, report.checks);
            found = true;
        }
    }
    if (!found) throw UsageError("unknown audit suite '" + std::string(suite) + "'");
    for (const auto& c : report.checks) report.samples += c.samples;
    if (options.timing) {
        report.wall_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
    return report;
}

std::string report_json(const AuditReport& report)
{
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (const auto& c : report.checks) {
        nlohmann::ordered_json entry;
        entry["name"] = c.name;
        if (std::isfinite(c.max_residual)) {
            entry["max_residual"] = c.max_residual;
        } else {
            entry["max_residual"] = nullptr;
        }
        entry["tolerance"] = c.tolerance;
        entry["pass"] = c.pass;
        checks.push_back(entry);
    }
    nlohmann::ordered_json doc;
    doc["suite"] = report.suite;
    doc["seed"] = report.seed;
    doc["samples"] = report.samples;
    doc["checks"] = checks;
    doc["wall_ms"] = report.wall_ms;
    return doc.dump(2);
}

std::string report_text(const AuditReport& report)
{
    std::ostringstream os;
    os << "audit " << report.suite << " seed=" << report.seed << " samples=" << report.samples << "\n";
    for (const auto& c : report.checks) {
        char line[256];
        std::snprintf(line, sizeof line, "  %-4s %-28s max_residual=%-12.4g tolerance=%.3g\n", c.pass ? "PASS" : "FAIL",
                      c.name.c_str(), c.max_residual, c.tolerance);
        os << line;
        if (!c.pass && !c.worst_input.empty()) os << "       worst input: " << c.worst_input << "\n";
    }
    os << (report.pass() ? "PASS" : "FAIL") << "\n";
    return os.str();
}

} // namespace modulus::audit
