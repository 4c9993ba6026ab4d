#include "modulus/structures.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "modulus/eisenstein.hpp"
#include "modulus/errors.hpp"
#include "modulus/modular_j.hpp"

namespace modulus::structures {

namespace {

using complex_core::RestrictedFn;

enum class Kind { Restricted, DiskJ, DiskE, StripJ, StripE };

struct Resolved {
    StructureSymbol symbol;
    Kind kind = Kind::Restricted;
    RestrictedFn fn = RestrictedFn::ExpUnit;
    int order = 0;  // derivative order j / weight k
    double radius = 0.0;
    bool tamed = false;
};

const std::string kStripText = "|x| <= 1/2, y >= sqrt(3)/2";

std::string interval_text(RestrictedFn fn)
{
    switch (fn) {
    case RestrictedFn::ExpUnit: return "[0, 1]";
    case RestrictedFn::LogOneTwo: return "[1, 2]";
    case RestrictedFn::SinPi:
    case RestrictedFn::CosPi: return "[-pi, pi]";
    case RestrictedFn::ArctanUnit: return "[-1, 1]";
    case RestrictedFn::FullExp: return "R";
    case RestrictedFn::FullLog: return "(0, inf)";
    }
    return "?";
}

bool restricted_structure(StructureId s) { return s == StructureId::RJ2 || s == StructureId::RM2; }
bool strip_structure(StructureId s) { return s == StructureId::RJ || s == StructureId::RM; }
bool j_structure(StructureId s)
{
    return s == StructureId::RJ1 || s == StructureId::RJ2 || s == StructureId::RJ;
}

std::optional<RestrictedFn> elementary(StructureId s, std::string_view name)
{
    if (restricted_structure(s)) {
        if (name == "exp") return RestrictedFn::ExpUnit;
        if (name == "log") return RestrictedFn::LogOneTwo;
        if (name == "sin") return RestrictedFn::SinPi;
        if (name == "cos") return RestrictedFn::CosPi;
        if (name == "arctan") return RestrictedFn::ArctanUnit;
    }
    if (strip_structure(s)) {
        if (name == "exp") return RestrictedFn::FullExp;
        if (name == "sin") return RestrictedFn::SinPi;
        if (name == "cos") return RestrictedFn::CosPi;
    }
    return std::nullopt;
}

void expect_indices(const std::vector<int>& indices, std::size_t count, std::string_view name)
{
    if (indices.size() != count) {
        throw UsageError("symbol " + std::string(name) + " takes " + std::to_string(count) + " index(es)");
    }
}

int check_order_index(StructureId s, int value)
{
    if (j_structure(s)) {
        if (value < 0 || value > 2) throw UsageError("derivative index must be 0, 1 or 2");
    } else if (value != 2 && value != 4 && value != 6) {
        throw UsageError("weight index must be 2, 4 or 6");
    }
    return value;
}

int check_n(int n, unsigned cap)
{
    if (n < 1 || n > static_cast<int>(cap)) {
        throw UsageError("family index n must lie in 1.." + std::to_string(cap));
    }
    return n;
}

Resolved resolve(StructureId s, std::string_view name, const std::vector<int>& indices, unsigned cap)
{
    Resolved r;
    r.symbol.structure = s;
    r.symbol.name = std::string(name);
    r.symbol.indices = indices;

    if (const auto fn = elementary(s, name)) {
        expect_indices(indices, 0, name);
        r.kind = Kind::Restricted;
        r.fn = *fn;
        r.symbol.arity = 1;
        r.symbol.component = Component::RealFunction;
        r.symbol.domain = interval_text(*fn);
        return r;
    }

    const bool family = s == StructureId::RJ1 || s == StructureId::RM1;
    const bool jfun = j_structure(s);
    std::string_view base = name;
    if (jfun && !strip_structure(s) && base.size() > 1 && base.front() == 'q') {
        r.tamed = true;
        base.remove_prefix(1);
    }

    std::string re_name;
    std::string im_name;
    if (family) {
        re_name = "F";
        im_name = "G";
    } else if (jfun) {
        re_name = "Jre";
        im_name = "Jim";
    } else {
        re_name = "Ere";
        im_name = "Eim";
    }
    if (base == re_name) {
        r.symbol.component = Component::RealPart;
    } else if (base == im_name) {
        r.symbol.component = Component::ImagPart;
    } else {
        throw UsageError("unknown symbol '" + std::string(name) + "' in structure " +
                         std::string(structure_name(s)));
    }
    r.symbol.arity = 2;

    if (family) {
        expect_indices(indices, 2, name);
        r.order = check_order_index(s, indices[0]);
        r.radius = disk_radius(check_n(indices[1], cap));
        r.kind = jfun ? Kind::DiskJ : Kind::DiskE;
        r.symbol.domain = "|q| <= 1 - 1/" + std::to_string(indices[1] + 1);
    } else if (strip_structure(s)) {
        expect_indices(indices, 1, name);
        r.order = check_order_index(s, indices[0]);
        r.kind = jfun ? Kind::StripJ : Kind::StripE;
        r.symbol.domain = kStripText;
    } else {
        expect_indices(indices, 1, name);
        r.order = check_order_index(s, indices[0]);
        r.radius = 1.0 - delta();
        r.kind = jfun ? Kind::DiskJ : Kind::DiskE;
        r.symbol.domain = "|q| <= 1 - exp(-pi sqrt 3)";
    }
    return r;
}

bool strip_predicate(double x, double y)
{
    static const double y_min = std::sqrt(3.0) / 2.0;
    return std::abs(x) <= 0.5 && y >= y_min;
}

bool predicate(const Resolved& r, const std::vector<double>& args)
{
    switch (r.kind) {
    case Kind::Restricted: {
        const auto iv = complex_core::support(r.fn);
        return args[0] >= iv.lo && args[0] <= iv.hi;
    }
    case Kind::DiskJ:
    case Kind::DiskE: return std::hypot(args[0], args[1]) <= r.radius;
    case Kind::StripJ:
    case Kind::StripE: return strip_predicate(args[0], args[1]);
    }
    return false;
}

void check_args(const Resolved& r, const std::vector<double>& args)
{
    if (args.size() != r.symbol.arity) {
        throw UsageError("symbol " + r.symbol.label() + " takes " + std::to_string(r.symbol.arity) +
                         " argument(s), got " + std::to_string(args.size()));
    }
    for (double a : args) {
        if (std::isnan(a)) throw UsageError("symbol " + r.symbol.label() + ": NaN argument");
    }
}

double pick_part(const Resolved& r, Complex value)
{
    const double out = r.symbol.component == Component::RealPart ? value.real() : value.imag();
    if (!std::isfinite(out)) {
        throw RangeError("symbol " + r.symbol.label() + ": value not representable in double precision");
    }
    return out;
}

} // namespace

std::string_view structure_name(StructureId s)
{
    switch (s) {
    case StructureId::RJ1: return "RJ1";
    case StructureId::RJ2: return "RJ2";
    case StructureId::RJ: return "RJ";
    case StructureId::RM1: return "RM1";
    case StructureId::RM2: return "RM2";
    case StructureId::RM: return "RM";
    }
    return "?";
}

std::vector<StructureId> all_structures()
{
    return {StructureId::RJ1, StructureId::RJ2, StructureId::RJ, StructureId::RM1, StructureId::RM2, StructureId::RM};
}

std::optional<StructureId> parse_structure(std::string_view text)
{
    for (StructureId s : all_structures())
        if (structure_name(s) == text) return s;
    return std::nullopt;
}

std::string StructureSymbol::label() const
{
    std::ostringstream os;
    os << name;
    if (!indices.empty()) {
        os << '[';
        for (std::size_t i = 0; i < indices.size(); ++i) os << (i ? "," : "") << indices[i];
        os << ']';
    }
    return os.str();
}

double delta() { return std::exp(-kPi * std::sqrt(3.0)); }

double disk_radius(int n) { return 1.0 - 1.0 / (static_cast<double>(n) + 1.0); }

std::vector<StructureSymbol> list_symbols(StructureId s, unsigned index_cap)
{
    std::vector<StructureSymbol> out;
    auto add = [&](std::string_view name, std::vector<int> idx) {
        out.push_back(resolve(s, name, idx, index_cap).symbol);
    };
    const std::vector<int> orders = j_structure(s) ? std::vector<int>{0, 1, 2} : std::vector<int>{2, 4, 6};
    switch (s) {
    case StructureId::RJ1:
    case StructureId::RM1:
        for (int k : orders)
            for (int n = 1; n <= static_cast<int>(index_cap); ++n) {
                add("F", {k, n});
                add("G", {k, n});
                if (s == StructureId::RJ1) {
                    add("qF", {k, n});
                    add("qG", {k, n});
                }
            }
        break;
    case StructureId::RJ2:
    case StructureId::RM2:
        for (const char* fn : {"exp", "log", "sin", "cos", "arctan"}) add(fn, {});
        for (int k : orders) {
            add(s == StructureId::RJ2 ? "Jre" : "Ere", {k});
            add(s == StructureId::RJ2 ? "Jim" : "Eim", {k});
            if (s == StructureId::RJ2) {
                add("qJre", {k});
                add("qJim", {k});
            }
        }
        break;
    case StructureId::RJ:
    case StructureId::RM:
        for (int k : orders) {
            add(s == StructureId::RJ ? "Jre" : "Ere", {k});
            add(s == StructureId::RJ ? "Jim" : "Eim", {k});
        }
        for (const char* fn : {"sin", "cos", "exp"}) add(fn, {});
        break;
    }
    return out;
}

bool in_domain(StructureId s, std::string_view name, const std::vector<int>& indices, const std::vector<double>& args,
               unsigned index_cap)
{
    const Resolved r = resolve(s, name, indices, index_cap);
    check_args(r, args);
    return predicate(r, args);
}

double evaluate_symbol(StructureId s, std::string_view name, const std::vector<int>& indices,
                       const std::vector<double>& args, unsigned index_cap)
{
    const Resolved r = resolve(s, name, indices, index_cap);
    check_args(r, args);
    if (!predicate(r, args)) return 0.0;

    switch (r.kind) {
    case Kind::Restricted: {
        const double v = complex_core::restricted_eval(r.fn, args[0]);
        if (!std::isfinite(v)) throw RangeError("symbol " + r.symbol.label() + ": overflow");
        return v;
    }
    case Kind::DiskJ: {
        const Complex q{args[0], args[1]};
        if (r.tamed) return pick_part(r, modular_j::jtilde_tamed(q, r.order));
        if (std::abs(q) < kPoleExclusion) {
            throw DomainError("symbol " + r.symbol.label() + ": |q| < 1e-8 is too close to the pole at q = 0");
        }
        return pick_part(r, modular_j::jtilde_derivative(PuncturedDiskPoint{q}, r.order));
    }
    case Kind::DiskE: {
        const Complex q{args[0], args[1]};
        if (q == Complex{0.0, 0.0}) return pick_part(r, Complex{1.0, 0.0});
        return pick_part(r, eisenstein::eisenstein_eval_q(r.order, PuncturedDiskPoint{q}));
    }
    case Kind::StripJ: return pick_part(r, modular_j::j_derivative(HalfPlanePoint{args[0], args[1]}, r.order));
    case Kind::StripE: return pick_part(r, eisenstein::eisenstein_eval(r.order, HalfPlanePoint{args[0], args[1]}));
    }
    return 0.0;
}

SymbolRef parse_symbol_ref(std::string_view text)
{
    const auto dot = text.find('.');
    if (dot == std::string_view::npos) throw UsageError("symbol reference must look like STRUCTURE.name[indices]");
    const auto structure = parse_structure(text.substr(0, dot));
    if (!structure) throw UsageError("unknown structure '" + std::string(text.substr(0, dot)) + "'");
    std::string_view rest = text.substr(dot + 1);
    SymbolRef ref{*structure, {}, {}};
    const auto open = rest.find('[');
    if (open == std::string_view::npos) {
        ref.name = std::string(rest);
    } else {
        if (rest.back() != ']') throw UsageError("symbol reference: missing ']'");
        ref.name = std::string(rest.substr(0, open));
        std::string_view list = rest.substr(open + 1, rest.size() - open - 2);
        while (!list.empty()) {
            const auto comma = list.find(',');
            const std::string_view item = list.substr(0, comma);
            int value = 0;
            const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
            if (ec != std::errc{} || ptr != item.data() + item.size()) {
                throw UsageError("symbol reference: bad index '" + std::string(item) + "'");
            }
            ref.indices.push_back(value);
            if (comma == std::string_view::npos) break;
            list.remove_prefix(comma + 1);
            if (list.empty()) throw UsageError("symbol reference: trailing ','");
        }
    }
    if (ref.name.empty()) throw UsageError("symbol reference: empty symbol name");
    return ref;
}

StructureSymbol describe(const SymbolRef& ref, unsigned index_cap)
{
    return resolve(ref.structure, ref.name, ref.indices, index_cap).symbol;
}

} // namespace modulus::structures
