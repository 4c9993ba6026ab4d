#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "modulus/complex_core.hpp"

namespace modulus::structures {

enum class StructureId { RJ1, RJ2, RJ, RM1, RM2, RM };

std::string_view structure_name(StructureId s);
std::optional<StructureId> parse_structure(std::string_view text);
std::vector<StructureId> all_structures();

enum class Component { RealPart, ImagPart, RealFunction };

// One function symbol of a structure, with its indices fixed.
//
// Symbols on the q-disk take (Re q, Im q); symbols on the strip take (x, y);
// restricted elementary functions take one real argument.
struct StructureSymbol {
    StructureId structure;
    std::string name;
    std::vector<int> indices;
    unsigned arity;
    Component component;
    std::string domain;

    // "F[0,3]", "sin", ...
    std::string label() const;
};

inline constexpr unsigned kDefaultIndexCap = 32;

// exp(-pi sqrt 3).
double delta();
// 1 - 1/(n + 1).
double disk_radius(int n);
// Raw pole symbols refuse |q| below this.
inline constexpr double kPoleExclusion = 1e-8;

// Every symbol of the signature. Families indexed by n run over 1..index_cap.
std::vector<StructureSymbol> list_symbols(StructureId s, unsigned index_cap = kDefaultIndexCap);

// Evaluates one symbol: the underlying function inside the domain predicate and
// exactly 0.0 outside it. Throws UsageError for unknown names, bad indices or a
// wrong argument count; DomainError for a raw pole symbol near q = 0;
// RangeError if the value is not representable.
double evaluate_symbol(StructureId s, std::string_view name, const std::vector<int>& indices,
                       const std::vector<double>& args, unsigned index_cap = kDefaultIndexCap);

// Whether args satisfy the domain predicate of the symbol (no evaluation).
bool in_domain(StructureId s, std::string_view name, const std::vector<int>& indices,
               const std::vector<double>& args, unsigned index_cap = kDefaultIndexCap);

// "RJ.Jre[0]", "RM1.F[4,7]", "RJ2.sin".
struct SymbolRef {
    StructureId structure;
    std::string name;
    std::vector<int> indices;
};

SymbolRef parse_symbol_ref(std::string_view text);

// Resolves a reference to its descriptor; UsageError if it does not exist.
StructureSymbol describe(const SymbolRef& ref, unsigned index_cap = kDefaultIndexCap);

} // namespace modulus::structures
