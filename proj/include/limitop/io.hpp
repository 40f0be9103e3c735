#pragma once

#include <json.hpp>
#include <string>

#include "limitop/fibre.hpp"
#include "limitop/fredholm.hpp"
#include "limitop/groupoid.hpp"

namespace limitop::io {

using nlohmann::json;

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Groupoid document: either the full tables
///   {"units": [...], "arrows": [{"id","s","r"}...],
///    "compose": [[a,b,c]...], "invert": [[a,b]...]}
/// or one of the shorthands {"pair": n}, {"group": {...}}, {"action": {...}}.
/// Ids may be strings or integers; integers are read as decimal labels.
struct ParsedGroupoid {
    GroupoidPtr groupoid;                        // null if invalid full form
    std::vector<AxiomViolation> violations;      // full form only
    std::optional<TransformationGroupoid> action;  // set for {"action": ...}
    bool ok() const { return groupoid != nullptr; }
};

ParsedGroupoid parse_groupoid(const json& doc);
json serialize_groupoid(const FiniteGroupoid& g);

/// {"groupoid": <inline doc>, "coeffs": [[arrowId, re, im], ...]}.
/// `fallback` supplies the groupoid when the document has none.
AlgebraElement parse_element(const json& doc, GroupoidPtr fallback = nullptr);
json serialize_element(const AlgebraElement& f);

/// {"width": w, "diagonals": [{"m", "kind": "finite|periodic|eventual",
///  ...kind fields...}]}. Sampled diagonals are callback-only and have no
/// file form.
BandOperatorZ parse_band(const json& doc);
json serialize_band(const BandOperatorZ& t);

/// {"coeffs": [[m, re, im], ...]}.
LaurentSymbol parse_symbol(const json& doc);
json serialize_symbol(const LaurentSymbol& s);

json serialize_laurent(const LaurentOperator& l);

/// {"means": [{"n": k, "weights": [{"unit": id,
///  "w": [[arrowId, value], ...]}, ...]}, ...]}.
std::vector<MeanFamily> parse_means(const json& doc, const FiniteGroupoid& g);

json serialize_fibre_matrix(const FibreMatrix& m);
json serialize_exel_report(const ExelReport& rep, const FiniteGroupoid& g);
json serialize_main_theorem_report(const MainTheoremReport& rep,
                                   const FiniteGroupoid& g);
json serialize_fredholm_report(const FredholmReport& rep);
json serialize_mean_defects(const std::vector<MeanDefect>& defects);
json serialize_violations(const std::vector<AxiomViolation>& violations,
                          const std::vector<std::string>& arrow_labels);

std::string symbol_trace_csv(const LaurentSymbol& s, int n_samples);
std::string section_trace_csv(const std::vector<std::pair<long, double>>& t);

json load_json_file(const std::string& path);

}  // namespace limitop::io
