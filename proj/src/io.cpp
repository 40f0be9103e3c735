#include "limitop/io.hpp"

#include <fstream>
#include <sstream>

namespace limitop::io {

namespace {

std::string id_to_label(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long>());
    throw ParseError("id must be a string or an integer");
}

int lookup_unit(const FiniteGroupoid& g, const json& v) {
    auto u = g.unit_index(id_to_label(v));
    if (!u) throw ParseError("unknown unit id: " + v.dump());
    return *u;
}

int lookup_arrow(const FiniteGroupoid& g, const json& v) {
    auto a = g.arrow_index(id_to_label(v));
    if (!a) throw ParseError("unknown arrow id: " + v.dump());
    return *a;
}

GroupSpec parse_group_spec(const json& doc) {
    if (!doc.contains("elements") || !doc.contains("table"))
        throw ParseError("group needs \"elements\" and \"table\"");
    std::vector<std::string> elements;
    for (const auto& e : doc.at("elements"))
        elements.push_back(id_to_label(e));
    int identity = doc.value("identity", 0);
    auto table = doc.at("table").get<std::vector<std::vector<int>>>();
    try {
        return GroupSpec::make(std::move(elements), identity, std::move(table));
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("bad group: ") + e.what());
    }
}

ActionSpec parse_action_spec(const json& doc) {
    if (!doc.contains("group") || !doc.contains("points") ||
        !doc.contains("perms"))
        throw ParseError("action needs \"group\", \"points\" and \"perms\"");
    GroupSpec group = parse_group_spec(doc.at("group"));
    std::vector<std::string> points;
    for (const auto& p : doc.at("points")) points.push_back(id_to_label(p));
    auto perms = doc.at("perms").get<std::vector<std::vector<int>>>();
    try {
        return ActionSpec::make(std::move(group), std::move(points),
                                std::move(perms));
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("bad action: ") + e.what());
    }
}

cplx parse_cplx(const json& v) {
    if (v.is_number()) return cplx(v.get<double>(), 0.0);
    if (v.is_array() && v.size() == 2)
        return cplx(v.at(0).get<double>(), v.at(1).get<double>());
    throw ParseError("complex value must be a number or [re, im]");
}

json dump_cplx(cplx v) { return json::array({v.real(), v.imag()}); }

}  // namespace

ParsedGroupoid parse_groupoid(const json& doc) {
    if (!doc.is_object()) throw ParseError("groupoid document must be an object");
    ParsedGroupoid out;
    if (doc.contains("pair")) {
        int n = doc.at("pair").get<int>();
        if (n < 1) throw ParseError("pair groupoid needs n >= 1");
        out.groupoid = pair_groupoid(n);
        return out;
    }
    if (doc.contains("group")) {
        out.groupoid = group_groupoid(parse_group_spec(doc.at("group")));
        return out;
    }
    if (doc.contains("action")) {
        out.action = transformation_groupoid(parse_action_spec(doc.at("action")));
        out.groupoid = out.action->groupoid;
        return out;
    }
    if (!doc.contains("units") || !doc.contains("arrows") ||
        !doc.contains("compose") || !doc.contains("invert"))
        throw ParseError(
            "groupoid needs \"units\", \"arrows\", \"compose\", \"invert\" "
            "or a shorthand (\"pair\", \"group\", \"action\")");

    RawGroupoid raw;
    std::unordered_map<std::string, int> unit_of, arrow_of;
    for (const auto& u : doc.at("units")) {
        std::string label = id_to_label(u);
        if (!unit_of.emplace(label, raw.unit_labels.size()).second)
            throw ParseError("duplicate unit id: " + label);
        raw.unit_labels.push_back(label);
    }
    for (const auto& a : doc.at("arrows")) {
        std::string label = id_to_label(a.at("id"));
        if (!arrow_of.emplace(label, raw.arrows.size()).second)
            throw ParseError("duplicate arrow id: " + label);
        auto unit = [&](const json& v) {
            auto it = unit_of.find(id_to_label(v));
            if (it == unit_of.end())
                throw ParseError("unknown unit id: " + v.dump());
            return it->second;
        };
        raw.arrows.push_back({label, unit(a.at("s")), unit(a.at("r"))});
    }
    auto arrow = [&](const json& v) {
        auto it = arrow_of.find(id_to_label(v));
        if (it == arrow_of.end())
            throw ParseError("unknown arrow id: " + v.dump());
        return it->second;
    };
    for (const auto& row : doc.at("compose")) {
        if (!row.is_array() || row.size() != 3)
            throw ParseError("compose rows must be [a, b, c]");
        raw.compose_rows.push_back({arrow(row[0]), arrow(row[1]), arrow(row[2])});
    }
    for (const auto& row : doc.at("invert")) {
        if (!row.is_array() || row.size() != 2)
            throw ParseError("invert rows must be [a, b]");
        raw.invert_rows.push_back({arrow(row[0]), arrow(row[1])});
    }
    auto res = validate_groupoid(raw);
    out.groupoid = res.groupoid;
    out.violations = std::move(res.violations);
    return out;
}

json serialize_groupoid(const FiniteGroupoid& g) {
    json doc;
    doc["units"] = g.unit_labels;
    doc["arrows"] = json::array();
    for (int a = 0; a < g.num_arrows(); ++a)
        doc["arrows"].push_back({{"id", g.arrow_labels[a]},
                                 {"s", g.unit_labels[g.src[a]]},
                                 {"r", g.unit_labels[g.rng[a]]}});
    doc["compose"] = json::array();
    // deterministic row order: by (a, b)
    for (int a = 0; a < g.num_arrows(); ++a)
        for (int b = 0; b < g.num_arrows(); ++b)
            if (auto c = g.compose(a, b))
                doc["compose"].push_back({g.arrow_labels[a], g.arrow_labels[b],
                                          g.arrow_labels[*c]});
    doc["invert"] = json::array();
    for (int a = 0; a < g.num_arrows(); ++a)
        doc["invert"].push_back({g.arrow_labels[a], g.arrow_labels[g.inv[a]]});
    return doc;
}

AlgebraElement parse_element(const json& doc, GroupoidPtr fallback) {
    if (!doc.is_object()) throw ParseError("element document must be an object");
    GroupoidPtr g;
    if (doc.contains("groupoid")) {
        auto parsed = parse_groupoid(doc.at("groupoid"));
        if (!parsed.ok()) throw ParseError("element's inline groupoid is invalid");
        g = parsed.groupoid;
    } else {
        g = std::move(fallback);
    }
    if (!g) throw ParseError("element has no groupoid and none was supplied");
    AlgebraElement f(g);
    for (const auto& row : doc.at("coeffs")) {
        if (!row.is_array() || row.size() != 3)
            throw ParseError("coeff rows must be [arrowId, re, im]");
        int a = lookup_arrow(*g, row[0]);
        f.coeff[a] = cplx(row[1].get<double>(), row[2].get<double>());
    }
    return f;
}

json serialize_element(const AlgebraElement& f) {
    json doc;
    doc["groupoid"] = serialize_groupoid(*f.g);
    doc["coeffs"] = json::array();
    for (int a : f.support())
        doc["coeffs"].push_back({f.g->arrow_labels[a], f.coeff[a].real(),
                                 f.coeff[a].imag()});
    return doc;
}

BandOperatorZ parse_band(const json& doc) {
    if (!doc.is_object() || !doc.contains("width") || !doc.contains("diagonals"))
        throw ParseError("band operator needs \"width\" and \"diagonals\"");
    BandOperatorZ t;
    t.width = doc.at("width").get<int>();
    if (t.width < 0) throw ParseError("width must be >= 0");
    for (const auto& d : doc.at("diagonals")) {
        int m = d.at("m").get<int>();
        if (m < -t.width || m > t.width)
            throw ParseError("diagonal index exceeds the declared width");
        std::string kind = d.at("kind").get<std::string>();
        if (kind == "finite") {
            std::map<long, cplx> table;
            for (const auto& e : d.at("entries")) {
                if (!e.is_array() || e.size() != 3)
                    throw ParseError("finite entries must be [n, re, im]");
                table[e[0].get<long>()] =
                    cplx(e[1].get<double>(), e[2].get<double>());
            }
            t.diagonals.emplace(m, CoefficientSequence::finite(std::move(table)));
        } else if (kind == "periodic") {
            std::vector<cplx> vals;
            for (const auto& v : d.at("values")) vals.push_back(parse_cplx(v));
            if (d.contains("period") &&
                d.at("period").get<long>() != static_cast<long>(vals.size()))
                throw ParseError("periodic values length must equal the period");
            t.diagonals.emplace(m, CoefficientSequence::periodic(std::move(vals)));
        } else if (kind == "eventual") {
            long window = d.at("window").get<long>();
            std::vector<cplx> vals;
            for (const auto& v : d.at("values")) vals.push_back(parse_cplx(v));
            if (static_cast<long>(vals.size()) != 2 * window + 1)
                throw ParseError("eventual values must cover exactly [-N, N]");
            t.diagonals.emplace(
                m, CoefficientSequence::eventually_constant(
                       window, std::move(vals), parse_cplx(d.at("left")),
                       parse_cplx(d.at("right"))));
        } else if (kind == "sampled") {
            throw ParseError("sampled diagonals are callback-only (library use)");
        } else {
            throw ParseError("unknown diagonal kind: " + kind);
        }
    }
    return t;
}

json serialize_band(const BandOperatorZ& t) {
    json doc;
    doc["width"] = t.width;
    doc["diagonals"] = json::array();
    for (const auto& [m, d] : t.diagonals) {
        json row;
        row["m"] = m;
        std::visit(
            [&row](const auto& seq) {
                using T = std::decay_t<decltype(seq)>;
                if constexpr (std::is_same_v<
                                  T, CoefficientSequence::FiniteSupport>) {
                    row["kind"] = "finite";
                    row["entries"] = json::array();
                    for (const auto& [n, v] : seq.table)
                        row["entries"].push_back({n, v.real(), v.imag()});
                } else if constexpr (std::is_same_v<
                                         T, CoefficientSequence::Periodic>) {
                    row["kind"] = "periodic";
                    row["period"] = seq.period;
                    row["values"] = json::array();
                    for (cplx v : seq.values) row["values"].push_back(dump_cplx(v));
                } else if constexpr (
                    std::is_same_v<T, CoefficientSequence::EventuallyConstant>) {
                    row["kind"] = "eventual";
                    row["window"] = seq.window;
                    row["values"] = json::array();
                    for (cplx v : seq.values) row["values"].push_back(dump_cplx(v));
                    row["left"] = dump_cplx(seq.left);
                    row["right"] = dump_cplx(seq.right);
                } else {
                    throw ParseError("sampled diagonals have no file form");
                }
            },
            d.data());
        doc["diagonals"].push_back(std::move(row));
    }
    return doc;
}

LaurentSymbol parse_symbol(const json& doc) {
    if (!doc.is_object() || !doc.contains("coeffs"))
        throw ParseError("symbol needs \"coeffs\": [[m, re, im], ...]");
    int width = 0;
    for (const auto& row : doc.at("coeffs")) {
        if (!row.is_array() || row.size() != 3)
            throw ParseError("symbol coeff rows must be [m, re, im]");
        width = std::max(width, std::abs(row[0].get<int>()));
    }
    LaurentSymbol s;
    s.width = width;
    s.c.assign(2 * width + 1, cplx(0));
    for (const auto& row : doc.at("coeffs"))
        s.c[row[0].get<int>() + width] =
            cplx(row[1].get<double>(), row[2].get<double>());
    return s;
}

json serialize_symbol(const LaurentSymbol& s) {
    json doc;
    doc["coeffs"] = json::array();
    for (int m = -s.width; m <= s.width; ++m)
        if (s.coeff(m) != cplx(0))
            doc["coeffs"].push_back({m, s.coeff(m).real(), s.coeff(m).imag()});
    return doc;
}

json serialize_laurent(const LaurentOperator& l) {
    json doc;
    doc["width"] = l.width;
    doc["coeffs"] = json::array();
    for (int m = -l.width; m <= l.width; ++m)
        if (l.coeff(m) != cplx(0))
            doc["coeffs"].push_back({m, l.coeff(m).real(), l.coeff(m).imag()});
    return doc;
}

std::vector<MeanFamily> parse_means(const json& doc, const FiniteGroupoid& g) {
    if (!doc.is_object() || !doc.contains("means"))
        throw ParseError("means document needs \"means\"");
    std::vector<MeanFamily> out;
    for (const auto& stage : doc.at("means")) {
        MeanFamily fam;
        fam.n = stage.at("n").get<int>();
        fam.weights.assign(g.num_units(),
                           std::vector<double>(g.num_arrows(), 0.0));
        for (const auto& per_unit : stage.at("weights")) {
            int u = lookup_unit(g, per_unit.at("unit"));
            for (const auto& row : per_unit.at("w")) {
                if (!row.is_array() || row.size() != 2)
                    throw ParseError("weight rows must be [arrowId, value]");
                fam.weights[u][lookup_arrow(g, row[0])] = row[1].get<double>();
            }
        }
        out.push_back(std::move(fam));
    }
    return out;
}

json serialize_fibre_matrix(const FibreMatrix& m) {
    json doc;
    doc["unit"] = m.unit;
    doc["fibre"] = m.fibre;
    doc["matrix"] = json::array();
    for (Eigen::Index r = 0; r < m.m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.m.cols(); ++c)
            row.push_back(dump_cplx(m.m(r, c)));
        doc["matrix"].push_back(std::move(row));
    }
    return doc;
}

namespace {
json per_unit_json(const std::vector<UnitVerdict>& per_unit,
                   const FiniteGroupoid& g) {
    json arr = json::array();
    for (const auto& v : per_unit)
        arr.push_back({{"unit", g.unit_labels[v.unit]},
                       {"sigma_min", v.sigma_min},
                       {"invertible", v.invertible}});
    return arr;
}
}  // namespace

json serialize_exel_report(const ExelReport& rep, const FiniteGroupoid& g) {
    json doc;
    doc["per_unit"] = per_unit_json(rep.per_unit, g);
    doc["verdict"] = rep.invertible;
    doc["sup_inverse_norm"] = rep.sup_inverse_norm;
    if (rep.inverse) {
        doc["inverse"] = serialize_element(*rep.inverse)["coeffs"];
        doc["residual"] = rep.residual;
    }
    return doc;
}

json serialize_main_theorem_report(const MainTheoremReport& rep,
                                   const FiniteGroupoid& g) {
    json doc;
    doc["conditions"] = {
        {"c1", rep.c1}, {"c2", rep.c2}, {"c3", rep.c3}, {"c4", rep.c4}};
    doc["verdict"] = rep.c1 && rep.c2 && rep.c3 && rep.c4;
    doc["degenerate_boundary"] = rep.degenerate_boundary;
    doc["sup_inverse_norm"] = rep.sup_inverse_norm;
    // At this finite scale the supremum in (3) is a plain maximum, so no
    // uniform-boundedness gap between (3) and (4) can occur.
    doc["sup_is_finite_max"] = true;
    doc["per_unit"] = per_unit_json(rep.boundary_fibres, g);
    if (rep.certificate)
        doc["certificate"] = serialize_element(*rep.certificate)["coeffs"];
    return doc;
}

namespace {
const char* cert_name(Certification c) {
    switch (c) {
        case Certification::Certified: return "certified";
        case Certification::Refuted: return "refuted-by-threshold";
        default: return "inconclusive-near-threshold";
    }
}

json min_modulus_json(const MinModulusReport& mm) {
    return {{"value", mm.value},
            {"theta", mm.theta},
            {"lipschitz", mm.lipschitz},
            {"lower_bound", mm.lower_bound}};
}
}  // namespace

json serialize_fredholm_report(const FredholmReport& rep) {
    json doc;
    doc["fredholm"] = rep.fredholm;
    doc["symbols"] = {{"plus", serialize_symbol(rep.plus)},
                      {"minus", serialize_symbol(rep.minus)}};
    doc["min_modulus"] = {{"plus", min_modulus_json(rep.plus_min)},
                          {"minus", min_modulus_json(rep.minus_min)}};
    doc["certification"] = {{"plus", cert_name(rep.plus_cert)},
                            {"minus", cert_name(rep.minus_cert)}};
    if (rep.winding_plus) doc["windings"]["plus"] = *rep.winding_plus;
    if (rep.winding_minus) doc["windings"]["minus"] = *rep.winding_minus;
    if (rep.index) doc["index"] = *rep.index;
    doc["orientation"] =
        "index = wind(minus) - wind(plus); the -infinity symbol is traversed "
        "clockwise, pinned by the bilateral-shift calibration";
    doc["evidence"] = json::array();
    for (const auto& [n, s] : rep.section_sigma_min)
        doc["evidence"].push_back({{"n", n}, {"sigma_min", s}});
    return doc;
}

json serialize_mean_defects(const std::vector<MeanDefect>& defects) {
    json arr = json::array();
    for (const auto& d : defects)
        arr.push_back({{"n", d.n}, {"d1", d.d1}, {"d2", d.d2}});
    return {{"defects", arr},
            {"note", "certifies an approximate invariant mean only if both "
                     "defects tend to 0 along the sequence"}};
}

json serialize_violations(const std::vector<AxiomViolation>& violations,
                          const std::vector<std::string>& arrow_labels) {
    json arr = json::array();
    for (const auto& v : violations) {
        json arrows = json::array();
        for (int a : v.arrows)
            arrows.push_back(a >= 0 && a < static_cast<int>(arrow_labels.size())
                                 ? json(arrow_labels[a])
                                 : json(a));
        arr.push_back(
            {{"kind", v.kind}, {"arrows", arrows}, {"detail", v.detail}});
    }
    return {{"violations", arr}};
}

std::string symbol_trace_csv(const LaurentSymbol& s, int n_samples) {
    std::ostringstream out;
    out << "theta,re,im\n";
    out.precision(17);
    for (const auto& sample : symbol_trace(s, n_samples))
        out << sample.theta << "," << sample.value.real() << ","
            << sample.value.imag() << "\n";
    return out.str();
}

std::string section_trace_csv(const std::vector<std::pair<long, double>>& t) {
    std::ostringstream out;
    out << "n,sigma_min\n";
    out.precision(17);
    for (const auto& [n, s] : t) out << n << "," << s << "\n";
    return out.str();
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw ParseError("malformed JSON in " + path + ": " + e.what());
    }
    return doc;
}

}  // namespace limitop::io
