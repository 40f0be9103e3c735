#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "limitop/errors.hpp"
#include "limitop/io.hpp"

using namespace limitop;
using io::json;

namespace {

struct Options {
    double tolerance = 1e-9;
    int samples = 1 << 14;
    std::vector<long> sections{50, 100, 200};
    std::string format = "json";
    std::string out;
};

void emit(const Options& opt, const std::string& text) {
    if (opt.out.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream f(opt.out);
    if (!f) throw io::ParseError("cannot write " + opt.out);
    f << text;
    if (!text.empty() && text.back() != '\n') f << '\n';
}

void emit(const Options& opt, const json& doc) {
    emit(opt, opt.format == "pretty" ? doc.dump(2) : doc.dump());
}

GroupoidPtr load_groupoid_or_fail(const std::string& path) {
    auto parsed = io::parse_groupoid(io::load_json_file(path));
    if (!parsed.ok())
        throw io::ParseError(path + ": groupoid tables violate the axioms; " +
                             "run `limitop validate` for the listing");
    return parsed.groupoid;
}

int unit_from_label(const FiniteGroupoid& g, const std::string& label) {
    auto u = g.unit_index(label);
    if (!u) throw UnknownUnit(label);
    return *u;
}

int cmd_validate(const Options& opt, const std::string& path) {
    auto doc = io::load_json_file(path);
    auto parsed = io::parse_groupoid(doc);
    if (parsed.ok()) {
        emit(opt, json{{"valid", true},
                       {"units", parsed.groupoid->num_units()},
                       {"arrows", parsed.groupoid->num_arrows()}});
        return 0;
    }
    std::vector<std::string> labels;
    if (doc.contains("arrows"))
        for (const auto& a : doc.at("arrows"))
            labels.push_back(a.at("id").is_string()
                                 ? a.at("id").get<std::string>()
                                 : a.at("id").dump());
    auto rendered = io::serialize_violations(parsed.violations, labels);
    rendered["valid"] = false;
    emit(opt, rendered);
    return 1;
}

// Element files may carry their own inline groupoid copy; rebase onto a
// shared instance when the tables are identical.
AlgebraElement rebase(const AlgebraElement& f, const GroupoidPtr& g) {
    if (f.g == g) return f;
    if (f.g->unit_labels != g->unit_labels ||
        f.g->arrow_labels != g->arrow_labels || f.g->src != g->src ||
        f.g->rng != g->rng || f.g->inv != g->inv || f.g->comp != g->comp)
        throw io::ParseError("element groupoid differs from the supplied one");
    AlgebraElement out(g);
    out.coeff = f.coeff;
    return out;
}

int cmd_rep(const Options& opt, const std::string& gpath,
            const std::string& epath, const std::string& unit) {
    auto g = load_groupoid_or_fail(gpath);
    auto f = rebase(io::parse_element(io::load_json_file(epath), g), g);
    auto m = regular_representation(f, unit_from_label(*g, unit));
    emit(opt, io::serialize_fibre_matrix(m));
    return 0;
}

int cmd_norm(const Options& opt, const std::string& gpath,
             const std::string& epath) {
    auto g = load_groupoid_or_fail(gpath);
    auto f = rebase(io::parse_element(io::load_json_file(epath), g), g);
    emit(opt, json{{"reduced_norm", reduced_norm(f)}, {"i_norm", i_norm(f)}});
    return 0;
}

int cmd_convolve(const Options& opt, const std::string& gpath,
                 const std::string& fpath, const std::string& hpath) {
    auto g = load_groupoid_or_fail(gpath);
    auto f = rebase(io::parse_element(io::load_json_file(fpath), g), g);
    auto h = rebase(io::parse_element(io::load_json_file(hpath), g), g);
    emit(opt, io::serialize_element(convolve(f, h)));
    return 0;
}

int cmd_fredholm(const Options& opt, const std::string& path) {
    auto t = io::parse_band(io::load_json_file(path));
    FredholmConfig cfg;
    cfg.samples = opt.samples;
    cfg.sizes = opt.sections;
    cfg.limits.tolerance = opt.tolerance;
    auto rep = fredholm_report(t, cfg);
    if (opt.format == "csv")
        emit(opt, io::section_trace_csv(rep.section_sigma_min));
    else
        emit(opt, io::serialize_fredholm_report(rep));
    return rep.fredholm ? 0 : 1;
}

int cmd_index(const Options& opt, const std::string& path) {
    auto s = io::parse_symbol(io::load_json_file(path));
    if (opt.format == "csv") {
        emit(opt, io::symbol_trace_csv(s, opt.samples));
        return 0;
    }
    int idx = toeplitz_index(s, opt.samples);
    auto mm = symbol_min_modulus(s, opt.samples);
    emit(opt, json{{"index", idx},
                   {"winding", -idx},
                   {"min_modulus", mm.value}});
    return 0;
}

int cmd_exel(const Options& opt, const std::string& gpath,
             const std::string& epath, bool unitized) {
    auto g = load_groupoid_or_fail(gpath);
    auto f = rebase(io::parse_element(io::load_json_file(epath), g), g);
    auto rep =
        exel_invertibility(f, unitized ? ExelMode::Unitized : ExelMode::Plain);
    emit(opt, io::serialize_exel_report(rep, *g));
    return rep.invertible ? 0 : 1;
}

int cmd_maintheorem(const Options& opt, const std::string& gpath,
                    const std::string& epath,
                    const std::vector<std::string>& boundary) {
    auto g = load_groupoid_or_fail(gpath);
    auto f = rebase(io::parse_element(io::load_json_file(epath), g), g);
    std::vector<int> units;
    for (const auto& b : boundary) units.push_back(unit_from_label(*g, b));
    auto d = BoundaryDecomposition::from_boundary(*g, units);
    auto rep = main_theorem_check(f, d);
    emit(opt, io::serialize_main_theorem_report(rep, *g));
    return (rep.c1 && rep.c2 && rep.c3 && rep.c4) ? 0 : 1;
}

int cmd_mean_defect(const Options& opt, const std::string& gpath,
                    const std::string& mpath) {
    auto g = load_groupoid_or_fail(gpath);
    auto means = io::parse_means(io::load_json_file(mpath), *g);
    emit(opt, io::serialize_mean_defects(mean_defect(*g, means)));
    return 0;
}

int cmd_limit_op(const Options& opt, const std::string& path,
                 const std::string& direction) {
    auto t = io::parse_band(io::load_json_file(path));
    DirectionSpec dir = direction == "minus" ? DirectionSpec::minus_infinity()
                                             : DirectionSpec::plus_infinity();
    LimitConfig cfg = LimitConfig::defaults();
    cfg.tolerance = opt.tolerance;
    auto l = limit_operator(t, dir, cfg);
    auto doc = io::serialize_laurent(l);
    doc["direction"] = direction;
    emit(opt, doc);
    return 0;
}

json refusal(const std::string& kind, const std::string& what) {
    return {{"error", kind}, {"detail", what}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact groupoid convolution algebra and band operators on Z"};
    app.require_subcommand(1);
    app.fallthrough();

    Options opt;
    app.add_option("--tolerance", opt.tolerance,
                   "numeric tolerance for limit extraction");
    app.add_option("--samples", opt.samples, "symbol sample count");
    app.add_option("--sections", opt.sections,
                   "finite section sizes (comma separated)")
        ->delimiter(',');
    app.add_option("--format", opt.format, "json | csv | pretty")
        ->check(CLI::IsMember({"json", "csv", "pretty"}));
    app.add_option("--out", opt.out, "write output here instead of stdout");

    std::string gpath, epath, hpath, unit, direction = "plus";
    std::vector<std::string> boundary;
    bool unitized = false;

    auto* validate = app.add_subcommand("validate", "check groupoid axioms");
    validate->add_option("groupoid", gpath)->required();

    auto* rep = app.add_subcommand("rep", "regular representation at a unit");
    rep->add_option("groupoid", gpath)->required();
    rep->add_option("element", epath)->required();
    rep->add_option("--unit", unit, "unit label")->required();

    auto* norm = app.add_subcommand("norm", "reduced norm and I-norm");
    norm->add_option("groupoid", gpath)->required();
    norm->add_option("element", epath)->required();

    auto* conv = app.add_subcommand("convolve", "convolution product");
    conv->add_option("groupoid", gpath)->required();
    conv->add_option("f", epath)->required();
    conv->add_option("g", hpath)->required();

    auto* fred = app.add_subcommand("fredholm", "limit symbols, certification, index");
    fred->add_option("band", gpath)->required();

    auto* idx = app.add_subcommand("index", "Toeplitz index of a symbol");
    idx->add_option("symbol", gpath)->required();

    auto* exel = app.add_subcommand("exel", "per-fibre invertibility");
    exel->add_option("groupoid", gpath)->required();
    exel->add_option("element", epath)->required();
    exel->add_flag("--unitized", unitized, "test 1 + f instead of f");

    auto* mt = app.add_subcommand("maintheorem", "four-condition boundary check");
    mt->add_option("groupoid", gpath)->required();
    mt->add_option("element", epath)->required();
    mt->add_option("--boundary", boundary, "boundary unit labels")
        ->required()
        ->delimiter(',');

    auto* md = app.add_subcommand("mean-defect", "translation defects of means");
    md->add_option("groupoid", gpath)->required();
    md->add_option("means", epath)->required();

    auto* lo = app.add_subcommand("limit-op", "limit operator along a direction");
    lo->add_option("band", gpath)->required();
    lo->add_option("--direction", direction, "plus | minus")
        ->check(CLI::IsMember({"plus", "minus"}));

    for (CLI::App* s : {validate, rep, norm, conv, fred, idx, exel, mt, md, lo})
        s->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*validate) return cmd_validate(opt, gpath);
        if (*rep) return cmd_rep(opt, gpath, epath, unit);
        if (*norm) return cmd_norm(opt, gpath, epath);
        if (*conv) return cmd_convolve(opt, gpath, epath, hpath);
        if (*fred) return cmd_fredholm(opt, gpath);
        if (*idx) return cmd_index(opt, gpath);
        if (*exel) return cmd_exel(opt, gpath, epath, unitized);
        if (*mt) return cmd_maintheorem(opt, gpath, epath, boundary);
        if (*md) return cmd_mean_defect(opt, gpath, epath);
        if (*lo) return cmd_limit_op(opt, gpath, direction);
    } catch (const io::ParseError& e) {
        std::cerr << refusal("parse", e.what()).dump() << '\n';
        return 2;
    } catch (const NotConvergent& e) {
        json doc = refusal("not-convergent", e.what());
        doc["diagonal"] = e.diagonal;
        doc["probes"] = json::array();
        for (const auto& [n, v] : e.probes)
            doc["probes"].push_back({n, v.real(), v.imag()});
        std::cerr << doc.dump() << '\n';
        return 1;
    } catch (const NearZeroSymbol& e) {
        json doc = refusal("near-zero-symbol", e.what());
        doc["min_modulus"] = e.min_modulus;
        std::cerr << doc.dump() << '\n';
        return 1;
    } catch (const NotInvariant& e) {
        json doc = refusal("not-invariant", e.what());
        doc["witness_arrow"] = e.witness_arrow;
        std::cerr << doc.dump() << '\n';
        return 1;
    } catch (const UnknownUnit& e) {
        std::cerr << refusal("unknown-unit", e.what()).dump() << '\n';
        return 1;
    } catch (const SupportViolation& e) {
        std::cerr << refusal("support-violation", e.what()).dump() << '\n';
        return 1;
    } catch (const SingularFibre& e) {
        std::cerr << refusal("singular-fibre", e.what()).dump() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << refusal("error", e.what()).dump() << '\n';
        return 2;
    }
    return 0;
}
