#pragma once

// The `moebius` command line tool. Kept in a header so tests can drive it
// in-process through run_cli().

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "moebius/moebius.hpp"
#include "moebius/selftest.hpp"
#include "orbit_svg.hpp"

namespace moebius::cli {

using json = nlohmann::json;

enum Exit : int { kOk = 0, kSelftestFailed = 1, kInputError = 2, kNegative = 3, kIndeterminate = 4, kUnsupported = 5 };

struct Outcome {
    json report;
    int code = kOk;
};

struct Settings {
    Tolerances tol;
    std::uint64_t seed = 42;
    bool json_output = false;
    bool timing = false;
};

inline json to_json(cplx z) { return format_complex(z); }
inline json to_json(const ExtendedComplex& p) { return format_point(p); }
inline json to_json(const Mat2& m) {
    return json::array({json::array({to_json(m.m11), to_json(m.m12)}), json::array({to_json(m.m21), to_json(m.m22)})});
}
inline json margin_json(double m) { return std::isfinite(m) ? json(m) : json(nullptr); }

inline json operator_json(const OperatorMatrix& a) {
    if (a.size() == 0) return json::array();
    json rows = json::array();
    for (std::size_t i = 0; i < a.size(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < a.size(); ++j) row.push_back(to_json(a(i, j)));
        rows.push_back(row);
    }
    return rows;
}

inline json partition_json(const SpectralPartition& p) {
    return {{"A0", operator_json(p.zero)},
            {"A01", operator_json(p.contracting)},
            {"A1", operator_json(p.unit)},
            {"A1inf", operator_json(p.expanding)}};
}

inline json map_json(const MoebiusMap& f) {
    return {{"coefficients", format_map(f)}, {"normalized", to_json(normalize(f).matrix())}};
}

inline Outcome cmd_classify(const std::string& text, const Settings& s) {
    const MoebiusMap f = parse_map(text);
    const ConjClass cls = classify(f, s.tol);
    json r{{"input", map_json(f)}, {"class", std::string(to_string(cls))}, {"trace", to_json(trace_of(f))}};
    if (cls == ConjClass::Identity) {
        r["fixed_points"] = "all";
        r["multipliers"] = nullptr;
        r["eigenvalues"] = json::array({"1", "1"});
        r["canonical_form"] = format_map(MoebiusMap::identity());
        r["topological_canonical_form"] = format_map(MoebiusMap::identity());
        return {r, kOk};
    }
    json fps = json::array();
    for (const auto& p : fixed_points(f, s.tol).points) fps.push_back(to_json(p));
    const MultiplierPair mp = multipliers(f, s.tol);
    const EigenPair ev = eigenvalues(normalize(f), s.tol);
    r["fixed_points"] = fps;
    r["multipliers"] = json::array({to_json(mp.first), to_json(mp.second)});
    r["eigenvalues"] = json::array({to_json(ev.first), to_json(ev.second)});
    r["canonical_form"] = format_map(canonical_conjugacy_form(f, s.tol));
    r["topological_canonical_form"] = format_map(topo_canonical_form(f, s.tol));
    if (cls == ConjClass::Elliptic) r["finite_order"] = root_of_unity(mp.first, s.tol.kmax, s.tol.equality);
    return {r, kOk};
}

inline Outcome cmd_topo(const std::string& ft, const std::string& gt, const std::string& criterion,
                        const Settings& s) {
    const MoebiusMap f = parse_map(ft);
    const MoebiusMap g = parse_map(gt);
    json r{{"f", map_json(f)}, {"g", map_json(g)}, {"criterion", criterion}};
    if (criterion != "all") {
        if (is_identity(f) || is_identity(g)) throw IdentityMapError();
        Margin m;
        bool v = false;
        if (criterion == "trace") v = criterion_trace(f, g, s.tol, &m);
        if (criterion == "eigen") v = criterion_eigen(f, g, s.tol, &m);
        if (criterion == "multiplier") v = criterion_multiplier(f, g, s.tol, &m);
        r["criteria"] = {{criterion, v}};
        r["margin"] = margin_json(m.value());
        r["verdict"] = v ? "conjugate" : "not conjugate";
        return {r, v ? kOk : kNegative};
    }
    try {
        const TopoDecision d = topo_conjugate(f, g, s.tol);
        r["criteria"] = {{"trace", d.by_trace}, {"eigen", d.by_eigen}, {"multiplier", d.by_multiplier}};
        r["margin"] = margin_json(d.margin);
        r["notes"] = d.notes;
        r["verdict"] = d.verdict ? "conjugate" : "not conjugate";
        return {r, d.verdict ? kOk : kNegative};
    } catch (const IndeterminateError& e) {
        r["criteria"] = {{"trace", e.by_trace()}, {"eigen", e.by_eigen()}, {"multiplier", e.by_multiplier()}};
        r["margin"] = margin_json(e.margin());
        r["notes"] = json::array({e.what()});
        r["verdict"] = "indeterminate";
        return {r, kIndeterminate};
    }
}

inline Outcome cmd_conjugator(const std::string& ft, const std::string& gt, const Settings& s) {
    const MoebiusMap f = parse_map(ft);
    const MoebiusMap g = parse_map(gt);
    json r{{"f", map_json(f)}, {"g", map_json(g)}, {"trace_f", to_json(trace_of(f))}, {"trace_g", to_json(trace_of(g))}};
    const auto h = conjugator(f, g, s.tol);
    if (!h) {
        r["conjugator"] = nullptr;
        r["verdict"] = "not conjugate";
        return {r, kNegative};
    }
    MapSampler sampler(s.seed);
    r["conjugator"] = map_json(*h);
    r["residual"] = conjugation_residual(f, g, *h, sampler);
    r["verdict"] = "conjugate";
    return {r, kOk};
}

inline Outcome cmd_canonical(const std::string& text, bool topological, const Settings& s) {
    const MoebiusMap f = parse_map(text);
    const ConjClass cls = classify(f, s.tol);
    MoebiusMap form;
    if (cls != ConjClass::Identity) form = topological ? topo_canonical_form(f, s.tol) : canonical_conjugacy_form(f, s.tol);
    return {{{"input", map_json(f)},
             {"class", std::string(to_string(cls))},
             {"kind", topological ? "topological" : "moebius"},
             {"canonical_form", map_json(form)}},
            kOk};
}

inline Outcome cmd_orbit(const std::string& text, const std::string& seed_point, long count, const std::string& svg,
                         const std::string& csv) {
    if (count < 1) throw InvalidArgumentError("iteration count must be at least 1");
    const MoebiusMap f = parse_map(text);
    const ExtendedComplex z0 = parse_point(seed_point);
    const auto pts = orbit(f, z0, static_cast<std::size_t>(count));
    auto write = [](const std::string& path, const std::string& body) {
        std::ofstream out(path, std::ios::binary);
        if (!out || !(out << body) || !out.flush()) throw InputError("cannot write " + path, 0);
    };
    json list = json::array();
    for (const auto& p : pts) list.push_back(to_json(p));
    json r{{"input", map_json(f)}, {"seed_point", to_json(z0)}, {"iterations", count}, {"points", list}};
    if (!svg.empty()) {
        write(svg, orbit_svg(pts, "orbit of z -> (" + format_map(f) + ") from " + format_point(z0)));
        r["svg"] = svg;
    }
    if (!csv.empty()) {
        write(csv, orbit_csv(pts));
        r["csv"] = csv;
    }
    return {r, kOk};
}

inline Outcome cmd_operator(const std::string& at, const std::string& bt, const std::string& field_name,
                            const Settings& s) {
    const Field field = field_name == "real" ? Field::Real : Field::Complex;
    const OperatorMatrix a = parse_operator(at, field);
    const OperatorMatrix b = parse_operator(bt, field);
    json r{{"A", operator_json(a)}, {"B", operator_json(b)}, {"field", std::string(to_string(field))}};
    if (a.size() != b.size()) throw InvalidArgumentError("operators must have the same size");
    const OperatorConditions c = field == Field::Real ? operator_conditions_real(a, b, s.tol)
                                                      : operator_conditions_complex(a, b, s.tol);
    r["partition_A"] = partition_json(c.partition_a);
    r["partition_B"] = partition_json(c.partition_b);
    json cond{{"A0_similar", c.zero_similar},
              {"A01_size", c.contracting_size},
              {"A1_similar", c.unit_similar},
              {"A1inf_size", c.expanding_size}};
    if (field == Field::Real) {
        cond["A01_orientation"] = c.contracting_orientation;
        cond["A1inf_orientation"] = c.expanding_orientation;
    }
    r["conditions"] = cond;
    r["margin"] = margin_json(c.margin.value());
    r["free_of_roots_of_unity"] = {{"A", free_of_roots_of_unity(a, s.tol)}, {"B", free_of_roots_of_unity(b, s.tol)}};
    r["verdict"] = c.verdict() ? "conjugate" : "not conjugate";
    return {r, c.verdict() ? kOk : kNegative};
}

inline Outcome cmd_selftest(std::size_t count, bool boundary, const Settings& s) {
    const SelftestReport rep = run_selftest(s.seed, count, s.tol, boundary);
    json failures = json::array();
    for (const auto& c : rep.failures)
        failures.push_back({{"index", c.index}, {"property", c.property}, {"f", format_map(c.f)},
                            {"g", format_map(c.g)}, {"detail", c.detail}});
    json r{{"pairs", rep.pairs},
           {"decided", rep.decided},
           {"conjugate_verdicts", rep.conjugate_verdicts},
           {"indeterminate", rep.indeterminate},
           {"conjugators_found", rep.conjugators_found},
           {"boundary_pairs", rep.boundary_pairs},
           {"vacuous", rep.pairs == 0},
           {"failures", failures},
           {"verdict", rep.ok() ? "pass" : "fail"}};
    return {r, rep.ok() ? kOk : kSelftestFailed};
}

namespace detail {

// Human-readable form: one "key: value" line per leaf, nested keys dotted.
inline void print_flat(std::ostream& out, const json& j, const std::string& prefix) {
    if (j.is_object() && !j.empty()) {
        for (const auto& [k, v] : j.items()) print_flat(out, v, prefix.empty() ? k : prefix + "." + k);
        return;
    }
    out << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
}

}  // namespace detail

inline constexpr const char* kFooter =
    "Exit codes: 0 true/ok, 1 selftest failure, 2 input error, 3 negative verdict,\n"
    "4 indeterminate (criteria disagree at the eps boundary), 5 unsupported size.\n"
    "Maps are written as four coefficients \"a,b,c,d\" for z -> (az+b)/(cz+d); complex\n"
    "literals look like 2, -1.5, 3i, 1-2i. Operators are rows separated by ';'.\n"
    "Classification labels real negative multipliers (mu < 0, mu != -1) Hyperbolic.";

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Classification and topological conjugacy of Moebius transformations and linear operators",
                 "moebius"};
    app.footer(kFooter);
    app.require_subcommand(1);
    app.fallthrough();

    Settings s;
    double eps = s.tol.eps_unit;
    int kmax = s.tol.kmax;
    app.add_option("--eps", eps, "unit-modulus and reality tolerance eps_unit")->check(CLI::PositiveNumber);
    app.add_option("--kmax", kmax, "root-of-unity search bound")->check(CLI::Range(1, 1 << 20));
    app.add_option("--seed", s.seed, "seed for sampling (selftest, conjugator residual)");
    app.add_flag("--json", s.json_output, "emit a JSON report instead of a table");
    app.add_flag("--timing", s.timing, "add elapsed time to the report (makes output non-deterministic)");

    std::string f_text, g_text, criterion = "all", seed_point, svg_path, csv_path, field = "complex";
    bool topological = false, boundary = false;
    long iterations = 10;
    std::size_t count = 1000;
    std::function<Outcome()> action;

    auto* classify_cmd = app.add_subcommand("classify", "class, fixed points, multipliers and canonical forms of a map");
    classify_cmd->add_option("map", f_text, "coefficients a,b,c,d")->required();
    classify_cmd->callback([&] { action = [&] { return cmd_classify(f_text, s); }; });

    auto* topo_cmd = app.add_subcommand("topo", "decide topological conjugacy of two maps");
    topo_cmd->add_option("f", f_text, "first map")->required();
    topo_cmd->add_option("g", g_text, "second map")->required();
    topo_cmd->add_option("--criterion", criterion, "which criterion decides")
        ->check(CLI::IsMember({"all", "trace", "eigen", "multiplier"}));
    topo_cmd->callback([&] { action = [&] { return cmd_topo(f_text, g_text, criterion, s); }; });

    auto* conj_cmd = app.add_subcommand("conjugator", "find h with g = h^-1 o f o h");
    conj_cmd->add_option("f", f_text, "first map")->required();
    conj_cmd->add_option("g", g_text, "second map")->required();
    conj_cmd->callback([&] { action = [&] { return cmd_conjugator(f_text, g_text, s); }; });

    auto* canon_cmd = app.add_subcommand("canonical", "canonical conjugacy representative of a map");
    canon_cmd->add_option("map", f_text, "coefficients a,b,c,d")->required();
    canon_cmd->add_flag("--topological", topological, "use the topological representative (2z, e^{it}z or z+1)");
    canon_cmd->callback([&] { action = [&] { return cmd_canonical(f_text, topological, s); }; });

    auto* orbit_cmd = app.add_subcommand("orbit", "iterate a map and plot the orbit");
    orbit_cmd->add_option("map", f_text, "coefficients a,b,c,d")->required();
    orbit_cmd->add_option("z0", seed_point, "starting point (complex literal or inf)")->required();
    orbit_cmd->add_option("-n,--iterations", iterations, "number of iterations");
    orbit_cmd->add_option("-o,--output", svg_path, "SVG output path");
    orbit_cmd->add_option("--csv", csv_path, "CSV output path for the point list");
    orbit_cmd->callback([&] { action = [&] { return cmd_orbit(f_text, seed_point, iterations, svg_path, csv_path); }; });

    auto* op_cmd = app.add_subcommand("operator", "decide topological conjugacy of two linear operators");
    op_cmd->add_option("A", f_text, "matrix rows, e.g. \"2,0;0,0.5\"")->required();
    op_cmd->add_option("B", g_text, "matrix rows")->required();
    op_cmd->add_option("--field", field, "scalar field")->check(CLI::IsMember({"real", "complex"}));
    op_cmd->callback([&] { action = [&] { return cmd_operator(f_text, g_text, field, s); }; });

    auto* self_cmd = app.add_subcommand("selftest", "run the cross-module property suite on a seeded ensemble");
    self_cmd->add_option("--count", count, "number of map pairs");
    self_cmd->add_flag("--boundary", boundary, "mix in pairs with |lambda| - 1 near 1e-10");
    self_cmd->callback([&] { action = [&] { return cmd_selftest(count, boundary, s); }; });

    std::string command;
    try {
        app.parse(argc, argv);
        command = app.get_subcommands().front()->get_name();
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kInputError;
    }
    s.tol.eps_unit = eps;
    s.tol.kmax = kmax;

    const auto start = std::chrono::steady_clock::now();
    Outcome result;
    try {
        result = action();
    } catch (const UnsupportedSizeError& e) {
        result = {{{"error", e.what()}}, kUnsupported};
    } catch (const InputError& e) {
        result = {{{"error", e.what()}, {"position", e.position()}}, kInputError};
    } catch (const Error& e) {
        result = {{{"error", e.what()}}, kInputError};
    }
    json& r = result.report;
    r["command"] = command;
    r["exit_code"] = result.code;
    r["settings"] = {{"eps_unit", s.tol.eps_unit}, {"equality", s.tol.equality}, {"kmax", s.tol.kmax}, {"seed", s.seed}};
    if (s.timing)
        r["elapsed_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

    if (r.contains("error")) err << "error: " << r["error"].get<std::string>() << '\n';
    if (s.json_output)
        out << r.dump(2) << '\n';
    else if (!r.contains("error"))
        detail::print_flat(out, r, "");
    return result.code;
}

}  // namespace moebius::cli
