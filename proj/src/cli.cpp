#include "nuspectra/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "nuspectra/bessel.hpp"
#include "nuspectra/constants.hpp"
#include "nuspectra/errors.hpp"
#include "nuspectra/molecular.hpp"
#include "nuspectra/verify.hpp"

namespace nuspectra::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

std::string num(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// RFC 4180: quote fields holding a separator, a quote or a line break.
std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

std::string csv_row(const std::vector<std::string>& fields) {
    std::string line;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) line += ',';
        line += csv_field(fields[i]);
    }
    return line + "\n";
}

/// Metadata line; floats already rendered as decimal strings by the caller.
std::string meta(const std::string& key, const std::string& value) { return "# " + key + "=" + value + "\n"; }

Json json_params(const Params& p) {
    Json j = Json::object();
    for (const auto& [k, v] : p) j[k] = v;
    return j;
}

Json json_poly(const LowPoly& p) { return Json::array({p.c[0], p.c[1], p.c[2]}); }

Json json_epp(const ExpPowerProduct& e) {
    Json factors = Json::array();
    for (const auto& f : e.factors) factors.push_back({{"root", f.root}, {"power", f.power}});
    return {{"exponent", json_poly(e.exponent)}, {"factors", factors}};
}

int emit(const std::string& text, const std::string& path, std::ostream& out, std::ostream& err) {
    if (path.empty()) {
        out << text;
        return Ok;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        err << "error: cannot write " << path << "\n";
        return InvalidInput;
    }
    f << text;
    return f ? Ok : InvalidInput;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

int exit_code(ErrorCode code) {
    switch (code) {
    case ErrorCode::NoBoundStates:
    case ErrorCode::LevelNotBound: return NotBound;
    case ErrorCode::InvalidParams:
    case ErrorCode::DomainError:
    case ErrorCode::SupercriticalCharge:
    case ErrorCode::NoSolution: return InvalidInput;
    default: return VerificationFailed;
    }
}

int guarded(std::ostream& err, const std::function<int()>& body) {
    try {
        return body();
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code(e.code());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return VerificationFailed;
    }
}

std::pair<int, int> default_levels(const PotentialModel& m, const Params& p) {
    const int first = m.first_level(p);
    return {first, first + 9};
}

std::string header_params(const Params& p) {
    std::string s;
    for (const auto& [k, v] : p) s += meta("param." + k, num(v));
    return s;
}

// ---- wavefunction sampling ----

struct Column {
    std::string name;
    std::vector<double> values;
};

struct Samples {
    std::vector<double> x;
    std::vector<Column> columns;
    std::vector<std::pair<std::string, std::string>> metadata;
    Json json_meta = Json::object();
};

/// Walks outward from `start` until the state has decayed.
double decay_edge(const BoundState& s, double start, double step) {
    double peak = 0.0;
    for (int i = 0; i <= 40; ++i) peak = std::max(peak, std::abs(s.psi(start - step * (20 - i) * 0.05)));
    double x = start;
    for (int i = 0; i < 400; ++i) {
        x += step;
        const double v = std::abs(s.psi(x)) * std::sqrt(s.measure(std::abs(x)));
        if (v <= 1e-10 * std::max(peak, 1e-300)) break;
    }
    return x;
}

std::pair<double, double> default_range(const BoundState& s) {
    std::vector<double> marks = s.breakpoints;
    if (s.domain.lower_finite()) marks.push_back(s.domain.lower);
    if (s.domain.upper_finite()) marks.push_back(s.domain.upper);
    if (marks.empty()) marks.push_back(0.0);
    const auto [lo_it, hi_it] = std::minmax_element(marks.begin(), marks.end());
    const double span = std::max(*hi_it - *lo_it, 1.0);
    const double lo = s.domain.lower_finite() ? s.domain.lower : decay_edge(s, *lo_it, -0.25 * span);
    const double hi = s.domain.upper_finite() ? s.domain.upper : decay_edge(s, *hi_it, 0.25 * span);
    return {lo, hi};
}

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i) x[i] = i + 1 == n ? b : a + (b - a) * i / (n - 1);
    return x;
}

Samples sample_states(const PotentialModel& m, const Params& p, int first, int last, const GridFlags& g) {
    Samples out;
    std::vector<BoundState> states;
    for (int level = first; level <= last; ++level) states.push_back(m.state(p, level));
    double lo = 0.0, hi = 0.0;
    if (!g.from || !g.to) {
        lo = std::numeric_limits<double>::infinity();
        hi = -lo;
        for (const auto& s : states) {
            const auto [a, b] = default_range(s);
            lo = std::min(lo, a);
            hi = std::max(hi, b);
        }
    }
    // Morse states live on the whole line but only r >= 0 is physical; the cut-off tail is negligible.
    if (m.id() == PotentialId::Morse || m.id() == PotentialId::MorseRotation) lo = std::max(lo, 0.0);
    lo = g.from.value_or(lo);
    hi = g.to.value_or(hi);
    if (!(hi > lo) || g.points < 2) fail(ErrorCode::InvalidParams, "sampling grid needs from < to and at least 2 points");
    out.x = linspace(lo, hi, g.points);

    Json levels = Json::array();
    for (const auto& s : states) {
        const int n = s.quantum_numbers.at(m.level_label());
        const std::string tag = std::to_string(n);
        const char* names[2] = {"f_", "g_"};
        for (std::size_t c = 0; c < s.components.size(); ++c) {
            Column col{s.components.size() == 1 ? "psi_" + tag : names[c] + tag, {}};
            for (double x : out.x) {
                const double v = s.domain.contains(x) || (x == s.domain.lower || x == s.domain.upper) ? s.components[c](x) : 0.0;
                col.values.push_back(std::isfinite(v) ? v : 0.0);
            }
            out.columns.push_back(std::move(col));
        }
        out.metadata.push_back({"level." + tag + ".energy", num(s.energy)});
        out.metadata.push_back({"level." + tag + ".normalization", num(s.normalization)});
        Json qn = Json::object();
        for (const auto& [k, v] : s.quantum_numbers) qn[k] = v;
        levels.push_back({{"quantum_numbers", qn}, {"energy", s.energy}, {"normalization", s.normalization}});
    }
    out.metadata.push_back({"measure", states.front().weight_formula});
    out.metadata.push_back({"units", states.front().units});
    out.json_meta["measure"] = states.front().weight_formula;
    out.json_meta["units"] = states.front().units;
    out.json_meta["levels"] = levels;
    return out;
}

std::string render_samples(const Samples& s, const std::string& potential, const Params& params, const std::string& xname,
                           Format format) {
    if (format == Format::Csv) {
        std::string text = meta("schema_version", std::to_string(kSchemaVersion)) + meta("potential", potential) +
                           header_params(params);
        for (const auto& [k, v] : s.metadata) text += meta(k, v);
        std::vector<std::string> head{xname};
        for (const auto& c : s.columns) head.push_back(c.name);
        text += csv_row(head);
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            std::vector<std::string> row{num(s.x[i])};
            for (const auto& c : s.columns) row.push_back(num(c.values[i]));
            text += csv_row(row);
        }
        return text;
    }
    Json results = Json::array();
    for (std::size_t i = 0; i < s.x.size(); ++i) {
        Json r = Json::object();
        r[xname] = s.x[i];
        for (const auto& c : s.columns) r[c.name] = c.values[i];
        results.push_back(std::move(r));
    }
    Json j = {{"schema_version", kSchemaVersion}, {"potential", potential}, {"params", json_params(params)}};
    for (const auto& [k, v] : s.json_meta.items()) j[k] = v;
    j["results"] = std::move(results);
    return dump(j);
}

int figure_two(Format format, const std::string& output, std::ostream& out, std::ostream& err) {
    const ModHulthenParams m{1.0, 2.0, 1.0};
    const PotentialOverlay o = morse_hulthen_overlay(m, 0.5, 5.0, 451);
    Samples s;
    s.x = o.r;
    s.columns = {{"morse", o.morse}, {"mod_hulthen", o.mod_hulthen}};
    s.metadata = {{"morse.D", num(o.D)},
                  {"morse.alpha", num(o.alpha)},
                  {"morse.r0", num(o.r0)},
                  {"morse.r_min", num(o.morse_min)},
                  {"mod_hulthen.r_min", num(o.hulthen_min)}};
    s.json_meta["morse"] = {{"D", o.D}, {"alpha", o.alpha}, {"r0", o.r0}, {"r_min", o.morse_min}};
    s.json_meta["mod_hulthen"] = {{"r_min", o.hulthen_min}};
    const Params p{{"V0", m.V0}, {"a", m.a}, {"b", m.b}};
    return emit(render_samples(s, "morse_vs_mod_hulthen", p, "r", format), output, out, err);
}

// ---- tables ----

void table_records(const PotentialModel& m, Json& records, std::vector<std::vector<std::string>>& rows) {
    const std::string id(m.name());
    if (m.id() == PotentialId::Bessel) {
        for (double nu : {0.5, 1.0, 2.5}) {
            const BesselFixture f = bessel_reduction_fixture(nu);
            const ComplexBranch b = complex_branch(f.equation, 0, 0);
            auto cx = [](Complex z) { return Json::array({z.real(), z.imag()}); };
            auto cpoly = [&](const ComplexPoly& p) { return Json::array({cx(p.c[0]), cx(p.c[1]), cx(p.c[2])}); };
            records.push_back({{"potential", id},
                               {"params", {{"nu", nu}}},
                               {"engine", {{"k", cx(b.k)}, {"pi", cpoly(b.pi)}, {"tau", cpoly(b.tau)}, {"lambda", cx(b.lambda)}}},
                               {"table", {{"k", cx(f.k)}, {"pi", cpoly(f.pi)}, {"tau", cpoly(f.tau)}, {"lambda", cx(f.lambda)}}}});
            const std::string inst = "nu=" + num(nu);
            auto add = [&](const std::string& q, Complex e, Complex t) {
                rows.push_back({id, inst, "", "", q + ".re", num(e.real()), num(t.real())});
                rows.push_back({id, inst, "", "", q + ".im", num(e.imag()), num(t.imag())});
            };
            add("k", b.k, f.k);
            add("lambda", b.lambda, f.lambda);
            for (int i = 0; i < 3; ++i) {
                add("pi." + std::to_string(i), b.pi.c[i], f.pi.c[i]);
                add("tau." + std::to_string(i), b.tau.c[i], f.tau.c[i]);
            }
        }
        return;
    }
    for (const auto& inst : m.regression_instances()) {
        const Params p = m.resolve(inst.params);
        const double e = m.energy(p, inst.level);
        const NuEquation eq = m.equation(p, e);
        const NuBranch b = select_bound_state_branch(eq);
        const auto row = m.table_row(p, e);
        if (!row) fail(ErrorCode::DomainError, "no table row for " + id);
        const double mismatch = table_mismatch(eq, b, *row);
        records.push_back({{"potential", id},
                           {"params", json_params(p)},
                           {"level", inst.level},
                           {"energy", e},
                           {"engine",
                            {{"k", b.k}, {"pi", json_poly(b.pi)}, {"tau", json_poly(b.tau)}, {"lambda", b.lambda},
                             {"phi", json_epp(b.phi)}, {"rho", json_epp(b.rho)}}},
                           {"table",
                            {{"k", row->k}, {"pi", json_poly(row->pi)}, {"tau", json_poly(row->tau)}, {"lambda", row->lambda},
                             {"phi", json_epp(row->phi)}, {"rho", json_epp(row->rho)}}},
                           {"mismatch", mismatch}});
        std::string inst_text;
        for (const auto& [k, v] : p) inst_text += (inst_text.empty() ? "" : ";") + k + "=" + num(v);
        const std::string lv = std::to_string(inst.level), en = num(e);
        auto add = [&](const std::string& q, double eng, double tab) { rows.push_back({id, inst_text, lv, en, q, num(eng), num(tab)}); };
        add("k", b.k, row->k);
        add("lambda", b.lambda, row->lambda);
        for (int i = 0; i < 3; ++i) {
            add("pi." + std::to_string(i), b.pi.c[i], row->pi.c[i]);
            add("tau." + std::to_string(i), b.tau.c[i], row->tau.c[i]);
        }
    }
}

Format parse_format(const std::string& s) { return s == "csv" ? Format::Csv : Format::Json; }

} // namespace

Params parse_params(const std::vector<std::string>& items) {
    Params p;
    for (const auto& item : items) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == item.size())
            fail(ErrorCode::InvalidParams, "expected key=value, got '" + item + "'");
        const std::string key = item.substr(0, eq), text = item.substr(eq + 1);
        char* end = nullptr;
        const double v = std::strtod(text.c_str(), &end);
        if (end == text.c_str() || *end != '\0' || !std::isfinite(v))
            fail(ErrorCode::InvalidParams, "value of '" + key + "' is not a finite number");
        if (!p.emplace(key, v).second) fail(ErrorCode::InvalidParams, "parameter '" + key + "' given twice");
    }
    return p;
}

std::pair<int, int> parse_levels(const std::string& text) {
    auto to_int = [&](const std::string& s) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (s.empty() || used != s.size() || v < 0) fail(ErrorCode::InvalidParams, "bad level range '" + text + "'");
        return v;
    };
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
        const int n = to_int(text);
        return {n, n};
    }
    const int a = to_int(text.substr(0, dots)), b = to_int(text.substr(dots + 2));
    if (b < a) fail(ErrorCode::InvalidParams, "empty level range '" + text + "'");
    return {a, b};
}

int cmd_spectrum(const RunConfig& c, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const PotentialModel& m = model(c.potential);
        const Params p = m.resolve(c.params);
        const auto [first, last] = c.levels.value_or(default_levels(m, p));
        const Spectrum s = spectrum(m.id(), p, first, last);
        if (s.levels.empty())
            fail(ErrorCode::LevelNotBound, "no bound level in " + std::to_string(first) + ".." + std::to_string(last) + " (" +
                                               std::to_string(s.level_count) + " bound levels)");
        if (s.truncated && c.levels)
            err << "note: " << s.level_count << " bound levels; the range was clipped\n";
        const bool rule = s.level_count >= 0;
        if (c.format == Format::Csv) {
            std::string text = meta("schema_version", std::to_string(kSchemaVersion)) + meta("potential", c.potential) +
                               header_params(p) + meta("level_count", std::to_string(s.level_count));
            std::vector<std::string> head;
            for (const auto& [k, v] : s.levels.front().quantum_numbers) head.push_back(k);
            head.insert(head.end(), {"energy", "units", "level_count_rule_applied"});
            text += csv_row(head);
            for (const auto& lv : s.levels) {
                std::vector<std::string> row;
                for (const auto& [k, v] : lv.quantum_numbers) row.push_back(std::to_string(v));
                row.insert(row.end(), {num(lv.energy), s.units, rule ? "true" : "false"});
                text += csv_row(row);
            }
            return emit(text, c.output, out, err);
        }
        Json results = Json::array();
        for (const auto& lv : s.levels) {
            Json qn = Json::object();
            for (const auto& [k, v] : lv.quantum_numbers) qn[k] = v;
            results.push_back({{"quantum_numbers", qn}, {"energy", lv.energy}, {"units", s.units}, {"level_count_rule_applied", rule}});
        }
        const Json j = {{"schema_version", kSchemaVersion}, {"potential", c.potential}, {"params", json_params(p)}, {"results", results}};
        return emit(dump(j), c.output, out, err);
    });
}

int cmd_wavefunction(const RunConfig& c, const GridFlags& g, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        if (g.figure == 2) return figure_two(c.format, c.output, out, err);
        RunConfig cfg = c;
        GridFlags grid = g;
        if (g.figure == 1) {
            cfg.potential = "harmonic_1d";
            cfg.params = {};
            cfg.levels = {{0, 4}};
            grid = {-3.0, 3.0, 601, 1};
        } else if (g.figure != 0) {
            fail(ErrorCode::InvalidParams, "figure must be 1 or 2");
        }
        if (cfg.potential.empty()) fail(ErrorCode::InvalidParams, "--potential is required");
        const PotentialModel& m = model(cfg.potential);
        const Params p = m.resolve(cfg.params);
        const int first = m.first_level(p);
        const auto [a, b] = cfg.levels.value_or(std::pair{first, first});
        const Samples s = sample_states(m, p, a, b, grid);
        const CoordinateMap cm = m.coordinate_map(p);
        const bool radial = cm.physical.lower == 0.0 && !cm.physical.upper_finite() && m.id() != PotentialId::ModPoschlTeller;
        const std::string xname = m.id() == PotentialId::SphericalHarmonics ? "theta" : radial ? "r" : "x";
        return emit(render_samples(s, cfg.potential, p, xname, cfg.format), cfg.output, out, err);
    });
}

int cmd_verify(const std::string& scope_text, const std::string& tolerances, Format format, const std::string& output,
               std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto scope = parse_scope(scope_text);
        if (!scope) fail(ErrorCode::InvalidParams, "unknown scope '" + scope_text + "'");
        const Tolerances tol = tolerances.empty() ? tolerances_from_env() : parse_tolerances(tolerances, tolerances_from_env());
        const VerifyReport r = run_verification(*scope, tol);
        std::string text;
        if (format == Format::Csv) {
            text = meta("schema_version", std::to_string(kSchemaVersion)) + meta("scope", std::string(to_string(*scope)));
            text += csv_row({"suite", "name", "passed", "measured", "tolerance", "detail"});
            for (const auto& c : r.checks)
                text += csv_row({c.suite, c.name, c.passed ? "true" : "false", num(c.measured), num(c.tolerance), c.detail});
        } else {
            Json checks = Json::array();
            for (const auto& c : r.checks)
                checks.push_back({{"suite", c.suite}, {"name", c.name}, {"passed", c.passed}, {"measured", c.measured},
                                  {"tolerance", c.tolerance}, {"detail", c.detail}});
            const Json j = {{"schema_version", kSchemaVersion}, {"scope", to_string(*scope)}, {"passed", r.all_passed()},
                            {"checks", checks}};
            text = dump(j);
        }
        if (const int rc = emit(text, output, out, err); rc != Ok) return rc;
        const auto failures = r.failures();
        if (failures.empty()) return int(Ok);
        err << failures.size() << " of " << r.checks.size() << " checks failed:\n";
        for (const auto* f : failures)
            err << "  " << f->suite << " " << f->name << " measured " << num(f->measured) << " tolerance " << num(f->tolerance)
                << (f->detail.empty() ? "" : " (" + f->detail + ")") << "\n";
        return int(VerificationFailed);
    });
}

int cmd_tables(const std::string& potential, Format format, const std::string& output, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        Json records = Json::array();
        std::vector<std::vector<std::string>> rows;
        if (potential.empty()) {
            for (const auto* m : all_models()) table_records(*m, records, rows);
        } else {
            table_records(model(potential), records, rows);
        }
        if (format == Format::Csv) {
            std::string text = meta("schema_version", std::to_string(kSchemaVersion));
            text += csv_row({"potential", "params", "level", "energy", "quantity", "engine", "table"});
            for (const auto& r : rows) text += csv_row(r);
            return emit(text, output, out, err);
        }
        const Json j = {{"schema_version", kSchemaVersion}, {"potential", potential.empty() ? "all" : potential},
                        {"params", Json::object()}, {"results", records}};
        return emit(dump(j), output, out, err);
    });
}

int cmd_molecules(Format format, const std::string& output, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        std::vector<MoleculeComparison> cmp;
        for (const auto& row : molecule_table()) cmp.push_back(compare_molecule(row));
        if (format == Format::Csv) {
            std::string text = meta("schema_version", std::to_string(kSchemaVersion)) +
                               meta("ev_per_wavenumber", num(constants::ev_per_wavenumber));
            text += csv_row({"molecule", "h2m_r0sq_cm", "D_cm", "alpha", "b_table", "b", "V0_table_cm", "V0_cm", "D_eV",
                             "V0_table_eV", "V0_eV", "flag"});
            for (const auto& c : cmp)
                text += csv_row({c.table.name, num(c.table.h2m_r0sq), num(c.table.D), num(c.table.alpha), num(c.table.b),
                                 num(c.b), num(c.table.V0), num(c.V0), num(c.D_ev), num(c.V0_table_ev), num(c.V0_ev),
                                 c.consistent ? "CONSISTENT" : "DISCREPANT"});
            return emit(text, output, out, err);
        }
        Json results = Json::array();
        for (const auto& c : cmp)
            results.push_back({{"molecule", c.table.name},
                               {"h2m_r0sq_cm", c.table.h2m_r0sq},
                               {"D_cm", c.table.D},
                               {"alpha", c.table.alpha},
                               {"table", {{"b", c.table.b}, {"V0_cm", c.table.V0}, {"V0_eV", c.V0_table_ev}}},
                               {"recomputed", {{"b", c.b}, {"V0_cm", c.V0}, {"V0_eV", c.V0_ev}}},
                               {"D_eV", c.D_ev},
                               {"b_rel_error", c.b_rel_error},
                               {"V0_rel_error", c.V0_rel_error},
                               {"flag", c.consistent ? "CONSISTENT" : "DISCREPANT"}});
        const Json j = {{"schema_version", kSchemaVersion}, {"potential", "mod_hulthen"},
                        {"params", {{"ev_per_wavenumber", constants::ev_per_wavenumber}}}, {"results", results}};
        return emit(dump(j), output, out, err);
    });
}

int cmd_list(Format format, const std::string& output, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        if (format == Format::Csv) {
            std::string text = meta("schema_version", std::to_string(kSchemaVersion));
            text += csv_row({"potential", "param", "default", "integer", "range", "description"});
            for (const auto* m : all_models())
                for (const auto& s : m->param_specs())
                    text += csv_row({std::string(m->name()), s.name, num(s.default_value), s.integer ? "true" : "false",
                                     std::string(to_string(s.range)), s.description});
            return emit(text, output, out, err);
        }
        Json results = Json::array();
        for (const auto* m : all_models()) {
            Json params = Json::array();
            for (const auto& s : m->param_specs())
                params.push_back({{"name", s.name}, {"default", s.default_value}, {"integer", s.integer},
                                  {"range", to_string(s.range)}, {"description", s.description}});
            results.push_back({{"id", m->name()}, {"summary", m->summary()}, {"units", m->units()},
                               {"level_label", m->level_label()}, {"params", params}});
        }
        const Json j = {{"schema_version", kSchemaVersion}, {"potential", "all"}, {"params", Json::object()}, {"results", results}};
        return emit(dump(j), output, out, err);
    });
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Closed-form bound-state spectra by the Nikiforov-Uvarov reduction", "nuspectra"};
    app.require_subcommand(0, 1);
    bool list_flag = false;
    app.add_flag("--list", list_flag, "list every potential with its parameter schema");

    RunConfig cfg;
    std::vector<std::string> param_items;
    std::string levels_text, format_text = "json", scope = "all", tol_text;
    GridFlags grid;
    double from = 0.0, to = 0.0;

    auto common = [&](CLI::App* sub, bool potential_required) {
        auto* opt = sub->add_option("--potential", cfg.potential, "catalog id, see `list`");
        if (potential_required) opt->required();
        sub->add_option("--param", param_items, "key=value, repeatable")->allow_extra_args(false);
        sub->add_option("--levels", levels_text, "level or range a..b");
    };
    auto output = [&](CLI::App* sub) {
        sub->add_option("--format", format_text, "json or csv")->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--output,-o", cfg.output, "write to this file instead of standard output");
    };

    auto* spec = app.add_subcommand("spectrum", "closed-form energies");
    common(spec, true);
    output(spec);
    auto* wave = app.add_subcommand("wavefunction", "sampled normalised eigenfunctions");
    common(wave, false);
    output(wave);
    auto* from_opt = wave->add_option("--from", from, "grid start");
    auto* to_opt = wave->add_option("--to", to, "grid end");
    wave->add_option("--points", grid.points, "grid points")->check(CLI::Range(2, 10000000));
    wave->add_option("--figure", grid.figure, "preset dataset: 1 oscillator states, 2 Morse vs modified Hulthen")
        ->check(CLI::IsMember({1, 2}));
    auto* ver = app.add_subcommand("verify", "run the verification suites");
    ver->add_option("--scope", scope, "all, tables, oracle, normalization or expansions")
        ->check(CLI::IsMember({"all", "tables", "oracle", "normalization", "expansions"}));
    ver->add_option("--tol", tol_text, "tolerance overrides name=value,...; NU_SPECTRA_TOL is read first");
    output(ver);
    auto* tab = app.add_subcommand("tables", "engine output next to the tabulated rows");
    tab->add_option("--potential", cfg.potential, "single catalog id");
    output(tab);
    auto* mol = app.add_subcommand("molecules", "Morse to modified Hulthen parameter matching for H2, HCl, I2");
    output(mol);
    auto* lst = app.add_subcommand("list", "potentials and parameter schemas");
    output(lst);

    std::vector<std::string> argv(args.rbegin(), args.rend());
    try {
        app.parse(argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return Ok;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return Ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return InvalidInput;
    }

    cfg.format = parse_format(format_text);
    if (list_flag || lst->parsed()) return cmd_list(cfg.format, cfg.output, out, err);
    if (mol->parsed()) return cmd_molecules(cfg.format, cfg.output, out, err);
    if (tab->parsed()) return cmd_tables(cfg.potential, cfg.format, cfg.output, out, err);
    if (ver->parsed()) return cmd_verify(scope, tol_text, cfg.format, cfg.output, out, err);

    const int rc = guarded(err, [&] {
        cfg.params = parse_params(param_items);
        if (!levels_text.empty()) cfg.levels = parse_levels(levels_text);
        return int(Ok);
    });
    if (rc != Ok) return rc;
    if (spec->parsed()) return cmd_spectrum(cfg, out, err);
    if (wave->parsed()) {
        if (*from_opt) grid.from = from;
        if (*to_opt) grid.to = to;
        return cmd_wavefunction(cfg, grid, out, err);
    }
    err << app.help();
    return InvalidInput;
}

} // namespace nuspectra::cli
