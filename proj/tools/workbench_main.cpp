// conformal-workbench: exact checks for the Block conformal algebra,
// its formal-distribution realization, and its rank one graded modules.
// Every subcommand prints a machine-readable report (JSON by default)
// and exits 0 on success, 1 when a check fails, 2 on bad input, 3 on
// an internal inconsistency.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "cwb/classify.hpp"
#include "cwb/conformal.hpp"
#include "cwb/distribution.hpp"
#include "cwb/repmod.hpp"
#include "cwb/table_io.hpp"

namespace {

using nlohmann::json;

constexpr const char* kVersion = "0.1.0";

struct OutputOpts {
    std::string format = "json";
    std::string path;
};

// Returns 0, or 2 when the output path cannot be written.
int write_report(const OutputOpts& out, const json& doc, const std::string& text) {
    std::string payload = out.format == "text" ? text : doc.dump(2) + "\n";
    if (out.path.empty()) {
        std::cout << payload;
        return 0;
    }
    std::ofstream f(out.path);
    if (!f) {
        std::cerr << "error: cannot write '" << out.path << "'\n";
        return 2;
    }
    f << payload;
    return 0;
}

cwb::ConformalAlgebra pick_algebra(const std::string& name) {
    if (name == "b") return cwb::ConformalAlgebra::block();
    if (name == "virasoro") return cwb::ConformalAlgebra::one_generator(cwb::rat(2));
    throw cwb::ParseError("unknown algebra '" + name + "'");
}

cwb::ModuleFamily pick_family(const std::string& name, const std::string& c_str,
                              const std::string& d_str) {
    if (name == "trivial") return cwb::ModuleFamily::trivial();
    if (d_str.empty()) throw cwb::ParseError("family " + name + " needs --D");
    cwb::Rat D = cwb::parse_rational(d_str);
    if (name == "vcd") {
        if (c_str.empty()) throw cwb::ParseError("family vcd needs --C");
        return cwb::ModuleFamily::vcd(cwb::parse_rational(c_str), D);
    }
    if (!c_str.empty())
        throw cwb::ParseError("family " + name + " does not take --C");
    if (name == "vd") return cwb::ModuleFamily::vd(D);
    if (name == "vdprime") return cwb::ModuleFamily::vdprime(D);
    throw cwb::ParseError("unknown family '" + name + "'");
}

cwb::Rat ipow(const cwb::Rat& base, int e) {
    cwb::Rat r = cwb::rat(1);
    for (int i = 0; i < (e < 0 ? -e : e); ++i) r *= base;
    return e >= 0 ? r : cwb::rat(1) / r;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Pure in (seed, gamma) so parallel evaluation order cannot matter.
cwb::Rat random_gauge_value(std::uint64_t seed, int gamma) {
    std::uint64_t h =
        splitmix64(seed ^ (static_cast<std::uint64_t>(static_cast<std::int64_t>(gamma)) *
                           0x100000001b3ULL));
    long num = 1 + static_cast<long>(h % 24);
    long den = 1 + static_cast<long>((h >> 8) % 9);
    long sign = ((h >> 16) & 1) ? 1 : -1;
    return cwb::rat(sign * num, den);
}

// Gauge specs: a nonzero rational for a constant gauge, "r^g" for the
// geometric gauge r^gamma, or "random" for seed-determined values.
std::function<cwb::Rat(int)> make_gauge(const std::string& spec, std::uint64_t seed) {
    if (spec == "random")
        return [seed](int g) { return random_gauge_value(seed, g); };
    auto caret = spec.find('^');
    if (caret != std::string::npos) {
        std::string tail = spec.substr(caret + 1);
        if (tail != "g" && tail != "gamma")
            throw cwb::ParseError("gauge '" + spec + "' should look like '3^g'");
        cwb::Rat base = cwb::parse_rational(spec.substr(0, caret));
        if (base == 0) throw cwb::ParseError("gauge base must be nonzero");
        return [base](int g) { return ipow(base, g); };
    }
    cwb::Rat c = cwb::parse_rational(spec);
    if (c == 0) throw cwb::ParseError("gauge must be nonzero");
    return [c](int) { return c; };
}

json gauge_json(const std::map<int, cwb::Rat>& gauge) {
    json o = json::object();
    for (const auto& [g, v] : gauge) o[std::to_string(g)] = cwb::rat_str(v);
    return o;
}

// Tables without the zero fallback must cover the window explicitly,
// otherwise sweeps would die mid-run on a lookup.
void require_window(const cwb::TableData& data, int window) {
    if (data.default_zero) return;
    for (int a = -window; a <= window; ++a)
        for (int g = -window; g <= window; ++g)
            if (!data.entries.count({a, g}))
                throw cwb::ParseError("table has no entry at (" + std::to_string(a) + ", " +
                                      std::to_string(g) + ") and no default_zero flag");
}

cwb::StructureCoeffTable load_table(const std::string& path, int window) {
    cwb::TableData data = cwb::parse_table_file(path);
    require_window(data, window);
    return data.as_table();
}

int run_bracket(const std::string& algebra, int alpha, int beta, const OutputOpts& out) {
    cwb::ConformalAlgebra alg = pick_algebra(algebra);
    cwb::LambdaImage img = alg.basis_bracket(alpha, beta);
    int index = alpha + beta;
    std::string poly = "0";
    json image = json::array();
    for (const auto& [idx, p] : img) {
        image.push_back({{"index", idx}, {"poly", p.str()}});
        index = idx;
        poly = p.str();
    }
    json doc{{"command", "bracket"}, {"version", kVersion}, {"algebra", alg.name()},
             {"alpha", alpha},       {"beta", beta},        {"index", index},
             {"poly", poly},         {"image", image}};
    std::ostringstream t;
    t << "bracket (algebra " << alg.name() << "): alpha " << alpha << ", beta " << beta
      << "\n"
      << "index: " << index << "\npoly: " << poly << "\n";
    return write_report(out, doc, t.str());
}

json axiom_failures_json(const std::vector<cwb::AxiomFailure>& failures) {
    json arr = json::array();
    for (const auto& f : failures)
        arr.push_back({{"axiom", f.axiom},
                       {"alpha", f.alpha},
                       {"beta", f.beta},
                       {"gamma", f.gamma},
                       {"detail", f.detail}});
    return arr;
}

int run_axioms(const std::string& algebra, int window, const OutputOpts& out) {
    cwb::ConformalAlgebra alg = pick_algebra(algebra);
    cwb::AxiomReport rep = cwb::axiom_sweep(alg, window);
    json doc{{"command", "axioms"},
             {"version", kVersion},
             {"algebra", alg.name()},
             {"window", window},
             {"sesqui_checked", rep.sesqui_checked},
             {"skew_checked", rep.skew_checked},
             {"jacobi_checked", rep.jacobi_checked},
             {"failures", axiom_failures_json(rep.failures)},
             {"elapsed_ms", rep.elapsed_ms}};
    std::ostringstream t;
    t << "axioms: algebra " << alg.name() << ", window " << window << "\n"
      << "sesquilinearity checked: " << rep.sesqui_checked << "\n"
      << "skew checked: " << rep.skew_checked << "\n"
      << "jacobi checked: " << rep.jacobi_checked << "\n"
      << "failures: " << rep.failures.size() << "\n";
    for (const auto& f : rep.failures)
        t << "  " << f.axiom << " at (" << f.alpha << ", " << f.beta << ", " << f.gamma
          << "): " << f.detail << "\n";
    t << "elapsed ms: " << rep.elapsed_ms << "\n";
    int rc = write_report(out, doc, t.str());
    if (rc) return rc;
    return rep.ok() ? 0 : 1;
}

int run_bridge(const std::string& algebra, int window, int depth, int guard, int lambda_cap,
               int max_j, const OutputOpts& out) {
    cwb::ConformalAlgebra alg = pick_algebra(algebra);
    cwb::TruncationPolicy pol{depth, guard};
    cwb::BridgeReport rep = cwb::bridge_sweep(alg, window, pol, lambda_cap, max_j);
    json doc{{"command", "bridge"},
             {"version", kVersion},
             {"algebra", alg.name()},
             {"window", window},
             {"depth", depth},
             {"guard", guard},
             {"lambda_cap", lambda_cap},
             {"max_j", max_j},
             {"pairs_checked", rep.pairs_checked},
             {"jproducts_checked", rep.jproducts_checked},
             {"failures", rep.failures},
             {"elapsed_ms", rep.elapsed_ms}};
    std::ostringstream t;
    t << "bridge: algebra " << alg.name() << ", window " << window << ", depth " << depth
      << ", guard " << guard << "\n"
      << "pairs checked: " << rep.pairs_checked << "\n"
      << "j-products checked: " << rep.jproducts_checked << "\n"
      << "failures: " << rep.failures.size() << "\n";
    for (const auto& f : rep.failures) t << "  " << f << "\n";
    t << "elapsed ms: " << rep.elapsed_ms << "\n";
    int rc = write_report(out, doc, t.str());
    if (rc) return rc;
    return rep.ok() ? 0 : 1;
}

json module_failures_json(const std::vector<cwb::ModuleSweepFailure>& failures) {
    json arr = json::array();
    for (const auto& f : failures)
        arr.push_back({{"alpha", f.alpha},
                       {"beta", f.beta},
                       {"gamma", f.gamma},
                       {"detail", f.detail}});
    return arr;
}

int run_module_check(const std::string& family, const std::string& c_str,
                     const std::string& d_str, const std::string& input, int window,
                     const OutputOpts& out) {
    cwb::StructureCoeffTable table =
        input.empty() ? cwb::from_family(pick_family(family, c_str, d_str))
                      : load_table(input, window);
    cwb::ModuleSweepReport rep = cwb::table_sweep(table, window);
    json doc{{"command", "module-check"},
             {"version", kVersion},
             {"table", table.name},
             {"window", window},
             {"checked", rep.triples_checked},
             {"failures", module_failures_json(rep.failures)},
             {"elapsed_ms", rep.elapsed_ms}};
    std::ostringstream t;
    t << "module-check: " << table.name << ", window " << window << "\n"
      << "checked: " << rep.triples_checked << "\n"
      << "failures: " << rep.failures.size() << "\n";
    for (const auto& f : rep.failures)
        t << "  (" << f.alpha << ", " << f.beta << ", " << f.gamma << "): " << f.detail
          << "\n";
    t << "elapsed ms: " << rep.elapsed_ms << "\n";
    int rc = write_report(out, doc, t.str());
    if (rc) return rc;
    return rep.ok() ? 0 : 1;
}

int run_module_iso(const std::string& left, const std::string& right, int window,
                   const OutputOpts& out) {
    // The shift search reads the left table at gamma + n for |n| up to
    // the window, so without a zero fallback it must cover twice the
    // range in gamma.
    cwb::TableData left_data = cwb::parse_table_file(left);
    if (!left_data.default_zero)
        for (int a = -window; a <= window; ++a)
            for (int g = -2 * window; g <= 2 * window; ++g)
                if (!left_data.entries.count({a, g}))
                    throw cwb::ParseError("left table has no entry at (" +
                                          std::to_string(a) + ", " + std::to_string(g) +
                                          ") and no default_zero flag");
    cwb::StructureCoeffTable t1 = left_data.as_table();
    cwb::StructureCoeffTable t2 = load_table(right, window);
    auto witness = cwb::is_isomorphic_diagonal(t1, t2, window);
    json doc{{"command", "module-iso"},
             {"version", kVersion},
             {"left", left},
             {"right", right},
             {"window", window},
             {"isomorphic", witness.has_value()}};
    std::ostringstream t;
    t << "module-iso: window " << window << "\n";
    if (witness) {
        doc["shift"] = witness->shift;
        doc["gauge"] = gauge_json(witness->gauge);
        t << "isomorphic: yes\nshift: " << witness->shift << "\ngauge:\n";
        for (const auto& [g, v] : witness->gauge)
            t << "  C_" << g << " = " << cwb::rat_str(v) << "\n";
    } else {
        t << "isomorphic: no\n";
    }
    int rc = write_report(out, doc, t.str());
    if (rc) return rc;
    return witness ? 0 : 1;
}

int run_classify(const std::string& family, const std::string& c_str,
                 const std::string& d_str, const std::string& gauge_spec, int shift,
                 const std::string& input, int window, int max_degree, std::uint64_t seed,
                 const OutputOpts& out) {
    cwb::StructureCoeffTable table{"", nullptr};
    if (!input.empty()) {
        table = load_table(input, window);
    } else if (!family.empty()) {
        table = cwb::from_family(pick_family(family, c_str, d_str));
        if (shift != 0) table = cwb::shift_basis(table, shift);
        if (!gauge_spec.empty())
            table = cwb::rescale_basis(table, make_gauge(gauge_spec, seed));
        std::ostringstream n;
        n << table.name;
        if (shift != 0) n << " shifted by " << shift;
        if (!gauge_spec.empty()) n << " gauged by " << gauge_spec;
        table.name = n.str();
    } else {
        throw cwb::ParseError("classify needs --input or --family");
    }
    cwb::DeductionReport rep = cwb::classify(table, window, max_degree);
    json doc{{"command", "classify"},
             {"version", kVersion},
             {"table", table.name},
             {"window", window},
             {"max_degree", max_degree},
             {"case", cwb::case_tag_str(rep.case_tag)},
             {"ok", rep.ok},
             {"steps", rep.steps}};
    if (rep.ok) {
        doc["family"] = cwb::family_tag_str(rep.family->tag);
        doc["family_str"] = rep.family->str();
        if (rep.family->tag != cwb::FamilyTag::Trivial) {
            doc["C"] = cwb::rat_str(rep.C_rep);
            doc["C_raw"] = cwb::rat_str(rep.C_raw);
            doc["D"] = cwb::rat_str(rep.D);
            doc["shift"] = rep.shift;
            doc["gauge"] = gauge_json(rep.gauge);
            doc["window_limited"] = rep.window_limited;
            doc["checked_triples"] = rep.checked_triples;
            doc["reconstructed_entries"] = rep.reconstructed_entries;
        }
    } else {
        doc["error"] = rep.error;
        doc["error_kind"] = rep.error_kind;
    }
    std::ostringstream t;
    t << "classify: " << table.name << ", window " << window << ", max degree "
      << max_degree << "\n"
      << "case: " << cwb::case_tag_str(rep.case_tag) << "\n"
      << "ok: " << (rep.ok ? "yes" : "no") << "\n";
    if (rep.ok) {
        t << "family: " << rep.family->str() << "\n";
        if (rep.family->tag != cwb::FamilyTag::Trivial) {
            t << "C: " << cwb::rat_str(rep.C_rep) << " (raw " << cwb::rat_str(rep.C_raw)
              << ", shift " << rep.shift << ")\n"
              << "D: " << cwb::rat_str(rep.D) << "\n"
              << "window limited: " << (rep.window_limited ? "yes" : "no") << "\n"
              << "checked triples: " << rep.checked_triples << "\n"
              << "reconstructed entries: " << rep.reconstructed_entries << "\n";
        }
    } else {
        t << "error (" << rep.error_kind << "): " << rep.error << "\n";
    }
    t << "steps:\n";
    for (size_t i = 0; i < rep.steps.size(); ++i)
        t << "  " << (i + 1) << ". " << rep.steps[i] << "\n";
    int rc = write_report(out, doc, t.str());
    if (rc) return rc;
    if (rep.ok) return 0;
    return rep.error_kind == "internal" ? 3 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact checks for the Block conformal algebra and its rank one modules"};
    app.set_version_flag("--version", std::string("conformal-workbench ") + kVersion);
    app.require_subcommand(1);
    app.fallthrough();

    OutputOpts out;
    app.add_option("--format", out.format, "Report format")
        ->check(CLI::IsMember({"json", "text"}))
        ->capture_default_str();
    app.add_option("--out", out.path, "Write the report to this file instead of stdout");

    std::string algebra = "b";
    app.add_option("--algebra", algebra, "Structure table to check")
        ->check(CLI::IsMember({"b", "virasoro"}))
        ->capture_default_str();

    std::uint64_t seed = 20250101;
    app.add_option("--seed", seed, "Seed for randomized gauges")->capture_default_str();

    auto* brk = app.add_subcommand("bracket", "Lambda bracket of two basis generators");
    int br_alpha = 0, br_beta = 0;
    brk->add_option("--alpha", br_alpha, "Left generator index")->required();
    brk->add_option("--beta", br_beta, "Right generator index")->required();

    auto* axioms = app.add_subcommand(
        "axioms", "Sesquilinearity, skew symmetry, and Jacobi on a window");
    int ax_window = 3;
    axioms->add_option("--window", ax_window, "Index range [-N, N]")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    auto* bridge = app.add_subcommand(
        "bridge", "Residue-formula products against the closed bracket table");
    int bw = 3, depth = 12, guard = 4, lambda_cap = 4, max_j = 4;
    bridge->add_option("--window", bw, "Index range [-N, N]")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    bridge->add_option("--depth", depth, "Kept exponent range for truncated series")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    bridge->add_option("--guard", guard, "Shift budget; must stay below depth")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    bridge->add_option("--lambda-cap", lambda_cap, "Highest lambda power compared")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    bridge->add_option("--max-j", max_j, "Highest j-product compared")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();

    auto* mcheck = app.add_subcommand(
        "module-check", "Functional equation sweep for a module structure table");
    std::string mc_family, mc_C, mc_D, mc_input;
    int mc_window = 4;
    mcheck->add_option("--family", mc_family, "vcd | vd | vdprime | trivial");
    mcheck->add_option("--C", mc_C, "Rational C parameter (vcd)");
    mcheck->add_option("--D", mc_D, "Rational D parameter");
    mcheck->add_option("--input", mc_input, "Table JSON file instead of a family");
    mcheck->add_option("--window", mc_window, "Index range [-N, N]")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    auto* miso = app.add_subcommand(
        "module-iso", "Search a shift plus diagonal gauge between two tables");
    std::string iso_left, iso_right;
    int iso_window = 4;
    miso->add_option("--left", iso_left, "Table JSON file")->required();
    miso->add_option("--right", iso_right, "Table JSON file")->required();
    miso->add_option("--window", iso_window, "Index range [-N, N]")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    auto* cls = app.add_subcommand(
        "classify", "Deduce the module family from a structure table");
    std::string cl_family, cl_C, cl_D, cl_gauge, cl_input;
    int cl_shift = 0, cl_window = 4, cl_maxdeg = 2;
    cls->add_option("--input", cl_input, "Table JSON file");
    cls->add_option("--family", cl_family, "Self-test: start from vcd | vd | vdprime | trivial");
    cls->add_option("--C", cl_C, "Rational C parameter (vcd)");
    cls->add_option("--D", cl_D, "Rational D parameter");
    cls->add_option("--gauge", cl_gauge, "Self-test gauge: rational, 'r^g', or 'random'");
    cls->add_option("--shift", cl_shift, "Self-test basis shift");
    cls->add_option("--window", cl_window, "Index range [-N, N]")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cls->add_option("--max-degree", cl_maxdeg, "Ansatz degree bound")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (brk->parsed()) return run_bracket(algebra, br_alpha, br_beta, out);
        if (axioms->parsed()) return run_axioms(algebra, ax_window, out);
        if (bridge->parsed())
            return run_bridge(algebra, bw, depth, guard, lambda_cap, max_j, out);
        if (mcheck->parsed())
            return run_module_check(mc_family, mc_C, mc_D, mc_input, mc_window, out);
        if (miso->parsed()) return run_module_iso(iso_left, iso_right, iso_window, out);
        if (cls->parsed())
            return run_classify(cl_family, cl_C, cl_D, cl_gauge, cl_shift, cl_input,
                                cl_window, cl_maxdeg, seed, out);
        std::cerr << "error: no subcommand\n";
        return 2;
    } catch (const cwb::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
