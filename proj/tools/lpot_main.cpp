#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "loewner/cft.hpp"
#include "loewner/errors.hpp"
#include "loewner/io.hpp"
#include "loewner/loops.hpp"
#include "loewner/potentials.hpp"
#include "loewner/uniformize.hpp"
#include "loewner/variation.hpp"

using namespace loewner;
using nlohmann::json;

namespace {

const double PI = 3.14159265358979323846;

void emit(const std::string& out_path, const std::string& text)
{
    if (out_path.empty())
        std::fputs(text.c_str(), stdout);
    else
        write_text_file(out_path, text);
}

std::pair<double, double> parse_range(const std::string& s)
{
    const auto pos = s.find(':');
    if (pos == std::string::npos || pos == 0 || pos + 1 == s.size())
        throw validation_error("range must be given as A:B");
    double a = 0.0, b = 0.0;
    std::size_t e1 = 0, e2 = 0;
    try {
        a = std::stod(s.substr(0, pos), &e1);
        b = std::stod(s.substr(pos + 1), &e2);
    } catch (const std::exception&) {
        throw validation_error("range endpoints must be numbers");
    }
    if (e1 != pos || e2 != s.size() - pos - 1)
        throw validation_error("range endpoints must be numbers");
    if (!(a > 0.0) || !(b > a))
        throw validation_error("range must satisfy 0 < A < B");
    return {a, b};
}

// {"kind": "zeta"|"characters", "c": <real>, "weights": [[h, n], ...]}
Trivialization trivialization_from_json(const std::string& text)
{
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw validation_error("trivialization: malformed JSON");
    if (!j.is_object() || !j.contains("kind") || !j.contains("c"))
        throw validation_error("trivialization: needs \"kind\" and \"c\"");
    if (!j["kind"].is_string() || !j["c"].is_number())
        throw validation_error("trivialization: \"kind\" must be a string, \"c\" a number");
    const std::string kind = j["kind"].get<std::string>();
    const double c = j["c"].get<double>();
    if (kind == "zeta") return make_zeta_trivialization(c);
    if (kind != "characters")
        throw validation_error("trivialization: kind must be \"zeta\" or \"characters\"");
    if (!j.contains("weights") || !j["weights"].is_array())
        throw validation_error("trivialization: characters need a \"weights\" array");
    std::vector<std::pair<double, int>> w;
    for (const auto& e : j["weights"]) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number_integer())
            throw validation_error("trivialization: weights must be [h, n] pairs, integer n");
        w.emplace_back(e[0].get<double>(), e[1].get<int>());
    }
    return make_character_trivialization(c, w);
}

// small random map with the pole pushed far from the origin so typical
// nested pairs stay on the admissible side
MoebiusMap seeded_moebius(unsigned seed)
{
    std::mt19937 rng(seed);
    auto unit = [&rng]() { return rng() / 4294967296.0; };
    const double alpha = 2.0 * PI * unit();
    const cpx b(0.3 * (2.0 * unit() - 1.0), 0.3 * (2.0 * unit() - 1.0));
    const cpx c(0.03 * (2.0 * unit() - 1.0), 0.03 * (2.0 * unit() - 1.0));
    return MoebiusMap::normalized(std::polar(1.0, alpha), b, c, cpx(1.0));
}

json breakdown_json(const PotentialBreakdown& b)
{
    return json{{"circle_term", b.circle_term},
                {"I1", b.I1},
                {"IA", b.IA},
                {"I2", b.I2},
                {"log_ratio_term", b.log_ratio_term},
                {"total", b.total}};
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"two-loop potential toolkit: uniformization, potentials, scans"};
    app.require_subcommand(1);

    std::string config_path, triv_path, out_path, mode, route = "both";
    std::string scan_range = "0.05:5", crit_range = "0.05:20";
    int max_degree = 1024, grunsky_n = 128, scan_grid = 200, crit_grid = 64;
    double tol = 1e-8;
    unsigned seed = 0;

    CLI::App* uni = app.add_subcommand("uniformize", "modulus and map series of a configuration");
    uni->add_option("config", config_path, "two-loop configuration JSON")->required();
    uni->add_option("--degree", max_degree, "truncation ceiling for the map series");
    uni->add_option("--tol", tol, "boundary residual tolerance");
    uni->add_option("--out", out_path, "output file (stdout when absent)");

    CLI::App* pot = app.add_subcommand("potential", "two-loop potential and its breakdown");
    pot->add_option("config", config_path, "two-loop configuration JSON")->required();
    pot->add_option("--route", route, "preschwarzian, lk, or both")
        ->check(CLI::IsMember({"preschwarzian", "lk", "both"}));
    pot->add_option("--degree", max_degree, "truncation ceiling for the map series");
    pot->add_option("--tol", tol, "boundary residual tolerance");
    pot->add_option("--seed", seed,
                    "apply a seeded random Moebius transformation before computing");
    pot->add_option("--out", out_path, "output file (stdout when absent)");

    CLI::App* scan = app.add_subcommand("scan-tau", "CSV scan over a modulus range");
    scan->add_option("mode", mode, "circles or criterion")
        ->required()
        ->check(CLI::IsMember({"circles", "criterion"}));
    scan->add_option("trivialization", triv_path, "trivialization JSON (criterion mode)");
    scan->add_option("--range", scan_range, "modulus range A:B");
    scan->add_option("--grid", scan_grid, "number of rows");
    scan->add_option("--out", out_path, "output file (stdout when absent)");

    CLI::App* gr = app.add_subcommand("grunsky", "weighted coefficient sums and their gap");
    gr->add_option("config", config_path, "two-loop configuration JSON")->required();
    gr->add_option("--degree", grunsky_n, "truncation order of the sums");
    gr->add_option("--tol", tol, "boundary residual tolerance");
    gr->add_option("--out", out_path, "output file (stdout when absent)");

    CLI::App* crit = app.add_subcommand("criterion", "classify the modulus-criterion minimizer");
    crit->add_option("trivialization", triv_path, "trivialization JSON")->required();
    crit->add_option("--range", crit_range, "modulus range A:B");
    crit->add_option("--grid", crit_grid, "scan grid size");
    crit->add_option("--out", out_path, "output file (stdout when absent)");

    CLI::App* var = app.add_subcommand("variation-check",
                                       "finite-difference vs Schwarzian pairing for the "
                                       "documented bump at 2+0.3i");
    var->add_option("config", config_path, "two-loop configuration JSON")->required();
    var->add_option("--out", out_path, "output file (stdout when absent)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (uni->parsed()) {
            TwoLoopConfig cfg = config_from_json(read_text_file(config_path));
            emit(out_path, uniformization_to_json(cfg.uniformization(tol, max_degree)));
        } else if (pot->parsed()) {
            TwoLoopConfig cfg = config_from_json(read_text_file(config_path));
            if (pot->count("--seed") > 0) cfg = apply_moebius(seeded_moebius(seed), cfg);
            const Uniformization& u = cfg.uniformization(tol, max_degree);
            json rep{{"route", route}, {"tau", u.tau}};
            PotentialBreakdown b;
            if (route != "lk") {
                b = lpot_two(cfg);
                rep["preschwarzian"] = breakdown_json(b);
            }
            if (route != "preschwarzian") {
                const double lk = lpot_two_via_lk(cfg);
                rep["lk"] = json{{"total", lk}};
                if (route == "both") rep["difference"] = lk - b.total;
            }
            rep["grunsky_gap"] = grunsky(u, 128).gap;
            emit(out_path, rep.dump(2) + "\n");
        } else if (scan->parsed()) {
            const auto [a, b] = parse_range(scan_range);
            if (scan_grid < 2) throw validation_error("grid must have at least 2 rows");
            std::string csv;
            if (mode == "circles") {
                csv = "tau,normalized_potential\n";
                for (int i = 0; i < scan_grid; ++i) {
                    const double tau = a + (b - a) * i / double(scan_grid - 1);
                    const double v = blm_interaction_circles(tau);
                    if (!std::isfinite(v))
                        throw nonfinite_error("scan produced a non-finite value");
                    csv += format_g17(tau) + "," + format_g17(v) + "\n";
                }
            } else {
                if (triv_path.empty())
                    throw validation_error("criterion mode needs a trivialization file");
                Trivialization t = trivialization_from_json(read_text_file(triv_path));
                csv = "q,log_g\n";
                for (int i = 0; i < scan_grid; ++i) {
                    const double tau = a + (b - a) * i / double(scan_grid - 1);
                    const double v = criterion(t, tau);
                    if (!std::isfinite(v))
                        throw nonfinite_error("scan produced a non-finite value");
                    csv += format_g17(std::exp(-PI / tau)) + "," + format_g17(v) + "\n";
                }
            }
            emit(out_path, csv);
        } else if (gr->parsed()) {
            TwoLoopConfig cfg = config_from_json(read_text_file(config_path));
            const Uniformization& u = cfg.uniformization(tol, max_degree);
            GrunskyData g = grunsky(u, grunsky_n);
            json rep{{"N", grunsky_n},
                     {"tau", u.tau},
                     {"lhs", g.lhs},
                     {"rhs", g.rhs},
                     {"gap", g.gap}};
            emit(out_path, rep.dump(2) + "\n");
        } else if (crit->parsed()) {
            Trivialization t = trivialization_from_json(read_text_file(triv_path));
            const auto [a, b] = parse_range(crit_range);
            CriterionResult r = classify_minimizer(t, a, b, crit_grid);
            json scan_rows = json::array();
            for (const auto& [tau, v] : r.scan) scan_rows.push_back({tau, v});
            json rep{{"kind", t.name},
                     {"c", t.c},
                     {"classification", minimizer_kind_name(r.classification)},
                     {"tau_star", r.tau_star ? json(*r.tau_star) : json()},
                     {"value_at_star", r.value_at_star ? json(*r.value_at_star) : json()},
                     {"scan", scan_rows}};
            emit(out_path, rep.dump(2) + "\n");
        } else if (var->parsed()) {
            TwoLoopConfig cfg = config_from_json(read_text_file(config_path));
            const BeltramiBump bump{cpx(2.0, 0.3), 0.5, cpx(0.05, 0.02)};
            const double eps = 1e-3;
            const VariationCheck vc = variation_check(cfg, bump, eps);
            json rep{{"bump",
                      json{{"center", {bump.center.real(), bump.center.imag()}},
                           {"radius", bump.radius},
                           {"amplitude", {bump.amplitude.real(), bump.amplitude.imag()}}}},
                     {"eps", eps},
                     {"fd", vc.fd},
                     {"rhs", vc.rhs},
                     {"rel_err", vc.rel_err}};
            emit(out_path, rep.dump(2) + "\n");
        }
    } catch (const validation_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const convergence_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const nonfinite_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 4;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
