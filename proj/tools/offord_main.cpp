// offord: exact Littlewood-Offord concentration, GAP structure, and random
// symmetric sign-matrix experiments, as reproducible machine-readable records.
//
// Every stochastic command is fully determined by (--seed, --workers, --trials);
// rationals are printed as "p/q", never as decimals. Exit codes: 0 success,
// 2 input error, 3 budget error, 64 unknown subcommand.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <set>

#include "offord/budget.hpp"
#include "offord/detector.hpp"
#include "offord/errors.hpp"
#include "offord/gap.hpp"
#include "offord/io.hpp"
#include "offord/linear.hpp"
#include "offord/multilinear.hpp"
#include "offord/random_symmetric.hpp"
#include "offord/rng.hpp"

using offord::Budget;
using offord::budget_error;
using offord::input_error;
using offord::Rational;
using json = nlohmann::ordered_json;

namespace {

const char* kUsage =
    "usage: offord <command> [options]\n"
    "\n"
    "commands:\n"
    "  rho-linear       concentration probability of a linear form (--input; --mu; --radius)\n"
    "  rho-bilinear     bilinear concentration probability (--input; --mu; --workers)\n"
    "  rho-quadratic    quadratic concentration probability (--input; --mu)\n"
    "  decoupling-check exact decoupling inequality comparison (--input)\n"
    "  halasz           ordered solution count R_l (--input --l)\n"
    "  stanley          rho of the reference multiset {-floor(n/2)..floor(n/2)} (--n; --mu)\n"
    "  pigeonhole       GAP pigeonhole lower bound 1/(n^r N) (--gap --n)\n"
    "  gap-reduce       rank reduction of a GAP against a multiset (--gap --input)\n"
    "  gap-properize    heuristic properization of a GAP (--gap)\n"
    "  detect           inverse structure search on a multiset (--input --rmax --nprime)\n"
    "  qn-exact         exact singularity probability of symmetric sign matrices (--n)\n"
    "  qn-mc            Monte Carlo singularity probability (--n --trials --seed --workers)\n"
    "  odlyzko          sign vectors inside the span of given sign rows (--input)\n"
    "  rank-increase    conditioned rank-jump frequency under bordering (--n --k --trials --seed)\n"
    "  cofactor         signed cofactor matrix, rank, optional rank-1 factor (--input)\n"
    "  kernel-height    kernel vector heights of a singular sign matrix (--input)\n"
    "  plant            planted structured instances with certificates (--kind --n --seed)\n"
    "\n"
    "common options: --format json|csv (default json), --budget N, --mu P/Q\n"
    "environment:    OFFORD_BUDGET overrides the default enumeration caps\n";

std::string csv_cell(const json& v) {
    std::string s;
    if (v.is_null())
        s = "";
    else if (v.is_string())
        s = v.get<std::string>();
    else if (v.is_array()) {
        bool nested = !v.empty() && v.front().is_array();
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) s += nested ? ";" : " ";
            s += csv_cell(v[i]);
        }
    } else
        s = v.dump();
    if (s.find_first_of(",\"\n;") != std::string::npos) {
        std::string quoted = "\"";
        for (char c : s) {
            if (c == '"') quoted += '"';
            quoted += c;
        }
        quoted += '"';
        return quoted;
    }
    return s;
}

void emit(const json& rec, const std::string& format) {
    if (format == "csv") {
        std::string header, row;
        bool first = true;
        for (const auto& [key, value] : rec.items()) {
            if (!first) {
                header += ',';
                row += ',';
            }
            header += key;
            row += csv_cell(value);
            first = false;
        }
        std::cout << header << '\n' << row << '\n';
    } else {
        std::cout << rec.dump() << '\n';
    }
}

json rational_array(const std::vector<Rational>& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(x.str());
    return a;
}

json matrix_json(const std::vector<std::vector<Rational>>& rows) {
    json a = json::array();
    for (const auto& r : rows) a.push_back(rational_array(r));
    return a;
}

offord::StepLaw law_from_mu(const std::string& mu) {
    if (mu.empty()) return offord::StepLaw::bernoulli();
    return offord::StepLaw::lazy(Rational::parse(mu));
}

struct Common {
    std::string format = "json";
    std::uint64_t budget_override = 0;
    Budget budget() const {
        Budget b = Budget::from_env();
        if (budget_override > 0) b.with_general_cap(budget_override);
        return b;
    }
};

void add_common(CLI::App& app, Common& c) {
    app.add_option("--format", c.format, "output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--budget", c.budget_override, "override the enumeration caps");
}

// seeded small-integer / small-rational vectors for the planted generators
std::vector<long long> seeded_int_vector(std::mt19937_64& eng, std::size_t n) {
    std::vector<long long> v(n);
    for (auto& x : v) {
        long long m = static_cast<long long>(eng() % 6) - 3;  // -3..2
        x = m >= 0 ? m + 1 : m;                               // skip 0
    }
    return v;
}

std::vector<Rational> seeded_rational_vector(std::mt19937_64& eng, std::size_t n) {
    std::vector<Rational> v(n);
    for (auto& x : v)
        x = Rational(static_cast<long>(eng() % 19) - 9, 1 + static_cast<long>(eng() % 4));
    return v;
}

int run_command(const std::string& cmd, std::vector<std::string> args) {
    CLI::App app{std::string("offord ") + cmd};
    Common common;
    add_common(app, common);

    std::string input, gap_path, mu, radius, kind, out_path;
    std::size_t n = 0, k = 0, rmax = 2, nprime = 0;
    unsigned l = 1, workers = 1;
    std::uint64_t trials = 0, seed = 0;

    auto opt_input = app.add_option("--input", input, "input file");
    auto opt_gap = app.add_option("--gap", gap_path, "GAP JSON file");
    auto opt_n = app.add_option("--n", n, "size parameter");
    auto opt_k = app.add_option("--k", k, "rank / order parameter");
    auto opt_l = app.add_option("--l", l, "Halasz order l");
    auto opt_trials = app.add_option("--trials", trials, "Monte Carlo trials");
    app.add_option("--seed", seed, "base seed");
    app.add_option("--workers", workers, "worker count");
    app.add_option("--mu", mu, "lazy step parameter in (0,1], e.g. 1/2");
    app.add_option("--radius", radius, "small-ball radius P/Q");
    app.add_option("--rmax", rmax, "maximum GAP rank to search (<= 2)");
    app.add_option("--nprime", nprime, "allowed exceptional elements");
    auto opt_kind = app.add_option("--kind", kind, "planted instance kind");
    app.add_option("--out", out_path, "also write the constructed matrix to this file");

    // per-command required flags
    std::set<std::string> needs_input = {"rho-linear", "rho-bilinear", "rho-quadratic",
                                         "decoupling-check", "halasz", "gap-reduce", "detect",
                                         "odlyzko", "cofactor", "kernel-height"};
    if (needs_input.count(cmd)) opt_input->required();
    if (cmd == "pigeonhole" || cmd == "gap-properize" || cmd == "gap-reduce") opt_gap->required();
    if (cmd == "stanley" || cmd == "pigeonhole" || cmd == "qn-exact" || cmd == "qn-mc" ||
        cmd == "rank-increase" || cmd == "plant")
        opt_n->required();
    if (cmd == "rank-increase") opt_k->required();
    if (cmd == "qn-mc" || cmd == "rank-increase") opt_trials->required();
    if (cmd == "halasz") opt_l->required();
    if (cmd == "plant") opt_kind->required();

    try {
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    const Budget budget = common.budget();
    json rec;
    rec["command"] = cmd;

    if (cmd == "rho-linear") {
        auto a = offord::load_multiset(input);
        auto law = law_from_mu(mu);
        auto r = offord::rho_linear(a, law, budget);
        rec["input"] = input;
        rec["n"] = a.size();
        rec["mu"] = mu.empty() ? "1" : Rational::parse(mu).str();
        rec["rho"] = r.rho.str();
        rec["at"] = r.at.str();
        if (!radius.empty()) {
            Rational rad = Rational::parse(radius);
            rec["radius"] = rad.str();
            rec["small_ball"] = offord::small_ball_linear(a, rad, law, budget).str();
        }
    } else if (cmd == "rho-bilinear") {
        auto m = offord::load_rect_matrix(input);
        auto r = offord::rho_bilinear(m, law_from_mu(mu), budget, workers);
        rec["input"] = input;
        rec["n"] = m.n();
        rec["mu"] = mu.empty() ? "1" : Rational::parse(mu).str();
        rec["workers"] = workers;
        rec["rho"] = r.rho.str();
        rec["at"] = r.at.str();
    } else if (cmd == "rho-quadratic") {
        auto m = offord::load_sym_matrix(input);
        auto r = offord::rho_quadratic(m, law_from_mu(mu), budget);
        rec["input"] = input;
        rec["n"] = m.n();
        rec["mu"] = mu.empty() ? "1" : Rational::parse(mu).str();
        rec["rho"] = r.rho.str();
        rec["at"] = r.at.str();
    } else if (cmd == "decoupling-check") {
        auto m = offord::load_sym_matrix(input);
        auto r = offord::decoupling_check(m, budget);
        rec["input"] = input;
        rec["n"] = m.n();
        rec["lhs"] = r.lhs.str();
        rec["rhs_mean"] = r.rhs_mean.str();
        rec["rhs_min"] = r.rhs_min.str();
        rec["holds"] = r.holds;
    } else if (cmd == "halasz") {
        auto a = offord::load_multiset(input);
        rec["input"] = input;
        rec["n"] = a.size();
        rec["l"] = l;
        rec["r_l"] = offord::halasz_Rl(a, l, budget).get_str();
    } else if (cmd == "stanley") {
        rec["n"] = n;
        rec["mu"] = mu.empty() ? "1" : Rational::parse(mu).str();
        rec["value"] = offord::stanley_reference(n, law_from_mu(mu), budget).str();
    } else if (cmd == "pigeonhole") {
        auto g = offord::load_gap(gap_path);
        rec["gap"] = gap_path;
        rec["n"] = n;
        rec["rank"] = g.rank();
        rec["volume"] = g.volume().get_str();
        rec["bound"] = offord::pigeonhole_lower_bound(g, n, budget).str();
    } else if (cmd == "gap-reduce") {
        auto g = offord::load_gap(gap_path);
        auto u = offord::load_multiset(input);
        auto r = offord::rank_reduce(g, u, budget);
        rec["gap"] = gap_path;
        rec["input"] = input;
        rec["rank_before"] = g.rank();
        rec["rank_after"] = r.gap.rank();
        rec["reduced"] = offord::gap_to_json(r.gap);
        json coords = json::array();
        for (const auto& c : r.coords) {
            json one;
            one["element"] = c.element.str();
            one["coords"] = c.coords;
            coords.push_back(one);
        }
        rec["coords"] = coords;
    } else if (cmd == "gap-properize") {
        auto g = offord::load_gap(gap_path);
        auto r = offord::properize(g, budget);
        rec["gap"] = gap_path;
        rec["status"] = r.status == offord::ProperizeStatus::proper ? "proper" : "gave-up";
        rec["rank_before"] = g.rank();
        rec["rank_after"] = r.gap.rank();
        rec["result"] = offord::gap_to_json(r.gap);
    } else if (cmd == "detect") {
        auto a = offord::load_multiset(input);
        auto r = offord::detect_structure(a, rmax, nprime, budget);
        rec["input"] = input;
        rec["n"] = a.size();
        rec["rmax"] = rmax;
        rec["nprime"] = nprime;
        rec["found"] = r.found;
        rec["rho"] = r.rho.str();
        if (r.found) {
            rec["rank"] = r.gap->rank();
            rec["gap"] = offord::gap_to_json(*r.gap);
            rec["covered"] = r.covered;
            rec["exceptions"] = r.exceptions;
            rec["gap_size"] = r.gap_size.get_str();
            rec["ilo_size_bound"] = r.ilo_size_bound.str();
            auto cmp = offord::validate_against_ilo(r, a);
            rec["ratio"] = cmp.ratio.str();
        }
    } else if (cmd == "qn-exact") {
        auto est = offord::qn_exact(n, budget);
        rec["n"] = est.n;
        rec["mode"] = "exact";
        rec["singular_count"] = est.singular_count;
        rec["total"] = est.total;
        rec["q_hat"] = est.q_hat.str();
        rec["ci_low"] = nullptr;
        rec["ci_high"] = nullptr;
        rec["seed"] = nullptr;
        rec["trials"] = nullptr;
    } else if (cmd == "qn-mc") {
        auto est = offord::qn_montecarlo(n, trials, offord::RngSpec{seed, workers}, budget);
        rec["n"] = est.n;
        rec["mode"] = "montecarlo";
        rec["singular_count"] = est.singular_count;
        rec["total"] = est.total;
        rec["q_hat"] = est.q_hat.str();
        rec["ci_low"] = est.wilson_low->str();
        rec["ci_high"] = est.wilson_high->str();
        rec["seed"] = est.seed;
        rec["trials"] = trials;
        rec["workers"] = est.workers;
    } else if (cmd == "odlyzko") {
        auto rows = offord::to_sign_rows(offord::load_matrix_rows(input));
        rec["input"] = input;
        std::vector<std::vector<long>> li;
        for (const auto& r : rows) li.emplace_back(r.begin(), r.end());
        std::size_t rank = offord::rank_exact(offord::IntMatrix::from_rows(li));
        rec["rows"] = rows.size();
        rec["n"] = rows.front().size();
        rec["rank"] = rank;
        rec["count"] = offord::odlyzko_count(rows, budget);
        rec["bound"] = offord::int_pow(offord::BigInt(2), rank).get_str();
    } else if (cmd == "rank-increase") {
        auto r = offord::rank_increase_experiment(n, k, trials, offord::RngSpec{seed, workers}, budget);
        rec["n"] = r.n;
        rec["k"] = r.k;
        rec["trials"] = r.trials;
        rec["seed"] = seed;
        rec["workers"] = workers;
        rec["jumps"] = r.jumps;
        rec["frequency"] = r.frequency.str();
        rec["bound"] = r.bound.str();
    } else if (cmd == "cofactor") {
        auto m = offord::load_sym_matrix(input);
        auto c = offord::cofactor_matrix(m);
        rec["input"] = input;
        rec["n"] = m.n();
        rec["cofactors"] = matrix_json(c.rows());
        rec["rank"] = offord::rank_rational(c.rows());
        auto f = offord::rank1_factor(c);
        rec["rank1_factor"] = f ? rational_array(*f) : json(nullptr);
    } else if (cmd == "kernel-height") {
        auto rows = offord::load_matrix_rows(input);
        std::vector<offord::BigInt> e;
        for (const auto& r : offord::to_sign_rows(rows))
            for (int v : r) e.emplace_back(v);
        offord::IntMatrix m(rows.size(), rows.empty() ? 0 : rows.front().size(), std::move(e));
        auto r = offord::kernel_height_check(m);
        rec["input"] = input;
        rec["n"] = m.rows();
        rec["kernel"] = rational_array(r.kernel);
        rec["max_numerator"] = r.max_numerator.get_str();
        rec["max_denominator"] = r.max_denominator.get_str();
        rec["hadamard_floor"] = r.hadamard_floor.get_str();
        rec["within_bound"] = r.within_bound;
    } else if (cmd == "plant") {
        rec["kind"] = kind;
        rec["n"] = n;
        rec["seed"] = seed;
        auto eng = offord::seeded_engine(seed ^ 0x706c616e74ull);
        std::vector<std::vector<Rational>> rows;
        Rational cert;
        if (kind == "example-4.2" || kind == "example-5.2" || kind == "example-4.5" ||
            kind == "example-5.4") {
            if (gap_path.empty()) throw input_error("plant kind " + kind + " requires --gap");
        }
        if (kind == "example-4.2") {
            auto p = offord::plant_bilinear_additive(offord::load_gap(gap_path), n, seed, budget);
            rows = p.matrix.rows();
            cert = p.certificate;
        } else if (kind == "example-4.3") {
            auto kv = seeded_int_vector(eng, n), lv = seeded_int_vector(eng, n);
            auto b = seeded_rational_vector(eng, n), bp = seeded_rational_vector(eng, n);
            auto p = offord::plant_bilinear_algebraic(kv, lv, b, bp, budget);
            rows = p.matrix.rows();
            cert = p.certificate;
        } else if (kind == "example-4.5") {
            auto kv = seeded_int_vector(eng, n), lv = seeded_int_vector(eng, n);
            auto b = seeded_rational_vector(eng, n), bp = seeded_rational_vector(eng, n);
            auto p = offord::plant_bilinear_combined(offord::load_gap(gap_path), kv, lv, b, bp, seed, budget);
            rows = p.matrix.rows();
            cert = p.certificate;
        } else if (kind == "example-5.2") {
            auto p = offord::plant_quadratic_additive(offord::load_gap(gap_path), n, seed, budget);
            rows = p.matrix.rows();
            cert = p.certificate;
        } else if (kind == "example-5.3") {
            auto kv = seeded_int_vector(eng, n);
            auto b = seeded_rational_vector(eng, n);
            auto p = offord::plant_quadratic_algebraic(kv, b, budget);
            rows = p.matrix.rows();
            cert = p.certificate;
        } else if (kind == "example-5.4") {
            auto kv = seeded_int_vector(eng, n);
            auto b = seeded_rational_vector(eng, n);
            auto p = offord::plant_quadratic_combined(offord::load_gap(gap_path), kv, b, seed, budget);
            rows = p.matrix.rows();
            cert = p.certificate;
        } else {
            throw input_error("unknown plant kind: " + kind +
                              " (expected example-4.2|4.3|4.5|5.2|5.3|5.4)");
        }
        rec["certificate"] = cert.str();
        rec["matrix"] = matrix_json(rows);
        if (!out_path.empty()) {
            std::ofstream out(out_path);
            if (!out) throw input_error("cannot write matrix file: " + out_path);
            offord::write_matrix_rows(out, rows);
            rec["out"] = out_path;
        }
    } else {
        std::cerr << kUsage;
        return 64;
    }

    emit(rec, common.format);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << kUsage;
        return 64;
    }
    std::string cmd = argv[1];
    if (cmd == "-h" || cmd == "--help" || cmd == "help") {
        std::cout << kUsage;
        return 0;
    }
    static const std::set<std::string> kCommands = {
        "rho-linear", "rho-bilinear", "rho-quadratic", "decoupling-check", "halasz", "stanley",
        "pigeonhole", "gap-reduce", "gap-properize", "detect", "qn-exact", "qn-mc", "odlyzko",
        "rank-increase", "cofactor", "kernel-height", "plant"};
    if (!kCommands.count(cmd)) {
        std::cerr << kUsage;
        return 64;
    }
    std::vector<std::string> args;
    for (int i = argc - 1; i >= 2; --i) args.push_back(argv[i]);  // CLI11 wants reversed
    try {
        return run_command(cmd, std::move(args));
    } catch (const input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const budget_error& e) {
        std::cerr << "budget error: " << e.what() << "\n";
        return 3;
    }
}
