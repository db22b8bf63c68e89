// trico: exact flag-algebra toolkit for 3-edge-colored complete graphs,
// with brute-force domination checks and blow-up simulation
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <openssl/evp.h>

#include "trico/blowup.hpp"
#include "trico/certificate.hpp"
#include "trico/domination.hpp"
#include "trico/flags.hpp"
#include "trico/graph.hpp"
#include "trico/simplex.hpp"

namespace {

constexpr const char* kVersion = "1.0.0";

// exit codes: 0 ok, 2 certificate invalid, 3 system infeasible,
// 64 usage, 70 internal invariant breach
constexpr int kExitInvalid = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitUsage = 64;
constexpr int kExitInternal = 70;

std::string sha256_hex(const std::string& bytes) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (!EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr))
        throw std::runtime_error("digest failure");
    static const char* hexd = "0123456789abcdef";
    std::string out;
    for (unsigned i = 0; i < len; ++i) {
        out.push_back(hexd[md[i] >> 4]);
        out.push_back(hexd[md[i] & 15]);
    }
    return out;
}

std::string slurp(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct ManifestInfo {
    std::string command;
    std::vector<std::string> argv;
    std::vector<uint64_t> seeds;
    std::vector<std::pair<std::string, std::string>> inputs;  // path, digest
    int threads = 0;
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["command"] = command;
        j["argv"] = argv;
        j["seeds"] = seeds;
        j["threads"] = threads;
        j["version"] = kVersion;
        j["inputs"] = nlohmann::json::array();
        for (const auto& [p, d] : inputs)
            j["inputs"].push_back({{"path", p}, {"sha256", d}});
        j["wallMs"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
        return j;
    }
};

void emit(const nlohmann::json& report, const std::string& out_path) {
    std::string text = report.dump(2);
    if (out_path.empty()) {
        std::cout << text << "\n";
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot write " + out_path);
        out << text << "\n";
        std::cerr << "report written to " << out_path << "\n";
    }
}

trico::TricoloredGraph load_graph(const std::string& path, ManifestInfo& mf) {
    std::string bytes = slurp(path);
    mf.inputs.emplace_back(path, sha256_hex(bytes));
    std::istringstream in(bytes);
    return trico::read_tcg(in);
}

// ---- subcommand bodies ----

int cmd_enumerate(int level, const std::string& out_path, ManifestInfo& mf) {
    auto classes = trico::enumerate_unlabeled(level);
    nlohmann::json j;
    j["level"] = level;
    j["count"] = classes.size();
    nlohmann::json keys = nlohmann::json::array();
    for (const auto& g : classes) keys.push_back(trico::key_hex(g.col));
    j["classes"] = keys;
    j["manifest"] = mf.to_json();
    emit(j, out_path);
    std::cerr << classes.size() << " classes\n";
    return 0;
}

int cmd_derive(bool exclude_squares, const std::string& out_path, ManifestInfo& mf) {
    trico::DeriveOutcome outcome = trico::derive_certificate(!exclude_squares);
    nlohmann::json j;
    j["pooled"] = outcome.pooled.to_json();
    nlohmann::json per = nlohmann::json::array();
    long infeasible = 0;
    for (const auto& r : outcome.reports) {
        nlohmann::json e;
        e["interpretation"] = r.interpretation;
        e["verdict"] = r.verdict;
        e["farkasChecked"] = r.farkas_checked;
        per.push_back(e);
        if (r.verdict == "infeasible") ++infeasible;
    }
    j["interpretations"] = per;
    j["interpretationCount"] = outcome.reports.size();
    j["infeasibleCount"] = infeasible;
    j["verdict"] = outcome.any_feasible ? "valid" : "infeasible";
    j["excludeSquares"] = exclude_squares;
    j["manifest"] = mf.to_json();
    emit(j, out_path);
    if (outcome.any_feasible) {
        std::cerr << "derivation found a valid coefficient set\n";
        return 0;
    }
    std::cerr << "all " << outcome.reports.size()
              << " interpretations infeasible; exact witness re-checked on each\n";
    return kExitInfeasible;
}

trico::CertColumn column_from_key(const std::string& kind, const std::string& key) {
    trico::CertColumn col;
    col.kind = kind;
    col.key = key;
    if (kind == "square") {
        for (const auto& sp : trico::square_specs())
            if (sp.name == key) {
                col.vec = trico::build_square_vector(sp);
                return col;
            }
        throw std::runtime_error("unknown square name " + key);
    }
    // inequality key: <12 hex digits>:c<color>:slot<i>
    auto p1 = key.find(':');
    auto p2 = key.find(':', p1 + 1);
    if (p1 == std::string::npos || p2 == std::string::npos || p1 != 12)
        throw std::runtime_error("bad inequality key " + key);
    std::vector<uint8_t> colors(6);
    for (int i = 0; i < 6; ++i)
        colors[i] = static_cast<uint8_t>(std::stoi(key.substr(2 * i, 2), nullptr, 16));
    int c = std::stoi(key.substr(p1 + 2, p2 - p1 - 2));
    col.vec = trico::build_inequality_vector(trico::TricoloredGraph(4, colors), c);
    return col;
}

int verify_supplied_report(const nlohmann::json& j, const std::string& out_path,
                           ManifestInfo& mf) {
    using trico::Rat;
    std::vector<trico::CertColumn> cols;
    for (const auto& cand : j.at("candidates"))
        cols.push_back(column_from_key(cand.at("kind"), cand.at("key")));
    trico::RationalVector w3 = trico::build_w3();
    std::string claimed = j.value("verdict", "valid");
    nlohmann::json out;
    out["checkedClaim"] = claimed;
    bool confirmed = false;
    if (claimed == "valid") {
        std::vector<Rat> coeffs;
        for (const auto& e : j.at("coefficients"))
            coeffs.push_back(trico::rat_from_json(e));
        if (coeffs.size() != cols.size())
            throw std::runtime_error("coefficient count mismatch");
        for (const auto& q : coeffs)
            if (q < 0) throw std::runtime_error("negative coefficient");
        trico::SlackCheck sc = trico::check_assignment(cols, coeffs, w3);
        confirmed = sc.valid;
        if (!sc.valid) {
            out["violatedClass"] = trico::key_hex(trico::class_rep(5, sc.worst_class).col);
            out["violationAmount"] = trico::rat_json(sc.worst);
        }
    } else {
        // infeasibility claim: re-check the attached exact witness
        const int m = trico::class_count(5);
        std::vector<Rat> y(m, Rat(0));
        for (const auto& e : j.at("farkas")) {
            std::string ck = e.at("classKey");
            Rat val = trico::rat_from_json(e);
            bool found = false;
            for (int h = 0; h < m; ++h)
                if (trico::key_hex(trico::class_rep(5, h).col) == ck) {
                    y[h] = val;
                    found = true;
                    break;
                }
            if (!found) throw std::runtime_error("unknown class key in witness");
        }
        std::vector<std::vector<Rat>> A(m, std::vector<Rat>(cols.size()));
        std::vector<Rat> b(m);
        for (int h = 0; h < m; ++h) {
            for (size_t t = 0; t < cols.size(); ++t) A[h][t] = cols[t].vec[h];
            b[h] = -w3[h];
        }
        confirmed = trico::farkas_valid(A, b, y);
    }
    out["confirmed"] = confirmed;
    out["manifest"] = mf.to_json();
    emit(out, out_path);
    std::cerr << (confirmed ? "report confirmed\n" : "report NOT confirmed\n");
    return confirmed ? 0 : kExitInvalid;
}

int cmd_verify(const std::string& coeffs, const std::string& interps,
               const std::string& out_path, ManifestInfo& mf) {
    if (coeffs.rfind("file:", 0) == 0) {
        std::string path = coeffs.substr(5);
        std::string bytes = slurp(path);
        mf.inputs.emplace_back(path, sha256_hex(bytes));
        nlohmann::json j = nlohmann::json::parse(bytes);
        // a derive report wraps the system in "pooled"
        if (j.contains("pooled")) j = j["pooled"];
        return verify_supplied_report(j, out_path, mf);
    }
    if (coeffs != "reference")
        throw CLI::ValidationError("--coeffs", "expected 'reference' or 'file:<path>'");
    trico::RationalVector w3 = trico::build_w3();
    auto interpretations = trico::all_interpretations();
    nlohmann::json reports = nlohmann::json::array();
    bool any_valid = false;
    if (interps == "all") {
        for (const auto& it : interpretations) {
            trico::CertificateReport r = trico::verify_reference(it, w3);
            r.interpretation = "interpretation-" + std::to_string(it.index);
            reports.push_back(r.to_json());
            if (r.verdict == "valid") any_valid = true;
            std::cerr << r.interpretation << ": " << r.verdict << "\n";
        }
    } else {
        size_t idx = interps.empty() ? 0 : std::stoul(interps);
        if (idx >= interpretations.size())
            throw CLI::ValidationError("--interpretations", "index out of range");
        trico::CertificateReport r = trico::verify_reference(interpretations[idx], w3);
        reports.push_back(r.to_json());
        any_valid = r.verdict == "valid";
        std::cerr << r.interpretation << ": " << r.verdict;
        if (!r.detail.empty()) std::cerr << " (" << r.detail << ")";
        std::cerr << "\n";
    }
    nlohmann::json j;
    j["reports"] = reports;
    j["verdict"] = any_valid ? "valid" : "invalid";
    j["manifest"] = mf.to_json();
    emit(j, out_path);
    return any_valid ? 0 : kExitInvalid;
}

int cmd_check_theorem(int n, const std::string& out_path, ManifestInfo& mf) {
    trico::TheoremCheckReport rep = trico::exhaustive_theorem_check(n);
    nlohmann::json j = rep.to_json();
    j["manifest"] = mf.to_json();
    emit(j, out_path);
    std::cerr << rep.colorings << " colorings, " << rep.counterexamples
              << " counterexamples\n";
    return 0;
}

int cmd_construct(const std::string& kind, int n, int m, const std::string& out_path,
                  ManifestInfo& mf) {
    trico::TricoloredGraph g(1, {});
    if (kind == "kierstead") {
        g = trico::kierstead(n);
    } else if (kind == "rainbow-block") {
        g = trico::rainbow_block(m);
    } else {
        throw CLI::ValidationError("--kind", "expected 'kierstead' or 'rainbow-block'");
    }
    if (out_path.empty()) {
        trico::write_tcg(std::cout, g);  // raw graph for piping
        std::cerr << kind << " on " << g.n << " vertices\n";
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot write " + out_path);
        trico::write_tcg(out, g);
        nlohmann::json j;
        j["kind"] = kind;
        j["n"] = g.n;
        j["file"] = out_path;
        j["manifest"] = mf.to_json();
        std::cout << j.dump(2) << "\n";
    }
    return 0;
}

int cmd_best_domination(const std::string& graph_path, int t, bool triangle_pool,
                        const std::string& out_path, ManifestInfo& mf) {
    trico::TricoloredGraph g = load_graph(graph_path, mf);
    std::vector<int> pool;
    if (triangle_pool) {
        // convenience for rainbow-block graphs: restrict to the last three
        // vertices (the distinguished triangle)
        pool = {g.n - 3, g.n - 2, g.n - 1};
    }
    trico::DominationResult r = trico::best_domination(g, t, pool);
    nlohmann::json j = r.to_json(g.n, t);
    j["manifest"] = mf.to_json();
    emit(j, out_path);
    std::cerr << "size " << r.size << " (color " << r.color << ")\n";
    return 0;
}

int cmd_random_pairs(int n, long pairs, uint64_t seed, int nseeds,
                     const std::string& out_path, ManifestInfo& mf) {
    nlohmann::json arr = nlohmann::json::array();
    double mean_best = 0, max_frac = 0, mean_color = 0;
    for (int s = 0; s < nseeds; ++s) {
        trico::PairBoundStat st = trico::random_pair_bound(n, seed + s, pairs);
        arr.push_back(st.to_json());
        mean_best += st.mean_pair_best;
        mean_color += st.mean_pair_color;
        if (st.max_fraction > max_frac) max_frac = st.max_fraction;
    }
    nlohmann::json j;
    j["runs"] = arr;
    j["meanPairBest"] = mean_best / nseeds;
    j["meanPairColor"] = mean_color / nseeds;
    j["maxFraction"] = max_frac;
    j["manifest"] = mf.to_json();
    emit(j, out_path);
    std::cerr << "max fraction " << max_frac << ", mean best " << mean_best / nseeds
              << "\n";
    return 0;
}

int cmd_blowup(const std::string& graph_path, int k, uint64_t seed,
               const std::string& check, long samples, long trials, int slot, int color,
               const std::string& target_path, const std::string& out_path,
               ManifestInfo& mf) {
    trico::TricoloredGraph base = load_graph(graph_path, mf);
    nlohmann::json j;
    j["base"] = trico::key_hex(base.col);
    j["k"] = k;
    j["seed"] = seed;
    bool pass = true;
    if (check == "eq2") {
        // square functionals are evaluated on max-coefficient-normalized
        // vectors so the tolerance is scale-free
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& sp : trico::square_specs()) {
            trico::RationalVector v = trico::build_square_vector(sp);
            trico::Rat mx(0);
            for (const auto& q : v) {
                trico::Rat a = abs(q);
                if (a > mx) mx = a;
            }
            if (mx != 0)
                for (auto& q : v) { q /= mx; q.canonicalize(); }
            double est = trico::empirical_functional(v, base, k, samples, seed);
            bool ok = est >= -0.01;
            pass = pass && ok;
            arr.push_back({{"functional", sp.name}, {"estimate", est}, {"pass", ok}});
            std::cerr << sp.name << ": " << est << (ok ? " ok" : " VIOLATION") << "\n";
        }
        j["check"] = "eq2";
        j["results"] = arr;
    } else if (check == "slack") {
        trico::SlackReport rep =
            trico::check_domination_slack(base, slot, color, k, trials, seed);
        pass = rep.pass();
        j["check"] = "slack";
        j["result"] = rep.to_json();
        std::cerr << "slack case (" << slot << "," << color << "): " << rep.violations
                  << "/" << rep.ran << " violations"
                  << (rep.vacuous ? " (vacuous)" : "") << "\n";
    } else if (check == "w3") {
        double est = trico::empirical_functional(trico::build_w3(), base, k, samples, seed);
        j["check"] = "w3";
        j["estimate"] = est;
        std::cerr << "trichromatic-vertex functional: " << est << "\n";
    } else if (check == "density") {
        if (target_path.empty())
            throw CLI::ValidationError("--target", "density check needs a target graph");
        trico::TricoloredGraph h = load_graph(target_path, mf);
        trico::Rng master(seed);
        trico::TricoloredGraph gk = trico::blow_up({base, k, master.stream(0).state});
        trico::DensityEstimate e =
            trico::estimate_density(h, gk, samples, master.stream(1).state);
        j["check"] = "density";
        j["estimate"] = e.value;
        j["radius"] = e.radius;
        j["exact"] = e.exact;
        std::cerr << "density " << e.value << " +- " << e.radius << "\n";
    } else {
        throw CLI::ValidationError("--check", "expected eq2|slack|w3|density");
    }
    j["pass"] = pass;
    j["manifest"] = mf.to_json();
    emit(j, out_path);
    return pass ? 0 : kExitInternal;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact flag-algebra toolkit for 3-edge-colored complete graphs"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    int threads = 0;
    app.add_option("--threads", threads,
                   "cap internal parallelism (0 = hardware default; also via TRICO_THREADS)")
        ->envname("TRICO_THREADS");

    std::string out_path;
    // enumerate
    auto* enu = app.add_subcommand("enumerate", "count and list graph classes at a level");
    int level = 5;
    enu->add_option("--level", level, "number of vertices (1..5)")->required();
    enu->add_option("--out", out_path, "write the JSON report here");
    // verify
    auto* ver = app.add_subcommand("verify", "check certificate coefficients");
    std::string coeffs = "reference", interps;
    ver->add_option("--coeffs", coeffs, "'reference' or 'file:<report.json>'");
    ver->add_option("--interpretations", interps, "'all' or an index (default 0)");
    ver->add_option("--out", out_path, "write the JSON report here");
    // derive
    auto* der = app.add_subcommand("derive", "search for certificate coefficients exactly");
    bool exclude_squares = false;
    der->add_flag("--exclude-squares", exclude_squares, "drop the square columns (diagnostic)");
    der->add_option("--out", out_path, "write the JSON report here");
    // check-theorem
    auto* thm = app.add_subcommand("check-theorem", "exhaustive small-n domination sweep");
    int thm_n = 5;
    bool exhaustive = false;
    thm->add_option("--n", thm_n, "vertex count (2..6)")->required();
    thm->add_flag("--exhaustive", exhaustive, "accepted for clarity; sweeps are exhaustive");
    thm->add_option("--out", out_path, "write the JSON report here");
    // construct
    auto* con = app.add_subcommand("construct", "write a named construction as .tcg");
    std::string kind;
    int con_n = 9, con_m = 5;
    con->add_option("--kind", kind, "kierstead | rainbow-block")->required();
    con->add_option("--n", con_n, "vertices (kierstead)");
    con->add_option("--m", con_m, "half clique size (rainbow-block)");
    con->add_option("--out", out_path, "write .tcg here (default: stdout)");
    // best-domination
    auto* dom = app.add_subcommand("best-domination", "search small dominating sets");
    std::string dom_graph = "-";
    int dom_t = 4;
    bool triangle_pool = false;
    dom->add_option("--graph", dom_graph, ".tcg file or '-' for stdin");
    dom->add_option("--t", dom_t, "max dominator set size");
    dom->add_flag("--triangle-pool", triangle_pool,
                  "restrict dominators to the last three vertices");
    dom->add_option("--out", out_path, "write the JSON report here");
    // random-pairs
    auto* rp = app.add_subcommand("random-pairs", "pair domination in random colorings");
    int rp_n = 900, rp_nseeds = 1;
    long rp_pairs = 2000;
    uint64_t rp_seed = 1;
    rp->add_option("--n", rp_n, "vertices (>= 100)");
    rp->add_option("--pairs", rp_pairs, "sampled pairs per run");
    rp->add_option("--seed", rp_seed, "base seed");
    rp->add_option("--seeds", rp_nseeds, "number of consecutive seeds");
    rp->add_option("--out", out_path, "write the JSON report here");
    // blowup
    auto* blo = app.add_subcommand("blowup", "blow-up construction and empirical checks");
    std::string blo_graph, blo_check = "eq2", blo_target;
    int blo_k = 80, blo_slot = 1, blo_color = 1;
    uint64_t blo_seed = 7;
    long blo_samples = 2000, blo_trials = 200;
    blo->add_option("--graph", blo_graph, "base .tcg file or '-'")->required();
    blo->add_option("--k", blo_k, "blow-up factor");
    blo->add_option("--seed", blo_seed, "seed");
    blo->add_option("--check", blo_check, "eq2 | slack | w3 | density");
    blo->add_option("--samples", blo_samples, "sampled subsets for estimates");
    blo->add_option("--trials", blo_trials, "sampled quadruples for slack checks");
    blo->add_option("--slot", blo_slot, "configuration slot 1..7 (slack)");
    blo->add_option("--color", blo_color, "domination color 1..3 (slack)");
    blo->add_option("--target", blo_target, "target .tcg (density)");
    blo->add_option("--out", out_path, "write the JSON report here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    ManifestInfo mf;
    mf.threads = threads;
    for (int i = 0; i < argc; ++i) mf.argv.push_back(argv[i]);

    try {
        if (app.got_subcommand(enu)) {
            mf.command = "enumerate";
            return cmd_enumerate(level, out_path, mf);
        }
        if (app.got_subcommand(ver)) {
            mf.command = "verify";
            return cmd_verify(coeffs, interps, out_path, mf);
        }
        if (app.got_subcommand(der)) {
            mf.command = "derive";
            return cmd_derive(exclude_squares, out_path, mf);
        }
        if (app.got_subcommand(thm)) {
            mf.command = "check-theorem";
            return cmd_check_theorem(thm_n, out_path, mf);
        }
        if (app.got_subcommand(con)) {
            mf.command = "construct";
            return cmd_construct(kind, con_n, con_m, out_path, mf);
        }
        if (app.got_subcommand(dom)) {
            mf.command = "best-domination";
            return cmd_best_domination(dom_graph, dom_t, triangle_pool, out_path, mf);
        }
        if (app.got_subcommand(rp)) {
            mf.command = "random-pairs";
            mf.seeds.push_back(rp_seed);
            return cmd_random_pairs(rp_n, rp_pairs, rp_seed, rp_nseeds, out_path, mf);
        }
        if (app.got_subcommand(blo)) {
            mf.command = "blowup";
            mf.seeds.push_back(blo_seed);
            return cmd_blowup(blo_graph, blo_k, blo_seed, blo_check, blo_samples,
                              blo_trials, blo_slot, blo_color, blo_target, out_path, mf);
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitUsage;
}
