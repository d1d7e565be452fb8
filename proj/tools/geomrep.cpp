// geomrep: build incidence systems, compute their correlation groups and
// check representation claims. Exit codes: 0 ok, 1 verification mismatch,
// 2 usage or input error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "geomrep/geomrep.hpp"

namespace {

using namespace geomrep;

constexpr const char* kVersion = "1.0.0";
constexpr std::uint64_t kDefaultSeed = 20240601;
constexpr std::size_t kRawSearchLimit = 2000;

struct UsageError : Error {
    using Error::Error;
};

struct Options {
    // shared
    std::uint64_t seed = kDefaultSeed;
    unsigned threads = 1;
    bool timings = false;
    std::string out;
    // constructions
    std::string construction;
    std::size_t n = 0;
    std::size_t q = 0;
    std::uint32_t base_degree = 1;
    bool truncate = false;
    std::string rule = "shared-edge";
    bool no_vertex_adjacency = false;
    std::string group_file;
    // files
    std::string input;
    std::string properties = "validate,geometry,firm,rc";
    bool raw = false;
    bool dot = false;
    // verify
    std::string inn;
    std::string aut;
    // free
    std::string free_family;
    std::string checks = "all";
    std::size_t length = 8;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_output(const Options& opt, const std::string& text) {
    if (opt.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(opt.out, std::ios::binary);
    if (!out) throw UsageError("cannot write '" + opt.out + "'");
    out << text;
}

std::pair<std::uint32_t, std::uint32_t> prime_power(std::size_t q) {
    if (q < 2) throw UsageError("q must be a prime power >= 2");
    std::size_t p = 2;
    while (q % p != 0) ++p;
    std::uint32_t k = 0;
    std::size_t rest = q;
    while (rest % p == 0) {
        rest /= p;
        ++k;
    }
    if (rest != 1) throw UsageError("q = " + std::to_string(q) + " is not a prime power");
    return {static_cast<std::uint32_t>(p), k};
}

CosetGeometrySpec read_coset_spec(const std::string& path) {
    const Json j = Json::parse(read_file(path));
    CosetGeometrySpec spec;
    spec.group = group_from_json(j);
    for (const auto& s : j.at("subgroups")) {
        std::vector<Permutation> gens;
        for (const auto& g : s.at("generators")) gens.push_back(permutation_from_json(g));
        spec.subgroups.emplace_back(spec.group.degree(), std::move(gens));
        spec.labels.push_back(s.contains("label") ? s.at("label").get<std::string>() : std::to_string(spec.labels.size()));
    }
    return spec;
}

/// Canonical parameter string of a construction, used for the input digest.
std::string construction_key(const Options& opt) {
    std::ostringstream key;
    key << opt.construction;
    if (opt.construction == "dihedral" || opt.construction == "complete") key << " n=" << opt.n;
    if (opt.construction == "cube") key << " vertex_adjacency=" << !opt.no_vertex_adjacency;
    if (opt.construction == "hemidodeca") key << " rule=" << opt.rule;
    if (opt.construction == "pgl") key << " n=" << opt.n << " q=" << opt.q << " base=" << opt.base_degree << " truncate=" << opt.truncate;
    if (opt.construction == "coset") key << " group=fnv1a64:" << fnv1a_digest(read_file(opt.group_file));
    return key.str();
}

struct Built {
    IncidenceSystem system;
    std::optional<CrossRatioGeometry> cross_ratio;
};

Built build_construction(const Options& opt) {
    const auto& c = opt.construction;
    if (c == "dihedral") {
        if (opt.n < 3) throw UsageError("n must be >= 3");
        return {dihedral_geometry(opt.n), std::nullopt};
    }
    if (c == "complete") {
        if (opt.n < 2) throw UsageError("n must be >= 2");
        return {complete_graph_geometry(opt.n), std::nullopt};
    }
    if (c == "gq22") return {gq22(), std::nullopt};
    if (c == "cube") return {cube_geometry(!opt.no_vertex_adjacency), std::nullopt};
    if (c == "hemidodeca") {
        FacePetrieRule rule;
        try {
            rule = parse_face_petrie_rule(opt.rule);
        } catch (const Error& e) {
            throw UsageError(e.what());
        }
        return {hemidodecahedron_petrie(rule), std::nullopt};
    }
    if (c == "pgl") {
        if (opt.n < 3) throw UsageError("n must be >= 3");
        auto [p, k] = prime_power(opt.q);
        auto geom = pgl_cross_ratio_geometry(opt.n, make_field(p, k), opt.base_degree, opt.truncate);
        auto sys = geom.system;
        return {std::move(sys), std::move(geom)};
    }
    if (c == "coset") {
        if (opt.group_file.empty()) throw UsageError("coset construction needs --group <file>");
        return {coset_geometry(read_coset_spec(opt.group_file)).system, std::nullopt};
    }
    throw UsageError("unknown construction '" + c + "'");
}

class Stopwatch {
public:
    void lap(const std::string& name) {
        auto now = std::chrono::steady_clock::now();
        laps_[name] = std::chrono::duration<double>(now - last_).count();
        last_ = now;
    }
    [[nodiscard]] Json json() const {
        Json j = Json::object();
        for (const auto& [k, v] : laps_) j[k] = v;
        return j;
    }

private:
    std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
    std::map<std::string, double> laps_;
};

Json envelope(const Options& opt, const std::string& command, const std::string& digest_input) {
    return Json{{"tool", "geomrep"},
                {"version", kVersion},
                {"command", command},
                {"input_digest", "fnv1a64:" + fnv1a_digest(digest_input)},
                {"seed", opt.seed},
                {"threads", opt.threads}};
}

void finish(const Options& opt, Json report, const Stopwatch& watch) {
    if (opt.timings) report["timings"] = watch.json();
    write_output(opt, report.dump(2) + "\n");
}

IncidenceSystem load_system(const std::string& text) { return system_from_string(text); }

int run_build(const Options& opt) {
    auto built = build_construction(opt);
    if (built.cross_ratio && built.cross_ratio->degenerate) {
        std::cerr << "note: field equals base field; the geometry is the projective space itself\n";
    }
    write_output(opt, to_json(built.system).dump() + "\n");
    return 0;
}

int run_check(const Options& opt) {
    Stopwatch watch;
    const auto text = read_file(opt.input);
    const auto sys = load_system(text);
    auto report = envelope(opt, "check", text);
    const auto validation = validate(sys);
    Json results = Json::object();
    std::stringstream props(opt.properties);
    std::string prop;
    std::vector<std::string> requested;
    while (std::getline(props, prop, ',')) {
        if (prop.empty()) continue;
        if (prop != "validate" && prop != "geometry" && prop != "firm" && prop != "rc" && prop != "chambers") {
            throw UsageError("unknown property '" + prop + "' (expected validate, geometry, firm, rc, chambers)");
        }
        requested.push_back(prop);
    }
    if (!validation.ok() && !(requested.size() == 1 && requested[0] == "validate")) {
        std::cerr << "error: system does not validate: " << validation.violations.front().rule << "\n";
        return 2;
    }
    for (const auto& p : requested) {
        if (p == "validate") {
            Json v = Json::array();
            for (const auto& x : validation.violations) v.push_back(Json{{"rule", x.rule}, {"witnesses", x.witnesses}});
            results["validate"] = Json{{"ok", validation.ok()}, {"violations", std::move(v)}};
        } else if (p == "geometry") {
            results["geometry"] = is_geometry(sys);
        } else if (p == "firm") {
            results["firm"] = is_firm(sys);
        } else if (p == "rc") {
            results["rc"] = is_residually_connected(sys);
        } else if (p == "chambers") {
            results["chambers"] = chambers(sys).size();
        }
        watch.lap(p);
    }
    report["elements"] = sys.size();
    report["rank"] = sys.rank();
    report["results"] = std::move(results);
    finish(opt, std::move(report), watch);
    return 0;
}

int run_aut(const Options& opt) {
    Stopwatch watch;
    const auto text = read_file(opt.input);
    const auto sys = load_system(text);
    const auto validation = validate(sys);
    if (!validation.ok()) throw UsageError("system does not validate: " + validation.violations.front().rule);
    if (sys.size() > kRawSearchLimit && !opt.raw) {
        throw UsageError("system has " + std::to_string(sys.size()) +
                         " elements; pass --raw to force the direct search (may be slow), or use "
                         "`verify pgl` for the restriction-extension mode");
    }
    if (sys.size() > kRawSearchLimit) std::cerr << "warning: direct search on " << sys.size() << " elements\n";
    auto result = correlation_group(sys);
    watch.lap("search");
    auto report = envelope(opt, "aut", text);
    report["result"] = to_json(sys, result);
    finish(opt, std::move(report), watch);
    return 0;
}

BigInt parse_order(const std::string& text, const char* flag) {
    if (text.empty()) throw UsageError(std::string("missing --") + flag);
    BigInt v;
    try {
        v = BigInt(text);
    } catch (const std::runtime_error&) {
        throw UsageError(std::string("--") + flag + " is not an integer");
    }
    if (v <= 0) throw UsageError(std::string("--") + flag + " must be positive");
    return v;
}

int run_verify(const Options& opt) {
    Stopwatch watch;
    const auto inn = parse_order(opt.inn, "inn");
    const auto aut = parse_order(opt.aut, "aut");
    auto built = build_construction(opt);
    watch.lap("build");
    auto report = envelope(opt, "verify", construction_key(opt));
    RepresentationReport rep;
    if (built.cross_ratio && !built.cross_ratio->degenerate) {
        auto analysis = analyse_by_extension(*built.cross_ratio);
        watch.lap("extension");
        rep = verify_representation(analysis.extended, inn, aut, construction_key(opt));
        Json attempts = Json::array();
        for (const auto& a : analysis.coset_attempts) {
            attempts.push_back(Json{{"extends", a.map.has_value()}, {"reason", a.reason}});
        }
        report["mode"] = "restriction-extension";
        report["truncation"] = Json{{"aut_order", to_string(analysis.truncation.aut_order)},
                                    {"aut_i_order", to_string(analysis.truncation.aut_i_order)}};
        report["duality_coset"] = std::move(attempts);
    } else {
        if (built.system.size() > kRawSearchLimit && !opt.raw) {
            throw UsageError("system too large for direct search; pass --raw to force");
        }
        rep = verify_representation(built.system, inn, aut, construction_key(opt));
        watch.lap("search");
        report["mode"] = "direct";
    }
    report["report"] = to_json(built.system, rep);
    if (rep.verdict == Verdict::fail) {
        finish(opt, std::move(report), watch);
        return 2;
    }
    const int code = rep.verdict == Verdict::representation ? 0 : 1;
    if (code != 0) std::cerr << "mismatch: " << rep.explanation << "\n";
    finish(opt, std::move(report), watch);
    return code;
}

int run_export(const Options& opt) {
    if (!opt.dot) throw UsageError("export needs --dot");
    const auto sys = load_system(read_file(opt.input));
    write_output(opt, to_dot(sys));
    return 0;
}

int run_free(const Options& opt) {
    using namespace geomrep::free;
    Stopwatch watch;
    if (opt.free_family != "rose") throw UsageError("unknown family '" + opt.free_family + "' (expected rose)");
    if (opt.n < 2) throw UsageError("n must be >= 2");
    if (opt.length > 10) throw UsageError("--length must be <= 10");
    std::set<std::string> wanted;
    std::stringstream ss(opt.checks);
    std::string item;
    const std::set<std::string> known{"independence", "intersections", "rc", "ft", "action", "sampling"};
    while (std::getline(ss, item, ',')) {
        if (item == "all") {
            wanted = known;
        } else if (known.count(item)) {
            wanted.insert(item);
        } else {
            throw UsageError("unknown check '" + item + "'");
        }
    }
    const auto family = rose_cover_family(opt.n);
    const std::size_t m = family.graphs.size();
    auto report = envelope(opt, "free", "rose n=" + std::to_string(opt.n) + " checks=" + opt.checks +
                                            " length=" + std::to_string(opt.length));
    Json gens = Json::array();
    for (const auto& w : family.generators) gens.push_back(format(w));
    report["generators"] = std::move(gens);
    Json results = Json::object();
    bool all_pass = true;

    if (wanted.count("independence")) {
        auto g = stallings_graph(opt.n, family.generators);
        const bool ok = g.rank() == family.generators.size();
        all_pass = all_pass && ok;
        results["independence"] = Json{{"pass", ok}, {"vertices", g.vertex_count()}, {"edges", g.edge_count()}, {"rank", g.rank()}};
        watch.lap("independence");
    }
    if (wanted.count("intersections")) {
        // G_J should be generated by the generators lying in every G_j, j in J
        Json cases = Json::array();
        bool ok = true;
        for (std::size_t mask = 1; mask < (std::size_t{1} << m); ++mask) {
            std::vector<std::size_t> j;
            for (std::size_t k = 0; k < m; ++k) {
                if (mask >> k & 1U) j.push_back(k);
            }
            if (j.size() < 2 || (j.size() > 3 && j.size() != m)) continue;
            std::vector<Word> common;
            for (std::size_t s = 0; s < m; ++s) {
                if (!(mask >> s & 1U)) common.push_back(family.generators[s]);
            }
            auto left = parabolic_intersection(family, j);
            auto right = stallings_graph(opt.n, common);
            const bool equal = same_subgroup(left, right);
            ok = ok && equal;
            Json js = Json::array();
            for (auto k : j) js.push_back(k + 1);
            cases.push_back(Json{{"J", std::move(js)}, {"rank", left.rank()}, {"equal", equal}});
        }
        all_pass = all_pass && ok;
        results["intersections"] = Json{{"pass", ok}, {"cases", std::move(cases)}};
        watch.lap("intersections");
    }
    if (wanted.count("rc")) {
        auto rc = rc_check_exact(family);
        all_pass = all_pass && rc.pass;
        results["rc"] = to_json(rc);
        watch.lap("rc");
    }
    if (wanted.count("ft")) {
        Json cases = Json::array();
        bool ok = true;
        std::size_t checked = 0;
        for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
            std::vector<std::size_t> j;
            for (std::size_t k = 0; k < m; ++k) {
                if (mask >> k & 1U) j.push_back(k);
            }
            if (j.size() < 2) continue;
            for (std::size_t i = 0; i < m; ++i) {
                if (mask >> i & 1U) continue;
                auto r = bounded_ft_check(family, j, i, opt.length);
                ok = ok && r.pass;
                checked += r.checked;
                if (!r.pass) cases.push_back(to_json(r));
            }
        }
        all_pass = all_pass && ok;
        results["ft"] = Json{{"pass", ok}, {"length", opt.length}, {"words_checked", checked}, {"failures", std::move(cases)}};
        watch.lap("ft");
    }
    if (wanted.count("action")) {
        auto action = subgroup_action(k_group(opt.n), family);
        Json perms = Json::array();
        for (const auto& p : action.permutations) perms.push_back(to_json(p));
        const auto fp = action.group.order() <= kFingerprintBound ? std::optional(action.group.fingerprint(kFingerprintBound))
                                                                   : std::nullopt;
        Json entry{{"order", to_string(action.group.order())}, {"permutations", std::move(perms)}};
        if (fp) entry["fingerprint"] = to_json(*fp);
        results["action"] = std::move(entry);
        watch.lap("action");
    }
    if (wanted.count("sampling")) {
        // w = h k for random words h in G_1, k in G_2 must lie in G_1 G_2
        std::mt19937_64 rng(opt.seed);
        const auto& h = family.member_gens[0];
        const auto& k = family.member_gens[1 % m];
        auto sample = [&](const std::vector<Word>& gens) {
            Word w;
            std::uniform_int_distribution<std::size_t> len(0, 4), pick(0, gens.size() - 1);
            for (std::size_t t = len(rng); t > 0; --t) {
                auto g = gens[pick(rng)];
                w = multiply(w, rng() % 2 ? g : inverse(g));
            }
            return w;
        };
        bool ok = true;
        for (int t = 0; t < 200; ++t) ok = ok && product_membership(multiply(sample(h), sample(k)), family.graphs[0], family.graphs[1 % m]);
        all_pass = all_pass && ok;
        results["sampling"] = Json{{"pass", ok}, {"samples", 200}};
        watch.lap("sampling");
    }
    report["results"] = std::move(results);
    report["pass"] = all_pass;
    finish(opt, std::move(report), watch);
    return all_pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"geomrep: incidence geometries, correlation groups and representation checks"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);
    Options opt;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--seed", opt.seed, "Seed for randomized checks")->capture_default_str();
        sub->add_option("--threads", opt.threads, "Worker threads (computation is single-threaded)")->check(CLI::PositiveNumber);
        sub->add_flag("--timings", opt.timings, "Include wall-clock timings in the report");
        sub->add_option("--out", opt.out, "Write output to a file instead of stdout");
    };
    auto add_construction = [&](CLI::App* sub) {
        sub->add_option("construction", opt.construction, "dihedral, complete, gq22, cube, hemidodeca, pgl, coset")
            ->required()
            ->check(CLI::IsMember({"dihedral", "complete", "gq22", "cube", "hemidodeca", "pgl", "coset"}));
        sub->add_option("--n", opt.n, "Size parameter");
        sub->add_option("--q", opt.q, "Field order (pgl)");
        sub->add_option("--base-degree", opt.base_degree, "Degree of the base field over GF(p) (pgl)")->capture_default_str();
        sub->add_flag("--truncate", opt.truncate, "Keep points, lines and one Galois orbit of values (pgl)");
        sub->add_option("--rule", opt.rule, "Face-Petrie incidence: shared-edge, shared-vertex, always")->capture_default_str();
        sub->add_flag("--no-vertex-adjacency", opt.no_vertex_adjacency, "Cube without vertex-vertex incidences");
        sub->add_option("--group", opt.group_file, "Coset group JSON file");
        sub->add_flag("--raw", opt.raw, "Allow direct search on large systems");
    };

    auto* build = app.add_subcommand("build", "Emit a construction as geometry JSON");
    add_construction(build);
    add_common(build);

    auto* check = app.add_subcommand("check", "Decide structural properties of a geometry file");
    check->add_option("file", opt.input, "Geometry JSON")->required();
    check->add_option("--properties", opt.properties, "Comma list: validate, geometry, firm, rc, chambers")->capture_default_str();
    add_common(check);

    auto* aut = app.add_subcommand("aut", "Correlation group of a geometry file");
    aut->add_option("file", opt.input, "Geometry JSON")->required();
    aut->add_flag("--raw", opt.raw, "Allow direct search on large systems");
    add_common(aut);

    auto* verify = app.add_subcommand("verify", "Compare computed orders with expected Inn/Aut orders");
    add_construction(verify);
    verify->add_option("--inn", opt.inn, "Expected |Aut_I|")->required();
    verify->add_option("--aut", opt.aut, "Expected |Aut|")->required();
    add_common(verify);

    auto* freecmd = app.add_subcommand("free", "Free-group subgroup checks");
    freecmd->add_option("family", opt.free_family, "Subgroup family (rose)")->required();
    freecmd->add_option("--n", opt.n, "Rank of the free group")->required();
    freecmd->add_option("--check", opt.checks, "all or a comma list of independence, intersections, rc, ft, action, sampling")
        ->capture_default_str();
    freecmd->add_option("--length", opt.length, "Word length bound for the ft check")->capture_default_str();
    add_common(freecmd);

    auto* exp = app.add_subcommand("export", "Export a geometry file");
    exp->add_option("file", opt.input, "Geometry JSON")->required();
    exp->add_flag("--dot", opt.dot, "Graphviz output");
    add_common(exp);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*build) return run_build(opt);
        if (*check) return run_check(opt);
        if (*aut) return run_aut(opt);
        if (*verify) return run_verify(opt);
        if (*freecmd) return run_free(opt);
        if (*exp) return run_export(opt);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const SizeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: malformed JSON: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
