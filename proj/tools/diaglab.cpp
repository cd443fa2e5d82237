// Command line front end for the diaglab headers.

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "diaglab/diaglab.hpp"

using namespace diaglab;

namespace {

struct Config {
    std::string group;
    std::size_t m = 2;
    std::string format = "json";
    bool paranoid = false;
    bool exact = false;
    std::size_t cap_vertices = 0;
    std::size_t cap_cliques = 0;
    std::size_t cap_exact = 0;
    std::string out;
};

Caps caps_for(const Config& cfg) {
    Caps caps = Caps::from_environment();
    if (cfg.cap_vertices) caps.vertices = cfg.cap_vertices;
    if (cfg.cap_cliques) caps.cliques = cfg.cap_cliques;
    if (cfg.cap_exact) caps.exact_colouring = cfg.cap_exact;
    return caps;
}

void render_text(std::ostream& os, const json& j, int indent) {
    std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    auto scalar_array = [](const json& a) {
        return std::all_of(a.begin(), a.end(), [](const json& x) { return !x.is_structured(); });
    };
    if (j.is_object()) {
        for (auto& [k, v] : j.items()) {
            if (v.is_object() || (v.is_array() && !scalar_array(v) && !v.empty())) {
                os << pad << k << ":\n";
                render_text(os, v, indent + 1);
            } else if (v.is_string()) {
                os << pad << k << ": " << v.get<std::string>() << "\n";
            } else {
                os << pad << k << ": " << v.dump() << "\n";
            }
        }
    } else if (j.is_array()) {
        for (auto& v : j) {
            if (v.is_object() && scalar_array(v)) {
                os << pad << "-";
                const char* sep = " ";
                for (auto& [k, x] : v.items()) {
                    os << sep << k << ": " << (x.is_string() ? x.get<std::string>() : x.dump());
                    sep = ", ";
                }
                os << "\n";
            } else if (v.is_structured()) {
                os << pad << "-\n";
                render_text(os, v, indent + 1);
            } else {
                os << pad << "- " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
            }
        }
    } else {
        os << pad << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
    }
}

void emit(const Config& cfg, const json& j) {
    std::ostringstream body;
    if (cfg.format == "text") render_text(body, j, 0);
    else body << j.dump(2) << "\n";
    if (cfg.out.empty()) {
        std::cout << body.str();
    } else {
        std::ofstream f(cfg.out);
        if (!f) throw ValidationError("cannot write " + cfg.out);
        f << body.str();
    }
}

void require_report_format(const Config& cfg) {
    if (cfg.format != "json" && cfg.format != "text")
        throw ParseError("unknown output format '" + cfg.format + "' (json, text)");
}

int cmd_build(Config cfg) {
    if (cfg.format == "json") cfg.format = "graph6";
    auto caps = caps_for(cfg);
    auto G = parse_group_spec(cfg.group, caps);
    auto fmt = parse_export_format(cfg.format);
    auto g = build_graph(G, cfg.m, caps);
    std::string data = export_graph(g, fmt);
    json summary{{"group", cfg.group}, {"m", cfg.m}, {"N", g.size()}, {"valency", g.valency()},
                 {"edges", g.graph().edge_count()}};
    if (cfg.out.empty()) {
        std::cout << data;
        std::cerr << summary.dump() << "\n";
    } else {
        std::ofstream f(cfg.out);
        if (!f) throw ValidationError("cannot write " + cfg.out);
        f << data;
        std::cout << summary.dump(2) << "\n";
    }
    return exit_ok;
}

int cmd_semilattice(const Config& cfg) {
    auto caps = caps_for(cfg);
    auto G = parse_group_spec(cfg.group, caps);
    auto sl = build_semilattice(G, cfg.m, caps);
    if (cfg.format == "dot") {
        if (cfg.out.empty()) std::cout << hasse_dot(sl);
        else std::ofstream(cfg.out) << hasse_dot(sl);
        return exit_ok;
    }
    require_report_format(cfg);
    json elems = json::array();
    for (std::size_t i = 0; i < sl.elements.size(); ++i)
        elems.push_back({{"name", sl.name(i)}, {"rank", sl.rank[i]}, {"blocks", sl.elements[i].block_count()}});
    bool hyp = verify_semilattice_hypothesis(G, cfg.m, caps);
    emit(cfg, {{"q", sl.q}, {"m", sl.m}, {"elements", elems}, {"rank_counts", sl.rank_counts()},
               {"hypothesis", hyp}});
    return hyp ? exit_ok : exit_check_failed;
}

int cmd_mobius(const Config& cfg) {
    require_report_format(cfg);
    auto caps = caps_for(cfg);
    auto G = parse_group_spec(cfg.group, caps);
    auto sl = build_semilattice(G, cfg.m, caps);
    auto r = verify_mobius(sl);
    emit(cfg, mobius_json(sl, r));
    return r.mismatches.empty() && r.zeta_inverse_ok ? exit_ok : exit_check_failed;
}

int cmd_spectrum(const Config& cfg) {
    require_report_format(cfg);
    auto caps = caps_for(cfg);
    auto G = parse_group_spec(cfg.group, caps);
    auto closed = spectrum_closed_form(G.order(), cfg.m);
    auto g = build_graph(G, cfg.m, caps);
    auto traced = spectrum_trace_moments(g, cfg.paranoid);
    bool agree = closed.same_spectrum(traced);
    emit(cfg, {{"closed_form", spectrum_json(closed)}, {"trace_moments", spectrum_json(traced)}, {"agree", agree}});
    return agree ? exit_ok : exit_check_failed;
}

int cmd_diameter(const Config& cfg) {
    require_report_format(cfg);
    auto caps = caps_for(cfg);
    auto G = parse_group_spec(cfg.group, caps);
    auto g = build_graph(G, cfg.m, caps);
    auto d = diameter(g, cfg.paranoid);
    auto dr = is_distance_regular(g.graph(), 0, cfg.paranoid);
    json j{{"q", g.q()}, {"m", g.m()}, {"N", g.size()}, {"diameter", d.bfs}, {"diameter_formula", d.formula},
           {"all_pairs", d.all_pairs}, {"dr", dr.distance_regular}};
    if (dr.distance_regular) j["intersection_array"] = {{"b", dr.b}, {"c", dr.c}};
    emit(cfg, j);
    return d.matches() ? exit_ok : exit_check_failed;
}

int cmd_cliques(const Config& cfg) {
    require_report_format(cfg);
    auto caps = caps_for(cfg);
    auto G = parse_group_spec(cfg.group, caps);
    auto g = build_graph(G, cfg.m, caps);
    auto c = analyse_cliques(g, caps);
    auto cover = clique_cover(g, caps);
    bool cover_ok = validate_clique_cover(g.graph(), cover);
    auto dr = is_distance_regular(g.graph(), 0, cfg.paranoid);
    json j = graph_property_json(g, diameter(g), c, dr);
    j["maximal_cliques"] = c.maximal.size();
    j["maximum_cliques"] = c.maximum_count;
    j["exception"] = exception_name(c.exception);
    j["exception_description_ok"] = c.exception_description_ok;
    j["maximum_are_parts"] = c.maximum_are_parts;
    j["all_maximal_are_parts"] = c.all_maximal_are_parts;
    j["cover_size"] = cover.size();
    j["cover_valid"] = cover_ok;
    emit(cfg, j);
    return cover_ok && c.exception_description_ok ? exit_ok : exit_check_failed;
}

int cmd_chromatic(const Config& cfg) {
    require_report_format(cfg);
    auto caps = caps_for(cfg);
    auto G = parse_group_spec(cfg.group, caps);
    ChromaticOptions opt;
    opt.exact = cfg.exact;
    auto v = chromatic_verdict(G, cfg.m, opt, caps);
    emit(cfg, chromatic_json(v));
    return v.witness_valid ? exit_ok : exit_check_failed;
}

int cmd_mapping(const Config& cfg) {
    require_report_format(cfg);
    auto caps = caps_for(cfg);
    auto G = parse_group_spec(cfg.group, caps);
    bool hp = hall_paige_predicate(G);
    auto phi = find_complete_mapping(G, caps);
    json j{{"group", cfg.group}, {"order", G.order()}, {"hall_paige", hp}};
    if (phi) {
        j["complete_mapping"] = *phi;  // image of each element index
    } else {
        j["complete_mapping"] = nullptr;
    }
    emit(cfg, j);
    return phi.has_value() == hp ? exit_ok : exit_check_failed;
}

int cmd_symmetry(const Config& cfg) {
    require_report_format(cfg);
    auto caps = caps_for(cfg);
    auto G = parse_group_spec(cfg.group, caps);
    auto g = build_graph(G, cfg.m, caps);
    auto c = analyse_cliques(g, caps);
    auto r = symmetry_report(g, c.maximal, caps);
    emit(cfg, symmetry_json(r));
    bool ok = r.order == r.order_formula && r.vertex_orbits == 1 && r.generators_are_automorphisms &&
              r.primitivity.criterion_agrees() && r.partition_action_full;
    return ok ? exit_ok : exit_check_failed;
}

int cmd_check_all(const Config& cfg) {
    require_report_format(cfg);
    RunOptions opt{cfg.paranoid, cfg.exact, caps_for(cfg)};
    auto ledger = check_all(cfg.group, cfg.m, opt);
    if (cfg.format == "text") {
        std::ostringstream t;
        t << ledger.group << " m=" << ledger.m << (ledger.ok() ? "  ok" : "  FAIL") << "\n";
        for (auto& c : ledger.claims) {
            t << "  " << std::left << std::setw(8) << status_name(c.status) << std::setw(28) << c.id << c.statement;
            if (!c.detail.empty()) t << "  [" << c.detail << "]";
            t << "\n";
        }
        if (cfg.out.empty()) std::cout << t.str();
        else std::ofstream(cfg.out) << t.str();
    } else {
        emit(cfg, ledger.to_json());
    }
    if (ledger.error) std::cerr << "error: " << *ledger.error << "\n";
    for (auto& c : ledger.claims)
        if (c.status == ClaimStatus::fail) std::cerr << "failed: " << c.id << " (" << c.detail << ")\n";
    return ledger.exit_code();
}

std::vector<std::size_t> parse_dims(const std::string& s) {
    std::vector<std::size_t> out;
    std::stringstream in(s);
    std::string tok;
    try {
        while (std::getline(in, tok, ',')) {
            if (tok.empty()) continue;
            auto dash = tok.find('-');
            if (dash == std::string::npos) {
                out.push_back(std::stoul(tok));
            } else {
                std::size_t lo = std::stoul(tok.substr(0, dash)), hi = std::stoul(tok.substr(dash + 1));
                if (lo > hi) throw ParseError("empty dimension range " + tok);
                for (std::size_t m = lo; m <= hi; ++m) out.push_back(m);
            }
        }
    } catch (const std::logic_error&) {
        throw ParseError("bad dimension list '" + s + "'");
    }
    return out;
}

std::vector<std::string> split_groups(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string tok;
    while (std::getline(in, tok, ','))
        if (!tok.empty()) out.push_back(tok);
    return out;
}

int cmd_grid(const Config& cfg, const std::string& groups, const std::string& dims, std::size_t max_vertices,
             std::size_t threads) {
    require_report_format(cfg);
    GridOptions opt;
    opt.groups = split_groups(groups);
    opt.dims = parse_dims(dims);
    opt.max_vertices = max_vertices;
    opt.threads = threads;
    opt.run = RunOptions{cfg.paranoid, cfg.exact, caps_for(cfg)};
    auto res = run_grid(opt);
    json j = res.to_json();
    if (cfg.format == "text") {
        std::ostringstream t;
        for (auto& l : res.ledgers) {
            std::size_t pass = 0, fail = 0, other = 0;
            for (auto& c : l.claims) {
                if (c.status == ClaimStatus::pass) ++pass;
                else if (c.status == ClaimStatus::fail) ++fail;
                else ++other;
            }
            t << l.group << " m=" << l.m << "  " << (l.ok() ? "ok  " : "FAIL") << "  pass " << pass << "  fail "
              << fail << "  other " << other;
            if (l.error) t << "  error: " << *l.error;
            t << "\n";
        }
        for (auto& [gname, m] : res.skipped) t << gname << " m=" << m << "  skipped (vertex limit)\n";
        t << "failures: " << j["failures"].get<std::size_t>() << "\n";
        if (cfg.out.empty()) std::cout << t.str();
        else std::ofstream(cfg.out) << t.str();
    } else {
        emit(cfg, j);
    }
    return res.exit_code();
}

template <typename F>
int guarded(F&& f) {
    try {
        return f();
    } catch (const CapExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_cap;
    } catch (const ConsistencyError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_check_failed;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Diagonal groups and diagonal graphs"};
    app.require_subcommand(1);
    Config cfg;

    auto common = [&](CLI::App* sub, bool needs_group = true) {
        auto* g = sub->add_option("--group,-g", cfg.group, "group spec: C<n>, D<n>, S<n>, A<n>, Q8, V4, products AxB, file:<path>");
        if (needs_group) g->required();
        sub->add_option("--m,-m", cfg.m, "dimension m >= 1")->check(CLI::PositiveNumber)->capture_default_str();
        sub->add_option("--format,-f", cfg.format, "json or text (build: graph6, dot, edgelist; semilattice: dot)");
        sub->add_flag("--paranoid", cfg.paranoid, "exhaustive rechecks instead of vertex-transitivity shortcuts");
        sub->add_flag("--exact", cfg.exact, "run exact colouring search when small enough");
        sub->add_option("--cap-vertices", cfg.cap_vertices, "vertex cap (overrides DIAGLAB_CAP_VERTICES)")
            ->check(CLI::PositiveNumber);
        sub->add_option("--cap-cliques", cfg.cap_cliques, "clique enumeration vertex cap")->check(CLI::PositiveNumber);
        sub->add_option("--cap-exact", cfg.cap_exact, "exact colouring vertex cap")->check(CLI::PositiveNumber);
        sub->add_option("--out,-o", cfg.out, "output file");
    };

    std::vector<std::pair<CLI::App*, std::function<int()>>> handlers;
    auto add = [&](const char* name, const char* help, std::function<int()> fn) {
        auto* sub = app.add_subcommand(name, help);
        common(sub);
        handlers.emplace_back(sub, std::move(fn));
        return sub;
    };
    add("build", "build the diagonal graph and export it", [&] { return cmd_build(cfg); });
    add("semilattice", "list the diagonal semilattice", [&] { return cmd_semilattice(cfg); });
    add("mobius", "check the Moebius function against the closed form", [&] { return cmd_mobius(cfg); });
    add("spectrum", "closed-form and trace-moment spectra", [&] { return cmd_spectrum(cfg); });
    add("diameter", "diameter and distance-regularity", [&] { return cmd_diameter(cfg); });
    add("cliques", "clique structure and clique cover", [&] { return cmd_cliques(cfg); });
    add("chromatic", "chromatic number bounds with a witness colouring", [&] { return cmd_chromatic(cfg); });
    add("mapping", "complete mapping search and Hall-Paige condition", [&] { return cmd_mapping(cfg); });
    add("symmetry", "order, orbits and primitivity of D(G,m)", [&] { return cmd_symmetry(cfg); });
    add("check-all", "run every check for one instance", [&] { return cmd_check_all(cfg); });

    std::string grid_groups, grid_dims = "2-5";
    std::size_t max_vertices = 4096, threads = std::max(1u, std::thread::hardware_concurrency());
    auto* grid = app.add_subcommand("grid", "run check-all over groups x dimensions");
    common(grid, false);
    grid->add_option("--groups", grid_groups, "comma separated group specs");
    grid->add_option("--dims", grid_dims, "dimensions, e.g. 2-5 or 2,3,4");
    grid->add_option("--max-vertices", max_vertices, "skip instances with more vertices");
    grid->add_option("--threads,-j", threads, "worker threads")->check(CLI::PositiveNumber);
    handlers.emplace_back(grid, [&] { return cmd_grid(cfg, grid_groups, grid_dims, max_vertices, threads); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }
    for (auto& [sub, fn] : handlers)
        if (sub->parsed()) return guarded(fn);
    return exit_usage;
}
