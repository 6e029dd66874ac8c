// Command-line front end: enumeration, coefficient tables, star-product
// series, invariant forms, consistency checks, and a self-test driver.
//
// Exit codes: 0 success, 1 check failure, 2 usage error, 3 internal error.

#include "bstar/json_io.hpp"
#include "bstar/series.hpp"
#include "bstar/tensor.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <set>
#include <string>

using namespace bstar;

namespace {

struct RunConfig {
    std::string cache_dir = "cache";
    bool no_cache = false;
    int jobs = 1;
};

std::vector<PointedMultiDigraph> enumerate_cached(const RunConfig& cfg, int weight) {
    if (!cfg.no_cache) {
        if (auto hit = cache_load(cfg.cache_dir, weight)) return *hit;
    }
    auto graphs = enum_pointed_stable(weight, cfg.jobs);
    if (!cfg.no_cache) {
        std::error_code ec;
        std::filesystem::create_directories(cfg.cache_dir, ec);
        if (!ec) cache_store(cfg.cache_dir, weight, graphs);
    }
    return graphs;
}

GraphClass parse_class(const std::string& s) {
    if (s == "all") return GraphClass::AllStable;
    if (s == "con") return GraphClass::Connected;
    if (s == "scon") return GraphClass::StronglyConnected;
    if (s == "lambda") return GraphClass::Lambda;
    throw CLI::ValidationError("--class", "expected all|con|scon|lambda");
}

CoeffKind parse_kind(const std::string& s) {
    if (s == "Q") return CoeffKind::Q;
    if (s == "R") return CoeffKind::R;
    if (s == "z") return CoeffKind::z;
    if (s == "r") return CoeffKind::r;
    if (s == "Qf") return CoeffKind::Qf;
    if (s == "Rf") return CoeffKind::Rf;
    if (s == "zf") return CoeffKind::zf;
    if (s == "rf") return CoeffKind::rf;
    throw CLI::ValidationError("--kind", "expected Q|R|z|r|Qf|Rf|zf|rf");
}

int cmd_enumerate(const RunConfig& cfg, int weight, const std::string& cls,
                  const std::string& format) {
    auto all = enumerate_cached(cfg, weight);
    GraphClass gc = parse_class(cls);
    std::vector<PointedMultiDigraph> out;
    for (const auto& g : all) {
        Connectivity c = connectivity(g);
        bool keep = true;
        switch (gc) {
            case GraphClass::AllStable: keep = true; break;
            case GraphClass::Connected: keep = c != Connectivity::Disconnected; break;
            case GraphClass::StronglyConnected:
                keep = c == Connectivity::StronglyConnected;
                break;
            case GraphClass::Lambda:
                keep = c == Connectivity::StronglyConnected && in_lambda(g);
                break;
        }
        if (keep) out.push_back(g);
    }
    if (format == "json") {
        json j{{"schema_version", kSchemaVersion},
               {"weight", weight},
               {"class", cls},
               {"count", out.size()}};
        json arr = json::array();
        for (const auto& g : out) arr.push_back(graph_to_json(g));
        j["graphs"] = arr;
        std::cout << j.dump(1) << "\n";
    } else {
        for (const auto& g : out) std::cout << encode(g) << "\n";
    }
    return 0;
}

int cmd_coeff(const RunConfig& cfg, int weight, const std::string& kind_s,
              const std::string& format) {
    CoeffKind kind = parse_kind(kind_s);
    CoefficientTable t;
    t.weight = weight;
    t.kind = kind;
    if (kind_is_pointed(kind)) {
        for (const auto& g : enumerate_cached(cfg, weight))
            t.rows.emplace_back(g, coefficient(g, kind));
    } else {
        t = coefficient_table(weight, kind, cfg.jobs);
    }
    if (format == "json") {
        std::cout << table_to_json(t).dump(1) << "\n";
    } else if (format == "latex") {
        std::cout << "\\begin{tabular}{ll}\n";
        for (const auto& [g, v] : t.rows)
            std::cout << "$" << encode(g) << "$ & $" << to_string(v) << "$ \\\\\n";
        std::cout << "\\end{tabular}\n";
    } else {
        for (const auto& [g, v] : t.rows)
            std::cout << encode(g) << "\t" << to_string(v) << "\n";
    }
    return 0;
}

void print_sum_text(const GraphSum& s) {
    for (const auto& [g, c] : s.terms())
        std::cout << encode(g) << "\t" << to_string(c) << "\n";
}

int cmd_star(const RunConfig&, int order, bool bt, const std::string& format) {
    GraphSum sum;
    std::optional<GraphSum> fused;
    if (bt) {
        auto r = bt_coefficients(order);
        if (!r.orbit.ok()) throw std::logic_error("orbit property violated in composition");
        sum = r.two_pointed;
        fused = r.fused;
    } else {
        sum = star_coefficient(order);
    }
    if (format == "json") {
        json j{{"schema_version", kSchemaVersion}, {"order", order}, {"bt", bt},
               {"terms", sum_to_json(sum)}};
        if (fused) j["fused"] = sum_to_json(*fused);
        std::cout << j.dump(1) << "\n";
    } else if (format == "latex") {
        if (order > 3)
            throw std::out_of_range("invariant rendering implemented for orders 0..3");
        auto basis = bilinear_basis(order, bt);
        std::vector<GraphSum> exps;
        for (const auto& el : basis) exps.push_back(expand_to_graphs(el.expr, 2));
        auto target = bt ? sum : partition_split(sum);
        auto coords = solve_in_basis(exps, target);
        std::cout << render_combination(coords, basis, RenderFormat::Latex) << "\n";
    } else {
        print_sum_text(sum);
    }
    return 0;
}

int cmd_tensor(const RunConfig&, std::string expr, int order, const std::string& format) {
    // accept both --expr Q --order 3 and --expr Q3
    while (!expr.empty() && isdigit(static_cast<unsigned char>(expr.back()))) {
        order = expr.back() - '0';
        expr.pop_back();
    }
    std::vector<BasisElement> basis;
    std::vector<Rational> coords;
    if (expr == "Q" || expr == "R") {
        if (expr == "R" && order > 2)
            throw std::out_of_range(
                "the laplace-expansion coefficients render at orders 0..2 only");
        basis = sigma_basis(order);
        GraphSum target;
        if (expr == "Q") {
            target = star_coefficient(order);
        } else {
            for (const auto& [g, c] : coefficient_table(order, CoeffKind::R).rows)
                target.add_canonical(g, c);
        }
        coords = to_invariant_basis(target, order);
    } else if (expr == "C" || expr == "CBT") {
        bool bt = expr == "CBT";
        basis = bilinear_basis(order, bt);
        std::vector<GraphSum> exps;
        for (const auto& el : basis) exps.push_back(expand_to_graphs(el.expr, 2));
        GraphSum target =
            bt ? bt_coefficients(order).two_pointed : partition_split(star_coefficient(order));
        coords = solve_in_basis(exps, target);
    } else {
        throw CLI::ValidationError("--expr", "expected Qk|Rk|Ck|CBTk");
    }
    if (format == "json") {
        json names = json::array(), vals = json::array();
        for (const auto& el : basis) names.push_back(el.text);
        for (const auto& c : coords) vals.push_back(to_string(c));
        json j{{"schema_version", kSchemaVersion}, {"expr", expr}, {"order", order},
               {"basis", names}, {"coefficients", vals}};
        std::cout << j.dump(1) << "\n";
    } else {
        auto fmt = format == "latex" ? RenderFormat::Latex : RenderFormat::Text;
        std::cout << render_combination(coords, basis, fmt) << "\n";
    }
    return 0;
}

json diff_to_json(const GraphSum& diff) {
    json arr = json::array();
    for (const auto& [g, c] : diff.terms())
        arr.push_back(json{{"graph", graph_to_json(g)}, {"difference", to_string(c)}});
    return arr;
}

int cmd_check_assoc(int k) {
    auto res = assoc_check(k);
    if (res.pass && res.orbit.ok()) {
        std::cout << json{{"check", "assoc"}, {"order", k}, {"status", "pass"},
                          {"orbit_classes", res.orbit.classes_checked}}
                         .dump()
                  << "\n";
        return 0;
    }
    json j{{"check", "assoc"}, {"order", k}, {"status", "fail"}};
    if (!res.pass) j["diff"] = diff_to_json(res.diff);
    if (!res.orbit.ok()) j["orbit_violations"] = res.orbit.violations;
    std::cout << j.dump(1) << "\n";
    return 1;
}

int cmd_check_lemma(int weight) {
    // exhaustive orbit-property check over connected operand families
    OrbitStats stats;
    for (int a = 0; a <= weight; ++a) {
        for (const auto& gamma : enum_class(a, GraphClass::StronglyConnected)) {
            auto host = partition_split(gamma);
            for (int bw = 0; a + bw <= weight; ++bw) {
                for (const auto& h1 : enum_class(bw, GraphClass::Connected)) {
                    for (int cw = 0; a + bw + cw <= weight; ++cw) {
                        for (const auto& h2 : enum_class(cw, GraphClass::Connected)) {
                            substitute_two(host, GraphSum::single(h1), GraphSum::single(h2),
                                           {}, &stats);
                        }
                    }
                }
            }
        }
    }
    if (stats.ok()) {
        std::cout << json{{"check", "lemma-graph2"}, {"weight", weight},
                          {"status", "pass"}, {"classes", stats.classes_checked}}
                         .dump()
                  << "\n";
        return 0;
    }
    std::cout << json{{"check", "lemma-graph2"}, {"weight", weight}, {"status", "fail"},
                      {"violations", stats.violations}}
                     .dump(1)
              << "\n";
    return 1;
}

int cmd_check_loi(int k) {
    auto res = loi_recursion_check(k);
    json agree = json::array();
    for (const auto& a : res.agree) agree.push_back(json::array({a[0], a[1]}));
    std::string status = res.status == LoiStatus::Pass         ? "pass"
                         : res.status == LoiStatus::Inconclusive ? "inconclusive"
                                                                 : "fail";
    json j{{"check", "loi"}, {"order", k}, {"status", status},
           {"orientations", agree}, {"note", res.note}};
    if (res.status == LoiStatus::Fail) j["diff"] = diff_to_json(res.diff);
    std::cout << j.dump(1) << "\n";
    return res.status == LoiStatus::Fail ? 1 : 0;
}

int cmd_check_oracle(const RunConfig& cfg, int weight) {
    json bad = json::array();
    for (int k = 0; k <= weight; ++k) {
        for (const auto& g : enumerate_cached(cfg, k)) {
            auto m = minor_matrix(g);
            if (det_minus_identity(m) != det_oracle(m))
                bad.push_back(graph_to_json(g));
        }
    }
    if (bad.empty()) {
        std::cout << json{{"check", "det-oracle"}, {"weight", weight}, {"status", "pass"}}.dump()
                  << "\n";
        return 0;
    }
    std::cout << json{{"check", "det-oracle"}, {"weight", weight}, {"status", "fail"},
                      {"graphs", bad}}
                     .dump(1)
              << "\n";
    return 1;
}

int cmd_selftest(const RunConfig& cfg, const std::string& level) {
    int failures = 0;
    auto report = [&](const std::string& name, bool ok) {
        std::cout << (ok ? "ok   " : "FAIL ") << name << "\n";
        if (!ok) ++failures;
    };

    const int tbl[4][6] = {{1, 2, 9, 46, 314, 2638},
                           {1, 1, 4, 23, 178, 1637},
                           {1, 1, 2, 9, 61, 538},
                           {1, 1, 1, 5, 36, 331}};
    for (int k = 0; k <= 5; ++k) {
        auto all = enumerate_cached(cfg, k);
        int con = 0, scon = 0, lam = 0;
        for (const auto& g : all) {
            auto c = connectivity(g);
            if (c != Connectivity::Disconnected) ++con;
            if (c == Connectivity::StronglyConnected) {
                ++scon;
                if (in_lambda(g)) ++lam;
            }
        }
        bool ok = static_cast<int>(all.size()) == tbl[0][k] && con == tbl[1][k] &&
                  scon == tbl[2][k] && lam == tbl[3][k];
        report("counts at weight " + std::to_string(k), ok);
    }
    if (level == "table1") return failures == 0 ? 0 : 1;

    {
        // weight-4 coefficient tables: 36 nonzero values, 25 zeros
        std::multiset<std::string> values;
        int zeros = 0;
        for (const auto& g : enum_class(4, GraphClass::StronglyConnected)) {
            auto q = q_coeff(g);
            if (q == 0)
                ++zeros;
            else
                values.insert(to_string(q));
        }
        report("weight-4 zero count", zeros == 25);
        report("weight-4 nonzero count", values.size() == 36);
    }
    {
        auto c3 = star_coefficient(3);
        report("order-3 coefficient support", c3.support_size() == 5);
        auto coords = to_invariant_basis(c3, 3);
        std::vector<Rational> expect{Rational(1, 6),  Rational(-1, 2), Rational(-1, 12),
                                     Rational(-1, 3), Rational(-1, 3), Rational(-1, 12),
                                     Rational(2, 3),  Rational(-2, 3), Rational(-1, 3)};
        report("order-3 invariant coefficients", coords == expect);
    }
    {
        auto p = invert_series(berezin_series(3));
        GraphSum p3e;
        p3e.add(PointedMultiDigraph(1, {{3}}), Rational(-1, 6));
        p3e.add(PointedMultiDigraph(1, {{1, 1}, {1, 1}}), 1);
        p3e.add(PointedMultiDigraph(1, {{0, 2}, {2, 0}}), Rational(1, 4));
        p3e.add(PointedMultiDigraph(1, {{0, 2}, {1, 1}}), Rational(1, 2));
        p3e.add(PointedMultiDigraph(1, {{0, 1}, {2, 1}}), Rational(1, 2));
        p3e.add(PointedMultiDigraph(1, {{0, 0, 1}, {1, 1, 0}, {0, 1, 1}}), -1);
        report("inverse series order 3", p.terms[3] == p3e);
    }
    for (int k = 0; k <= 4; ++k) {
        auto res = assoc_check(k);
        report("associativity at order " + std::to_string(k), res.pass && res.orbit.ok());
    }
    {
        bool ok = true;
        for (int k = 0; k <= 4 && ok; ++k)
            for (const auto& g : enumerate_cached(cfg, k)) {
                auto m = minor_matrix(g);
                if (det_minus_identity(m) != det_oracle(m)) {
                    ok = false;
                    break;
                }
            }
        report("determinant oracle agreement", ok);
    }
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact graph calculus for Berezin-type star products"};
    app.require_subcommand(1);

    RunConfig cfg;
    if (const char* env = std::getenv("BSTAR_CACHE_DIR")) cfg.cache_dir = env;
    app.add_option("--cache-dir", cfg.cache_dir, "cache directory");
    app.add_flag("--no-cache", cfg.no_cache, "bypass the enumeration cache");
    app.add_option("--jobs", cfg.jobs, "worker threads inside enumeration")
        ->check(CLI::Range(1, 64));

    auto* enumerate = app.add_subcommand("enumerate", "pointed stable graphs of a weight");
    int weight = 0;
    std::string cls = "all", format = "text";
    enumerate->add_option("--weight", weight, "graph weight")->required();
    enumerate->add_option("--class", cls, "all|con|scon|lambda");
    enumerate->add_option("--format", format, "json|text");

    auto* coeff = app.add_subcommand("coeff", "coefficient tables");
    int cweight = 0;
    std::string kind = "Q", cformat = "text";
    coeff->add_option("--weight", cweight, "graph weight")->required();
    coeff->add_option("--kind", kind, "Q|R|z|r|Qf|Rf|zf|rf");
    coeff->add_option("--format", cformat, "json|text|latex");

    auto* star = app.add_subcommand("star", "product coefficients");
    int order = 0;
    bool bt = false;
    std::string sformat = "text";
    star->add_option("--order", order, "h-power")->required();
    star->add_flag("--bt", bt, "the transform-conjugated product");
    star->add_option("--format", sformat, "json|text|latex");

    auto* tensor_cmd = app.add_subcommand("tensor", "invariant forms");
    std::string expr = "Q", tformat = "text";
    int torder = 0;
    tensor_cmd->add_option("--expr", expr, "Qk|Rk|Ck|CBTk")->required();
    tensor_cmd->add_option("--order", torder, "weight");
    tensor_cmd->add_option("--format", tformat, "text|latex|json");

    auto* check = app.add_subcommand("check", "consistency checks");
    int assoc_k = -1, loi_k = -1, check_weight = -1;
    bool lemma = false, oracle = false;
    check->add_option("--assoc", assoc_k, "associativity through the given order");
    check->add_option("--loi", loi_k, "kernel-coefficient recursion at the given weight");
    check->add_flag("--lemma-graph2", lemma, "orbit property of two-slot substitution");
    check->add_flag("--det-oracle", oracle, "determinant against the subgraph oracle");
    check->add_option("--weight", check_weight, "weight bound for --lemma-graph2/--det-oracle");

    auto* selftest = app.add_subcommand("selftest", "reproduce the published values");
    std::string level = "table1";
    selftest->add_option("--level", level, "table1|full");

    try {
        app.parse(argc, argv);
        if (enumerate->parsed()) return cmd_enumerate(cfg, weight, cls, format);
        if (coeff->parsed()) return cmd_coeff(cfg, cweight, kind, cformat);
        if (star->parsed()) return cmd_star(cfg, order, bt, sformat);
        if (tensor_cmd->parsed()) return cmd_tensor(cfg, expr, torder, tformat);
        if (check->parsed()) {
            if (assoc_k >= 0) return cmd_check_assoc(assoc_k);
            if (loi_k >= 0) return cmd_check_loi(loi_k);
            if (lemma) {
                if (check_weight < 0)
                    throw CLI::ValidationError("--lemma-graph2", "needs --weight");
                return cmd_check_lemma(check_weight);
            }
            if (oracle) {
                if (check_weight < 0)
                    throw CLI::ValidationError("--det-oracle", "needs --weight");
                return cmd_check_oracle(cfg, check_weight);
            }
            throw CLI::ValidationError("check", "nothing to check");
        }
        if (selftest->parsed()) {
            if (level != "table1" && level != "full")
                throw CLI::ValidationError("--level", "expected table1|full");
            return cmd_selftest(cfg, level);
        }
        return 2;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
