#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "diagbase/acceptance.hpp"
#include "diagbase/errors.hpp"
#include "diagbase/report.hpp"

using namespace diagbase;

namespace {

enum Exit { kOk = 0, kOther = 1, kValidation = 2, kBudget = 3, kPrecondition = 4 };

struct Config {
    std::string catalog;
    std::string group = "A5";
    std::size_t k = 2;
    std::string out_part = "full";
    std::string top = "Sym(2)";
    bool symbolic = false;
    std::uint64_t budget = kDefaultEnumerationBudget;
    std::size_t node_budget = kSolverNodeBudget;
    std::size_t samples = 10'000;
    std::uint64_t seed = 0x5EED;
    std::string format = "json";
    std::string output;
    std::size_t workers = 1;
    bool no_timing = false;
    std::string method = "auto";
    std::vector<std::string> points;
};

Json echo(const Config& c, const std::string& command) {
    Json j{{"command", command}, {"catalog", c.catalog.empty() ? default_catalog_path() : c.catalog}};
    if (command != "catalog-validate" && command != "paper-suite") {
        j["group"] = c.group;
        j["k"] = c.k;
        j["out_part"] = c.out_part;
        j["top"] = c.top;
        j["symbolic_top"] = c.symbolic;
    }
    j["budget"] = c.budget;
    j["node_budget"] = c.node_budget;
    j["samples"] = c.samples;
    j["seed"] = c.seed;
    j["format"] = c.format;
    j["workers"] = c.workers;
    if (command == "base-construct") j["method"] = c.method;
    if (command == "base-verify") j["points"] = c.points;
    return j;
}

std::vector<SimpleGroupSpec> catalog(const Config& c) {
    return load_catalog_file(c.catalog.empty() ? default_catalog_path() : c.catalog);
}

DiagTypeGroup instance(const Config& c) {
    auto cg = materialize(catalog(c), c.group);
    auto out = parse_out_part(c.out_part, *cg.aut);
    TopGroup top = TopGroup::parse(c.top, c.k);
    // --symbolic keeps Alt/Sym tops off the table path even when small
    if (c.symbolic && top.is_sym()) top = TopGroup::sym(c.k);
    else if (c.symbolic && top.contains_alt()) top = TopGroup::alt(c.k);
    return build_group(cg, c.k, out, top);
}

OmegaPoint parse_point(const DiagTypeGroup& g, const std::string& text) {
    std::istringstream in(text);
    std::vector<TElem> s;
    long long v;
    while (in >> v) {
        if (v < 0 || static_cast<std::uint64_t>(v) >= g.t().order())
            throw ValidationError("point entry " + std::to_string(v) + " is not an element index of " + g.t().name());
        s.push_back(static_cast<TElem>(v));
        if (in.peek() == ',') in.get();
    }
    if (!in.eof()) throw ValidationError("cannot parse point '" + text + "'");
    if (s.size() != g.k())
        throw ValidationError("point '" + text + "' has " + std::to_string(s.size()) + " entries, expected k = " +
                              std::to_string(g.k()));
    return point_from(g, s);
}

std::pair<std::vector<OmegaPoint>, std::string> construct(const DiagTypeGroup& g, const std::string& method) {
    const std::size_t k = g.k();
    if (method == "small-k") return {construct_small_k_base(g), method};
    if (method == "digit") return {construct_digit_base(g), method};
    if (method == "distinguishing" || method == "generator") {
        auto r = method == "distinguishing" ? construct_distinguishing_base(g) : construct_generator_base(g);
        if (!r) throw PreconditionError("the " + method + " construction does not apply to " + g.descriptor());
        return {*r, method};
    }
    if (method != "auto") throw ValidationError("unknown method '" + method + "'");
    if (k <= 4) return {construct_small_k_base(g), "small-k"};
    if (!g.top().contains_alt()) {
        if (auto r = construct_distinguishing_base(g)) return {*r, "distinguishing"};
        if (k <= 32)
            if (auto r = construct_generator_base(g)) return {*r, "generator"};
    }
    return {construct_digit_base(g), "digit"};
}

Json run_command(const std::string& cmd, const Config& c, int& status, std::vector<Json>& csv_rows) {
    if (cmd == "catalog-validate") {
        auto specs = parse_catalog_file(c.catalog.empty() ? default_catalog_path() : c.catalog);
        Json groups = Json::array();
        bool ok = true;
        for (const auto& s : specs) {
            auto v = validate_spec(s);
            ok = ok && v.ok();
            groups.push_back(to_json(v));
            csv_rows.push_back({{"group", v.group}, {"ok", v.ok()}, {"checks", v.checks.size()}});
        }
        if (!ok) status = kValidation;
        return Json{{"ok", ok}, {"groups", groups}};
    }
    if (cmd == "paper-suite") {
        AcceptanceOptions o;
        o.catalog_path = c.catalog;
        o.workers = c.workers;
        o.seed = c.seed;
        o.mc_samples = c.samples;
        auto rs = run_acceptance(o);
        Json list = Json::array();
        bool ok = true;
        for (const auto& r : rs) {
            ok = ok && r.passed;
            list.push_back(to_json(r, !c.no_timing));
            csv_rows.push_back({{"criterion", r.id}, {"title", r.title}, {"passed", r.passed}, {"detail", r.detail}});
        }
        if (!ok) status = kOther;
        return Json{{"all_passed", ok}, {"criteria", list}};
    }

    auto g = instance(c);
    Json res{{"instance", describe(g)}};
    Json row{{"group", c.group}, {"k", c.k}, {"out_part", c.out_part}, {"top", c.top}};
    if (cmd == "base-construct") {
        auto [pts, used] = construct(g, c.method);
        auto cert = is_base(g, pts);
        if (!cert.is_base) throw std::logic_error("construction '" + used + "' did not produce a base");
        res["method"] = used;
        res["certificate"] = to_json(g, cert);
        res["pyber"] = to_json(pyber_check(g, pts.size(), false));
        row["method"] = used;
        row["size"] = pts.size();
        row["is_base"] = cert.is_base;
    } else if (cmd == "base-min") {
        auto m = minimal_base_size(g, c.budget, c.workers);
        auto cert = is_base(g, m.base);
        res["b"] = m.size;
        res["search_nodes"] = m.nodes;
        res["certificate"] = to_json(g, cert);
        res["pyber"] = to_json(pyber_check(g, m.size, true));
        row["b"] = m.size;
    } else if (cmd == "base-verify") {
        std::vector<OmegaPoint> pts;
        for (const auto& p : c.points) pts.push_back(parse_point(g, p));
        auto cert = is_base(g, pts);
        res["certificate"] = to_json(g, cert);
        row["size"] = cert.points.size();
        row["is_base"] = cert.is_base;
        row["stabilizer_order"] = cert.stabilizer_order.str();
    } else if (cmd == "prob-exact") {
        auto exact = exact_nonbase_pair_proportion(g, c.budget, c.workers);
        auto q = q2_bound_exact(g, c.budget, c.workers);
        res["exact_nonbase_pair_fraction"] = to_json(exact);
        res["q2_bound"] = to_json(q);
        res["bound_holds"] = exact <= q.total;
        row["exact_nonbase"] = to_string(exact);
        row["q2_bound"] = to_string(q.total);
    } else if (cmd == "prob-mc") {
        auto mc = monte_carlo_nonbase(g, c.samples, c.seed, c.workers);
        res["monte_carlo"] = to_json(mc);
        row["samples"] = mc.samples;
        row["nonbase"] = mc.nonbase;
        row["fraction"] = mc.fraction();
        row["seed"] = mc.seed;
    }
    csv_rows.push_back(row);
    return res;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Base sizes of diagonal-type permutation groups"};
    app.require_subcommand(1);
    Config c;
    const std::vector<std::string> commands{"catalog-validate", "base-construct", "base-min", "base-verify",
                                            "prob-exact",       "prob-mc",        "paper-suite"};
    for (const auto& name : commands) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--catalog", c.catalog, "catalog file");
        sub->add_option("--format", c.format, "json | csv | text")->check(CLI::IsMember({"json", "csv", "text"}));
        sub->add_option("--output", c.output, "write the report here instead of stdout");
        sub->add_option("--workers", c.workers, "worker threads (0: all cores)");
        sub->add_option("--seed", c.seed, "random seed");
        sub->add_option("--samples", c.samples, "Monte Carlo samples")->check(CLI::PositiveNumber);
        sub->add_option("--budget", c.budget, "enumeration cap")->check(CLI::PositiveNumber);
        sub->add_option("--node-budget", c.node_budget, "solver node cap")->check(CLI::PositiveNumber);
        sub->add_flag("--no-timing", c.no_timing, "omit wall-clock timing for byte-identical reports");
        if (name == "catalog-validate" || name == "paper-suite") continue;
        sub->add_option("--group", c.group, "catalog group, e.g. A5, L2(7)")->required();
        sub->add_option("--k", c.k, "number of socle factors")->required();
        sub->add_option("--out-part", c.out_part, "full | inner | comma-separated Out labels");
        sub->add_option("--top", c.top, "trivial, Alt(k), Sym(k), Ck, Dk, or generators in cycle notation")->required();
        sub->add_flag("--symbolic", c.symbolic, "keep an Alt/Sym top symbolic");
        if (name == "base-construct")
            sub->add_option("--method", c.method, "auto | small-k | digit | distinguishing | generator");
        if (name == "base-verify") sub->add_option("--point", c.points, "point as k element indices")->required();
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kValidation;
    }
    const std::string cmd = app.get_subcommands().front()->get_name();

    int status = kOk;
    Json result;
    std::vector<Json> rows;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        result = run_command(cmd, c, status, rows);
    } catch (const ParseError& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return kValidation;
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return kValidation;
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << '\n';
        return kBudget;
    } catch (const PreconditionError& e) {
        std::cerr << "precondition failed: " << e.what() << '\n';
        return kPrecondition;
    } catch (const UnsupportedError& e) {
        std::cerr << "unsupported: " << e.what() << '\n';
        return kPrecondition;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kOther;
    }
    std::optional<double> secs;
    if (!c.no_timing) secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    Json report = make_report(cmd, echo(c, cmd), result, secs);

    std::string text;
    if (c.format == "json") text = report.dump(2) + "\n";
    else if (c.format == "csv") text = to_csv(rows);
    else text = to_text(report);

    if (c.output.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(c.output);
        if (!f) {
            std::cerr << "error: cannot write " << c.output << '\n';
            return kOther;
        }
        f << text;
    }
    return status;
}
