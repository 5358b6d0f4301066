#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "diagbase/errors.hpp"
#include "diagbase/simple_group.hpp"

#ifndef DIAGBASE_DATA_DIR
#define DIAGBASE_DATA_DIR "data"
#endif

namespace diagbase {

namespace {

std::string trim(std::string_view s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    std::size_t e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

struct RawField {
    std::size_t line;
    std::string value;
};

std::size_t parse_count(const RawField& f, const std::string& key) {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(f.value, &pos);
    } catch (const std::exception&) {
        throw ParseError(f.line, key, "expected a non-negative integer, got '" + f.value + "'");
    }
    if (pos != f.value.size()) throw ParseError(f.line, key, "trailing characters after integer");
    return static_cast<std::size_t>(v);
}

std::pair<Perm, Perm> parse_pair(const RawField& f, const std::string& key, std::size_t degree) {
    auto semi = f.value.find(';');
    if (semi == std::string::npos || f.value.find(';', semi + 1) != std::string::npos)
        throw ParseError(f.line, key, "expected two permutations separated by ';'");
    try {
        return {Perm::parse(trim(f.value.substr(0, semi)), degree), Perm::parse(trim(f.value.substr(semi + 1)), degree)};
    } catch (const ValidationError& e) {
        throw ParseError(f.line, key, e.what());
    }
}

const std::vector<std::string> kKnownKeys = {"natural_degree", "order", "out_order", "min_index", "generators",
                                             "gen_pair_distinct_orders", "involution_pair", "aut_generator", "source"};

SimpleGroupSpec finish_record(const std::string& name, std::size_t start_line,
                              const std::multimap<std::string, RawField>& fields) {
    auto single = [&](const std::string& key) -> const RawField& {
        auto n = fields.count(key);
        if (n == 0) throw ParseError(start_line, key, "missing in record '" + name + "'");
        if (n > 1) throw ParseError(std::next(fields.lower_bound(key))->second.line, key, "given more than once");
        return fields.find(key)->second;
    };
    SimpleGroupSpec s;
    s.name = name;
    s.natural_degree = parse_count(single("natural_degree"), "natural_degree");
    if (s.natural_degree == 0) throw ParseError(single("natural_degree").line, "natural_degree", "must be positive");
    s.order = parse_count(single("order"), "order");
    s.out_order = parse_count(single("out_order"), "out_order");
    s.min_index = parse_count(single("min_index"), "min_index");
    auto gens = parse_pair(single("generators"), "generators", s.natural_degree);
    s.generators = {gens.first, gens.second};
    s.gen_pair_distinct_orders = parse_pair(single("gen_pair_distinct_orders"), "gen_pair_distinct_orders", s.natural_degree);
    s.involution_pair = parse_pair(single("involution_pair"), "involution_pair", s.natural_degree);
    auto [lo, hi] = fields.equal_range("aut_generator");
    for (auto it = lo; it != hi; ++it) s.aut_generators.push_back(parse_pair(it->second, "aut_generator", s.natural_degree));
    if (fields.count("source")) s.source = single("source").value;
    return s;
}

}  // namespace

std::vector<SimpleGroupSpec> parse_catalog(std::istream& in) {
    std::vector<SimpleGroupSpec> out;
    std::string line;
    std::size_t lineno = 0;
    std::optional<std::string> current;
    std::size_t start = 0;
    std::multimap<std::string, RawField> fields;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        auto sp = t.find_first_of(" \t");
        std::string key = t.substr(0, sp);
        std::string value = sp == std::string::npos ? std::string{} : trim(t.substr(sp));
        if (key == "group") {
            if (current) throw ParseError(lineno, "group", "previous record '" + *current + "' has no 'end'");
            if (value.empty()) throw ParseError(lineno, "group", "missing group name");
            for (const auto& s : out)
                if (s.name == value) throw ParseError(lineno, "group", "duplicate group '" + value + "'");
            current = value;
            start = lineno;
            fields.clear();
        } else if (key == "end") {
            if (!current) throw ParseError(lineno, "end", "'end' outside a record");
            out.push_back(finish_record(*current, start, fields));
            current.reset();
        } else {
            if (!current) throw ParseError(lineno, key, "field outside a 'group' record");
            if (std::find(kKnownKeys.begin(), kKnownKeys.end(), key) == kKnownKeys.end())
                throw ParseError(lineno, key, "unknown field");
            fields.emplace(key, RawField{lineno, value});
        }
    }
    if (current) throw ParseError(lineno, "end", "record '" + *current + "' is not terminated");
    return out;
}

std::vector<SimpleGroupSpec> parse_catalog_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error("cannot open catalog file " + path);
    return parse_catalog(f);
}

bool SpecValidation::ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

namespace {

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> ps;
    for (std::uint64_t p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            ps.push_back(p);
            while (n % p == 0) n /= p;
        }
    if (n > 1) ps.push_back(n);
    return ps;
}

// Fewest points on which a permutation of order m can act: sum of its prime-power parts.
std::uint64_t min_perm_degree_for_order(std::uint64_t m) {
    std::uint64_t d = 0;
    for (std::uint64_t p : prime_factors(m)) {
        std::uint64_t q = 1;
        while (m % (q * p) == 0) q *= p;
        d += q;
    }
    return d;
}

bool divides_factorial(std::uint64_t n, std::uint64_t j) {
    std::uint64_t rest = n;
    for (std::uint64_t i = 2; i <= j && rest > 1; ++i) rest /= std::gcd(rest, i);
    return rest == 1;
}

// Conjugacy class of x under T, by breadth-first conjugation with the generators.
std::vector<TElem> t_class(const SimpleGroup& g, TElem x) {
    std::vector<char> seen(g.order(), 0);
    std::vector<TElem> cls{x};
    seen[x] = 1;
    for (std::size_t i = 0; i < cls.size(); ++i)
        for (int s = 0; s < 2; ++s) {
            TElem y = g.conj(cls[i], g.gen(s));
            if (!seen[y]) {
                seen[y] = 1;
                cls.push_back(y);
            }
        }
    return cls;
}

}  // namespace

SpecValidation validate_spec(const SimpleGroupSpec& spec) {
    SpecValidation v;
    v.group = spec.name;
    auto add = [&](std::string name, bool ok, std::string detail) {
        v.checks.push_back({std::move(name), ok, std::move(detail)});
    };

    std::shared_ptr<const SimpleGroup> gp;
    try {
        gp = std::make_shared<const SimpleGroup>(spec);
        add("order", true, "generators close to order " + std::to_string(gp->order()));
    } catch (const Error& e) {
        add("order", false, e.what());
        return v;
    }
    const SimpleGroup& g = *gp;
    const std::uint64_t n = g.order();

    bool nonabelian = g.mul(g.gen(0), g.gen(1)) != g.mul(g.gen(1), g.gen(0));
    bool simple = nonabelian;
    std::vector<char> done(n, 0);
    for (TElem x = 1; x < n && simple; ++x) {
        if (done[x]) continue;
        auto cls = t_class(g, x);
        for (TElem y : cls) done[y] = 1;
        // The normal closure of x is generated by its class.
        simple = g.subgroup_order(cls) == n;
    }
    add("nonabelian_simple", simple, simple ? "every nontrivial class generates T" : "a proper normal closure exists");

    auto ps = prime_factors(n);
    add("three_primes", ps.size() >= 3, std::to_string(ps.size()) + " distinct primes divide |T|");

    auto [dx, dy] = g.distinct_order_pair();
    bool dist_ok = g.elem_order(dx) != g.elem_order(dy) && g.subgroup_order({dx, dy}) == n;
    add("distinct_order_pair", dist_ok,
        "orders " + std::to_string(g.elem_order(dx)) + ", " + std::to_string(g.elem_order(dy)) +
            ", generated order " + std::to_string(g.subgroup_order({dx, dy})));

    auto [ix, iy] = g.involution_pair();
    bool inv_ok = g.elem_order(iy) == 2 && g.subgroup_order({ix, iy}) == n;
    add("involution_pair", inv_ok,
        "second element of order " + std::to_string(g.elem_order(iy)) + ", generated order " +
            std::to_string(g.subgroup_order({ix, iy})));

    std::shared_ptr<const AutTable> aut;
    try {
        aut = std::make_shared<const AutTable>(gp);
        add("aut_table", true, "|Aut(T)| = " + std::to_string(aut->order()) + ", |Out(T)| = " + std::to_string(aut->out_order()));
    } catch (const Error& e) {
        add("aut_table", false, e.what());
    }

    std::uint64_t out = aut ? aut->out_order() : spec.out_order;
    add("out_cubed_below_order", out * out * out < n,
        "|Out(T)|^3 = " + std::to_string(out * out * out) + ", |T| = " + std::to_string(n));

    // min_index: the natural action gives a subgroup of index natural_degree; no
    // smaller index j is possible when T cannot embed in S_j.
    GroupTable nat = g.natural_table();
    bool nat_transitive = is_transitive(nat);
    bool lower_ok = true;
    std::uint64_t max_elem_degree = 0;
    for (TElem a = 0; a < n; ++a) max_elem_degree = std::max(max_elem_degree, min_perm_degree_for_order(g.elem_order(a)));
    for (std::uint64_t j = 2; j < spec.min_index && lower_ok; ++j)
        if (divides_factorial(n, j) && max_elem_degree <= j) lower_ok = false;
    v.min_index_verified = nat_transitive && spec.min_index == spec.natural_degree && lower_ok;
    add("min_index", v.min_index_verified || !spec.source.empty(),
        v.min_index_verified ? "verified: transitive of degree " + std::to_string(spec.natural_degree) +
                                   ", T embeds in no smaller symmetric group"
                             : "not verified computationally; recorded source: " + spec.source);

    // f_p(Y) <= [X:Y] f_p(X) on a few subgroup pairs.
    std::vector<std::string> fx;
    bool fx_ok = true;
    auto check_fx = [&](const std::string& label, const GroupTable& y, const GroupTable& x) {
        std::size_t fy = prime_order_class_count(y), fxv = prime_order_class_count(x);
        std::size_t idx = x.order() / y.order();
        bool ok = fy <= idx * fxv;
        fx_ok = fx_ok && ok;
        fx.push_back(label + ": " + std::to_string(fy) + " <= " + std::to_string(idx) + "*" + std::to_string(fxv));
    };
    std::vector<Point> zero{0};
    std::vector<Perm> stab;
    for (std::size_t i : pointwise_stabilizer(nat, zero)) stab.push_back(nat.element(i));
    GroupTable point_stab = GroupTable::from_subgroup_elements(std::move(stab), nat.degree());
    check_fx("point stabilizer in T", point_stab, nat);
    std::vector<Perm> cyc{spec.generators[0]};
    check_fx("cyclic <gen0> in T", GroupTable::generate(cyc, nat.degree()), nat);
    if (aut) {
        GroupTable autt = aut->as_table();
        std::vector<Perm> inn_gens{inn_of(g, g.gen(0)), inn_of(g, g.gen(1))};
        check_fx("Inn(T) in Aut(T)", GroupTable::generate(inn_gens, n), autt);
    }
    std::string detail;
    for (const auto& s : fx) detail += (detail.empty() ? "" : "; ") + s;
    add("class_count_inequality", fx_ok, detail);
    return v;
}

std::vector<SimpleGroupSpec> load_catalog(std::istream& in) {
    auto specs = parse_catalog(in);
    for (const auto& s : specs) {
        auto v = validate_spec(s);
        for (const auto& c : v.checks)
            if (!c.passed) throw ValidationError(s.name + ": invariant '" + c.name + "' failed: " + c.detail);
    }
    return specs;
}

std::vector<SimpleGroupSpec> load_catalog_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error("cannot open catalog file " + path);
    return load_catalog(f);
}

std::string default_catalog_path() {
    if (const char* env = std::getenv("DIAGBASE_CATALOG")) return env;
    return std::string(DIAGBASE_DATA_DIR) + "/catalog.txt";
}

CatalogGroup materialize(const SimpleGroupSpec& spec) {
    auto g = std::make_shared<const SimpleGroup>(spec);
    auto a = std::make_shared<const AutTable>(g);
    return {g, a};
}

CatalogGroup materialize(const std::vector<SimpleGroupSpec>& specs, const std::string& name) {
    for (const auto& s : specs)
        if (s.name == name) return materialize(s);
    throw PreconditionError("group '" + name + "' is not in the catalog");
}

}  // namespace diagbase
