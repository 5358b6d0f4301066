#include "diagbase/group_table.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <unordered_set>

#include "diagbase/errors.hpp"

namespace diagbase {

namespace {

std::vector<Perm> closure_elements(std::span<const Perm> gens, std::size_t degree, std::size_t budget,
                                   std::unordered_map<Perm, std::uint32_t, PermHash>& index) {
    std::vector<Perm> elements;
    index.clear();
    Perm id(degree);
    elements.push_back(id);
    index.emplace(id, 0);
    for (std::size_t i = 0; i < elements.size(); ++i) {
        for (const Perm& s : gens) {
            Perm next = elements[i] * s;
            if (index.count(next)) continue;
            if (elements.size() >= budget)
                throw BudgetExceeded("group closure exceeds enumeration budget of " + std::to_string(budget));
            index.emplace(next, static_cast<std::uint32_t>(elements.size()));
            elements.push_back(std::move(next));
        }
    }
    return elements;
}

}  // namespace

GroupTable GroupTable::generate(std::span<const Perm> gens, std::size_t degree, std::size_t budget) {
    for (const Perm& s : gens)
        if (s.degree() != degree) throw PreconditionError("generator degree mismatch");
    GroupTable g;
    g.degree_ = degree;
    for (const Perm& s : gens)
        if (!s.is_identity()) g.generators_.push_back(s);
    g.elements_ = closure_elements(g.generators_, degree, budget, g.index_);
    return g;
}

GroupTable GroupTable::from_subgroup_elements(std::vector<Perm> elements, std::size_t degree) {
    GroupTable g;
    g.degree_ = degree;
    std::unordered_map<Perm, std::uint32_t, PermHash> sub;
    std::vector<Perm> gens;
    // Greedy: any element outside the current closure becomes a generator.
    closure_elements(gens, degree, elements.size() + 1, sub);
    for (const Perm& p : elements) {
        if (sub.count(p)) continue;
        gens.push_back(p);
        closure_elements(gens, degree, elements.size() + 1, sub);
    }
    if (sub.size() != elements.size()) throw ValidationError("element list is not closed under multiplication");
    g.generators_ = std::move(gens);
    g.elements_ = closure_elements(g.generators_, degree, elements.size() + 1, g.index_);
    return g;
}

std::optional<std::size_t> GroupTable::index_of(const Perm& p) const {
    auto it = index_.find(p);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::size_t GroupTable::multiply(std::size_t i, std::size_t j) const {
    return index_.at(elements_[i] * elements_[j]);
}

std::size_t GroupTable::inverse(std::size_t i) const { return index_.at(elements_[i].inverse()); }

ClassPartition conjugacy_classes(const GroupTable& g) {
    ClassPartition cp;
    constexpr std::uint32_t kNone = ~std::uint32_t{0};
    cp.class_of.assign(g.order(), kNone);
    std::vector<Perm> gen_inv;
    for (const Perm& s : g.generators()) gen_inv.push_back(s.inverse());
    for (std::size_t start = 0; start < g.order(); ++start) {
        if (cp.class_of[start] != kNone) continue;
        auto id = static_cast<std::uint32_t>(cp.reps.size());
        cp.reps.push_back(start);
        std::vector<std::size_t> queue{start};
        cp.class_of[start] = id;
        for (std::size_t q = 0; q < queue.size(); ++q) {
            const Perm& y = g.element(queue[q]);
            for (std::size_t s = 0; s < gen_inv.size(); ++s) {
                std::size_t c = *g.index_of(gen_inv[s] * y * g.generators()[s]);
                if (cp.class_of[c] == kNone) {
                    cp.class_of[c] = id;
                    queue.push_back(c);
                }
            }
        }
        cp.sizes.push_back(queue.size());
    }
    return cp;
}

GroupTable centralizer(const GroupTable& g, const Perm& x) {
    if (!g.contains(x)) throw PreconditionError("element " + x.to_string() + " is not a member of the group");
    std::vector<Perm> elems;
    for (const Perm& y : g.elements())
        if (x * y == y * x) elems.push_back(y);
    return GroupTable::from_subgroup_elements(std::move(elems), g.degree());
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::size_t prime_order_class_count(const GroupTable& g, const ClassPartition& classes) {
    std::size_t n = 0;
    for (std::size_t r : classes.reps) n += is_prime(element_order(g.element(r)));
    return n;
}

std::size_t prime_order_class_count(const GroupTable& g) {
    return prime_order_class_count(g, conjugacy_classes(g));
}

std::vector<std::size_t> pointwise_stabilizer(const GroupTable& g, std::span<const Point> points) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < g.order(); ++i) {
        const Perm& p = g.element(i);
        if (std::all_of(points.begin(), points.end(), [&](Point a) { return p(a) == a; })) out.push_back(i);
    }
    return out;
}

namespace {

// Orbits of the subgroup given by element positions, as (representative, size)
// sorted by descending size then ascending representative. Singleton orbits dropped.
std::vector<std::pair<Point, std::size_t>> moving_orbits(const GroupTable& g, const std::vector<std::size_t>& sub) {
    const std::size_t n = g.degree();
    std::vector<Point> parent(n);
    std::iota(parent.begin(), parent.end(), Point{0});
    auto find = [&](Point a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    for (std::size_t e : sub) {
        const Perm& p = g.element(e);
        for (Point a = 0; a < n; ++a) {
            Point ra = find(a), rb = find(p(a));
            if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
        }
    }
    std::vector<std::size_t> size(n, 0);
    for (Point a = 0; a < n; ++a) ++size[find(a)];
    std::vector<std::pair<Point, std::size_t>> out;
    for (Point a = 0; a < n; ++a)
        if (find(a) == a && size[a] > 1) out.emplace_back(a, size[a]);
    std::stable_sort(out.begin(), out.end(), [](auto& l, auto& r) { return l.second > r.second; });
    return out;
}

bool base_search(const GroupTable& g, const std::vector<std::size_t>& sub, std::size_t depth,
                 std::vector<Point>& chosen) {
    if (sub.size() == 1) return true;
    if (depth == 0) return false;
    auto orbs = moving_orbits(g, sub);
    if (orbs.empty()) return false;
    // |H| <= (largest orbit)^depth is necessary for depth more points to suffice.
    long double bound = 1;
    for (std::size_t d = 0; d < depth; ++d) bound *= static_cast<long double>(orbs.front().second);
    if (bound < static_cast<long double>(sub.size())) return false;
    for (auto [pt, len] : orbs) {
        std::vector<std::size_t> next;
        for (std::size_t e : sub)
            if (g.element(e)(pt) == pt) next.push_back(e);
        chosen.push_back(pt);
        if (base_search(g, next, depth - 1, chosen)) return true;
        chosen.pop_back();
    }
    return false;
}

}  // namespace

MinimalBase minimal_base(const GroupTable& g) {
    std::vector<std::size_t> all(g.order());
    std::iota(all.begin(), all.end(), std::size_t{0});
    for (std::size_t depth = 0;; ++depth) {
        std::vector<Point> chosen;
        if (base_search(g, all, depth, chosen)) return MinimalBase{chosen.size(), chosen};
        if (depth > g.degree()) throw ValidationError("group is not faithful on its points");
    }
}

std::size_t minimal_degree(const GroupTable& g) {
    if (g.order() <= 1) throw PreconditionError("minimal degree is undefined for the trivial group");
    std::size_t best = g.degree();
    for (std::size_t i = 1; i < g.order(); ++i) best = std::min(best, g.element(i).support_size());
    return best;
}

std::vector<std::vector<Point>> orbits(const GroupTable& g) {
    const std::size_t n = g.degree();
    std::vector<char> seen(n, 0);
    std::vector<std::vector<Point>> out;
    for (Point a = 0; a < n; ++a) {
        if (seen[a]) continue;
        std::vector<Point> orb{a};
        seen[a] = 1;
        for (std::size_t q = 0; q < orb.size(); ++q)
            for (const Perm& s : g.generators()) {
                Point b = s(orb[q]);
                if (!seen[b]) {
                    seen[b] = 1;
                    orb.push_back(b);
                }
            }
        std::sort(orb.begin(), orb.end());
        out.push_back(std::move(orb));
    }
    return out;
}

bool is_transitive(const GroupTable& g) { return g.degree() <= 1 || orbits(g).size() == 1; }

bool is_primitive(const GroupTable& g) {
    const std::size_t n = g.degree();
    if (!is_transitive(g)) return false;
    if (n <= 2) return true;
    // For each j, the finest block system in which 0 and j share a block.
    for (Point j = 1; j < n; ++j) {
        std::vector<Point> parent(n);
        std::iota(parent.begin(), parent.end(), Point{0});
        auto find = [&](Point a) {
            while (parent[a] != a) a = parent[a] = parent[parent[a]];
            return a;
        };
        std::vector<std::pair<Point, Point>> pending{{0, j}};
        parent[j] = 0;
        std::size_t merged = 1;
        while (!pending.empty()) {
            auto [a, b] = pending.back();
            pending.pop_back();
            for (const Perm& s : g.generators()) {
                Point ra = find(s(a)), rb = find(s(b));
                if (ra == rb) continue;
                parent[std::max(ra, rb)] = std::min(ra, rb);
                ++merged;
                pending.emplace_back(s(a), s(b));
            }
        }
        if (merged != n - 1) return false;
    }
    return true;
}

bool has_trivial_setwise_stabilizer(const GroupTable& g, std::span<const Point> subset) {
    std::vector<char> in(g.degree(), 0);
    for (Point a : subset) in[a] = 1;
    for (std::size_t i = 1; i < g.order(); ++i) {
        const Perm& p = g.element(i);
        if (std::all_of(subset.begin(), subset.end(), [&](Point a) { return in[p(a)] != 0; })) return false;
    }
    return true;
}

namespace {

struct LexSearch {
    const GroupTable& g;
    std::size_t k;
    std::size_t min_size;
    std::vector<Point> current;
    std::optional<std::vector<Point>> found;

    // Pre-order DFS visits subsets in lexicographic order of their sorted element lists.
    void visit(Point next) {
        for (Point a = next; a < k && !found; ++a) {
            if (current.size() + (k - a) < min_size) return;
            current.push_back(a);
            if (current.size() >= min_size && current.size() < k && has_trivial_setwise_stabilizer(g, current))
                found = current;
            else
                visit(a + 1);
            current.pop_back();
        }
    }
};

}  // namespace

DistinguishingResult distinguishing_subset(const GroupTable& g, const DistinguishingOptions& opts) {
    if (!is_transitive(g)) throw PreconditionError("distinguishing subset requires a transitive group");
    const std::size_t k = g.degree();
    DistinguishingResult res;
    if (k < 2) return res;
    const std::size_t min_size = (k + 1) / 2;
    if (k <= opts.exhaustive_limit) {
        LexSearch s{g, k, min_size, {}, std::nullopt};
        s.visit(0);
        res.subset = s.found;
        res.certain = true;
        return res;
    }
    std::mt19937_64 rng(opts.seed);
    std::bernoulli_distribution coin(0.5);
    for (std::size_t trial = 0; trial < opts.random_samples; ++trial) {
        std::vector<Point> in, out;
        for (Point a = 0; a < k; ++a) (coin(rng) ? in : out).push_back(a);
        if (in.size() < out.size()) std::swap(in, out);
        if (out.empty()) continue;
        if (has_trivial_setwise_stabilizer(g, in)) {
            res.subset = in;
            return res;
        }
    }
    res.certain = false;
    return res;
}

}  // namespace diagbase
