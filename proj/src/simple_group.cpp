#include "diagbase/simple_group.hpp"

#include <algorithm>
#include <numeric>

#include "diagbase/errors.hpp"

namespace diagbase {

SimpleGroup::SimpleGroup(SimpleGroupSpec spec) : spec_(std::move(spec)) {
    if (spec_.generators.size() != 2)
        throw ValidationError(spec_.name + ": exactly two generators are required");
    const std::size_t d = spec_.natural_degree;
    for (const Perm& g : spec_.generators)
        if (g.degree() != d) throw ValidationError(spec_.name + ": generator degree differs from natural_degree");

    // Breadth-first word tree over the two generators.
    elements_.push_back(Perm(d));
    index_.emplace(elements_.back(), 0);
    parent_.push_back(0);
    parent_gen_.push_back(0);
    for (std::size_t i = 0; i < elements_.size(); ++i) {
        for (std::uint8_t s = 0; s < 2; ++s) {
            Perm next = elements_[i] * spec_.generators[s];
            if (index_.count(next)) continue;
            if (elements_.size() >= kSimpleGroupOrderBudget)
                throw ValidationError(spec_.name + ": generated group exceeds order budget " +
                                      std::to_string(kSimpleGroupOrderBudget));
            index_.emplace(next, static_cast<TElem>(elements_.size()));
            elements_.push_back(std::move(next));
            parent_.push_back(static_cast<TElem>(i));
            parent_gen_.push_back(s);
        }
    }
    if (spec_.order != 0 && spec_.order != elements_.size())
        throw ValidationError(spec_.name + ": generators produce a group of order " + std::to_string(elements_.size()) +
                              ", catalog records " + std::to_string(spec_.order));

    const std::size_t n = elements_.size();
    mul_.resize(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) mul_[a * n + b] = index_.at(elements_[a] * elements_[b]);
    inv_.resize(n);
    ord_.resize(n);
    for (std::size_t a = 0; a < n; ++a) {
        inv_[a] = index_.at(elements_[a].inverse());
        std::uint32_t k = 1;
        for (TElem p = static_cast<TElem>(a); p != 0; p = mul(p, static_cast<TElem>(a))) ++k;
        ord_[a] = k;
    }
    gens_ = {index_.at(spec_.generators[0]), index_.at(spec_.generators[1])};
    distinct_pair_ = {require_index(spec_.gen_pair_distinct_orders.first, "gen_pair_distinct_orders"),
                      require_index(spec_.gen_pair_distinct_orders.second, "gen_pair_distinct_orders")};
    involution_pair_ = {require_index(spec_.involution_pair.first, "involution_pair"),
                        require_index(spec_.involution_pair.second, "involution_pair")};
}

std::optional<TElem> SimpleGroup::index_of(const Perm& p) const {
    auto it = index_.find(p);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

TElem SimpleGroup::require_index(const Perm& p, const std::string& what) const {
    auto i = index_of(p);
    if (!i) throw ValidationError(spec_.name + ": " + what + " element " + p.to_string() + " is not in the group");
    return *i;
}

std::size_t SimpleGroup::subgroup_order(const std::vector<TElem>& gens) const {
    std::vector<char> in(order(), 0);
    std::vector<TElem> elems{0};
    in[0] = 1;
    for (std::size_t i = 0; i < elems.size(); ++i)
        for (TElem g : gens) {
            TElem h = mul(elems[i], g);
            if (!in[h]) {
                in[h] = 1;
                elems.push_back(h);
            }
        }
    return elems.size();
}

std::vector<TElem> SimpleGroup::centralizer(TElem x) const {
    std::vector<TElem> out;
    for (std::size_t t = 0; t < order(); ++t)
        if (mul(x, static_cast<TElem>(t)) == mul(static_cast<TElem>(t), x)) out.push_back(static_cast<TElem>(t));
    return out;
}

std::vector<TElem> SimpleGroup::other_order_elements(TElem x, TElem y) const {
    std::vector<TElem> out;
    for (std::size_t t = 1; t < order(); ++t) {
        auto o = elem_order(static_cast<TElem>(t));
        if (o != elem_order(x) && o != elem_order(y)) out.push_back(static_cast<TElem>(t));
    }
    return out;
}

GroupTable SimpleGroup::natural_table() const {
    return GroupTable::generate(spec_.generators, spec_.natural_degree);
}

Perm inn_of(const SimpleGroup& t_group, TElem t) {
    std::vector<Point> img(t_group.order());
    for (std::size_t s = 0; s < img.size(); ++s) img[s] = t_group.conj(static_cast<TElem>(s), t);
    return Perm(std::move(img));
}

namespace {

// Extends generator images to a bijection of T, verifying the homomorphism law.
Perm extend_automorphism(const SimpleGroup& g, TElem x_img, TElem y_img) {
    const std::size_t n = g.order();
    std::vector<Point> img(n);
    const TElem gen_img[2] = {x_img, y_img};
    img[0] = 0;
    for (std::size_t a = 1; a < n; ++a) img[a] = g.mul(static_cast<TElem>(img[g.parent(static_cast<TElem>(a))]),
                                                    gen_img[g.parent_gen(static_cast<TElem>(a))]);
    for (std::size_t a = 0; a < n; ++a)
        for (int s = 0; s < 2; ++s)
            if (img[g.mul(static_cast<TElem>(a), g.gen(s))] != g.mul(static_cast<TElem>(img[a]), gen_img[s]))
                throw ValidationError(g.name() + ": automorphism generator does not respect the group structure");
    try {
        return Perm(std::move(img));
    } catch (const ValidationError&) {
        throw ValidationError(g.name() + ": automorphism generator is not bijective");
    }
}

}  // namespace

AutTable::AutTable(std::shared_ptr<const SimpleGroup> group) : group_(std::move(group)) {
    const SimpleGroup& g = *group_;
    const std::size_t n = g.order();

    std::unordered_map<Perm, TElem, PermHash> inner;
    for (std::size_t t = 0; t < n; ++t) inner.emplace(inn_of(g, static_cast<TElem>(t)), static_cast<TElem>(t));

    std::vector<Perm> gens{inn_of(g, g.gen(0)), inn_of(g, g.gen(1))};
    for (const auto& [xi, yi] : g.spec().aut_generators)
        gens.push_back(extend_automorphism(g, g.require_index(xi, "aut_generators"),
                                           g.require_index(yi, "aut_generators")));
    GroupTable closure = GroupTable::generate(gens, n, n * 64);

    std::vector<Perm> reps, rep_inv;
    for (const Perm& a : closure.elements()) {
        bool known = false;
        for (const Perm& ri : rep_inv)
            if (inner.count(ri * a)) {
                known = true;
                break;
            }
        if (!known) {
            reps.push_back(a);
            rep_inv.push_back(a.inverse());
        }
    }
    out_order_ = reps.size();
    if (closure.order() != out_order_ * n)
        throw ValidationError(g.name() + ": automorphism closure has order " + std::to_string(closure.order()) +
                              ", not a multiple of |T| by the coset count");
    if (g.spec().out_order != 0 && g.spec().out_order != out_order_)
        throw ValidationError(g.name() + ": catalog records |Out(T)| = " + std::to_string(g.spec().out_order) +
                              " but the automorphism generators give " + std::to_string(out_order_));
    rho_inv_ = rep_inv;

    img_.resize(out_order_ * n * n);
    for (std::size_t c = 0; c < out_order_; ++c)
        for (std::size_t t = 0; t < n; ++t)
            for (std::size_t s = 0; s < n; ++s)
                img_[(c * n + t) * n + s] = g.conj(static_cast<TElem>(reps[c](static_cast<Point>(s))), static_cast<TElem>(t));

    out_mul_.resize(out_order_ * out_order_);
    rho_prod_offset_.resize(out_order_ * out_order_);
    for (std::size_t a = 0; a < out_order_; ++a)
        for (std::size_t b = 0; b < out_order_; ++b) {
            Perm prod = reps[a] * reps[b];
            for (std::size_t c = 0; c < out_order_; ++c) {
                auto it = inner.find(rep_inv[c] * prod);
                if (it != inner.end()) {
                    out_mul_[a * out_order_ + b] = static_cast<OutLabel>(c);
                    rho_prod_offset_[a * out_order_ + b] = it->second;
                    break;
                }
            }
        }

    for (std::size_t t = 0; t < n; ++t) conj_solutions_[g.conj(g.gen(0), static_cast<TElem>(t))].push_back(static_cast<TElem>(t));

    const std::size_t total = order();
    inv_.resize(total);
    for (AutIdx a = 0; a < total; ++a) {
        OutLabel c = coset(a);
        OutLabel ci = out_inv(c);
        TElem u = rho_prod_offset_[c * out_order_ + ci];
        TElem t_img = apply(make(ci, 0), inner_offset(a));
        inv_[a] = make(ci, g.inv(g.mul(u, t_img)));
    }
    ord_.resize(total);
    for (AutIdx a = 0; a < total; ++a) {
        std::uint32_t k = 1;
        for (AutIdx p = a; p != 0; p = compose(p, a)) ++k;
        ord_[a] = k;
    }
}

AutIdx AutTable::compose(AutIdx a, AutIdx b) const noexcept {
    const SimpleGroup& g = *group_;
    OutLabel ca = coset(a), cb = coset(b);
    TElem u = rho_prod_offset_[ca * out_order_ + cb];
    TElem s_moved = apply(make(cb, 0), inner_offset(a));
    return make(out_mul(ca, cb), g.mul(g.mul(u, s_moved), inner_offset(b)));
}

OutLabel AutTable::out_inv(OutLabel a) const noexcept {
    for (OutLabel b = 0; b < out_order_; ++b)
        if (out_mul(a, b) == 0) return b;
    return 0;
}

std::uint32_t AutTable::out_elem_order(OutLabel a) const noexcept {
    std::uint32_t k = 1;
    for (OutLabel p = a; p != 0; p = out_mul(p, a)) ++k;
    return k;
}

std::vector<OutLabel> AutTable::out_subgroup(const std::vector<OutLabel>& gens) const {
    std::vector<char> in(out_order_, 0);
    std::vector<OutLabel> elems{0};
    in[0] = 1;
    for (std::size_t i = 0; i < elems.size(); ++i)
        for (OutLabel g : gens) {
            OutLabel h = out_mul(elems[i], g);
            if (!in[h]) {
                in[h] = 1;
                elems.push_back(h);
            }
        }
    std::sort(elems.begin(), elems.end());
    return elems;
}

Perm AutTable::bijection(AutIdx a) const {
    const std::size_t n = group_->order();
    std::vector<Point> img(n);
    for (std::size_t s = 0; s < n; ++s) img[s] = apply(a, static_cast<TElem>(s));
    return Perm(std::move(img));
}

std::optional<TElem> AutTable::try_recover(const Perm& bij) const {
    const SimpleGroup& g = *group_;
    if (bij.degree() != g.order()) return std::nullopt;
    // phi_t is pinned down on the first generator, then checked everywhere.
    auto it = conj_solutions_.find(static_cast<TElem>(bij(g.gen(0))));
    if (it == conj_solutions_.end()) return std::nullopt;
    for (TElem t : it->second) {
        if (bij(g.gen(1)) != g.conj(g.gen(1), t)) continue;
        bool all = true;
        for (std::size_t s = 0; s < g.order() && all; ++s)
            all = bij(static_cast<Point>(s)) == g.conj(static_cast<TElem>(s), t);
        if (all) return t;
    }
    return std::nullopt;
}

TElem AutTable::recover_conjugator(const Perm& bij) const {
    if (auto t = try_recover(bij)) return *t;
    throw NotInnerError("bijection is not an inner automorphism of " + group_->name());
}

std::optional<AutIdx> AutTable::index_of(const Perm& bij) const {
    for (OutLabel c = 0; c < out_order_; ++c)
        if (auto t = try_recover(rho_inv_[c] * bij)) return make(c, *t);
    return std::nullopt;
}

bool AutTable::same_out_coset(const Perm& a, const Perm& b) const {
    return try_recover(a.inverse() * b).has_value();
}

GroupTable AutTable::as_table() const {
    std::vector<Perm> gens{inn_of(*group_, group_->gen(0)), inn_of(*group_, group_->gen(1))};
    for (OutLabel c = 1; c < out_order_; ++c) gens.push_back(bijection(make(c, 0)));
    return GroupTable::generate(gens, group_->order(), order() + 1);
}

}  // namespace diagbase
