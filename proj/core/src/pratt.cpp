#include "lam/pratt.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "lam/arith.hpp"

namespace lam::pratt {

NodePtr TreeMemo::find(uint64_t p) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = map_.find(p);
    return it == map_.end() ? nullptr : it->second;
}

NodePtr TreeMemo::insert_if_absent(uint64_t p, NodePtr node) {
    std::lock_guard<std::mutex> lock(mu_);
    auto [it, inserted] = map_.emplace(p, std::move(node));
    return it->second;
}

size_t TreeMemo::size() const {
    std::lock_guard<std::mutex> lock(mu_);
    return map_.size();
}

namespace {

// Subtree with alpha = 0; edges re-wrap children with their multiplicity.
NodePtr build_subtree(uint64_t p, TreeMemo* memo) {
    if (memo) {
        if (NodePtr hit = memo->find(p)) return hit;
    }
    auto node = std::make_shared<TreeNode>();
    node->p = p;
    if (p > 2) {
        auto f = arith::factorize(p - 1); // ascending primes
        for (const auto& pp : f.factors) {
            // memoized subtrees carry alpha = 0; wrap with this edge's alpha
            NodePtr sub = build_subtree(pp.prime, memo);
            auto edge = std::make_shared<TreeNode>(*sub);
            edge->alpha = pp.exponent;
            node->children.push_back(edge);
        }
    }
    NodePtr result = node;
    if (memo) result = memo->insert_if_absent(p, result);
    return result;
}

} // namespace

PrattTree build_tree(uint64_t p, TreeMemo* memo) {
    if (!arith::is_prime(p)) throw std::invalid_argument("build_tree requires a prime");
    return PrattTree{build_subtree(p, memo)};
}

namespace {

uint32_t height_memo(uint64_t p, std::unordered_map<uint64_t, uint32_t>& memo) {
    if (p == 2) return 0;
    auto it = memo.find(p);
    if (it != memo.end()) return it->second;
    uint32_t best = 0;
    for (const auto& pp : arith::factorize(p - 1).factors)
        best = std::max(best, height_memo(pp.prime, memo));
    uint32_t h = 1 + best;
    memo.emplace(p, h);
    return h;
}

} // namespace

uint32_t height(uint64_t p) {
    if (!arith::is_prime(p)) throw std::invalid_argument("height requires a prime");
    static thread_local std::unordered_map<uint64_t, uint32_t> memo;
    return height_memo(p, memo);
}

uint32_t height(const PrattTree& t) {
    if (!t.root) throw std::invalid_argument("empty tree");
    uint32_t best = 0;
    for (const auto& c : t.root->children)
        best = std::max(best, height(PrattTree{c}) + 1);
    return best;
}

namespace {

void count_levels(const NodePtr& node, size_t depth, std::vector<uint64_t>& counts,
                  std::vector<std::set<uint64_t>>* distinct) {
    if (counts.size() <= depth) counts.resize(depth + 1, 0);
    counts[depth] += 1;
    if (distinct) {
        if (distinct->size() <= depth) distinct->resize(depth + 1);
        (*distinct)[depth].insert(node->p);
    }
    for (const auto& c : node->children) count_levels(c, depth + 1, counts, distinct);
}

} // namespace

std::vector<uint64_t> level_counts(const PrattTree& t, bool distinct) {
    if (!t.root) throw std::invalid_argument("empty tree");
    std::vector<uint64_t> counts;
    if (!distinct) {
        count_levels(t.root, 0, counts, nullptr);
        return counts;
    }
    std::vector<std::set<uint64_t>> sets;
    count_levels(t.root, 0, counts, &sets);
    std::vector<uint64_t> result(sets.size());
    for (size_t i = 0; i < sets.size(); ++i) result[i] = sets[i].size();
    return result;
}

std::vector<uint64_t> level_counts(uint64_t p, bool distinct) {
    return level_counts(build_tree(p), distinct);
}

namespace {

uint32_t excess_memo(uint64_t p, uint64_t y_cutoff,
                     std::unordered_map<uint64_t, uint32_t>& memo) {
    if (p == 2) return 0;
    auto it = memo.find(p);
    if (it != memo.end()) return it->second;
    uint32_t best = 0;
    for (const auto& pp : arith::factorize(p - 1).factors) {
        if (pp.prime < y_cutoff) continue; // subtree primes only get smaller
        best = std::max(best, pp.exponent - 1 + excess_memo(pp.prime, y_cutoff, memo));
    }
    memo.emplace(p, best);
    return best;
}

} // namespace

uint32_t branch_excess(uint64_t p) {
    if (!arith::is_prime(p)) throw std::invalid_argument("branch_excess requires a prime");
    static thread_local std::unordered_map<uint64_t, uint32_t> memo;
    return excess_memo(p, 0, memo);
}

uint32_t branch_excess_above(uint64_t p, uint64_t y_cutoff) {
    if (!arith::is_prime(p))
        throw std::invalid_argument("branch_excess_above requires a prime");
    if (y_cutoff <= 2) return branch_excess(p);
    // one memo per cutoff; batch reports sweep every prime at a fixed cutoff
    static thread_local std::map<uint64_t, std::unordered_map<uint64_t, uint32_t>> memos;
    return excess_memo(p, y_cutoff, memos[y_cutoff]);
}

namespace {

void walk_branches(const NodePtr& node, BranchInfo cur, std::vector<BranchInfo>& out) {
    if (node->children.empty()) {
        out.push_back(cur);
        return;
    }
    for (const auto& c : node->children) {
        BranchInfo next = cur;
        next.depth += 1;
        next.excess += c->alpha - 1;
        if (!next.product_overflow &&
            __builtin_mul_overflow(next.alpha_product, uint64_t{c->alpha},
                                   &next.alpha_product)) {
            next.alpha_product = UINT64_MAX;
            next.product_overflow = true;
        }
        walk_branches(c, next, out);
    }
}

} // namespace

std::vector<BranchInfo> enumerate_branches(const PrattTree& t) {
    if (!t.root) throw std::invalid_argument("empty tree");
    std::vector<BranchInfo> out;
    walk_branches(t.root, BranchInfo{}, out);
    return out;
}

namespace {

void render_json(const NodePtr& node, bool root, std::string& out) {
    out += "{\"p\":" + std::to_string(node->p);
    if (!root) out += ",\"alpha\":" + std::to_string(node->alpha);
    out += ",\"children\":[";
    for (size_t i = 0; i < node->children.size(); ++i) {
        if (i) out += ',';
        render_json(node->children[i], false, out);
    }
    out += "]}";
}

void render_dot(const NodePtr& node, const std::string& path, std::string& out) {
    out += "  \"" + path + "\" [label=\"" + std::to_string(node->p) + "\"];\n";
    for (const auto& c : node->children) {
        std::string child_path = path + "/" + std::to_string(c->p);
        out += "  \"" + path + "\" -> \"" + child_path + "\"";
        if (c->alpha > 1) out += " [label=" + std::to_string(c->alpha) + "]";
        out += ";\n";
        render_dot(c, child_path, out);
    }
}

} // namespace

std::string render_tree(const PrattTree& t, TreeFormat f) {
    if (!t.root) throw std::invalid_argument("empty tree");
    std::string out;
    switch (f) {
        case TreeFormat::json:
            render_json(t.root, true, out);
            return out;
        case TreeFormat::dot:
            out = "digraph pratt {\n";
            render_dot(t.root, std::to_string(t.root->p), out);
            out += "}\n";
            return out;
    }
    throw std::invalid_argument("unknown tree format");
}

} // namespace lam::pratt
