#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

namespace lam::pratt {

// Node of a Pratt tree. children are the distinct primes q dividing p-1 in
// ascending order, each carrying the exact multiplicity alpha (q^alpha || p-1).
// alpha is 0 at the root. Leaves are always the prime 2.
struct TreeNode {
    uint64_t p = 0;
    uint32_t alpha = 0;
    std::vector<std::shared_ptr<const TreeNode>> children;
};

using NodePtr = std::shared_ptr<const TreeNode>;

// Shared subtree cache keyed by prime, safe for concurrent builders.
// Subtrees are stored with alpha = 0; the edge multiplicity lives in the
// parent-specific wrapper node.
class TreeMemo {
public:
    NodePtr find(uint64_t p) const;
    // Inserts if absent; returns the resident node either way.
    NodePtr insert_if_absent(uint64_t p, NodePtr node);
    size_t size() const;

private:
    mutable std::mutex mu_;
    std::unordered_map<uint64_t, NodePtr> map_;
};

struct PrattTree {
    NodePtr root;
};

// Builds the Pratt tree of prime p. Throws std::invalid_argument if p is not
// prime. With a memo, overlapping subtrees are shared across builds.
PrattTree build_tree(uint64_t p, TreeMemo* memo = nullptr);

// Height H(p): longest root-to-leaf edge count, with H(2) = 0.
uint32_t height(uint64_t p);
uint32_t height(const PrattTree& t);

// Node instances per depth; entry 0 is always 1. With distinct=true, counts
// distinct primes per depth instead of instances.
std::vector<uint64_t> level_counts(uint64_t p, bool distinct = false);
std::vector<uint64_t> level_counts(const PrattTree& t, bool distinct = false);

// Max over root-to-leaf branches of the sum of (alpha_i - 1).
uint32_t branch_excess(uint64_t p);

// Branch excess counting only edges whose child prime is >= y_cutoff. Branch
// primes strictly decrease, so this measures the excess accumulated before the
// branch first drops below the cutoff. y_cutoff = 0 recovers branch_excess.
uint32_t branch_excess_above(uint64_t p, uint64_t y_cutoff);

// Per-branch summary for bound checking. alpha_product is capped: if the
// product of edge multiplicities would exceed 64 bits, product_overflow is set
// and alpha_product holds UINT64_MAX.
struct BranchInfo {
    uint32_t depth = 0;
    uint32_t excess = 0;
    uint64_t alpha_product = 1;
    bool product_overflow = false;
};

// All root-to-leaf branches of t. tree(2) yields one zero-edge branch.
std::vector<BranchInfo> enumerate_branches(const PrattTree& t);

enum class TreeFormat { dot, json };

// Deterministic text rendering. JSON: {"p":..,"alpha":..,"children":[..]},
// alpha omitted at the root, children ascending by p. DOT: one node per
// root-to-node path (ids are slash-joined prime paths), edges labelled with
// alpha only when alpha > 1.
std::string render_tree(const PrattTree& t, TreeFormat f);

} // namespace lam::pratt
