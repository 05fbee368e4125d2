#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cpic/rational.hpp"

namespace cpic {

using NodeId = int;

// One cluster in the laminar tree. Singleton roots are leaf nodes; clusters
// with >= 2 roots are proper and carry an absolute depth.
struct ClusterNode {
    NodeId parent = -1;
    std::vector<NodeId> children;  // canonical order after finalize
    std::vector<int> leaves;       // root indices, ascending
    Rational depth;                // absolute depth; meaningful when proper
    int level = 0;                 // distance from the top cluster
    std::string text;              // canonical subtree text, relative subscript

    int size() const { return static_cast<int>(leaves.size()); }
    bool proper() const { return leaves.size() >= 2; }
};

struct Centre {
    std::optional<Rational> value;  // known root value, if the picture has roots
    std::string text;               // decimal string, or symbolic "z(<path>)"

    std::string factor() const;     // "(x-...)" as it appears in a differential
};

struct IntegralityReport {
    bool depths_integral = true;
    bool nu_even_on_principal = true;
    bool equation_integral = true;     // d_R >= 0 and v(c_f) >= 0
    bool lambda_multiple_of_8 = true;  // vacuously true when genus < 2
    std::vector<std::string> issues;

    bool ok() const {
        return depths_integral && nu_even_on_principal && equation_integral &&
               lambda_multiple_of_8;
    }
};

// Rooted tree of clusters with exact depths, the valuation of the leading
// coefficient, and optionally the prime and exact root values.
// Immutable after construction; all queries are const.
class ClusterPicture {
public:
    // Abstract construction input. Items appear in input order; leaf indices
    // are assigned left to right.
    struct TreeSpec {
        bool leaf = false;
        Rational depth;  // absolute depth, ignored for leaves
        std::vector<TreeSpec> items;

        static TreeSpec make_leaf() {
            TreeSpec t;
            t.leaf = true;
            return t;
        }
        static TreeSpec cluster(Rational depth, std::vector<TreeSpec> items) {
            TreeSpec t;
            t.depth = std::move(depth);
            t.items = std::move(items);
            return t;
        }
    };

    static ClusterPicture from_tree(const TreeSpec& top, Rational vcf);

    NodeId top() const { return top_; }
    int root_count() const { return nroots_; }
    int genus() const { return (nroots_ - 1) / 2; }
    const Rational& vcf() const { return vcf_; }
    const std::optional<mpz_class>& prime() const { return prime_; }
    const std::optional<std::vector<Rational>>& root_values() const { return roots_; }

    bool is_proper(NodeId id) const { return at(id).proper(); }
    int size(NodeId id) const { return at(id).size(); }
    const Rational& depth(NodeId id) const;
    const std::vector<NodeId>& children(NodeId id) const { return at(id).children; }
    NodeId parent(NodeId id) const { return at(id).parent; }
    const std::vector<int>& leaves(NodeId id) const { return at(id).leaves; }
    int min_leaf_index(NodeId id) const { return at(id).leaves.front(); }
    NodeId leaf_node(int root_index) const;

    // d_S - d_parent(S); undefined for the top cluster.
    Rational rel_depth(NodeId id) const;

    // Smallest cluster containing both (lowest common ancestor).
    NodeId meet(NodeId a, NodeId b) const;

    // nu_S = v(c_f) + d_R|R| + sum of delta_{S'}|S'| over S <= S' != R.
    Rational nu(NodeId id) const;

    // nu_S = v(c_f) + sum over all roots r of d_{r ^ S}; oracle for nu().
    Rational nu_direct(NodeId id) const;

    Centre centre(NodeId id) const;

    // |S| >= 3, except an even top with exactly two children
    // or any cluster with a child of size 2g.
    bool is_principal(NodeId id) const;

    std::vector<NodeId> proper_clusters() const;  // canonical pre-order

    bool contains(NodeId outer, NodeId inner) const;  // inner subset-of outer

    std::string path_label(NodeId id) const;  // "R", "R/0", "R/0/1", ...
    NodeId node_by_path(std::string_view path) const;

    const std::string& canonical_text() const { return text_; }
    std::string subtree_text(NodeId id) const;  // standalone, absolute subscript

    void check_well_formed() const;

private:
    std::vector<ClusterNode> nodes_;
    NodeId top_ = -1;
    int nroots_ = 0;
    Rational vcf_;
    std::optional<mpz_class> prime_;
    std::optional<std::vector<Rational>> roots_;
    std::vector<NodeId> leaf_of_root_;
    std::string text_;

    const ClusterNode& at(NodeId id) const;
    ClusterNode& at(NodeId id);

    void finalize();  // canonical child order, caches, invariant checks
    void drop_roots();

    friend ClusterPicture build_picture_from_roots(std::vector<Rational> roots,
                                                   const Rational& leading_coeff,
                                                   const mpz_class& p);
    friend ClusterPicture deepen(const ClusterPicture& pic, long long t);
    friend ClusterPicture add_root(const ClusterPicture& pic);
    friend ClusterPicture redistribute(const ClusterPicture& pic, NodeId child_of_top,
                                       long long t);
    friend ClusterPicture scale_leading(const ClusterPicture& pic, long long m);
    friend ClusterPicture rescale_equation(const ClusterPicture& pic, long long t,
                                           long long s);
    friend ClusterPicture shift(const ClusterPicture& pic, const Rational& z);
};

// Computes the proper clusters cut out by discs, with exact depths.
// Roots must be pairwise distinct and at least 5 (genus >= 2).
ClusterPicture build_picture_from_roots(std::vector<Rational> roots,
                                        const Rational& leading_coeff,
                                        const mpz_class& p);

IntegralityReport validate_integrality(const ClusterPicture& pic);

} // namespace cpic
