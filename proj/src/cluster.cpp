#include "cpic/cluster.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "cpic/lambda.hpp"

namespace cpic {

std::string Centre::factor() const {
    if (value && value->sign() < 0)
        return "(x+" + (-*value).str() + ")";
    return "(x-" + text + ")";
}

const ClusterNode& ClusterPicture::at(NodeId id) const {
    if (id < 0 || id >= static_cast<NodeId>(nodes_.size()))
        throw ValidationError("invalid cluster id");
    return nodes_[static_cast<size_t>(id)];
}

ClusterNode& ClusterPicture::at(NodeId id) {
    return const_cast<ClusterNode&>(static_cast<const ClusterPicture*>(this)->at(id));
}

const Rational& ClusterPicture::depth(NodeId id) const {
    const ClusterNode& n = at(id);
    if (!n.proper())
        throw ValidationError("depth is defined for proper clusters only");
    return n.depth;
}

NodeId ClusterPicture::leaf_node(int root_index) const {
    if (root_index < 0 || root_index >= nroots_)
        throw ValidationError("root index out of range");
    return leaf_of_root_[static_cast<size_t>(root_index)];
}

Rational ClusterPicture::rel_depth(NodeId id) const {
    if (id == top_)
        throw ValidationError("relative depth undefined for the top cluster");
    const ClusterNode& n = at(id);
    if (!n.proper())
        throw ValidationError("relative depth is defined for proper clusters only");
    return n.depth - at(n.parent).depth;
}

NodeId ClusterPicture::meet(NodeId a, NodeId b) const {
    at(a);
    at(b);
    while (a != b) {
        if (at(a).level >= at(b).level)
            a = at(a).parent;
        else
            b = at(b).parent;
    }
    return a;
}

Rational ClusterPicture::nu(NodeId id) const {
    if (!at(id).proper())
        throw ValidationError("nu is defined for proper clusters only");
    Rational acc = vcf_ + at(top_).depth * Rational(nroots_);
    for (NodeId cur = id; cur != top_; cur = at(cur).parent)
        acc += rel_depth(cur) * Rational(size(cur));
    return acc;
}

Rational ClusterPicture::nu_direct(NodeId id) const {
    if (!at(id).proper())
        throw ValidationError("nu is defined for proper clusters only");
    Rational acc = vcf_;
    for (int r = 0; r < nroots_; ++r)
        acc += depth(meet(leaf_of_root_[static_cast<size_t>(r)], id));
    return acc;
}

Centre ClusterPicture::centre(NodeId id) const {
    Centre c;
    if (roots_) {
        c.value = (*roots_)[static_cast<size_t>(min_leaf_index(id))];
        c.text = c.value->str();
    } else {
        c.text = "z(" + path_label(id) + ")";
    }
    return c;
}

bool ClusterPicture::is_principal(NodeId id) const {
    const ClusterNode& n = at(id);
    if (n.size() < 3)
        return false;
    if (id == top_ && n.size() % 2 == 0 && n.children.size() == 2)
        return false;
    const int two_g = 2 * genus();
    for (NodeId c : n.children)
        if (at(c).size() == two_g)
            return false;
    return true;
}

std::vector<NodeId> ClusterPicture::proper_clusters() const {
    std::vector<NodeId> out;
    std::function<void(NodeId)> walk = [&](NodeId id) {
        if (!at(id).proper())
            return;
        out.push_back(id);
        for (NodeId c : at(id).children)
            walk(c);
    };
    walk(top_);
    return out;
}

bool ClusterPicture::contains(NodeId outer, NodeId inner) const {
    for (NodeId cur = inner; cur != -1; cur = at(cur).parent)
        if (cur == outer)
            return true;
    return false;
}

std::string ClusterPicture::path_label(NodeId id) const {
    std::vector<size_t> idx;
    for (NodeId cur = id; cur != top_; cur = at(cur).parent) {
        const auto& siblings = at(at(cur).parent).children;
        idx.push_back(static_cast<size_t>(
            std::find(siblings.begin(), siblings.end(), cur) - siblings.begin()));
    }
    std::string s = "R";
    for (auto it = idx.rbegin(); it != idx.rend(); ++it)
        s += "/" + std::to_string(*it);
    return s;
}

NodeId ClusterPicture::node_by_path(std::string_view path) const {
    NodeId cur = top_;
    size_t pos = 0;
    if (path == "R")
        return top_;
    if (path.rfind("R/", 0) == 0)
        pos = 2;
    while (pos < path.size()) {
        size_t next = path.find('/', pos);
        std::string_view tok = path.substr(pos, next == std::string_view::npos ? next : next - pos);
        if (tok.empty() || tok.find_first_not_of("0123456789") != std::string_view::npos)
            throw InputError("bad cluster path \"" + std::string(path) + "\"");
        size_t i = std::stoul(std::string(tok));
        const auto& ch = at(cur).children;
        if (i >= ch.size())
            throw InputError("no such cluster path \"" + std::string(path) + "\"");
        cur = ch[i];
        pos = next == std::string_view::npos ? path.size() : next + 1;
    }
    return cur;
}

std::string ClusterPicture::subtree_text(NodeId id) const {
    const ClusterNode& n = at(id);
    if (!n.proper())
        return "*";
    if (id == top_)
        return text_;
    std::string t = "(";
    for (size_t i = 0; i < n.children.size(); ++i) {
        if (i)
            t += ' ';
        t += at(n.children[i]).text;
    }
    t += ")_";
    t += n.depth.str();
    return t;
}

ClusterPicture ClusterPicture::from_tree(const TreeSpec& top, Rational vcf) {
    if (top.leaf)
        throw InputError("top-level item must be a cluster");
    ClusterPicture pic;
    pic.vcf_ = std::move(vcf);
    int next_root = 0;
    std::function<NodeId(const TreeSpec&, const Rational*)> build =
        [&](const TreeSpec& t, const Rational* parent_depth) -> NodeId {
        if (t.leaf) {
            ClusterNode leaf;
            leaf.leaves = {next_root++};
            pic.nodes_.push_back(std::move(leaf));
            return static_cast<NodeId>(pic.nodes_.size() - 1);
        }
        if (t.items.size() < 2)
            throw InputError("cluster must contain at least two items");
        if (parent_depth && !(*parent_depth < t.depth))
            throw InputError("non-positive relative depth");
        std::vector<NodeId> kids;
        kids.reserve(t.items.size());
        for (const TreeSpec& item : t.items)
            kids.push_back(build(item, &t.depth));
        ClusterNode node;
        node.depth = t.depth;
        node.children = std::move(kids);
        pic.nodes_.push_back(std::move(node));
        return static_cast<NodeId>(pic.nodes_.size() - 1);
    };
    pic.top_ = build(top, nullptr);
    pic.finalize();
    return pic;
}

void ClusterPicture::finalize() {
    // Children links are authoritative; compact to the reachable tree and
    // rebuild parents, leaf sets, canonical order, texts and levels.
    std::vector<ClusterNode> fresh;
    fresh.reserve(nodes_.size());
    std::function<int(int, int)> copy = [&](int id, int par) -> int {
        fresh.push_back(nodes_[static_cast<size_t>(id)]);
        int nid = static_cast<int>(fresh.size() - 1);
        fresh[static_cast<size_t>(nid)].parent = par;
        std::vector<NodeId> old_kids = fresh[static_cast<size_t>(nid)].children;
        fresh[static_cast<size_t>(nid)].children.clear();
        for (NodeId c : old_kids) {
            int cid = copy(c, nid);
            fresh[static_cast<size_t>(nid)].children.push_back(cid);
        }
        return nid;
    };
    int new_top = copy(top_, -1);
    nodes_ = std::move(fresh);
    top_ = new_top;

    std::function<void(NodeId)> shape = [&](NodeId id) {
        ClusterNode& n = nodes_[static_cast<size_t>(id)];
        if (n.children.empty()) {
            if (n.leaves.size() != 1)
                throw ValidationError("internal: leaf node without root index");
            n.text = "*";
            return;
        }
        if (n.children.size() < 2)
            throw ValidationError("internal: cluster with fewer than two items");
        for (NodeId c : n.children)
            shape(c);
        std::sort(n.children.begin(), n.children.end(), [&](NodeId x, NodeId y) {
            const ClusterNode& a = nodes_[static_cast<size_t>(x)];
            const ClusterNode& b = nodes_[static_cast<size_t>(y)];
            if (a.size() != b.size())
                return a.size() > b.size();
            if (a.proper() && b.proper() && a.depth != b.depth)
                return b.depth < a.depth;
            return a.text < b.text;
        });
        n.leaves.clear();
        for (NodeId c : n.children) {
            const auto& cl = nodes_[static_cast<size_t>(c)].leaves;
            n.leaves.insert(n.leaves.end(), cl.begin(), cl.end());
        }
        std::sort(n.leaves.begin(), n.leaves.end());
        for (size_t i = 1; i < n.leaves.size(); ++i)
            if (n.leaves[i] == n.leaves[i - 1])
                throw ValidationError("internal: duplicate root index in tree");
        std::string t = "(";
        for (size_t i = 0; i < n.children.size(); ++i) {
            if (i)
                t += ' ';
            t += nodes_[static_cast<size_t>(n.children[i])].text;
        }
        t += ")_";
        if (id == top_) {
            t += n.depth.str();
        } else {
            Rational rel = n.depth - nodes_[static_cast<size_t>(n.parent)].depth;
            if (rel.sign() <= 0)
                throw ValidationError("internal: non-positive relative depth");
            t += rel.str();
        }
        n.text = std::move(t);
    };
    shape(top_);

    std::function<void(NodeId, int)> levels = [&](NodeId id, int lv) {
        nodes_[static_cast<size_t>(id)].level = lv;
        for (NodeId c : nodes_[static_cast<size_t>(id)].children)
            levels(c, lv + 1);
    };
    levels(top_, 0);

    nroots_ = static_cast<int>(nodes_[static_cast<size_t>(top_)].leaves.size());
    leaf_of_root_.assign(static_cast<size_t>(nroots_), -1);
    for (size_t id = 0; id < nodes_.size(); ++id) {
        const ClusterNode& n = nodes_[id];
        if (n.children.empty()) {
            int r = n.leaves.front();
            if (r < 0 || r >= nroots_ || leaf_of_root_[static_cast<size_t>(r)] != -1)
                throw ValidationError("internal: root indices not 0..n-1");
            leaf_of_root_[static_cast<size_t>(r)] = static_cast<NodeId>(id);
        }
    }
    if (roots_ && static_cast<int>(roots_->size()) != nroots_)
        throw ValidationError("internal: root values out of step with leaves");
    text_ = nodes_[static_cast<size_t>(top_)].text;
}

void ClusterPicture::drop_roots() {
    roots_.reset();
}

void ClusterPicture::check_well_formed() const {
    if (top_ < 0 || top_ >= static_cast<NodeId>(nodes_.size()))
        throw ValidationError("picture has no top cluster");
    if (at(top_).parent != -1)
        throw ValidationError("top cluster has a parent");
    std::vector<bool> seen(nodes_.size(), false);
    std::function<void(NodeId)> walk = [&](NodeId id) {
        if (seen[static_cast<size_t>(id)])
            throw ValidationError("tree contains a cycle");
        seen[static_cast<size_t>(id)] = true;
        const ClusterNode& n = at(id);
        if (n.children.empty()) {
            if (n.leaves.size() != 1)
                throw ValidationError("leaf node must hold exactly one root");
            return;
        }
        if (n.children.size() < 2)
            throw ValidationError("proper cluster must have at least two items");
        std::vector<int> merged;
        for (NodeId c : n.children) {
            if (at(c).parent != id)
                throw ValidationError("child/parent links disagree");
            if (at(c).proper() && !(n.depth < at(c).depth))
                throw ValidationError("child depth must exceed parent depth");
            walk(c);
            merged.insert(merged.end(), at(c).leaves.begin(), at(c).leaves.end());
        }
        std::sort(merged.begin(), merged.end());
        if (merged != n.leaves)
            throw ValidationError("leaves are not partitioned by the children");
    };
    walk(top_);
    if (static_cast<int>(at(top_).leaves.size()) != nroots_)
        throw ValidationError("root count out of step with the top cluster");
    if (roots_) {
        if (!prime_)
            throw ValidationError("root values without a prime");
        const auto& rs = *roots_;
        if (static_cast<int>(rs.size()) != nroots_)
            throw ValidationError("root values out of step with leaves");
        for (size_t i = 0; i < rs.size(); ++i)
            for (size_t j = i + 1; j < rs.size(); ++j)
                if (rs[i] == rs[j])
                    throw ValidationError("duplicate root values");
        for (NodeId s : proper_clusters()) {
            const auto& lv = at(s).leaves;
            bool first = true;
            Rational dmin(0);
            for (size_t i = 0; i < lv.size(); ++i)
                for (size_t j = i + 1; j < lv.size(); ++j) {
                    Rational v = val_p(rs[static_cast<size_t>(lv[i])] -
                                           rs[static_cast<size_t>(lv[j])],
                                       *prime_)
                                     .finite();
                    if (first || v < dmin) {
                        dmin = v;
                        first = false;
                    }
                }
            if (dmin != at(s).depth)
                throw ValidationError("depth of " + path_label(s) +
                                      " disagrees with the root values");
        }
    }
}

ClusterPicture build_picture_from_roots(std::vector<Rational> roots,
                                        const Rational& leading_coeff,
                                        const mpz_class& p) {
    require_odd_prime(p);
    const int n = static_cast<int>(roots.size());
    if (n < 5)
        throw InputError("genus < 2 unsupported: need at least 5 roots, got " +
                         std::to_string(n));
    if (leading_coeff.is_zero())
        throw InputError("leading coefficient must be nonzero");

    std::vector<std::vector<Rational>> val(static_cast<size_t>(n),
                                           std::vector<Rational>(static_cast<size_t>(n)));
    std::vector<Rational> thresholds;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Rational d = roots[static_cast<size_t>(i)] - roots[static_cast<size_t>(j)];
            if (d.is_zero())
                throw InputError("inseparable polynomial: duplicate root " +
                                 roots[static_cast<size_t>(i)].str());
            val[static_cast<size_t>(i)][static_cast<size_t>(j)] = val_p(d, p).finite();
            thresholds.push_back(val[static_cast<size_t>(i)][static_cast<size_t>(j)]);
        }
    std::sort(thresholds.begin(), thresholds.end(),
              [](const Rational& a, const Rational& b) { return b < a; });
    thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());

    ClusterPicture pic;
    pic.nodes_.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        pic.nodes_[static_cast<size_t>(i)].leaves = {i};

    // Single-linkage merge at each distinct pairwise valuation, largest first.
    // Every block formed at threshold d is a proper cluster of depth exactly d.
    std::vector<int> uf(static_cast<size_t>(n));
    std::iota(uf.begin(), uf.end(), 0);
    std::function<int(int)> find = [&](int x) -> int {
        while (uf[static_cast<size_t>(x)] != x) {
            uf[static_cast<size_t>(x)] = uf[static_cast<size_t>(uf[static_cast<size_t>(x)])];
            x = uf[static_cast<size_t>(x)];
        }
        return x;
    };
    std::vector<NodeId> block_node(static_cast<size_t>(n));
    std::iota(block_node.begin(), block_node.end(), 0);

    for (const Rational& d : thresholds) {
        std::vector<int> before(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i)
            before[static_cast<size_t>(i)] = find(i);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (val[static_cast<size_t>(i)][static_cast<size_t>(j)] == d) {
                    int a = find(i), b = find(j);
                    if (a != b)
                        uf[static_cast<size_t>(b)] = a;
                }
        std::map<int, std::vector<int>> groups;  // new rep -> old blocks merged into it
        for (int i = 0; i < n; ++i)
            if (before[static_cast<size_t>(i)] == i)
                groups[find(i)].push_back(i);
        for (const auto& [rep, olds] : groups) {
            if (olds.size() < 2)
                continue;
            ClusterNode node;
            node.depth = d;
            for (int ob : olds)
                node.children.push_back(block_node[static_cast<size_t>(ob)]);
            pic.nodes_.push_back(std::move(node));
            block_node[static_cast<size_t>(rep)] =
                static_cast<NodeId>(pic.nodes_.size() - 1);
        }
    }

    pic.top_ = block_node[static_cast<size_t>(find(0))];
    pic.vcf_ = val_p(leading_coeff, p).finite();
    pic.prime_ = p;
    pic.roots_ = std::move(roots);
    pic.finalize();
    return pic;
}

IntegralityReport validate_integrality(const ClusterPicture& pic) {
    IntegralityReport rep;
    for (NodeId s : pic.proper_clusters()) {
        if (!pic.depth(s).is_integer()) {
            rep.depths_integral = false;
            rep.issues.push_back("depth of " + pic.path_label(s) + " = " +
                                 pic.depth(s).str() + " is not an integer");
        }
        if (pic.is_principal(s)) {
            Rational nu = pic.nu(s);
            if (!nu.is_even_integer()) {
                rep.nu_even_on_principal = false;
                rep.issues.push_back("nu(" + pic.path_label(s) + ") = " + nu.str() +
                                     " is not an even integer on a principal cluster");
            }
        }
    }
    if (pic.depth(pic.top()).sign() < 0) {
        rep.equation_integral = false;
        rep.issues.push_back("d_R = " + pic.depth(pic.top()).str() + " is negative");
    }
    if (pic.vcf().sign() < 0) {
        rep.equation_integral = false;
        rep.issues.push_back("v(c_f) = " + pic.vcf().str() + " is negative");
    }
    if (pic.genus() >= 2) {
        Rational l8 = lambda8(pic);
        if (!(l8 / Rational(8)).is_integer()) {
            rep.lambda_multiple_of_8 = false;
            rep.issues.push_back("8*v(lambda) = " + l8.str() + " is not divisible by 8");
        }
    }
    return rep;
}

} // namespace cpic
