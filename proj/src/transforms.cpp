#include "cpic/transforms.hpp"

#include <algorithm>
#include <functional>

#include "cpic/lambda.hpp"

namespace cpic {

namespace {

long long parse_ll(std::string_view s, const char* what) {
    try {
        size_t used = 0;
        std::string str(s);
        long long v = std::stoll(str, &used);
        if (used != str.size())
            throw InputError("");
        return v;
    } catch (const std::exception&) {
        throw InputError(std::string("bad ") + what + " \"" + std::string(s) + "\"");
    }
}

Rational top_coefficient(int nroots) {
    if (nroots % 2 == 0)
        return Rational((nroots - 2) * nroots);
    return Rational((nroots - 1) * (nroots - 1));
}

} // namespace

TransformSpec TransformSpec::parse(std::string_view text) {
    TransformSpec sp;
    size_t colon = text.find(':');
    std::string_view name = text.substr(0, colon);
    std::string_view rest =
        colon == std::string_view::npos ? std::string_view() : text.substr(colon + 1);
    if (name == "deepen") {
        sp.kind = Kind::Deepen;
        sp.t = parse_ll(rest, "deepen amount");
    } else if (name == "add-root") {
        sp.kind = Kind::AddRoot;
        if (colon != std::string_view::npos)
            throw InputError("add-root takes no parameters");
    } else if (name == "redistribute") {
        sp.kind = Kind::Redistribute;
        size_t last = rest.rfind(':');
        if (last == std::string_view::npos)
            throw InputError("redistribute needs <cluster-path>:t");
        sp.path = std::string(rest.substr(0, last));
        sp.t = parse_ll(rest.substr(last + 1), "redistribute amount");
    } else if (name == "scale-leading") {
        sp.kind = Kind::ScaleLeading;
        sp.m = parse_ll(rest, "scale-leading amount");
    } else if (name == "rescale") {
        sp.kind = Kind::Rescale;
        size_t comma = rest.find(',');
        if (comma == std::string_view::npos)
            throw InputError("rescale needs t,s");
        sp.t = parse_ll(rest.substr(0, comma), "rescale t");
        sp.s = parse_ll(rest.substr(comma + 1), "rescale s");
    } else if (name == "shift") {
        sp.kind = Kind::Shift;
        sp.z = Rational::parse(rest);
    } else {
        throw InputError("unknown transform \"" + std::string(name) + "\"");
    }
    return sp;
}

std::string TransformSpec::str() const {
    switch (kind) {
    case Kind::Deepen:
        return "deepen:" + std::to_string(t);
    case Kind::AddRoot:
        return "add-root";
    case Kind::Redistribute:
        return "redistribute:" + path + ":" + std::to_string(t);
    case Kind::ScaleLeading:
        return "scale-leading:" + std::to_string(m);
    case Kind::Rescale:
        return "rescale:" + std::to_string(t) + "," + std::to_string(s);
    case Kind::Shift:
        return "shift:" + z.str();
    }
    return "";
}

ClusterPicture deepen(const ClusterPicture& pic, long long t) {
    ClusterPicture q = pic;
    const Rational tt(static_cast<long>(t));
    for (ClusterNode& n : q.nodes_)
        if (n.proper())
            n.depth += tt;
    if (t != 0)
        q.drop_roots();
    q.finalize();
    return q;
}

ClusterPicture add_root(const ClusterPicture& pic) {
    if (pic.root_count() % 2 == 0)
        throw ValidationError("add-root requires an odd number of roots");
    if (!pic.depth(pic.top()).is_integer())
        throw ValidationError("add-root requires an integral top depth");
    ClusterPicture q = pic;
    ClusterNode leaf;
    leaf.leaves = {q.nroots_};
    q.nodes_.push_back(std::move(leaf));
    q.at(q.top_).children.push_back(static_cast<NodeId>(q.nodes_.size() - 1));
    q.drop_roots();
    q.finalize();
    return q;
}

ClusterPicture redistribute(const ClusterPicture& pic, NodeId child_of_top, long long t) {
    const NodeId top = pic.top();
    if (pic.root_count() % 2 != 0)
        throw ValidationError("redistribute requires an even number of roots");
    if (child_of_top == top)
        throw ValidationError("cannot redistribute the top cluster itself");
    if (pic.parent(child_of_top) != top)
        throw ValidationError("redistribute target must be a child of the top cluster");
    if (!pic.is_proper(child_of_top))
        throw ValidationError("redistribute target must be a proper cluster");

    ClusterPicture q = pic;
    const Rational tt(static_cast<long>(t));
    const NodeId target = child_of_top;

    auto adjust_subtree = [&q](NodeId node, const Rational& delta) {
        std::function<void(NodeId)> walk = [&](NodeId id) {
            if (q.at(id).proper())
                q.at(id).depth += delta;
            for (NodeId c : q.at(id).children)
                walk(c);
        };
        walk(node);
    };
    auto dissolve = [&q](NodeId node) {
        NodeId par = q.at(node).parent;
        auto& pch = q.at(par).children;
        pch.erase(std::find(pch.begin(), pch.end(), node));
        for (NodeId c : q.at(node).children) {
            q.at(c).parent = par;
            pch.push_back(c);
        }
        q.at(node).children.clear();
        q.at(node).leaves.clear();
    };

    std::vector<NodeId> others;
    for (NodeId c : q.at(top).children)
        if (c != target)
            others.push_back(c);

    adjust_subtree(target, -tt);
    Rational delta_target = q.at(target).depth - q.at(top).depth;
    if (delta_target.sign() < 0)
        throw ValidationError("redistribution drives the relative depth of the "
                              "target negative");

    if (others.size() == 1 && q.at(others.front()).proper()) {
        NodeId comp = others.front();
        adjust_subtree(comp, tt);
        Rational delta_comp = q.at(comp).depth - q.at(top).depth;
        if (delta_comp.sign() < 0)
            throw ValidationError("redistribution drives the relative depth of the "
                                  "complement negative");
        if (delta_comp.sign() == 0)
            dissolve(comp);
    } else if (others.size() >= 2 && t != 0) {
        if (t < 0)
            throw ValidationError("materialised complement would have negative "
                                  "relative depth");
        for (NodeId o : others)
            adjust_subtree(o, tt);
        ClusterNode comp;
        comp.depth = q.at(top).depth + tt;
        comp.children = others;
        comp.parent = top;
        q.nodes_.push_back(std::move(comp));
        NodeId comp_id = static_cast<NodeId>(q.nodes_.size() - 1);
        auto& tch = q.at(top).children;
        tch.clear();
        tch.push_back(target);
        tch.push_back(comp_id);
        for (NodeId o : others)
            q.at(o).parent = comp_id;
    }
    // a single-leaf complement has no depth to move

    if (delta_target.sign() == 0)
        dissolve(target);

    q.drop_roots();
    q.finalize();
    return q;
}

ClusterPicture scale_leading(const ClusterPicture& pic, long long m) {
    ClusterPicture q = pic;
    q.vcf_ += Rational(static_cast<long>(2 * m));
    return q;
}

ClusterPicture rescale_equation(const ClusterPicture& pic, long long t, long long s) {
    if (!pic.root_values())
        throw ValidationError("rescale requires root values");
    ClusterPicture q = pic;
    const Rational tt(static_cast<long>(t));
    for (ClusterNode& n : q.nodes_)
        if (n.proper())
            n.depth -= tt;
    const Rational p(*q.prime_);
    const Rational scale = t >= 0
                               ? pow_int(p, static_cast<unsigned long>(t))
                               : Rational(1) / pow_int(p, static_cast<unsigned long>(-t));
    for (Rational& r : *q.roots_)
        r /= scale;
    q.vcf_ += Rational(static_cast<long>(t * pic.root_count() - 2 * s));
    q.finalize();
    return q;
}

ClusterPicture shift(const ClusterPicture& pic, const Rational& z) {
    if (!pic.root_values())
        throw ValidationError("shift requires root values");
    ClusterPicture q = pic;
    for (Rational& r : *q.roots_)
        r += z;
    return q;
}

ClusterPicture apply_transform(const ClusterPicture& pic, const TransformSpec& spec) {
    switch (spec.kind) {
    case TransformSpec::Kind::Deepen:
        return deepen(pic, spec.t);
    case TransformSpec::Kind::AddRoot:
        return add_root(pic);
    case TransformSpec::Kind::Redistribute:
        return redistribute(pic, pic.node_by_path(spec.path), spec.t);
    case TransformSpec::Kind::ScaleLeading:
        return scale_leading(pic, spec.m);
    case TransformSpec::Kind::Rescale:
        return rescale_equation(pic, spec.t, spec.s);
    case TransformSpec::Kind::Shift:
        return shift(pic, spec.z);
    }
    throw ValidationError("corrupt transform spec");
}

Rational predicted_lambda8_delta(const ClusterPicture& pic, const TransformSpec& spec) {
    const int n = pic.root_count();
    switch (spec.kind) {
    case TransformSpec::Kind::Deepen:
        return Rational(static_cast<long>(spec.t)) * top_coefficient(n);
    case TransformSpec::Kind::AddRoot:
        return Rational(2) * pic.depth(pic.top()) * Rational(n - 1);
    case TransformSpec::Kind::Redistribute: {
        NodeId s = pic.node_by_path(spec.path);
        return Rational(static_cast<long>(spec.t)) * Rational(n - 2) *
               Rational(n - 2 * pic.size(s));
    }
    case TransformSpec::Kind::ScaleLeading:
        return Rational(static_cast<long>(8 * pic.genus() * spec.m));
    case TransformSpec::Kind::Rescale:
        return Rational(4 * pic.genus()) *
                   Rational(static_cast<long>(spec.t * n - 2 * spec.s)) -
               Rational(static_cast<long>(spec.t)) * top_coefficient(n);
    case TransformSpec::Kind::Shift:
        return Rational(0);
    }
    throw ValidationError("corrupt transform spec");
}

} // namespace cpic
