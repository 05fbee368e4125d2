#include "cpic/notation.hpp"

#include <cctype>

#include "cpic/pexpr.hpp"

namespace cpic {

namespace {

using TreeSpec = ClusterPicture::TreeSpec;

class PictureParser {
public:
    explicit PictureParser(std::string_view text) : text_(text) {}

    TreeSpec run() {
        skip_ws();
        if (peek() != '(')
            fail("top-level item must be a cluster");
        TreeSpec top = parse_cluster(true);
        skip_ws();
        if (pos_ != text_.size())
            fail("unexpected trailing input");
        resolve_depths(top.items, top.depth);
        return top;
    }

private:
    std::string_view text_;
    size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw InputError("parse error at position " + std::to_string(pos_) + ": " + what);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    void expect(char c) {
        if (peek() != c)
            fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    // Nested clusters keep their relative subscript in .depth until the whole
    // tree is read; run() then resolves absolute depths top-down. The top
    // subscript is the absolute depth and may be any rational.
    TreeSpec parse_cluster(bool top) {
        expect('(');
        std::vector<TreeSpec> items;
        for (;;) {
            skip_ws();
            char c = peek();
            if (c == '*') {
                ++pos_;
                items.push_back(TreeSpec::make_leaf());
            } else if (c == '(') {
                items.push_back(parse_cluster(false));
            } else if (c == ')') {
                break;
            } else {
                fail("expected '*', '(' or ')'");
            }
        }
        ++pos_;  // ')'
        expect('_');
        size_t depth_pos = pos_;
        Rational sub = parse_rational();
        if (items.size() < 2) {
            pos_ = depth_pos;
            fail("cluster must contain at least two items");
        }
        if (!top && sub.sign() <= 0) {
            pos_ = depth_pos;
            fail("non-positive relative depth " + sub.str());
        }
        return TreeSpec::cluster(std::move(sub), std::move(items));
    }

    static void resolve_depths(std::vector<TreeSpec>& items, const Rational& parent_abs) {
        for (TreeSpec& item : items) {
            if (item.leaf)
                continue;
            item.depth += parent_abs;  // was relative
            resolve_depths(item.items, item.depth);
        }
    }

    Rational parse_rational() {
        skip_ws();
        size_t start = pos_;
        if (peek() == '-')
            ++pos_;
        if (!std::isdigit(static_cast<unsigned char>(peek())))
            fail("expected a rational subscript");
        while (std::isdigit(static_cast<unsigned char>(peek())))
            ++pos_;
        if (peek() == '/') {
            ++pos_;
            if (!std::isdigit(static_cast<unsigned char>(peek())))
                fail("expected a positive denominator");
            while (std::isdigit(static_cast<unsigned char>(peek())))
                ++pos_;
        }
        return Rational::parse(text_.substr(start, pos_ - start));
    }
};

Rational rational_from_json(const nlohmann::json& v, const char* what) {
    if (v.is_string())
        return Rational::parse(v.get<std::string>());
    if (v.is_number_integer())
        return Rational(static_cast<long>(v.get<long long>()));
    throw InputError(std::string(what) + " must be a decimal string or an integer");
}

TreeSpec tree_from_json(const nlohmann::json& j) {
    if (j.is_string() && j.get<std::string>() == "*")
        return TreeSpec::make_leaf();
    if (!j.is_object() || !j.contains("children"))
        throw InputError("tree node must be \"*\" or {\"depth\", \"children\"}");
    if (!j.contains("depth"))
        throw InputError("tree node missing \"depth\"");
    std::vector<TreeSpec> items;
    for (const auto& c : j.at("children"))
        items.push_back(tree_from_json(c));
    return TreeSpec::cluster(rational_from_json(j.at("depth"), "depth"), std::move(items));
}

} // namespace

ClusterPicture parse_picture(std::string_view text, Rational vcf) {
    TreeSpec top = PictureParser(text).run();
    return ClusterPicture::from_tree(top, std::move(vcf));
}

std::string print_picture(const ClusterPicture& pic) {
    return pic.canonical_text();
}

bool picture_equal(const ClusterPicture& a, const ClusterPicture& b) {
    return a.canonical_text() == b.canonical_text() && a.vcf() == b.vcf();
}

nlohmann::ordered_json picture_to_json(const ClusterPicture& pic) {
    nlohmann::ordered_json j;
    j["vcf"] = pic.vcf().str();
    j["picture"] = pic.canonical_text();
    return j;
}

ClusterPicture picture_from_json(const nlohmann::json& j) {
    if (!j.is_object())
        throw InputError("input must be a JSON object");
    if (j.contains("roots")) {
        if (!j.contains("p"))
            throw InputError("roots input missing \"p\"");
        mpz_class p;
        if (j.at("p").is_string())
            p = mpz_class(j.at("p").get<std::string>(), 10);
        else if (j.at("p").is_number_integer())
            p = mpz_class(static_cast<long>(j.at("p").get<long long>()));
        else
            throw InputError("\"p\" must be an integer");
        require_odd_prime(p);
        std::vector<Rational> roots;
        for (const auto& r : j.at("roots")) {
            if (r.is_string())
                roots.push_back(PExpr::parse(r.get<std::string>()).eval(p));
            else if (r.is_number_integer())
                roots.push_back(Rational(static_cast<long>(r.get<long long>())));
            else
                throw InputError("root entries must be expression strings");
        }
        if (!j.contains("leading_coeff"))
            throw InputError("roots input missing \"leading_coeff\"");
        const auto& lc = j.at("leading_coeff");
        Rational cf(1);
        if (lc.is_string())
            cf = PExpr::parse(lc.get<std::string>()).eval(p);
        else if (lc.is_number_integer())
            cf = Rational(static_cast<long>(lc.get<long long>()));
        else
            throw InputError("\"leading_coeff\" must be an expression string");
        return build_picture_from_roots(std::move(roots), cf, p);
    }
    Rational vcf(0);
    if (j.contains("vcf"))
        vcf = rational_from_json(j.at("vcf"), "vcf");
    if (j.contains("picture")) {
        if (!j.at("picture").is_string())
            throw InputError("\"picture\" must be a string");
        return parse_picture(j.at("picture").get<std::string>(), std::move(vcf));
    }
    if (j.contains("tree"))
        return ClusterPicture::from_tree(tree_from_json(j.at("tree")), std::move(vcf));
    throw InputError("input needs one of \"roots\", \"picture\" or \"tree\"");
}

} // namespace cpic
